#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qedion {

// Symmetric tridiagonal matrix, diagonal d[0..n-1], off-diagonal e[0..n-2].
struct Tridiag {
    std::vector<double> d;
    std::vector<double> e;
    std::size_t n() const { return d.size(); }
};

// Number of eigenvalues of T strictly below x (Sturm / LDL^T sign count).
inline int sturm_count(const Tridiag& t, double x) {
    const double tiny = 1e-300;
    int cnt = 0;
    double q = t.d[0] - x;
    if (q < 0) ++cnt;
    for (std::size_t i = 1; i < t.n(); ++i) {
        if (std::abs(q) < tiny) q = (q < 0 ? -tiny : tiny);
        q = t.d[i] - x - t.e[i - 1] * t.e[i - 1] / q;
        if (q < 0) ++cnt;
    }
    return cnt;
}

// All eigenvalues of T inside (lo, hi), bisection to abs tolerance tol.
inline std::vector<double> tridiag_eigenvalues_in(const Tridiag& t, double lo, double hi,
                                                  double tol = 1e-13) {
    const int nlo = sturm_count(t, lo);
    const int nhi = sturm_count(t, hi);
    std::vector<double> evs;
    for (int k = nlo; k < nhi; ++k) {
        double a = lo, b = hi;
        // bisect for the (k+1)-th eigenvalue
        while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
            double m = 0.5 * (a + b);
            if (sturm_count(t, m) > k)
                b = m;
            else
                a = m;
        }
        evs.push_back(0.5 * (a + b));
    }
    return evs;
}

// Solve (T - s) y = r in place (Thomas with row swaps for robustness).
inline void tridiag_shifted_solve(const Tridiag& t, double s, std::vector<double>& y) {
    const std::size_t n = t.n();
    std::vector<double> a(n, 0.0), b(n), c(n, 0.0), c2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) b[i] = t.d[i] - s;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a[i + 1] = t.e[i];
        c[i] = t.e[i];
    }
    // forward elimination with partial pivoting
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(a[i + 1]) > std::abs(b[i])) {
            std::swap(b[i], a[i + 1]);
            std::swap(c[i], b[i + 1]);
            std::swap(c2[i], c[i + 1]);
            std::swap(y[i], y[i + 1]);
        }
        if (b[i] == 0.0) b[i] = 1e-300;
        const double m = a[i + 1] / b[i];
        b[i + 1] -= m * c[i];
        c[i + 1] -= m * c2[i];
        y[i + 1] -= m * y[i];
    }
    if (b[n - 1] == 0.0) b[n - 1] = 1e-300;
    y[n - 1] /= b[n - 1];
    if (n >= 2) y[n - 2] = (y[n - 2] - c[n - 2] * y[n - 1]) / b[n - 2];
    for (std::size_t ii = n; ii-- > 2;) {
        std::size_t i = ii - 2;
        y[i] = (y[i] - c[i] * y[i + 1] - c2[i] * y[i + 2]) / b[i];
    }
}

// Eigenvector by inverse iteration at eigenvalue ev (must be isolated).
inline std::vector<double> tridiag_eigenvector(const Tridiag& t, double ev) {
    const std::size_t n = t.n();
    std::vector<double> v(n);
    // deterministic quasi-random start
    double s = 0.5;
    for (std::size_t i = 0; i < n; ++i) {
        s = std::fmod(s * 997.0 + 0.123456789, 1.0);
        v[i] = s - 0.5;
    }
    const double shift = ev + 1e-12 * std::max(1.0, std::abs(ev));
    for (int it = 0; it < 5; ++it) {
        tridiag_shifted_solve(t, shift, v);
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (double& x : v) x /= nrm;
    }
    // sign convention: first substantial component positive
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(v[i]) > 1e-8) {
            if (v[i] < 0)
                for (double& x : v) x = -x;
            break;
        }
    return v;
}

inline double tridiag_residual(const Tridiag& t, double ev, const std::vector<double>& v) {
    const std::size_t n = t.n();
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double hv = t.d[i] * v[i];
        if (i > 0) hv += t.e[i - 1] * v[i - 1];
        if (i + 1 < n) hv += t.e[i] * v[i + 1];
        const double r = hv - ev * v[i];
        r2 += r * r;
    }
    return std::sqrt(r2);
}

}  // namespace qedion
