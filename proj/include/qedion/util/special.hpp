#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace qedion {

using cplx = std::complex<double>;

// i^l, exact
inline cplx ipow(int l) {
    switch (((l % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// Legendre polynomials P_0..P_lmax at x.
inline void legendre_all(int lmax, double x, std::vector<double>& p) {
    p.resize(lmax + 1);
    p[0] = 1.0;
    if (lmax >= 1) p[1] = x;
    for (int l = 2; l <= lmax; ++l)
        p[l] = ((2 * l - 1) * x * p[l - 1] - (l - 1) * p[l - 2]) / l;
}

// Derivatives P'_0..P'_lmax at x, via (1-x^2)P'_l = l(P_{l-1} - x P_l)
// with the recurrence form stable at |x| -> 1: P'_l = l P_{l-1} + x P'_{l-1}.
inline void legendre_deriv_all(int lmax, double x, std::vector<double>& dp) {
    std::vector<double> p;
    legendre_all(lmax, x, p);
    dp.resize(lmax + 1);
    dp[0] = 0.0;
    for (int l = 1; l <= lmax; ++l) dp[l] = l * p[l - 1] + x * dp[l - 1];
}

inline double dfact(int n) {  // n!! for odd n, used by small-x j_l
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

// Spherical Bessel j_0..j_lmax(x). Downward recurrence (Miller) normalised
// against j_0; safe for x >= 0 including x << l.
inline void sph_bessel_j_all(int lmax, double x, std::vector<double>& j) {
    j.assign(lmax + 1, 0.0);
    if (x < 1e-12) {
        j[0] = 1.0 - x * x / 6.0;
        if (lmax >= 1) j[1] = x / 3.0;
        for (int l = 2; l <= lmax; ++l) j[l] = std::pow(x, l) / dfact(2 * l + 1);
        return;
    }
    if (x > lmax + 2.0) {
        // upward recurrence is stable for l < x
        j[0] = std::sin(x) / x;
        if (lmax >= 1) j[1] = std::sin(x) / (x * x) - std::cos(x) / x;
        for (int l = 2; l <= lmax; ++l)
            j[l] = (2 * l - 1) / x * j[l - 1] - j[l - 2];
        return;
    }
    const int start = lmax + 24 + (int)(1.3 * x);
    double jp2 = 0.0, jp1 = 1e-30;
    std::vector<double> tmp(lmax + 1, 0.0);
    for (int l = start; l >= 0; --l) {
        double cur = (2 * l + 3) / x * jp1 - jp2;
        if (l <= lmax) tmp[l] = cur;
        jp2 = jp1;
        jp1 = cur;
        if (std::abs(jp1) > 1e250) {
            jp1 *= 1e-250;
            jp2 *= 1e-250;
            for (int m = l; m <= lmax; ++m) tmp[m] *= 1e-250;
        }
    }
    const double scale = (std::sin(x) / x) / tmp[0];
    for (int l = 0; l <= lmax; ++l) j[l] = tmp[l] * scale;
}

// Spherical Bessel y_0..y_lmax(x), upward recurrence (stable for y).
inline void sph_bessel_y_all(int lmax, double x, std::vector<double>& y) {
    y.resize(lmax + 1);
    y[0] = -std::cos(x) / x;
    if (lmax >= 1) y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
    for (int l = 2; l <= lmax; ++l)
        y[l] = (2 * l - 1) / x * y[l - 1] - y[l - 2];
}

inline double sph_bessel_j(int l, double x) {
    std::vector<double> j;
    sph_bessel_j_all(l, x, j);
    return j[l];
}

// Normalised associated Legendre Pbar_l^m(x) for m >= 0, such that
// Y_lm(theta,phi) = Pbar_l^m(cos theta) e^{i m phi}. Condon-Shortley included.
inline void assoc_legendre_norm(int lmax, int m, double x, std::vector<double>& p) {
    p.assign(lmax + 1, 0.0);
    if (m > lmax) return;
    double pmm = 1.0 / std::sqrt(4.0 * M_PI);
    if (m > 0) {
        double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
        for (int k = 1; k <= m; ++k)
            pmm *= -s * std::sqrt((2.0 * k + 1.0) / (2.0 * k));
    } else {
        // already 1/sqrt(4pi) = Pbar_0^0
    }
    // pmm currently equals Pbar_m^m up to the sqrt((2m+1)/(4pi) ...) chain above
    p[m] = pmm;
    if (m == lmax) return;
    double pm1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
    if (m + 1 <= lmax) p[m + 1] = pm1;
    for (int l = m + 2; l <= lmax; ++l) {
        double a = std::sqrt((4.0 * l * l - 1.0) / ((double)l * l - m * m));
        double b = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
        p[l] = a * (x * p[l - 1] - b * p[l - 2]);
    }
}

// Complex spherical harmonic Y_lm(direction).
inline cplx sph_harmonic(int l, int m, double ct, double phi) {
    const int am = std::abs(m);
    std::vector<double> pb;
    assoc_legendre_norm(l, am, ct, pb);
    cplx v = pb[l] * std::exp(cplx(0.0, am * phi));
    if (m < 0) v = std::conj(v) * ((am % 2) ? -1.0 : 1.0);
    return v;
}

namespace detail {
inline double lgam(double x) { return std::lgamma(x); }

inline double wigner3j_000(int l1, int l2, int l3) {
    const int J = l1 + l2 + l3;
    if (J % 2 != 0) return 0.0;
    if (l3 < std::abs(l1 - l2) || l3 > l1 + l2) return 0.0;
    const int g = J / 2;
    double lg = 0.5 * (lgam(J - 2 * l1 + 1) + lgam(J - 2 * l2 + 1) + lgam(J - 2 * l3 + 1) - lgam(J + 2)) +
                lgam(g + 1) - lgam(g - l1 + 1) - lgam(g - l2 + 1) - lgam(g - l3 + 1);
    double v = std::exp(lg);
    return ((g % 2) ? -v : v);
}
}  // namespace detail

// Wigner 3j symbol (l1 l2 l3; m1 m2 m3) via the Racah sum.
inline double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3) {
    if (m1 + m2 + m3 != 0) return 0.0;
    if (l3 < std::abs(l1 - l2) || l3 > l1 + l2) return 0.0;
    if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) return 0.0;
    if (m1 == 0 && m2 == 0 && m3 == 0) return detail::wigner3j_000(l1, l2, l3);
    using detail::lgam;
    const int tmin = std::max({0, l2 - l3 - m1, l1 - l3 + m2});
    const int tmax = std::min({l1 + l2 - l3, l1 - m1, l2 + m2});
    if (tmin > tmax) return 0.0;
    const double pre = 0.5 * (lgam(l1 + l2 - l3 + 1) + lgam(l1 - l2 + l3 + 1) + lgam(-l1 + l2 + l3 + 1) -
                              lgam(l1 + l2 + l3 + 2) + lgam(l1 + m1 + 1) + lgam(l1 - m1 + 1) +
                              lgam(l2 + m2 + 1) + lgam(l2 - m2 + 1) + lgam(l3 + m3 + 1) + lgam(l3 - m3 + 1));
    long double sum = 0.0L;
    for (int t = tmin; t <= tmax; ++t) {
        double lg = lgam(t + 1) + lgam(l3 - l2 + m1 + t + 1) + lgam(l3 - l1 - m2 + t + 1) +
                    lgam(l1 + l2 - l3 - t + 1) + lgam(l1 - m1 - t + 1) + lgam(l2 + m2 - t + 1);
        long double term = std::exp((long double)(pre - lg));
        sum += (t % 2) ? -term : term;
    }
    const int ph = l1 - l2 - m3;
    double v = (double)sum;
    return ((((ph % 2) + 2) % 2) ? -v : v);
}

// Gaunt integral  G = \int Y_{l1 m1} Y_{l2 m2} Y_{l3 m3} dOmega.
inline double gaunt(int l1, int m1, int l2, int m2, int l3, int m3) {
    if (m1 + m2 + m3 != 0) return 0.0;
    double w = detail::wigner3j_000(l1, l2, l3);
    if (w == 0.0) return 0.0;
    return std::sqrt((2.0 * l1 + 1.0) * (2.0 * l2 + 1.0) * (2.0 * l3 + 1.0) / (4.0 * M_PI)) * w *
           wigner3j(l1, l2, l3, m1, m2, m3);
}

// Coupling coefficient <Y_{lo mo} | Y_{LM} Y_{li mi}> used by partial-wave
// multiplication operators; cached (the sums are revisited heavily).
class GauntCache {
public:
    double coef(int lo, int mo, int L, int M, int li, int mi) const {
        if (mo != M + mi) return 0.0;
        const std::uint64_t key = pack(lo, mo, L, M, li, mi);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const double v = ((mo % 2) ? -1.0 : 1.0) * gaunt(lo, -mo, L, M, li, mi);
        cache_.emplace(key, v);
        return v;
    }

private:
    static std::uint64_t pack(int a, int b, int c, int d, int e, int f) {
        auto u = [](int v) { return (std::uint64_t)(v + 128) & 0x3ff; };
        return u(a) | (u(b) << 10) | (u(c) << 20) | (u(d) << 30) | (u(e) << 40) | (u(f) << 50);
    }
    mutable std::unordered_map<std::uint64_t, double> cache_;
};

}  // namespace qedion
