#pragma once

#include <cassert>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qedion {

// One-dimensional quadrature rule: nodes x[i] with weights w[i].
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;

    std::size_t size() const { return x.size(); }

    template <class F>
    auto integrate(F&& f) const {
        auto acc = f(x[0]) * w[0];
        for (std::size_t i = 1; i < x.size(); ++i) acc += f(x[i]) * w[i];
        return acc;
    }
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
inline QuadRule gauss_legendre(int n) {
    assert(n >= 1);
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

inline QuadRule gauss_legendre(int n, double a, double b) {
    QuadRule r = gauss_legendre(n);
    const double c = 0.5 * (b - a), d = 0.5 * (b + a);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r.x[i] = c * r.x[i] + d;
        r.w[i] *= c;
    }
    return r;
}

// Concatenation of per-panel Gauss-Legendre rules. Panels given as
// (lo, hi, nodes) triples; panels may be disjoint.
struct Panel {
    double lo, hi;
    int n;
};

inline QuadRule panel_rule(const std::vector<Panel>& panels) {
    QuadRule r;
    for (const auto& p : panels) {
        if (!(p.hi > p.lo)) throw std::invalid_argument("panel_rule: empty panel");
        QuadRule g = gauss_legendre(p.n, p.lo, p.hi);
        r.x.insert(r.x.end(), g.x.begin(), g.x.end());
        r.w.insert(r.w.end(), g.w.begin(), g.w.end());
    }
    return r;
}

// Uniform panels of width <= dx over [a,b], npp Gauss nodes per panel.
inline QuadRule resolved_rule(double a, double b, double dx, int npp) {
    if (!(b > a)) return QuadRule{};
    int np = std::max(1, (int)std::ceil((b - a) / dx));
    std::vector<Panel> ps;
    ps.reserve(np);
    double h = (b - a) / np;
    for (int i = 0; i < np; ++i) ps.push_back({a + i * h, a + (i + 1) * h, npp});
    return panel_rule(ps);
}

// Composite Simpson weights on a uniform grid with n points (n odd).
inline std::vector<double> simpson_weights(std::size_t n, double h) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("simpson_weights: need odd n >= 3");
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 2 < n; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    return w;
}

// Trapezoid weights for a uniform interior grid r_i = (i+1)h, i=0..n-1,
// with implicit zeros at r=0 and r=n*h+h (Dirichlet boundary).
inline std::vector<double> dirichlet_trapezoid_weights(std::size_t n, double h) {
    return std::vector<double>(n, h);
}

}  // namespace qedion
