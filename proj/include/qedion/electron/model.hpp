#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qedion {

// Spherical finite well, H_el = -Laplace + V with V = -V0 on r < a.
// Radial discretisation: uniform interior grid r_i = i*h, i=1..n_r,
// Dirichlet at r=0 and r=r_max, in the reduced variable u = r R(r).
struct ElectronModel {
    double V0 = 4.0;    // well depth (> 0)
    double a = 1.0;     // well radius
    double r_max = 24;  // radial domain cutoff
    int n_r = 4000;     // interior grid points
    int l_max = 8;      // highest partial wave

    void validate() const {
        if (!(V0 > 0.0) || !(a > 0.0) || !(r_max > 0.0))
            throw std::invalid_argument("electron model: V0, a, r_max must be positive");
        if (r_max < 10.0 * a)
            throw std::invalid_argument("electron model: r_max must be at least 10*a");
        if (n_r < 16) throw std::invalid_argument("electron model: n_r too small");
        if (l_max < 0) throw std::invalid_argument("electron model: l_max negative");
        // s-wave bound-state counting condition for the 3D well
        if (!(std::sqrt(V0) * a > M_PI / 2.0))
            throw std::invalid_argument(
                "electron model: no bound state (sqrt(V0)*a <= pi/2 violates the ground-state hypothesis)");
    }

    double h() const { return r_max / (n_r + 1); }
    double r(int i) const { return (i + 1) * h(); }  // i = 0..n_r-1

    double potential(double rr) const { return rr < a ? -V0 : 0.0; }

    std::vector<double> radial_nodes() const {
        std::vector<double> rs(n_r);
        for (int i = 0; i < n_r; ++i) rs[i] = r(i);
        return rs;
    }

    // Exact cell integrals of the step potential against P1 hat functions.
    // Keeps the eigenvalue error a clean O(h^2) even though the well edge
    // falls between nodes.
    //   diag:  int_{r_i-h}^{r_i+h} V (1-|r-r_i|/h)^2 dr
    //   off:   int_{r_i}^{r_i+h}   V (1-t)t dr,  t=(r-r_i)/h
    double potential_diag_integral(int i) const {
        const double hh = h(), ri = r(i);
        auto F = [&](double x) {
            const double t = (x - ri) / hh;
            return hh * (t < 0 ? (1 + t) * (1 + t) * (1 + t) / 3.0
                               : 2.0 / 3.0 - (1 - t) * (1 - t) * (1 - t) / 3.0);
        };
        const double lo = ri - hh, hi = std::min(ri + hh, a);
        if (lo >= a) return 0.0;
        return -V0 * (F(hi) - F(lo));
    }
    double potential_offdiag_integral(int i) const {
        const double hh = h(), ri = r(i);
        if (ri >= a) return 0.0;
        auto F = [&](double x) {
            const double t = (x - ri) / hh;
            return hh * (0.5 * t * t - t * t * t / 3.0);
        };
        return -V0 * (F(std::min(ri + hh, a)) - F(ri));
    }
};

}  // namespace qedion
