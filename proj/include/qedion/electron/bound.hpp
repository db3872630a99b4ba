#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qedion/electron/model.hpp"
#include "qedion/util/tridiag.hpp"

namespace qedion {

struct BoundState {
    double e;               // eigenvalue refined by grid extrapolation
    double e_grid;          // discrete eigenvalue on the n_r grid
    int l;                  // angular momentum
    std::vector<double> u;  // reduced radial function r*R(r), unit L2 norm
    double residual;        // ||H u - e_grid u|| on the discrete Hamiltonian
};

// Discrete radial Hamiltonian for partial wave l: second-order symmetric
// tridiagonal on u = rR, with the step potential integrated exactly per cell
// (lumped-mass P1 form) so the well edge between nodes costs no order.
inline Tridiag radial_hamiltonian(const ElectronModel& m, int l) {
    const double h = m.h();
    const double inv_h2 = 1.0 / (h * h);
    Tridiag t;
    t.d.resize(m.n_r);
    t.e.resize(m.n_r - 1);
    for (int i = 0; i < m.n_r; ++i) {
        const double r = m.r(i);
        t.d[i] = 2.0 * inv_h2 + m.potential_diag_integral(i) / h + l * (l + 1.0) / (r * r);
        if (i + 1 < m.n_r) t.e[i] = -inv_h2 + m.potential_offdiag_integral(i) / h;
    }
    return t;
}

namespace detail {

// companion grid size near target whose well-edge alignment
// frac(a (n+1)/r_max) best matches the fine grid's
inline int matched_companion(const ElectronModel& m, int target) {
    const double theta = m.a * (m.n_r + 1) / m.r_max;
    const double frac0 = theta - std::floor(theta);
    int best = target;
    double bestd = 2.0;
    for (int n = std::max(16, target - 14); n <= target + 14; ++n) {
        const double th = m.a * (n + 1) / m.r_max;
        double d = std::abs((th - std::floor(th)) - frac0);
        d = std::min(d, 1.0 - d);
        if (d < bestd) {
            bestd = d;
            best = n;
        }
    }
    return best;
}

inline std::vector<double> negative_eigenvalues(const ElectronModel& m, int l) {
    return tridiag_eigenvalues_in(radial_hamiltonian(m, l), -m.V0, -1e-12);
}

}  // namespace detail

// All bound states with e < 0 up to l_max, sorted ascending in energy.
// Eigenvalues are extrapolated over three alignment-matched grids
// (eliminating the h^2 and h^3 error terms); eigenvectors and the residual
// refer to the requested n_r grid.
inline std::vector<BoundState> solve_bound_states(const ElectronModel& m) {
    m.validate();
    ElectronModel m2 = m, m3 = m;
    m2.n_r = detail::matched_companion(m, m.n_r / 2);
    m3.n_r = detail::matched_companion(m, m.n_r / 3);
    const double h1 = m.h(), h2 = m2.h(), h3 = m3.h();

    std::vector<BoundState> out;
    for (int l = 0; l <= m.l_max; ++l) {
        const Tridiag t = radial_hamiltonian(m, l);
        const std::vector<double> ev1 = detail::negative_eigenvalues(m, l);
        if (ev1.empty()) continue;
        const std::vector<double> ev2 = detail::negative_eigenvalues(m2, l);
        const std::vector<double> ev3 = detail::negative_eigenvalues(m3, l);

        for (std::size_t b = 0; b < ev1.size(); ++b) {
            BoundState s;
            s.l = l;
            s.e_grid = ev1[b];
            if (b < ev2.size() && b < ev3.size()) {
                // solve e(h) = e0 + c2 h^2 + c3 h^3 on the three grids
                const double A[3][3] = {{1, h1 * h1, h1 * h1 * h1},
                                        {1, h2 * h2, h2 * h2 * h2},
                                        {1, h3 * h3, h3 * h3 * h3}};
                const double y[3] = {ev1[b], ev2[b], ev3[b]};
                const double det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                                   A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                                   A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
                const double det0 = y[0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                                    A[0][1] * (y[1] * A[2][2] - A[1][2] * y[2]) +
                                    A[0][2] * (y[1] * A[2][1] - A[1][1] * y[2]);
                s.e = det0 / det;
            } else if (b < ev2.size()) {
                const double w = h2 * h2 / (h2 * h2 - h1 * h1);
                s.e = w * ev1[b] + (1.0 - w) * ev2[b];
            } else {
                s.e = ev1[b];
            }
            s.u = tridiag_eigenvector(t, ev1[b]);
            const double hstep = m.h();
            double n2 = 0.0;
            for (double x : s.u) n2 += x * x * hstep;
            const double nrm = std::sqrt(n2);
            for (double& x : s.u) x /= nrm;
            {
                double r2 = 0.0;
                const int n = m.n_r;
                for (int i = 0; i < n; ++i) {
                    double hv = t.d[i] * s.u[i];
                    if (i > 0) hv += t.e[i - 1] * s.u[i - 1];
                    if (i + 1 < n) hv += t.e[i] * s.u[i + 1];
                    const double rr = hv - ev1[b] * s.u[i];
                    r2 += rr * rr * hstep;
                }
                s.residual = std::sqrt(r2);
            }
            out.push_back(std::move(s));
        }
    }
    if (out.empty()) throw std::runtime_error("solve_bound_states: no bound state found");
    std::sort(out.begin(), out.end(), [](const BoundState& a, const BoundState& b) { return a.e < b.e; });
    if (out.front().l != 0) throw std::runtime_error("solve_bound_states: ground state not s-wave");
    return out;
}

}  // namespace qedion
