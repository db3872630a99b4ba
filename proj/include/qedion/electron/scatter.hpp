#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qedion/electron/model.hpp"
#include "qedion/util/special.hpp"

namespace qedion {

enum class WaveKind { incoming, outgoing };  // the paper's -/+ pairing

struct RadialWave {
    int l;
    double p;
    double delta;           // phase shift
    std::vector<double> R;  // R_l(p, r_i), asymptotically sin(pr - l pi/2 + delta)/(pr)
};

// Regular solution of u'' = [l(l+1)/r^2 + V - p^2] u by Numerov, matched
// beyond the well to Riccati-Bessel free solutions. The integration runs on
// an internal grid aligned with the well edge; the two smooth regions are
// integrated separately and joined by a Taylor step, which keeps the
// matched phase at O(h^4) despite the potential jump. The series start at
// the origin supplies the first two nodes.
inline RadialWave scattering_radial(const ElectronModel& m, int l, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("scattering_radial: need |p| > 0");
    const double q_in = std::sqrt(p * p + m.V0);
    const int M = std::max({8, (int)std::ceil(2.0 * m.a / m.h()), (int)std::ceil(3.0 * m.a * q_in)});
    const double h = m.a / M;
    const int N = (int)std::floor(m.r_max / h) - 1;
    if (N < M + 16) throw std::invalid_argument("scattering_radial: domain too small");
    std::vector<double> u(N);
    auto rr = [&](int j) { return (j + 1) * h; };

    auto rescale = [&](int upto, double s) {
        for (int j = 0; j <= upto; ++j) u[j] *= s;
    };

    // region 1: inside the well, V = -V0
    const double g0c = -m.V0 - p * p;
    const double a1 = g0c / (4.0 * l + 6.0), a2 = g0c * a1 / (8.0 * l + 20.0);
    auto series = [&](double r) {
        return std::pow(r / m.a, l + 1.0) * (1.0 + a1 * r * r + a2 * r * r * r * r);
    };
    u[0] = series(rr(0));
    u[1] = series(rr(1));
    auto g_in = [&](double r) { return l * (l + 1.0) / (r * r) + g0c; };
    auto g_out = [&](double r) { return l * (l + 1.0) / (r * r) - p * p; };
    const double c12 = h * h / 12.0;
    const int iM = M - 1;  // node exactly at r = a
    for (int i = 1; i < iM; ++i) {
        const double Ti = c12 * g_in(rr(i)), Tm = c12 * g_in(rr(i - 1)), Tp = c12 * g_in(rr(i + 1));
        u[i + 1] = ((2.0 + 10.0 * Ti) * u[i] - (1.0 - Tm) * u[i - 1]) / (1.0 - Tp);
        if (std::abs(u[i + 1]) > 1e250) rescale(i + 1, 1e-250);
    }

    // bridge at r = a: one-sided derivative from the interior, Taylor start
    // into the exterior region
    const double u0 = u[iM];
    const double u1 =
        (25.0 * u[iM] - 48.0 * u[iM - 1] + 36.0 * u[iM - 2] - 16.0 * u[iM - 3] + 3.0 * u[iM - 4]) /
        (12.0 * h);
    {
        const double ll = l * (l + 1.0), A = m.a;
        const double g0 = ll / (A * A) - p * p;
        const double g1 = -2.0 * ll / (A * A * A);
        const double g2 = 6.0 * ll / (A * A * A * A);
        const double g3 = -24.0 * ll / (A * A * A * A * A);
        const double d2 = g0 * u0;
        const double d3 = g0 * u1 + g1 * u0;
        const double d4 = g2 * u0 + 2.0 * g1 * u1 + g0 * d2;
        const double d5 = g3 * u0 + 3.0 * g2 * u1 + 3.0 * g1 * d2 + g0 * d3;
        u[iM + 1] = u0 + h * u1 + h * h / 2 * d2 + h * h * h / 6 * d3 + h * h * h * h / 24 * d4 +
                    h * h * h * h * h / 120 * d5;
    }
    for (int i = iM + 1; i + 1 < N; ++i) {
        const double Ti = c12 * g_out(rr(i)), Tm = c12 * g_out(rr(i - 1)), Tp = c12 * g_out(rr(i + 1));
        u[i + 1] = ((2.0 + 10.0 * Ti) * u[i] - (1.0 - Tm) * u[i - 1]) / (1.0 - Tp);
        if (std::abs(u[i + 1]) > 1e250) rescale(i + 1, 1e-250);
    }

    // match u = alpha S_l + beta C_l at two points past the well
    int i1 = std::min(N - 2, (int)std::ceil(std::max(2.0 * m.a, m.a + 1.0) / h));
    int di = std::max(1, (int)std::lround(M_PI / (2.0 * p * h)));
    int i2 = std::min(N - 1, i1 + di);
    if (i2 == i1) --i1;
    auto riccati = [&](double r, double& S, double& C) {
        std::vector<double> jl, yl;
        sph_bessel_j_all(l, p * r, jl);
        sph_bessel_y_all(l, p * r, yl);
        S = p * r * jl[l];
        C = -p * r * yl[l];
    };
    double S1, C1, S2, C2;
    riccati(rr(i1), S1, C1);
    riccati(rr(i2), S2, C2);
    const double det = S1 * C2 - S2 * C1;
    if (std::abs(det) < 1e-12) throw std::runtime_error("scattering_radial: degenerate match points");
    const double alpha = (u[i1] * C2 - u[i2] * C1) / det;
    const double beta = (S1 * u[i2] - S2 * u[i1]) / det;

    RadialWave w;
    w.l = l;
    w.p = p;
    w.delta = std::atan2(beta, alpha);
    const double amp = std::sqrt(alpha * alpha + beta * beta) * p;

    // cubic interpolation of u onto the model grid
    w.R.resize(m.n_r);
    for (int i = 0; i < m.n_r; ++i) {
        const double r = m.r(i);
        int j = (int)std::floor(r / h) - 1;  // internal node index with rr(j) <= r
        j = std::max(1, std::min(N - 3, j));
        const double t = (r - rr(j)) / h;
        const double um1 = u[j - 1], uu0 = u[j], uu1 = u[j + 1], uu2 = u[j + 2];
        const double c0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
        const double c1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
        const double c2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
        const double c3 = (t + 1.0) * t * (t - 1.0) / 6.0;
        w.R[i] = (c0 * um1 + c1 * uu0 + c2 * uu1 + c3 * uu2) / (amp * r);
    }
    return w;
}

}  // namespace qedion
