#pragma once

#include <stdexcept>
#include <vector>

#include "qedion/coupling/coupling.hpp"
#include "qedion/electron/solver.hpp"
#include "qedion/photon/mode_grid.hpp"

namespace qedion {

// 4-point Lagrange cubic interpolation on a uniform table.
struct UniformAxis {
    double x0 = 0, dx = 1;
    int n = 0;

    double x(int i) const { return x0 + i * dx; }
    double xmin() const { return x0; }
    double xmax() const { return x0 + (n - 1) * dx; }
    bool covers(double xx) const { return xx >= xmin() - 1e-12 && xx <= xmax() + 1e-12; }

    // base index j and normalized offset t for the 4-point stencil j-1..j+2
    void locate(double xx, int& j, double& t) const {
        j = (int)std::floor((xx - x0) / dx);
        j = std::max(1, std::min(n - 3, j));
        t = (xx - x(j)) / dx;
    }

    template <class T>
    T cubic(const T* v, int stride, double xx) const {
        int j;
        double t;
        locate(xx, j, t);
        const double c0 = -t * (t - 1) * (t - 2) / 6.0;
        const double c1 = (t + 1) * (t - 1) * (t - 2) / 2.0;
        const double c2 = -(t + 1) * t * (t - 2) / 2.0;
        const double c3 = (t + 1) * t * (t - 1) / 6.0;
        return c0 * v[(j - 1) * stride] + c1 * v[j * stride] + c2 * v[(j + 1) * stride] +
               c3 * v[(j + 2) * stride];
    }
    template <class T>
    T linear(const T* v, int stride, double xx) const {
        int j;
        double t;
        locate(xx, j, t);
        if (t < 0) t = 0;
        if (t > 1) t = 1;
        return (1 - t) * v[j * stride] + t * v[(j + 1) * stride];
    }
};

// Transition amplitude table
//   rho_l(p,k) = <phi(p), w01(k,lambda) phi0>
// in the partial-wave reduced form
//   rho = c0 (kappa(k)/sqrt(omega)) (eps_l(k).p^) sum_l e^{+-i delta_l(p)} P'_l(p^.k^) J_l(p,k),
//   J_l = I_{l,l-1} + I_{l,l+1},  I_{lL}(p,k) = int r^2 R_l(p,r) j_L(kr) g(r) dr,
//   g = d/dr (mu(r) phi0(r)),  c0 = 8 pi (2 pi)^{-3/2}.
// The transversality of eps removes the ik-term of the gradient and the x^
// factor enforces the l -> l+-1 dipole rule, which is what collapses the
// angular sums to a single Legendre-derivative series.
class RhoHat {
public:
    RhoHat(const ElectronSolver& solver, const CouplingOps& ops, UniformAxis p_axis,
           UniformAxis k_axis, double tail_tol = 1e-4)
        : solver_(&solver), ops_(&ops), pax_(p_axis), kax_(k_axis) {
        const ElectronModel& em = solver.model();
        lmax_ = em.l_max;
        if (ops_->model().kappa_scale != 0.0) {
            for (double p : {pax_.xmin(), pax_.xmax()})
                if (solver.phase_tail(p) > tail_tol)
                    throw std::runtime_error("rho_hat: phase-shift tail above tolerance; raise l_max");
        }

        // g(r) on the model grid (4th-order differences, zero padded)
        const int n = em.n_r;
        const double h = em.h();
        std::vector<double> mphi(n);
        const auto& u0 = solver.ground().u;
        for (int i = 0; i < n; ++i)
            mphi[i] = ops.model().mu(em.r(i)) * u0[i] / (std::sqrt(4.0 * M_PI) * em.r(i));
        std::vector<double> g(n);
        auto at = [&](int i) { return (i < 0 || i >= n) ? 0.0 : mphi[i]; };
        for (int i = 0; i < n; ++i)
            g[i] = (8.0 * (at(i + 1) - at(i - 1)) - (at(i + 2) - at(i - 2))) / (12.0 * h);

        // integration weights r^2 g(r) h, truncated where g has died
        int r_cut = n;
        double gmax = 0;
        for (int i = 0; i < n; ++i) gmax = std::max(gmax, std::abs(g[i]));
        while (r_cut > 8 && std::abs(g[r_cut - 1]) < 1e-15 * gmax) --r_cut;
        std::vector<double> wgt(r_cut);
        for (int i = 0; i < r_cut; ++i) wgt[i] = em.r(i) * em.r(i) * g[i] * h;

        // Bessel rows per k-node and radial waves/phases per p-node
        std::vector<std::vector<double>> B(kax_.n);  // [ik][(L)(r)] flattened L-major
        const int nL = lmax_ + 2;
        std::vector<double> jrow;
        for (int ik = 0; ik < kax_.n; ++ik) {
            B[ik].resize((std::size_t)nL * r_cut);
            const double k = kax_.x(ik);
            for (int i = 0; i < r_cut; ++i) {
                sph_bessel_j_all(lmax_ + 1, k * em.r(i), jrow);
                for (int L = 0; L < nL; ++L) B[ik][(std::size_t)L * r_cut + i] = jrow[L];
            }
        }

        J_.assign(lmax_ + 1, std::vector<double>((std::size_t)pax_.n * kax_.n, 0.0));
        delta_.assign(lmax_ + 1, std::vector<double>(pax_.n, 0.0));
        for (int ip = 0; ip < pax_.n; ++ip) {
            const double p = pax_.x(ip);
            for (int l = 0; l <= lmax_; ++l) {
                const RadialWave& w = solver.radial_wave(l, p);
                delta_[l][ip] = w.delta;
                for (int ik = 0; ik < kax_.n; ++ik) {
                    double acc = 0.0;
                    if (l >= 1) {
                        const double* bl = &B[ik][(std::size_t)(l - 1) * r_cut];
                        for (int i = 0; i < r_cut; ++i) acc += w.R[i] * bl[i] * wgt[i];
                    }
                    const double* bu = &B[ik][(std::size_t)(l + 1) * r_cut];
                    double acc2 = 0.0;
                    for (int i = 0; i < r_cut; ++i) acc2 += w.R[i] * bu[i] * wgt[i];
                    J_[l][(std::size_t)ip * kax_.n + ik] = acc + acc2;
                }
            }
        }
    }

    const UniformAxis& p_axis() const { return pax_; }
    const UniformAxis& k_axis() const { return kax_; }
    int l_max() const { return lmax_; }
    const ElectronSolver& solver() const { return *solver_; }
    const CouplingOps& ops() const { return *ops_; }

    double J(int l, double p, double k, bool linear_radial = false) const {
        // cubic in k at four p rows, then cubic in p
        int jp;
        double tp;
        pax_.locate(p, jp, tp);
        double rows[4];
        for (int r = 0; r < 4; ++r) {
            const double* base = &J_[l][(std::size_t)(jp - 1 + r) * kax_.n];
            rows[r] = linear_radial ? kax_.linear(base, 1, k) : kax_.cubic(base, 1, k);
        }
        const double c0 = -tp * (tp - 1) * (tp - 2) / 6.0;
        const double c1 = (tp + 1) * (tp - 1) * (tp - 2) / 2.0;
        const double c2 = -(tp + 1) * tp * (tp - 2) / 2.0;
        const double c3 = (tp + 1) * tp * (tp - 1) / 6.0;
        return c0 * rows[0] + c1 * rows[1] + c2 * rows[2] + c3 * rows[3];
    }

    double delta_at(int l, double p) const { return pax_.cubic(delta_[l].data(), 1, p); }

    cplx phase(int l, double p) const {
        const double d = delta_at(l, p);
        const double sgn = solver_->kind() == WaveKind::incoming ? +1.0 : -1.0;
        return std::exp(cplx(0.0, sgn * d));
    }

    // chi_l(p,k) := c0 g(k) phase_l(p) J_l(p,k); rho = (eps.p^) sum_l chi_l P'_l
    cplx channel(int l, double p, double k, bool linear_radial = false) const {
        const double c0 = 8.0 * M_PI * std::pow(2.0 * M_PI, -1.5);
        return c0 * ops_->model().g_scalar(k) * phase(l, p) * J(l, p, k, linear_radial);
    }

    cplx value(double pmag, const Vec3& phat, double kmag, const Vec3& khat, Pol lam,
               bool linear_radial = false) const {
        const Vec3 eps = polarization_vector(khat, lam);
        const double ep = dot(eps, phat);
        if (ep == 0.0) return cplx{};
        std::vector<double> dP;
        legendre_deriv_all(lmax_, dot(phat, khat), dP);
        cplx s{};
        for (int l = 1; l <= lmax_; ++l)
            if (dP[l] != 0.0) s += channel(l, pmag, kmag, linear_radial) * dP[l];
        return ep * s;
    }

    // cartesian k-derivative by central differences (for regularity checks)
    cplx value_dk(double pmag, const Vec3& phat, const Vec3& k, Pol lam, int axis, double hk) const {
        Vec3 kp = k, km = k;
        kp[axis] += hk;
        km[axis] -= hk;
        const double kpm = norm(kp), kmm = norm(km);
        return (value(pmag, phat, kpm, scaled(kp, 1.0 / kpm), lam) -
                value(pmag, phat, kmm, scaled(km, 1.0 / kmm), lam)) /
               (2.0 * hk);
    }

private:
    const ElectronSolver* solver_;
    const CouplingOps* ops_;
    UniformAxis pax_, kax_;
    int lmax_;
    std::vector<std::vector<double>> J_;      // per l: [ip][ik]
    std::vector<std::vector<double>> delta_;  // per l: [ip]
};

}  // namespace qedion
