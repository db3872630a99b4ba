#pragma once

#include <map>
#include <stdexcept>

#include "qedion/coupling/coupling.hpp"
#include "qedion/electron/spectral.hpp"
#include "qedion/util/power_iter.hpp"
#include "qedion/util/quad.hpp"

namespace qedion {

struct LambdaConstants {
    int beta = 0, gamma = 0;
    double lam1 = 0, lam1t = 0;  // Lambda^(1), tilde Lambda^(1)
    double lam2 = 0, lam2t = 0;  // Lambda^(2), tilde Lambda^(2)
};

struct LambdaOptions {
    int n_radial = 16;          // Gauss nodes in |k|
    double k_min = 1e-3;
    double k_max_factor = 6.0;  // integrate to factor * sigma_kappa
    double pi_tol = 3e-8;       // power-iteration tolerance
};

// Weighted norms of the coupling kernels (gl58-type constants). The
// sandwiched operator norms are invariant under rotations (H_el and mu are
// spherically symmetric, the l-cap commutes with rotations), so every
// (k,lambda) reduces to the z-aligned frame with eps = x^, and the four
// integrals collapse to one radial quadrature with both polarisations and
// the solid angle supplying a factor 8 pi. The scalar prefactor
// kappa(k)/sqrt(omega) multiplies the kernels linearly, so the per-|k|
// norms are computed once for the bare operators and cached across beta
// and kappa scalings.
class LambdaEngine {
public:
    LambdaEngine(const CouplingModel& cm, const ElectronModel& em)
        : cm_(cm), em_(em), ops_(cm_, em_), spec_(em_) {
        b_ = spec_.min_eigenvalue() - cm_.b_offset;
    }

    const CouplingOps& ops() const { return ops_; }
    double b() const { return b_; }
    const ElectronModel& electron_model() const { return em_; }

    PWFunction start_vector() const {
        PWFunction v(&em_);
        DetRng rng(12345);
        for (int l = 0; l <= em_.l_max; ++l)
            for (int m = -l; m <= l; ++m) {
                auto& u = v.channel({l, m});
                for (int i = 0; i < em_.n_r; ++i) {
                    const double r = em_.r(i);
                    u[i] = rng.next() * std::exp(-0.1 * r);
                }
            }
        return v;
    }

    // bare per-|k| norms (no kappa/sqrt(omega) prefactor), cached
    struct PointNorms {
        double n01, n10, nmult;
    };

    const PointNorms& reduced_norms(double kmag, int gamma, double tol = 3e-8) const {
        const auto key = std::make_pair(kmag, gamma);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        PointNorms pn;
        pn.n01 = bare_w01_norm(kmag, gamma, tol);
        pn.n10 = bare_w10_norm(kmag, gamma, tol);
        pn.nmult = bare_mult_norm(kmag, gamma, tol);
        return cache_.emplace(key, pn).first->second;
    }

    double norm_w01(double kmag, int gamma) const {
        return cm_.g_scalar(kmag) * reduced_norms(kmag, gamma).n01;
    }
    double norm_w10(double kmag, int gamma) const {
        return cm_.g_scalar(kmag) * reduced_norms(kmag, gamma).n10;
    }
    double norm_gmult(double kmag, int gamma) const { return reduced_norms(kmag, gamma).nmult; }

    LambdaConstants constants(int beta, int gamma, const LambdaOptions& opt = {}) const {
        LambdaConstants L;
        L.beta = beta;
        L.gamma = gamma;
        const QuadRule kr = gauss_legendre(opt.n_radial, opt.k_min, opt.k_max_factor * cm_.sigma_kappa);
        double s01 = 0, s01t = 0, s10 = 0, s10t = 0;
        double integrand_max = 0, integrand_last = 0;
        for (std::size_t i = 0; i < kr.size(); ++i) {
            const double k = kr.x[i];
            const double om = cm_.disp.omega(k);
            const double g = cm_.g_scalar(k);
            const double wfac = 8.0 * M_PI * kr.w[i] * k * k * g * g;
            const double bw = std::pow(1.0 + om, beta);
            const PointNorms& pn = reduced_norms(k, gamma, opt.pi_tol);
            s01 += wfac * pn.n01 * pn.n01 * bw / om;
            s10 += wfac * pn.n10 * pn.n10 * bw / om;
            s01t += wfac * pn.n01 * pn.n01 * bw;
            s10t += wfac * pn.n10 * pn.n10 * bw;
            L.lam2 += wfac * pn.nmult * pn.nmult * bw / om;
            L.lam2t += wfac * pn.nmult * pn.nmult * bw;
            integrand_last = g * g * pn.nmult * pn.nmult * bw * k * k;
            integrand_max = std::max(integrand_max, integrand_last);
        }
        if (integrand_last > 1e-6 * integrand_max)
            throw std::runtime_error("lambda_constants: integrand has not decayed at the k cutoff");
        L.lam1 = std::max(s01, s10);
        L.lam1t = std::max(s01t, s10t);
        return L;
    }

    // discretised Hypothesis 3 norm: sum_lambda int dk ||G||^2 (1+omega)
    double gl21(const LambdaOptions& opt = {}) const {
        const QuadRule kr = gauss_legendre(opt.n_radial, opt.k_min, opt.k_max_factor * cm_.sigma_kappa);
        double s = 0;
        for (std::size_t i = 0; i < kr.size(); ++i) {
            const double k = kr.x[i];
            const double ng = cm_.g_scalar(k) * reduced_norms(k, 0, opt.pi_tol).nmult;
            s += 8.0 * M_PI * kr.w[i] * k * k * ng * ng * (1.0 + cm_.disp.omega(k));
        }
        return s;
    }

private:
    PWFunction mult_mu_pw(const Vec3& q, const PWFunction& v) const {
        PWField F = plane_wave_field(em_, q, ops_.plane_wave_cut());
        for (auto& [c, f] : F.ch)
            for (int i = 0; i < em_.n_r; ++i) f[i] *= cm_.mu(em_.r(i));
        return field_mult(F, v, em_.l_max, ops_.gaunt_cache());
    }

    // bare w01 = 2i grad_x( e^{+ikz} mu . ), bare w10 its adjoint
    PWFunction bare_w01(double kmag, const PWFunction& v) const {
        PWField F = plane_wave_field(em_, {0, 0, kmag}, ops_.plane_wave_cut());
        for (auto& [c, f] : F.ch)
            for (int i = 0; i < em_.n_r; ++i) f[i] *= cm_.mu(em_.r(i));
        PWFunction t = field_mult(F, v, em_.l_max + 1, ops_.gaunt_cache());
        PWFunction out = grad_eps(Vec3{1, 0, 0}, t, em_.l_max);
        out.scale(cplx(0, 2));
        return out;
    }
    PWFunction bare_w10(double kmag, const PWFunction& v) const {
        PWFunction g = grad_eps(Vec3{1, 0, 0}, v, em_.l_max + 1);
        PWField F = plane_wave_field(em_, {0, 0, -kmag}, ops_.plane_wave_cut());
        for (auto& [c, f] : F.ch)
            for (int i = 0; i < em_.n_r; ++i) f[i] *= cm_.mu(em_.r(i));
        PWFunction out = field_mult(F, g, em_.l_max, ops_.gaunt_cache());
        out.scale(cplx(0, 2));
        return out;
    }

    double bare_w01_norm(double kmag, int gamma, double tol) const {
        auto T = [&](const PWFunction& v) {
            PWFunction t = spec_.power(b_, -(gamma + 1) / 2.0, v);
            t = bare_w01(kmag, t);
            return spec_.power(b_, gamma / 2.0, t);
        };
        auto Tadj = [&](const PWFunction& v) {
            PWFunction t = spec_.power(b_, gamma / 2.0, v);
            t = bare_w10(kmag, t);
            return spec_.power(b_, -(gamma + 1) / 2.0, t);
        };
        return run(T, Tadj, tol);
    }
    double bare_w10_norm(double kmag, int gamma, double tol) const {
        auto T = [&](const PWFunction& v) {
            PWFunction t = spec_.power(b_, -(gamma + 1) / 2.0, v);
            t = bare_w10(kmag, t);
            return spec_.power(b_, gamma / 2.0, t);
        };
        auto Tadj = [&](const PWFunction& v) {
            PWFunction t = spec_.power(b_, gamma / 2.0, v);
            t = bare_w01(kmag, t);
            return spec_.power(b_, -(gamma + 1) / 2.0, t);
        };
        return run(T, Tadj, tol);
    }
    double bare_mult_norm(double kmag, int gamma, double tol) const {
        auto T = [&](const PWFunction& v) {
            PWFunction t = spec_.power(b_, -gamma / 2.0, v);
            t = mult_mu_pw({0, 0, -kmag}, t);
            return spec_.power(b_, gamma / 2.0, t);
        };
        auto Tadj = [&](const PWFunction& v) {
            PWFunction t = spec_.power(b_, gamma / 2.0, v);
            t = mult_mu_pw({0, 0, kmag}, t);
            return spec_.power(b_, -gamma / 2.0, t);
        };
        return run(T, Tadj, tol);
    }

    template <class T1, class T2>
    double run(const T1& T, const T2& Tadj, double tol) const {
        std::function<PWFunction(const PWFunction&)> fT = T, fTa = Tadj;
        std::function<double(const PWFunction&)> fn = [](const PWFunction& v) {
            return std::sqrt(v.norm2());
        };
        std::function<void(PWFunction&, double)> fs = [](PWFunction& v, double c) { v.scale(c); };
        return largest_singular_value<PWFunction>(fT, fTa, start_vector(), fn, fs, tol, 250);
    }

    CouplingModel cm_;
    ElectronModel em_;
    CouplingOps ops_;
    SpectralCache spec_;
    double b_;
    mutable std::map<std::pair<double, int>, PointNorms> cache_;
};

}  // namespace qedion
