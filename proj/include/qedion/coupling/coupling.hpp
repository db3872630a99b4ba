#pragma once

#include <cmath>
#include <functional>
#include <memory>

#include "qedion/electron/pwop.hpp"
#include "qedion/electron/solver.hpp"
#include "qedion/photon/mode_grid.hpp"

namespace qedion {

// Interaction kernels built from the factorised coupling
//   G(k,lambda) = kappa(k)/sqrt(omega(k)) eps_lambda(k) e^{-i k.x} mu(x),
// with w^{(1,0)} = -2 G.(-i grad), w^{(0,1)} its adjoint, and the
// second-order kernels assembled from products of the G components.
struct CouplingModel {
    double sigma_kappa = 1.0;   // UV cutoff width (momentum)
    double sigma_mu = 3.0;      // spatial profile width (length)
    double kappa_scale = 1.0;   // overall coupling scale (kappa -> c kappa)
    double b_offset = 1.0;      // resolvent shift b = e0 - b_offset
    Dispersion disp{};

    double kappa(double kmag) const {
        return kappa_scale * std::exp(-0.5 * kmag * kmag / (sigma_kappa * sigma_kappa));
    }
    double mu(double r) const { return std::exp(-0.5 * r * r / (sigma_mu * sigma_mu)); }

    double g_scalar(double kmag) const { return kappa(kmag) / std::sqrt(disp.omega(kmag)); }

    void validate() const {
        if (!(sigma_kappa > 0.0) || !(sigma_mu > 0.0))
            throw std::invalid_argument("coupling: widths must be positive");
    }
};

// Partial-wave application of the interaction kernels on a fixed electron
// model. Holds the Gaunt cache and the plane-wave truncation order.
class CouplingOps {
public:
    CouplingOps(const CouplingModel& cm, const ElectronModel& em, int L_cut = -1)
        : cm_(cm), em_(em), L_cut_(L_cut > 0 ? L_cut : 2 * em.l_max + 2) {}

    const CouplingModel& model() const { return cm_; }
    const ElectronModel& electron_model() const { return em_; }
    int plane_wave_cut() const { return L_cut_; }

    PWField mu_field() const {
        return radial_field(em_, [this](double r) { return cm_.mu(r); });
    }

    // w^{(0,1)}(k,eps) psi = 2i (kappa/sqrt w) eps.grad( e^{+i k.x} mu psi )
    PWFunction w01_apply(const Vec3& k, const Vec3& eps, const PWFunction& psi) const {
        const double km = norm(k);
        const double s = cm_.g_scalar(km);
        if (s == 0.0) return PWFunction(&em_);
        // the gradient shifts l by one, so the intermediate product only
        // needs channels up to l_max + 1
        PWFunction t = field_mult(mu_times_plane_wave({k[0], k[1], k[2]}), psi, em_.l_max + 1, gc_);
        PWFunction out = grad_eps(eps, t, em_.l_max);
        out.scale(cplx(0.0, 2.0 * s));
        return out;
    }

    // w^{(1,0)}(k,eps) psi = 2i (kappa/sqrt w) e^{-i k.x} mu (eps.grad psi)
    PWFunction w10_apply(const Vec3& k, const Vec3& eps, const PWFunction& psi) const {
        const double km = norm(k);
        const double s = cm_.g_scalar(km);
        if (s == 0.0) return PWFunction(&em_);
        PWFunction g = grad_eps(eps, psi, em_.l_max + 1);
        PWFunction out = field_mult(mu_times_plane_wave({-k[0], -k[1], -k[2]}), g, em_.l_max, gc_);
        out.scale(cplx(0.0, 2.0 * s));
        return out;
    }

    PWFunction w01_apply(const Mode& mode, const PWFunction& psi) const {
        return w01_apply(mode.k, polarization_vector(mode.khat, mode.lam), psi);
    }
    PWFunction w10_apply(const Mode& mode, const PWFunction& psi) const {
        return w10_apply(mode.k, polarization_vector(mode.khat, mode.lam), psi);
    }

    // component sum G(k,eps).v for a constant vector v:  (kappa/sqrt w)
    // (eps.v) e^{-ik.x} mu(x) psi  -- the G_i share a single multiplication
    PWFunction g_dot_apply(const Vec3& k, const Vec3& eps, const Vec3& v, bool conj_g,
                           const PWFunction& psi) const {
        const double km = norm(k);
        const double s = cm_.g_scalar(km) * dot(eps, v);
        if (s == 0.0) return PWFunction(&em_);
        const Vec3 q = conj_g ? k : Vec3{-k[0], -k[1], -k[2]};
        PWFunction out = field_mult(mu_times_plane_wave(q), psi, em_.l_max, gc_);
        out.scale(s);
        return out;
    }

    // w^{(2,0)}, w^{(1,1)}, w^{(0,2)} as single multiplication operators:
    //   w20 = g1 g2 (eps1.eps2) e^{-i(k1+k2).x} mu^2
    //   w11 = g1 g2 (eps1.eps2) [e^{+i(k1-k2).x} + e^{-i(k1-k2).x}] mu^2
    //   w02 = g1 g2 (eps1.eps2) e^{+i(k1+k2).x} mu^2
    PWFunction w2_apply(int which, const Mode& m1, const Mode& m2, const PWFunction& psi) const {
        const Vec3 e1 = polarization_vector(m1.khat, m1.lam);
        const Vec3 e2 = polarization_vector(m2.khat, m2.lam);
        const double s = cm_.g_scalar(m1.kmag) * cm_.g_scalar(m2.kmag) * dot(e1, e2);
        if (s == 0.0) return PWFunction(&em_);
        auto mu2 = [this](double r) { return cm_.mu(r) * cm_.mu(r); };
        auto apply_pw = [&](const Vec3& q) {
            PWField F = plane_wave_field(em_, q, L_cut_);
            PWField M = radial_field(em_, mu2);
            PWField FM = field_product(F, M, L_cut_, gc_);
            return field_mult(FM, psi, em_.l_max, gc_);
        };
        PWFunction out(&em_);
        if (which == 20) {
            out = apply_pw({-(m1.k[0] + m2.k[0]), -(m1.k[1] + m2.k[1]), -(m1.k[2] + m2.k[2])});
        } else if (which == 2) {  // w02
            out = apply_pw({m1.k[0] + m2.k[0], m1.k[1] + m2.k[1], m1.k[2] + m2.k[2]});
        } else {  // w11
            out = apply_pw({m1.k[0] - m2.k[0], m1.k[1] - m2.k[1], m1.k[2] - m2.k[2]});
            out.axpy(1.0, apply_pw({m2.k[0] - m1.k[0], m2.k[1] - m1.k[1], m2.k[2] - m1.k[2]}));
        }
        out.scale(s);
        return out;
    }

    const GauntCache& gaunt_cache() const { return gc_; }

private:
    PWField mu_times_plane_wave(const Vec3& q) const {
        PWField F = plane_wave_field(em_, q, L_cut_);
        for (auto& [c, f] : F.ch)
            for (int i = 0; i < em_.n_r; ++i) f[i] *= cm_.mu(em_.r(i));
        return F;
    }

    CouplingModel cm_;
    const ElectronModel& em_;
    int L_cut_;
    mutable GauntCache gc_;
};

}  // namespace qedion
