#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qedion/ion/rho.hpp"
#include "qedion/photon/one_photon.hpp"
#include "qedion/util/quad.hpp"

namespace qedion {

// Single-photon momentum wavefunction: isotropic smooth bump with compact
// support away from zero, fixed polarisation.
struct PhotonWavefunction {
    double center = 1.0;
    double halfwidth = 0.2;
    Pol lam = Pol::plus;
    cplx scale = 1.0;
    std::string id = "phi";

    cplx value(double kmag) const { return scale * bump_profile(kmag, center, halfwidth); }
    double lo() const { return center - halfwidth; }
    double hi() const { return center + halfwidth; }

    void validate(const Dispersion& d) const {
        if (!(lo() > 0.0)) throw std::invalid_argument("photon wavefunction touches k = 0");
        (void)d;
    }

    // L2(R^3) normalisation: 4 pi int k^2 |f|^2 dk = |scale|^-2 ...
    PhotonWavefunction normalized() const {
        PhotonWavefunction f = *this;
        QuadRule q = gauss_legendre(64, lo(), hi());
        double n2 = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            n2 += 4.0 * M_PI * q.w[i] * q.x[i] * q.x[i] * std::norm(value(q.x[i]));
        f.scale = scale / std::sqrt(n2);
        return f;
    }

    OnePhotonFunction on_grid(const ModeGrid& g) const {
        return OnePhotonFunction::from_profile(
            g, [this](const Vec3& k) { return value(norm(k)); }, lam);
    }
};

// Angular rules on S^2: Gauss-Legendre in cos(theta) x uniform azimuth.
struct AngularRule {
    std::vector<Vec3> dirs;
    std::vector<double> w;  // sums to 4 pi

    static AngularRule product(int n_theta, int n_phi) {
        AngularRule r;
        QuadRule ct = gauss_legendre(n_theta);
        for (int it = 0; it < n_theta; ++it) {
            const double c = ct.x[it], s = std::sqrt(1 - c * c);
            for (int ip = 0; ip < n_phi; ++ip) {
                const double phi = 2 * M_PI * (ip + 0.5) / n_phi;
                r.dirs.push_back({s * std::cos(phi), s * std::sin(phi), c});
                r.w.push_back(ct.w[it] * 2 * M_PI / n_phi);
            }
        }
        return r;
    }
    std::size_t size() const { return dirs.size(); }
};

struct IonisationResult {
    double q2 = 0;             // energy-shell value, mu_r(S^2(r)) = 4 pi r^2 normalisation
    double q2_sinc_norm = 0;   // (2 pi)^2 q2: the finite-time oracle's limit
    std::vector<std::pair<double, double>> q_density;  // (p, q(p)) with integral q2
    double quad_err_est = 0;   // angular order-doubling estimate
    double interp_resid = 0;   // cubic-vs-linear radial interpolation delta
};

// Shell and finite-time ionisation functionals built on a RhoHat table.
// The photon-side angular integral collapses once per direction into
//   K_l(p^) = sum_k^ w (eps_l(k^).p^) P'_l(p^.k^),
// so shells, sinc integrals and cloud amplitudes all reduce to the complex
// channel series chi_l(p, r).
class Q2Engine {
public:
    Q2Engine(const RhoHat& rho, int k_ntheta = 8, int k_nphi = 12, int p_ntheta = 10,
             int p_nphi = 20)
        : rho_(&rho),
          dispersion_(rho.ops().model().disp),
          kang_(AngularRule::product(k_ntheta, k_nphi)),
          pang_(AngularRule::product(p_ntheta, p_nphi)) {
        build_K();
    }

    const RhoHat& rho() const { return *rho_; }
    const AngularRule& p_rule() const { return pang_; }
    const Dispersion& disp() const { return dispersion_; }

    double e0() const { return rho_->solver().e0(); }

    // K table for polarisation lam: [p-dir][l]
    const std::vector<std::vector<double>>& K(Pol lam) const {
        return K_[lam == Pol::minus ? 0 : 1];
    }
    // M^{ll'} contraction matrix between polarisations
    const std::vector<double>& M(Pol la, Pol lb) const {
        return M_[(la == Pol::minus ? 0 : 1) * 2 + (lb == Pol::minus ? 0 : 1)];
    }

    // u_p(y): single-shell integral at radius solving omega = p^2 - e0 - y
    cplx u_p(const PhotonWavefunction& phi, double pmag, const Vec3& phat, double y,
             bool linear_radial = false) const {
        const double E = pmag * pmag - e0() - y;
        if (!(E > dispersion_.omega_min())) return cplx{};
        const double r = dispersion_.radius(E);
        const cplx fv = phi.value(r);
        if (fv == cplx{}) return cplx{};
        if (!rho_->k_axis().covers(r))
            throw std::runtime_error("shell radius outside the tabulated k range where phi != 0");
        const double jac = r * r * dispersion_.drad_dw(E);
        return jac * fv * channel_sum(phi.lam, pmag, phat, r, linear_radial);
    }

    // q2_shell with its density and diagnostics
    IonisationResult q2_shell(const PhotonWavefunction& phi, int n_E = 64) const {
        IonisationResult res;
        const double wlo = dispersion_.omega(phi.lo()), whi = dispersion_.omega(phi.hi());
        const double Elo = std::max(e0() + wlo, 1e-12), Ehi = e0() + whi;
        if (!(Ehi > Elo)) {
            // below threshold: every shell misses the support; exact zero
            return res;
        }
        check_coverage(phi);
        const QuadRule Er = gauss_legendre(n_E, Elo, Ehi);
        double q2 = 0, q2_lin = 0, q2_coarse = 0;
        res.q_density.reserve(Er.size());
        for (std::size_t ie = 0; ie < Er.size(); ++ie) {
            const double E = Er.x[ie];
            const double p = std::sqrt(E);
            const double sh = shell_density(phi, p, false, false);
            const double sh_lin = shell_density(phi, p, true, false);
            const double sh_coarse = shell_density(phi, p, false, true);
            const double jacp = std::sqrt(E) / 2.0;  // d^3p = p^2 dp dOmega, dE = 2 p dp
            q2 += Er.w[ie] * jacp * sh;
            q2_lin += Er.w[ie] * jacp * sh_lin;
            q2_coarse += Er.w[ie] * jacp * sh_coarse;
            res.q_density.emplace_back(p, p * p * sh);
        }
        double q2_half = 0;
        const QuadRule Eh = gauss_legendre(std::max(8, n_E / 2), Elo, Ehi);
        for (std::size_t ie = 0; ie < Eh.size(); ++ie) {
            const double E = Eh.x[ie];
            q2_half += Eh.w[ie] * (std::sqrt(E) / 2.0) * shell_density(phi, std::sqrt(E), false, false);
        }
        res.q2 = q2;
        res.q2_sinc_norm = 4.0 * M_PI * M_PI * q2;
        res.interp_resid = std::abs(q2 - q2_lin);
        res.quad_err_est = std::abs(q2 - q2_coarse) + std::abs(q2 - q2_half);
        return res;
    }

    // electron-energy quadrature resolving the sinc kernel at time t for a
    // set of photon bands, clamped to the tabulated p range
    QuadRule electron_energy_rule(double wlo, double whi, double t) const {
        const double pad = (whi - wlo) + 0.8 * std::abs(e0());
        double Elo = std::max(e0() + wlo - pad, 1e-9);
        double Ehi = std::max(e0() + whi + pad, 0.2 * std::abs(e0()));
        const double pmin = rho_->p_axis().xmin(), pmax = rho_->p_axis().xmax();
        Elo = std::max(Elo, pmin * pmin);
        Ehi = std::min(Ehi, pmax * pmax);
        return resolved_rule(Elo, Ehi, M_PI / (2.0 * t), 4);
    }

    // G_l(t, p) = int dw K_t(p^2-e0-w) phi(r(w)) r^2 (dr/dw) chi_l(p, r(w)):
    // the s-integral of eq-268 type done analytically per (p,k) and the
    // photon angular integral folded into the K tables
    std::vector<cplx> sinc_channels(const PhotonWavefunction& phi, double t, double pmag) const {
        const int lmax = rho_->l_max();
        std::vector<cplx> G(lmax + 1, cplx{});
        const double wlo = dispersion_.omega(phi.lo()), whi = dispersion_.omega(phi.hi());
        const QuadRule Eph = resolved_rule(wlo, whi, M_PI / (2.0 * t), 4);
        const double E = pmag * pmag;
        for (std::size_t iw = 0; iw < Eph.size(); ++iw) {
            const double om = Eph.x[iw];
            const double r = dispersion_.radius(om);
            const cplx fv = phi.value(r);
            if (fv == cplx{}) continue;
            const double y = E - e0() - om;
            const double kt = std::abs(y) < 1e-14 ? 2.0 * t : 2.0 * std::sin(t * y) / y;
            const cplx c = Eph.w[iw] * kt * fv * r * r * dispersion_.drad_dw(om);
            for (int l = 1; l <= lmax; ++l) G[l] += c * rho_->channel(l, pmag, r);
        }
        return G;
    }

    // finite-time double integral of eq-268 type; converges to
    // (2 pi)^2 q2_shell as t grows
    double q2_time(const PhotonWavefunction& phi, double t) const {
        if (t <= 0.0) return 0.0;
        check_coverage(phi);
        const int lmax = rho_->l_max();
        const double wlo = dispersion_.omega(phi.lo()), whi = dispersion_.omega(phi.hi());
        const QuadRule Eel = electron_energy_rule(wlo, whi, t);
        const auto& Mll = M(phi.lam, phi.lam);
        double q2 = 0;
        for (std::size_t ie = 0; ie < Eel.size(); ++ie) {
            const double E = Eel.x[ie];
            const std::vector<cplx> G = sinc_channels(phi, t, std::sqrt(E));
            double sh = 0;
            for (int l = 1; l <= lmax; ++l)
                for (int lp = 1; lp <= lmax; ++lp)
                    sh += (std::conj(G[l]) * G[lp]).real() * Mll[l * (lmax + 1) + lp];
            q2 += Eel.w[ie] * (std::sqrt(E) / 2.0) * sh;
        }
        return q2;
    }

    // complex channel series sum_l chi_l(p,r) K_l(p^) for arbitrary phat
    cplx channel_sum(Pol lam, double pmag, const Vec3& phat, double r,
                     bool linear_radial = false) const {
        cplx s{};
        std::vector<double> dP;
        const int lmax = rho_->l_max();
        for (std::size_t id = 0; id < kang_.size(); ++id) {
            const Vec3& kh = kang_.dirs[id];
            const Vec3 eps = polarization_vector(kh, lam);
            const double ep = dot(eps, phat);
            if (ep == 0.0) continue;
            legendre_deriv_all(lmax, dot(phat, kh), dP);
            cplx acc{};
            for (int l = 1; l <= lmax; ++l)
                if (dP[l] != 0.0) acc += rho_->channel(l, pmag, r, linear_radial) * dP[l];
            s += kang_.w[id] * ep * acc;
        }
        return s;
    }

private:
    void check_coverage(const PhotonWavefunction& phi) const {
        if (!rho_->k_axis().covers(phi.lo()) || !rho_->k_axis().covers(phi.hi()))
            throw std::runtime_error(
                "photon wavefunction support is not covered by the rho table's k range");
    }

    // Sum over p-directions of |u|^2 at the shell radius, via the K tables.
    double shell_density(const PhotonWavefunction& phi, double p, bool linear_radial,
                         bool coarse_angular) const {
        const double E = p * p - e0();
        const double r = dispersion_.radius(E);
        const cplx fv = phi.value(r);
        if (fv == cplx{}) return 0.0;
        const double jac = r * r * dispersion_.drad_dw(E);
        const int lmax = rho_->l_max();
        std::vector<cplx> chi(lmax + 1);
        for (int l = 1; l <= lmax; ++l) chi[l] = rho_->channel(l, p, r, linear_radial);
        const auto& Mll = coarse_angular ? Mc_[pol_index(phi.lam) * 2 + pol_index(phi.lam)]
                                         : M(phi.lam, phi.lam);
        double s = 0;
        for (int l = 1; l <= lmax; ++l)
            for (int lp = 1; lp <= lmax; ++lp)
                s += (std::conj(chi[l]) * chi[lp]).real() * Mll[l * (lmax + 1) + lp];
        return std::norm(fv) * jac * jac * s;
    }

    static int pol_index(Pol l) { return l == Pol::minus ? 0 : 1; }

    void build_K() {
        const int lmax = rho_->l_max();
        for (int q = 0; q < 2; ++q) {
            K_[q].assign(pang_.size(), std::vector<double>(lmax + 1, 0.0));
            const Pol lam = q == 0 ? Pol::minus : Pol::plus;
            for (std::size_t id = 0; id < pang_.size(); ++id) {
                const Vec3& ph = pang_.dirs[id];
                std::vector<double> dP;
                for (std::size_t ik = 0; ik < kang_.size(); ++ik) {
                    const Vec3& kh = kang_.dirs[ik];
                    const Vec3 eps = polarization_vector(kh, lam);
                    const double ep = dot(eps, ph);
                    if (ep == 0.0) continue;
                    legendre_deriv_all(lmax, dot(ph, kh), dP);
                    for (int l = 1; l <= lmax; ++l) K_[q][id][l] += kang_.w[ik] * ep * dP[l];
                }
            }
        }
        // M contraction over p directions; also a coarser variant for the
        // quadrature error estimate (half the azimuthal count)
        AngularRule coarse = AngularRule::product(
            std::max(4, (int)std::sqrt((double)pang_.size() / 4.0)), 8);
        auto build_M = [&](const AngularRule& rule, bool use_table,
                           std::array<std::vector<double>, 4>& Mout) {
            const int n = lmax + 1;
            for (int qa = 0; qa < 2; ++qa)
                for (int qb = 0; qb < 2; ++qb) {
                    auto& Mref = Mout[qa * 2 + qb];
                    Mref.assign(n * n, 0.0);
                    for (std::size_t id = 0; id < rule.size(); ++id) {
                        std::vector<double> Ka(n, 0.0), Kb(n, 0.0);
                        if (use_table) {
                            Ka = K_[qa][id];
                            Kb = K_[qb][id];
                        } else {
                            std::vector<double> dP;
                            for (std::size_t ik = 0; ik < kang_.size(); ++ik) {
                                const Vec3& kh = kang_.dirs[ik];
                                const Vec3 ea = polarization_vector(kh, qa == 0 ? Pol::minus : Pol::plus);
                                const Vec3 eb = polarization_vector(kh, qb == 0 ? Pol::minus : Pol::plus);
                                const double wa = dot(ea, rule.dirs[id]);
                                const double wb = dot(eb, rule.dirs[id]);
                                legendre_deriv_all(lmax, dot(rule.dirs[id], kh), dP);
                                for (int l = 1; l <= lmax; ++l) {
                                    Ka[l] += kang_.w[ik] * wa * dP[l];
                                    Kb[l] += kang_.w[ik] * wb * dP[l];
                                }
                            }
                        }
                        for (int l = 1; l <= lmax; ++l)
                            for (int lp = 1; lp <= lmax; ++lp)
                                Mref[l * n + lp] += rule.w[id] * Ka[l] * Kb[lp];
                    }
                }
        };
        build_M(pang_, true, M_);
        build_M(coarse, false, Mc_);
    }

    const RhoHat* rho_;
    Dispersion dispersion_;
    AngularRule kang_, pang_;
    std::array<std::vector<std::vector<double>>, 2> K_;  // [pol][p-dir][l]
    std::array<std::vector<double>, 4> M_;               // [pol a * 2 + pol b][(l,l')]
    std::array<std::vector<double>, 4> Mc_;
};

}  // namespace qedion
