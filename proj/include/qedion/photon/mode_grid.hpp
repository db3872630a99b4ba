#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "qedion/photon/dispersion.hpp"
#include "qedion/util/quad.hpp"
#include "qedion/util/vec3.hpp"

namespace qedion {

enum class Pol : int { minus = 0, plus = 1 };

// Transversal polarisation basis, spherical-frame convention:
// eps_+(k) = theta_hat, eps_-(k) = -phi_hat; {eps_-, eps_+, k/|k|} is
// right-handed. Smooth away from the z-axis; grids keep nodes off the poles.
// For isotropic photon profiles the azimuthal (-) amplitudes integrate to
// zero on energy shells by mirror symmetry, so the + label carries the
// meridional component that actually ionises.
inline Vec3 polarization_vector(const Vec3& khat, Pol lam) {
    const double ct = khat[2];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    if (st < 1e-14) throw std::domain_error("polarization_vector: k on the z-axis");
    const double cp = khat[0] / st, sp = khat[1] / st;
    if (lam == Pol::plus) return {ct * cp, ct * sp, -st};
    return {sp, -cp, 0.0};
}

struct Mode {
    Vec3 k;        // momentum
    Pol lam;       // polarisation
    double w;      // quadrature weight (momentum^3)
    double omega;  // dispersion value
    double kmag;
    Vec3 khat;
};

// Discretised one-photon momentum/polarisation space with quadrature
// weights: product of a radial rule (|k| > 0) and a spherical rule
// (Gauss-Legendre in cos-theta x uniform azimuth), times both polarisations.
class ModeGrid {
public:
    ModeGrid(QuadRule radial, int n_theta, int n_phi, Dispersion disp = {})
        : disp_(disp), radial_(std::move(radial)), n_theta_(n_theta), n_phi_(n_phi) {
        const QuadRule ct = gauss_legendre(n_theta);
        angular_ct_ = ct;
        for (std::size_t ir = 0; ir < radial_.size(); ++ir) {
            const double r = radial_.x[ir];
            if (!(r > 0.0)) throw std::invalid_argument("ModeGrid: radial node at k = 0");
            for (int it = 0; it < n_theta; ++it) {
                const double c = ct.x[it], s = std::sqrt(1.0 - c * c);
                for (int ip = 0; ip < n_phi; ++ip) {
                    const double phi = 2.0 * M_PI * (ip + 0.5) / n_phi;
                    const Vec3 khat{s * std::cos(phi), s * std::sin(phi), c};
                    const double w = radial_.w[ir] * r * r * ct.w[it] * (2.0 * M_PI / n_phi);
                    for (Pol lam : {Pol::minus, Pol::plus}) {
                        Mode m;
                        m.kmag = r;
                        m.khat = khat;
                        m.k = {r * khat[0], r * khat[1], r * khat[2]};
                        m.lam = lam;
                        m.w = w;
                        m.omega = disp_.omega(r);
                        modes_.push_back(m);
                    }
                }
            }
        }
    }

    const std::vector<Mode>& modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }
    const Mode& mode(std::size_t i) const { return modes_[i]; }
    const Dispersion& dispersion() const { return disp_; }
    const QuadRule& radial() const { return radial_; }
    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }
    double radial_min() const {
        double v = modes_.front().kmag;
        for (const auto& m : modes_) v = std::min(v, m.kmag);
        return v;
    }
    double radial_max() const {
        double v = 0;
        for (const auto& m : modes_) v = std::max(v, m.kmag);
        return v;
    }

    bool same_grid(const ModeGrid& other) const { return this == &other; }

private:
    Dispersion disp_;
    QuadRule radial_;
    QuadRule angular_ct_;
    int n_theta_, n_phi_;
    std::vector<Mode> modes_;
};

}  // namespace qedion
