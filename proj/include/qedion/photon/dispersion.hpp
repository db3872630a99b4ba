#pragma once

#include <cmath>

namespace qedion {

// Photon dispersion omega(|k|) = sqrt(k^2 + m^2); massless by default.
struct Dispersion {
    double mass = 0.0;

    double omega(double kmag) const { return mass == 0.0 ? kmag : std::hypot(kmag, mass); }

    // inverse: |k| with omega(|k|) = w (requires w >= mass)
    double radius(double w) const {
        if (mass == 0.0) return w;
        const double s = (w - mass) * (w + mass);
        return s > 0.0 ? std::sqrt(s) : 0.0;
    }

    // d|k|/dw at energy w (coarea factor for energy-shell integrals)
    double drad_dw(double w) const {
        if (mass == 0.0) return 1.0;
        const double r = radius(w);
        return r > 0.0 ? w / r : 0.0;
    }

    double omega_min() const { return mass; }
};

// Regularised dispersion omega * 1{rlo <= omega <= rhi}.
inline double omega_window(double om, double rlo, double rhi) {
    return (om >= rlo && om <= rhi) ? om : 0.0;
}

}  // namespace qedion
