#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qedion/photon/mode_grid.hpp"
#include "qedion/util/special.hpp"

namespace qedion {

// One-photon momentum function on a ModeGrid: complex value per mode.
// Values on modes of the other polarisation are simply zero when the
// function is built from a scalar profile with a fixed lambda.
class OnePhotonFunction {
public:
    explicit OnePhotonFunction(const ModeGrid& grid) : grid_(&grid), v_(grid.size(), cplx{}) {}

    static OnePhotonFunction from_profile(const ModeGrid& grid,
                                          const std::function<cplx(const Vec3&)>& profile, Pol lam) {
        OnePhotonFunction f(grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (grid.mode(i).lam == lam) f.v_[i] = profile(grid.mode(i).k);
        return f;
    }

    const ModeGrid& grid() const { return *grid_; }
    cplx& operator[](std::size_t i) { return v_[i]; }
    const cplx& operator[](std::size_t i) const { return v_[i]; }
    std::size_t size() const { return v_.size(); }

    // weighted L2 pairing  <f,g> = sum w_m conj(f_m) g_m
    friend cplx inner(const OnePhotonFunction& f, const OnePhotonFunction& g) {
        cplx s{};
        for (std::size_t i = 0; i < f.size(); ++i)
            s += f.grid_->mode(i).w * std::conj(f.v_[i]) * g.v_[i];
        return s;
    }

    double norm2() const { return inner(*this, *this).real(); }

    // ||f||_omega^2 = sum w |f|^2 (1 + 1/omega)
    double omega_norm2() const {
        double s = 0.0;
        for (std::size_t i = 0; i < size(); ++i) {
            const Mode& m = grid_->mode(i);
            s += m.w * std::norm(v_[i]) * (1.0 + 1.0 / m.omega);
        }
        return s;
    }

    // min / max of omega over modes carrying a nonzero value
    std::pair<double, double> omega_support() const {
        double lo = 1e300, hi = -1e300;
        for (std::size_t i = 0; i < size(); ++i)
            if (std::abs(v_[i]) > 0.0) {
                lo = std::min(lo, grid_->mode(i).omega);
                hi = std::max(hi, grid_->mode(i).omega);
            }
        return {lo, hi};
    }

    OnePhotonFunction& scale(cplx c) {
        for (auto& x : v_) x *= c;
        return *this;
    }

    OnePhotonFunction evolved(double t) const {
        OnePhotonFunction g = *this;
        for (std::size_t i = 0; i < size(); ++i)
            g.v_[i] *= std::exp(cplx(0.0, -t * grid_->mode(i).omega));
        return g;
    }

    OnePhotonFunction& normalize() {
        const double n = std::sqrt(norm2());
        for (auto& x : v_) x /= n;
        return *this;
    }

private:
    const ModeGrid* grid_;
    std::vector<cplx> v_;
};

// Smooth compactly supported radial bump exp(-1/(1-u^2)) on |u|<1,
// u = (|k| - center)/halfwidth; the standard mollifier profile.
inline double bump_profile(double kmag, double center, double halfwidth) {
    const double u = (kmag - center) / halfwidth;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

}  // namespace qedion
