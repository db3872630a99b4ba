#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qedion/electron/model.hpp"
#include "qedion/util/special.hpp"

namespace qedion {

// Channel label (l, m) for the partial-wave representation.
struct Channel {
    int l;
    int m;
    friend bool operator<(const Channel& a, const Channel& b) {
        return a.l != b.l ? a.l < b.l : a.m < b.m;
    }
    friend bool operator==(const Channel& a, const Channel& b) { return a.l == b.l && a.m == b.m; }
};

// Electron function psi(x) = sum_{lm} (u_{lm}(r)/r) Y_{lm}(x^), with the
// reduced radial channels u_{lm} on the model's interior grid. The L2 inner
// product is h * sum_i conj(u) u summed over channels.
class PWFunction {
public:
    PWFunction() = default;
    explicit PWFunction(const ElectronModel* m) : model_(m) {}

    const ElectronModel& model() const { return *model_; }

    std::vector<cplx>& channel(Channel c) {
        auto it = ch_.find(c);
        if (it == ch_.end()) it = ch_.emplace(c, std::vector<cplx>(model_->n_r, cplx{})).first;
        return it->second;
    }
    const std::vector<cplx>* channel_if(Channel c) const {
        auto it = ch_.find(c);
        return it == ch_.end() ? nullptr : &it->second;
    }
    const std::map<Channel, std::vector<cplx>>& channels() const { return ch_; }
    std::map<Channel, std::vector<cplx>>& channels() { return ch_; }

    friend cplx inner(const PWFunction& a, const PWFunction& b) {
        cplx s{};
        for (auto& [c, ua] : a.ch_) {
            const auto* ub = b.channel_if(c);
            if (!ub) continue;
            cplx t{};
            for (std::size_t i = 0; i < ua.size(); ++i) t += std::conj(ua[i]) * (*ub)[i];
            s += t;
        }
        return s * a.model_->h();
    }

    double norm2() const { return inner(*this, *this).real(); }

    PWFunction& axpy(cplx coef, const PWFunction& other) {
        for (auto& [c, u] : other.ch_) {
            auto& mine = channel(c);
            for (std::size_t i = 0; i < u.size(); ++i) mine[i] += coef * u[i];
        }
        return *this;
    }

    PWFunction& scale(cplx coef) {
        for (auto& [c, u] : ch_)
            for (auto& x : u) x *= coef;
        return *this;
    }

    PWFunction& prune(double tol = 0.0) {
        for (auto it = ch_.begin(); it != ch_.end();) {
            double mx = 0.0;
            for (auto& x : it->second) mx = std::max(mx, std::abs(x));
            it = (mx <= tol) ? ch_.erase(it) : std::next(it);
        }
        return *this;
    }

    // point evaluation psi(x); x given as (r, cos theta, phi)
    cplx value(double r, double ct, double phi) const {
        const double h = model_->h();
        const int i = (int)std::floor(r / h) - 1;
        if (i < 0 || i + 1 >= model_->n_r) return cplx{};
        const double t = (r - model_->r(i)) / h;
        cplx s{};
        for (auto& [c, u] : ch_) {
            const cplx ur = (1.0 - t) * u[i] + t * u[i + 1];
            s += ur / r * sph_harmonic(c.l, c.m, ct, phi);
        }
        return s;
    }

private:
    const ElectronModel* model_ = nullptr;
    std::map<Channel, std::vector<cplx>> ch_;
};

// H_el applied channel-wise; same matrix entries as radial_hamiltonian.
inline PWFunction apply_h_el(const PWFunction& psi) {
    const ElectronModel& m = psi.model();
    const double h = m.h();
    const double inv_h2 = 1.0 / (h * h);
    PWFunction out(&m);
    std::vector<double> pd(m.n_r), po(m.n_r);
    for (int i = 0; i < m.n_r; ++i) {
        pd[i] = m.potential_diag_integral(i) / h;
        po[i] = m.potential_offdiag_integral(i) / h;
    }
    for (auto& [c, u] : psi.channels()) {
        auto& v = out.channel(c);
        for (int i = 0; i < m.n_r; ++i) {
            const double r = m.r(i);
            cplx hv = (2.0 * inv_h2 + pd[i] + c.l * (c.l + 1.0) / (r * r)) * u[i];
            if (i > 0) hv += (-inv_h2 + po[i - 1]) * u[i - 1];
            if (i + 1 < m.n_r) hv += (-inv_h2 + po[i]) * u[i + 1];
            v[i] = hv;
        }
    }
    return out;
}

}  // namespace qedion
