#pragma once

#include <map>
#include <memory>

#include "qedion/electron/bound.hpp"
#include "qedion/electron/pw.hpp"
#include "qedion/electron/scatter.hpp"
#include "qedion/util/vec3.hpp"

namespace qedion {

// Direction-resolved generalised eigenfunction with energy |p|^2:
//   phi(p,x) = (2pi)^{-3/2} sum_l (2l+1) i^l e^{i sigma_l} R_l(p,r) P_l(p^.x^),
// sigma_l = -delta_l (incoming, default) or +delta_l (outgoing). The
// amplitude normalisation makes the expansion map U isometric
// (momentum-delta normalisation).
struct ScatteringState {
    Vec3 p;
    double pmag;
    WaveKind kind;
    std::vector<RadialWave> waves;  // l = 0..l_max

    double delta(int l) const { return waves[l].delta; }

    cplx value(const ElectronModel& m, const Vec3& x) const {
        const double r = norm(x);
        const double h = m.h();
        const int i = (int)std::floor(r / h) - 1;
        if (i < 0 || i + 1 >= m.n_r) return cplx{};
        const double t = (r - m.r(i)) / h;
        const double c = r > 0 ? dot(p, x) / (pmag * r) : 1.0;
        std::vector<double> pl;
        legendre_all((int)waves.size() - 1, c, pl);
        cplx s{};
        for (std::size_t l = 0; l < waves.size(); ++l) {
            const double R = (1.0 - t) * waves[l].R[i] + t * waves[l].R[i + 1];
            const double sig = (kind == WaveKind::incoming ? -1.0 : 1.0) * waves[l].delta;
            s += (2.0 * l + 1.0) * ipow((int)l) * std::exp(cplx(0, sig)) * R * pl[l];
        }
        return s * std::pow(2.0 * M_PI, -1.5);
    }
};

class ElectronSolver {
public:
    explicit ElectronSolver(ElectronModel m, WaveKind kind = WaveKind::incoming)
        : model_(std::move(m)), kind_(kind) {
        model_.validate();
        bound_ = solve_bound_states(model_);
    }

    const ElectronModel& model() const { return model_; }
    const std::vector<BoundState>& bound_states() const { return bound_; }
    double e0() const { return bound_.front().e; }
    double e0_grid() const { return bound_.front().e_grid; }
    const BoundState& ground() const { return bound_.front(); }
    WaveKind kind() const { return kind_; }

    // ground state as a PW function (s-wave channel only)
    PWFunction ground_pw() const {
        PWFunction f(&model_);
        auto& u = f.channel({0, 0});
        for (int i = 0; i < model_.n_r; ++i) u[i] = ground().u[i];
        return f;
    }

    const RadialWave& radial_wave(int l, double p) const {
        const auto key = std::make_pair(l, p);
        auto it = waves_.find(key);
        if (it == waves_.end()) it = waves_.emplace(key, scattering_radial(model_, l, p)).first;
        return it->second;
    }

    double phase_shift(int l, double p) const { return radial_wave(l, p).delta; }

    // tail diagnostic: |delta_{l_max}| for the given momentum
    double phase_tail(double p) const { return std::abs(phase_shift(model_.l_max, p)); }

    ScatteringState scattering_state(const Vec3& p) const {
        const double pm = norm(p);
        if (!(pm > 0.0)) throw std::invalid_argument("scattering_state: |p| = 0");
        ScatteringState s;
        s.p = p;
        s.pmag = pm;
        s.kind = kind_;
        for (int l = 0; l <= model_.l_max; ++l) s.waves.push_back(radial_wave(l, pm));
        return s;
    }

    // psi - sum_b <psi_b, psi> psi_b over all bound states (per channel)
    PWFunction ac_project(const PWFunction& psi) const {
        PWFunction out = psi;
        const double h = model_.h();
        for (const auto& b : bound_) {
            for (auto& [c, u] : out.channels()) {
                if (c.l != b.l) continue;
                cplx ov{};
                for (int i = 0; i < model_.n_r; ++i) ov += b.u[i] * u[i];
                ov *= h;
                for (int i = 0; i < model_.n_r; ++i) u[i] -= ov * b.u[i];
            }
        }
        return out;
    }

    // bound-state coefficients <psi_b, psi> restricted to matching channels
    std::vector<std::pair<Channel, cplx>> bound_overlaps(const PWFunction& psi) const {
        std::vector<std::pair<Channel, cplx>> out;
        const double h = model_.h();
        for (const auto& b : bound_)
            for (auto& [c, u] : psi.channels()) {
                if (c.l != b.l) continue;
                cplx ov{};
                for (int i = 0; i < model_.n_r; ++i) ov += b.u[i] * u[i];
                out.emplace_back(c, ov * h);
            }
        return out;
    }

    // channel coefficients of (U psi)(p):
    //   (U psi)(p) = sum_{lm} coef_{lm}(|p|) Y_{lm}(p^),
    //   coef_{lm} = (2pi)^{-3/2} 4pi (-i)^l e^{-i sigma_l} inte R_l(p,r) u_{lm}(r) r dr
    std::vector<std::pair<Channel, cplx>> expand_channels(const PWFunction& psi, double pmag) const {
        std::vector<std::pair<Channel, cplx>> out;
        const double h = model_.h();
        const double pref = std::pow(2.0 * M_PI, -1.5) * 4.0 * M_PI;
        for (auto& [c, u] : psi.channels()) {
            const RadialWave& w = radial_wave(c.l, pmag);
            cplx s{};
            for (int i = 0; i < model_.n_r; ++i) s += w.R[i] * u[i] * model_.r(i);
            s *= h;
            const double sig = (kind_ == WaveKind::incoming ? -1.0 : 1.0) * w.delta;
            const cplx phase = std::conj(ipow(c.l)) * std::exp(cplx(0, -sig));
            out.emplace_back(c, pref * phase * s);
        }
        return out;
    }

    // point value of the expansion, (U psi)(p) = <phi(p), psi>
    cplx expand_point(const PWFunction& psi, const Vec3& p) const {
        const double pm = norm(p);
        const double ct = vec_costheta(p), ph = vec_phi(p);
        cplx s{};
        for (auto& [c, coef] : expand_channels(psi, pm)) s += coef * sph_harmonic(c.l, c.m, ct, ph);
        return s;
    }

private:
    ElectronModel model_;
    WaveKind kind_;
    std::vector<BoundState> bound_;
    mutable std::map<std::pair<int, double>, RadialWave> waves_;
};

}  // namespace qedion
