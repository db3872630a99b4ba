#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "qedion/photon/one_photon.hpp"

namespace qedion {

// Occupation multi-index: sorted (mode, count) pairs, zero counts omitted.
using OccKey = std::vector<std::pair<std::uint32_t, std::uint8_t>>;

inline int occ_total(const OccKey& k) {
    int n = 0;
    for (auto& [m, c] : k) n += c;
    return n;
}

inline OccKey occ_bump(const OccKey& k, std::uint32_t mode, int delta) {
    OccKey out;
    out.reserve(k.size() + 1);
    bool placed = false;
    for (auto& [m, c] : k) {
        if (m == mode) {
            const int nc = c + delta;
            if (nc > 0) out.emplace_back(m, (std::uint8_t)nc);
            placed = true;
        } else {
            if (!placed && m > mode && delta > 0) {
                out.emplace_back(mode, (std::uint8_t)delta);
                placed = true;
            }
            out.emplace_back(m, c);
        }
    }
    if (!placed && delta > 0) out.emplace_back(mode, (std::uint8_t)delta);
    return out;
}

inline int occ_count(const OccKey& k, std::uint32_t mode) {
    for (auto& [m, c] : k)
        if (m == mode) return c;
    return 0;
}

struct FockOpDiag {
    double dropped_norm2 = 0.0;  // squared norm pushed above N_max and discarded
};

// Sparse vector over photon occupation multi-indices, total occupation
// bounded by n_max. Amplitudes are stored against the discrete mode
// operators a_m with [a_m, a_m'^*] = delta; the sqrt(w) weight absorption
// happens in the smeared create/annihilate below, so the discrete CCR
// reproduces the continuum pairing <f,g> on the grid.
class FockVector {
public:
    FockVector(const ModeGrid& grid, int n_max) : grid_(&grid), n_max_(n_max) {}

    static FockVector vacuum(const ModeGrid& grid, int n_max) {
        FockVector v(grid, n_max);
        v.amp_[OccKey{}] = 1.0;
        return v;
    }

    const ModeGrid& grid() const { return *grid_; }
    int n_max() const { return n_max_; }
    const std::map<OccKey, cplx>& amplitudes() const { return amp_; }
    std::map<OccKey, cplx>& amplitudes() { return amp_; }

    void add(const OccKey& k, cplx a) {
        auto it = amp_.find(k);
        if (it == amp_.end())
            amp_.emplace(k, a);
        else
            it->second += a;
    }

    double norm2() const {
        double s = 0.0;
        for (auto& [k, a] : amp_) s += std::norm(a);
        return s;
    }

    FockVector& scale(cplx c) {
        for (auto& [k, a] : amp_) a *= c;
        return *this;
    }

    FockVector& axpy(cplx c, const FockVector& other) {
        check_grid(other.grid());
        for (auto& [k, a] : other.amp_) add(k, c * a);
        return *this;
    }

    // drop numerically dead entries (keeps maps compact after cancellations)
    FockVector& prune(double tol = 0.0) {
        for (auto it = amp_.begin(); it != amp_.end();)
            it = (std::abs(it->second) <= tol) ? amp_.erase(it) : std::next(it);
        return *this;
    }

    friend cplx inner(const FockVector& a, const FockVector& b) {
        a.check_grid(b.grid());
        cplx s{};
        const auto& small = a.amp_.size() <= b.amp_.size() ? a.amp_ : b.amp_;
        const auto& big = a.amp_.size() <= b.amp_.size() ? b.amp_ : a.amp_;
        const bool conj_small = (&small == &a.amp_);
        for (auto& [k, x] : small) {
            auto it = big.find(k);
            if (it == big.end()) continue;
            s += conj_small ? std::conj(x) * it->second : std::conj(it->second) * x;
        }
        return s;
    }

    int max_total_occupation() const {
        int n = 0;
        for (auto& [k, a] : amp_) n = std::max(n, occ_total(k));
        return n;
    }

    void check_grid(const ModeGrid& g) const {
        if (&g != grid_) throw std::invalid_argument("fock: mode grids differ");
    }

private:
    const ModeGrid* grid_;
    int n_max_;
    std::map<OccKey, cplx> amp_;
};

// a*(f) psi. Components pushed above n_max are dropped and their squared
// norm reported through diag.
inline FockVector create(const OnePhotonFunction& f, const FockVector& psi,
                         FockOpDiag* diag = nullptr) {
    psi.check_grid(f.grid());
    const ModeGrid& g = psi.grid();
    FockVector out(g, psi.n_max());
    FockVector dropped(g, psi.n_max() + 1);
    for (auto& [k, a] : psi.amplitudes()) {
        const int tot = occ_total(k);
        const bool room = tot + 1 <= psi.n_max();
        for (std::size_t m = 0; m < g.size(); ++m) {
            if (f[m] == 0.0) continue;
            const double sw = std::sqrt(g.mode(m).w);
            const cplx coef = a * f[m] * sw * std::sqrt((double)occ_count(k, m) + 1.0);
            if (room)
                out.add(occ_bump(k, (std::uint32_t)m, +1), coef);
            else
                dropped.add(occ_bump(k, (std::uint32_t)m, +1), coef);
        }
    }
    out.prune();
    if (diag) diag->dropped_norm2 += dropped.norm2();
    return out;
}

// a(f) psi; a(f) Omega = 0 exactly.
inline FockVector annihilate(const OnePhotonFunction& f, const FockVector& psi) {
    psi.check_grid(f.grid());
    const ModeGrid& g = psi.grid();
    FockVector out(g, psi.n_max());
    for (auto& [k, a] : psi.amplitudes())
        for (auto& [m, c] : k) {
            if (f[m] == 0.0) continue;
            const double sw = std::sqrt(g.mode(m).w);
            out.add(occ_bump(k, m, -1), a * std::conj(f[m]) * sw * std::sqrt((double)c));
        }
    out.prune();
    return out;
}

// H_{f,(rlo,rhi)} psi: diagonal, each basis vector scaled by the summed
// windowed dispersion of its occupied modes (with multiplicity).
inline FockVector field_energy(const FockVector& psi, double rlo = 0.0,
                               double rhi = std::numeric_limits<double>::infinity()) {
    if (!(rlo < rhi)) throw std::invalid_argument("field_energy: need rlo < rhi");
    FockVector out(psi.grid(), psi.n_max());
    for (auto& [k, a] : psi.amplitudes()) {
        double E = 0.0;
        for (auto& [m, c] : k) E += c * omega_window(psi.grid().mode(m).omega, rlo, rhi);
        if (E != 0.0) out.add(k, E * a);
    }
    return out;
}

// e^{-i t H_f} psi
inline FockVector free_evolve_photons(const FockVector& psi, double t) {
    FockVector out(psi.grid(), psi.n_max());
    for (auto& [k, a] : psi.amplitudes()) {
        double E = 0.0;
        for (auto& [m, c] : k) E += c * psi.grid().mode(m).omega;
        out.add(k, a * std::exp(cplx(0.0, -t * E)));
    }
    return out;
}

// Photon cloud specification: a*(f_1) ... a*(f_N) applied to the vacuum.
struct CloudSpec {
    std::vector<OnePhotonFunction> photons;

    std::size_t size() const { return photons.size(); }

    // every photon profile must have compact omega-support away from 0
    void validate() const {
        for (const auto& f : photons) {
            auto [lo, hi] = f.omega_support();
            if (!(lo > 0.0) || !(hi < 1e300))
                throw std::invalid_argument("cloud: photon support must be compact away from omega=0");
        }
    }
};

inline FockVector cloud_state(const CloudSpec& A, const ModeGrid& grid, int n_max,
                              FockOpDiag* diag = nullptr) {
    if ((int)A.size() > n_max) throw std::invalid_argument("cloud_state: N exceeds N_max");
    FockVector v = FockVector::vacuum(grid, n_max);
    for (auto it = A.photons.rbegin(); it != A.photons.rend(); ++it) v = create(*it, v, diag);
    return v;
}

}  // namespace qedion
