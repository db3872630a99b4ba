#pragma once

#include <map>
#include <vector>

#include "qedion/ion/q2.hpp"
#include "qedion/photon/fock.hpp"

namespace qedion {

// Psi(A) = lim_t int_{-t}^t ds [W1_{-s}, A] Phi0 on the truncated product
// space. Only the annihilation half of W1 survives the commutator with a
// product of creation operators, which reduces Psi(A) to one term per cloud
// photon: an electron amplitude times the (N-1)-photon state with that
// photon removed. The free photon phases cancel against e^{i s H_f}, so the
// photon factors are time independent; the s-integral acts on the electron
// factor as the spectral kernel 2 sin(t D)/D with D = H_el - e0 - omega(k),
// evaluated here in the generalized-eigenfunction representation.
struct BoundAmp {
    int b;  // bound state index
    int m;  // magnetic channel
    cplx amp;
};

struct TensorTerm {
    Pol lam;                            // polarisation of the removed photon
    std::vector<cplx> channels;  // G_l(E) flattened [iE * (lmax+1) + l]
    std::vector<BoundAmp> bound;
    FockVector photon;           // product state of the remaining photons

    TensorTerm(Pol p, FockVector f) : lam(p), photon(std::move(f)) {}
};

struct TensorState {
    QuadRule e_rule;  // shared electron-energy rule
    int lmax = 0;
    std::vector<TensorTerm> terms;

    bool empty() const { return terms.empty(); }
};

struct PsiCloudOptions {
    double min_window = 8.0;   // required t * |e0|
    bool bound_parts = true;   // tabulate the point-spectrum amplitudes too
};

// One-photon bound-channel amplitudes <psi_b, w01(k,lam) phi0> integrated
// against phi(k) K_t(e_b - e0 - omega): the photoexcitation part of Psi(A).
// Goes through the full partial-wave operator route on the mode grid.
inline std::vector<BoundAmp> bound_amplitudes(const Q2Engine& eng, const PhotonWavefunction& phi,
                                              double t, const ModeGrid& grid) {
    const ElectronSolver& solver = eng.rho().solver();
    const CouplingOps& ops = eng.rho().ops();
    const double e0 = solver.e0();
    const double h = solver.model().h();
    PWFunction g0 = solver.ground_pw();
    const auto& bs = solver.bound_states();
    std::map<std::pair<int, int>, cplx> acc;
    for (std::size_t im = 0; im < grid.size(); ++im) {
        const Mode& md = grid.mode(im);
        if (md.lam != phi.lam) continue;
        const cplx fv = phi.value(md.kmag);
        if (fv == cplx{}) continue;
        PWFunction w = ops.w01_apply(md, g0);
        for (std::size_t b = 0; b < bs.size(); ++b) {
            const double y = bs[b].e_grid - e0 - md.omega;
            const double kt = std::abs(y) < 1e-14 ? 2.0 * t : 2.0 * std::sin(t * y) / y;
            for (auto& [c, u] : w.channels()) {
                if (c.l != bs[b].l) continue;
                cplx o{};
                for (int i = 0; i < solver.model().n_r; ++i) o += bs[b].u[i] * u[i];
                o *= h;
                if (o != cplx{}) acc[{(int)b, c.m}] += md.w * fv * kt * o;
            }
        }
    }
    std::vector<BoundAmp> out;
    for (auto& [key, v] : acc) out.push_back({key.first, key.second, v});
    return out;
}

inline TensorState psi_cloud(const Q2Engine& eng, const std::vector<PhotonWavefunction>& photons,
                             double t, const ModeGrid& grid, int n_max,
                             const PsiCloudOptions& opt = {}) {
    TensorState st;
    st.lmax = eng.rho().l_max();
    if (photons.empty()) return st;  // [W1, identity] = 0
    const double e0 = eng.e0();
    if (t * std::abs(e0) < opt.min_window)
        throw std::invalid_argument("psi_cloud: s-window too small for the commutator tail");

    double wlo = 1e300, whi = 0;
    for (const auto& f : photons) {
        f.validate(eng.disp());
        wlo = std::min(wlo, eng.disp().omega(f.lo()));
        whi = std::max(whi, eng.disp().omega(f.hi()));
    }
    st.e_rule = eng.electron_energy_rule(wlo, whi, t);

    for (std::size_t j = 0; j < photons.size(); ++j) {
        // photon factor: product of the other creation operators on the vacuum
        CloudSpec rest;
        for (std::size_t l = 0; l < photons.size(); ++l)
            if (l != j) rest.photons.push_back(photons[l].on_grid(grid));
        TensorTerm term(photons[j].lam, cloud_state(rest, grid, n_max));
        const int nl = st.lmax + 1;
        term.channels.assign(st.e_rule.size() * nl, cplx{});
        for (std::size_t ie = 0; ie < st.e_rule.size(); ++ie) {
            const std::vector<cplx> G = eng.sinc_channels(photons[j], t, std::sqrt(st.e_rule.x[ie]));
            for (int l = 0; l < nl; ++l) term.channels[ie * nl + l] = G[l];
        }
        if (opt.bound_parts) term.bound = bound_amplitudes(eng, photons[j], t, grid);
        st.terms.push_back(std::move(term));
    }
    return st;
}

// || (1_ac x 1) Psi ||^2 assembled from the electron channel tables and the
// photon Gram matrix (which carries the eq-540 factorial structure).
inline double cloud_ac_norm2(const Q2Engine& eng, const TensorState& st) {
    if (st.empty()) return 0.0;
    const int nl = st.lmax + 1;
    double total = 0;
    for (std::size_t j = 0; j < st.terms.size(); ++j)
        for (std::size_t jp = 0; jp < st.terms.size(); ++jp) {
            const cplx fock = inner(st.terms[j].photon, st.terms[jp].photon);
            if (fock == cplx{}) continue;
            const auto& Mll = eng.M(st.terms[j].lam, st.terms[jp].lam);
            cplx egram{};
            for (std::size_t ie = 0; ie < st.e_rule.size(); ++ie) {
                const cplx* Ga = &st.terms[j].channels[ie * nl];
                const cplx* Gb = &st.terms[jp].channels[ie * nl];
                cplx sh{};
                for (int l = 1; l < nl; ++l)
                    for (int lp = 1; lp < nl; ++lp)
                        sh += std::conj(Ga[l]) * Gb[lp] * Mll[l * nl + lp];
                egram += st.e_rule.w[ie] * (std::sqrt(st.e_rule.x[ie]) / 2.0) * sh;
            }
            total += (std::conj(fock) * egram).real();
        }
    return total;
}

struct DecouplingEntry {
    PhotonWavefunction phi;  // lam field ignored; both polarisations used
    int m = 0;               // a*_+ power
    int n = 0;               // a*_- power
};

struct DecouplingResult {
    double lhs = 0;  // ||(1_ac x 1) Psi(A)||^2 / prod(m! n!)
    double rhs = 0;  // sum_j n_j Q2_-(phi_j) + m_j Q2_+(phi_j)
    double gap = 0;  // |lhs - rhs| / max(rhs, tiny)
    std::vector<double> q2_minus, q2_plus;
};

// Lemma 3.3 check: multi-photon second-order ionisation against the
// weighted sum of single-photon terms, both at the same finite s-window.
inline DecouplingResult decoupling_check(const Q2Engine& eng,
                                         const std::vector<DecouplingEntry>& entries, double t,
                                         const ModeGrid& grid, int n_max) {
    // orthonormality of the photon list on the grid
    std::vector<OnePhotonFunction> fns;
    std::vector<PhotonWavefunction> normalized;
    for (const auto& e : entries) {
        PhotonWavefunction f = e.phi;
        f.lam = Pol::plus;
        // normalize on the grid so the Fock Gram is exactly factorial
        OnePhotonFunction g = f.on_grid(grid);
        const double n2 = g.norm2();
        if (!(n2 > 0)) throw std::invalid_argument("decoupling: photon profile vanishes on the grid");
        f.scale = f.scale / std::sqrt(n2);
        normalized.push_back(f);
        fns.push_back(f.on_grid(grid));
    }
    for (std::size_t i = 0; i < fns.size(); ++i)
        for (std::size_t j = 0; j < fns.size(); ++j) {
            const cplx g = inner(fns[i], fns[j]);
            const cplx want = i == j ? 1.0 : 0.0;
            if (std::abs(g - want) > 1e-10)
                throw std::invalid_argument("decoupling: photon list is not orthonormal on the grid");
        }

    // flat cloud A = prod_j a*_+(phi_j)^{m_j} a*_-(phi_j)^{n_j}
    std::vector<PhotonWavefunction> flat;
    double factorials = 1.0;
    int total = 0;
    for (std::size_t j = 0; j < entries.size(); ++j) {
        PhotonWavefunction fp = normalized[j];
        fp.lam = Pol::plus;
        PhotonWavefunction fm = normalized[j];
        fm.lam = Pol::minus;
        for (int q = 0; q < entries[j].m; ++q) flat.push_back(fp);
        for (int q = 0; q < entries[j].n; ++q) flat.push_back(fm);
        for (int q = 2; q <= entries[j].m; ++q) factorials *= q;
        for (int q = 2; q <= entries[j].n; ++q) factorials *= q;
        total += entries[j].m + entries[j].n;
    }
    if (total > n_max) throw std::invalid_argument("decoupling: total degree exceeds N_max");

    DecouplingResult res;
    PsiCloudOptions opt;
    opt.bound_parts = false;
    TensorState st = psi_cloud(eng, flat, t, grid, n_max, opt);
    res.lhs = cloud_ac_norm2(eng, st) / factorials;

    for (std::size_t j = 0; j < entries.size(); ++j) {
        PhotonWavefunction fm = normalized[j];
        fm.lam = Pol::minus;
        PhotonWavefunction fp = normalized[j];
        fp.lam = Pol::plus;
        const double qm = eng.q2_time(fm, t);
        const double qp = eng.q2_time(fp, t);
        res.q2_minus.push_back(qm);
        res.q2_plus.push_back(qp);
        res.rhs += entries[j].n * qm + entries[j].m * qp;
    }
    res.gap = std::abs(res.lhs - res.rhs) / std::max(res.rhs, 1e-300);
    return res;
}

}  // namespace qedion
