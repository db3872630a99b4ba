#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "qedion/electron/pw.hpp"
#include "qedion/util/special.hpp"
#include "qedion/util/vec3.hpp"

namespace qedion {

// 4th-order central derivative with Dirichlet zero padding; exactly
// antisymmetric w.r.t. the uniform-grid inner product.
inline std::vector<cplx> d_dr(const std::vector<cplx>& u, double h) {
    const int n = (int)u.size();
    std::vector<cplx> d(n);
    auto at = [&](int i) { return (i < 0 || i >= n) ? cplx{} : u[i]; };
    const double c1 = 8.0 / (12.0 * h), c2 = 1.0 / (12.0 * h);
    for (int i = 0; i < n; ++i)
        d[i] = c1 * (at(i + 1) - at(i - 1)) - c2 * (at(i + 2) - at(i - 2));
    return d;
}

namespace ladder {
inline double cz_up(int l, int m) {
    return std::sqrt(((l + 1.0) * (l + 1.0) - m * m) / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}
inline double cz_dn(int l, int m) {
    return std::sqrt(((double)l * l - m * m) / ((2.0 * l - 1.0) * (2.0 * l + 1.0)));
}
inline double cp_up(int l, int m) {
    return -std::sqrt((l + m + 1.0) * (l + m + 2.0) / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}
inline double cp_dn(int l, int m) {
    return std::sqrt((l - m) * (l - m - 1.0) / ((2.0 * l - 1.0) * (2.0 * l + 1.0)));
}
inline double cm_up(int l, int m) {
    return std::sqrt((l - m + 1.0) * (l - m + 2.0) / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}
inline double cm_dn(int l, int m) {
    return -std::sqrt((l + m) * (l + m - 1.0) / ((2.0 * l - 1.0) * (2.0 * l + 1.0)));
}
}  // namespace ladder

// (eps . grad) psi for a constant (possibly complex) vector eps, via the
// partial-wave ladder identities; output truncated at out_lmax.
inline PWFunction grad_eps(const std::array<cplx, 3>& eps, const PWFunction& psi, int out_lmax) {
    const ElectronModel& mdl = psi.model();
    const double h = mdl.h();
    const cplx wplus = 0.5 * (eps[0] - cplx(0, 1) * eps[1]);   // coefficient of d_+
    const cplx wminus = 0.5 * (eps[0] + cplx(0, 1) * eps[1]);  // coefficient of d_-
    const cplx wz = eps[2];
    PWFunction out(&mdl);
    for (auto& [c, u] : psi.channels()) {
        const int l = c.l, m = c.m;
        const std::vector<cplx> du = d_dr(u, h);
        // reduced-channel radial factors
        std::vector<cplx> up(mdl.n_r), dn(mdl.n_r);
        for (int i = 0; i < mdl.n_r; ++i) {
            const double r = mdl.r(i);
            up[i] = du[i] - (l + 1.0) * u[i] / r;  // raises l
            dn[i] = du[i] + (double)l * u[i] / r;  // lowers l
        }
        auto add = [&](int lo, int mo, cplx coef, const std::vector<cplx>& radial) {
            if (coef == 0.0 || lo < 0 || lo > out_lmax || std::abs(mo) > lo) return;
            auto& v = out.channel({lo, mo});
            for (int i = 0; i < mdl.n_r; ++i) v[i] += coef * radial[i];
        };
        if (wz != 0.0) {
            add(l + 1, m, wz * ladder::cz_up(l, m), up);
            add(l - 1, m, wz * ladder::cz_dn(l, m), dn);
        }
        if (wplus != 0.0) {
            add(l + 1, m + 1, wplus * ladder::cp_up(l, m), up);
            add(l - 1, m + 1, wplus * ladder::cp_dn(l, m), dn);
        }
        if (wminus != 0.0) {
            add(l + 1, m - 1, wminus * ladder::cm_up(l, m), up);
            add(l - 1, m - 1, wminus * ladder::cm_dn(l, m), dn);
        }
    }
    out.prune();
    return out;
}

inline PWFunction grad_eps(const Vec3& eps, const PWFunction& psi, int out_lmax) {
    return grad_eps(std::array<cplx, 3>{eps[0], eps[1], eps[2]}, psi, out_lmax);
}

// Scalar field in partial-wave form: F(x) = sum_{LM} F_{LM}(r) Y_{LM}(x^)
// with plain (non-reduced) radial value tables on the model grid.
struct PWField {
    const ElectronModel* model = nullptr;
    std::map<Channel, std::vector<cplx>> ch;

    std::vector<cplx>& channel(Channel c) {
        auto it = ch.find(c);
        if (it == ch.end()) it = ch.emplace(c, std::vector<cplx>(model->n_r, cplx{})).first;
        return it->second;
    }
};

// Plane wave e^{i q.x} truncated at L_cut:
//   F_{LM}(r) = 4pi i^L j_L(|q| r) conj(Y_{LM}(q^))
inline PWField plane_wave_field(const ElectronModel& mdl, const Vec3& q, int L_cut) {
    PWField F;
    F.model = &mdl;
    const double qm = norm(q);
    if (qm == 0.0) {
        auto& f00 = F.channel({0, 0});
        for (auto& x : f00) x = std::sqrt(4.0 * M_PI);
        return F;
    }
    const double ct = vec_costheta(q), ph = vec_phi(q);
    std::vector<std::vector<double>> jl(mdl.n_r);
    for (int i = 0; i < mdl.n_r; ++i) sph_bessel_j_all(L_cut, qm * mdl.r(i), jl[i]);
    for (int L = 0; L <= L_cut; ++L)
        for (int M = -L; M <= L; ++M) {
            const cplx ang = 4.0 * M_PI * ipow(L) * std::conj(sph_harmonic(L, M, ct, ph));
            if (std::abs(ang) < 1e-300) continue;
            auto& f = F.channel({L, M});
            for (int i = 0; i < mdl.n_r; ++i) f[i] = ang * jl[i][L];
        }
    return F;
}

// radial-only field F(r) (L = 0 channel carries sqrt(4pi) f(r))
inline PWField radial_field(const ElectronModel& mdl, const std::function<double(double)>& f) {
    PWField F;
    F.model = &mdl;
    auto& f00 = F.channel({0, 0});
    for (int i = 0; i < mdl.n_r; ++i) f00[i] = std::sqrt(4.0 * M_PI) * f(mdl.r(i));
    return F;
}

// pointwise product of two fields (Gaunt-coupled), truncated at L_cut
inline PWField field_product(const PWField& A, const PWField& B, int L_cut, const GauntCache& gc) {
    PWField F;
    F.model = A.model;
    const int n = A.model->n_r;
    for (auto& [ca, fa] : A.ch)
        for (auto& [cb, fb] : B.ch)
            for (int L = std::abs(ca.l - cb.l); L <= std::min(L_cut, ca.l + cb.l); ++L) {
                const int M = ca.m + cb.m;
                if (std::abs(M) > L) continue;
                const double g = gc.coef(L, M, ca.l, ca.m, cb.l, cb.m);
                if (g == 0.0) continue;
                auto& f = F.channel({L, M});
                for (int i = 0; i < n; ++i) f[i] += g * fa[i] * fb[i];
            }
    return F;
}

// multiply a field into a PW electron function (pointwise in r per channel
// pair, Gaunt-coupled in angles); output truncated at out_lmax
inline PWFunction field_mult(const PWField& F, const PWFunction& psi, int out_lmax,
                             const GauntCache& gc) {
    const ElectronModel& mdl = psi.model();
    PWFunction out(&mdl);
    for (auto& [cf, f] : F.ch)
        for (auto& [cp, u] : psi.channels()) {
            const int Lmin = std::abs(cf.l - cp.l), Lmax = std::min(out_lmax, cf.l + cp.l);
            const int mo = cf.m + cp.m;
            for (int lo = Lmin; lo <= Lmax; ++lo) {
                if (std::abs(mo) > lo) continue;
                const double g = gc.coef(lo, mo, cf.l, cf.m, cp.l, cp.m);
                if (g == 0.0) continue;
                auto& v = out.channel({lo, mo});
                for (int i = 0; i < mdl.n_r; ++i) v[i] += g * f[i] * u[i];
            }
        }
    out.prune();
    return out;
}

}  // namespace qedion
