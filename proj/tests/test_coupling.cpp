#include <catch2/catch_amalgamated.hpp>

#include "qedion/coupling/coupling.hpp"
#include "qedion/electron/solver.hpp"
#include "qedion/util/quad.hpp"

using namespace qedion;

namespace {

ElectronModel small_model() {
    ElectronModel m;
    m.V0 = 4.0;
    m.a = 1.0;
    m.r_max = 12.0;
    m.n_r = 600;
    m.l_max = 5;
    return m;
}

CouplingModel ref_coupling() {
    CouplingModel c;
    c.sigma_kappa = 1.9;
    c.sigma_mu = 3.0;
    return c;
}

PWFunction gaussian_channels(const ElectronModel& m, std::initializer_list<Channel> chans,
                             double center) {
    PWFunction psi(&m);
    for (Channel c : chans) {
        auto& u = psi.channel(c);
        for (int i = 0; i < m.n_r; ++i) {
            const double r = m.r(i);
            u[i] = std::exp(-(r - center) * (r - center)) * r;
        }
    }
    return psi;
}

}  // namespace

TEST_CASE("polarisation basis is orthonormal and right-handed at every mode") {
    ModeGrid g(gauss_legendre(3, 0.4, 1.6), 4, 5);
    for (const Mode& m : g.modes()) {
        const Vec3 em = polarization_vector(m.khat, Pol::minus);
        const Vec3 ep = polarization_vector(m.khat, Pol::plus);
        CHECK(std::abs(dot(em, em) - 1.0) < 1e-12);
        CHECK(std::abs(dot(ep, ep) - 1.0) < 1e-12);
        CHECK(std::abs(dot(em, ep)) < 1e-12);
        CHECK(std::abs(dot(em, m.khat)) < 1e-12);
        CHECK(std::abs(dot(ep, m.khat)) < 1e-12);
        const Vec3 cr = cross(em, ep);
        CHECK(std::abs(cr[0] - m.khat[0]) < 1e-12);
        CHECK(std::abs(cr[1] - m.khat[1]) < 1e-12);
        CHECK(std::abs(cr[2] - m.khat[2]) < 1e-12);
        // completeness: projections onto the basis reassemble any vector
        const Vec3 v{0.3, -1.2, 0.5};
        for (int i = 0; i < 3; ++i) {
            const double vi =
                dot(v, em) * em[i] + dot(v, ep) * ep[i] + dot(v, m.khat) * m.khat[i];
            CHECK(vi == Catch::Approx(v[i]).margin(1e-12));
        }
    }
}

TEST_CASE("kappa = 0 gives zero kernels") {
    ElectronModel em = small_model();
    CouplingModel cm = ref_coupling();
    cm.kappa_scale = 0.0;
    CouplingOps ops(cm, em);
    PWFunction psi = gaussian_channels(em, {{0, 0}, {1, 0}}, 2.5);
    CHECK(ops.w01_apply({0.2, 0.1, 0.7}, {1, 0, 0}, psi).norm2() == 0.0);
    ModeGrid g(gauss_legendre(2, 0.4, 1.2), 2, 2);
    CHECK(ops.w2_apply(20, g.mode(0), g.mode(3), psi).norm2() == 0.0);
    CHECK(ops.w2_apply(11, g.mode(0), g.mode(3), psi).norm2() == 0.0);
}

TEST_CASE("w10 is the adjoint of w01 (quadrature identity)") {
    ElectronModel em = small_model();
    CouplingModel cm = ref_coupling();
    CouplingOps ops(cm, em);
    PWFunction psi = gaussian_channels(em, {{0, 0}, {2, 1}}, 2.5);
    PWFunction chi = gaussian_channels(em, {{1, 0}, {1, -1}, {3, 2}}, 3.2);
    for (const Vec3 k : {Vec3{0, 0, 0.8}, Vec3{0.4, -0.3, 0.5}}) {
        const Vec3 khat = scaled(k, 1.0 / norm(k));
        for (Pol lam : {Pol::minus, Pol::plus}) {
            const Vec3 eps = polarization_vector(khat, lam);
            const cplx lhs = inner(chi, ops.w10_apply(k, eps, psi));
            const cplx rhs = inner(ops.w01_apply(k, eps, chi), psi);
            CHECK(std::abs(lhs - rhs) < 1e-8 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("w11 at equal arguments is self-adjoint, w20 symmetric under swap") {
    ElectronModel em = small_model();
    em.n_r = 400;
    CouplingModel cm = ref_coupling();
    CouplingOps ops(cm, em);
    ModeGrid g(gauss_legendre(2, 0.5, 1.4), 2, 3);
    PWFunction psi = gaussian_channels(em, {{0, 0}, {1, 1}}, 2.5);
    PWFunction chi = gaussian_channels(em, {{1, 0}, {2, -1}}, 3.0);

    const Mode& m1 = g.mode(2);
    const cplx lhs = inner(chi, ops.w2_apply(11, m1, m1, psi));
    const cplx rhs = inner(ops.w2_apply(11, m1, m1, chi), psi);
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));

    const Mode& m2 = g.mode(9);
    PWFunction d = ops.w2_apply(20, m1, m2, psi);
    d.axpy(-1.0, ops.w2_apply(20, m2, m1, psi));
    CHECK(d.norm2() < 1e-24 * (1.0 + psi.norm2()));

    // w02 is the adjoint of w20
    const cplx l2 = inner(chi, ops.w2_apply(20, m1, m2, psi));
    const cplx r2 = inner(ops.w2_apply(2, m1, m2, chi), psi);
    CHECK(std::abs(l2 - r2) < 1e-10 * (1.0 + std::abs(l2)));
}

TEST_CASE("smoothness proxy: k-derivatives of w01 phi0 exist and are grid-stable") {
    ElectronModel em = small_model();
    em.n_r = 500;
    ElectronSolver solver(em);
    CouplingModel cm = ref_coupling();
    CouplingOps ops(cm, em);
    PWFunction g0 = solver.ground_pw();
    const Vec3 k{0.0, 0.0, 0.9};
    const Vec3 eps{1, 0, 0};
    const double dk = 0.02;

    auto w01_at = [&](double kz) { return ops.w01_apply({0, 0, kz}, eps, g0); };
    // first and second central differences in k_z
    PWFunction d1 = w01_at(k[2] + dk);
    d1.axpy(-1.0, w01_at(k[2] - dk));
    d1.scale(1.0 / (2 * dk));
    PWFunction d2 = w01_at(k[2] + dk);
    d2.axpy(-2.0, w01_at(k[2]));
    d2.axpy(1.0, w01_at(k[2] - dk));
    d2.scale(1.0 / (dk * dk));
    CHECK(std::isfinite(d1.norm2()));
    CHECK(std::isfinite(d2.norm2()));
    CHECK(d1.norm2() > 0.0);

    // halving the step changes the first derivative by O(dk^2)
    PWFunction d1h = w01_at(k[2] + dk / 2);
    d1h.axpy(-1.0, w01_at(k[2] - dk / 2));
    d1h.scale(1.0 / dk);
    PWFunction diff = d1h;
    diff.axpy(-1.0, d1);
    CHECK(std::sqrt(diff.norm2()) < 0.01 * std::sqrt(d1.norm2()));

    // weighted decay diagnostic (gl55-type): sup_x <x>^2 |(w01 phi0)(x)| finite
    PWFunction w = w01_at(k[2]);
    double sup = 0.0;
    for (auto& [c, u] : w.channels())
        for (int i = 0; i < em.n_r; ++i) {
            const double r = em.r(i);
            sup = std::max(sup, (1 + r * r) * std::abs(u[i]) / r);
        }
    CHECK(std::isfinite(sup));
}
