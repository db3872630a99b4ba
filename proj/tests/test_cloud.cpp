#include <catch2/catch_amalgamated.hpp>
#include <memory>

#include "qedion/ion/cloud.hpp"

using namespace qedion;

namespace {

struct CloudPipeline {
    ElectronModel em;
    std::unique_ptr<ElectronSolver> solver;
    CouplingModel cm;
    std::unique_ptr<CouplingOps> ops;
    std::unique_ptr<RhoHat> rho;
    std::unique_ptr<Q2Engine> eng;
    std::unique_ptr<ModeGrid> grid;

    CloudPipeline() {
        em.V0 = 4.0;
        em.a = 1.0;
        em.r_max = 20.0;
        em.n_r = 1200;
        em.l_max = 5;
        solver = std::make_unique<ElectronSolver>(em);
        cm.sigma_kappa = 3.0 * std::sqrt(std::abs(solver->e0()));
        cm.sigma_mu = 3.0;
        ops = std::make_unique<CouplingOps>(cm, solver->model());
        UniformAxis pax{0.05, (1.5 - 0.05) / 55, 56};
        UniformAxis kax{0.05, (2.2 - 0.05) / 71, 72};
        rho = std::make_unique<RhoHat>(*solver, *ops, pax, kax);
        eng = std::make_unique<Q2Engine>(*rho, 8, 12, 8, 16);
        // photon grid: one radial panel per bump keeps profiles well resolved
        grid = std::make_unique<ModeGrid>(
            panel_rule({{0.55, 0.95, 16}, {0.95, 1.35, 16}}), 4, 6);
    }

    double ae0() const { return std::abs(solver->e0()); }

    PhotonWavefunction bump(double center_frac, double width_frac, Pol lam) const {
        PhotonWavefunction f;
        f.center = center_frac * ae0();
        f.halfwidth = width_frac * f.center;
        f.lam = lam;
        return f;
    }
};

CloudPipeline& cpipe() {
    static CloudPipeline p;
    return p;
}

}  // namespace

TEST_CASE("empty cloud commutes with everything: Psi = 0") {
    CloudPipeline& P = cpipe();
    TensorState st = psi_cloud(*P.eng, {}, 60.0 / P.ae0(), *P.grid, 3);
    CHECK(st.empty());
    CHECK(cloud_ac_norm2(*P.eng, st) == 0.0);
}

TEST_CASE("single photon: photon factor is the vacuum, norm scales linearly") {
    CloudPipeline& P = cpipe();
    PhotonWavefunction f = P.bump(2.2, 0.15, Pol::plus);
    f = f.normalized();
    const double t = 40.0 / P.ae0();
    TensorState st = psi_cloud(*P.eng, {f}, t, *P.grid, 3);
    REQUIRE(st.terms.size() == 1);
    // photon part: the vacuum
    FockVector vac = FockVector::vacuum(*P.grid, 3);
    CHECK(std::abs(inner(st.terms[0].photon, vac) - 1.0) < 1e-12);
    CHECK(st.terms[0].photon.amplitudes().size() == 1);

    // || . ||^2 scales like |c|^2 in the photon profile
    PhotonWavefunction fc = f;
    fc.scale *= 1.7;
    TensorState stc = psi_cloud(*P.eng, {fc}, t, *P.grid, 3);
    const double n1 = cloud_ac_norm2(*P.eng, st);
    const double n2 = cloud_ac_norm2(*P.eng, stc);
    CHECK(n2 == Catch::Approx(1.7 * 1.7 * n1).epsilon(1e-10));

    // and matches the one-photon time formula exactly (same path)
    CHECK(n1 == Catch::Approx(P.eng->q2_time(f, t)).epsilon(1e-12));
}

TEST_CASE("psi_cloud rejects a too-small s-window") {
    CloudPipeline& P = cpipe();
    PhotonWavefunction f = P.bump(2.2, 0.15, Pol::plus).normalized();
    CHECK_THROWS(psi_cloud(*P.eng, {f}, 1.0 / P.ae0(), *P.grid, 3));
}

TEST_CASE("bound amplitudes of the cloud are finite and small diagnostics") {
    CloudPipeline& P = cpipe();
    PhotonWavefunction f = P.bump(2.2, 0.15, Pol::plus).normalized();
    const double t = 40.0 / P.ae0();
    TensorState st = psi_cloud(*P.eng, {f}, t, *P.grid, 2);
    for (const auto& ba : st.terms[0].bound) {
        CHECK(std::isfinite(std::abs(ba.amp)));
    }
}

TEST_CASE("decoupling: single-photon degree vectors share the code path exactly") {
    CloudPipeline& P = cpipe();
    const double t = 40.0 / P.ae0();
    for (auto [m, n] : {std::pair{1, 0}, std::pair{0, 1}}) {
        DecouplingEntry e;
        e.phi = P.bump(2.2, 0.15, Pol::plus);
        e.m = m;
        e.n = n;
        DecouplingResult r = decoupling_check(*P.eng, {e}, t, *P.grid, 3);
        CHECK(r.gap < 1e-12);
        CHECK(r.rhs > 0);
    }
}

TEST_CASE("decoupling: two orthonormal photons and a repeated photon") {
    CloudPipeline& P = cpipe();
    const double t = 40.0 / P.ae0();

    // (1,1) across two radially disjoint profiles
    DecouplingEntry e1, e2;
    e1.phi = P.bump(1.9, 0.10, Pol::plus);
    e1.m = 1;
    e2.phi = P.bump(2.9, 0.10, Pol::plus);
    e2.m = 1;
    DecouplingResult r2 = decoupling_check(*P.eng, {e1, e2}, t, *P.grid, 3);
    CHECK(r2.gap < 0.01);
    CHECK(r2.rhs == Catch::Approx(r2.q2_plus[0] + r2.q2_plus[1]).epsilon(1e-12));

    // (2,0): the factorial normalisation of eq-540 in action
    DecouplingEntry d;
    d.phi = P.bump(2.2, 0.15, Pol::plus);
    d.m = 2;
    DecouplingResult r3 = decoupling_check(*P.eng, {d}, t, *P.grid, 3);
    CHECK(r3.gap < 0.01);

    // mixed polarisation degree (1,1) on one profile
    DecouplingEntry mx;
    mx.phi = P.bump(2.2, 0.15, Pol::plus);
    mx.m = 1;
    mx.n = 1;
    DecouplingResult r4 = decoupling_check(*P.eng, {mx}, t, *P.grid, 3);
    CHECK(r4.gap < 0.01);
}

TEST_CASE("decoupling rejects non-orthonormal photon lists") {
    CloudPipeline& P = cpipe();
    DecouplingEntry e1, e2;
    e1.phi = P.bump(2.2, 0.15, Pol::plus);
    e1.m = 1;
    e2.phi = P.bump(2.25, 0.15, Pol::plus);  // overlapping support, not orthogonal
    e2.m = 1;
    CHECK_THROWS(decoupling_check(*P.eng, {e1, e2}, 40.0 / P.ae0(), *P.grid, 3));
}
