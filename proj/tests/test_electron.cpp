#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "qedion/electron/solver.hpp"
#include "qedion/util/quad.hpp"
#include "support/oracles.hpp"

using namespace qedion;

namespace {
ElectronModel reference_model() {
    ElectronModel m;
    m.V0 = 4.0;
    m.a = 1.0;
    m.r_max = 24.0;
    m.n_r = 4000;
    m.l_max = 8;
    return m;
}
}  // namespace

TEST_CASE("ground-state energy matches the transcendental matching root") {
    ElectronModel m = reference_model();
    auto bs = solve_bound_states(m);
    REQUIRE(bs.size() >= 1);
    auto roots = oracles::well_swave_energies(m.V0, m.a);
    REQUIRE(roots.size() == 1);  // sqrt(V0) a = 2: exactly one s-wave state
    CHECK(std::abs(bs.front().e - roots.front()) < 1e-8);
    CHECK(bs.front().l == 0);
    CHECK(bs.front().e < 0.0);
}

TEST_CASE("shallow well reports no bound state") {
    ElectronModel m = reference_model();
    m.V0 = 1.5;  // sqrt(V0) a < pi/2
    CHECK_THROWS(solve_bound_states(m));
}

TEST_CASE("domain convergence: doubling r_max moves a deep e0 below 1e-9") {
    ElectronModel m = reference_model();
    m.V0 = 25.0;  // deeply bound ground state, negligible tail
    m.l_max = 0;
    m.n_r = 1500;
    m.r_max = 15.0;
    auto b1 = solve_bound_states(m);
    ElectronModel m2 = m;
    m2.r_max = 30.0;
    m2.n_r = 2 * m.n_r + 1;  // identical step h and edge alignment
    auto b2 = solve_bound_states(m2);
    CHECK(std::abs(b1.front().e - b2.front().e) < 1e-9);
}

TEST_CASE("bound states: residual, orthonormality, nodeless ground state") {
    ElectronModel m = reference_model();
    m.n_r = 1200;
    auto bs = solve_bound_states(m);
    const double h = m.h();
    for (const auto& b : bs) {
        CHECK(b.residual < 1e-8);
        double n2 = 0.0;
        for (double x : b.u) n2 += x * x * h;
        CHECK(n2 == Catch::Approx(1.0).epsilon(1e-12));
    }
    // nodeless ground state
    int sign_changes = 0;
    for (std::size_t i = 1; i < bs[0].u.size(); ++i)
        if (bs[0].u[i - 1] * bs[0].u[i] < -1e-20) ++sign_changes;
    CHECK(sign_changes == 0);
}

TEST_CASE("phase shifts match the closed-form well formula") {
    ElectronModel m = reference_model();
    for (int i = 0; i < 10; ++i) {
        const double p = 0.25 + 0.2 * i;
        const RadialWave w = scattering_radial(m, 0, p);
        const double ref = oracles::well_phase_shift(m.V0, m.a, 0, p);
        CHECK(std::abs(oracles::wrap_mod_pi(w.delta - ref)) < 1e-8);
        // the general-l closed form agrees with the textbook s-wave one
        const double ref2 = oracles::well_phase_shift_swave(m.V0, m.a, p);
        CHECK(std::abs(oracles::wrap_mod_pi(ref - ref2)) < 1e-12);
    }
    for (int l : {1, 2, 3}) {
        const double p = 0.9;
        const RadialWave w = scattering_radial(m, l, p);
        const double ref = oracles::well_phase_shift(m.V0, m.a, l, p);
        CHECK(std::abs(oracles::wrap_mod_pi(w.delta - ref)) < 1e-8);
    }
}

TEST_CASE("free case: zero phase shifts, radial waves equal j_l") {
    ElectronModel m = reference_model();
    m.V0 = 0.0;  // no validation on the scattering path
    const double p = 1.1;
    for (int l : {0, 1, 3}) {
        const RadialWave w = scattering_radial(m, l, p);
        CHECK(std::abs(oracles::wrap_mod_pi(w.delta)) < 1e-9);
        std::vector<double> j;
        for (int i = 200; i < m.n_r; i += 700) {
            sph_bessel_j_all(l, p * m.r(i), j);
            CHECK(w.R[i] == Catch::Approx(j[l]).margin(1e-6));
        }
    }
}

TEST_CASE("phase shifts decay below 1e-6 before l_max") {
    ElectronModel m = reference_model();
    ElectronSolver solver(m);
    for (double p : {0.5, 1.0, 1.5}) {
        CHECK(solver.phase_tail(p) < 1e-6);
    }
}

TEST_CASE("ac projection kills bound states, is idempotent, preserves Pythagoras") {
    ElectronModel m = reference_model();
    m.n_r = 1200;
    ElectronSolver solver(m);
    PWFunction g0 = solver.ground_pw();
    CHECK(solver.ac_project(g0).norm2() < 1e-20);

    // random smooth test function across channels
    PWFunction psi(&solver.model());
    std::mt19937 rng(5);
    std::normal_distribution<double> nd;
    for (int l = 0; l <= 2; ++l)
        for (int mm = -l; mm <= l; ++mm) {
            auto& u = psi.channel({l, mm});
            const double c = nd(rng), w = 1.0 + 0.5 * std::abs(nd(rng));
            for (int i = 0; i < m.n_r; ++i) {
                const double r = m.r(i);
                u[i] = c * std::exp(-(r - 3.0) * (r - 3.0) / (2 * w)) * r;
            }
        }
    PWFunction pac = solver.ac_project(psi);
    PWFunction pac2 = solver.ac_project(pac);
    PWFunction diff = pac2;
    diff.axpy(-1.0, pac);
    CHECK(diff.norm2() < 1e-24 * psi.norm2());

    double bound_part = 0.0;
    for (auto& [c, ov] : solver.bound_overlaps(psi)) bound_part += std::norm(ov);
    CHECK(pac.norm2() + bound_part == Catch::Approx(psi.norm2()).epsilon(1e-10));
}

TEST_CASE("weak energy residual of synthesized scattering states") {
    ElectronModel m = reference_model();
    m.n_r = 2000;
    ElectronSolver solver(m);
    const double p = 1.0;
    // probe: smooth compactly supported s/p-wave functions away from edges
    PWFunction chi(&solver.model());
    for (int l : {0, 1}) {
        auto& u = chi.channel({l, 0});
        for (int i = 0; i < m.n_r; ++i) {
            const double r = m.r(i);
            u[i] = std::exp(-(r - 6.0) * (r - 6.0)) * r;
        }
    }
    // residual quadrature: 4th-order 5-point Laplacian paired against the
    // probe (the probe vanishes at the well edge and the boundaries)
    const double h = m.h();
    for (int l : {0, 1}) {
        const RadialWave& w = solver.radial_wave(l, p);
        std::vector<double> u(m.n_r);
        for (int i = 0; i < m.n_r; ++i) u[i] = w.R[i] * m.r(i);
        const auto& cu = chi.channel({l, 0});
        cplx resid{};
        for (int i = 2; i + 2 < m.n_r; ++i) {
            const double r = m.r(i);
            const double upp =
                (-u[i + 2] + 16 * u[i + 1] - 30 * u[i] + 16 * u[i - 1] - u[i - 2]) / (12 * h * h);
            const double hv = -upp + (m.potential(r) + l * (l + 1.0) / (r * r)) * u[i];
            resid += std::conj(cu[i]) * (hv - p * p * u[i]) * h;
        }
        CHECK(std::abs(resid) < 1e-6);
    }
}

TEST_CASE("expansion: free case matches direct 3D Fourier quadrature") {
    ElectronModel m;
    m.V0 = 4.0;  // construct solver on the well, then test with V0=0 below
    ElectronModel free = m;
    free.V0 = 0.0;
    free.n_r = 1600;
    free.r_max = 24.0;
    free.l_max = 14;

    // smooth compact psi with two channels
    PWFunction psi(&free);
    for (auto c : {Channel{0, 0}, Channel{2, 1}}) {
        auto& u = psi.channel(c);
        for (int i = 0; i < free.n_r; ++i) {
            const double r = free.r(i);
            u[i] = std::exp(-(r - 2.5) * (r - 2.5)) * r;
        }
    }
    const Vec3 p{0.4, -0.3, 0.8};

    // direct 3D quadrature of (2pi)^{-3/2} int e^{-i p.x} psi(x) dx
    auto ct = gauss_legendre(28);
    const int nphi = 28;
    const double h = free.h();
    cplx direct{};
    for (int i = 0; i < free.n_r; i += 1) {
        const double r = free.r(i);
        if (r > 7.0) break;
        for (std::size_t it = 0; it < ct.size(); ++it)
            for (int ip = 0; ip < nphi; ++ip) {
                const double phi = 2 * M_PI * ip / nphi;
                const double st = std::sqrt(1 - ct.x[it] * ct.x[it]);
                const Vec3 x{r * st * std::cos(phi), r * st * std::sin(phi), r * ct.x[it]};
                cplx val{};
                for (auto& [c, u] : psi.channels())
                    val += u[i] / r * sph_harmonic(c.l, c.m, ct.x[it], phi);
                direct += std::exp(cplx(0, -dot(p, x))) * val * r * r * h * ct.w[it] * (2 * M_PI / nphi);
            }
    }
    direct *= std::pow(2 * M_PI, -1.5);

    // production path: expand against the V0=0 generalized eigenfunctions
    // (plane waves); construct a temporary solver-like evaluation
    PWFunction psi_copy = psi;
    // free model fails the bound-state validation; use the radial-wave route
    const double pm = norm(p);
    cplx viaU{};
    {
        const double pref = std::pow(2.0 * M_PI, -1.5) * 4.0 * M_PI;
        for (auto& [c, u] : psi_copy.channels()) {
            RadialWave w = scattering_radial(free, c.l, pm);
            cplx s{};
            for (int i = 0; i < free.n_r; ++i) s += w.R[i] * u[i] * free.r(i);
            s *= h;
            const cplx phase = std::conj(ipow(c.l)) * std::exp(cplx(0, w.delta));
            viaU += pref * phase * s * sph_harmonic(c.l, c.m, vec_costheta(p), vec_phi(p));
        }
    }
    CHECK(std::abs(viaU - direct) < 1e-8);
}

TEST_CASE("expansion isometry on the ac subspace") {
    ElectronModel m = reference_model();
    m.n_r = 1500;
    m.l_max = 4;
    ElectronSolver solver(m);
    std::mt19937 rng(9);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 5; ++rep) {
        PWFunction psi(&solver.model());
        for (int l = 0; l <= 2; ++l) {
            auto& u = psi.channel({l, std::min(l, 1)});
            const double c0 = 2.5 + 0.8 * std::abs(nd(rng));
            for (int i = 0; i < m.n_r; ++i) {
                const double r = m.r(i);
                u[i] = nd(rng) * 0.0 + std::exp(-(r - c0) * (r - c0)) * r;
            }
        }
        PWFunction pac = solver.ac_project(psi);
        // assemble  int |U psi|^2 d^3p  channel-wise with a radial p rule
        auto prule = gauss_legendre(160, 1e-3, 4.0);
        double u2 = 0.0;
        for (std::size_t ip = 0; ip < prule.size(); ++ip) {
            const double p = prule.x[ip];
            double shell = 0.0;
            for (auto& [c, coef] : solver.expand_channels(pac, p)) shell += std::norm(coef);
            u2 += prule.w[ip] * p * p * shell;
        }
        const double rel = std::abs(u2 - pac.norm2()) / pac.norm2();
        CHECK(rel < 0.02);
    }
}

TEST_CASE("expanding the ground state is tiny after ac projection") {
    ElectronModel m = reference_model();
    m.n_r = 1200;
    ElectronSolver solver(m);
    PWFunction g0 = solver.ac_project(solver.ground_pw());
    for (double p : {0.3, 0.8, 1.4}) {
        for (auto& [c, coef] : solver.expand_channels(g0, p)) CHECK(std::abs(coef) < 1e-6);
    }
}

TEST_CASE("scattering state synthesis is a plane wave when V0 = 0") {
    ElectronModel free = reference_model();
    free.V0 = 0.0;
    free.l_max = 20;
    free.n_r = 2000;
    // synthesize directly through radial waves
    const Vec3 p{0.0, 0.0, 1.0};
    ScatteringState s;
    s.p = p;
    s.pmag = 1.0;
    s.kind = WaveKind::incoming;
    for (int l = 0; l <= free.l_max; ++l) s.waves.push_back(scattering_radial(free, l, 1.0));
    for (double r : {1.0, 2.5, 4.0}) {
        for (double ct : {0.9, 0.2, -0.5}) {
            const double st = std::sqrt(1 - ct * ct);
            const Vec3 x{r * st, 0.0, r * ct};
            const cplx plane = std::pow(2 * M_PI, -1.5) * std::exp(cplx(0, dot(p, x)));
            CHECK(std::abs(s.value(free, x) - plane) < 1e-6);
        }
    }
}

TEST_CASE("scattering state at p = 0 is rejected") {
    ElectronModel m = reference_model();
    m.n_r = 600;
    ElectronSolver solver(m);
    CHECK_THROWS(solver.scattering_state({0.0, 0.0, 0.0}));
}
