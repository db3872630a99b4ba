#include <catch2/catch_amalgamated.hpp>

#include "qedion/util/quad.hpp"
#include "qedion/util/special.hpp"
#include "qedion/util/tridiag.hpp"

using namespace qedion;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    auto r = gauss_legendre(8);
    // degree 15 monomial on [-1,1]
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::pow(r.x[i], 14);
    CHECK(s == Catch::Approx(2.0 / 15.0).epsilon(1e-13));

    auto r2 = gauss_legendre(12, 0.0, M_PI);
    double si = 0.0;
    for (std::size_t i = 0; i < r2.size(); ++i) si += r2.w[i] * std::sin(r2.x[i]);
    CHECK(si == Catch::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("panel rule covers disjoint panels") {
    auto r = panel_rule({{0.0, 1.0, 16}, {2.0, 3.0, 16}});
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * r.x[i];
    CHECK(s == Catch::Approx(0.5 + 2.5).epsilon(1e-13));
}

TEST_CASE("spherical bessel values match closed forms") {
    std::vector<double> j, y;
    const double x = 1.7;
    sph_bessel_j_all(4, x, j);
    sph_bessel_y_all(4, x, y);
    CHECK(j[0] == Catch::Approx(std::sin(x) / x).epsilon(1e-13));
    CHECK(j[1] == Catch::Approx(std::sin(x) / (x * x) - std::cos(x) / x).epsilon(1e-13));
    CHECK(j[2] == Catch::Approx((3.0 / (x * x * x) - 1.0 / x) * std::sin(x) - 3.0 / (x * x) * std::cos(x))
                      .epsilon(1e-12));
    CHECK(y[0] == Catch::Approx(-std::cos(x) / x).epsilon(1e-13));
    // Wronskian j_l y_l' - j_l' y_l = 1/x^2, via recurrences
    for (int l = 0; l <= 3; ++l) {
        const double jp = (l / x) * j[l] - j[l + 1];
        const double yp = (l / x) * y[l] - y[l + 1];
        CHECK(j[l] * yp - jp * y[l] == Catch::Approx(1.0 / (x * x)).epsilon(1e-11));
    }
    // small argument, high order stays finite and accurate (two series terms)
    sph_bessel_j_all(10, 1e-3, j);
    const double xs = 1e-3;
    CHECK(j[10] ==
          Catch::Approx(std::pow(xs, 10) / dfact(21) * (1.0 - xs * xs / 46.0)).epsilon(1e-10));
    // moderate argument above the order: upward branch
    sph_bessel_j_all(3, 19.8, j);
    CHECK(j[1] == Catch::Approx(-0.02728420093974778).epsilon(1e-12));
    CHECK(j[3] == Catch::Approx(0.01586283653399392).epsilon(1e-12));
}

TEST_CASE("legendre derivative identity") {
    std::vector<double> p, dp;
    const double x = 0.37;
    legendre_all(6, x, p);
    legendre_deriv_all(6, x, dp);
    for (int l = 1; l <= 6; ++l)
        CHECK((1 - x * x) * dp[l] == Catch::Approx(l * (p[l - 1] - x * p[l])).epsilon(1e-12));
}

TEST_CASE("spherical harmonics: orthonormality on a product rule") {
    auto ct = gauss_legendre(24);
    const int nphi = 24;
    auto ip = [&](int l1, int m1, int l2, int m2) {
        cplx s{};
        for (std::size_t i = 0; i < ct.size(); ++i)
            for (int k = 0; k < nphi; ++k) {
                const double phi = 2 * M_PI * k / nphi;
                s += ct.w[i] * (2 * M_PI / nphi) * std::conj(sph_harmonic(l1, m1, ct.x[i], phi)) *
                     sph_harmonic(l2, m2, ct.x[i], phi);
            }
        return s;
    };
    CHECK(std::abs(ip(3, 2, 3, 2) - 1.0) < 1e-12);
    CHECK(std::abs(ip(3, 2, 3, 1)) < 1e-12);
    CHECK(std::abs(ip(2, 1, 4, 1)) < 1e-12);
    CHECK(std::abs(ip(5, -4, 5, -4) - 1.0) < 1e-12);
}

TEST_CASE("wigner 3j and gaunt against known values") {
    CHECK(wigner3j(1, 1, 0, 0, 0, 0) == Catch::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-13));
    CHECK(wigner3j(2, 1, 1, 0, 0, 0) == Catch::Approx(std::sqrt(2.0 / 15.0)).epsilon(1e-13));
    CHECK(wigner3j(1, 1, 1, 1, -1, 0) == Catch::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-13));
    // gaunt vs direct angular quadrature
    auto ct = gauss_legendre(32);
    const int nphi = 32;
    auto direct = [&](int l1, int m1, int l2, int m2, int l3, int m3) {
        cplx s{};
        for (std::size_t i = 0; i < ct.size(); ++i)
            for (int k = 0; k < nphi; ++k) {
                const double phi = 2 * M_PI * k / nphi;
                s += ct.w[i] * (2 * M_PI / nphi) * sph_harmonic(l1, m1, ct.x[i], phi) *
                     sph_harmonic(l2, m2, ct.x[i], phi) * sph_harmonic(l3, m3, ct.x[i], phi);
            }
        return s.real();
    };
    CHECK(gaunt(2, 1, 3, -2, 1, 1) == Catch::Approx(direct(2, 1, 3, -2, 1, 1)).margin(1e-12));
    CHECK(gaunt(4, 2, 2, -1, 2, -1) == Catch::Approx(direct(4, 2, 2, -1, 2, -1)).margin(1e-12));
    CHECK(gaunt(3, 0, 2, 0, 1, 0) == Catch::Approx(direct(3, 0, 2, 0, 1, 0)).margin(1e-12));
}

TEST_CASE("tridiagonal eigen machinery on a known matrix") {
    // -u'' on a uniform grid: eigenvalues 2(1-cos(k pi/(n+1)))/h^2
    const int n = 64;
    const double h = 1.0 / (n + 1);
    Tridiag t;
    t.d.assign(n, 2.0 / (h * h));
    t.e.assign(n - 1, -1.0 / (h * h));
    auto evs = tridiag_eigenvalues_in(t, 0.0, 100.0);
    REQUIRE(!evs.empty());
    const double expect = 2.0 * (1.0 - std::cos(M_PI * h)) / (h * h);
    CHECK(evs[0] == Catch::Approx(expect).epsilon(1e-12));
    auto v = tridiag_eigenvector(t, evs[0]);
    CHECK(tridiag_residual(t, evs[0], v) < 1e-8 * std::abs(evs[0]));
}
