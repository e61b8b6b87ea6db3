#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ecst/cat_algebra.hpp"
#include "ecst/fock_oracle.hpp"

using namespace ecst;

namespace {

cat_qubit random_qubit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double omega = M_PI * u01(rng);
    const double xi = 2.0 * M_PI * u01(rng);
    // a random global phase on top of the Bloch angles
    const cplx phase = std::polar(1.0, 2.0 * M_PI * u01(rng));
    cat_qubit q = angles_to_qubit(omega, xi);
    q.a_plus *= phase;
    q.a_minus *= phase;
    return q;
}

} // namespace

TEST_CASE("overlap_x values and limits") {
    CHECK(overlap_x(coherent_alpha::from_alpha_sq(1.0)) ==
          Catch::Approx(0.36787944117144232).epsilon(0).margin(1e-15));
    CHECK(overlap_x(coherent_alpha::from_alpha_sq(1e-12)) == Catch::Approx(1.0).margin(1e-11));
    CHECK(overlap_x(coherent_alpha::from_alpha_sq(60.0)) < 1e-25);

    SECTION("x is real exp(-|alpha|^2) for complex alpha") {
        const coherent_alpha a(cplx(0.3, -1.1));
        CHECK(a.x() == Catch::Approx(std::exp(-(0.09 + 1.21))).margin(1e-15));
    }

    SECTION("strictly decreasing in |alpha|^2 over 100 grid points") {
        double prev = 2.0;
        for (int i = 1; i <= 100; ++i) {
            const double x = overlap_x(coherent_alpha::from_alpha_sq(5.0 * i / 100.0));
            CHECK(x < prev);
            prev = x;
        }
    }
}

TEST_CASE("alpha = 0 is rejected") {
    CHECK_THROWS_AS(coherent_alpha(cplx(0.0, 0.0)), degenerate_alpha);
    CHECK_THROWS_AS(coherent_alpha::from_alpha_sq(0.0), degenerate_alpha);
    CHECK_THROWS_AS(coherent_alpha::from_alpha_sq(-1.0), domain_error);
    CHECK_THROWS_AS(coherent_alpha(cplx(std::nan(""), 0.0)), domain_error);
}

TEST_CASE("angles_to_qubit poles and quadrature point") {
    const cat_qubit north = angles_to_qubit(0.0, 1.234);
    CHECK(north.a_plus == cplx(1.0, 0.0));
    CHECK(north.a_minus == cplx(0.0, 0.0));

    const cat_qubit south = angles_to_qubit(M_PI, 0.0);
    CHECK(std::abs(south.a_plus) < 1e-16);
    CHECK(south.a_minus.real() == Catch::Approx(1.0).margin(1e-15));

    const cat_qubit mid = angles_to_qubit(M_PI / 2.0, M_PI / 2.0);
    CHECK(mid.a_plus.real() == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
    CHECK(mid.a_minus.imag() == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
    CHECK(std::abs(mid.a_minus.real()) < 1e-15);

    CHECK_THROWS_AS(angles_to_qubit(-0.1, 0.0), domain_error);
    CHECK_THROWS_AS(angles_to_qubit(M_PI + 0.1, 0.0), domain_error);
    CHECK_THROWS_AS(angles_to_qubit(1.0, 2.0 * M_PI), domain_error);
}

TEST_CASE("epsilon_to_qubit on basis inputs") {
    const coherent_alpha alpha = coherent_alpha::from_alpha_sq(1.0);

    SECTION("pure |alpha> input") {
        const scs_coefficients s{1.0, 0.0, alpha};
        const cat_qubit q = epsilon_to_qubit(s);
        CHECK(q.a_plus.real() == Catch::Approx(0.75343721810002613).margin(1e-14));
        CHECK(q.a_minus.real() == Catch::Approx(0.65751985398289963).margin(1e-14));
        CHECK(q.is_normalized());
    }

    SECTION("symmetric input collapses onto |+>") {
        const double x2 = alpha.x() * alpha.x();
        const double e = 1.0 / std::sqrt(2.0 * (1.0 + x2));
        const scs_coefficients s{e, e, alpha};
        REQUIRE(s.is_normalized());
        const cat_qubit q = epsilon_to_qubit(s);
        CHECK(q.a_plus.real() == Catch::Approx(1.0).margin(1e-14));
        CHECK(std::abs(q.a_minus) < 1e-14);
    }
}

TEST_CASE("qubit_to_epsilon on basis inputs") {
    const coherent_alpha alpha = coherent_alpha::from_alpha_sq(1.0);

    const scs_coefficients plus = qubit_to_epsilon(cat_qubit{1.0, 0.0}, alpha);
    CHECK(plus.eps_plus.real() == Catch::Approx(0.66362530014228754).margin(1e-14));
    CHECK(plus.eps_minus.real() == Catch::Approx(0.66362530014228754).margin(1e-14));
    CHECK(plus.is_normalized());

    const scs_coefficients minus = qubit_to_epsilon(cat_qubit{0.0, 1.0}, alpha);
    CHECK(minus.eps_plus.real() == Catch::Approx(0.76043331158940744).margin(1e-14));
    CHECK(minus.eps_minus.real() == Catch::Approx(-0.76043331158940744).margin(1e-14));
    CHECK(minus.is_normalized());

    CHECK_THROWS_AS(qubit_to_epsilon(cat_qubit{1.0, 1.0}, alpha), norm_error);
}

TEST_CASE("conversion round trip is the identity") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> ua(0.05, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        const coherent_alpha alpha = coherent_alpha::from_alpha_sq(ua(rng));
        const cat_qubit q = random_qubit(rng);
        const scs_coefficients s = qubit_to_epsilon(q, alpha);
        CHECK(s.is_normalized()); // SCS normalization condition holds
        const cat_qubit back = epsilon_to_qubit(s);
        CHECK(std::abs(back.a_plus - q.a_plus) < 1e-12);
        CHECK(std::abs(back.a_minus - q.a_minus) < 1e-12);
    }
}

TEST_CASE("coherent route and cat route build the same Fock vector") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(0.1, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const coherent_alpha alpha = coherent_alpha::from_alpha_sq(ua(rng));
        const cat_qubit q = random_qubit(rng);
        const scs_coefficients s = qubit_to_epsilon(q, alpha);
        const int cutoff = min_cutoff_for(alpha.alpha_sq());

        const fock_vector ca = coherent_fock(alpha.value(), cutoff);
        const fock_vector cma = coherent_fock(-alpha.value(), cutoff);
        const fock_vector plus = cat_plus_fock(alpha, cutoff);
        const fock_vector minus = cat_minus_fock(alpha, cutoff);
        for (int n = 0; n <= cutoff; ++n) {
            const cplx via_eps = s.eps_plus * ca.amps[n] + s.eps_minus * cma.amps[n];
            const cplx via_cat = q.a_plus * plus.amps[n] + q.a_minus * minus.amps[n];
            CHECK(std::abs(via_eps - via_cat) < 1e-10);
        }
    }
}
