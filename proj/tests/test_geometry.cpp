#include <doctest.h>

#include "bimodal/geometry.hpp"

using namespace bimodal;

TEST_CASE("coupling profile has the standing-wave nodes and antinodes") {
    CHECK(scaled_coupling(1, 0.0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(std::abs(scaled_coupling(2, 0.0)) < 1e-12);
    for (int n : {1, 2, 3}) {
        CHECK(std::abs(scaled_coupling(n, 0.5)) < 1e-12);
        CHECK(std::abs(scaled_coupling(n, -0.5)) < 1e-12);
    }
    CHECK_THROWS_AS(scaled_coupling(0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(scaled_coupling(1, 0.7), std::invalid_argument);
}

TEST_CASE("fundamental-pair roots match the closed formula") {
    const double ref = std::asin(1.0 / (2.0 * std::sqrt(2.0))) / M_PI;
    auto eq = solve_position(1, SignChoice::equal);
    auto op = solve_position(1, SignChoice::opposite);
    REQUIRE(eq.size() == 1);
    REQUIRE(op.size() == 1);
    CHECK(std::abs(eq[0].r_tilde + ref) < 1e-12);
    CHECK(std::abs(op[0].r_tilde - ref) < 1e-12);
    for (const auto& [roots, s] : {std::pair{eq, 1.0}, std::pair{op, -1.0}}) {
        double r = roots[0].r_tilde;
        CHECK(std::abs(scaled_coupling(1, r) - s * scaled_coupling(2, r)) < 1e-12);
        CHECK(std::abs(scaled_coupling(1, r)) > 1e-6);
    }
}

TEST_CASE("the symmetric placement pair flips the sign of the upper mode") {
    auto [p, m] = two_atom_positions(1);
    CHECK(p.r_tilde == doctest::Approx(-m.r_tilde).epsilon(1e-12));
    CHECK(std::abs(std::abs(scaled_coupling(1, p.r_tilde)) -
                   std::abs(scaled_coupling(1, m.r_tilde))) < 1e-12);
    CHECK(std::abs(std::abs(scaled_coupling(2, p.r_tilde)) -
                   std::abs(scaled_coupling(2, m.r_tilde))) < 1e-12);
    CHECK(scaled_coupling(2, p.r_tilde) * scaled_coupling(2, m.r_tilde) < 0.0);
}

TEST_CASE("higher mode pairs still satisfy the solver contract") {
    for (int n : {2, 3}) {
        for (auto sign : {SignChoice::equal, SignChoice::opposite}) {
            double s = sign == SignChoice::equal ? 1.0 : -1.0;
            for (const auto& root : solve_position(n, sign)) {
                CHECK(std::abs(scaled_coupling(n, root.r_tilde) -
                               s * scaled_coupling(n + 1, root.r_tilde)) < 1e-12);
                CHECK(std::abs(scaled_coupling(n, root.r_tilde)) > 1e-6);
            }
        }
    }
}
