#include <doctest.h>

#include "bimodal/hamiltonians.hpp"
#include "bimodal/hilbert.hpp"

using namespace bimodal;

TEST_CASE("basis indexing follows the mixed-radix convention") {
    SpaceLayout layout = bimodal_layout(2);
    CHECK(layout.total_dim() == 16);
    CHECK(basis_index({0, 0, {Spin::up, Spin::up}}, layout) == 0);
    CHECK(basis_index({0, 0, {Spin::up, Spin::down}}, layout) == 1);
    CHECK(basis_index({0, 1, {Spin::down, Spin::down}}, layout) == 7);
    CHECK(basis_index({1, 0, {Spin::down, Spin::down}}, layout) == 11);
    CHECK_THROWS_AS(basis_index({2, 0, {Spin::up, Spin::up}}, layout), std::invalid_argument);
    CHECK_THROWS_AS(basis_index({0, 0, {Spin::up}}, layout), std::invalid_argument);
}

TEST_CASE("embedded operators on different factors commute") {
    SpaceLayout layout = bimodal_layout(2);
    Matrix a = embed(annihilation(1), 0, layout);
    Matrix s1 = embed(pauli(Pauli::minus), 2, layout);
    Matrix s2 = embed(pauli(Pauli::x), 3, layout);
    CHECK((a * s1 - s1 * a).norm() < 1e-15);
    CHECK((s1 * s2 - s2 * s1).norm() < 1e-15);
    // same factor: [sigma+, sigma-] = sigma_z
    Matrix sp = embed(pauli(Pauli::plus), 2, layout);
    Matrix sz = embed(pauli(Pauli::z), 2, layout);
    CHECK((sp * s1 - s1 * sp - sz).norm() < 1e-15);
}

TEST_CASE("partial trace of a product state factorizes") {
    SpaceLayout layout = bimodal_layout(1);
    Vector psi = basis_state({1, 0, {Spin::down}}, layout);
    Matrix rho = psi * psi.adjoint();
    Matrix modes = partial_trace(rho, {0, 1}, layout);
    CHECK(modes.rows() == 4);
    CHECK(std::abs(modes(2, 2).real() - 1.0) < 1e-15);  // |10><10|
    Matrix qubit = partial_trace(rho, {2}, layout);
    CHECK(std::abs(qubit(1, 1).real() - 1.0) < 1e-15);
    CHECK(std::abs(qubit.trace().real() - 1.0) < 1e-15);
}

TEST_CASE("partial trace of an entangled state is mixed") {
    SpaceLayout layout = bimodal_layout(1);
    Vector psi = (basis_state({1, 0, {Spin::down}}, layout) +
                  basis_state({0, 1, {Spin::down}}, layout)) / std::sqrt(2.0);
    Matrix rhoA = partial_trace(Matrix(psi * psi.adjoint()), {0}, layout);
    CHECK(std::abs((rhoA * rhoA).trace().real() - 0.5) < 1e-12);
}

TEST_CASE("fidelity handles pure and mixed inputs") {
    Vector psi(2), phi(2);
    psi << 1.0, 0.0;
    phi << 0.0, 1.0;
    CHECK(overlap_fidelity(psi, psi) == doctest::Approx(1.0));
    CHECK(overlap_fidelity(psi, phi) == doctest::Approx(0.0));
    Matrix rho = 0.5 * Matrix::Identity(2, 2);
    CHECK(fidelity(psi, rho) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("rotating-frame hamiltonian conserves total excitation") {
    for (int N : {1, 2, 3}) {
        SpaceLayout layout = bimodal_layout(N);
        std::vector<int> signs(N, 1);
        if (N > 1) signs[1] = -1;
        Matrix H = rotating_frame_hamiltonian({1.0, 0.9, signs, 1}, layout);
        Matrix E = total_excitation(layout);
        CHECK((H * E - E * H).norm() < 1e-12);
        CHECK((H - H.adjoint().eval()).norm() < 1e-14);
    }
}

TEST_CASE("effective hamiltonian blocks pairs with equal signs") {
    Matrix H = effective_hamiltonian({1.0, {1, 1}});
    CHECK(H.norm() == doctest::Approx(0.0));
    Matrix H2 = effective_hamiltonian({0.5, {-1, 1}});
    // hop |up down> <-> |down up> with amplitude -2*lambda
    CHECK(std::abs(H2(1, 2) - Complex(-1.0, 0.0)) < 1e-15);
    CHECK((H2 - H2.adjoint().eval()).norm() < 1e-15);
}

TEST_CASE("stark term appears only for unequal photon numbers") {
    Matrix H = effective_hamiltonian({1.0, {-1, 1}}, 1, 0);
    Matrix Hz = effective_hamiltonian({1.0, {-1, 1}}, 1, 1);
    Matrix diff = H - effective_hamiltonian({1.0, {-1, 1}});
    CHECK(std::abs(diff(0, 0) - Complex(-2.0, 0.0)) < 1e-15);  // both up
    CHECK((Hz - effective_hamiltonian({1.0, {-1, 1}})).norm() < 1e-15);
}
