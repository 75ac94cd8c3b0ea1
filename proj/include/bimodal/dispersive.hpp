#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "bimodal/hamiltonians.hpp"

namespace bimodal {

/// Single-excitation dispersive W family, sign pattern s_1 = -1, s_{k>1} = +1:
/// c1 on qubit 1, the common ck on every other qubit.
struct DispersiveWAmplitudes {
    Complex c1, ck;
};

inline DispersiveWAmplitudes w_dispersive_amplitudes(int N, double lambda, double t) {
    if (N < 2) throw std::invalid_argument("w_dispersive_amplitudes: N >= 2 required");
    if (lambda <= 0.0) throw std::invalid_argument("w_dispersive_amplitudes: lambda > 0 required");
    const double root = std::sqrt(static_cast<double>(N - 1));
    const double theta = 2.0 * root * lambda * t;
    return {std::cos(theta), I * std::sin(theta) / root};
}

/// Shortest t with |c1|^2 = P1: t = arccos(sqrt(P1)) / (2 sqrt(N-1) lambda).
inline double w_dispersive_time(int N, double P1, double lambda) {
    if (N < 2) throw std::invalid_argument("w_dispersive_time: N >= 2 required");
    if (P1 < 0.0 || P1 > 1.0) throw std::invalid_argument("w_dispersive_time: P1 in [0,1]");
    return std::acos(std::sqrt(P1)) / (2.0 * std::sqrt(static_cast<double>(N - 1)) * lambda);
}

/// Three-qubit amplitudes evolved from |+++> under the s = (-1,+1,+1)
/// effective model, basis order uuu, uud, udu, udd, duu, dud, ddu, ddd.
struct GhzAmplitudes {
    double mu, nu;
    std::array<Complex, 8> amps;
};

inline GhzAmplitudes ghz_evolution(double lambda, double t) {
    if (lambda <= 0.0) throw std::invalid_argument("ghz_evolution: lambda > 0 required");
    GhzAmplitudes out;
    out.mu = std::cos(2.0 * std::sqrt(2.0) * lambda * t);
    out.nu = std::sin(2.0 * std::sqrt(2.0) * lambda * t) / std::sqrt(2.0);
    const double norm = 1.0 / (2.0 * std::sqrt(2.0));
    const Complex one(1.0, 0.0);
    const Complex m1 = out.mu + I * out.nu;
    const Complex m2 = out.mu + 2.0 * I * out.nu;
    out.amps = {one, m1, m1, m2, m2, m1, m1, one};
    for (auto& a : out.amps) a *= norm;
    return out;
}

inline Vector ghz_state_vector(double lambda, double t) {
    auto g = ghz_evolution(lambda, t);
    Vector v(8);
    for (int i = 0; i < 8; ++i) v(i) = g.amps[i];
    return v;
}

/// Four-qubit cluster generation from |up down up down> with
/// s = (-1,-1,+1,+1), by exact exponentiation of the effective Hamiltonian.
inline Vector cluster_evolution(double lambda, double t) {
    if (lambda <= 0.0) throw std::invalid_argument("cluster_evolution: lambda > 0 required");
    EffectiveParams p{lambda, {-1, -1, 1, 1}};
    Matrix H = effective_hamiltonian(p);
    Vector psi0 = Vector::Zero(16);
    psi0(5) = 1.0;  // |up down up down>
    return evolve_constant(H, psi0, t);
}

inline double cluster_ideal_time(double lambda) {
    return M_PI / (4.0 * std::sqrt(2.0)) / lambda;
}

inline double ghz_ideal_time(double lambda) {
    return M_PI / (2.0 * std::sqrt(2.0)) / lambda;
}

}  // namespace bimodal
