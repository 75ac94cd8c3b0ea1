#pragma once

#include <string>
#include <vector>

#include "bimodal/protocols.hpp"
#include "bimodal/sweep.hpp"

namespace bimodal {

/// Zero-temperature decay rates: photon leakage of each mode and spontaneous
/// emission of the qubits.
struct DecayRates {
    double kappaA = 0.0;
    double kappaB = 0.0;
    double gamma = 0.0;

    void validate() const {
        if (kappaA < 0.0 || kappaB < 0.0 || gamma < 0.0)
            throw std::invalid_argument("DecayRates: rates must be non-negative");
    }
};

/// Named rate configuration: (kappaA, kappaB, gamma) = chi * (mA, mB, mG).
struct DissipationScenario {
    std::string name;
    double mA = 1.0, mB = 1.0, mG = 1.0;

    DecayRates at(double chi) const { return {chi * mA, chi * mB, chi * mG}; }
};

/// The five rate configurations of the resonant-protocol fidelity study.
inline std::vector<DissipationScenario> standard_scenarios() {
    return {{"equal", 1.0, 1.0, 1.0},
            {"weak-cavities", 0.1, 0.1, 1.0},
            {"weak-atom", 1.0, 1.0, 0.1},
            {"mixed-1", 0.1, 0.5, 1.0},
            {"mixed-2", 1.0, 0.5, 0.1}};
}

inline DissipationScenario scenario_by_name(const std::string& name) {
    for (const auto& s : standard_scenarios())
        if (s.name == name) return s;
    throw std::invalid_argument("scenario_by_name: unknown scenario '" + name + "'");
}

/// GKSL generator rho -> -i[H,rho] + sum_c (c rho c' - (1/2){c'c, rho}) with
/// channels sqrt(kappaA) a, sqrt(kappaB) b, sqrt(gamma) sigma-_k.
inline Superoperator lindblad_generator(const Matrix& H, const DecayRates& rates,
                                        const SpaceLayout& layout) {
    rates.validate();
    if (H.rows() != layout.total_dim() || H.cols() != layout.total_dim())
        throw std::invalid_argument("lindblad_generator: H does not match layout");
    std::vector<Matrix> channels;
    if (rates.kappaA > 0.0)
        channels.push_back(std::sqrt(rates.kappaA) * embed(annihilation(layout.nmax), 0, layout));
    if (rates.kappaB > 0.0)
        channels.push_back(std::sqrt(rates.kappaB) * embed(annihilation(layout.nmax), 1, layout));
    if (rates.gamma > 0.0)
        for (int k = 0; k < layout.num_qubits(); ++k)
            channels.push_back(std::sqrt(rates.gamma) * embed(pauli(Pauli::minus), 2 + k, layout));
    // K = -iH - (1/2) sum c'c, so L(rho) = K rho + rho K' + sum c rho c'
    Matrix K = -I * H;
    for (const auto& c : channels) K -= 0.5 * (c.adjoint() * c);
    return [K, channels](const Matrix& rho) {
        Matrix out = K * rho + rho * K.adjoint();
        for (const auto& c : channels) out += c * rho * c.adjoint();
        return out;
    };
}

/// Qubit-only generator for the dispersive protocols (cavity channels drop
/// out with the modes kept in vacuum).
inline Superoperator lindblad_generator_qubits(const Matrix& H, double gamma, int N) {
    SpaceLayout qubits;
    qubits.nmax = 1;
    for (int k = 1; k <= N; ++k) qubits.factors.push_back({"qubit" + std::to_string(k), 2});
    std::vector<Matrix> channels;
    if (gamma > 0.0)
        for (int k = 0; k < N; ++k)
            channels.push_back(std::sqrt(gamma) * embed(pauli(Pauli::minus), k, qubits));
    Matrix K = -I * H;
    for (const auto& c : channels) K -= 0.5 * (c.adjoint() * c);
    return [K, channels](const Matrix& rho) {
        Matrix out = K * rho + rho * K.adjoint();
        for (const auto& c : channels) out += c * rho * c.adjoint();
        return out;
    };
}

/// Evolve the protocol's initial state under its Hamiltonian plus decay for
/// the ideal duration; return sqrt-fidelity against the ideal generated
/// state. Dispersive protocols use the qubit-only effective model with
/// gamma = rates.gamma.
inline double dissipative_fidelity(const ProtocolSpec& spec, const DecayRates& rates,
                                   long steps = kDefaultSteps) {
    Vector psi0 = initial_state(spec);
    Vector target = ideal_generated_state(spec);
    Matrix rho0 = psi0 * psi0.adjoint();
    Superoperator L;
    if (spec.is_dispersive()) {
        L = lindblad_generator_qubits(effective_hamiltonian(spec.eff), rates.gamma, spec.N);
    } else {
        L = lindblad_generator(rotating_frame_hamiltonian(spec.params, spec.layout), rates,
                               spec.layout);
    }
    Matrix rho = evolve_density(L, rho0, spec.ideal_time,
                                spec.ideal_time / static_cast<double>(steps));
    return fidelity(target, rho);
}

/// Fidelity-vs-chi sweep for one protocol and scenario.
inline SweepResult chi_sweep(const ProtocolSpec& spec, const DissipationScenario& scenario,
                             const std::vector<double>& chi_grid, long steps = kDefaultSteps) {
    for (size_t i = 0; i < chi_grid.size(); ++i) {
        if (chi_grid[i] < 0.0 || (i > 0 && chi_grid[i] <= chi_grid[i - 1]))
            throw std::invalid_argument("chi_sweep: grid must be non-negative and increasing");
    }
    SweepResult out;
    out.columns = {"chi_over_unit", "scenario", "protocol", "fidelity"};
    for (double chi : chi_grid) {
        double F = dissipative_fidelity(spec, scenario.at(chi), steps);
        out.add_row({chi, scenario.name, spec.name, F});
    }
    return out;
}

}  // namespace bimodal
