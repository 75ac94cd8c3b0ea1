#pragma once

#include <cmath>
#include <string>

#include "bimodal/analytic.hpp"
#include "bimodal/dispersive.hpp"
#include "bimodal/hilbert.hpp"

namespace bimodal {

enum class Scheme { resonant_sequential, resonant_simultaneous, bell_primed, dispersive };

/// A named generation recipe: initial state, ideal interaction time, printed
/// target, and the local-unitary correction mapping the generated state onto
/// the target.
struct ProtocolSpec {
    std::string name;
    Scheme scheme;
    BimodalParams params;       // resonant / bell-primed schemes
    EffectiveParams eff;        // dispersive schemes
    int N = 1;                  // qubit count of the protocol space
    double ideal_time = 0.0;
    Complex prime_p = 0.0;      // bell-primed seeding parameter (0 if unused)
    Vector target;              // printed target, library basis
    Matrix canonicalizer;       // tensor product of single-factor unitaries
    SpaceLayout layout;         // protocol space (qubit-only for dispersive)

    bool is_dispersive() const { return scheme == Scheme::dispersive; }
};

namespace detail {

inline Matrix phase_gate(Complex amp, bool excited_first) {
    // diag phase cancelling arg(amp) on the excited level; amp == 0 leaves
    // the factor untouched (the corresponding component has no weight)
    Complex ph = (std::abs(amp) < 1e-14) ? Complex(1.0, 0.0)
                                         : std::exp(-I * std::arg(amp));
    Matrix m = Matrix::Identity(2, 2);
    if (excited_first) m(0, 0) = ph;   // qubit: |up> is index 0
    else m(1, 1) = ph;                 // mode: |1> is index 1
    return m;
}

inline Matrix hadamard() {
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

}  // namespace detail

/// Printed target states. N is required for the wN-* families.
inline Vector target_state(const std::string& name, int N = 0) {
    auto unit = [](std::initializer_list<std::pair<int, Complex>> entries, int dim) {
        Vector v = Vector::Zero(dim);
        for (auto& [i, a] : entries) v(i) = a;
        return v;
    };
    const double r2 = std::sqrt(2.0);
    if (name == "bell-modes")  // (|10> + |01>)/sqrt(2), modes only
        return unit({{2, 1.0 / r2}, {1, 1.0 / r2}}, 4);
    if (name == "w3-hybrid")   // (|10 down> + |01 down> + |00 up>)/sqrt(3)
        return unit({{5, 1.0 / std::sqrt(3.0)}, {3, 1.0 / std::sqrt(3.0)},
                     {0, 1.0 / std::sqrt(3.0)}}, 8);
    if (name == "wt-hybrid")   // (|10 down> + |01 down> + sqrt(2)|00 up>)/2
        return unit({{5, 0.5}, {3, 0.5}, {0, r2 / 2.0}}, 8);
    if (name == "ghz3") {      // eight amplitudes of the lambda t = pi/(2 sqrt2) state
        Vector v = Vector::Constant(8, Complex(-1.0 / (2.0 * r2), 0.0));
        v(0) = 1.0 / (2.0 * r2);
        v(7) = 1.0 / (2.0 * r2);
        return v;
    }
    if (name == "ghz-canonical")
        return unit({{0, 1.0 / r2}, {7, 1.0 / r2}}, 8);
    if (name == "cluster4")    // (|udud> - |uddu> - |duud> - |dudu>)/2
        return unit({{5, 0.5}, {6, -0.5}, {9, -0.5}, {10, -0.5}}, 16);
    if (name == "cluster-canonical")  // (|uuuu> + |uudd> + |dduu> - |dddd>)/2
        return unit({{0, 0.5}, {3, 0.5}, {12, 0.5}, {15, -0.5}}, 16);
    if (name == "phi4") {      // the cluster state in the |+->/updown mixed basis
        Vector pl(2), mi(2), up(2), dn(2);
        pl << 1.0 / r2, 1.0 / r2;
        mi << 1.0 / r2, -1.0 / r2;
        up << 1, 0;
        dn << 0, 1;
        auto kv = [](const Vector& a, const Vector& b, const Vector& c, const Vector& d) {
            Matrix m = kron(kron(Matrix(a), Matrix(b)), kron(Matrix(c), Matrix(d)));
            return Vector(m.col(0));
        };
        return 0.5 * (kv(pl, up, pl, up) + kv(pl, up, mi, dn) +
                      kv(mi, dn, mi, up) + kv(mi, dn, pl, dn));
    }
    if (name == "wt-prototype") {  // qubit-only W_T: sqrt(2)-weighted first slot
        if (N < 2) throw std::invalid_argument("target_state: wt-prototype needs N >= 2");
        Vector v = Vector::Zero(1 << N);
        int alldown = (1 << N) - 1;
        v(alldown - (1 << (N - 1))) = 1.0 / r2;
        for (int k = 1; k < N; ++k)
            v(alldown - (1 << (N - 1 - k))) = 1.0 / std::sqrt(2.0 * (N - 1));
        return v;
    }
    if (name == "wN-prototype") {  // qubit-only W_N
        if (N < 2) throw std::invalid_argument("target_state: wN-prototype needs N >= 2");
        Vector v = Vector::Zero(1 << N);
        int alldown = (1 << N) - 1;
        for (int k = 0; k < N; ++k) v(alldown - (1 << (N - 1 - k))) = 1.0 / std::sqrt(N);
        return v;
    }
    if (name == "wN-hybrid") {     // modes + N qubits, W_{N+2}
        if (N < 1) throw std::invalid_argument("target_state: wN-hybrid needs N >= 1");
        SpaceLayout layout = bimodal_layout(N);
        Vector v = Vector::Zero(layout.total_dim());
        const double a = 1.0 / std::sqrt(N + 2.0);
        std::vector<Spin> down(N, Spin::down);
        v(basis_index({1, 0, down}, layout)) = a;
        v(basis_index({0, 1, down}, layout)) = a;
        for (int k = 0; k < N; ++k) {
            auto spins = down;
            spins[k] = Spin::up;
            v(basis_index({0, 0, spins}, layout)) = a;
        }
        return v;
    }
    throw std::invalid_argument("target_state: unknown name '" + name + "'");
}

/// Named local-unitary corrections. "ghz-vu" maps the generated GHZ to the
/// canonical (|uuu>+|ddd>)/sqrt(2); "cluster-pauli" maps the generated
/// cluster to its usual linear form; "sasa-frame" is T mapping it to phi4.
inline Matrix canonicalizer_matrix(const std::string& name) {
    const Matrix sx = pauli(Pauli::x), sz = pauli(Pauli::z);
    const Matrix id = Matrix::Identity(2, 2);
    const Matrix H = detail::hadamard();
    if (name == "ghz-vu") {
        Matrix U = kron(kron(Matrix((-I * sx).sqrt()), Matrix((I * sz).sqrt())),
                        Matrix((I * sz).sqrt()));
        Matrix V = (-std::sqrt(I)) * kron(kron(sz, H), H);
        return V * U;
    }
    if (name == "cluster-pauli")
        return -kron(kron(sx, id), kron(sx, id));
    if (name == "sasa-frame")
        return -kron(kron(Matrix(H * sx), id), kron(sx, H));
    throw std::invalid_argument("canonicalizer_matrix: unknown name '" + name + "'");
}

inline Vector canonicalize(const Vector& state, const std::string& name) {
    Matrix M = canonicalizer_matrix(name);
    if (M.cols() != state.size())
        throw std::invalid_argument("canonicalize: state dim does not match '" + name + "'");
    return M * state;
}

/// Build the catalogued protocol. delta_over_omega applies to the resonant
/// and bell-primed schemes (dispersive protocols are parameterized by lambda
/// alone); wN-* take the qubit count N.
inline ProtocolSpec make_protocol(const std::string& name, int N = 0,
                                  double delta_over_omega = std::sqrt(2.0),
                                  double omega = 1.0, double lambda = 1.0,
                                  PKind p_kind = PKind::real_p) {
    ProtocolSpec spec;
    spec.name = name;
    const double Delta = delta_over_omega * omega;

    auto resonant = [&](double P_target, const Vector& tgt) {
        spec.scheme = Scheme::resonant_sequential;
        spec.N = 1;
        spec.params = BimodalParams{omega, Delta, {1}, 1};
        spec.layout = bimodal_layout(1);
        spec.ideal_time = time_for_p_up(omega, Delta, P_target);
        spec.target = tgt;
        auto amp = single_qubit_amplitudes(omega, Delta, 1, spec.ideal_time);
        Matrix c = kron(detail::phase_gate(amp.c1, false), detail::phase_gate(amp.c2, false));
        spec.canonicalizer = kron(c, Matrix::Identity(2, 2));
    };

    if (name == "bell-modes") {
        // full-system target: modes Bell state with the qubit left in |down>
        Vector full = Vector::Zero(8);
        full(5) = 1.0 / std::sqrt(2.0);  // |10 down>
        full(3) = 1.0 / std::sqrt(2.0);  // |01 down>
        resonant(0.0, full);
    } else if (name == "w3-hybrid") {
        resonant(1.0 / 3.0, target_state("w3-hybrid"));
    } else if (name == "wt-hybrid") {
        resonant(0.5, target_state("wt-hybrid"));
    } else if (name == "wN-hybrid" || name == "wN-prototype") {
        const bool hybrid = (name == "wN-hybrid");
        if (N < (hybrid ? 1 : 2))
            throw std::invalid_argument("make_protocol: " + name + " needs a valid --n");
        spec.scheme = Scheme::bell_primed;
        spec.N = N;
        // prototype targets (population 1/N) pin the detuning: the feasibility
        // window degenerates to Delta = 0 (p real) or Delta = sqrt(2N) Omega
        // (p imaginary); hybrid targets keep the caller's Delta
        double D = hybrid ? Delta
                          : (p_kind == PKind::real_p ? 0.0
                                                     : std::sqrt(2.0 * N) * omega);
        spec.params = BimodalParams{omega, D, std::vector<int>(N, 1), 1};
        spec.layout = bimodal_layout(N);
        double d0 = (p_kind == PKind::real_p) ? std::sqrt(2.0) * omega : 0.0;
        spec.prime_p = bell_prime_parameter(omega, d0).p;
        spec.ideal_time =
            time_for_w(N, hybrid ? WKind::hybrid : WKind::prototype, p_kind, omega, D);
        spec.target = target_state(hybrid ? "wN-hybrid" : "wN-prototype", N);
        auto amp = bell_primed_amplitudes(N, omega, D, spec.prime_p, spec.ideal_time);
        Matrix c = kron(detail::phase_gate(amp.aN, false), detail::phase_gate(amp.bN, false));
        Matrix q = detail::phase_gate(amp.cN[0], true);
        for (int k = 0; k < N; ++k) c = kron(c, q);
        spec.canonicalizer = c;
        if (!hybrid) {
            // prototype target lives on the qubits; embed modes-vacuum factor
            Vector full = Vector::Zero(spec.layout.total_dim());
            full.head(1 << N) = spec.target;  // |00> block is first
            spec.target = full;
        }
    } else if (name == "w-dispersive" || name == "wt-dispersive") {
        const bool wt = (name == "wt-dispersive");
        if (wt && N == 0) N = 3;
        if (N < 2) throw std::invalid_argument("make_protocol: " + name + " needs --n >= 2");
        spec.scheme = Scheme::dispersive;
        spec.N = N;
        spec.eff = EffectiveParams{lambda, [&] {
                                       std::vector<int> s(N, 1);
                                       s[0] = -1;
                                       return s;
                                   }()};
        spec.ideal_time = w_dispersive_time(N, wt ? 0.5 : 1.0 / N, lambda);
        spec.target = target_state(wt ? "wt-prototype" : "wN-prototype", N);
        auto amp = w_dispersive_amplitudes(N, lambda, spec.ideal_time);
        Matrix c = detail::phase_gate(amp.c1, true);
        Matrix ck = detail::phase_gate(amp.ck, true);
        for (int k = 1; k < N; ++k) c = kron(c, ck);
        spec.canonicalizer = c;
    } else if (name == "ghz3") {
        spec.scheme = Scheme::dispersive;
        spec.N = 3;
        spec.eff = EffectiveParams{lambda, {-1, 1, 1}};
        spec.ideal_time = ghz_ideal_time(lambda);
        spec.target = target_state("ghz-canonical");
        spec.canonicalizer = canonicalizer_matrix("ghz-vu");
    } else if (name == "cluster4") {
        spec.scheme = Scheme::dispersive;
        spec.N = 4;
        spec.eff = EffectiveParams{lambda, {-1, -1, 1, 1}};
        spec.ideal_time = cluster_ideal_time(lambda);
        spec.target = target_state("cluster4");
        spec.canonicalizer = Matrix::Identity(16, 16);
    } else {
        throw std::invalid_argument("make_protocol: unknown protocol '" + name + "'");
    }
    return spec;
}

/// Noiseless generated state at the ideal time, in the protocol's space,
/// before any local-unitary correction.
inline Vector ideal_generated_state(const ProtocolSpec& spec) {
    switch (spec.scheme) {
        case Scheme::resonant_sequential: {
            auto amp = single_qubit_amplitudes(spec.params.Omega, spec.params.Delta,
                                               spec.params.signs[0], spec.ideal_time);
            Vector v = Vector::Zero(8);
            v(5) = amp.c1;
            v(3) = amp.c2;
            v(0) = amp.c3;
            return v;
        }
        case Scheme::resonant_simultaneous:
        case Scheme::bell_primed: {
            SimultaneousAmplitudes amp =
                (spec.scheme == Scheme::bell_primed)
                    ? bell_primed_amplitudes(spec.N, spec.params.Omega, spec.params.Delta,
                                             spec.prime_p, spec.ideal_time)
                    : simultaneous_vacuum_amplitudes(spec.N, spec.params.Omega,
                                                     spec.params.Delta, spec.ideal_time);
            Vector v = Vector::Zero(spec.layout.total_dim());
            std::vector<Spin> down(spec.N, Spin::down);
            v(basis_index({1, 0, down}, spec.layout)) = amp.aN;
            v(basis_index({0, 1, down}, spec.layout)) = amp.bN;
            for (int k = 0; k < spec.N; ++k) {
                auto spins = down;
                spins[k] = Spin::up;
                v(basis_index({0, 0, spins}, spec.layout)) = amp.cN[k];
            }
            return v;
        }
        case Scheme::dispersive: {
            if (spec.name == "ghz3") return ghz_state_vector(spec.eff.lambda, spec.ideal_time);
            if (spec.name == "cluster4")
                return cluster_evolution(spec.eff.lambda, spec.ideal_time);
            auto amp = w_dispersive_amplitudes(spec.N, spec.eff.lambda, spec.ideal_time);
            Vector v = Vector::Zero(1 << spec.N);
            int alldown = (1 << spec.N) - 1;
            for (int k = 0; k < spec.N; ++k)
                v(alldown - (1 << (spec.N - 1 - k))) = (k == 0) ? amp.c1 : amp.ck;
            return v;
        }
    }
    throw std::logic_error("ideal_generated_state: unreachable");
}

/// Initial preparation of the protocol, in the same space as
/// ideal_generated_state.
inline Vector initial_state(const ProtocolSpec& spec) {
    switch (spec.scheme) {
        case Scheme::resonant_sequential: {
            Vector v = Vector::Zero(8);
            v(0) = 1.0;  // |00 up>
            return v;
        }
        case Scheme::resonant_simultaneous: {
            Vector v = Vector::Zero(spec.layout.total_dim());
            std::vector<Spin> spins(spec.N, Spin::down);
            spins[0] = Spin::up;
            v(basis_index({0, 0, spins}, spec.layout)) = 1.0;
            return v;
        }
        case Scheme::bell_primed: {
            Vector v = Vector::Zero(spec.layout.total_dim());
            std::vector<Spin> down(spec.N, Spin::down);
            v(basis_index({1, 0, down}, spec.layout)) = spec.prime_p;
            v(basis_index({0, 1, down}, spec.layout)) = std::conj(spec.prime_p);  // -s0 p*, s0 = -1
            return v;
        }
        case Scheme::dispersive: {
            if (spec.name == "ghz3") {
                Vector v = Vector::Constant(8, Complex(1.0 / (2.0 * std::sqrt(2.0)), 0.0));
                return v;  // |+++>
            }
            Vector v = Vector::Zero(1 << spec.N);
            int alldown = (1 << spec.N) - 1;
            if (spec.name == "cluster4") {
                v(5) = 1.0;  // |up down up down>
            } else {
                v(alldown - (1 << (spec.N - 1))) = 1.0;  // qubit 1 up, rest down
            }
            return v;
        }
    }
    throw std::logic_error("initial_state: unreachable");
}

struct ProtocolRun {
    Vector state;     // generated, uncanonicalized
    double fidelity;  // to target, after canonicalization and phase removal
};

inline ProtocolRun run_ideal(const ProtocolSpec& spec) {
    Vector psi = ideal_generated_state(spec);
    return {psi, overlap_fidelity(spec.target, spec.canonicalizer * psi)};
}

}  // namespace bimodal
