#pragma once

#include <vector>

#include "bimodal/hilbert.hpp"

namespace bimodal {

/// Physical parameters of the bimodal model. Delta = omega_A - omega
/// = omega - omega_B (qubit frequency midway between the modes).
struct BimodalParams {
    double Omega = 1.0;
    double Delta = 0.0;
    std::vector<int> signs;  // s_k in {+1,-1}, one per qubit
    int nmax = 1;

    int N() const { return static_cast<int>(signs.size()); }

    void validate() const {
        if (Omega <= 0.0) throw std::invalid_argument("BimodalParams: Omega must be positive");
        for (int s : signs)
            if (s != 1 && s != -1)
                throw std::invalid_argument("BimodalParams: coupling signs must be +-1");
    }
};

/// Parameters of the dispersive effective model.
struct EffectiveParams {
    double lambda = 1.0;
    std::vector<int> signs;

    int N() const { return static_cast<int>(signs.size()); }

    void validate() const {
        if (lambda <= 0.0) throw std::invalid_argument("EffectiveParams: lambda must be positive");
        for (int s : signs)
            if (s != 1 && s != -1)
                throw std::invalid_argument("EffectiveParams: coupling signs must be +-1");
    }
};

/// Rotating-frame Hamiltonian
///   Delta a'a - Delta b'b + Omega sum_k (a' s-_k + a s+_k)
///                         + Omega sum_k s_k (b' s-_k + b s+_k).
inline Matrix rotating_frame_hamiltonian(const BimodalParams& p, const SpaceLayout& layout) {
    p.validate();
    if (layout.num_qubits() != p.N() || layout.nmax != p.nmax)
        throw std::invalid_argument("rotating_frame_hamiltonian: layout does not match params");
    Matrix a = embed(annihilation(layout.nmax), 0, layout);
    Matrix b = embed(annihilation(layout.nmax), 1, layout);
    Matrix H = p.Delta * (a.adjoint() * a).eval() - p.Delta * (b.adjoint() * b).eval();
    for (int k = 0; k < p.N(); ++k) {
        Matrix sm = embed(pauli(Pauli::minus), 2 + k, layout);
        Matrix sp = embed(pauli(Pauli::plus), 2 + k, layout);
        H += p.Omega * (a.adjoint() * sm + a * sp);
        H += p.Omega * static_cast<double>(p.signs[k]) * (b.adjoint() * sm + b * sp);
    }
    return H;
}

/// Interaction-picture Hamiltonian with explicitly time-dependent phases:
///   Omega sum_k (a' s-_k e^{i Delta t} + h.c.)
/// + Omega sum_k s_k (b' s-_k e^{-i Delta t} + h.c.).
inline Matrix interaction_picture_hamiltonian(const BimodalParams& p, double t,
                                              const SpaceLayout& layout) {
    p.validate();
    if (layout.num_qubits() != p.N() || layout.nmax != p.nmax)
        throw std::invalid_argument("interaction_picture_hamiltonian: layout mismatch");
    Matrix a = embed(annihilation(layout.nmax), 0, layout);
    Matrix b = embed(annihilation(layout.nmax), 1, layout);
    Complex phA = std::exp(I * p.Delta * t);
    Complex phB = std::exp(-I * p.Delta * t);
    Matrix H = Matrix::Zero(layout.total_dim(), layout.total_dim());
    for (int k = 0; k < p.N(); ++k) {
        Matrix sm = embed(pauli(Pauli::minus), 2 + k, layout);
        Matrix termA = p.Omega * phA * (a.adjoint() * sm);
        Matrix termB = p.Omega * static_cast<double>(p.signs[k]) * phB * (b.adjoint() * sm);
        H += termA + termA.adjoint().eval() + termB + termB.adjoint().eval();
    }
    return H;
}

/// Effective qubit-qubit coupling lambda = Omega^2 / Delta (dispersive limit).
inline double effective_coupling(double Omega, double Delta) {
    if (Delta <= 0.0)
        throw std::invalid_argument("effective_coupling: Delta must be positive "
                                    "(dispersive limit undefined at Delta = 0)");
    return Omega * Omega / Delta;
}

/// Dispersive effective Hamiltonian on the N-qubit space:
///   -lambda (nA - nB) sum_k sigma^z_k
///   -lambda sum_{j != k} (1 - s_j s_k) sigma^+_j sigma^-_k.
/// The j = k diagonal of the double sum vanishes identically.
inline Matrix effective_hamiltonian(const EffectiveParams& p, int nA = 0, int nB = 0) {
    p.validate();
    const int N = p.N();
    const int dim = 1 << N;
    SpaceLayout qubits;
    qubits.nmax = 1;
    for (int k = 1; k <= N; ++k) qubits.factors.push_back({"qubit" + std::to_string(k), 2});
    Matrix H = Matrix::Zero(dim, dim);
    if (nA != nB) {
        for (int k = 0; k < N; ++k)
            H += -p.lambda * static_cast<double>(nA - nB) * embed(pauli(Pauli::z), k, qubits);
    }
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            if (j == k) continue;
            double c = 1.0 - static_cast<double>(p.signs[j] * p.signs[k]);
            if (c == 0.0) continue;
            H += -p.lambda * c *
                 (embed(pauli(Pauli::plus), j, qubits) * embed(pauli(Pauli::minus), k, qubits));
        }
    }
    return H;
}

}  // namespace bimodal
