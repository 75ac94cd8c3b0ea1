#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "bimodal/linalg.hpp"

namespace bimodal {

/// Ordered factor list of the composite space: mode A, mode B, then qubits
/// 1..N. Basis enumeration is mixed-radix with the leftmost factor most
/// significant, so |n_A n_B s_1...s_N> maps to
/// ((n_A*(nmax+1) + n_B)*2 + s_1)*2 + ... with |up> = 0, |down> = 1.
struct SpaceLayout {
    struct Factor {
        std::string label;
        int dim;
    };
    std::vector<Factor> factors;
    int nmax = 1;

    int total_dim() const {
        int d = 1;
        for (const auto& f : factors) d *= f.dim;
        return d;
    }
    int num_qubits() const { return static_cast<int>(factors.size()) - 2; }
};

/// Two modes truncated at nmax photons plus N qubits.
inline SpaceLayout bimodal_layout(int num_qubits, int nmax = 1) {
    if (num_qubits < 0 || nmax < 1)
        throw std::invalid_argument("bimodal_layout: need num_qubits >= 0, nmax >= 1");
    SpaceLayout layout;
    layout.nmax = nmax;
    layout.factors.push_back({"modeA", nmax + 1});
    layout.factors.push_back({"modeB", nmax + 1});
    for (int k = 1; k <= num_qubits; ++k)
        layout.factors.push_back({"qubit" + std::to_string(k), 2});
    return layout;
}

enum class Spin { up = 0, down = 1 };

struct BasisLabel {
    int nA = 0;
    int nB = 0;
    std::vector<Spin> spins;
};

/// Truncated annihilation operator: entry (n, n+1) = sqrt(n+1).
inline Matrix annihilation(int nmax) {
    if (nmax < 1) throw std::invalid_argument("annihilation: nmax >= 1 required");
    Matrix a = Matrix::Zero(nmax + 1, nmax + 1);
    for (int n = 0; n < nmax; ++n) a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    return a;
}

enum class Pauli { x, y, z, plus, minus };

/// 2x2 Pauli operator in the |up>=e0, |down>=e1 convention, so
/// sigma+|down> = |up> and sigma_z|up> = +|up>.
inline Matrix pauli(Pauli kind) {
    Matrix m = Matrix::Zero(2, 2);
    switch (kind) {
        case Pauli::x: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case Pauli::y: m(0, 1) = -I; m(1, 0) = I; break;
        case Pauli::z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        case Pauli::plus: m(0, 1) = 1.0; break;
        case Pauli::minus: m(1, 0) = 1.0; break;
    }
    return m;
}

/// Identity (x) ... (x) op (x) ... (x) identity, op at factor_index.
inline Matrix embed(const Matrix& op, int factor_index, const SpaceLayout& layout) {
    if (factor_index < 0 || factor_index >= static_cast<int>(layout.factors.size()))
        throw std::invalid_argument("embed: factor index out of range");
    if (op.rows() != layout.factors[factor_index].dim || op.rows() != op.cols())
        throw std::invalid_argument("embed: operator dim does not match factor dim");
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < static_cast<int>(layout.factors.size()); ++i) {
        if (i == factor_index)
            out = kron(out, op);
        else
            out = kron(out, Matrix::Identity(layout.factors[i].dim, layout.factors[i].dim));
    }
    return out;
}

inline int basis_index(const BasisLabel& label, const SpaceLayout& layout) {
    if (label.nA < 0 || label.nA > layout.nmax || label.nB < 0 || label.nB > layout.nmax)
        throw std::invalid_argument("basis_index: photon number out of range");
    if (static_cast<int>(label.spins.size()) != layout.num_qubits())
        throw std::invalid_argument("basis_index: spin count does not match layout");
    int idx = label.nA;
    idx = idx * layout.factors[1].dim + label.nB;
    for (Spin s : label.spins) idx = idx * 2 + static_cast<int>(s);
    return idx;
}

inline Vector basis_state(const BasisLabel& label, const SpaceLayout& layout) {
    Vector v = Vector::Zero(layout.total_dim());
    v(basis_index(label, layout)) = 1.0;
    return v;
}

/// Reduced density matrix over the kept factors (in layout order).
inline Matrix partial_trace(const Matrix& rho, const std::set<int>& keep,
                            const SpaceLayout& layout) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    const int nf = static_cast<int>(layout.factors.size());
    if (rho.rows() != layout.total_dim() || rho.cols() != layout.total_dim())
        throw std::invalid_argument("partial_trace: rho dim does not match layout");
    for (int f : keep)
        if (f < 0 || f >= nf) throw std::invalid_argument("partial_trace: bad factor index");

    std::vector<int> dims(nf);
    for (int i = 0; i < nf; ++i) dims[i] = layout.factors[i].dim;

    int dkeep = 1, dtrace = 1;
    std::vector<int> kept, traced;
    for (int i = 0; i < nf; ++i) {
        if (keep.count(i)) { kept.push_back(i); dkeep *= dims[i]; }
        else { traced.push_back(i); dtrace *= dims[i]; }
    }

    auto full_index = [&](int ik, int it) {
        // decode mixed-radix digits of ik over kept and it over traced factors
        std::vector<int> digit(nf, 0);
        for (int j = static_cast<int>(kept.size()) - 1; j >= 0; --j) {
            digit[kept[j]] = ik % dims[kept[j]];
            ik /= dims[kept[j]];
        }
        for (int j = static_cast<int>(traced.size()) - 1; j >= 0; --j) {
            digit[traced[j]] = it % dims[traced[j]];
            it /= dims[traced[j]];
        }
        int idx = 0;
        for (int i = 0; i < nf; ++i) idx = idx * dims[i] + digit[i];
        return idx;
    };

    Matrix out = Matrix::Zero(dkeep, dkeep);
    for (int r = 0; r < dkeep; ++r)
        for (int c = 0; c < dkeep; ++c)
            for (int t = 0; t < dtrace; ++t)
                out(r, c) += rho(full_index(r, t), full_index(c, t));
    return out;
}

/// F = sqrt(<psi|rho|psi>), clamped to [0,1] against round-off.
inline double fidelity(const Vector& psi, const Matrix& rho) {
    if (rho.rows() != psi.size() || rho.cols() != psi.size())
        throw std::invalid_argument("fidelity: dimension mismatch");
    double v = std::real(psi.dot(rho * psi));
    return std::sqrt(std::clamp(v, 0.0, 1.0));
}

/// Pure-pure fidelity |<psi|phi>|, invariant under global phase.
inline double overlap_fidelity(const Vector& psi, const Vector& phi) {
    if (psi.size() != phi.size())
        throw std::invalid_argument("overlap_fidelity: dimension mismatch");
    return std::min(1.0, std::abs(psi.dot(phi)));
}

/// Total excitation operator a'a + b'b + sum_k sigma+_k sigma-_k.
inline Matrix total_excitation(const SpaceLayout& layout) {
    Matrix a = annihilation(layout.nmax);
    Matrix n = a.adjoint() * a;
    Matrix out = embed(n, 0, layout) + embed(n, 1, layout);
    Matrix sp = pauli(Pauli::plus), sm = pauli(Pauli::minus);
    for (int k = 0; k < layout.num_qubits(); ++k)
        out += embed(Matrix(sp * sm), 2 + k, layout);
    return out;
}

}  // namespace bimodal
