#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace bimodal {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex I{0.0, 1.0};

/// Kronecker product, row-major index convention:
/// entry ((i*Br+k),(j*Bc+l)) = A(i,j)*B(k,l).
inline Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

/// exp(A) for a square dense matrix (scaling-and-squaring Pade).
inline Matrix matrix_exponential(const Matrix& A) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("matrix_exponential: matrix must be square");
    return A.exp();
}

/// exp(-i*H*t)*psi for Hermitian H, via eigendecomposition. Exact for any t,
/// preferred over the series when ||H*t|| is large.
inline Vector evolve_constant(const Matrix& H, const Vector& psi0, double t) {
    if (H.rows() != H.cols() || H.rows() != psi0.size())
        throw std::invalid_argument("evolve_constant: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    Vector phase = (-I * t * es.eigenvalues().cast<Complex>().array()).exp();
    return es.eigenvectors() * (phase.asDiagonal() * (es.eigenvectors().adjoint() * psi0));
}

using TimeHamiltonian = std::function<Matrix(double)>;

/// Classical fixed-step RK4 for i d|psi>/dt = H(t)|psi>.
inline Vector evolve_state(const TimeHamiltonian& H, const Vector& psi0, double T, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("evolve_state: dt must be positive");
    const Eigen::Index d = psi0.size();
    auto rhs = [&](double t, const Vector& psi) -> Vector {
        Matrix Ht = H(t);
        if (Ht.rows() != d || Ht.cols() != d)
            throw std::invalid_argument("evolve_state: H(t) dimension mismatch");
        return -I * (Ht * psi);
    };
    Vector psi = psi0;
    long nsteps = static_cast<long>(std::ceil(T / dt - 1e-12));
    if (nsteps < 1) nsteps = 1;
    const double h = T / static_cast<double>(nsteps);
    double t = 0.0;
    for (long n = 0; n < nsteps; ++n) {
        Vector k1 = rhs(t, psi);
        Vector k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1);
        Vector k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2);
        Vector k4 = rhs(t + h, psi + h * k3);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return psi;
}

using Superoperator = std::function<Matrix(const Matrix&)>;

/// Fixed-step RK4 for rho' = L(rho). The state is re-symmetrized after every
/// step to suppress round-off drift of Hermiticity.
inline Matrix evolve_density(const Superoperator& L, const Matrix& rho0, double T, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("evolve_density: dt must be positive");
    if (rho0.rows() != rho0.cols())
        throw std::invalid_argument("evolve_density: rho must be square");
    Matrix rho = rho0;
    long nsteps = static_cast<long>(std::ceil(T / dt - 1e-12));
    if (nsteps < 1) nsteps = 1;
    const double h = T / static_cast<double>(nsteps);
    for (long n = 0; n < nsteps; ++n) {
        Matrix k1 = L(rho);
        Matrix k2 = L(rho + 0.5 * h * k1);
        Matrix k3 = L(rho + 0.5 * h * k2);
        Matrix k4 = L(rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint().eval());
    }
    return rho;
}

/// Default number of fixed steps when a caller gives no dt policy.
inline constexpr long kDefaultSteps = 20000;

inline double default_dt(double T) { return T / static_cast<double>(kDefaultSteps); }

}  // namespace bimodal
