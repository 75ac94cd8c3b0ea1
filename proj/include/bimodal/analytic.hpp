#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "bimodal/linalg.hpp"

namespace bimodal {

/// Requested parameters fall outside a closed-form feasibility window.
/// Carries the requested detuning and the admissible interval.
class FeasibilityError : public std::runtime_error {
public:
    FeasibilityError(const std::string& what_, double requested, double lo, double hi)
        : std::runtime_error(what_), requested_delta(requested), lower(lo), upper(hi) {}
    double requested_delta;
    double lower;
    double upper;
};

namespace detail {
inline FeasibilityError window_error(const std::string& ctx, double delta, double lo, double hi) {
    std::ostringstream os;
    os << ctx << ": Delta = " << delta << " outside the feasibility window ["
       << lo << ", " << hi << "]";
    return FeasibilityError(os.str(), delta, lo, hi);
}

/// Clamp an inverse-trig argument that sits on the domain boundary up to
/// round-off; genuine violations are left alone for the caller to reject.
inline double clamp_unit(double x, double tol = 1e-9) {
    if (x > 1.0 && x < 1.0 + tol) return 1.0;
    if (x < -1.0 && x > -1.0 - tol) return -1.0;
    return x;
}
}  // namespace detail

/// Rabi frequency sqrt(Delta^2 + 2 N Omega^2).
inline double rabi_frequency(double Omega, double Delta, int N = 1) {
    return std::sqrt(Delta * Delta + 2.0 * N * Omega * Omega);
}

/// Amplitudes of |10 down>, |01 down>, |00 up> for one qubit started in
/// |00 up>.
struct SingleQubitAmplitudes {
    Complex c1, c2, c3;
};

inline SingleQubitAmplitudes single_qubit_amplitudes(double Omega, double Delta, int s1,
                                                     double t) {
    const double W = rabi_frequency(Omega, Delta);
    const double W2 = W * W;
    SingleQubitAmplitudes out;
    out.c1 = -(Omega / W2) * (Delta * (1.0 - std::cos(W * t)) + I * W * std::sin(W * t));
    out.c2 = -static_cast<double>(s1) * std::conj(out.c1);
    out.c3 = (Delta * Delta + 2.0 * Omega * Omega * std::cos(W * t)) / W2;
    return out;
}

/// Probability of finding the qubit in spin up, |c3(t)|^2.
inline double p_up_single(double Omega, double Delta, double t) {
    const double W2 = Delta * Delta + 2.0 * Omega * Omega;
    const double num = Delta * Delta + 2.0 * Omega * Omega * std::cos(std::sqrt(W2) * t);
    return num * num / (W2 * W2);
}

/// Largest Delta for which the target P_up is reachable:
/// Delta/Omega <= sqrt(2) sqrt(1+sqrt(P)) / sqrt(1-sqrt(P)).
inline double p_up_window_upper(double Omega, double P_target) {
    const double r = std::sqrt(P_target);
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    return Omega * std::sqrt(2.0) * std::sqrt((1.0 + r) / (1.0 - r));
}

/// Shortest t >= 0 with c3(t) = +sqrt(P_target) (principal branch). Set
/// negative_branch to target c3 = -sqrt(P_target) instead.
inline double time_for_p_up(double Omega, double Delta, double P_target,
                            bool negative_branch = false) {
    if (P_target < 0.0 || P_target > 1.0)
        throw std::invalid_argument("time_for_p_up: P_target must lie in [0,1]");
    const double W = rabi_frequency(Omega, Delta);
    const double W2 = W * W;
    const double root = (negative_branch ? -1.0 : 1.0) * std::sqrt(P_target);
    double arg = detail::clamp_unit((W2 * root - Delta * Delta) / (2.0 * Omega * Omega));
    if (arg < -1.0 || arg > 1.0)
        throw detail::window_error("time_for_p_up", Delta, 0.0, p_up_window_upper(Omega, P_target));
    return std::acos(arg) / W;
}

/// Amplitudes of |10 down down>, |01 down down>, |00 up down>, |00 down up>
/// after the sequential two-qubit protocol (qubit 1 for t1, free delay td,
/// qubit 2 for t2).
struct SequentialAmplitudes {
    Complex alpha, beta, gamma, delta;
};

inline SequentialAmplitudes sequential_amplitudes(double Omega, double Delta, int s1, int s2,
                                                  double t1, double td, double t2) {
    const double W = rabi_frequency(Omega, Delta);
    const double W2 = W * W;
    auto amp1 = single_qubit_amplitudes(Omega, Delta, s1, t1);
    auto amp2 = single_qubit_amplitudes(Omega, Delta, s2, t2);
    const Complex a2 = (Omega * Omega + (Omega * Omega + Delta * Delta) * std::cos(W * t2) -
                        I * Delta * W * std::sin(W * t2)) / W2;
    const Complex b2 = -static_cast<double>(s2) * (Omega * Omega / W2) * (1.0 - std::cos(W * t2));
    const Complex em = std::exp(-I * Delta * td);
    const Complex ep = std::exp(I * Delta * td);
    SequentialAmplitudes out;
    out.alpha = amp1.c1 * a2 * em + amp1.c2 * b2 * ep;
    out.beta = amp1.c1 * b2 * em + amp1.c2 * std::conj(a2) * ep;
    out.gamma = amp1.c3;  // independent of td and t2
    out.delta = amp1.c1 * amp2.c1 * em + amp1.c2 * amp2.c2 * ep;
    return out;
}

/// P_up of qubit 2 for the stroboscopic delay td = j pi / (2 Delta):
/// 2 { |c1(t1)|^2 |c1(t2)|^2 + (-1)^j s1 s2 Re[c1^2(t1) c1^2(t2)] }.
inline double p_up_second(double Omega, double Delta, int s1, int s2, double t1, double t2,
                          int j) {
    if (j < 0) throw std::invalid_argument("p_up_second: j must be a non-negative integer");
    if (Delta <= 0.0) throw std::invalid_argument("p_up_second: Delta must be positive");
    const Complex c1a = single_qubit_amplitudes(Omega, Delta, s1, t1).c1;
    const Complex c1b = single_qubit_amplitudes(Omega, Delta, s2, t2).c1;
    const double parity = (j % 2 == 0) ? 1.0 : -1.0;
    return 2.0 * (std::norm(c1a) * std::norm(c1b) +
                  parity * s1 * s2 * std::real(c1a * c1a * c1b * c1b));
}

/// Mode and qubit amplitudes of the simultaneous N-qubit families: the state
/// is aN|10>|down..> + bN|01>|down..> + sum_k cN[k] |00> sigma+_k |down..>.
struct SimultaneousAmplitudes {
    Complex aN, bN;
    std::vector<Complex> cN;
};

/// Vacuum-seeded simultaneous interaction: all coupling signs +1, qubit 1
/// starts in spin up.
inline SimultaneousAmplitudes simultaneous_vacuum_amplitudes(int N, double Omega, double Delta,
                                                             double t) {
    if (N < 1) throw std::invalid_argument("simultaneous_vacuum_amplitudes: N >= 1 required");
    const double W = rabi_frequency(Omega, Delta, N);
    const double W2 = W * W;
    const double co = std::cos(W * t), si = std::sin(W * t);
    SimultaneousAmplitudes out;
    out.aN = -(Omega / W2) * (Delta * (1.0 - co) + I * W * si);
    out.bN = (Omega / W2) * (Delta * (1.0 - co) - I * W * si);
    const Complex c1 = 1.0 - (2.0 * Omega * Omega / W2) * (1.0 - co);
    out.cN.assign(N, c1 - 1.0);
    out.cN[0] = c1;
    return out;
}

enum class WKind { hybrid, prototype };

/// The only qubit counts for which the vacuum-seeded scheme reaches equal
/// populations: N = 2 (hybrid W4) and N = 4 (prototype W4).
inline int w_feasible_count(WKind kind) {
    return kind == WKind::hybrid ? 2 : 4;
}

/// Modes-state parameter p after the auxiliary-qubit priming step:
/// p = -(1/2)(Delta0/Omega + i sqrt(2 - Delta0^2/Omega^2)); |p|^2 = 1/2 for
/// 0 <= Delta0 <= sqrt(2) Omega.
struct BellPrimeParameter {
    Complex p;
    double Delta0;
};

inline BellPrimeParameter bell_prime_parameter(double Omega, double Delta0) {
    const double hi = std::sqrt(2.0) * Omega;
    if (Delta0 < 0.0 || Delta0 > hi)
        throw detail::window_error("bell_prime_parameter (auxiliary transfer incomplete)",
                                   Delta0, 0.0, hi);
    const double x = Delta0 / Omega;
    return {-0.5 * Complex(x, std::sqrt(std::max(0.0, 2.0 - x * x))), Delta0};
}

/// Simultaneous interaction seeded by the primed modes state
/// p|10> - s0 p*|01> (s0 = -1); all qubit amplitudes are identical.
inline SimultaneousAmplitudes bell_primed_amplitudes(int N, double Omega, double Delta,
                                                     Complex p, double t) {
    if (N < 1) throw std::invalid_argument("bell_primed_amplitudes: N >= 1 required");
    if (std::abs(std::norm(p) - 0.5) > 1e-9)
        throw std::invalid_argument("bell_primed_amplitudes: |p|^2 must equal 1/2");
    const double W = rabi_frequency(Omega, Delta, N);
    const double W2 = W * W;
    const double co = std::cos(W * t), si = std::sin(W * t);
    const Complex pc = std::conj(p);
    const double NO2 = N * Omega * Omega;
    SimultaneousAmplitudes out;
    out.aN = ((p - pc) * NO2 + (p * Delta * Delta + (p + pc) * NO2) * co -
              I * p * Delta * W * si) / W2;
    out.bN = ((pc - p) * NO2 + (pc * Delta * Delta + (p + pc) * NO2) * co +
              I * pc * Delta * W * si) / W2;
    const Complex ck = (Omega / W2) * ((pc - p) * Delta * (1.0 - co) - I * (p + pc) * W * si);
    out.cN.assign(N, ck);
    return out;
}

enum class PKind { real_p, imaginary_p };

/// Shortest interaction time of the Bell-primed scheme reaching the target
/// per-qubit population (1/(N+2) hybrid, 1/N prototype), with the applicable
/// detuning-window check.
inline double time_for_w(int N, WKind kind, PKind p_kind, double Omega, double Delta) {
    if (N < 1) throw std::invalid_argument("time_for_w: N >= 1 required");
    const double P = (kind == WKind::hybrid) ? 1.0 / (N + 2) : 1.0 / N;
    const double rootP = std::sqrt(P);
    const double W = rabi_frequency(Omega, Delta, N);
    if (p_kind == PKind::real_p) {
        const double hi = Omega * std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 / P - N));
        if (Delta < 0.0 || Delta > hi + 1e-12)
            throw detail::window_error("time_for_w (p real)", Delta, 0.0, hi);
        const double arg = detail::clamp_unit(W * rootP / (std::sqrt(2.0) * Omega));
        return std::asin(arg) / W;
    }
    const double s = std::sqrt(std::max(0.0, 1.0 - N * P));
    const double lo = Omega * std::sqrt(2.0) * (1.0 - s) / rootP;
    const double hi = Omega * std::sqrt(2.0) * (1.0 + s) / rootP;
    if (Delta < lo - 1e-12 || Delta > hi + 1e-12)
        throw detail::window_error("time_for_w (p imaginary)", Delta, lo, hi);
    const double sq = std::sqrt(2.0) * Omega * Delta;
    const double arg = detail::clamp_unit((sq - W * W * rootP) / sq);
    return std::acos(arg) / W;
}

}  // namespace bimodal
