#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bimodal {

/// Dimensionless atom position inside a cavity with mirrors at +-1/2, tagged
/// with the standing-wave mode index it was solved for.
struct ScaledPosition {
    double r_tilde = 0.0;
    int n = 1;
};

/// Standing-wave coupling profile sqrt(n pi) sin(n pi (r + 1/2)), common
/// dipole prefactor dropped.
inline double scaled_coupling(int n, double r_tilde) {
    if (n < 1) throw std::invalid_argument("scaled_coupling: n >= 1 required");
    if (std::abs(r_tilde) > 0.5)
        throw std::invalid_argument("scaled_coupling: |r| <= 1/2 required");
    const double k = n * M_PI;
    return std::sqrt(k) * std::sin(k * (r_tilde + 0.5));
}

enum class SignChoice { equal, opposite };

/// All positions where the couplings to modes n and n+1 match in magnitude
/// with the requested relative sign and neither coupling vanishes.
/// Bracketing on a 1e-4 grid, then bisection to machine precision.
inline std::vector<ScaledPosition> solve_position(int n, SignChoice sign) {
    if (n < 1) throw std::invalid_argument("solve_position: n >= 1 required");
    const double s = (sign == SignChoice::equal) ? 1.0 : -1.0;
    auto f = [&](double r) { return scaled_coupling(n, r) - s * scaled_coupling(n + 1, r); };

    const double step = 1e-4;
    const double lo = -0.5 + step, hi = 0.5 - step;
    std::vector<ScaledPosition> roots;
    double prev_r = lo, prev_f = f(lo);
    for (double r = lo + step; r <= hi + 0.5 * step; r += step) {
        double fr = f(r);
        if (prev_f == 0.0 || prev_f * fr < 0.0) {
            double a = prev_r, b = r, fa = prev_f;
            if (fa == 0.0) {
                b = a;
            } else {
                while (true) {
                    double m = 0.5 * (a + b), fm = f(m);
                    if (fm == 0.0 || m == a || m == b) { a = b = m; break; }
                    if (fa * fm < 0.0) b = m;
                    else { a = m; fa = fm; }
                }
            }
            double root = 0.5 * (a + b);
            if (std::abs(scaled_coupling(n, root)) > 1e-6 &&
                (roots.empty() || root - roots.back().r_tilde > 1e-10))
                roots.push_back({root, n});
        }
        prev_r = r;
        prev_f = fr;
    }
    return roots;
}

/// The symmetric pair (+r, -r): equal coupling magnitudes to both modes,
/// opposite sign on mode n+1 between the two sites.
inline std::pair<ScaledPosition, ScaledPosition> two_atom_positions(int n) {
    auto plus = solve_position(n, SignChoice::opposite);
    auto minus = solve_position(n, SignChoice::equal);
    for (const auto& p : plus) {
        if (p.r_tilde <= 0.0) continue;
        for (const auto& m : minus)
            if (std::abs(m.r_tilde + p.r_tilde) < 1e-9) return {p, m};
    }
    throw std::runtime_error("two_atom_positions: no symmetric pair found");
}

}  // namespace bimodal
