#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "bimodal/imperfections.hpp"

namespace bimodal {

/// Four-qubit Bell-type witness: local-realistic bound 2, maximal quantum
/// value 4 on the linear cluster state.
inline Matrix sasa_operator() {
    const Matrix sx = pauli(Pauli::x), sy = pauli(Pauli::y), sz = pauli(Pauli::z);
    const Matrix id = Matrix::Identity(2, 2);
    auto s4 = [](const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
        return kron(kron(a, b), kron(c, d));
    };
    return s4(sx, id, sx, sz) + s4(sx, id, sy, sy) + s4(sz, sy, sy, sz) - s4(sz, sy, sx, sy);
}

inline constexpr double kSasaLocalBound = 2.0;

/// Expectation of the witness on the generated cluster state after the fixed
/// local frame change mapping it onto the witness's reference form.
inline double sasa_expectation(const Matrix& rho) {
    if (rho.rows() != 16 || rho.cols() != 16)
        throw std::invalid_argument("sasa_expectation: rho must be 16x16");
    static const Matrix B = sasa_operator();
    static const Matrix T = canonicalizer_matrix("sasa-frame");
    return (B * (T * rho * T.adjoint())).trace().real();
}

/// Witness mean over jittered, decaying cluster generations for each
/// (gamma/lambda, jitter) pair, plus the gamma*/lambda where the zero-jitter
/// curve crosses the local bound (linear interpolation; NaN if not bracketed).
inline SweepResult sasa_sweep(const std::vector<double>& gamma_grid,
                              const std::vector<double>& jitter_fractions,
                              const JitterConfig& cfg, double lambda = 1.0) {
    cfg.validate();
    for (size_t i = 0; i < gamma_grid.size(); ++i)
        if (gamma_grid[i] < 0.0 || (i > 0 && gamma_grid[i] <= gamma_grid[i - 1]))
            throw std::invalid_argument("sasa_sweep: gamma grid must be non-negative, increasing");
    for (double j : jitter_fractions)
        if (j < 0.0) throw std::invalid_argument("sasa_sweep: jitter levels must be >= 0");

    ProtocolSpec spec = make_protocol("cluster4", 0, std::sqrt(2.0), 1.0, lambda);
    Vector psi0 = initial_state(spec);

    std::vector<double> levels = jitter_fractions;
    bool had_zero = false;
    for (double j : levels) had_zero |= (j == 0.0);
    if (!had_zero) levels.insert(levels.begin(), 0.0);  // threshold needs the 0% curve

    std::vector<std::vector<double>> mean_B(levels.size()), err_B(levels.size());
    for (auto& v : mean_B) v.resize(gamma_grid.size());
    for (auto& v : err_B) v.resize(gamma_grid.size());

    for (size_t g = 0; g < gamma_grid.size(); ++g) {
        detail::JitterEngine engine(spec.eff, gamma_grid[g] * lambda);
        for (size_t j = 0; j < levels.size(); ++j) {
            if (levels[j] == 0.0) {
                EntrySchedule exact{std::vector<double>(4, 0.0), spec.ideal_time};
                mean_B[j][g] = sasa_expectation(engine.run(psi0, exact));
                err_B[j][g] = 0.0;
                continue;
            }
            JitterConfig local = cfg;
            local.sigma_fraction = levels[j];
            detail::RunningMean acc;
            for (int r = 0; r < cfg.reps; ++r) {
                auto sched = sample_entry_times(local, 4, static_cast<std::uint64_t>(r), lambda,
                                                spec.ideal_time);
                acc.add(sasa_expectation(engine.run(psi0, sched)));
            }
            mean_B[j][g] = acc.mean();
            err_B[j][g] = acc.stderror();
        }
    }

    double threshold = std::numeric_limits<double>::quiet_NaN();
    for (size_t g = 0; g + 1 < gamma_grid.size(); ++g) {
        double a = mean_B[0][g], b = mean_B[0][g + 1];
        if (a >= kSasaLocalBound && b < kSasaLocalBound) {
            threshold = gamma_grid[g] + (a - kSasaLocalBound) / (a - b) *
                                            (gamma_grid[g + 1] - gamma_grid[g]);
            break;
        }
    }

    SweepResult out;
    out.columns = {"gamma_over_lambda", "jitter_pct", "mean_B",
                   "stderr", "reps", "seed", "threshold_gamma_star"};
    for (size_t j = 0; j < levels.size(); ++j) {
        if (levels[j] == 0.0 && !had_zero) continue;
        long long reps = (levels[j] == 0.0) ? 1 : cfg.reps;
        for (size_t g = 0; g < gamma_grid.size(); ++g)
            out.add_row({gamma_grid[g], levels[j] * 100.0, mean_B[j][g], err_B[j][g], reps,
                         static_cast<long long>(cfg.seed), threshold});
    }
    out.header["threshold_gamma_star"] = format_cell(Cell{threshold});
    return out;
}

}  // namespace bimodal
