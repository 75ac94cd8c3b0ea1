#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "bimodal/opensys.hpp"
#include "bimodal/rng.hpp"

namespace bimodal {

/// Gaussian time-of-flight jitter: standard deviation quoted as a fraction
/// of 1/lambda, fixed repetition count, 64-bit seed.
struct JitterConfig {
    double sigma_fraction = 0.0;
    int reps = 3000;
    std::uint64_t seed = 0;

    void validate() const {
        if (sigma_fraction < 0.0) throw std::invalid_argument("JitterConfig: sigma >= 0");
        if (reps < 1) throw std::invalid_argument("JitterConfig: reps >= 1");
    }
};

/// Per-atom entry offsets around the ideal start, plus the designed transit
/// duration: atom k is present on [delta_k, transit + delta_k].
struct EntrySchedule {
    std::vector<double> deltas;
    double transit = 0.0;
};

/// N independent N(0, (sigma_fraction/lambda)^2) deviates from the
/// counter-based stream keyed by (seed, sample_index). Bitwise reproducible
/// and independent of evaluation order across samples.
inline EntrySchedule sample_entry_times(const JitterConfig& cfg, int N,
                                        std::uint64_t sample_index, double lambda,
                                        double transit) {
    cfg.validate();
    EntrySchedule s;
    s.transit = transit;
    s.deltas.resize(N, 0.0);
    if (cfg.sigma_fraction > 0.0) {
        CounterRng rng(cfg.seed, sample_index);
        const double sd = cfg.sigma_fraction / lambda;
        for (int k = 0; k < N; ++k) s.deltas[k] = sd * rng.next_normal();
    }
    return s;
}

namespace detail {

/// Effective Hamiltonian restricted to the present-qubit subset: absent
/// qubits contribute no pair terms.
inline Matrix effective_hamiltonian_subset(const EffectiveParams& p, unsigned mask) {
    const int N = p.N();
    SpaceLayout qubits;
    qubits.nmax = 1;
    for (int k = 1; k <= N; ++k) qubits.factors.push_back({"q" + std::to_string(k), 2});
    Matrix H = Matrix::Zero(1 << N, 1 << N);
    for (int j = 0; j < N; ++j) {
        if (!(mask & (1u << j))) continue;
        for (int k = 0; k < N; ++k) {
            if (j == k || !(mask & (1u << k))) continue;
            double c = 1.0 - static_cast<double>(p.signs[j] * p.signs[k]);
            if (c == 0.0) continue;
            H += -p.lambda * c *
                 (embed(pauli(Pauli::plus), j, qubits) * embed(pauli(Pauli::minus), k, qubits));
        }
    }
    return H;
}

/// Piecewise-constant propagation of the jittered dispersive master
/// equation. Decomposes the vectorized generator once per present-qubit
/// subset (column-major vectorization, L = I (x) K + conj(K) (x) I
/// + sum conj(c) (x) c) and reuses it for every sample and duration.
/// Falls back to RK4 if a decomposition fails to reconstruct the generator.
class JitterEngine {
public:
    JitterEngine(const EffectiveParams& eff, double gamma) : eff_(eff), gamma_(gamma) {
        const int N = eff_.N();
        SpaceLayout qubits;
        qubits.nmax = 1;
        for (int k = 1; k <= N; ++k) qubits.factors.push_back({"q" + std::to_string(k), 2});
        if (gamma_ > 0.0)
            for (int k = 0; k < N; ++k)
                channels_.push_back(std::sqrt(gamma_) * embed(pauli(Pauli::minus), k, qubits));
    }

    int N() const { return eff_.N(); }
    double gamma() const { return gamma_; }

    /// rho after the full jittered window, starting from |psi0><psi0| at the
    /// window start. Pure-state fast path when gamma == 0.
    Matrix run(const Vector& psi0, const EntrySchedule& schedule, bool common_stop = false) {
        const int N = eff_.N();
        struct Event { double t; int qubit; bool entry; };
        std::vector<Event> events;
        for (int k = 0; k < N; ++k) {
            double exit = common_stop ? schedule.transit : schedule.transit + schedule.deltas[k];
            events.push_back({schedule.deltas[k], k, true});
            events.push_back({std::max(exit, schedule.deltas[k]), k, false});
        }
        std::sort(events.begin(), events.end(),
                  [](const Event& a, const Event& b) { return a.t < b.t; });
        double t = std::min(0.0, events.front().t);

        if (gamma_ == 0.0) {
            Vector psi = psi0;
            unsigned mask = 0;
            for (const auto& ev : events) {
                if (ev.t > t) psi = pure_cache(mask).propagate(psi, ev.t - t);
                t = std::max(t, ev.t);
                if (ev.entry) mask |= 1u << ev.qubit;
                else mask &= ~(1u << ev.qubit);
            }
            return psi * psi.adjoint();
        }

        Matrix rho = psi0 * psi0.adjoint();
        unsigned mask = 0;
        for (const auto& ev : events) {
            if (ev.t > t) rho = lindblad_cache(mask).propagate(rho, ev.t - t, *this, mask);
            t = std::max(t, ev.t);
            if (ev.entry) mask |= 1u << ev.qubit;
            else mask &= ~(1u << ev.qubit);
        }
        return 0.5 * (rho + rho.adjoint().eval());
    }

private:
    struct PureDecomp {
        Eigen::VectorXd evals;
        Matrix evecs;
        Vector propagate(const Vector& psi, double tau) const {
            Vector phase = (-I * tau * evals.cast<Complex>().array()).exp();
            return evecs * (phase.asDiagonal() * (evecs.adjoint() * psi));
        }
    };

    struct LindbladDecomp {
        Vector evals;
        Matrix evecs, evecs_inv;
        Matrix hamiltonian;  // kept for the RK4 fallback
        bool usable = false;

        Matrix propagate(const Matrix& rho, double tau, const JitterEngine& eng,
                         unsigned mask) const {
            const Eigen::Index d = rho.rows();
            if (usable) {
                Vector v = Eigen::Map<const Vector>(rho.data(), d * d);
                Vector w = evecs_inv * v;
                w.array() *= (tau * evals.array()).exp();
                Vector out = evecs * w;
                return Eigen::Map<const Matrix>(out.data(), d, d);
            }
            Superoperator L = lindblad_generator_qubits(hamiltonian, eng.gamma_, eng.N());
            long steps = std::max<long>(200, static_cast<long>(tau * 4000.0));
            return evolve_density(L, rho, tau, tau / static_cast<double>(steps));
        }
    };

    const PureDecomp& pure_cache(unsigned mask) {
        auto it = pure_.find(mask);
        if (it != pure_.end()) return it->second;
        Eigen::SelfAdjointEigenSolver<Matrix> es(effective_hamiltonian_subset(eff_, mask));
        return pure_.emplace(mask, PureDecomp{es.eigenvalues(), es.eigenvectors()})
            .first->second;
    }

    const LindbladDecomp& lindblad_cache(unsigned mask) {
        auto it = lind_.find(mask);
        if (it != lind_.end()) return it->second;
        Matrix H = effective_hamiltonian_subset(eff_, mask);
        const Eigen::Index d = H.rows();
        Matrix K = -I * H;
        for (const auto& c : channels_) K -= 0.5 * (c.adjoint() * c);
        Matrix Id = Matrix::Identity(d, d);
        Matrix L = kron(Id, K) + kron(K.conjugate(), Id);
        for (const auto& c : channels_) L += kron(c.conjugate(), c);
        LindbladDecomp dec;
        dec.hamiltonian = H;
        Eigen::ComplexEigenSolver<Matrix> es(L);
        if (es.info() == Eigen::Success) {
            dec.evals = es.eigenvalues();
            dec.evecs = es.eigenvectors();
            Eigen::PartialPivLU<Matrix> lu(dec.evecs);
            dec.evecs_inv = lu.solve(Matrix::Identity(d * d, d * d));
            double resid = (dec.evecs * dec.evals.asDiagonal() * dec.evecs_inv - L).norm() /
                           std::max(1.0, L.norm());
            dec.usable = resid < 1e-10;
        }
        return lind_.emplace(mask, std::move(dec)).first->second;
    }

    EffectiveParams eff_;
    double gamma_;
    std::vector<Matrix> channels_;
    std::map<unsigned, PureDecomp> pure_;
    std::map<unsigned, LindbladDecomp> lind_;
};

struct RunningMean {
    // Kahan-compensated accumulation; results do not depend on partial sums
    double sum = 0.0, comp = 0.0, sumsq = 0.0, compsq = 0.0;
    long n = 0;
    void add(double x) {
        double y = x - comp, t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        double y2 = x * x - compsq, t2 = sumsq + y2;
        compsq = (t2 - sumsq) - y2;
        sumsq = t2;
        ++n;
    }
    double mean() const { return sum / n; }
    double stderror() const {
        if (n < 2) return 0.0;
        double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1));
        return std::sqrt(var / n);
    }
};

}  // namespace detail

/// One jittered realization of a dispersive protocol with optional qubit
/// decay: piecewise evolution over the entry/exit breakpoints, decay active
/// over the whole simulated window. Returns rho at the last exit.
inline Matrix evolve_with_jitter(const ProtocolSpec& spec, const EntrySchedule& schedule,
                                 double gamma, bool common_stop = false) {
    if (!spec.is_dispersive())
        throw std::invalid_argument("evolve_with_jitter: protocol must be dispersive");
    detail::JitterEngine engine(spec.eff, gamma);
    return engine.run(initial_state(spec), schedule, common_stop);
}

/// Mean fidelity (and standard error) per jitter level for one dispersive
/// protocol, gamma = 0. Deterministic for fixed (seed, grid, reps).
inline SweepResult jitter_sweep(const ProtocolSpec& spec, const std::vector<double>& sigma_grid,
                                const JitterConfig& cfg) {
    if (!spec.is_dispersive())
        throw std::invalid_argument("jitter_sweep: protocol must be dispersive");
    cfg.validate();
    Vector target = ideal_generated_state(spec);
    Vector psi0 = initial_state(spec);
    SweepResult out;
    out.columns = {"sigma_pct", "protocol", "mean_fidelity", "stderr", "reps", "seed"};
    detail::JitterEngine engine(spec.eff, 0.0);
    for (double sigma : sigma_grid) {
        detail::RunningMean acc;
        JitterConfig local = cfg;
        local.sigma_fraction = sigma;
        for (int r = 0; r < cfg.reps; ++r) {
            auto schedule = sample_entry_times(local, spec.N, static_cast<std::uint64_t>(r),
                                               spec.eff.lambda, spec.ideal_time);
            Matrix rho = engine.run(psi0, schedule);
            acc.add(fidelity(target, rho));
        }
        out.add_row({sigma * 100.0, spec.name, acc.mean(), acc.stderror(),
                     static_cast<long long>(cfg.reps), static_cast<long long>(cfg.seed)});
    }
    return out;
}

}  // namespace bimodal
