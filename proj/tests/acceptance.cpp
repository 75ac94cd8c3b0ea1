// End-to-end acceptance checks: one pass/fail line per criterion, nonzero
// exit if any fail. Runs from the public library API only.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bimodal/geometry.hpp"
#include "bimodal/nonlocality.hpp"
#include "bimodal/oracles.hpp"

using namespace bimodal;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double now_s() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string fmt(const char* pat, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pat, a, b, c);
    return buf;
}

void c01_oracles() {
    double start = now_s();
    bool ok = true;
    double worst = 0.0;
    for (const auto& fam : oracle_families()) {
        auto rep = run_oracle(fam, 100);
        ok = ok && rep.pass;
        if (fam != "dispersive-validity") worst = std::max(worst, rep.max_deviation);
    }
    double elapsed = now_s() - start;
    ok = ok && elapsed < 60.0;
    report(1, ok, fmt("closed forms vs propagators: worst amplitude dev %.2e in %.1f s", worst,
                      elapsed));
}

void c02_bell() {
    auto spec = make_protocol("bell-modes");
    auto run = run_ideal(spec);
    Vector psi = run.state;
    Matrix rho_q = partial_trace(Matrix(psi * psi.adjoint()), {2}, spec.layout);
    double purity = std::real((rho_q * rho_q).trace());
    bool ok = std::abs(run.fidelity - 1.0) < 1e-10 && std::abs(purity - 1.0) < 1e-10;
    report(2, ok, fmt("modes Bell state: fidelity %.12f, reduced-qubit purity %.12f",
                      run.fidelity, purity));
}

void c03_hybrid_w() {
    bool ok = true;
    double dev = 0.0;
    for (double P : {1.0 / 3.0, 0.5}) {
        double t = time_for_p_up(1.0, std::sqrt(2.0), P);
        dev = std::max(dev, std::abs(p_up_single(1.0, std::sqrt(2.0), t) - P));
    }
    ok = ok && dev < 1e-10;
    double w3 = p_up_window_upper(1.0, 1.0 / 3.0), wt = p_up_window_upper(1.0, 0.5);
    ok = ok && std::abs(w3 - (1.0 + std::sqrt(3.0))) < 1e-12;
    ok = ok && std::abs(wt - (2.0 + std::sqrt(2.0))) < 1e-12;
    for (double P : {1.0 / 3.0, 0.5}) {
        double hi = p_up_window_upper(1.0, P);
        try {
            time_for_p_up(1.0, hi, P);
        } catch (const FeasibilityError&) {
            ok = false;
        }
        try {
            time_for_p_up(1.0, hi + 1e-6, P);
            ok = false;
        } catch (const FeasibilityError&) {
        }
    }
    report(3, ok, fmt("W3 / WT population targets hit to %.2e; windows (1+sqrt3), (2+sqrt2) "
                      "enforced", dev));
}

void c04_simultaneous_constraint() {
    auto mismatch = [](int N, bool hybrid) {
        const double P = hybrid ? 1.0 / (N + 2) : 1.0 / N;
        double best = 1.0;
        for (double Delta = 0.0; Delta <= 3.0; Delta += 0.1) {
            const double W2 = Delta * Delta + 2.0 * N;
            for (double x = 0.0; x <= 2.0; x += 1e-5) {
                const double si2 = 1.0 - (1.0 - x) * (1.0 - x);
                const double c1 = 1.0 - (2.0 / W2) * x;
                const double pa = (Delta * Delta * x * x + W2 * si2) / (W2 * W2);
                double dev = std::abs(c1 * c1 - P);
                dev = std::max(dev, std::abs((c1 - 1.0) * (c1 - 1.0) - P));
                dev = std::max(dev, hybrid ? std::abs(pa - P) : pa);
                best = std::min(best, dev);
            }
        }
        return best;
    };
    bool ok = true;
    for (int N = 2; N <= 10; ++N) {
        double h = mismatch(N, true), p = mismatch(N, false);
        ok = ok && ((N == 2) ? h < 1e-4 : h > 1e-3);
        ok = ok && ((N == 4) ? p < 1e-4 : p > 1e-3);
    }
    auto amp = simultaneous_vacuum_amplitudes(6, 1.0, 1.2, 0.8);
    ok = ok && std::abs(amp.cN[1] - (amp.cN[0] - 1.0)) < 1e-14;
    report(4, ok, "vacuum-seeded equal populations only at N=2 (hybrid) and N=4 (prototype), "
                  "grid scan N=2..10");
}

void c05_bell_primed_w() {
    bool ok = true;
    double prev = 1e100, dev = 0.0;
    for (int N = 2; N <= 6; ++N) {
        auto spec = make_protocol("wN-prototype", N);
        Vector psi = ideal_generated_state(spec);
        std::vector<Spin> down(N, Spin::down);
        for (int k = 0; k < N; ++k) {
            auto spins = down;
            spins[k] = Spin::up;
            dev = std::max(dev, std::abs(std::norm(psi(basis_index({0, 0, spins}, spec.layout))) -
                                         1.0 / N));
        }
        ok = ok && spec.ideal_time < prev;
        prev = spec.ideal_time;
    }
    ok = ok && dev < 1e-10;
    report(5, ok, fmt("primed W_N for N=2..6: population dev %.2e, times strictly decreasing",
                      dev));
}

void c06_ghz() {
    Vector psi = ghz_state_vector(1.0, ghz_ideal_time(1.0));
    Vector ref = target_state("ghz3");
    Complex phase = ref.dot(psi);
    phase /= std::abs(phase);
    double dev = (psi - phase * ref).cwiseAbs().maxCoeff();
    Vector canon = canonicalize(psi, "ghz-vu");
    double dev_canon = (canon - target_state("ghz-canonical")).cwiseAbs().maxCoeff();
    bool ok = dev < 1e-10 && dev_canon < 1e-12;
    report(6, ok, fmt("GHZ endpoint dev %.2e; VU image dev %.2e", dev, dev_canon));
}

void c07_cluster() {
    Vector psi = cluster_evolution(1.0, cluster_ideal_time(1.0));
    double dev = (psi - target_state("cluster4")).cwiseAbs().maxCoeff();
    double dev_T = (canonicalize(psi, "sasa-frame") - target_state("phi4")).cwiseAbs().maxCoeff();
    double B = sasa_expectation(Matrix(psi * psi.adjoint()));
    bool ok = dev < 1e-10 && dev_T < 1e-10 && std::abs(B - 4.0) < 1e-10;
    report(7, ok, fmt("cluster endpoint dev %.2e; frame image dev %.2e; <B> = %.12f", dev,
                      dev_T, B));
}

void c08_dispersive_validity() {
    auto rep = run_oracle("dispersive-validity", 1);
    // the discarded-coupling reading lambda = Delta^2/Omega must not work
    const double bad_lambda = 400.0;
    const double t_bad = cluster_ideal_time(bad_lambda);
    SpaceLayout layout = bimodal_layout(4);
    Matrix H = rotating_frame_hamiltonian({1.0, 20.0, {-1, -1, 1, 1}, 1}, layout);
    Vector psi0 = Vector::Zero(layout.total_dim());
    psi0(basis_index({0, 0, {Spin::up, Spin::down, Spin::up, Spin::down}}, layout)) = 1.0;
    Vector psi = evolve_constant(H, psi0, t_bad);
    Vector tgt = Vector::Zero(layout.total_dim());
    tgt.head(16) = target_state("cluster4");
    double f_bad = std::abs(tgt.dot(psi));
    bool ok = rep.pass && f_bad < 0.98;
    report(8, ok, fmt("full-model cluster fidelity floor met (infidelity %.4f at "
                      "Delta/Omega = 20, halves by 40); alternative coupling reading gives "
                      "%.3f", rep.max_deviation, f_bad));
}

void c09_lindblad() {
    const double gamma = 0.8, t = 1.7;
    auto L1 = lindblad_generator_qubits(Matrix::Zero(2, 2), gamma, 1);
    Matrix rho0 = Matrix::Zero(2, 2);
    rho0(0, 0) = 1.0;
    Matrix rho = evolve_density(L1, rho0, t, t / 20000.0);
    double dev_exp = std::abs(rho(0, 0).real() - std::exp(-gamma * t));
    bool ok = dev_exp < 1e-6 && std::abs(rho.trace().real() - 1.0) < 1e-9;

    // full bimodal channel set: trace and positivity along the trajectory
    auto spec = make_protocol("bell-modes");
    auto L = lindblad_generator(rotating_frame_hamiltonian(spec.params, spec.layout),
                                {0.2, 0.2, 0.2}, spec.layout);
    Vector psi0 = initial_state(spec);
    Matrix r = psi0 * psi0.adjoint();
    double min_eig = 1.0, max_tr_dev = 0.0;
    for (int seg = 0; seg < 10; ++seg) {
        r = evolve_density(L, r, spec.ideal_time / 10.0, spec.ideal_time / 20000.0);
        max_tr_dev = std::max(max_tr_dev, std::abs(r.trace().real() - 1.0));
        Eigen::SelfAdjointEigenSolver<Matrix> es(r);
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    ok = ok && max_tr_dev < 1e-9 && min_eig > -1e-8;
    report(9, ok, fmt("decay law dev %.2e; trace dev %.2e; min eigenvalue %.2e", dev_exp,
                      max_tr_dev, min_eig));
}

void c10_dissipation_figure() {
    const std::vector<std::string> protos = {"bell-modes", "w3-hybrid", "wt-hybrid"};
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(0.02 * i);
    const long steps = 8000;
    // fid[scenario][protocol][chi]
    std::map<std::string, std::map<std::string, std::vector<double>>> fid;
    for (const auto& sc : standard_scenarios())
        for (const auto& name : protos) {
            auto spec = make_protocol(name);
            for (double chi : grid)
                fid[sc.name][name].push_back(dissipative_fidelity(spec, sc.at(chi), steps));
        }
    bool ok = true;
    for (const auto& name : protos) {
        for (const auto& sc : standard_scenarios()) {
            const auto& f = fid[sc.name][name];
            ok = ok && std::abs(f[0] - 1.0) < 1e-6;
            for (size_t i = 1; i < f.size(); ++i) {
                ok = ok && f[i] <= f[i - 1] + 1e-12;
                if (sc.name != "equal") ok = ok && fid["equal"][name][i] <= f[i] + 1e-12;
            }
        }
    }
    for (const auto& sc : standard_scenarios())
        for (size_t i = 1; i < grid.size(); ++i) {
            ok = ok && fid[sc.name]["wt-hybrid"][i] >= fid[sc.name]["w3-hybrid"][i] + 1e-4;
            ok = ok && fid[sc.name]["w3-hybrid"][i] >= fid[sc.name]["bell-modes"][i] + 1e-4;
        }
    // the Bell curve scores the full system (modes + spectator qubit); the
    // modes-only reduced-state variant differs by this much at chi = 0.1
    auto bell = make_protocol("bell-modes");
    auto L = lindblad_generator(rotating_frame_hamiltonian(bell.params, bell.layout),
                                scenario_by_name("equal").at(0.1), bell.layout);
    Vector psi0 = initial_state(bell);
    Matrix rho = evolve_density(L, Matrix(psi0 * psi0.adjoint()), bell.ideal_time,
                                bell.ideal_time / steps);
    Vector ideal = ideal_generated_state(bell);
    double f_full = fidelity(ideal, rho);
    Matrix rho_modes = partial_trace(rho, {0, 1}, bell.layout);
    Vector ideal_modes(4);
    for (int nA = 0; nA < 2; ++nA)
        for (int nB = 0; nB < 2; ++nB)
            ideal_modes(2 * nA + nB) = ideal(basis_index({nA, nB, {Spin::down}}, bell.layout));
    ideal_modes.normalize();
    double f_modes = fidelity(ideal_modes, rho_modes);
    report(10, ok, fmt("equal-rates worst, WT > W3 > Bell, curves monotone from 1; "
                       "modes-only vs full-system fidelity differs by %.2e at chi = 0.1",
                       std::abs(f_modes - f_full)));
}

void c11_dispersive_decay_figure() {
    bool ok = true;
    double min_gap = 1.0;
    for (int i = 1; i <= 10; ++i) {
        double gamma = 0.1 * i;
        double ghz = dissipative_fidelity(make_protocol("ghz3"), {0.0, 0.0, gamma}, 8000);
        double w3 = dissipative_fidelity(make_protocol("w-dispersive", 3), {0.0, 0.0, gamma},
                                         8000);
        double wt = dissipative_fidelity(make_protocol("wt-dispersive"), {0.0, 0.0, gamma},
                                         8000);
        ok = ok && wt >= w3 - 1e-12 && w3 >= ghz - 1e-12;
        min_gap = std::min(min_gap, w3 - ghz);
    }
    report(11, ok, fmt("W_T >= W3 >= GHZ3 pointwise over gamma/lambda in (0,1]; min W3-GHZ "
                       "gap %.4f", min_gap));
}

void c12_jitter_figure() {
    double start = now_s();
    JitterConfig cfg{0.0, 3000, 20260824};
    std::map<std::string, std::pair<double, double>> stats;
    for (const char* name : {"ghz3", "w-dispersive", "wt-dispersive"}) {
        auto spec = make_protocol(name, name == std::string("w-dispersive") ? 3 : 0);
        auto table = jitter_sweep(spec, {0.05}, cfg);
        stats[name] = {std::get<double>(table.rows[0][2]), std::get<double>(table.rows[0][3])};
    }
    auto [mg, sg] = stats["ghz3"];
    auto [m3, s3] = stats["w-dispersive"];
    auto [mt, st] = stats["wt-dispersive"];
    double elapsed = now_s() - start;
    bool ok = mg - m3 >= 3.0 * std::hypot(sg, s3) && mg - mt >= 3.0 * std::hypot(sg, st) &&
              std::abs(m3 - mt) < 0.05 && elapsed < 600.0;
    report(12, ok, fmt("5%% jitter, 3000 reps: GHZ3 beats both W families beyond 3 SE "
                       "(%.4f vs %.4f / %.4f); W means nearly equal", mg, m3, mt));
}

void c13_sasa_figure() {
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(0.05 * i);
    JitterConfig cfg{0.0, 150, 424242};
    auto table = sasa_sweep(grid, {0.0, 0.10}, cfg);
    double threshold = std::get<double>(table.rows[0][6]);
    double b_jitter_g0 = 0.0;
    bool monotone = true;
    std::map<double, std::vector<std::pair<double, double>>> curves;  // jitter -> (mean, se)
    for (const auto& row : table.rows)
        curves[std::get<double>(row[1])].push_back(
            {std::get<double>(row[2]), std::get<double>(row[3])});
    b_jitter_g0 = curves[10.0].front().first;
    for (const auto& [jit, c] : curves)
        for (size_t i = 1; i < c.size(); ++i)
            monotone = monotone &&
                       c[i].first <= c[i - 1].first + 3.0 * std::hypot(c[i].second,
                                                                       c[i - 1].second);
    bool in_band = threshold >= 0.3 && threshold <= 0.5;
    bool ok = in_band && b_jitter_g0 > 2.0 && monotone;
    std::string detail = fmt("zero-jitter <B> crosses 2 at gamma*/lambda = %.3f; 10%% jitter "
                             "at gamma=0 gives %.3f > 2; curves monotone", threshold,
                             b_jitter_g0);
    if (!in_band) detail += " -- crossing sits above the expected band [0.3, 0.5]";
    report(13, ok, detail);
}

void c14_sign_equivalence() {
    CounterRng rng(77, 0);
    double dev = 0.0;
    for (int d = 0; d < 50; ++d) {
        double t1 = 10.0 * rng.next_uniform(), t2 = 10.0 * rng.next_uniform();
        double Delta = 0.1 + 2.9 * rng.next_uniform();
        dev = std::max(dev, std::abs(p_up_second(1.0, Delta, 1, -1, t1, t2, 0) -
                                     p_up_second(1.0, Delta, 1, 1, t1, t2, 1)));
    }
    report(14, dev < 1e-12, fmt("opposite-sign vs delayed-equal-sign readings: max dev %.2e",
                                dev));
}

void c15_geometry() {
    const double ref = std::asin(1.0 / (2.0 * std::sqrt(2.0))) / M_PI;
    auto eq = solve_position(1, SignChoice::equal);
    auto op = solve_position(1, SignChoice::opposite);
    bool ok = eq.size() == 1 && op.size() == 1;
    double dev = 1.0, resid = 1.0;
    if (ok) {
        dev = std::max(std::abs(eq[0].r_tilde + ref), std::abs(op[0].r_tilde - ref));
        resid = std::max(
            std::abs(scaled_coupling(1, eq[0].r_tilde) - scaled_coupling(2, eq[0].r_tilde)),
            std::abs(scaled_coupling(1, op[0].r_tilde) + scaled_coupling(2, op[0].r_tilde)));
        ok = dev < 1e-12 && resid <= 1e-12;
    }
    report(15, ok, fmt("n=1 roots match -+(1/pi) arcsin(1/(2 sqrt2)) to %.1e, residual %.1e",
                       dev, resid));
}

void c16_reproducibility() {
    bool ok = true;
    {
        auto spec = make_protocol("ghz3");
        JitterConfig cfg{0.0, 500, 99};
        ok = ok && to_csv(jitter_sweep(spec, {0.025, 0.05}, cfg)) ==
                       to_csv(jitter_sweep(spec, {0.025, 0.05}, cfg));
    }
    {
        auto spec = make_protocol("bell-modes");
        auto sc = scenario_by_name("mixed-1");
        ok = ok && to_csv(chi_sweep(spec, sc, {0.0, 0.1}, 2000)) ==
                       to_csv(chi_sweep(spec, sc, {0.0, 0.1}, 2000));
    }
    {
        JitterConfig cfg{0.0, 20, 5};
        ok = ok && to_json(sasa_sweep({0.0, 0.1}, {0.05}, cfg)) ==
                       to_json(sasa_sweep({0.0, 0.1}, {0.05}, cfg));
    }
    report(16, ok, "re-running sweeps with identical seeds yields byte-identical tables");
}

}  // namespace

int main() {
    c01_oracles();
    c02_bell();
    c03_hybrid_w();
    c04_simultaneous_constraint();
    c05_bell_primed_w();
    c06_ghz();
    c07_cluster();
    c08_dispersive_validity();
    c09_lindblad();
    c10_dissipation_figure();
    c11_dispersive_decay_figure();
    c12_jitter_figure();
    c13_sasa_figure();
    c14_sign_equivalence();
    c15_geometry();
    c16_reproducibility();
    std::printf("%d of 16 criteria passing\n", 16 - failures);
    return failures == 0 ? 0 : 1;
}
