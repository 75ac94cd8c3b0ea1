#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bimodal/geometry.hpp"
#include "bimodal/nonlocality.hpp"
#include "bimodal/oracles.hpp"
#include "bimodal/version.hpp"

namespace {

using bimodal::Cell;
using bimodal::format_cell;

std::string fmt(double x) { return format_cell(Cell{x}); }

struct Options {
    double delta_over_omega = std::sqrt(2.0);
    int n = 0;
    std::vector<double> sigma_pct;  // percent of 1/lambda
    int reps = 3000;
    std::uint64_t seed = 12345;
    std::string out;
    std::string format = "csv";
    std::string scenario = "equal";
    double gamma_over_lambda_max = 1.0;
    double grid_step = 0.0;  // 0 = per-kind default
    double chi_max = 0.2;
    int draws = 100;
    std::vector<std::string> protocols;
    std::string sign = "equal";
    bool common_stop = false;
};

void apply_config_file(const std::string& path, Options& o) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    auto get = [&](const char* key, auto& slot) {
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("delta_over_omega", o.delta_over_omega);
    get("n", o.n);
    get("sigma_pct", o.sigma_pct);
    get("reps", o.reps);
    get("seed", o.seed);
    get("out", o.out);
    get("format", o.format);
    get("scenario", o.scenario);
    get("gamma_over_lambda_max", o.gamma_over_lambda_max);
    get("grid_step", o.grid_step);
    get("chi_max", o.chi_max);
    get("draws", o.draws);
    get("protocols", o.protocols);
    get("sign", o.sign);
    get("common_stop", o.common_stop);
}

std::map<std::string, std::string> base_header(const std::string& command, const Options& o) {
    std::map<std::string, std::string> h;
    h["tool_version"] = bimodal::kVersion;
    h["command"] = command;
    h["seed"] = std::to_string(o.seed);
    h["units"] = "Omega = 1 (resonant schemes), lambda = 1 (dispersive schemes)";
    return h;
}

void emit(const std::string& text, const Options& o) {
    if (o.out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + o.out + "'");
    f << text;
}

std::string render(const bimodal::SweepResult& r, const Options& o) {
    if (o.format == "json") return bimodal::to_json(r);
    return bimodal::to_csv(r);
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (step <= 0.0 || hi < lo) throw CLI::ValidationError("grid", "need step > 0 and max >= min");
    std::vector<double> g;
    for (int i = 0;; ++i) {
        double x = lo + i * step;
        if (x > hi + 0.5 * step) break;
        g.push_back(std::min(x, hi));
    }
    return g;
}

std::string basis_label(int idx, const bimodal::ProtocolSpec& spec) {
    std::string s = "|";
    if (spec.is_dispersive()) {
        for (int k = spec.N - 1; k >= 0; --k) s += (idx >> k) & 1 ? 'd' : 'u';
    } else {
        int q = 1 << spec.N;
        int modes = idx / q, rest = idx % q;
        s += std::to_string(modes / 2);
        s += std::to_string(modes % 2);
        s += ';';
        for (int k = spec.N - 1; k >= 0; --k) s += (rest >> k) & 1 ? 'd' : 'u';
    }
    return s + ">";
}

bimodal::ProtocolSpec build(const std::string& name, const Options& o) {
    return bimodal::make_protocol(name, o.n, o.delta_over_omega);
}

int cmd_protocol(const std::string& name, const Options& o) {
    auto spec = build(name, o);
    auto run = bimodal::run_ideal(spec);
    std::ostringstream os;
    for (const auto& [k, v] : base_header("protocol " + name, o))
        os << "# " << k << " = " << v << "\n";
    os << "# delta_over_omega = " << fmt(o.delta_over_omega) << "\n";
    os << "basis,re,im\n";
    for (int i = 0; i < run.state.size(); ++i) {
        if (std::abs(run.state(i)) < 1e-12) continue;
        os << basis_label(i, spec) << "," << fmt(run.state(i).real()) << ","
           << fmt(run.state(i).imag()) << "\n";
    }
    os << "ideal_time," << fmt(spec.ideal_time) << ",\n";
    os << "fidelity," << fmt(run.fidelity) << ",\n";
    emit(os.str(), o);
    return run.fidelity >= 1.0 - 1e-6 ? 0 : 1;
}

int cmd_sweep(const std::string& kind, const Options& o) {
    bimodal::SweepResult table;
    auto hdr = base_header("sweep " + kind, o);

    if (kind == "dissipation") {
        std::vector<std::string> names =
            o.protocols.empty() ? std::vector<std::string>{"bell-modes", "w3-hybrid", "wt-hybrid"}
                                : o.protocols;
        std::vector<std::string> scenarios;
        if (o.scenario == "all")
            for (const auto& s : bimodal::standard_scenarios()) scenarios.push_back(s.name);
        else
            scenarios.push_back(o.scenario);
        bool first = true;
        for (const auto& name : names) {
            auto spec = build(name, o);
            double hi = spec.is_dispersive() ? o.gamma_over_lambda_max : o.chi_max;
            double step = o.grid_step > 0.0 ? o.grid_step : (spec.is_dispersive() ? 0.05 : 0.01);
            auto grid = make_grid(0.0, hi, step);
            for (const auto& sc : scenarios) {
                auto part = bimodal::chi_sweep(spec, bimodal::scenario_by_name(sc), grid);
                if (first) table.columns = part.columns;
                first = false;
                for (auto& row : part.rows) table.add_row(std::move(row));
            }
        }
        hdr["chi_max"] = fmt(o.chi_max);
        hdr["gamma_over_lambda_max"] = fmt(o.gamma_over_lambda_max);
        hdr["scenario"] = o.scenario;
        hdr["delta_over_omega"] = fmt(o.delta_over_omega);
    } else if (kind == "jitter") {
        std::vector<std::string> names =
            o.protocols.empty()
                ? std::vector<std::string>{"ghz3", "w-dispersive", "wt-dispersive"}
                : o.protocols;
        std::vector<double> sig = o.sigma_pct.empty()
                                      ? std::vector<double>{0.0, 2.5, 5.0, 10.0}
                                      : o.sigma_pct;
        std::vector<double> frac;
        for (double s : sig) frac.push_back(s / 100.0);
        bimodal::JitterConfig cfg{0.0, o.reps, o.seed};
        bool first = true;
        for (const auto& name : names) {
            Options local = o;
            if (name == "w-dispersive" && local.n == 0) local.n = 3;
            auto part = bimodal::jitter_sweep(build(name, local), frac, cfg);
            if (first) table.columns = part.columns;
            first = false;
            for (auto& row : part.rows) table.add_row(std::move(row));
        }
        hdr["reps"] = std::to_string(o.reps);
    } else if (kind == "sasa") {
        double step = o.grid_step > 0.0 ? o.grid_step : 0.05;
        auto grid = make_grid(0.0, o.gamma_over_lambda_max, step);
        std::vector<double> sig = o.sigma_pct.empty() ? std::vector<double>{0.0, 10.0}
                                                      : o.sigma_pct;
        std::vector<double> frac;
        for (double s : sig) frac.push_back(s / 100.0);
        bimodal::JitterConfig cfg{0.0, o.reps, o.seed};
        table = bimodal::sasa_sweep(grid, frac, cfg);
        hdr["gamma_over_lambda_max"] = fmt(o.gamma_over_lambda_max);
        hdr["grid_step"] = fmt(step);
        hdr["reps"] = std::to_string(o.reps);
        hdr["local_bound"] = fmt(bimodal::kSasaLocalBound);
        for (auto& [k, v] : table.header) hdr[k] = v;
    } else {
        throw CLI::ValidationError("kind", "unknown sweep kind '" + kind + "'");
    }

    table.header = hdr;
    emit(render(table, o), o);
    return 0;
}

int cmd_oracle(const std::string& family, const Options& o) {
    std::vector<std::string> fams;
    if (family == "all") fams = bimodal::oracle_families();
    else fams.push_back(family);
    std::ostringstream os;
    bool all_pass = true;
    for (const auto& f : fams) {
        auto rep = bimodal::run_oracle(f, o.draws, o.seed);
        all_pass = all_pass && rep.pass;
        os << rep.family << ": max deviation " << fmt(rep.max_deviation) << " (threshold "
           << fmt(rep.threshold) << ", " << rep.draws << " draws) "
           << (rep.pass ? "pass" : "FAIL") << "\n";
    }
    emit(os.str(), o);
    return all_pass ? 0 : 1;
}

int cmd_positions(const Options& o) {
    std::vector<bimodal::SignChoice> choices;
    if (o.sign == "both")
        choices = {bimodal::SignChoice::equal, bimodal::SignChoice::opposite};
    else if (o.sign == "equal")
        choices = {bimodal::SignChoice::equal};
    else if (o.sign == "opposite")
        choices = {bimodal::SignChoice::opposite};
    else
        throw CLI::ValidationError("--sign", "must be equal, opposite, or both");
    int n = o.n > 0 ? o.n : 1;
    bimodal::SweepResult table;
    table.header = base_header("positions", o);
    table.header["n"] = std::to_string(n);
    table.columns = {"sign", "r_tilde", "residual", "g_n", "g_n1"};
    for (auto c : choices) {
        double s = (c == bimodal::SignChoice::equal) ? 1.0 : -1.0;
        for (const auto& root : bimodal::solve_position(n, c)) {
            double gn = bimodal::scaled_coupling(n, root.r_tilde);
            double gn1 = bimodal::scaled_coupling(n + 1, root.r_tilde);
            table.add_row({std::string(c == bimodal::SignChoice::equal ? "equal" : "opposite"),
                           root.r_tilde, gn - s * gn1, gn, gn1});
        }
    }
    emit(render(table, o), o);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            try {
                apply_config_file(argv[i + 1], o);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "error: %s\n", e.what());
                return 2;
            }
        }

    CLI::App app{"bimodal cavity entanglement simulator"};
    app.require_subcommand(1);
    std::string cfg_path;
    app.add_option("--config", cfg_path, "JSON config file with the same keys as the flags");

    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", cfg_path, "JSON config file (applied before flags)");
        c->add_option("--delta-over-omega", o.delta_over_omega);
        c->add_option("--n", o.n);
        c->add_option("--seed", o.seed);
        c->add_option("--reps", o.reps);
        c->add_option("--out", o.out);
        c->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    };

    std::string proto_name, sweep_kind, oracle_family = "all";
    auto* proto = app.add_subcommand("protocol", "run one generation protocol");
    proto->add_option("name", proto_name)->required();
    add_common(proto);

    auto* sweep = app.add_subcommand("sweep", "dissipation / jitter / sasa study");
    sweep->add_option("kind", sweep_kind)
        ->required()
        ->check(CLI::IsMember({"dissipation", "jitter", "sasa"}));
    add_common(sweep);
    sweep->add_option("--sigma-pct", o.sigma_pct, "jitter std, percent of 1/lambda");
    sweep->add_option("--scenario", o.scenario);
    sweep->add_option("--gamma-over-lambda-max", o.gamma_over_lambda_max);
    sweep->add_option("--grid-step", o.grid_step);
    sweep->add_option("--chi-max", o.chi_max);
    sweep->add_option("--protocol", o.protocols, "protocol names (repeatable)");

    auto* oracle = app.add_subcommand("oracle", "closed forms vs propagator cross-checks");
    oracle->add_option("family", oracle_family);
    add_common(oracle);
    oracle->add_option("--draws", o.draws);

    auto* positions = app.add_subcommand("positions", "coupling-sign position solver");
    add_common(positions);
    positions->add_option("--sign", o.sign)->check(CLI::IsMember({"equal", "opposite", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (proto->parsed()) return cmd_protocol(proto_name, o);
        if (sweep->parsed()) return cmd_sweep(sweep_kind, o);
        if (oracle->parsed()) return cmd_oracle(oracle_family, o);
        if (positions->parsed()) return cmd_positions(o);
    } catch (const bimodal::FeasibilityError& e) {
        std::fprintf(stderr, "infeasible: %s (requested %.17g, window [%.17g, %.17g])\n",
                     e.what(), e.requested_delta, e.lower, e.upper);
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
