#include "qsc/cli/runner.hpp"

#include "qsc/parallel.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cstdlib>
#include <iostream>

namespace qsc::cli {

using collision::ReservoirSpec;
using states::DensityMatrix;

namespace {

Provenance custom_provenance(const ExperimentConfig& cfg, const RunOptions& o) {
    return {{"preset", cfg.name},
            {"seed", format_seed(o.seed)},
            {"angle_unit", "rad"},
            {"mixing_mode", collision::to_string(cfg.engine.mixing_mode)}};
}

std::optional<DensityMatrix> target_state(const ExperimentConfig& cfg) {
    if (!cfg.target) return std::nullopt;
    if (!cfg.target->mixture) return states::pure_qubit(cfg.target->theta, cfg.target->phi);
    std::vector<states::MixtureComponent> parts;
    double total = 0.0;
    for (const auto& r : cfg.reservoirs) total += r.weight;
    for (const auto& r : cfg.reservoirs) parts.push_back({r.theta, r.weight / total, r.phi});
    return states::mixed_target(parts);
}

DensityMatrix initial_state(const ExperimentConfig& cfg) {
    if (!cfg.initial_state) return states::plus_state();
    return states::pure_qubit(cfg.initial_state->first, cfg.initial_state->second);
}

collision::EngineConfig engine_for(const ExperimentConfig& cfg, const RunOptions& o) {
    auto e = cfg.engine;
    e.seed = o.seed;
    if (o.max_collisions) e.max_collisions = *o.max_collisions;
    if (o.tol) e.tol = *o.tol;
    e.validate();
    return e;
}

void print_catalog(std::ostream& out) {
    for (const auto& p : preset_catalog()) {
        out << p.id;
        for (std::size_t pad = p.id.size(); pad < 10; ++pad) out << ' ';
        out << p.figure;
        for (std::size_t pad = p.figure.size(); pad < 12; ++pad) out << ' ';
        out << p.description << '\n';
    }
}

}  // namespace

std::uint64_t parse_seed(const std::string& text) {
    if (text.empty() || text.front() == '-') throw ConfigError("invalid seed '" + text + "'");
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 0);
    if (errno != 0 || end == text.c_str() || *end != '\0') throw ConfigError("invalid seed '" + text + "'");
    return static_cast<std::uint64_t>(v);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_seed, const ExperimentConfig* cfg) {
    if (cli_seed) return *cli_seed;
    if (cfg && cfg->seed_given) return cfg->engine.seed;
    if (const char* env = std::getenv("QSC_SEED"); env && *env) return parse_seed(env);
    return kDefaultSeed;
}

RunOutcome run_custom(const ExperimentConfig& cfg, const RunOptions& o) {
    const auto engine = engine_for(cfg, o);
    const auto prov = custom_provenance(cfg, o);
    RunOutcome out;

    if (!cfg.sweep) {
        const auto evo = collision::evolve(initial_state(cfg), cfg.reservoirs, engine, target_state(cfg));
        Table traj{{"n", "sigma_z", "bloch_x", "bloch_y", "bloch_z", "fidelity"}, {}};
        for (const auto& r : evo.trajectory) {
            traj.add({static_cast<std::int64_t>(r.n), r.sigma_z, r.bloch.x, r.bloch.y, r.bloch.z,
                      r.fidelity_to_target ? Cell{*r.fidelity_to_target} : Cell{}});
        }
        Table summary{{"run", "description", "sigma_z_ss", "p_e", "p_g", "n_used", "converged", "label"}, {}};
        const auto& res = evo.result;
        summary.add({cfg.name, std::string(), res.sigma_z_ss, res.p_e, res.p_g,
                     static_cast<std::int64_t>(res.n_used), res.converged,
                     classifier::to_string(classifier::classify(res))});
        out.files.push_back(write_table(o.output_dir, "trajectory", traj, prov, o.format));
        out.files.push_back(write_table(o.output_dir, "summary", summary, prov, o.format));
        out.all_converged = !engine.stop_on_converge || res.converged;
        return out;
    }

    const auto& sweep = *cfg.sweep;
    const auto rho0 = initial_state(cfg);
    const auto results = parallel_map(sweep.values.size(), o.jobs, [&](std::size_t i) {
        auto point = with_parameter(cfg, sweep.parameter, sweep.values[i]);
        auto e = engine_for(point, o);
        e.seed = derive_seed(o.seed, i);
        return collision::steady_state(rho0, point.reservoirs, e);
    });
    Table table{{"param_name", "param_value", "sigma_z_ss", "n_used", "converged", "label"}, {}};
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        table.add({sweep.parameter, sweep.values[i], r.sigma_z_ss, static_cast<std::int64_t>(r.n_used),
                   r.converged, classifier::to_string(classifier::classify(r))});
        if (engine.stop_on_converge && !r.converged) out.all_converged = false;
    }
    out.files.push_back(write_table(o.output_dir, "sweep", table, prov, o.format));
    return out;
}

physical::TransmonQubit parse_qubit(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("qubit must be OMEGA_GHZ:G_MHZ, got '" + text + "'");
    try {
        std::size_t a = 0, b = 0;
        const std::string w = text.substr(0, colon), g = text.substr(colon + 1);
        physical::TransmonQubit q{std::stod(w, &a), std::stod(g, &b)};
        if (a != w.size() || b != g.size()) throw std::invalid_argument("trailing");
        return q;
    } catch (const std::logic_error&) {
        throw ConfigError("qubit must be OMEGA_GHZ:G_MHZ, got '" + text + "'");
    }
}

namespace {

struct RunArgs {
    std::string preset;
    std::string config;
    std::string out_dir;
    std::string seed;
    unsigned jobs = 0;
    std::string format;
    std::optional<std::size_t> max_collisions;
    std::optional<double> tol;
    std::string angle_unit;
    std::string convention = "angular";
    std::string sampler;
};

int do_run(const RunArgs& a, std::ostream& out) {
    RunOptions o;
    o.jobs = a.jobs;
    o.max_collisions = a.max_collisions;
    o.tol = a.tol;
    o.convention = a.convention == "ordinary" ? physical::FrequencyConvention::ordinary
                                              : physical::FrequencyConvention::angular;
    if (!a.sampler.empty()) o.sampler = classifier::Sampler::parse(a.sampler);
    const std::optional<std::uint64_t> cli_seed =
        a.seed.empty() ? std::nullopt : std::optional<std::uint64_t>(parse_seed(a.seed));
    std::optional<AngleUnit> unit;
    if (!a.angle_unit.empty()) unit = parse_angle_unit(a.angle_unit);

    std::optional<ExperimentConfig> cfg;
    std::string preset = a.preset;
    if (!a.config.empty()) {
        cfg = load_config(a.config, unit);
        if (cfg->is_preset()) preset = cfg->name;
        if (cfg->output_dir) o.output_dir = *cfg->output_dir;
        if (cfg->format) o.format = *cfg->format;
    }
    if (!a.out_dir.empty()) o.output_dir = a.out_dir;
    if (!a.format.empty()) o.format = parse_output_format(a.format);
    o.seed = resolve_seed(cli_seed, cfg ? &*cfg : nullptr);

    RunOutcome result = preset.empty() ? run_custom(*cfg, o) : run_preset(preset, o);
    for (const auto& f : result.files) out << f.string() << '\n';
    return result.all_converged ? kExitOk : kExitNotConverged;
}

struct TransmonArgs {
    double omega_r = 0.0;
    std::vector<std::string> qubits;
    double tau_int = kPhysicalTauNs;
    std::vector<std::size_t> collisions{1500, 2000};
    double t1 = 20.0;
    double ratio_min = physical::kDefaultDispersiveRatio;
};

int do_transmon(const TransmonArgs& a, std::ostream& out) {
    physical::TransmonParams params{a.omega_r, {}};
    for (const auto& q : a.qubits) params.qubits.push_back(parse_qubit(q));
    params.validate();
    const auto report = physical::validate_dispersive(params, a.ratio_min);
    const auto js = physical::system_couplings(params);

    out << "resonator " << format_number(params.omega_r_ghz) << " GHz\n";
    for (const auto& q : report.qubits) {
        out << "qubit " << q.index << "  detuning " << format_number(q.detuning_ghz) << " GHz  |D|/g "
            << format_number(q.ratio) << (q.pass ? "  ok" : "  NOT dispersive") << '\n';
    }
    for (std::size_t i = 0; i < js.size(); ++i) {
        out << "J_0" << i + 1 << " " << format_number(js[i]) << " MHz\n";
    }
    for (const auto& p : report.reservoir_pairs) {
        out << "reservoir pair (" << p.a << "," << p.b << ")  |J| " << format_number(p.coupling_mhz)
            << " MHz  |dw|/|J| " << format_number(p.ratio) << (p.pass ? "  ok" : "  NOT decoupled") << '\n';
    }
    for (std::size_t n : a.collisions) {
        const auto t = physical::response_time(
            {.tau_int_ns = a.tau_int, .tau_r_us = 0.0, .tau_pr_ns = 0.0, .t1_us = a.t1, .n_collisions = n});
        out << "response " << n << " collisions  " << format_number(t.total_us) << " us"
            << (t.t1_ok ? "  < T1" : "  exceeds T1") << '\n';
    }
    return kExitOk;
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum collision-model classifier"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run a preset or a config file");
    auto* preset_opt = run_cmd->add_option("--preset", run.preset, "Preset id (see `qsc list`)");
    auto* config_opt = run_cmd->add_option("--config", run.config, "JSON config file");
    preset_opt->excludes(config_opt);
    run_cmd->add_option("--out", run.out_dir, "Output directory (default out)");
    run_cmd->add_option("--seed", run.seed, "RNG seed, decimal or 0x hex");
    run_cmd->add_option("--jobs", run.jobs, "Worker threads, 0 = all cores");
    run_cmd->add_option("--format", run.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_option("--max-collisions", run.max_collisions, "Collision budget override");
    run_cmd->add_option("--tol", run.tol, "Convergence tolerance override");
    run_cmd->add_option("--angle-unit", run.angle_unit, "Config angle unit: rad | deg")
        ->check(CLI::IsMember({"rad", "deg"}));
    run_cmd->add_option("--convention", run.convention, "J*tau convention for physical presets")
        ->check(CLI::IsMember({"angular", "ordinary"}));
    run_cmd->add_option("--sampler", run.sampler, "Dataset sampler: uniform | clipped-gaussian");

    app.add_subcommand("list", "List built-in presets");

    TransmonArgs tr;
    auto* tr_cmd = app.add_subcommand("transmon", "Effective couplings, dispersive checks, timing");
    tr_cmd->add_option("--omega-r", tr.omega_r, "Resonator frequency [GHz]")->required();
    tr_cmd->add_option("--qubit", tr.qubits, "Qubit OMEGA_GHZ:G_MHZ, system qubit first")->required();
    tr_cmd->add_option("--tau-int", tr.tau_int, "Interaction time [ns]");
    tr_cmd->add_option("--collisions", tr.collisions, "Collision counts for the response time");
    tr_cmd->add_option("--t1", tr.t1, "System qubit T1 [us]");
    tr_cmd->add_option("--ratio-min", tr.ratio_min, "Minimum dispersive ratio");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run_cmd->parsed()) {
            if (run.preset.empty() && run.config.empty()) {
                err << "error: run needs --preset or --config\n";
                return kExitConfig;
            }
            const int code = do_run(run, out);
            if (code == kExitNotConverged) err << "warning: some runs did not converge\n";
            return code;
        }
        if (tr_cmd->parsed()) return do_transmon(tr, out);
        print_catalog(out);
        return kExitOk;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace qsc::cli
