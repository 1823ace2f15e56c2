#include "qsc/cli/presets.hpp"

#include "qsc/cli/config.hpp"
#include "qsc/parallel.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace qsc::cli {

using classifier::LabeledPoint;
using classifier::Sampler;
using collision::EngineConfig;
using collision::ReservoirSpec;
using states::DensityMatrix;

namespace {

constexpr double kPi = std::numbers::pi;

ReservoirSpec reservoir(double theta, double coupling, double weight) {
    return {.theta = theta, .phi = 0.0, .coupling = coupling, .weight = weight, .noise = std::nullopt};
}

Provenance provenance(const std::string& id, const RunOptions& o) {
    return {{"preset", id}, {"seed", format_seed(o.seed)}, {"angle_unit", "rad"}};
}

// ---------------------------------------------------------------- trajectories

struct TrajectoryRun {
    std::string name;
    std::string description;
    std::vector<ReservoirSpec> reservoirs;
    EngineConfig engine;
    std::optional<DensityMatrix> target;
    std::optional<DensityMatrix> initial;
};

Table trajectory_table(const collision::Trajectory& traj) {
    Table t{{"n", "sigma_z", "bloch_x", "bloch_y", "bloch_z", "fidelity"}, {}};
    t.rows.reserve(traj.size());
    for (const auto& r : traj) {
        t.add({static_cast<std::int64_t>(r.n), r.sigma_z, r.bloch.x, r.bloch.y, r.bloch.z,
               r.fidelity_to_target ? Cell{*r.fidelity_to_target} : Cell{}});
    }
    return t;
}

Table summary_table() {
    return {{"run", "description", "sigma_z_ss", "p_e", "p_g", "n_used", "converged", "label"}, {}};
}

void add_summary(Table& t, const std::string& run, const std::string& description,
                 const collision::SteadyStateResult& r) {
    t.add({run, description, r.sigma_z_ss, r.p_e, r.p_g, static_cast<std::int64_t>(r.n_used),
           r.converged, classifier::to_string(classifier::classify(r))});
}

RunOutcome run_trajectories(const std::string& id, const std::vector<TrajectoryRun>& runs,
                            const RunOptions& o) {
    auto evolutions = parallel_map(runs.size(), o.jobs, [&](std::size_t i) {
        const auto& run = runs[i];
        return collision::evolve(run.initial.value_or(states::plus_state()), run.reservoirs,
                                 run.engine, run.target);
    });
    RunOutcome out;
    Table summary = summary_table();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& run = runs[i];
        const auto& evo = evolutions[i];
        const std::string stem = runs.size() == 1 ? "trajectory" : "trajectory_" + run.name;
        out.files.push_back(
            write_table(o.output_dir, stem, trajectory_table(evo.trajectory), provenance(id, o), o.format));
        add_summary(summary, run.name, run.description, evo.result);
        if (run.engine.stop_on_converge && !evo.result.converged) out.all_converged = false;
    }
    out.files.push_back(write_table(o.output_dir, "summary", summary, provenance(id, o), o.format));
    return out;
}

std::string describe(const std::vector<ReservoirSpec>& rs) {
    std::string s;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (i) s += ";";
        s += "theta=" + format_number(rs[i].theta) + " J=" + format_number(rs[i].coupling) +
             " q=" + format_number(rs[i].weight);
    }
    return s;
}

RunOutcome fig1e(const std::string& id, const RunOptions& o) {
    EngineConfig cfg = preset_engine(o, kNominalTau, kFig1Collisions);
    cfg.stop_on_converge = false;
    std::vector<ReservoirSpec> rs{reservoir(kPi, kNominalCoupling, 1.0)};
    return run_trajectories(id, {{"down", describe(rs), rs, cfg, states::pure_qubit(kPi), std::nullopt}}, o);
}

RunOutcome fig2a(const std::string& id, const RunOptions& o) {
    const EngineConfig cfg = preset_engine(o);
    const std::vector<std::array<double, 2>> couplings{
        {0.1, 0.05}, {0.1, 0.075}, {0.1, 0.1}, {0.075, 0.1}, {0.05, 0.1}};
    std::vector<TrajectoryRun> runs;
    for (std::size_t k = 0; k < couplings.size(); ++k) {
        std::vector<ReservoirSpec> rs{reservoir(0.0, couplings[k][0], 0.5),
                                      reservoir(kPi, couplings[k][1], 0.5)};
        runs.push_back({std::to_string(k), describe(rs), rs, cfg, std::nullopt, std::nullopt});
    }
    return run_trajectories(id, runs, o);
}

RunOutcome fig2b(const std::string& id, const RunOptions& o) {
    const EngineConfig cfg = preset_engine(o);
    const std::vector<std::array<double, 2>> thetas{
        {kPi / 6, 2 * kPi / 3}, {kPi / 3, 5 * kPi / 6}, {kPi / 4, kPi / 4}, {kPi / 2, kPi}};
    std::vector<TrajectoryRun> runs;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        std::vector<ReservoirSpec> rs{reservoir(thetas[k][0], kNominalCoupling, 0.5),
                                      reservoir(thetas[k][1], kNominalCoupling, 0.5)};
        runs.push_back({std::to_string(k), describe(rs), rs, cfg, std::nullopt, std::nullopt});
    }
    return run_trajectories(id, runs, o);
}

DensityMatrix equal_mixture(const std::vector<ReservoirSpec>& rs) {
    std::vector<states::MixtureComponent> parts;
    for (const auto& r : rs) parts.push_back({r.theta, r.weight, r.phi});
    return states::mixed_target(parts);
}

std::vector<ReservoirSpec> three_channels(double t1, double t2, double t3) {
    const double q = 1.0 / 3.0;
    return {reservoir(t1, kNominalCoupling, q), reservoir(t2, kNominalCoupling, q),
            reservoir(t3, kNominalCoupling, q)};
}

RunOutcome fig5a(const std::string& id, const RunOptions& o) {
    const EngineConfig cfg = preset_engine(o);
    std::vector<ReservoirSpec> two{reservoir(0.0, 0.1, 0.5), reservoir(kPi, 0.075, 0.5)};
    std::vector<ReservoirSpec> three = three_channels(0.0, 0.0, kPi);
    return run_trajectories(id,
                            {{"2ch", describe(two), two, cfg, std::nullopt, std::nullopt},
                             {"3ch", describe(three), three, cfg, std::nullopt, std::nullopt}},
                            o);
}

RunOutcome fig5_mixture(const std::string& id, const RunOptions& o, std::vector<ReservoirSpec> rs) {
    const EngineConfig cfg = preset_engine(o);
    auto target = equal_mixture(rs);
    return run_trajectories(id, {{"mixture", describe(rs), rs, cfg, target, std::nullopt}}, o);
}

// ---------------------------------------------------------------- sweeps and datasets

Table sweep_table() {
    return {{"param_name", "param_value", "sigma_z_ss", "n_used", "converged", "label"}, {}};
}

void add_sweep_row(Table& t, const std::string& name, double value, const LabeledPoint& p) {
    t.add({name, value, p.sigma_z_ss, static_cast<std::int64_t>(p.n_used), p.converged,
           classifier::to_string(p.label)});
}

Table dataset_table(const std::vector<LabeledPoint>& points, const std::string& prefix) {
    Table t;
    const std::size_t dims = points.empty() ? 0 : points.front().features.size();
    for (std::size_t d = 0; d < dims; ++d) t.columns.push_back(prefix + "_" + std::to_string(d + 1));
    t.columns.push_back("sigma_z_ss");
    t.columns.push_back("label");
    for (const auto& p : points) {
        std::vector<Cell> row(p.features.begin(), p.features.end());
        row.emplace_back(p.sigma_z_ss);
        row.emplace_back(classifier::to_string(p.label));
        t.add(std::move(row));
    }
    return t;
}

nlohmann::json separability_json(const classifier::SeparabilityReport& rep) {
    nlohmann::json doc;
    doc["separable"] = rep.separable;
    if (rep.separable) {
        nlohmann::json w = nlohmann::json::array();
        for (double x : rep.w) w.push_back(round_for_output(x));
        doc["w"] = w;
        doc["b"] = round_for_output(rep.b);
    } else {
        doc["w"] = nullptr;
        doc["b"] = nullptr;
    }
    doc["margin"] = round_for_output(rep.margin);
    doc["iterations"] = rep.iterations;
    return doc;
}

bool all_converged(const std::vector<LabeledPoint>& points) {
    for (const auto& p : points)
        if (!p.converged) return false;
    return true;
}

RunOutcome write_dataset(const std::string& id, const RunOptions& o,
                         const std::vector<LabeledPoint>& points, const std::string& prefix,
                         bool check_convergence, const nlohmann::json& extra = nullptr) {
    RunOutcome out;
    out.files.push_back(
        write_table(o.output_dir, "dataset", dataset_table(points, prefix), provenance(id, o), o.format));
    auto sep = separability_json(classifier::check_linear_separability(points));
    out.files.push_back(write_json(o.output_dir, "separability.json", sep));
    if (!extra.is_null()) out.files.push_back(write_json(o.output_dir, "physical.json", extra));
    out.all_converged = !check_convergence || all_converged(points);
    return out;
}

RunOutcome fig3a(const std::string& id, const RunOptions& o) {
    const auto offsets = fig3a_offsets();
    const auto points = classifier::sweep_couplings(offsets, kNominalCoupling, preset_engine(o), o.jobs);
    Table sweep = sweep_table();
    for (std::size_t i = 0; i < points.size(); ++i) add_sweep_row(sweep, "delta_j", offsets[i], points[i]);
    RunOutcome out;
    out.files.push_back(write_table(o.output_dir, "sweep", sweep, provenance(id, o), o.format));
    out.files.push_back(
        write_table(o.output_dir, "dataset", dataset_table(points, "j"), provenance(id, o), o.format));
    out.all_converged = all_converged(points);
    return out;
}

RunOutcome theta_sweep(const std::string& id, const RunOptions& o,
                       const std::vector<std::array<double, 2>>& pairs) {
    const auto points = classifier::sweep_thetas(pairs, kNominalCoupling, preset_engine(o), o.jobs);
    Table sweep = sweep_table();
    for (std::size_t i = 0; i < points.size(); ++i) {
        add_sweep_row(sweep, "phi_scaled", classifier::phi_scaled(pairs[i][0], pairs[i][1]), points[i]);
    }
    RunOutcome out;
    out.files.push_back(write_table(o.output_dir, "sweep", sweep, provenance(id, o), o.format));
    out.files.push_back(
        write_table(o.output_dir, "dataset", dataset_table(points, "theta"), provenance(id, o), o.format));
    out.all_converged = all_converged(points);
    return out;
}

RunOutcome fig3b(const std::string& id, const RunOptions& o) {
    const auto sweep = classifier::degree_range(0, 180, 10);
    std::vector<std::array<double, 2>> pairs;
    for (int fixed : {30, 60, 90}) {
        for (const auto& p : classifier::theta_grid({fixed * kPi / 180.0}, sweep)) pairs.push_back(p);
    }
    for (int fixed : {120, 150, 180}) {
        const double t2 = fixed == 180 ? kPi : fixed * kPi / 180.0;
        for (double t1 : sweep) pairs.push_back({t1, t2});
    }
    return theta_sweep(id, o, pairs);
}

RunOutcome fig3c(const std::string& id, const RunOptions& o) {
    const auto grid = classifier::degree_range(0, 180, 10);
    return theta_sweep(id, o, classifier::theta_grid(grid, grid));
}

RunOutcome fig4a(const std::string& id, const RunOptions& o) {
    const auto points = classifier::sweep_coupling_pairs(
        fig4a_pairs(), preset_engine(o, kNominalTau, kWeakCouplingBudget), o.jobs);
    return write_dataset(id, o, points, "j", true);
}

RunOutcome random_theta_dataset(const std::string& id, const RunOptions& o, std::size_t dims,
                                const Sampler& default_sampler) {
    const auto tuples =
        classifier::generate_theta_dataset(kDatasetSize, dims, o.sampler.value_or(default_sampler), o.seed);
    const auto points =
        classifier::evaluate_theta_dataset(tuples, kNominalCoupling, preset_engine(o), std::nullopt, o.jobs);
    return write_dataset(id, o, points, "theta", true);
}

RunOutcome fig7(const std::string& id, const RunOptions& o) {
    const double eps = fig7_epsilon(id);
    const auto setup = physical_setup(o);
    const auto tuples =
        classifier::generate_theta_dataset(kDatasetSize, 2, o.sampler.value_or(Sampler::uniform()), o.seed);
    const auto points = classifier::evaluate_theta_dataset(
        tuples, setup.coupling, setup.engine, collision::NoiseSpec{eps, eps / 4.0}, o.jobs);

    const auto timing = physical::response_time(
        {.tau_int_ns = kPhysicalTauNs, .tau_r_us = 0.0, .tau_pr_ns = 0.0, .t1_us = 20.0,
         .n_collisions = setup.engine.max_collisions});
    nlohmann::json phys;
    phys["coupling_mhz"] = kPhysicalCouplingMhz;
    phys["tau_int_ns"] = kPhysicalTauNs;
    phys["convention"] = o.convention == physical::FrequencyConvention::angular ? "angular" : "ordinary";
    phys["coupling_phase"] = round_for_output(setup.coupling_phase);
    phys["h_per_ns"] = round_for_output(setup.engine.h);
    phys["epsilon"] = eps;
    phys["eta"] = eps / 4.0;
    phys["n_collisions"] = setup.engine.max_collisions;
    phys["response_time_us"] = round_for_output(timing.total_us);
    phys["t1_us"] = 20.0;
    phys["t1_ok"] = timing.t1_ok;
    return write_dataset(id, o, points, "theta", false, phys);
}

// ---------------------------------------------------------------- transmon

RunOutcome transmon(const std::string& id, const RunOptions& o) {
    (void)id;
    const auto params = reference_transmon();
    const auto couplings = physical::system_couplings(params);
    const auto report = physical::validate_dispersive(params);

    nlohmann::json doc;
    doc["omega_r_ghz"] = params.omega_r_ghz;
    nlohmann::json qubits = nlohmann::json::array();
    for (const auto& q : report.qubits) {
        qubits.push_back({{"index", q.index},
                          {"omega_ghz", params.qubits[q.index].omega_ghz},
                          {"g_mhz", params.qubits[q.index].g_mhz},
                          {"detuning_ghz", round_for_output(q.detuning_ghz)},
                          {"ratio", round_for_output(q.ratio)},
                          {"dispersive", q.pass}});
    }
    doc["qubits"] = qubits;
    nlohmann::json js = nlohmann::json::array();
    for (std::size_t i = 0; i < couplings.size(); ++i) {
        js.push_back({{"pair", {0, i + 1}}, {"j_mhz", round_for_output(couplings[i])}});
    }
    doc["system_couplings"] = js;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : report.reservoir_pairs) {
        pairs.push_back({{"pair", {p.a, p.b}},
                         {"j_mhz", round_for_output(p.coupling_mhz)},
                         {"ratio", round_for_output(p.ratio)},
                         {"decoupled", p.pass}});
    }
    doc["reservoir_pairs"] = pairs;
    nlohmann::json timing = nlohmann::json::array();
    for (std::size_t n : {std::size_t{1500}, std::size_t{2000}}) {
        const auto t = physical::response_time({.tau_int_ns = kPhysicalTauNs, .tau_r_us = 0.0,
                                                .tau_pr_ns = 0.0, .t1_us = 20.0, .n_collisions = n});
        timing.push_back({{"n_collisions", n},
                          {"tau_int_ns", kPhysicalTauNs},
                          {"total_us", round_for_output(t.total_us)},
                          {"t1_us", 20.0},
                          {"t1_ok", t.t1_ok}});
    }
    doc["timing"] = timing;
    RunOutcome out;
    out.files.push_back(write_json(o.output_dir, "transmon.json", doc));
    return out;
}

using PresetFn = std::function<RunOutcome(const std::string&, const RunOptions&)>;

struct PresetEntry {
    PresetInfo info;
    PresetFn run;
};

const std::vector<PresetEntry>& entries() {
    static const std::vector<PresetEntry> table = {
        {{"fig1e", "Fig. 1e", "magnetization and fidelity, |+> homogenized by a spin-down reservoir"}, fig1e},
        {{"fig1f", "Fig. 1f", "Bloch-vector trajectory of the same homogenization run"}, fig1e},
        {{"fig2a", "Fig. 2a", "two orthogonal reservoirs, trajectories for several coupling pairs"}, fig2a},
        {{"fig2b", "Fig. 2b", "two reservoirs at equal J = 0.1, trajectories for several state pairs"}, fig2b},
        {{"fig3a", "Fig. 3a", "steady magnetization vs delta J, J1 = J/2 + dJ, J2 = J/2 - dJ (21 points)"},
         fig3a},
        {{"fig3b", "Fig. 3b", "steady magnetization vs phi = pi - (theta1 + theta2), six 19-point curves"},
         fig3b},
        {{"fig3c", "Fig. 3c", "steady magnetization on the full 19 x 19 theta grid (361 points)"}, fig3c},
        {{"fig4a", "Fig. 4a", "classification of 24 coupling pairs with separability check"}, fig4a},
        {{"fig4b", "Fig. 4b", "classification of 42 random theta pairs with separability check"},
         [](const std::string& id, const RunOptions& o) {
             return random_theta_dataset(id, o, 2, Sampler::uniform());
         }},
        {{"fig5a", "Fig. 5a", "two- vs three-channel equilibration speed"}, fig5a},
        {{"fig5bc", "Fig. 5b-c", "three channels (up, up, down): magnetization and fidelity to the mixture"},
         [](const std::string& id, const RunOptions& o) {
             return fig5_mixture(id, o, three_channels(0.0, 0.0, kPi));
         }},
        {{"fig5de", "Fig. 5d-e", "three channels (up, down, down): magnetization and fidelity to the mixture"},
         [](const std::string& id, const RunOptions& o) {
             return fig5_mixture(id, o, three_channels(0.0, kPi, kPi));
         }},
        {{"fig5f", "Fig. 5f", "classification of 42 random theta triples with separability check"},
         [](const std::string& id, const RunOptions& o) {
             return random_theta_dataset(id, o, 3, Sampler::clipped_gaussian(kPi / 2, 1.0));
         }},
        {{"fig7a", "Fig. 7a", "physical parameters, preparation error eps = 0.01, eta = eps/4"}, fig7},
        {{"fig7b", "Fig. 7b", "physical parameters, preparation error eps = 0.1, eta = eps/4"}, fig7},
        {{"fig7c", "Fig. 7c", "physical parameters, preparation error eps = 0.4, eta = eps/4"}, fig7},
        {{"fig7d", "Fig. 7d", "physical parameters, preparation error eps = 0.6, eta = eps/4"}, fig7},
        {{"transmon", "transmon", "effective couplings, dispersive checks and response time"},
         transmon},
    };
    return table;
}

}  // namespace

const std::vector<PresetInfo>& preset_catalog() {
    static const std::vector<PresetInfo> catalog = [] {
        std::vector<PresetInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return catalog;
}

const PresetInfo* find_preset(const std::string& id) {
    for (const auto& p : preset_catalog())
        if (p.id == id) return &p;
    return nullptr;
}

RunOutcome run_preset(const std::string& id, const RunOptions& options) {
    for (const auto& e : entries()) {
        if (e.info.id == id) {
            try {
                return e.run(id, options);
            } catch (const IoError&) {
                throw;
            } catch (const ConfigError&) {
                throw;
            } catch (const Error& err) {
                // Overrides such as --tol / --max-collisions surface here.
                throw ConfigError(id + ": " + err.what());
            }
        }
    }
    throw ConfigError("unknown preset '" + id + "'");
}

EngineConfig preset_engine(const RunOptions& options, double tau, std::size_t max_collisions) {
    EngineConfig cfg;
    cfg.h = 1.0;
    cfg.tau = tau;
    cfg.max_collisions = options.max_collisions.value_or(max_collisions);
    cfg.tol = options.tol.value_or(1e-9);
    cfg.window = 10;
    cfg.seed = options.seed;
    cfg.validate();
    return cfg;
}

std::vector<double> fig3a_offsets() {
    std::vector<double> out;
    for (int k = -10; k <= 10; ++k) out.push_back(kNominalCoupling * k / 20.0);
    return out;
}

std::vector<std::array<double, 2>> fig4a_pairs() {
    std::vector<std::array<double, 2>> out;
    const double step = kNominalCoupling / 6.0;
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; i + j <= 6; ++j)
            if (i != j) out.push_back({i * step, j * step});
    return out;
}

PhysicalSetup physical_setup(const RunOptions& options) {
    PhysicalSetup s;
    s.coupling_phase = physical::coupling_phase(kPhysicalCouplingMhz, kPhysicalTauNs, options.convention);
    s.engine = preset_engine(options, kPhysicalTauNs, kPhysicalCollisions);
    s.engine.stop_on_converge = false;
    const double cycles_per_ns = kSystemQubitGhz;
    s.engine.h = options.convention == physical::FrequencyConvention::angular
                     ? 2.0 * kPi * cycles_per_ns
                     : cycles_per_ns;
    s.coupling = s.coupling_phase / kPhysicalTauNs;
    return s;
}

double fig7_epsilon(const std::string& id) {
    static const std::map<std::string, double> levels{
        {"fig7a", 0.01}, {"fig7b", 0.1}, {"fig7c", 0.4}, {"fig7d", 0.6}};
    const auto it = levels.find(id);
    if (it == levels.end()) throw ConfigError("not a fig7 preset: " + id);
    return it->second;
}

physical::TransmonParams reference_transmon() {
    // g values are inferred so that |J12| = |J13| = 48.9 MHz.
    return {8.625, {{6.2, 393.7}, {4.052, 393.7}, {7.518, 188.8}}};
}

}  // namespace qsc::cli
