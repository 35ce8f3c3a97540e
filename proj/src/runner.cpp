#include "nhse/runner.hpp"

#include "nhse/config.hpp"
#include "nhse/dynamics.hpp"
#include "nhse/errors.hpp"
#include "nhse/liouville.hpp"
#include "nhse/llg.hpp"
#include "nhse/model.hpp"
#include "nhse/output.hpp"
#include "nhse/spectra.hpp"
#include "nhse/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

namespace nhse::runner {

namespace {

using output::Table;

std::string fmt(double v) { return output::format_double(v); }

RealVector linspace(double lo, double hi, int n) {
    RealVector v(n);
    for (int j = 0; j < n; ++j)
        v(j) = n == 1 ? lo : lo + (hi - lo) * j / (n - 1);
    return v;
}

model::NNChainSpec nn_chain(int n, double j, double d, double gamma, double gamma0,
                            Boundary boundary) {
    model::NNChainSpec spec;
    spec.n_sites = n;
    spec.spin_s = 1.0;
    spec.omega = 1.0;
    spec.j_sym = j;
    spec.d_asym = d;
    spec.gamma = gamma;
    spec.gamma0 = gamma0;
    spec.boundary = boundary;
    return spec;
}

llg::MultilayerSpec llg_stack(int n, double j, double d, double alpha_l,
                              double alpha_nl, double h, Boundary boundary) {
    llg::MultilayerSpec spec;
    spec.n_layers = n;
    spec.j_ex = j;
    spec.d_dmi = d;
    spec.alpha_l = alpha_l;
    spec.alpha_nl = alpha_nl;
    spec.h_field = h;
    spec.boundary = boundary;
    return llg::MultilayerSpec::validated(spec);
}

void add_chain_provenance(Table& table, const model::NNChainSpec& spec) {
    table.provenance.emplace_back("model", "nearest-neighbour dissipative magnon chain");
    table.provenance.emplace_back("N", std::to_string(spec.n_sites));
    table.provenance.emplace_back("s", fmt(spec.spin_s));
    table.provenance.emplace_back("omega", fmt(spec.omega));
    table.provenance.emplace_back("J", fmt(spec.j_sym));
    table.provenance.emplace_back("D", fmt(spec.d_asym));
    table.provenance.emplace_back("Gamma", fmt(spec.gamma));
    table.provenance.emplace_back("Gamma0", fmt(spec.gamma0));
    table.provenance.emplace_back("boundary", to_string(spec.boundary));
}

void add_llg_provenance(Table& table, const llg::MultilayerSpec& spec) {
    table.provenance.emplace_back("model", "macrospin multilayer with nonlocal damping");
    table.provenance.emplace_back("N", std::to_string(spec.n_layers));
    table.provenance.emplace_back("J", fmt(spec.j_ex));
    table.provenance.emplace_back("D", fmt(spec.d_dmi));
    table.provenance.emplace_back("H", fmt(spec.h_field));
    table.provenance.emplace_back("alpha_l", fmt(spec.alpha_l));
    table.provenance.emplace_back("alpha_nl", fmt(spec.alpha_nl));
    table.provenance.emplace_back("Ms", fmt(spec.ms));
    table.provenance.emplace_back("gamma", fmt(spec.gyro));
    table.provenance.emplace_back("mu0", fmt(spec.mu0));
    table.provenance.emplace_back("boundary", to_string(spec.boundary));
}

// ---- spectrum -------------------------------------------------------------

model::NNChainSpec spectrum_preset(const std::string& name) {
    if (name == "fig1c-unidirectional")
        return nn_chain(9, 0.0, 1.0, 1.0, 2.0, Boundary::Periodic);
    if (name == "fig1c-nonreciprocal")
        return nn_chain(9, 1.0, 1.0, 1.0, 2.0, Boundary::Periodic);
    if (name == "fig1c-reciprocal")
        return nn_chain(9, 1.0, 0.0, 1.0, 2.0, Boundary::Periodic);
    throw InvalidSpecError("unknown spectrum preset '" + name + "'");
}

Table spectrum_table(const model::NNChainSpec& spec, int n_k) {
    const auto loop = spectra::pbc_dispersion(spec, n_k);
    Table table;
    add_chain_provenance(table, spec);
    table.provenance.emplace_back("nk", std::to_string(n_k));
    table.columns = {"k", "re_eps", "im_eps"};
    for (int j = 0; j < n_k; ++j)
        table.rows.push_back(
            {loop.k_values(j), loop.energies(j).real(), loop.energies(j).imag()});
    return table;
}

// ---- skin-modes -----------------------------------------------------------

model::NNChainSpec skin_preset(const std::string& name) {
    if (name == "fig1b") return nn_chain(9, 1.0, 1.0, 1.0, 2.0, Boundary::Open);
    if (name == "fig1b-reciprocal")
        return nn_chain(9, 1.0, 0.0, 1.0, 2.0, Boundary::Open);
    throw InvalidSpecError("unknown skin-modes preset '" + name + "'");
}

Table skin_table(const model::NNChainSpec& spec) {
    if (spec.boundary != Boundary::Open)
        throw InvalidSpecError("skin-modes needs an open chain");
    const auto modes = spectra::obc_modes(model::nn_to_general(spec));
    Table table;
    add_chain_provenance(table, spec);
    table.columns = {"mode", "re_eps", "im_eps"};
    for (int a = 1; a <= spec.n_sites; ++a)
        table.columns.push_back("n_" + std::to_string(a));
    for (const auto& [eigenvalue, profile] : modes) {
        std::vector<double> row = {static_cast<double>(profile.mode_index),
                                   eigenvalue.real(), eigenvalue.imag()};
        for (int a = 0; a < spec.n_sites; ++a) row.push_back(profile.densities(a));
        table.rows.push_back(std::move(row));
    }
    return table;
}

// ---- dynamics -------------------------------------------------------------

Table dynamics_table(const model::NNChainSpec& nn, const model::ChainSpec& chain,
                     const dynamics::CorrelationState& initial, int source_site,
                     const RealVector& times) {
    const auto record = dynamics::density_trajectory(chain, initial, times);
    Table table;
    add_chain_provenance(table, nn);
    table.provenance.emplace_back("initial",
                                  "single magnon on site " + std::to_string(source_site));
    table.provenance.emplace_back("samples", std::to_string(times.size()));
    table.columns = {"t"};
    for (int a = 1; a <= nn.n_sites; ++a)
        table.columns.push_back("n_" + std::to_string(a));
    table.columns.push_back("total");
    for (Eigen::Index j = 0; j < record.times.size(); ++j) {
        std::vector<double> row = {record.times(j)};
        for (int a = 0; a < nn.n_sites; ++a) row.push_back(record.densities(j, a));
        row.push_back(record.total_number(j));
        table.rows.push_back(std::move(row));
    }
    return table;
}

// ---- liouville-check ------------------------------------------------------

Table combination_table(const model::NNChainSpec& nn, int cutoff, double tolerance) {
    const auto chain = model::nn_to_general(nn);
    const auto fock = liouville::FockSpec::build(nn.n_sites, cutoff);
    const auto report = liouville::combination_rule_check(chain, fock, tolerance);
    Table table;
    add_chain_provenance(table, nn);
    table.provenance.emplace_back("cutoff", std::to_string(cutoff));
    table.provenance.emplace_back("fock_dimension", std::to_string(fock.dimension()));
    table.provenance.emplace_back("tolerance", fmt(report.tolerance));
    table.provenance.emplace_back("max_distance", fmt(report.max_distance));
    table.provenance.emplace_back("orphans", std::to_string(report.n_orphans));
    table.columns = {"re_eigenvalue", "im_eigenvalue", "re_nearest_combination",
                     "im_nearest_combination", "distance"};
    for (Eigen::Index j = 0; j < report.liouvillian_eigenvalues.size(); ++j)
        table.rows.push_back({report.liouvillian_eigenvalues(j).real(),
                              report.liouvillian_eigenvalues(j).imag(),
                              report.matched_combinations(j).real(),
                              report.matched_combinations(j).imag(),
                              report.distances(j)});
    return table;
}

Table equivalence_table(const model::NNChainSpec& nn, int cutoff, int source_site,
                        const RealVector& times) {
    const auto chain = model::nn_to_general(nn);
    const auto fock = liouville::FockSpec::build(nn.n_sites, cutoff);
    const auto initial = dynamics::CorrelationState::single_excitation(nn.n_sites,
                                                                       source_site);
    const auto rho0 = liouville::DensityMatrix::single_excitation(fock, source_site);

    const auto gaussian = dynamics::density_trajectory(chain, initial, times);
    const auto [exact, rho_final] = liouville::evolve_exact(chain, fock, rho0, times);
    (void)rho_final;

    Table table;
    add_chain_provenance(table, nn);
    table.provenance.emplace_back("cutoff", std::to_string(cutoff));
    table.provenance.emplace_back("initial",
                                  "single magnon on site " + std::to_string(source_site));
    table.columns = {"t"};
    for (int a = 1; a <= nn.n_sites; ++a)
        table.columns.push_back("exact_n_" + std::to_string(a));
    for (int a = 1; a <= nn.n_sites; ++a)
        table.columns.push_back("gaussian_n_" + std::to_string(a));
    table.columns.push_back("max_site_difference");

    double worst = 0.0;
    for (Eigen::Index j = 0; j < times.size(); ++j) {
        std::vector<double> row = {times(j)};
        double diff = 0.0;
        for (int a = 0; a < nn.n_sites; ++a) row.push_back(exact.densities(j, a));
        for (int a = 0; a < nn.n_sites; ++a) {
            row.push_back(gaussian.densities(j, a));
            diff = std::max(diff,
                            std::abs(exact.densities(j, a) - gaussian.densities(j, a)));
        }
        row.push_back(diff);
        worst = std::max(worst, diff);
        table.rows.push_back(std::move(row));
    }
    table.provenance.emplace_back("max_difference", fmt(worst));
    return table;
}

// ---- llg-spectrum ---------------------------------------------------------

llg::MultilayerSpec llg_spectrum_preset(const std::string& name) {
    if (name == "fig3b")
        return llg_stack(3, 1.0, 0.5, 0.002, 0.001, 1.0, Boundary::Periodic);
    if (name == "fig3b-no-dmi")
        return llg_stack(3, 1.0, 0.0, 0.002, 0.001, 1.0, Boundary::Periodic);
    if (name == "fig3b-local-damping")
        return llg_stack(3, 1.0, 0.5, 0.002, 0.0, 1.0, Boundary::Periodic);
    throw InvalidSpecError("unknown llg-spectrum preset '" + name + "'");
}

Table llg_spectrum_table(const llg::MultilayerSpec& spec, int n_k) {
    const auto loop = llg::llg_pbc_spectrum(spec, n_k);
    Table table;
    add_llg_provenance(table, spec);
    table.provenance.emplace_back("nk", std::to_string(n_k));
    table.columns = {"k", "re_omega", "im_omega"};
    for (int j = 0; j < n_k; ++j)
        table.rows.push_back(
            {loop.k_values(j), loop.energies(j).real(), loop.energies(j).imag()});
    return table;
}

// ---- llg-dynamics ---------------------------------------------------------

Vec3 tilted(double theta) { return Vec3(std::sin(theta), 0.0, std::cos(theta)); }

struct LlgScenario {
    llg::MultilayerSpec spec;
    llg::MagnetizationState initial;
    double tmax = 0.0;
    int nt = 0;
};

LlgScenario llg_dynamics_preset(const std::string& name) {
    if (name == "single-layer") {
        LlgScenario scenario;
        scenario.spec = llg_stack(1, 0.0, 0.0, 0.1, 0.0, 1.0, Boundary::Open);
        scenario.initial =
            llg::MagnetizationState::validated(0.0, {tilted(kPi / 3.0)});
        scenario.tmax = 20.0;
        scenario.nt = 400;
        return scenario;
    }
    if (name == "bilayer-balanced") {
        LlgScenario scenario;
        scenario.spec = llg_stack(2, 0.0, 0.001, 0.002, 0.001, 1.0, Boundary::Open);
        scenario.initial =
            llg::MagnetizationState::validated(0.0, {tilted(0.3), Vec3::UnitZ()});
        scenario.tmax = 50.0;
        scenario.nt = 500;
        return scenario;
    }
    if (name == "chain") {
        LlgScenario scenario;
        scenario.spec = llg_stack(5, 1.0, 0.5, 0.002, 0.001, 1.0, Boundary::Open);
        std::vector<Vec3> m(5, Vec3::UnitZ());
        m[2] = tilted(0.3);
        scenario.initial = llg::MagnetizationState::validated(0.0, std::move(m));
        scenario.tmax = 30.0;
        scenario.nt = 300;
        return scenario;
    }
    throw InvalidSpecError("unknown llg-dynamics preset '" + name + "'");
}

Table llg_dynamics_table(const LlgScenario& scenario) {
    const auto& spec = scenario.spec;
    const double w_scale = spec.gyro * (spec.mu0 * spec.ms * spec.h_field +
                                        4.0 * (std::abs(spec.j_ex) +
                                               std::abs(spec.d_dmi)) /
                                            spec.ms) +
                           1e-12;
    const double dt_target = 1e-2 / w_scale;
    const RealVector times = linspace(0.0, scenario.tmax, scenario.nt);

    Table table;
    add_llg_provenance(table, spec);
    table.provenance.emplace_back("samples", std::to_string(scenario.nt));
    table.provenance.emplace_back("step", fmt(dt_target));
    table.columns = {"t"};
    for (int a = 1; a <= spec.n_layers; ++a) {
        table.columns.push_back("mx_" + std::to_string(a));
        table.columns.push_back("my_" + std::to_string(a));
        table.columns.push_back("mz_" + std::to_string(a));
    }
    table.columns.push_back("energy");

    llg::MagnetizationState state = scenario.initial;
    double drift = 0.0;
    for (Eigen::Index j = 0; j < times.size(); ++j) {
        if (times(j) > state.time) {
            const double span = times(j) - state.time;
            const int n_steps = std::max(1, static_cast<int>(std::ceil(span / dt_target)));
            auto trajectory =
                llg::integrate(spec, state, span / n_steps, state.time + span);
            state = trajectory.states.back();
            drift = std::max(drift, trajectory.max_norm_drift);
        }
        std::vector<double> row = {times(j)};
        for (const Vec3& m : state.m) {
            row.push_back(m.x());
            row.push_back(m.y());
            row.push_back(m.z());
        }
        row.push_back(llg::multilayer_energy(spec, state));
        table.rows.push_back(std::move(row));
    }
    table.provenance.emplace_back("max_norm_drift", fmt(drift));
    return table;
}

// ---- plumbing -------------------------------------------------------------

struct Inputs {
    std::optional<config::ConfigFile> cfg;
    config::RunOverrides overrides;
};

Inputs load_inputs(const RunConfig& config) {
    Inputs inputs;
    if (config.preset && config.config_path)
        throw InvalidSpecError("give either --preset or --config, not both");
    if (config.config_path) {
        inputs.cfg = config::parse_config_file(*config.config_path);
        inputs.overrides = config::run_overrides_from_config(*inputs.cfg);
    }
    return inputs;
}

int pick_int(const std::optional<int>& flag, const std::optional<int>& file_value,
             int fallback) {
    if (flag) return *flag;
    if (file_value) return *file_value;
    return fallback;
}

double pick_double(const std::optional<double>& flag,
                   const std::optional<double>& file_value, double fallback) {
    if (flag) return *flag;
    if (file_value) return *file_value;
    return fallback;
}

void require_source(const RunConfig& config) {
    if (!config.preset && !config.config_path)
        throw InvalidSpecError("this command needs --preset or --config");
}

// Flag wins over the config file's [run] format; csv is the default.
Format effective_format(const RunConfig& config, const Inputs& inputs) {
    if (config.format) return *config.format;
    if (inputs.overrides.format)
        return *inputs.overrides.format == "json" ? Format::Json : Format::Csv;
    return Format::Csv;
}

void emit_table(const RunConfig& config, const Inputs& inputs, const Table& base,
                Command command) {
    if (config.out_path.empty())
        throw InvalidSpecError("this command needs --out <file>");
    Table table = base;
    table.provenance.insert(table.provenance.begin(),
                            {std::string("command"), command_name(command)});
    if (config.preset)
        table.provenance.insert(table.provenance.begin() + 1,
                                {std::string("preset"), *config.preset});
    const Format format = effective_format(config, inputs);
    const std::string content = format == Format::Csv
                                    ? output::render_csv(table)
                                    : output::render_json(table, command_name(command));
    output::atomic_write(config.out_path, content);
}

int central_site(int n) { return (n + 1) / 2; }

int dispatch(const RunConfig& config) {
    Inputs inputs = load_inputs(config);

    switch (config.command) {
    case Command::Spectrum: {
        require_source(config);
        const auto spec = config.preset ? spectrum_preset(*config.preset)
                                        : config::chain_from_config(*inputs.cfg);
        const int n_k = pick_int(config.nk, inputs.overrides.nk, 256);
        emit_table(config, inputs, spectrum_table(spec, n_k), config.command);
        return 0;
    }
    case Command::SkinModes: {
        require_source(config);
        const auto spec = config.preset ? skin_preset(*config.preset)
                                        : config::chain_from_config(*inputs.cfg);
        emit_table(config, inputs, skin_table(spec), config.command);
        return 0;
    }
    case Command::Dynamics: {
        require_source(config);
        if (config.preset) {
            const std::string& name = *config.preset;
            if (name.rfind("fig2", 0) != 0 || name.size() != 5)
                throw InvalidSpecError("unknown dynamics preset '" + name + "'");
            auto preset = dynamics::figure2_preset(name.substr(4));
            RealVector times = preset.times;
            if (config.tmax || config.nt || inputs.overrides.tmax ||
                inputs.overrides.nt) {
                const double tmax = pick_double(config.tmax, inputs.overrides.tmax, 4.0);
                const int nt = pick_int(config.nt, inputs.overrides.nt, 200);
                if (nt < 2) throw InvalidSpecError("nt must be >= 2");
                if (!(tmax > 0.0)) throw InvalidSpecError("tmax must be > 0");
                times = linspace(0.0, tmax, nt);
            }
            emit_table(config, inputs,
                       dynamics_table(preset.nn, preset.chain, preset.initial,
                                      preset.source_site, times),
                       config.command);
            return 0;
        }
        const auto nn = config::chain_from_config(*inputs.cfg);
        const auto chain = model::nn_to_general(nn);
        const double tmax = pick_double(config.tmax, inputs.overrides.tmax, 4.0);
        const int nt = pick_int(config.nt, inputs.overrides.nt, 200);
        if (nt < 2) throw InvalidSpecError("nt must be >= 2");
        if (!(tmax > 0.0)) throw InvalidSpecError("tmax must be > 0");
        const int source = central_site(nn.n_sites);
        const auto initial =
            dynamics::CorrelationState::single_excitation(nn.n_sites, source);
        emit_table(config, inputs,
                   dynamics_table(nn, chain, initial, source,
                                  linspace(0.0, tmax, nt)),
                   config.command);
        return 0;
    }
    case Command::LiouvilleCheck: {
        require_source(config);
        if (config.preset && *config.preset == "equivalence-n3") {
            const auto nn = nn_chain(3, 1.0, 1.0, 1.0, 2.0, Boundary::Open);
            const int cutoff = pick_int(config.cutoff, inputs.overrides.cutoff, 1);
            const double tmax = pick_double(config.tmax, inputs.overrides.tmax, 2.0);
            const int nt = pick_int(config.nt, inputs.overrides.nt, 50);
            if (nt < 2) throw InvalidSpecError("nt must be >= 2");
            emit_table(config, inputs,
                       equivalence_table(nn, cutoff, 2, linspace(0.0, tmax, nt)),
                       config.command);
            return 0;
        }
        model::NNChainSpec nn;
        int default_cutoff = 2;
        if (config.preset) {
            if (*config.preset != "combination-n2")
                throw InvalidSpecError("unknown liouville-check preset '" +
                                       *config.preset + "'");
            nn = nn_chain(2, 1.0, 1.0, 1.0, 2.0, Boundary::Open);
        } else {
            nn = config::chain_from_config(*inputs.cfg);
        }
        const int cutoff = pick_int(config.cutoff, inputs.overrides.cutoff,
                                    default_cutoff);
        emit_table(config, inputs, combination_table(nn, cutoff, 1e-8),
                   config.command);
        return 0;
    }
    case Command::LlgSpectrum: {
        require_source(config);
        const auto spec = config.preset ? llg_spectrum_preset(*config.preset)
                                        : config::llg_from_config(*inputs.cfg);
        const int n_k = pick_int(config.nk, inputs.overrides.nk, 256);
        emit_table(config, inputs, llg_spectrum_table(spec, n_k), config.command);
        return 0;
    }
    case Command::LlgDynamics: {
        require_source(config);
        LlgScenario scenario;
        if (config.preset) {
            scenario = llg_dynamics_preset(*config.preset);
        } else {
            scenario.spec = config::llg_from_config(*inputs.cfg);
            std::vector<Vec3> m(static_cast<size_t>(scenario.spec.n_layers),
                                Vec3::UnitZ());
            m[static_cast<size_t>(central_site(scenario.spec.n_layers) - 1)] =
                tilted(0.3);
            scenario.initial = llg::MagnetizationState::validated(0.0, std::move(m));
            scenario.tmax = 30.0;
            scenario.nt = 300;
        }
        scenario.tmax = pick_double(config.tmax, inputs.overrides.tmax, scenario.tmax);
        scenario.nt = pick_int(config.nt, inputs.overrides.nt, scenario.nt);
        if (scenario.nt < 2) throw InvalidSpecError("nt must be >= 2");
        if (!(scenario.tmax > 0.0)) throw InvalidSpecError("tmax must be > 0");
        emit_table(config, inputs, llg_dynamics_table(scenario), config.command);
        return 0;
    }
    case Command::Verify: {
        if (config.preset || config.config_path)
            throw InvalidSpecError("verify takes no --preset or --config");
        namespace fs = std::filesystem;
        const fs::path scratch =
            fs::temp_directory_path() /
            ("nhse-verify-" + std::to_string(config.seed));
        const auto results = verify::run_all(config.seed, scratch.string());
        const int failures = verify::report(results);
        if (!config.out_path.empty()) {
            Table table;
            table.provenance.emplace_back("command", "verify");
            for (const auto& r : results)
                table.provenance.emplace_back(
                    "check-" + std::to_string(r.number),
                    r.name + ": " + (r.passed ? "pass" : "FAIL") + "; " + r.detail);
            table.columns = {"check", "passed"};
            for (const auto& r : results)
                table.rows.push_back(
                    {static_cast<double>(r.number), r.passed ? 1.0 : 0.0});
            const std::string content =
                config.format.value_or(Format::Csv) == Format::Csv
                    ? output::render_csv(table)
                    : output::render_json(table, "verify");
            output::atomic_write(config.out_path, content);
        }
        return failures == 0 ? 0 : 4;
    }
    }
    throw InvalidSpecError("unknown command");
}

} // namespace

int run(const RunConfig& config) {
    try {
        return dispatch(config);
    } catch (const InvalidSpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 3;
    }
}

std::vector<std::string> preset_names(Command command) {
    switch (command) {
    case Command::Spectrum:
        return {"fig1c-unidirectional", "fig1c-nonreciprocal", "fig1c-reciprocal"};
    case Command::SkinModes:
        return {"fig1b", "fig1b-reciprocal"};
    case Command::Dynamics:
        return {"fig2a", "fig2b", "fig2c", "fig2d"};
    case Command::LiouvilleCheck:
        return {"combination-n2", "equivalence-n3"};
    case Command::LlgSpectrum:
        return {"fig3b", "fig3b-no-dmi", "fig3b-local-damping"};
    case Command::LlgDynamics:
        return {"single-layer", "bilayer-balanced", "chain"};
    case Command::Verify:
        return {};
    }
    return {};
}

std::optional<Command> command_from_name(const std::string& name) {
    if (name == "spectrum") return Command::Spectrum;
    if (name == "skin-modes") return Command::SkinModes;
    if (name == "dynamics") return Command::Dynamics;
    if (name == "liouville-check") return Command::LiouvilleCheck;
    if (name == "llg-spectrum") return Command::LlgSpectrum;
    if (name == "llg-dynamics") return Command::LlgDynamics;
    if (name == "verify") return Command::Verify;
    return std::nullopt;
}

std::string command_name(Command command) {
    switch (command) {
    case Command::Spectrum: return "spectrum";
    case Command::SkinModes: return "skin-modes";
    case Command::Dynamics: return "dynamics";
    case Command::LiouvilleCheck: return "liouville-check";
    case Command::LlgSpectrum: return "llg-spectrum";
    case Command::LlgDynamics: return "llg-dynamics";
    case Command::Verify: return "verify";
    }
    return "unknown";
}

} // namespace nhse::runner
