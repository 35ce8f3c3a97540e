#include "nhse/runner.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using nhse::runner::Command;
using nhse::runner::Format;
using nhse::runner::RunConfig;

struct SubState {
    CLI::App* cli = nullptr;
    Command command = Command::Verify;
    std::string preset;
    std::string config_path;
    std::string out_path;
    std::string format;
    int nk = 0;
    double tmax = 0.0;
    int nt = 0;
    int cutoff = 0;
    std::uint64_t seed = 12345;
};

bool given(CLI::App* cli, const std::string& name) {
    const CLI::Option* option = cli->get_option_no_throw(name);
    return option != nullptr && option->count() > 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipative spin-chain spectra, dynamics, and macrospin "
                 "multilayer tools"};
    app.require_subcommand(1);

    std::vector<std::unique_ptr<SubState>> subs;
    const auto add = [&](Command command, const std::string& help) -> SubState& {
        subs.push_back(std::make_unique<SubState>());
        SubState& s = *subs.back();
        s.command = command;
        s.cli = app.add_subcommand(nhse::runner::command_name(command), help);
        if (command != Command::Verify) {
            const auto presets = nhse::runner::preset_names(command);
            auto* preset =
                s.cli->add_option("--preset", s.preset,
                                  "scenario preset (" +
                                      CLI::detail::join(presets, ", ") + ")")
                    ->check(CLI::IsMember(presets));
            auto* config = s.cli->add_option("--config", s.config_path,
                                             "key = value model description file");
            preset->excludes(config);
            config->excludes(preset);
        }
        s.cli->add_option("--out", s.out_path, "output file path");
        s.cli->add_option("--format", s.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        return s;
    };

    {
        SubState& s =
            add(Command::Spectrum, "Bloch dispersion loop of a periodic chain");
        s.cli->add_option("--nk", s.nk, "number of momentum samples");
    }
    add(Command::SkinModes, "open-chain eigenmodes and density profiles");
    {
        SubState& s = add(Command::Dynamics, "site-resolved magnon density evolution");
        s.cli->add_option("--tmax", s.tmax, "evolution span");
        s.cli->add_option("--nt", s.nt, "number of time samples");
    }
    {
        SubState& s = add(Command::LiouvilleCheck,
                          "truncated master-equation spectrum and equivalence runs");
        s.cli->add_option("--cutoff", s.cutoff, "total-occupation truncation");
        s.cli->add_option("--tmax", s.tmax, "evolution span (equivalence preset)");
        s.cli->add_option("--nt", s.nt, "time samples (equivalence preset)");
    }
    {
        SubState& s =
            add(Command::LlgSpectrum, "linearized multilayer Bloch frequencies");
        s.cli->add_option("--nk", s.nk, "number of momentum samples");
    }
    {
        SubState& s = add(Command::LlgDynamics, "macrospin multilayer time evolution");
        s.cli->add_option("--tmax", s.tmax, "evolution span");
        s.cli->add_option("--nt", s.nt, "number of time samples");
    }
    {
        SubState& s = add(Command::Verify, "run the full verification suite");
        s.cli->add_option("--seed", s.seed, "seed for the randomized sweep");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: invalid-spec: " << e.what() << "\n";
        return 2;
    }

    for (const auto& sub : subs) {
        if (!sub->cli->parsed()) continue;
        RunConfig config;
        config.command = sub->command;
        config.out_path = sub->out_path;
        if (given(sub->cli, "--preset")) config.preset = sub->preset;
        if (given(sub->cli, "--config")) config.config_path = sub->config_path;
        if (given(sub->cli, "--format"))
            config.format = sub->format == "json" ? Format::Json : Format::Csv;
        if (given(sub->cli, "--nk")) config.nk = sub->nk;
        if (given(sub->cli, "--tmax")) config.tmax = sub->tmax;
        if (given(sub->cli, "--nt")) config.nt = sub->nt;
        if (given(sub->cli, "--cutoff")) config.cutoff = sub->cutoff;
        if (given(sub->cli, "--seed")) config.seed = sub->seed;
        return nhse::runner::run(config);
    }
    return 2;
}
