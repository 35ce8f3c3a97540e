#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nhse::runner {

enum class Command {
    Spectrum,
    SkinModes,
    Dynamics,
    LiouvilleCheck,
    LlgSpectrum,
    LlgDynamics,
    Verify,
};

enum class Format { Csv, Json };

/// One fully specified invocation. Exactly one of preset / config_path must
/// be set for the model-driven commands; verify needs neither.
struct RunConfig {
    Command command = Command::Verify;
    std::optional<std::string> preset;
    std::optional<std::string> config_path;
    std::string out_path;  // empty: stdout for verify, error otherwise
    std::optional<Format> format;  // unset: config [run] format if any, else csv
    std::optional<int> nk;
    std::optional<double> tmax;
    std::optional<int> nt;
    std::optional<int> cutoff;
    std::uint64_t seed = 12345;
};

/// Execute a command end to end (model construction, computation, artifact
/// rendering, atomic write). Returns the process exit code: 0 success,
/// 2 invalid spec, 3 numerical failure, 4 verification failure. Error text
/// goes to stderr as one `error: <category>: <message>` line.
int run(const RunConfig& config);

/// Preset names accepted by a command, for help text and validation.
std::vector<std::string> preset_names(Command command);

std::optional<Command> command_from_name(const std::string& name);
std::string command_name(Command command);

} // namespace nhse::runner
