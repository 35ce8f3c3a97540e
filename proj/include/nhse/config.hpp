#pragma once

#include "nhse/llg.hpp"
#include "nhse/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nhse::config {

/// One parsed `key = value` entry with its source line (for diagnostics).
struct Entry {
    std::string key;
    std::string value;
    int line = 0;
};

/// Parsed config file: `key = value` lines, `#` comments, optional
/// `[section]` headers. Keys outside any section land in section "".
struct ConfigFile {
    std::map<std::string, std::vector<Entry>> sections;

    bool has_section(const std::string& name) const;
};

/// Parse config text; duplicate keys within a section and malformed lines
/// are errors (messages carry line numbers).
ConfigFile parse_config_text(const std::string& text);
ConfigFile parse_config_file(const std::string& path);

/// Run-level overrides from an optional [run] section.
struct RunOverrides {
    std::optional<int> nk;
    std::optional<double> tmax;
    std::optional<int> nt;
    std::optional<int> cutoff;
    std::optional<std::string> format;
};

/// Interpret the [chain] (or top-level) keys N, s, omega, J, D, Gamma,
/// Gamma0, boundary as a nearest-neighbour chain. Unknown keys are hard
/// errors listing the accepted set.
model::NNChainSpec chain_from_config(const ConfigFile& cfg);

/// Interpret the [llg] (or top-level) keys N, J, D, H, alpha_l, alpha_nl,
/// Ms, gamma, mu0, boundary as a multilayer stack.
llg::MultilayerSpec llg_from_config(const ConfigFile& cfg);

RunOverrides run_overrides_from_config(const ConfigFile& cfg);

} // namespace nhse::config
