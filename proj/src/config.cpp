#include "nhse/config.hpp"

#include "nhse/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace nhse::config {

namespace {

std::string trim(const std::string& s) {
    size_t begin = 0;
    size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw InvalidSpecError("config line " + std::to_string(line) + ": " + what);
}

const Entry* find(const std::vector<Entry>& entries, const std::string& key) {
    for (const Entry& e : entries)
        if (e.key == key) return &e;
    return nullptr;
}

void reject_unknown(const std::vector<Entry>& entries,
                    const std::vector<std::string>& accepted,
                    const std::string& context) {
    for (const Entry& e : entries) {
        if (std::find(accepted.begin(), accepted.end(), e.key) != accepted.end())
            continue;
        std::string valid;
        for (const std::string& k : accepted) {
            if (!valid.empty()) valid += ", ";
            valid += k;
        }
        fail(e.line, "unknown " + context + " key '" + e.key +
                         "' (accepted: " + valid + ")");
    }
}

double parse_double(const Entry& e) {
    size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(e.value, &consumed);
    } catch (const std::exception&) {
        fail(e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
    }
    if (consumed != e.value.size())
        fail(e.line, "'" + e.key + "' has trailing characters in '" + e.value + "'");
    return value;
}

int parse_int(const Entry& e) {
    size_t consumed = 0;
    long value = 0;
    try {
        value = std::stol(e.value, &consumed);
    } catch (const std::exception&) {
        fail(e.line, "'" + e.key + "' expects an integer, got '" + e.value + "'");
    }
    if (consumed != e.value.size())
        fail(e.line, "'" + e.key + "' has trailing characters in '" + e.value + "'");
    if (value < -1000000000L || value > 1000000000L)
        fail(e.line, "'" + e.key + "' out of range");
    return static_cast<int>(value);
}

Boundary parse_boundary(const Entry& e) {
    if (e.value == "open") return Boundary::Open;
    if (e.value == "periodic") return Boundary::Periodic;
    fail(e.line, "'boundary' must be 'open' or 'periodic', got '" + e.value + "'");
}

// Section lookup honoring the top-level fallback: keys may live either in
// the named section or, when that section is absent, at top level.
const std::vector<Entry>& section_or_toplevel(const ConfigFile& cfg,
                                              const std::string& name) {
    static const std::vector<Entry> empty;
    auto it = cfg.sections.find(name);
    if (it != cfg.sections.end()) return it->second;
    it = cfg.sections.find("");
    if (it != cfg.sections.end()) return it->second;
    return empty;
}

} // namespace

bool ConfigFile::has_section(const std::string& name) const {
    return sections.find(name) != sections.end();
}

ConfigFile parse_config_text(const std::string& text) {
    ConfigFile cfg;
    std::string section;
    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail(line_no, "unterminated section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(line_no, "empty section name");
            cfg.sections[section];
            continue;
        }

        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(line_no, "expected 'key = value', got '" + line + "'");
        Entry entry;
        entry.key = trim(line.substr(0, eq));
        entry.value = trim(line.substr(eq + 1));
        entry.line = line_no;
        if (entry.key.empty()) fail(line_no, "missing key before '='");
        if (entry.value.empty()) fail(line_no, "missing value for '" + entry.key + "'");
        if (find(cfg.sections[section], entry.key))
            fail(line_no, "duplicate key '" + entry.key + "'");
        cfg.sections[section].push_back(std::move(entry));
    }
    return cfg;
}

ConfigFile parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidSpecError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

model::NNChainSpec chain_from_config(const ConfigFile& cfg) {
    const auto& entries = section_or_toplevel(cfg, "chain");
    reject_unknown(entries, {"N", "s", "omega", "J", "D", "Gamma", "Gamma0", "boundary"},
                   "chain");

    model::NNChainSpec spec;
    bool have_n = false;
    for (const Entry& e : entries) {
        if (e.key == "N") {
            spec.n_sites = parse_int(e);
            have_n = true;
        } else if (e.key == "s") {
            spec.spin_s = parse_double(e);
        } else if (e.key == "omega") {
            spec.omega = parse_double(e);
        } else if (e.key == "J") {
            spec.j_sym = parse_double(e);
        } else if (e.key == "D") {
            spec.d_asym = parse_double(e);
        } else if (e.key == "Gamma") {
            spec.gamma = parse_double(e);
        } else if (e.key == "Gamma0") {
            spec.gamma0 = parse_double(e);
        } else if (e.key == "boundary") {
            spec.boundary = parse_boundary(e);
        }
    }
    if (!have_n) throw InvalidSpecError("config: chain key 'N' is required");
    return spec;
}

llg::MultilayerSpec llg_from_config(const ConfigFile& cfg) {
    const auto& entries = section_or_toplevel(cfg, "llg");
    reject_unknown(entries,
                   {"N", "J", "D", "H", "alpha_l", "alpha_nl", "Ms", "gamma", "mu0",
                    "boundary"},
                   "llg");

    llg::MultilayerSpec spec;
    bool have_n = false;
    for (const Entry& e : entries) {
        if (e.key == "N") {
            spec.n_layers = parse_int(e);
            have_n = true;
        } else if (e.key == "J") {
            spec.j_ex = parse_double(e);
        } else if (e.key == "D") {
            spec.d_dmi = parse_double(e);
        } else if (e.key == "H") {
            spec.h_field = parse_double(e);
        } else if (e.key == "alpha_l") {
            spec.alpha_l = parse_double(e);
        } else if (e.key == "alpha_nl") {
            spec.alpha_nl = parse_double(e);
        } else if (e.key == "Ms") {
            spec.ms = parse_double(e);
        } else if (e.key == "gamma") {
            spec.gyro = parse_double(e);
        } else if (e.key == "mu0") {
            spec.mu0 = parse_double(e);
        } else if (e.key == "boundary") {
            spec.boundary = parse_boundary(e);
        }
    }
    if (!have_n) throw InvalidSpecError("config: llg key 'N' is required");
    return llg::MultilayerSpec::validated(spec);
}

RunOverrides run_overrides_from_config(const ConfigFile& cfg) {
    RunOverrides overrides;
    auto it = cfg.sections.find("run");
    if (it == cfg.sections.end()) return overrides;
    reject_unknown(it->second, {"nk", "tmax", "nt", "cutoff", "format"}, "run");
    for (const Entry& e : it->second) {
        if (e.key == "nk") {
            overrides.nk = parse_int(e);
        } else if (e.key == "tmax") {
            overrides.tmax = parse_double(e);
        } else if (e.key == "nt") {
            overrides.nt = parse_int(e);
        } else if (e.key == "cutoff") {
            overrides.cutoff = parse_int(e);
        } else if (e.key == "format") {
            if (e.value != "csv" && e.value != "json")
                fail(e.line, "'format' must be 'csv' or 'json'");
            overrides.format = e.value;
        }
    }
    return overrides;
}

} // namespace nhse::config
