#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nhse::output {

/// Tabular artifact with provenance comments. Rendering is deterministic:
/// fixed column order, 17-significant-digit floats, LF line endings, no
/// timestamps, so identical inputs produce byte-identical files.
struct Table {
    std::vector<std::pair<std::string, std::string>> provenance;  // ordered key/value
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Shortest exact decimal for a double (17 significant digits).
std::string format_double(double v);

/// CSV: `# key: value` comment lines, then a header row, then data rows.
std::string render_csv(const Table& table);

/// JSON mirror of the CSV content with a schema_version field.
std::string render_json(const Table& table, const std::string& command);

/// Write via a temporary file in the target directory plus an atomic
/// rename, so a failed run never leaves a partial artifact.
void atomic_write(const std::string& path, const std::string& content);

} // namespace nhse::output
