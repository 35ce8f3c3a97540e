#include "nhse/output.hpp"

#include "nhse/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

namespace nhse::output {

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string render_csv(const Table& table) {
    std::string out;
    for (const auto& [key, value] : table.provenance)
        out += "# " + key + ": " + value + "\n";
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ",";
        out += table.columns[c];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw NumericalError("row width does not match the header");
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += format_double(row[c]);
        }
        out += "\n";
    }
    return out;
}

std::string render_json(const Table& table, const std::string& command) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["command"] = command;
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.provenance) provenance[key] = value;
    doc["provenance"] = provenance;
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw NumericalError("row width does not match the header");
        nlohmann::ordered_json out_row = nlohmann::ordered_json::array();
        // Render through the fixed decimal formatter so CSV and JSON carry
        // the same digits and repeated runs stay byte-identical.
        for (double v : row) {
            if (!std::isfinite(v))
                throw NumericalError("non-finite value in output table");
            out_row.push_back(nlohmann::ordered_json::parse(format_double(v)));
        }
        rows.push_back(std::move(out_row));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);

    std::random_device rd;
    const fs::path tmp =
        dir / (target.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidSpecError("cannot write to '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            fs::remove(tmp, ec);
            throw NumericalError("write failed for '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw NumericalError("atomic rename onto '" + path + "' failed");
    }
}

} // namespace nhse::output
