#pragma once

#include <map>
#include <string>
#include <vector>

namespace loglevy {

// Tabular result of one CLI command. Writers are byte-deterministic:
// numbers use up to 17 significant digits (exact double round-trip), column
// and row order are fixed, parameters are sorted by key.
struct OutputRecord {
    std::string schema_version = "1";
    std::string command;
    std::map<std::string, std::string> parameters;  // echoes inputs + derived values
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    bool operator==(const OutputRecord&) const = default;
};

// %.17g rendering used for every number the CLI emits.
std::string format_number(double v);

// CSV: '#'-prefixed preamble records (schema_version, command, parameters)
// followed by an RFC-4180 table with a header row.
std::string to_csv(const OutputRecord& record);
OutputRecord record_from_csv(const std::string& text);

// JSON object with keys schema_version, command, parameters, columns, rows.
std::string to_json(const OutputRecord& record);
OutputRecord record_from_json(const std::string& text);

}  // namespace loglevy
