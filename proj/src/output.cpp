#include "loglevy/output.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace loglevy {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_quote(const std::string& field) {
    if (!needs_quoting(field)) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

double parse_number(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument("malformed number '" + s + "'");
    return v;
}

}  // namespace

std::string to_csv(const OutputRecord& record) {
    std::ostringstream os;
    os << "# schema_version," << csv_quote(record.schema_version) << "\n";
    os << "# command," << csv_quote(record.command) << "\n";
    for (const auto& [key, value] : record.parameters)
        os << "# parameter," << csv_quote(key) << "," << csv_quote(value) << "\n";
    for (std::size_t i = 0; i < record.columns.size(); ++i)
        os << (i ? "," : "") << csv_quote(record.columns[i]);
    os << "\n";
    for (const auto& row : record.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_number(row[i]);
        os << "\n";
    }
    return os.str();
}

OutputRecord record_from_csv(const std::string& text) {
    OutputRecord record;
    std::istringstream is(text);
    std::string line;
    bool saw_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            auto fields = csv_split(line.substr(2));
            if (fields.empty()) continue;
            if (fields[0] == "schema_version" && fields.size() == 2)
                record.schema_version = fields[1];
            else if (fields[0] == "command" && fields.size() == 2)
                record.command = fields[1];
            else if (fields[0] == "parameter" && fields.size() == 3)
                record.parameters[fields[1]] = fields[2];
            else
                throw std::invalid_argument("unrecognized CSV preamble: " + line);
            continue;
        }
        auto fields = csv_split(line);
        if (!saw_header) {
            record.columns = fields;
            saw_header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_number(f));
        if (row.size() != record.columns.size())
            throw std::invalid_argument("CSV row width does not match header");
        record.rows.push_back(std::move(row));
    }
    if (!saw_header) throw std::invalid_argument("CSV input has no header row");
    return record;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace

std::string to_json(const OutputRecord& record) {
    std::ostringstream os;
    os << "{\"schema_version\":\"" << json_escape(record.schema_version) << "\",";
    os << "\"command\":\"" << json_escape(record.command) << "\",";
    os << "\"parameters\":{";
    bool first = true;
    for (const auto& [key, value] : record.parameters) {
        if (!first) os << ",";
        first = false;
        os << "\"" << json_escape(key) << "\":\"" << json_escape(value) << "\"";
    }
    os << "},\"columns\":[";
    for (std::size_t i = 0; i < record.columns.size(); ++i)
        os << (i ? "," : "") << "\"" << json_escape(record.columns[i]) << "\"";
    os << "],\"rows\":[";
    for (std::size_t r = 0; r < record.rows.size(); ++r) {
        os << (r ? "," : "") << "[";
        const auto& row = record.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_number(row[i]);
        os << "]";
    }
    os << "]}";
    return os.str();
}

OutputRecord record_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    OutputRecord record;
    record.schema_version = j.at("schema_version").get<std::string>();
    record.command = j.at("command").get<std::string>();
    for (const auto& [key, value] : j.at("parameters").items())
        record.parameters[key] = value.get<std::string>();
    for (const auto& col : j.at("columns")) record.columns.push_back(col.get<std::string>());
    for (const auto& row : j.at("rows")) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(v.get<double>());
        if (r.size() != record.columns.size())
            throw std::invalid_argument("JSON row width does not match columns");
        record.rows.push_back(std::move(r));
    }
    return record;
}

}  // namespace loglevy
