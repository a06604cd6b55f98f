#include "qaudit/report_io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qaudit {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
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

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

std::string report_to_json(const AuditReport& report) {
    std::ostringstream os;
    os << "{\n  \"metadata\": {\n";
    os << "    \"tool_version\": \"" << json_escape(report.metadata.tool_version)
       << "\",\n";
    os << "    \"timestamp\": \"" << json_escape(report.metadata.timestamp)
       << "\",\n";
    os << "    \"seed\": " << report.metadata.seed << ",\n";
    os << "    \"tol\": " << format_double(report.metadata.tol) << ",\n";
    os << "    \"n_max\": " << report.metadata.n_max << ",\n";
    os << "    \"sample_count\": " << report.metadata.sample_count << ",\n";
    os << "    \"max_degree\": " << report.metadata.max_degree << "\n  },\n";
    os << "  \"q_grid\": [";
    for (std::size_t i = 0; i < report.q_grid.size(); ++i)
        os << (i ? ", " : "") << format_double(report.q_grid[i]);
    os << "],\n  \"checks\": [\n";
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const AuditCheck& c = report.checks[i];
        os << "    {\"id\": \"" << json_escape(c.id) << "\", \"description\": \""
           << json_escape(c.description)
           << "\", \"measured\": " << format_double(c.measured)
           << ", \"expected\": " << format_double(c.expected)
           << ", \"tolerance\": " << format_double(c.tolerance)
           << ", \"status\": \"" << to_string(c.status) << "\"}"
           << (i + 1 < report.checks.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

AuditReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("report_from_json: ") + e.what());
    }
    try {
        AuditReport r;
        const auto& m = j.at("metadata");
        r.metadata.tool_version = m.at("tool_version").get<std::string>();
        r.metadata.timestamp = m.at("timestamp").get<std::string>();
        r.metadata.seed = m.at("seed").get<std::uint64_t>();
        r.metadata.tol = m.at("tol").get<double>();
        r.metadata.n_max = m.at("n_max").get<int>();
        r.metadata.sample_count = m.at("sample_count").get<int>();
        r.metadata.max_degree = m.at("max_degree").get<int>();
        r.q_grid = j.at("q_grid").get<std::vector<double>>();
        for (const auto& jc : j.at("checks")) {
            AuditCheck c;
            c.id = jc.at("id").get<std::string>();
            c.description = jc.at("description").get<std::string>();
            c.measured = jc.at("measured").get<double>();
            c.expected = jc.at("expected").get<double>();
            c.tolerance = jc.at("tolerance").get<double>();
            c.status = check_status_from_string(jc.at("status").get<std::string>());
            r.checks.push_back(std::move(c));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("report_from_json: ") + e.what());
    }
}

std::string report_to_csv(const AuditReport& report) {
    std::ostringstream os;
    os << "id,description,measured,expected,tolerance,status\n";
    for (const AuditCheck& c : report.checks) {
        os << csv_escape(c.id) << "," << csv_escape(c.description) << ","
           << format_double(c.measured) << "," << format_double(c.expected)
           << "," << format_double(c.tolerance) << "," << to_string(c.status)
           << "\n";
    }
    return os.str();
}

}  // namespace qaudit
