#include "evfront/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "evfront/errors.hpp"

namespace evfront::cli {

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const Cell& c) {
    struct V {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double d) const { return fmt17(d); }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
    };
    return std::visit(V{}, c);
}

void write_csv(std::ostream& os, const Table& t, const nlohmann::json& config) {
    os << "# evfront " << t.name << " v" << t.version << '\n';
    os << "# tool " << EVFRONT_VERSION << '\n';
    os << "# config " << config.dump() << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
        os << '\n';
    }
}

nlohmann::ordered_json table_json(const Table& t, const nlohmann::json& config) {
    nlohmann::ordered_json j;
    j["format"] = "evfront " + t.name;
    j["format_version"] = t.version;
    j["tool_version"] = EVFRONT_VERSION;
    j["config"] = nlohmann::ordered_json::parse(config.dump());
    j["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            const std::string& k = t.columns[i];
            if (std::holds_alternative<std::monostate>(c)) r[k] = nullptr;
            else if (auto d = std::get_if<double>(&c)) r[k] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(fmt17(*d));
            else if (auto n = std::get_if<long long>(&c)) r[k] = *n;
            else if (auto b = std::get_if<bool>(&c)) r[k] = *b;
            else r[k] = std::get<std::string>(c);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

nlohmann::json embedded_config(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return nlohmann::json::parse(text).at("config");
    std::istringstream in(text);
    std::string line;
    const std::string tag = "# config ";
    while (std::getline(in, line)) {
        if (line.rfind(tag, 0) == 0) return nlohmann::json::parse(line.substr(tag.size()));
        if (line.empty() || line[0] != '#') break;
    }
    throw ConfigError("record has no embedded config");
}

}  // namespace evfront::cli
