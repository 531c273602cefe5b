#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace evfront::cli {

// An empty cell is written as an empty CSV field and as null in JSON.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
    std::string name;  // command that produced it
    int version = 1;   // bumped whenever the column layout changes
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string fmt17(double v);
std::string csv_field(const Cell& c);

// Header: "# evfront <name> v<version>", "# tool <version>", "# config <compact json>", column names.
void write_csv(std::ostream& os, const Table& t, const nlohmann::json& config);
nlohmann::ordered_json table_json(const Table& t, const nlohmann::json& config);

// Extracts the embedded config from a CSV or JSON record written above.
nlohmann::json embedded_config(const std::string& record_text);

}  // namespace evfront::cli
