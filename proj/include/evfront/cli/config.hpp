#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evfront/dispersion.hpp"
#include "evfront/oracle.hpp"

namespace evfront::cli {

enum class Method { Oracle, Analytic, Both };
enum class Format { Csv, Json };

const char* to_string(Method m);
const char* to_string(Format f);

// Physical parameters as the user writes them; hbar is divided out by core().
struct ModelConfig {
    DispersionKind kind = DispersionKind::NonRelativistic;
    double mass = 1.0;
    double potential = 0.0;  // energy
    double light_speed = 1.0;
    double hbar = 1.0;

    DispersionModel core() const;
    bool operator==(const ModelConfig&) const = default;
};

struct SourceConfig {
    cplx amplitude{1.0, 0.0};
    double carrier = 0.0;  // omega_0, a frequency
    std::optional<double> half_width;

    SourceSpec core() const;
    bool operator==(const SourceConfig&) const = default;
};

struct GridConfig {
    std::vector<double> x;
    std::vector<double> t;
    bool operator==(const GridConfig&) const = default;
};

struct SweepConfig {
    std::vector<double> omega0;   // kinetic frequencies Omega_0 = omega_0 - V/hbar
    bool relative_to_rest = false;  // values are multiples of mc^2/hbar
    double x = 1.0;
    bool operator==(const SweepConfig&) const = default;
};

struct PhaseMapConfig {
    double x = 1.0;
    double t = 1.0;
    double re_min = -1.0, re_max = 1.0, im_min = -1.0, im_max = 1.0;
    int nx = 201, ny = 201;
    std::vector<double> levels;
    std::vector<std::string> quantities{"re"};        // "re", "im"
    std::vector<std::string> sheets{"upper", "lower"};
    bool operator==(const PhaseMapConfig&) const = default;
};

struct OutputConfig {
    Format format = Format::Csv;
    std::string path;  // empty: standard output
    bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
    ModelConfig model;
    std::optional<SourceConfig> source;
    std::optional<GridConfig> grid;
    Method method = Method::Oracle;
    QuadratureSettings settings;
    std::optional<SweepConfig> sweep;
    std::optional<PhaseMapConfig> phasemap;
    std::string profile;  // check command only; empty when unset
    OutputConfig output;

    bool operator==(const RunConfig& o) const;
};

// Parses JSON text. Syntax errors report line and column, semantic errors the field path.
// Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
RunConfig config_from_json(const nlohmann::json& j);

// Canonical form: ranges are expanded to explicit lists, every field is written.
nlohmann::json config_to_json(const RunConfig& cfg);

// Section requirements of each command; throws ConfigError naming the missing field.
void require_for(const RunConfig& cfg, const std::string& command);

}  // namespace evfront::cli
