#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "quasiphase/entquasi.hpp"
#include "quasiphase/types.hpp"

namespace quasiphase {

inline constexpr const char* kToolVersion = "0.1.0";

/// Parses "min:max:count,min:max:count" into (re, im) axes.
std::pair<Axis, Axis> parse_grid_spec(const std::string& text);

/// Parses "1", "-2.5", "1+2i", "0.3i", "-1-0.5i".
cplx parse_complex(const std::string& text);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

/// FNV-1a 64 over the payload bytes, lowercase hex.
std::string checksum_hex(const std::string& payload);

// CSV payloads: header re_alpha,im_alpha,value[,value_im], rows in row-major
// (im, re) order, shortest round-trip doubles.
std::string grid_to_csv(const RealGrid& grid);
std::string grid_to_csv(const ComplexGrid& grid);

struct ParsedGrid {
    ComplexGrid grid;
    bool has_imaginary = false;
};
ParsedGrid parse_csv_grid(const std::string& csv);

/// 1-D cut through the phase space: one axis swept, the other held fixed.
/// Rows share the grid CSV header so downstream tooling stays uniform.
std::string cut_to_csv(bool sweep_im, double fixed_value, const Axis& sweep,
                       const std::function<double(cplx)>& f);

struct RunManifest {
    std::string subcommand;
    nlohmann::json parameters;
    std::string grid_spec;
    std::optional<uint64_t> seed;
    std::string checksum;
    double duration_seconds = 0.0;

    nlohmann::json to_json() const;
};

nlohmann::json grid_to_json(const RealGrid& grid, const RunManifest& manifest);
nlohmann::json grid_to_json(const ComplexGrid& grid, const RunManifest& manifest);
RealGrid real_grid_from_json(const nlohmann::json& j);

std::string ent_table_to_csv(const EntQuasiTable& table);
nlohmann::json ent_table_to_json(const EntQuasiTable& table, const RunManifest& manifest);

/// Runs the oracle-equivalence suite twice and checks byte-identical
/// payloads. Logs one line per check; returns 0 on success, 2 on any
/// tolerance failure.
int run_validate(std::ostream& log);

}  // namespace quasiphase
