#pragma once

// File formats: JSON matrices, experiment CSVs, run manifests and SVG plots.

#include "emin/linalg.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace emin {

struct ExperimentRecord;

namespace io {

/// {"rows": r, "cols": c, "data": [[re, im], ...]} with data in row-major
/// order. Doubles are written in shortest round-trip form, so a write/read
/// cycle is bit-exact.
nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j);

std::string matrix_to_string(const ComplexMatrix &m);
/// Throws ParseError with line/column of the offending byte.
ComplexMatrix parse_matrix(const std::string &text);

void write_matrix(const std::filesystem::path &path, const ComplexMatrix &m);
ComplexMatrix read_matrix(const std::filesystem::path &path);

/// 17 significant digits, "%.17g".
std::string format_double(double v);

inline constexpr const char *kCsvHeader =
    "g,sample_index,n_geo,n_xi,e_before,e_after,ep_before,ep_after";

std::string records_to_csv(const std::vector<ExperimentRecord> &records);
void write_text(const std::filesystem::path &path, const std::string &text);
std::string read_text(const std::filesystem::path &path);

std::string sha256_hex(const std::string &bytes);
std::string sha256_file(const std::filesystem::path &path);

struct RunManifest {
  std::string command_line;
  std::uint64_t master_seed = 0;
  nlohmann::json parameters = nlohmann::json::object();
  std::string version;
  std::vector<std::filesystem::path> files;
  double wall_clock_seconds = 0.0;
  nlohmann::json extra = nlohmann::json::object();
};

/// Hashes every listed file at call time and writes the manifest JSON.
nlohmann::json manifest_to_json(const RunManifest &manifest);
void write_manifest(const std::filesystem::path &path,
                    const RunManifest &manifest);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string scatter_svg(const std::vector<Series> &series,
                        const std::string &title, const std::string &x_label,
                        const std::string &y_label);
std::string line_svg(const std::vector<Series> &series, const std::string &title,
                     const std::string &x_label, const std::string &y_label);

} // namespace io
} // namespace emin
