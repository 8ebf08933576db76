#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "riem/error.hpp"

namespace riem {

/// Decimal rendering of a double with 17 significant digits ("%.17g", '.' as
/// the decimal point), enough to round-trip every finite value exactly.
std::string format_double(double x);

/// Comma-joined CSV line (no trailing newline).
std::string csv_line(const std::vector<std::string>& cells);

/// Matrix as CSV rows, one line per row, every number through format_double.
std::string matrix_to_csv(const Eigen::MatrixXd& m);

/// Parses numeric CSV (blank lines ignored) into a dense matrix; ragged rows or
/// non-numeric cells are input errors.
Eigen::MatrixXd matrix_from_csv(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

/// Row-major nested JSON array for a matrix; vectors map to flat arrays.
nlohmann::json json_from_matrix(const Eigen::MatrixXd& m);
nlohmann::json json_from_vector(const Eigen::VectorXd& v);

/// Parses a JSON array of equal-length number arrays into a matrix (one inner
/// array per row).
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

/// Parses a flat JSON array of numbers.
Eigen::VectorXd vector_from_json(const nlohmann::json& j);

/// Serializes with 2-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace riem
