#include "riem/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

namespace riem {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

double parse_cell(const std::string& cell, std::size_t row) {
  const std::string t = trimmed(cell);
  if (t.empty()) {
    throw InvalidInputError("csv parse: empty cell in row " + std::to_string(row + 1));
  }
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw InvalidInputError("csv parse: '" + t + "' in row " + std::to_string(row + 1) +
                            " is not a number");
  }
  return value;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += cells[i];
  }
  return out;
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) {
        out += ',';
      }
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Eigen::MatrixXd matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (trimmed(line).empty()) {
      continue;
    }
    std::vector<double> row;
    std::string cell;
    std::istringstream cells(line);
    while (std::getline(cells, cell, ',')) {
      row.push_back(parse_cell(cell, rows.size()));
    }
    if (line.back() == ',') {
      throw InvalidInputError("csv parse: trailing comma in row " +
                              std::to_string(rows.size() + 1));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidInputError("csv parse: row " + std::to_string(rows.size() + 1) +
                              " has " + std::to_string(row.size()) + " cells, expected " +
                              std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw InvalidInputError("csv parse: no data rows");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidInputError("cannot open file for reading: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw InvalidInputError("error while reading file: " + path.string());
  }
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw InvalidInputError("cannot open file for writing: " + path.string());
  }
  out << content;
  out.flush();
  if (!out) {
    throw InvalidInputError("error while writing file: " + path.string());
  }
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  try {
    return matrix_from_csv(read_text_file(path));
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(path.string() + ": " + e.what());
  }
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  write_text_file(path, matrix_to_csv(m));
}

nlohmann::json json_from_matrix(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json json_from_vector(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw InvalidInputError("json parse: expected a nonempty array of rows");
  }
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) {
      throw InvalidInputError("json parse: row " + std::to_string(i + 1) +
                              " is not an array");
    }
    if (i == 0) {
      cols = j[i].size();
      if (cols == 0) {
        throw InvalidInputError("json parse: rows must be nonempty");
      }
    } else if (j[i].size() != cols) {
      throw InvalidInputError("json parse: row " + std::to_string(i + 1) +
                              " has a different length");
    }
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      const nlohmann::json& cell = j[i][k];
      if (!cell.is_number()) {
        throw InvalidInputError("json parse: non-numeric entry in row " +
                                std::to_string(i + 1));
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = cell.get<double>();
    }
  }
  return m;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw InvalidInputError("json parse: expected a nonempty array of numbers");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw InvalidInputError("json parse: entry " + std::to_string(i + 1) +
                              " is not a number");
    }
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInputError(path.string() + ": invalid JSON (" + e.what() + ")");
  }
}

}  // namespace riem
