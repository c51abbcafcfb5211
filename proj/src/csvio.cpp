#include "csvio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace exos::csvio {

namespace fs = std::filesystem;

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw EvaluationError("write_text: cannot open " + tmp.string());
    os << content;
    if (!os) throw EvaluationError("write_text: short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw EvaluationError("write_text: rename failed for " + path + ": " + ec.message());
  }
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size() || columns.empty()) {
    throw InvalidInput("write_csv: header/column mismatch");
  }
  const std::size_t rows = columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw InvalidInput("write_csv: ragged columns");
  }
  std::ostringstream os;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) os << ',';
    os << header[j];
  }
  os << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) os << ',';
      os << format17(columns[j][i]);
    }
    os << '\n';
  }
  write_text(path, os.str());
}

Table read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw EvaluationError("read_csv: cannot open " + path);
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw ParseError("read_csv: empty file " + path);
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  t.columns.resize(t.header.size());
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t j = 0;
    while (std::getline(ss, cell, ',')) {
      if (j >= t.columns.size()) {
        throw ParseError("read_csv: too many cells at line " + std::to_string(lineno));
      }
      t.columns[j++].push_back(std::stod(cell));
    }
    if (j != t.columns.size()) {
      throw ParseError("read_csv: short row at line " + std::to_string(lineno));
    }
  }
  return t;
}

}  // namespace exos::csvio
