#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace exos::csvio {

// Value formatted with 17 significant digits (lossless for doubles).
std::string format17(double v);

// Plain comma-separated table written atomically (temp file + rename).
// Columns must share one length.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

// Atomic whole-file text write.
void write_text(const std::string& path, const std::string& content);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

// Reads a numeric CSV written by write_csv.
Table read_csv(const std::string& path);

}  // namespace exos::csvio
