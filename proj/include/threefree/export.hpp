// Sequence export: OEIS b-file and CSV renderings of theta values, with a
// parser for round-trip checks.  Computed values must agree with the table
// wherever both exist; a disagreement aborts the export.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "threefree/bigcount.hpp"
#include "threefree/table.hpp"

namespace threefree {

enum class ExportFormat { bfile, csv };

using SequenceRows = std::vector<std::pair<int, BigCount>>;

class ExportMismatchError : public std::runtime_error {
 public:
  ExportMismatchError(int n, const BigCount& computed, const BigCount& table)
      : std::runtime_error("export: computed theta(" + std::to_string(n) + ") = " +
                           computed.to_decimal() + " does not match the table value " +
                           table.to_decimal()),
        n(n) {}

  int n;
};

inline SequenceRows table_rows(int max_n = kTableMaxN) {
  if (max_n < 1 || max_n > kTableMaxN) {
    throw std::out_of_range("table_rows: max_n must be in [1, 90]");
  }
  SequenceRows rows;
  rows.reserve(static_cast<std::size_t>(max_n));
  for (int n = 1; n <= max_n; ++n) rows.emplace_back(n, ground_truth(n));
  return rows;
}

// Rows from a counting engine, cross-checked against the table row by row.
inline SequenceRows computed_rows(int max_n,
                                  const std::function<BigCount(int)>& counter) {
  SequenceRows rows;
  rows.reserve(static_cast<std::size_t>(max_n));
  for (int n = 1; n <= max_n; ++n) {
    BigCount value = counter(n);
    if (n <= kTableMaxN && !(value == ground_truth(n))) {
      throw ExportMismatchError(n, value, ground_truth(n));
    }
    rows.emplace_back(n, std::move(value));
  }
  return rows;
}

// b-file lines are "n value", one per line; CSV carries an "n,theta" header.
// Both use LF endings and end with a newline.
inline std::string render_rows(ExportFormat format, const SequenceRows& rows) {
  std::string out;
  if (format == ExportFormat::csv) out += "n,theta\n";
  for (const auto& [n, value] : rows) {
    out += std::to_string(n);
    out += format == ExportFormat::csv ? ',' : ' ';
    out += value.to_decimal();
    out += '\n';
  }
  return out;
}

// Parses b-file text back into rows; blank lines and '#' comments skipped.
inline SequenceRows parse_bfile(std::string_view text) {
  SequenceRows rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                       : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (line.empty() || line.front() == '#') continue;
    std::size_t space = line.find(' ');
    if (space == std::string_view::npos || space == 0 || space + 1 >= line.size()) {
      throw std::invalid_argument("parse_bfile: malformed line '" + std::string(line) + "'");
    }
    int n = 0;
    for (char c : line.substr(0, space)) {
      if (c < '0' || c > '9') throw std::invalid_argument("parse_bfile: bad index");
      n = n * 10 + (c - '0');
      if (n > 1000000) throw std::invalid_argument("parse_bfile: index too large");
    }
    rows.emplace_back(n, BigCount::from_decimal(line.substr(space + 1)));
  }
  return rows;
}

}  // namespace threefree
