#pragma once

// Rectangular parameter grids, parallel evaluation, and deterministic
// CSV / JSON serialization of the result table.

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qscatter {

struct Axis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  /// Linear spacing; the last sample is exactly `stop`.
  double value(int i) const;
};

/// "name:start:stop:count"
Axis parse_axis(const std::string& spec);

/// A table cell. Undefined cells (e.g. concurrence with nothing detected)
/// are written as an empty CSV field / JSON null, never as 0.
struct Cell {
  double value = 0.0;
  bool defined = true;

  static Cell undefined() { return {0.0, false}; }
};

struct SweepGrid {
  std::vector<Axis> axes;          // 1 or 2; the last axis varies fastest
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t expected_rows() const;
};

/// Evaluates `row_at(indices)` for every grid point in row-major order.
/// Work is split across `threads` workers; the row order does not depend on
/// the thread count.
using RowFunction = std::function<std::vector<Cell>(const std::vector<int>& indices)>;
void fill_grid(SweepGrid& grid, const RowFunction& row_at, unsigned threads = 1);

/// Shortest decimal string that round-trips to the same double; "inf",
/// "-inf", "nan" for non-finite values.
std::string format_double(double x);

void write_csv(std::ostream& os, const SweepGrid& grid);
void write_json(std::ostream& os, const SweepGrid& grid);

}  // namespace qscatter
