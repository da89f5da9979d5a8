#include "qscatter/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qscatter/types.hpp"

namespace qscatter {

double Axis::value(int i) const {
  if (count <= 1) return start;
  if (i == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

Axis parse_axis(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4 || parts[0].empty()) {
    throw DomainError("axis", "axis must look like name:start:stop:count, got '" + spec + "'");
  }
  Axis ax;
  ax.name = parts[0];
  try {
    std::size_t used = 0;
    ax.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("trailing");
    ax.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("trailing");
    ax.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("trailing");
  } catch (const std::logic_error&) {
    throw DomainError("axis", "cannot parse axis '" + spec + "'");
  }
  if (!std::isfinite(ax.start) || !std::isfinite(ax.stop)) {
    throw DomainError("axis", "axis range must be finite in '" + spec + "'");
  }
  if (ax.count < 1) throw DomainError("axis", "axis count must be positive in '" + spec + "'");
  return ax;
}

std::size_t SweepGrid::expected_rows() const {
  std::size_t n = 1;
  for (const Axis& a : axes) n *= static_cast<std::size_t>(a.count);
  return n;
}

void fill_grid(SweepGrid& grid, const RowFunction& row_at, unsigned threads) {
  const std::size_t total = grid.expected_rows();
  grid.rows.assign(total, {});

  auto indices_of = [&](std::size_t flat) {
    std::vector<int> idx(grid.axes.size());
    for (std::size_t d = grid.axes.size(); d-- > 0;) {
      const auto n = static_cast<std::size_t>(grid.axes[d].count);
      idx[d] = static_cast<int>(flat % n);
      flat /= n;
    }
    return idx;
  };
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) grid.rows[i] = row_at(indices_of(i));
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, total / 256))));
  if (threads == 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(total, b + chunk);
      if (b >= e) continue;
      pool.emplace_back([&, t, b, e] {
        try {
          work(b, e);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    // first failing chunk in row order wins, so the error is thread-count independent
    for (const auto& ep : errors) {
      if (ep) std::rethrow_exception(ep);
    }
  }

  for (const auto& row : grid.rows) {
    if (row.size() != grid.columns.size()) {
      throw std::logic_error("row width does not match column count");
    }
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const SweepGrid& grid) {
  os << "# meta: ";
  for (std::size_t i = 0; i < grid.metadata.size(); ++i) {
    if (i) os << ';';
    os << grid.metadata[i].first << '=' << grid.metadata[i].second;
  }
  os << '\n';
  for (std::size_t i = 0; i < grid.columns.size(); ++i) {
    if (i) os << ',';
    os << grid.columns[i];
  }
  os << '\n';
  for (const auto& row : grid.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (row[i].defined) os << format_double(row[i].value);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const SweepGrid& grid) {
  using json = nlohmann::ordered_json;
  json doc;
  json meta = json::object();
  for (const auto& [k, v] : grid.metadata) meta[k] = v;
  doc["meta"] = meta;
  json axes = json::array();
  for (const Axis& a : grid.axes) {
    axes.push_back({{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"count", a.count}, {"spacing", "linear"}});
  }
  doc["axes"] = axes;
  doc["columns"] = grid.columns;
  json rows = json::array();
  for (const auto& row : grid.rows) {
    json r = json::array();
    for (const Cell& c : row) {
      if (!c.defined) {
        r.push_back(nullptr);
      } else if (!std::isfinite(c.value)) {
        r.push_back(format_double(c.value));
      } else {
        r.push_back(c.value);
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump() << '\n';
}

}  // namespace qscatter
