#include "tacgrasp/experiment/success_table.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::experiment {

Interval wilson_interval(int successes, int trials, double z) {
  if (trials < 0 || successes < 0 || successes > trials) {
    throw ArgumentError("invalid binomial counts");
  }
  if (trials == 0) return {0.0, 1.0};
  const double n = trials;
  const double p = successes / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Interval newcombe_difference(int s1, int n1, int s2, int n2, double z) {
  if (n1 <= 0 || n2 <= 0) throw ArgumentError("difference needs trials in both groups");
  const double p1 = static_cast<double>(s1) / n1;
  const double p2 = static_cast<double>(s2) / n2;
  const Interval a = wilson_interval(s1, n1, z);
  const Interval b = wilson_interval(s2, n2, z);
  const double d = p1 - p2;
  return {d - std::hypot(p1 - a.lo, b.hi - p2), d + std::hypot(a.hi - p1, p2 - b.lo)};
}

CellStats cell_stats(int successes, int trials) {
  CellStats c;
  c.successes = successes;
  c.trials = trials;
  c.rate = trials > 0 ? static_cast<double>(successes) / trials : 0.0;
  c.ci = wilson_interval(successes, trials);
  return c;
}

SuccessTable build_table(const std::vector<TrialRecord>& records) {
  // (successes, trials) per shape and condition
  std::map<std::pair<int, int>, std::pair<int, int>> counts;
  for (const auto& r : records) {
    auto& c = counts[{static_cast<int>(r.shape), static_cast<int>(r.condition)}];
    c.first += r.success ? 1 : 0;
    c.second += 1;
  }
  SuccessTable table;
  for (auto shape : grasp::kCatalogShapes) {
    TableRow row;
    row.shape = shape;
    for (auto cond : {Condition::kTactile, Condition::kNoTactile}) {
      const auto it = counts.find({static_cast<int>(shape), static_cast<int>(cond)});
      if (it == counts.end()) continue;
      const CellStats cell = cell_stats(it->second.first, it->second.second);
      (cond == Condition::kTactile ? row.tactile : row.no_tactile) = cell;
    }
    if (!row.tactile && !row.no_tactile) continue;
    if (row.tactile && row.no_tactile) {
      row.difference = row.tactile->rate - row.no_tactile->rate;
      row.difference_ci = newcombe_difference(row.tactile->successes, row.tactile->trials,
                                              row.no_tactile->successes, row.no_tactile->trials);
    }
    table.rows.push_back(row);
  }
  return table;
}

namespace {

std::string percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * x);
  return buf;
}

std::string cell_text(const std::optional<CellStats>& c) {
  if (!c) return "-";
  return percent(c->rate) + "% [" + percent(c->ci.lo) + ", " + percent(c->ci.hi) + "] n=" +
         std::to_string(c->trials);
}

std::string difference_text(const TableRow& row) {
  if (!row.difference) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.1f [%+.1f, %+.1f]", 100.0 * *row.difference,
                100.0 * row.difference_ci->lo, 100.0 * row.difference_ci->hi);
  return buf;
}

}  // namespace

void write_table_text(std::ostream& out, const SuccessTable& table) {
  out << "# Grasp success rate with 95% Wilson intervals; difference with Newcombe interval.\n";
  out << "# Reference rates (tactile / no tactile, 100 trials each):";
  for (const auto& r : kReferenceRates) {
    out << ' ' << grasp::shape_name(r.shape) << ' ' << r.tactile << '/' << r.no_tactile;
    if (&r != &kReferenceRates[3]) out << ',';
  }
  out << "\n# Reference rates are annotations only.\n";

  using Line = std::array<std::string, 4>;
  std::vector<Line> lines;
  lines.push_back(Line{"Object", "Tactile", "No tactile", "Difference (pp)"});
  for (const auto& row : table.rows) {
    lines.push_back(Line{std::string(grasp::shape_name(row.shape)), cell_text(row.tactile),
                         cell_text(row.no_tactile), difference_text(row)});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& l : lines) {
    for (int i = 0; i < 4; ++i) width[i] = std::max(width[i], l[i].size());
  }
  for (const auto& l : lines) {
    for (int i = 0; i < 4; ++i) {
      out << std::left << std::setw(static_cast<int>(width[i])) << l[i];
      out << (i < 3 ? "  " : "\n");
    }
  }
}

void write_table_csv(std::ostream& out, const SuccessTable& table) {
  out << "shape,te_successes,te_trials,te_rate,te_lo,te_hi,td_successes,td_trials,td_rate,td_lo,"
         "td_hi,difference,difference_lo,difference_hi\n";
  out << std::setprecision(10);
  auto cell = [&](const std::optional<CellStats>& c) {
    if (c) {
      out << c->successes << ',' << c->trials << ',' << c->rate << ',' << c->ci.lo << ','
          << c->ci.hi;
    } else {
      out << ",,,,";
    }
  };
  for (const auto& row : table.rows) {
    out << grasp::shape_name(row.shape) << ',';
    cell(row.tactile);
    out << ',';
    cell(row.no_tactile);
    out << ',';
    if (row.difference) {
      out << *row.difference << ',' << row.difference_ci->lo << ',' << row.difference_ci->hi;
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

}  // namespace tacgrasp::experiment
