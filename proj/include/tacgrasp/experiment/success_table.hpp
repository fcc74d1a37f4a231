#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "tacgrasp/experiment/evaluation.hpp"

namespace tacgrasp::experiment {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval for a binomial proportion; [0, 1] when trials = 0.
Interval wilson_interval(int successes, int trials, double z = 1.959963984540054);

// Newcombe hybrid score interval for p1 - p2 built from the two Wilson
// intervals.
Interval newcombe_difference(int s1, int n1, int s2, int n2, double z = 1.959963984540054);

struct CellStats {
  int successes = 0;
  int trials = 0;
  double rate = 0.0;
  Interval ci;
};

CellStats cell_stats(int successes, int trials);

struct TableRow {
  grasp::ShapeKind shape = grasp::ShapeKind::kSphere;
  std::optional<CellStats> tactile;
  std::optional<CellStats> no_tactile;
  // Tactile minus no-tactile, present when both cells are.
  std::optional<double> difference;
  std::optional<Interval> difference_ci;
};

struct SuccessTable {
  std::vector<TableRow> rows;  // catalog order, shapes without trials omitted
};

// Aggregates records by shape and condition.
SuccessTable build_table(const std::vector<TrialRecord>& records);

struct ReferenceRate {
  grasp::ShapeKind shape;
  int tactile;     // percent
  int no_tactile;  // percent
};
inline constexpr ReferenceRate kReferenceRates[] = {
    {grasp::ShapeKind::kColumn, 95, 87},
    {grasp::ShapeKind::kCapsule, 96, 88},
    {grasp::ShapeKind::kEllipsoid, 92, 89},
    {grasp::ShapeKind::kSphere, 93, 82},
};

// Aligned text; the header lists the reference rates as annotations.
void write_table_text(std::ostream& out, const SuccessTable& table);
void write_table_csv(std::ostream& out, const SuccessTable& table);

}  // namespace tacgrasp::experiment
