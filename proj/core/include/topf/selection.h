#pragma once

#include <set>
#include <vector>

#include "topf/persistence.h"

namespace topf {

struct SelectionParams {
  double beta = 0.0;
  double min_rel_quot = 0.1;
  double max_total_quot = 10.0;
  double min_0_ratio = 5.0;

  // Throws InvalidArgumentError unless beta >= 0 and the rest are positive.
  void validate() const;
};

struct SelectedFeature {
  int dim = 0;
  int index = 0;  // rank by lifetime within its dimension (0 = longest)
  double birth = 0.0;
  double death = 0.0;  // finite; essential classes die at the largest value
  bool essential = false;
  double lifetime = 0.0;
  // Drop-off quotient at the cut of this feature's dimension; 0 when the
  // dimension has a single class.
  double cut_quotient = 0.0;
  const PersistencePair* pair = nullptr;
};

struct FeatureSet {
  // Grouped by dimension ascending; lifetimes non-increasing within each.
  std::vector<SelectedFeature> features;
};

// Drop-off quotients q_i = (l_{i+1} / l_i)(1 + beta / i), i = 1..n-1, of
// non-increasing positive lifetimes.
std::vector<double> drop_off_quotients(const std::vector<double>& lifetimes, double beta);

// Number of classes kept in one dimension: the 1-based argmin of the
// quotients (earliest on ties) over the cuts i whose last kept class still
// has lifetime l_i >= min_rel * l_1. A list of at most one class is kept
// whole.
int drop_off_cut(const std::vector<double>& lifetimes, double beta, double min_rel = 0.0);

// Selects significant classes in the requested dimensions:
//   1. per dimension, cut at the smallest drop-off quotient among cuts that
//      keep only classes living at least min_rel_quot times as long as the
//      dimension's most persistent class;
//   2. drop classes of dimension >= 1 living less than 1 / max_total_quot
//      times the most persistent class of any dimension >= 1;
//   3. keep dimension-0 classes only if they live at least min_0_ratio times
//      as long as the shortest remaining class of higher dimension (no
//      constraint when there is none).
// Zero lifetimes never count. Essential classes die at the largest
// filtration value.
FeatureSet select_features(const PersistenceDiagram& diag, const SelectionParams& params,
                           const std::set<int>& dims);

}  // namespace topf
