#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "topf/filtration.h"
#include "topf/harmonic.h"
#include "topf/point_cloud.h"
#include "topf/selection.h"

namespace topf {

// min(|e(sigma)| / (delta * max |e|), 1). Throws DegenerateInputError for an
// all-zero chain.
Eigen::VectorXd normalize_threshold(const RealChain& e_hat, double delta);

// Mean of the values of the k-simplices incident to each point; points on no
// k-simplex get 0.
Eigen::VectorXd aggregate_to_points(const Eigen::VectorXd& values, const SnapshotComplex& sc,
                                    int k, std::size_t n_points);

struct TopfConfig {
  // Highest homology dimension; -1 means ambient_dim - 1.
  int max_dim = -1;
  ComplexOptions complex;
  SelectionParams selection;
  InterpolationParams interpolation;
  WeightScheme weights = WeightScheme::kTriangle;
  std::size_t resistance_budget = kDefaultResistanceBudget;
  double delta = 0.07;
  ProjectionOptions projection;
  // 0: hardware concurrency.
  int threads = 0;

  void validate() const;
};

struct FeatureMeta {
  int dim = 0;
  double birth = 0.0;
  double death = 0.0;
  bool essential = false;
  double lifetime = 0.0;
  double cut_quotient = 0.0;
  double t = 0.0;  // snapshot value used for the projection
};

// |X| x |F| matrix with entries in [0, 1], one column per selected feature.
struct FeatureMatrix {
  Eigen::MatrixXd values;
  std::vector<FeatureMeta> meta;

  std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
};

struct TopfResult {
  FilteredComplex complex;
  PersistenceDiagram diagram;
  FeatureMatrix features;
  // Harmonic representative behind each feature column, on the snapshot at
  // the column's t.
  std::vector<RealChain> harmonic;
};

// Full pipeline: filtration, persistence, selection, then per selected class
// the harmonic projection at the interpolated snapshot, thresholded and
// aggregated to points. A feature whose harmonic part vanishes is dropped
// with a warning.
TopfResult run_topf(const PointCloud& pc, const TopfConfig& config);
FeatureMatrix topf(const PointCloud& pc, const TopfConfig& config);

// Feature columns for clustering: the non-constant columns plus a final
// column 1 - max over them, the mass of "no feature". Without non-constant
// columns the result is a single zero column.
Eigen::MatrixXd clustering_features(const FeatureMatrix& fm);

// CSV with header x0..x{n-1},f0..f{m-1}: coordinates followed by features.
// With `no_feature_column` a final column "none" holds 1 - max of the row
// (1 when there are no features).
void write_feature_csv(std::ostream& out, const PointCloud& pc, const FeatureMatrix& fm,
                       bool no_feature_column = false);
// JSON array with per-column dim, birth, death, essential, lifetime and t.
std::string feature_meta_json(const FeatureMatrix& fm);

}  // namespace topf
