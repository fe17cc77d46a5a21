#include "topf/features.h"

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include "topf/error.h"
#include "topf/log.h"
#include "topf/parallel.h"
#include "topf/persistence.h"

namespace topf {

Eigen::VectorXd normalize_threshold(const RealChain& e_hat, double delta) {
  if (!(delta > 0 && delta <= 1)) throw InvalidArgumentError("delta must lie in (0, 1]");
  const double m = e_hat.values.size() ? e_hat.values.cwiseAbs().maxCoeff() : 0.0;
  if (!(m > 0)) throw DegenerateInputError("harmonic representative is identically zero");
  return (e_hat.values.cwiseAbs() / (delta * m)).cwiseMin(1.0);
}

Eigen::VectorXd aggregate_to_points(const Eigen::VectorXd& values, const SnapshotComplex& sc,
                                    int k, std::size_t n_points) {
  if (values.size() != static_cast<Eigen::Index>(sc.count(k))) {
    throw InvalidArgumentError("chain length does not match the snapshot");
  }
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_points));
  Eigen::VectorXd count = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_points));
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    for (int v : sc.vertices(k, j)) {
      sum[v] += values[j];
      count[v] += 1;
    }
  }
  return sum.cwiseQuotient(count.cwiseMax(1.0));
}

void TopfConfig::validate() const {
  if (max_dim < -1) throw InvalidArgumentError("max_dim must be -1 (auto) or nonnegative");
  selection.validate();
  interpolation.validate();
  if (!(delta > 0 && delta <= 1)) throw InvalidArgumentError("delta must lie in (0, 1]");
}

namespace {

struct Column {
  std::optional<Eigen::VectorXd> values;
  FeatureMeta meta;
  RealChain harmonic;
};

template <typename Fn>
void annotate(const SelectedFeature& f, Fn&& fn) {
  const std::string id = fmt::format("feature dim {} (birth {}, death {})", f.dim, f.birth, f.death);
  try {
    fn();
  } catch (const SolverError& e) {
    throw SolverError(id + ": " + e.what(), e.gradient_residual(), e.curl_residual());
  } catch (const BudgetExceededError& e) {
    throw BudgetExceededError(id + ": " + e.what());
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(id + ": " + e.what());
  }
}

}  // namespace

TopfResult run_topf(const PointCloud& pc, const TopfConfig& config) {
  config.validate();
  if (pc.empty()) throw EmptyInputError("empty point cloud");
  const int max_dim = config.max_dim >= 0 ? config.max_dim : std::max(0, pc.ambient_dim() - 1);

  TopfResult res;
  res.complex = build_filtration(pc, max_dim, config.complex);
  const FilteredComplex& fc = res.complex;
  log_info(fmt::format("filtration: {} simplices, dimension {}", fc.size(), fc.dimension()));
  res.diagram = compute_persistence(fc, std::min(max_dim, fc.dimension()));
  std::set<int> dims;
  for (int k = 0; k <= res.diagram.max_dim; ++k) dims.insert(k);
  const FeatureSet fs = select_features(res.diagram, config.selection, dims);
  for (const auto& f : fs.features) {
    log_info(fmt::format("selected dim {} birth {:.6g} death {:.6g}{} lifetime {:.6g}", f.dim,
                         f.birth, f.death, f.essential ? " (essential)" : "", f.lifetime));
  }

  std::vector<Column> cols(fs.features.size());
  parallel_for(fs.features.size(), [&](std::size_t i) {
    const SelectedFeature& f = fs.features[i];
    annotate(f, [&] {
      Column& c = cols[i];
      c.meta = {f.dim, f.birth, f.death, f.essential, f.lifetime, f.cut_quotient, 0.0};
      const double t = interpolation_time(f.birth, f.death, f.dim, config.interpolation);
      c.meta.t = t;
      SnapshotComplex sc(fc, t);
      RealChain e = embed_generator(f.pair->generator, sc, f.dim);
      Eigen::VectorXd w = simplicial_weights(sc, f.dim, config.weights, config.resistance_budget);
      RealChain e_hat = harmonic_project(e, sc, w, config.projection);
      if (e_hat.values.isZero(0.0)) {
        log_warning(fmt::format("dropping dim {} feature (birth {}, death {}): harmonic part vanishes",
                                f.dim, f.birth, f.death));
        return;
      }
      Eigen::VectorXd ne = normalize_threshold(e_hat, config.delta);
      c.values = aggregate_to_points(ne, sc, f.dim, pc.size());
      c.harmonic = std::move(e_hat);
    });
  }, config.threads);

  std::size_t kept = 0;
  for (const auto& c : cols) kept += c.values.has_value();
  res.features.values.resize(static_cast<Eigen::Index>(pc.size()), static_cast<Eigen::Index>(kept));
  Eigen::Index j = 0;
  for (auto& c : cols) {
    if (!c.values) continue;
    res.features.values.col(j++) = *c.values;
    res.features.meta.push_back(c.meta);
    res.harmonic.push_back(std::move(c.harmonic));
  }
  if (kept == 0) log_warning("no topological features selected");
  return res;
}

FeatureMatrix topf(const PointCloud& pc, const TopfConfig& config) {
  return run_topf(pc, config).features;
}

Eigen::MatrixXd clustering_features(const FeatureMatrix& fm) {
  const Eigen::Index n = fm.values.rows();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < fm.values.cols(); ++j) {
    auto col = fm.values.col(j);
    if (col.maxCoeff() - col.minCoeff() > 1e-12) keep.push_back(j);
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(keep.size()) + 1);
  for (std::size_t c = 0; c < keep.size(); ++c) out.col(c) = fm.values.col(keep[c]);
  if (!keep.empty()) {
    out.col(keep.size()) =
        (1.0 - out.leftCols(keep.size()).rowwise().maxCoeff().array()).matrix();
  }
  return out;
}

void write_feature_csv(std::ostream& out, const PointCloud& pc, const FeatureMatrix& fm,
                       bool no_feature_column) {
  if (fm.rows() != pc.size()) throw InvalidArgumentError("feature rows do not match the cloud");
  std::vector<std::string> header;
  for (int a = 0; a < pc.ambient_dim(); ++a) header.push_back(fmt::format("x{}", a));
  for (std::size_t j = 0; j < fm.cols(); ++j) header.push_back(fmt::format("f{}", j));
  if (no_feature_column) header.push_back("none");
  fmt::print(out, "{}\n", fmt::join(header, ","));
  std::vector<double> row;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    row.assign(pc.point(i).begin(), pc.point(i).end());
    for (std::size_t j = 0; j < fm.cols(); ++j) row.push_back(fm.values(i, j));
    if (no_feature_column) {
      const auto r = static_cast<Eigen::Index>(i);
      row.push_back(fm.cols() ? 1.0 - fm.values.row(r).maxCoeff() : 1.0);
    }
    fmt::print(out, "{}\n", fmt::join(row, ","));
  }
}

std::string feature_meta_json(const FeatureMatrix& fm) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < fm.meta.size(); ++j) {
    const auto& m = fm.meta[j];
    nlohmann::ordered_json o;
    o["column"] = fmt::format("f{}", j);
    o["dim"] = m.dim;
    o["birth"] = m.birth;
    o["death"] = m.death;
    o["essential"] = m.essential;
    o["lifetime"] = m.lifetime;
    o["cut_quotient"] = m.cut_quotient;
    o["t"] = m.t;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

}  // namespace topf
