#include "topf/selection.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "topf/error.h"

namespace topf {

void SelectionParams::validate() const {
  if (!(beta >= 0)) throw InvalidArgumentError("beta must be nonnegative");
  if (!(min_rel_quot > 0) || !(max_total_quot > 0) || !(min_0_ratio > 0)) {
    throw InvalidArgumentError("selection quotients must be positive");
  }
}

std::vector<double> drop_off_quotients(const std::vector<double>& l, double beta) {
  std::vector<double> q;
  for (std::size_t i = 0; i + 1 < l.size(); ++i) {
    const double idx = static_cast<double>(i + 1);
    q.push_back(l[i + 1] / l[i] * (1.0 + beta / idx));
  }
  return q;
}

int drop_off_cut(const std::vector<double>& l, double beta, double min_rel) {
  if (l.size() <= 1) return static_cast<int>(l.size());
  auto q = drop_off_quotients(l, beta);
  std::size_t best = 0;
  for (std::size_t i = 1; i < q.size(); ++i) {
    if (l[i] < min_rel * l[0]) break;
    if (q[i] < q[best]) best = i;
  }
  return static_cast<int>(best) + 1;
}

FeatureSet select_features(const PersistenceDiagram& diag, const SelectionParams& params,
                           const std::set<int>& dims) {
  params.validate();
  struct Candidate {
    std::vector<const PersistencePair*> pairs;  // sorted by lifetime
    std::vector<double> lifetimes;
    int cut = 0;
    double quotient = 0.0;
  };
  std::map<int, Candidate> per_dim;
  for (int k : dims) {
    Candidate c;
    for (const auto* p : diag.in_dim(k)) {
      if (diag.lifetime(*p) > 0) c.pairs.push_back(p);
    }
    std::stable_sort(c.pairs.begin(), c.pairs.end(), [&](const auto* a, const auto* b) {
      return diag.lifetime(*a) > diag.lifetime(*b);
    });
    for (const auto* p : c.pairs) c.lifetimes.push_back(diag.lifetime(*p));
    c.cut = drop_off_cut(c.lifetimes, params.beta, params.min_rel_quot);
    if (c.lifetimes.size() > 1) {
      c.quotient = drop_off_quotients(c.lifetimes, params.beta)[c.cut - 1];
    }
    per_dim.emplace(k, std::move(c));
  }

  double top = 0.0;
  for (const auto& [k, c] : per_dim) {
    if (k > 0 && !c.lifetimes.empty()) top = std::max(top, c.lifetimes[0]);
  }
  double min_higher = std::numeric_limits<double>::infinity();
  for (auto& [k, c] : per_dim) {
    if (k == 0) continue;
    while (c.cut > 0 && c.lifetimes[c.cut - 1] * params.max_total_quot < top) --c.cut;
    if (c.cut > 0) min_higher = std::min(min_higher, c.lifetimes[c.cut - 1]);
  }

  FeatureSet out;
  for (const auto& [k, c] : per_dim) {
    for (int i = 0; i < c.cut; ++i) {
      if (k == 0 && std::isfinite(min_higher) && c.lifetimes[i] < params.min_0_ratio * min_higher) {
        continue;
      }
      const PersistencePair* p = c.pairs[i];
      SelectedFeature f;
      f.dim = k;
      f.index = i;
      f.birth = p->birth;
      f.death = diag.finite_death(*p);
      f.essential = p->essential();
      f.lifetime = c.lifetimes[i];
      f.cut_quotient = c.quotient;
      f.pair = p;
      out.features.push_back(f);
    }
  }
  return out;
}

}  // namespace topf
