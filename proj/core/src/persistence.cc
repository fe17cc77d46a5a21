#include "topf/persistence.h"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "topf/error.h"

namespace topf {

namespace {

// a += c * b for sparse chains sorted by simplex index.
void add_scaled(Chain& a, const Chain& b, F3 c, Chain& scratch) {
  scratch.clear();
  scratch.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].simplex < b[j].simplex)) {
      scratch.push_back(a[i++]);
    } else if (i == a.size() || b[j].simplex < a[i].simplex) {
      scratch.push_back({b[j].simplex, c * b[j].coeff});
      ++j;
    } else {
      F3 v = a[i].coeff + c * b[j].coeff;
      if (v) scratch.push_back({a[i].simplex, v});
      ++i;
      ++j;
    }
  }
  a.swap(scratch);
}

// Reduces `col` against the columns owning each pivot. `owner[s]` is the
// column whose lowest entry is s, or -1. Returns the factors applied so the
// caller can mirror the operations.
template <typename OnAdd>
void reduce(Chain& col, const std::vector<int>& owner, const std::vector<Chain>& cols,
            Chain& scratch, OnAdd&& on_add) {
  while (!col.empty()) {
    const ChainEntry low = col.back();
    const int p = owner[low.simplex];
    if (p < 0) return;
    F3 f = -(low.coeff * cols[p].back().coeff.inverse());
    add_scaled(col, cols[p], f, scratch);
    on_add(p, f);
  }
}

Chain boundary_of(const FilteredComplex& fc, std::size_t i) {
  auto facets = fc.facets(i);
  Chain c;
  c.reserve(facets.size());
  for (std::size_t j = 0; j < facets.size(); ++j) {
    c.push_back({facets[j], F3(j % 2 == 0 ? 1 : -1)});
  }
  std::sort(c.begin(), c.end(),
            [](const ChainEntry& a, const ChainEntry& b) { return a.simplex < b.simplex; });
  return c;
}

}  // namespace

std::vector<const PersistencePair*> PersistenceDiagram::in_dim(int k) const {
  std::vector<const PersistencePair*> out;
  for (const auto& p : pairs) {
    if (p.dim == k) out.push_back(&p);
  }
  return out;
}

double PersistenceDiagram::finite_death(const PersistencePair& p) const {
  return p.essential() ? std::max(max_value, p.birth) : p.death;
}

double PersistenceDiagram::lifetime(const PersistencePair& p) const {
  return finite_death(p) - p.birth;
}

PersistenceDiagram compute_persistence(const FilteredComplex& fc, int max_dim) {
  if (max_dim < 0) throw InvalidArgumentError("max_dim must be nonnegative");
  if (fc.size() == 0) throw EmptyInputError("empty filtration");
  if (max_dim > fc.dimension()) {
    throw InvalidArgumentError("max_dim " + std::to_string(max_dim) +
                               " exceeds the complex dimension " +
                               std::to_string(fc.dimension()));
  }
  const std::size_t n = fc.size();
  const int top = std::min(max_dim + 1, fc.dimension());

  std::vector<Chain> r(n), v(n);
  std::vector<int> owner(n, -1);
  std::vector<char> cleared(n, 0);
  Chain scratch;

  for (int k = top; k >= 1; --k) {
    const bool track = k <= max_dim;
    for (int j : fc.of_dim(k)) {
      if (cleared[j]) continue;
      Chain col = boundary_of(fc, j);
      Chain acc;
      if (track) acc.push_back({j, F3(1)});
      Chain vscratch;
      reduce(col, owner, r, scratch, [&](int p, F3 f) {
        if (track) add_scaled(acc, v[p], f, vscratch);
      });
      if (!col.empty()) {
        owner[col.back().simplex] = j;
        cleared[col.back().simplex] = 1;
      }
      r[j] = std::move(col);
      if (track) v[j] = std::move(acc);
    }
  }

  PersistenceDiagram diag;
  diag.max_dim = max_dim;
  diag.max_value = fc.max_value();
  for (int k = 0; k <= max_dim; ++k) {
    for (int s : fc.of_dim(k)) {
      if (k > 0 && !r[s].empty()) continue;  // destroys a class of dim k-1
      PersistencePair p;
      p.dim = k;
      p.birth = fc.value(s);
      p.birth_simplex = s;
      if (cleared[s]) {
        int d = -1;
        // The destroyer is the column whose pivot is s.
        d = owner[s];
        p.death_simplex = d;
        p.death = fc.value(d);
        if (k == 0) {
          p.generator = {{s, F3(1)}};
        } else {
          p.generator = r[d];
        }
      } else {
        p.generator = (k == 0) ? Chain{{s, F3(1)}} : v[s];
      }
      diag.pairs.push_back(std::move(p));
    }
  }
  return diag;
}

std::size_t f3_rank(const BoundaryMatrix& b) {
  std::vector<Chain> cols(b.cols);
  for (const auto& e : b.entries) cols[e.col].push_back({e.row, F3(e.value)});
  std::vector<int> owner(b.rows, -1);
  Chain scratch;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < b.cols; ++c) {
    auto& col = cols[c];
    std::sort(col.begin(), col.end(),
              [](const ChainEntry& x, const ChainEntry& y) { return x.simplex < y.simplex; });
    // Merge duplicate rows and drop zeros.
    Chain merged;
    for (const auto& e : col) {
      if (!merged.empty() && merged.back().simplex == e.simplex) {
        merged.back().coeff = merged.back().coeff + e.coeff;
        if (!merged.back().coeff) merged.pop_back();
      } else if (e.coeff) {
        merged.push_back(e);
      }
    }
    col = std::move(merged);
    reduce(col, owner, cols, scratch, [](int, F3) {});
    if (!col.empty()) {
      owner[col.back().simplex] = static_cast<int>(c);
      ++rank;
    }
  }
  return rank;
}

std::vector<int> betti_numbers(const SnapshotComplex& sc, int max_dim) {
  const int dim = sc.parent().dimension();
  std::vector<std::size_t> rank(max_dim + 2, 0);  // rank[k] = rank of B_k
  for (int k = 0; k <= max_dim && k < dim; ++k) rank[k] = f3_rank(boundary_matrix(sc, k));
  std::vector<int> out(max_dim + 1);
  for (int k = 0; k <= max_dim; ++k) {
    std::size_t kernel = sc.count(k) - (k > 0 ? rank[k - 1] : 0);
    out[k] = static_cast<int>(kernel - rank[k]);
  }
  return out;
}

std::string diagram_to_json(const PersistenceDiagram& diag, const FilteredComplex& fc) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : diag.pairs) {
    nlohmann::ordered_json gen = nlohmann::ordered_json::array();
    for (const auto& e : p.generator) {
      auto v = fc.vertices(e.simplex);
      gen.push_back({std::vector<int>(v.begin(), v.end()), e.coeff.value()});
    }
    nlohmann::ordered_json o;
    o["dim"] = p.dim;
    o["birth"] = p.birth;
    o["death"] = p.essential() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(p.death);
    o["generator"] = std::move(gen);
    arr.push_back(std::move(o));
  }
  return arr.dump() + "\n";
}

}  // namespace topf
