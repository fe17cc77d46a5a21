#include "topf/delaunay.h"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "topf/error.h"
#include "topf/predicates.h"

namespace topf {

namespace {

constexpr int kInfinite = -1;

// Bowyer-Watson insertion on a triangulation whose convex hull is closed off
// by "ghost" simplices sharing one vertex at infinity. A ghost with the
// infinite vertex replaced by a point x has positive orientation iff x lies
// strictly outside the hull facet it carries.
template <int D>
class Triangulator {
 public:
  using Verts = std::array<int, D + 1>;

  explicit Triangulator(const PointCloud& pc) : pc_(pc), pred_(pc) {
    std::iota(all_axes_.begin(), all_axes_.end(), 0);
  }

  std::vector<std::vector<int>> run() {
    const int n = static_cast<int>(pc_.size());
    if (n >= (1 << 21) - 1) {
      throw InvalidArgumentError("too many points for Delaunay triangulation");
    }
    if (n < D + 1) {
      throw DegenerateInputError("Delaunay triangulation needs at least " +
                                 std::to_string(D + 1) + " points");
    }
    std::vector<int> order = insertion_order();
    Verts seed = initial_simplex(order);
    build_initial(seed);
    for (int p : order) {
      if (std::find(seed.begin(), seed.end(), p) != seed.end()) continue;
      insert(p);
    }
    std::vector<std::vector<int>> out;
    for (const auto& s : cells_) {
      if (!s.alive || is_ghost(s)) continue;
      std::vector<int> v(s.v.begin(), s.v.end());
      std::sort(v.begin(), v.end());
      out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Cell {
    Verts v;
    std::array<int, D + 1> nbr;
    bool alive = true;
  };

  static bool is_ghost(const Cell& c) {
    return std::find(c.v.begin(), c.v.end(), kInfinite) != c.v.end();
  }

  int orient(const Verts& v) const { return pred_.orientation(v, all_axes_); }

  // Spatially coherent insertion order (Morton order of quantised coords).
  std::vector<int> insertion_order() const {
    const int n = static_cast<int>(pc_.size());
    std::array<double, D> lo, hi;
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < D; ++a) {
        lo[a] = std::min(lo[a], pc_.coord(i, a));
        hi[a] = std::max(hi[a], pc_.coord(i, a));
      }
    }
    constexpr int kBits = 64 / D;
    const double cells = static_cast<double>((1ULL << (kBits > 20 ? 20 : kBits)) - 1);
    std::vector<std::uint64_t> key(n, 0);
    for (int i = 0; i < n; ++i) {
      std::array<std::uint64_t, D> q;
      for (int a = 0; a < D; ++a) {
        double span = hi[a] - lo[a];
        double t = span > 0 ? (pc_.coord(i, a) - lo[a]) / span : 0.0;
        q[a] = static_cast<std::uint64_t>(t * cells);
      }
      std::uint64_t k = 0;
      for (int b = 19; b >= 0; --b) {
        for (int a = 0; a < D; ++a) k = (k << 1) | ((q[a] >> b) & 1ULL);
      }
      key[i] = k;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return key[a] < key[b]; });
    return order;
  }

  bool same_point(int a, int b) const {
    for (int k = 0; k < D; ++k) {
      if (pc_.coord(a, k) != pc_.coord(b, k)) return false;
    }
    return true;
  }

  Verts initial_simplex(const std::vector<int>& order) const {
    Verts s;
    s.fill(kInfinite);
    s[0] = order[0];
    int found = 1;
    for (int p : order) {
      if (found == D + 1) break;
      if (found == 1) {
        if (!same_point(p, s[0])) s[found++] = p;
        continue;
      }
      if (affinely_independent(s, found, p)) s[found++] = p;
    }
    if (found < D + 1) {
      throw DegenerateInputError("points do not span the ambient space");
    }
    if (orient(s) < 0) std::swap(s[0], s[1]);
    return s;
  }

  // Whether p extends the first k points of s to an affinely independent set.
  bool affinely_independent(const Verts& s, int k, int p) const {
    if (k == D) {
      Verts t = s;
      t[D] = p;
      return orient(t) != 0;
    }
    // k == 2 in three dimensions: p must not be collinear with s[0], s[1].
    for (int a = 0; a < D; ++a) {
      for (int b = a + 1; b < D; ++b) {
        std::array<int, 2> ax{a, b};
        std::array<int, 3> ids{s[0], s[1], p};
        if (pred_.orientation(ids, ax) != 0) return true;
      }
    }
    return false;
  }

  void build_initial(const Verts& s) {
    cells_.push_back({s, {}, true});
    cells_[0].nbr.fill(-1);
    for (int i = 0; i <= D; ++i) {
      Verts g = s;
      g[i] = kInfinite;
      // Swap two other slots so that "outside" is the positive side.
      int a = (i == 0) ? 1 : 0;
      int b = (a + 1 == i) ? a + 2 : a + 1;
      std::swap(g[a], g[b]);
      cells_.push_back({g, {}, true});
    }
    // Link neighbours by matching facets.
    link_all();
    last_finite_ = 0;
  }

  void link_all() {
    std::unordered_map<std::uint64_t, std::pair<int, int>> open;
    for (int c = 0; c < static_cast<int>(cells_.size()); ++c) {
      for (int i = 0; i <= D; ++i) {
        std::uint64_t key = facet_key(cells_[c].v, i, -2);
        auto it = open.find(key);
        if (it == open.end()) {
          open.emplace(key, std::make_pair(c, i));
        } else {
          cells_[c].nbr[i] = it->second.first;
          cells_[it->second.first].nbr[it->second.second] = c;
          open.erase(it);
        }
      }
    }
  }

  // Key of the vertex set of v without slots `skip` and `skip2` (-2: none).
  static std::uint64_t facet_key(const Verts& v, int skip, int skip2) {
    std::array<std::uint64_t, D + 1> ids;
    int k = 0;
    for (int i = 0; i <= D; ++i) {
      if (i != skip && i != skip2) ids[k++] = static_cast<std::uint64_t>(v[i] + 1);
    }
    std::sort(ids.begin(), ids.begin() + k);
    std::uint64_t key = 0;
    for (int i = 0; i < k; ++i) key = (key << 21) | ids[i];
    return key;
  }

  bool in_conflict(const Cell& c, int q) const {
    int g = -1;
    for (int i = 0; i <= D; ++i) {
      if (c.v[i] == kInfinite) g = i;
    }
    if (g < 0) {
      std::array<int, D + 2> ids;
      for (int i = 0; i <= D; ++i) ids[i] = c.v[i];
      ids[D + 1] = q;
      return pred_.lifted(ids, all_axes_) > 0;
    }
    Verts t = c.v;
    t[g] = q;
    int o = orient(t);
    if (o != 0) return o > 0;
    // q lies in the hull facet's affine hull: conflict iff it is inside the
    // facet's circumsphere, evaluated on a projection where the facet is
    // non-degenerate.
    std::array<int, D> facet;
    int k = 0;
    for (int i = 0; i <= D; ++i) {
      if (i != g) facet[k++] = c.v[i];
    }
    std::array<int, D - 1> axes;
    if (!projection_axes(facet, axes)) {
      throw ConsistencyError("degenerate hull facet");
    }
    std::array<int, D + 1> ids;
    for (int i = 0; i < D; ++i) ids[i] = facet[i];
    ids[D] = q;
    std::array<int, D> fo_ids;
    for (int i = 0; i < D; ++i) fo_ids[i] = facet[i];
    int fo = pred_.orientation(fo_ids, axes);
    return pred_.lifted(ids, axes) * fo > 0;
  }

  // Finds D-1 coordinate axes on which the facet projects non-degenerately.
  bool projection_axes(const std::array<int, D>& facet,
                       std::array<int, D - 1>& axes) const {
    if constexpr (D == 2) {
      for (int a = 0; a < 2; ++a) {
        if (pc_.coord(facet[0], a) != pc_.coord(facet[1], a)) {
          axes[0] = a;
          return true;
        }
      }
      return false;
    } else {
      for (int a = 0; a < D; ++a) {
        for (int b = a + 1; b < D; ++b) {
          axes = {a, b};
          if (pred_.orientation(facet, axes) != 0) return true;
        }
      }
      return false;
    }
  }

  // Visibility walk from the last finite cell. Returns a cell in conflict
  // with q.
  int locate(int q) {
    int c = last_finite_;
    std::uint32_t rng = 0x9E3779B9u ^ static_cast<std::uint32_t>(q);
    for (std::size_t steps = 0;; ++steps) {
      if (steps > 4 * cells_.size() + 16) {
        throw ConsistencyError("point location did not terminate");
      }
      const Cell& cell = cells_[c];
      if (is_ghost(cell)) return c;
      rng = rng * 1664525u + 1013904223u;
      int start = static_cast<int>((rng >> 16) % (D + 1));
      int next = -1;
      for (int j = 0; j <= D; ++j) {
        int i = (start + j) % (D + 1);
        Verts t = cell.v;
        t[i] = q;
        if (orient(t) < 0) {
          next = cell.nbr[i];
          break;
        }
      }
      if (next < 0) {
        for (int v : cell.v) {
          if (same_point(v, q)) {
            throw DegenerateInputError("duplicate point " + std::to_string(q) +
                                       " (same as " + std::to_string(v) + ")");
          }
        }
        return c;
      }
      c = next;
    }
  }

  void insert(int q) {
    int seed = locate(q);
    if (!in_conflict(cells_[seed], q)) {
      throw ConsistencyError("located cell is not in conflict");
    }
    ++stamp_;
    if (mark_.size() < cells_.size()) mark_.resize(cells_.size(), 0);
    std::vector<int> cavity{seed};
    std::vector<int> stack{seed};
    mark_[seed] = stamp_;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (int i = 0; i <= D; ++i) {
        int n = cells_[c].nbr[i];
        if (mark_[n] == stamp_ || mark_[n] == -stamp_) continue;
        if (in_conflict(cells_[n], q)) {
          mark_[n] = stamp_;
          cavity.push_back(n);
          stack.push_back(n);
        } else {
          mark_[n] = -stamp_;
        }
      }
    }

    std::unordered_map<std::uint64_t, std::pair<int, int>> open;
    std::vector<int> created;
    for (int c : cavity) {
      for (int i = 0; i <= D; ++i) {
        int n = cells_[c].nbr[i];
        if (mark_[n] == stamp_) continue;
        Cell t;
        t.v = cells_[c].v;
        t.v[i] = q;
        t.nbr.fill(-1);
        t.nbr[i] = n;
        int id = allocate(t);
        created.push_back(id);
        Cell& nc = cells_[n];
        for (int j = 0; j <= D; ++j) {
          if (nc.nbr[j] == c) nc.nbr[j] = id;
        }
        for (int k = 0; k <= D; ++k) {
          if (k == i) continue;
          std::uint64_t key = facet_key(cells_[id].v, k, i);
          auto it = open.find(key);
          if (it == open.end()) {
            open.emplace(key, std::make_pair(id, k));
          } else {
            cells_[id].nbr[k] = it->second.first;
            cells_[it->second.first].nbr[it->second.second] = id;
            open.erase(it);
          }
        }
        if (!is_ghost(cells_[id])) {
          if (orient(cells_[id].v) <= 0) {
            throw ConsistencyError("flat or inverted cell after insertion");
          }
          last_finite_ = id;
        }
      }
    }
    if (!open.empty()) throw ConsistencyError("cavity boundary is not closed");
    for (int c : cavity) {
      cells_[c].alive = false;
      free_.push_back(c);
    }
  }

  int allocate(const Cell& c) {
    // Cells freed by the current insertion are only recycled afterwards.
    if (!free_.empty()) {
      int id = free_.back();
      free_.pop_back();
      cells_[id] = c;
      mark_[id] = 0;
      return id;
    }
    cells_.push_back(c);
    mark_.push_back(0);
    return static_cast<int>(cells_.size()) - 1;
  }

  const PointCloud& pc_;
  Predicates pred_;
  std::array<int, D> all_axes_;
  std::vector<Cell> cells_;
  std::vector<int> free_;
  std::vector<int> mark_;
  int stamp_ = 0;
  int last_finite_ = 0;
};

}  // namespace

std::vector<std::vector<int>> delaunay(const PointCloud& pc) {
  switch (pc.ambient_dim()) {
    case 2: return Triangulator<2>(pc).run();
    case 3: return Triangulator<3>(pc).run();
    default:
      throw InvalidArgumentError("Delaunay triangulation supports 2D and 3D only");
  }
}

}  // namespace topf
