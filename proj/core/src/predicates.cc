#include "topf/predicates.h"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "topf/error.h"

namespace topf {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr int kMaxN = 5;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Laplace expansion of an n x n row-major matrix; also accumulates the
// permanent of |m| so the caller can bound the rounding error.
double det_and_permanent(const double* m, int n, double* permanent) {
  if (n == 1) {
    *permanent = std::abs(m[0]);
    return m[0];
  }
  if (n == 2) {
    *permanent = std::abs(m[0] * m[3]) + std::abs(m[1] * m[2]);
    return m[0] * m[3] - m[1] * m[2];
  }
  std::array<double, kMaxN * kMaxN> minor{};
  double det = 0.0, perm = 0.0;
  for (int c = 0; c < n; ++c) {
    int k = 0;
    for (int r = 1; r < n; ++r) {
      for (int cc = 0; cc < n; ++cc) {
        if (cc != c) minor[k++] = m[r * n + cc];
      }
    }
    double sub_perm = 0.0;
    double sub = det_and_permanent(minor.data(), n - 1, &sub_perm);
    double term = m[c] * sub;
    det += (c % 2 == 0) ? term : -term;
    perm += std::abs(m[c]) * sub_perm;
  }
  *permanent = perm;
  return det;
}

// Exact integer image of a set of doubles: every value becomes
// mantissa * 2^(exponent - min_exponent), a common positive scaling.
class IntegerScale {
 public:
  void observe(double x) {
    if (x == 0.0) return;
    int e = 0;
    std::frexp(x, &e);
    min_exp_ = std::min(min_exp_, e - 53);
  }
  BigInt operator()(double x) const {
    if (x == 0.0) return 0;
    int e = 0;
    double m = std::frexp(x, &e);
    BigInt v = static_cast<std::int64_t>(std::ldexp(m, 53));
    return v << static_cast<unsigned>(e - 53 - min_exp_);
  }

 private:
  int min_exp_ = std::numeric_limits<int>::max();
};

// Fraction-free (Bareiss) elimination.
int exact_det_sign(std::vector<BigInt> m, int n) {
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k * n + k] == 0) {
      int pivot = -1;
      for (int r = k + 1; r < n; ++r) {
        if (m[r * n + k] != 0) {
          pivot = r;
          break;
        }
      }
      if (pivot < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(m[pivot * n + c], m[k * n + c]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
      }
    }
    prev = m[k * n + k];
  }
  const BigInt& det = m[n * n - 1];
  return det == 0 ? 0 : (det > 0 ? sign : -sign);
}

}  // namespace

int Predicates::orientation(std::span<const int> ids,
                            std::span<const int> axes) const {
  const int d = static_cast<int>(axes.size());
  if (static_cast<int>(ids.size()) != d + 1 || d < 1 || d > kMaxN - 1) {
    throw InvalidArgumentError("orientation: bad arity");
  }
  std::array<double, kMaxN * kMaxN> m{};
  for (int j = 1; j <= d; ++j) {
    for (int a = 0; a < d; ++a) {
      m[(j - 1) * d + a] = pc_.coord(ids[j], axes[a]) - pc_.coord(ids[0], axes[a]);
    }
  }
  double perm = 0.0;
  double det = det_and_permanent(m.data(), d, &perm);
  // The homogeneous determinant equals (-1)^d times the translated one.
  const int parity = (d % 2 == 0) ? 1 : -1;
  const double bound = 16.0 * kEps * perm;
  if (det > bound) return parity;
  if (det < -bound) return -parity;

  IntegerScale scale;
  for (int j = 0; j <= d; ++j) {
    for (int a = 0; a < d; ++a) scale.observe(pc_.coord(ids[j], axes[a]));
  }
  std::vector<BigInt> h((d + 1) * (d + 1));
  for (int j = 0; j <= d; ++j) {
    for (int a = 0; a < d; ++a) h[j * (d + 1) + a] = scale(pc_.coord(ids[j], axes[a]));
    h[j * (d + 1) + d] = 1;
  }
  return exact_det_sign(std::move(h), d + 1);
}

int Predicates::lifted(std::span<const int> ids, std::span<const int> axes) const {
  const int d = static_cast<int>(axes.size());
  const int n = d + 1;
  if (static_cast<int>(ids.size()) != d + 2 || d < 1 || d > kMaxN - 1) {
    throw InvalidArgumentError("lifted: bad arity");
  }
  const int dim = pc_.ambient_dim();
  const int q = ids[d + 1];

  std::array<double, kMaxN * kMaxN> m{};
  for (int i = 0; i <= d; ++i) {
    for (int a = 0; a < d; ++a) {
      m[i * n + a] = pc_.coord(ids[i], axes[a]) - pc_.coord(q, axes[a]);
    }
    double lift = 0.0;
    for (int k = 0; k < dim; ++k) {
      double diff = pc_.coord(ids[i], k) - pc_.coord(q, k);
      lift += diff * diff;
    }
    m[i * n + d] = lift;
  }
  double perm = 0.0;
  double det = det_and_permanent(m.data(), n, &perm);
  const double bound = 64.0 * kEps * perm;
  if (det > bound) return 1;
  if (det < -bound) return -1;

  // Exact homogeneous form: columns are the projected coordinates, the lift
  // and a column of ones.
  const int hn = d + 2;
  // Columns may be scaled independently by positive factors without changing
  // the sign, so all coordinates share one integer scale.
  IntegerScale scale;
  for (int i = 0; i < hn; ++i) {
    for (int k = 0; k < dim; ++k) scale.observe(pc_.coord(ids[i], k));
  }
  std::vector<BigInt> h(hn * hn);
  for (int i = 0; i < hn; ++i) {
    BigInt norm = 0;
    for (int k = 0; k < dim; ++k) {
      BigInt c = scale(pc_.coord(ids[i], k));
      norm += c * c;
    }
    for (int a = 0; a < d; ++a) h[i * hn + a] = scale(pc_.coord(ids[i], axes[a]));
    h[i * hn + d] = norm;
    h[i * hn + d + 1] = 1;
  }
  int s = exact_det_sign(h, hn);
  if (s != 0) return s;

  // Symbolic perturbation: the coefficient of the lift perturbation of row r
  // is the cofactor of entry (r, d). Rows are tried from most to least
  // dominant perturbation.
  std::vector<int> rows(hn);
  std::iota(rows.begin(), rows.end(), 0);
  std::sort(rows.begin(), rows.end(), [&](int a, int b) { return ids[a] > ids[b]; });
  for (int r : rows) {
    std::vector<BigInt> minor;
    minor.reserve(n * n);
    for (int i = 0; i < hn; ++i) {
      if (i == r) continue;
      for (int c = 0; c < hn; ++c) {
        if (c != d) minor.push_back(h[i * hn + c]);
      }
    }
    int cs = exact_det_sign(std::move(minor), n);
    if (cs != 0) return ((r + d) % 2 == 0) ? cs : -cs;
  }
  return 0;
}

}  // namespace topf
