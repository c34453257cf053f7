#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tenstruct/errors.hpp"

namespace tenstruct {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vectord = Vector<double>;

// Hard cap on stored entries: n^m <= 10^7.
inline constexpr std::int64_t kMaxEntries = 10'000'000;

inline std::string shapeString(int order, int dim) {
  return "order " + std::to_string(order) + ", dim " + std::to_string(dim);
}

// n^m with the entry cap enforced while multiplying, so it cannot overflow.
inline std::int64_t checkedPow(int dim, int order) {
  std::int64_t p = 1;
  for (int k = 0; k < order; ++k) {
    p *= dim;
    if (p > kMaxEntries)
      throw ResourceLimit("tensor with " + shapeString(order, dim) +
                          " exceeds the entry cap of 10^7");
  }
  return p;
}

// Sparse-construction entry: one-based coordinates plus a value.
template <typename Scalar>
struct CoordEntry {
  std::vector<int> idx;
  Scalar val;
};

// Dense tensor of order m >= 2 over R^n, entries in row-major (lexicographic)
// layout. Immutable after construction; every factory validates shape and
// finiteness. External coordinates are one-based, matching the usual
// subscript convention; flat offsets and decoded tuples used internally are
// zero-based.
template <typename Scalar = double>
class Tensor {
 public:
  Tensor(int order, int dim, Vector<Scalar> entries)
      : m_order(order), m_dim(dim), m_entries(std::move(entries)) {
    if (m_order < 2)
      throw DimensionMismatch("tensor order must be at least 2, got " +
                              std::to_string(m_order));
    if (m_dim < 1)
      throw DimensionMismatch("tensor dimension must be at least 1, got " +
                              std::to_string(m_dim));
    const std::int64_t expected = checkedPow(m_dim, m_order);
    if (m_entries.size() != expected)
      throw SizeMismatch("dense data has " + std::to_string(m_entries.size()) +
                         " entries, expected " + std::to_string(expected) +
                         " for " + shapeString(m_order, m_dim));
    for (Eigen::Index k = 0; k < m_entries.size(); ++k)
      if (!std::isfinite(static_cast<double>(m_entries(k))))
        throw NonFiniteEntry("entry at flat offset " + std::to_string(k) +
                             " is not finite");
  }

  Tensor(int order, int dim, const std::vector<Scalar>& entries)
      : Tensor(order, dim,
               Vector<Scalar>(Eigen::Map<const Vector<Scalar>>(
                   entries.data(),
                   static_cast<Eigen::Index>(entries.size())))) {}

  static Tensor fromCoords(int order, int dim,
                           std::span<const CoordEntry<Scalar>> coords) {
    const std::int64_t size = checkedPow(std::max(dim, 1), std::max(order, 2));
    Vector<Scalar> data = Vector<Scalar>::Zero(size);
    std::vector<bool> seen(static_cast<std::size_t>(size), false);
    for (const CoordEntry<Scalar>& e : coords) {
      if (static_cast<int>(e.idx.size()) != order)
        throw SizeMismatch("coordinate tuple has " +
                           std::to_string(e.idx.size()) + " indices, expected " +
                           std::to_string(order));
      std::int64_t flat = 0;
      for (int i : e.idx) {
        if (i < 1 || i > dim)
          throw IndexOutOfRange("coordinate index " + std::to_string(i) +
                                " outside [1, " + std::to_string(dim) + "]");
        flat = flat * dim + (i - 1);
      }
      if (seen[static_cast<std::size_t>(flat)])
        throw DuplicateCoordinate("coordinate listed twice at flat offset " +
                                  std::to_string(flat));
      seen[static_cast<std::size_t>(flat)] = true;
      data(flat) = e.val;
    }
    return Tensor(order, dim, std::move(data));
  }

  int order() const { return m_order; }
  int dim() const { return m_dim; }
  std::int64_t size() const { return m_entries.size(); }
  const Vector<Scalar>& entries() const { return m_entries; }

  Scalar coeff(std::int64_t flat) const { return m_entries(flat); }

  // One-based multi-index access.
  Scalar at(std::span<const int> idx) const {
    return m_entries(flatIndex(idx));
  }
  Scalar at(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }

  std::int64_t flatIndex(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != m_order)
      throw SizeMismatch("index tuple has " + std::to_string(idx.size()) +
                         " components, expected " + std::to_string(m_order));
    std::int64_t flat = 0;
    for (int i : idx) {
      if (i < 1 || i > m_dim)
        throw IndexOutOfRange("index " + std::to_string(i) + " outside [1, " +
                              std::to_string(m_dim) + "]");
      flat = flat * m_dim + (i - 1);
    }
    return flat;
  }

  // Decodes a flat offset into a zero-based tuple.
  void decode(std::int64_t flat, std::span<int> tuple) const {
    for (int k = m_order - 1; k >= 0; --k) {
      tuple[static_cast<std::size_t>(k)] = static_cast<int>(flat % m_dim);
      flat /= m_dim;
    }
  }

  std::vector<int> tupleOneBased(std::int64_t flat) const {
    std::vector<int> t(static_cast<std::size_t>(m_order));
    decode(flat, t);
    for (int& v : t) ++v;
    return t;
  }

 private:
  int m_order;
  int m_dim;
  Vector<Scalar> m_entries;
};

using Tensord = Tensor<double>;

template <typename Scalar>
Tensor<Scalar> operator+(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  if (a.order() != b.order() || a.dim() != b.dim())
    throw DimensionMismatch("cannot add tensor of " +
                            shapeString(a.order(), a.dim()) + " to tensor of " +
                            shapeString(b.order(), b.dim()));
  return Tensor<Scalar>(a.order(), a.dim(), a.entries() + b.entries());
}

template <typename Scalar>
Tensor<Scalar> operator*(Scalar c, const Tensor<Scalar>& a) {
  if (!std::isfinite(static_cast<double>(c)))
    throw NonFiniteEntry("scalar factor is not finite");
  return Tensor<Scalar>(a.order(), a.dim(), Vector<Scalar>(c * a.entries()));
}

template <typename Scalar>
Tensor<Scalar> zeroTensor(int order, int dim) {
  return Tensor<Scalar>(order, dim,
                        Vector<Scalar>::Zero(checkedPow(dim, order)));
}

// Diagonal tensor with d on the slots (i, i, ..., i).
template <typename Scalar>
Tensor<Scalar> diagonalTensor(int order, const Vector<Scalar>& d) {
  const int dim = static_cast<int>(d.size());
  if (dim < 1) throw DimensionMismatch("diagonal vector is empty");
  Vector<Scalar> data = Vector<Scalar>::Zero(checkedPow(dim, order));
  std::int64_t step = 0;  // distance between consecutive diagonal slots + 1
  for (int k = 0; k < order; ++k) step = step * dim + 1;
  for (int i = 0; i < dim; ++i) data(step * i) = d(i);
  return Tensor<Scalar>(order, dim, std::move(data));
}

template <typename Scalar>
Tensor<Scalar> identityTensor(int order, int dim) {
  return diagonalTensor<Scalar>(order, Vector<Scalar>::Ones(dim));
}

namespace detail {

/// Monomial table over `factors` indices: v[(j_1..j_f)] = x_{j_1}···x_{j_f}
// in lexicographic layout, built by left-to-right extension so the grouping
// of each product is deterministic.
template <typename Scalar>
void monomialTable(const Vector<Scalar>& x, int factors, Vector<Scalar>& v) {
  const Eigen::Index n = x.size();
  v.resize(1);
  v(0) = Scalar(1);
  Vector<Scalar> next;
  for (int k = 0; k < factors; ++k) {
    next.resize(v.size() * n);
    for (Eigen::Index i = 0; i < v.size(); ++i)
      for (Eigen::Index j = 0; j < n; ++j) next(i * n + j) = v(i) * x(j);
    v.swap(next);
  }
}

}  // namespace detail

enum class Summation { Plain, Kahan };

// y = A x^{m-1}: y_i = sum over (i_2..i_m) of a_{i i_2..i_m} x_{i_2}···x_{i_m},
// each row accumulated in increasing lexicographic tuple order. The Kahan mode
// uses compensated accumulation in the same order.
template <typename Scalar>
Vector<Scalar> contract(const Tensor<Scalar>& A, const Vector<Scalar>& x,
                        Summation mode = Summation::Plain) {
  if (x.size() != A.dim())
    throw DimensionMismatch("vector of size " + std::to_string(x.size()) +
                            " against tensor of dim " +
                            std::to_string(A.dim()));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!std::isfinite(static_cast<double>(x(i))))
      throw NonFiniteEntry("vector entry " + std::to_string(i + 1) +
                           " is not finite");

  Vector<Scalar> v;
  detail::monomialTable(x, A.order() - 1, v);
  const Eigen::Index n = A.dim();
  const Eigen::Index block = v.size();
  Vector<Scalar> y(n);
  const Vector<Scalar>& a = A.entries();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index base = i * block;
    if (mode == Summation::Plain) {
      Scalar s = Scalar(0);
      for (Eigen::Index j = 0; j < block; ++j) s += a(base + j) * v(j);
      y(i) = s;
    } else {
      Scalar s = Scalar(0), c = Scalar(0);
      for (Eigen::Index j = 0; j < block; ++j) {
        const Scalar term = a(base + j) * v(j) - c;
        const Scalar t = s + term;
        c = (t - s) - term;
        s = t;
      }
      y(i) = s;
    }
  }
  return y;
}

// A x^m = x . (A x^{m-1}), accumulated in increasing component order.
template <typename Scalar>
Scalar polynomialValue(const Tensor<Scalar>& A, const Vector<Scalar>& x,
                       Summation mode = Summation::Plain) {
  const Vector<Scalar> y = contract(A, x, mode);
  Scalar s = Scalar(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) s += x(i) * y(i);
  return s;
}

namespace detail {

template <typename Scalar>
Scalar intPow(Scalar base, std::int64_t e) {
  // binary exponentiation; e >= 0
  Scalar r = Scalar(1);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

/// Real r-th root with sign convention: even r requires v >= 0, odd r maps
// sign(v)·|v|^{1/r}. One Newton step polishes the libm seed.
template <typename Scalar>
Scalar signedRoot(Scalar v, std::int64_t r) {
  if (r == 1) return v;
  if (v == Scalar(0)) return Scalar(0);
  if (r % 2 == 0 && v < Scalar(0))
    throw EvenRootOfNegative("even root of negative value " +
                             std::to_string(static_cast<double>(v)));
  const Scalar mag = std::abs(v);
  Scalar y;
  if (r == 2) {
    y = std::sqrt(mag);
  } else {
    // libm cbrt/pow can be an ulp off; sqrt is correctly rounded already
    y = r == 3 ? std::cbrt(mag)
               : std::pow(mag, Scalar(1) / static_cast<Scalar>(r));
    const Scalar yr1 = intPow(y, r - 1);
    if (yr1 > Scalar(0)) y -= (yr1 * y - mag) / (static_cast<Scalar>(r) * yr1);
  }
  return v < Scalar(0) ? -y : y;
}

}  // namespace detail

// Reduced rational exponent p/q with q >= 1.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw ParseError("rational exponent with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
};

/// x^{[p]}: componentwise signed power with rational exponent p = num/den.
// Even den rejects negative components; negative num maps 0 to +inf only if
// present in x, which the caller must expect.
template <typename Scalar>
Vector<Scalar> componentwisePower(const Vector<Scalar>& x, Rational p) {
  Vector<Scalar> y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Scalar root = detail::signedRoot(x(i), p.den);
    if (p.num >= 0) {
      y(i) = detail::intPow(root, p.num);
    } else {
      y(i) = Scalar(1) / detail::intPow(root, -p.num);
    }
  }
  return y;
}

// Strictly increasing list of one-based indices.
class IndexSet {
 public:
  explicit IndexSet(std::vector<int> indices) : m_indices(std::move(indices)) {
    if (m_indices.empty())
      throw EmptyIndexSet("index set must contain at least one index");
    std::sort(m_indices.begin(), m_indices.end());
    for (std::size_t k = 0; k + 1 < m_indices.size(); ++k)
      if (m_indices[k] == m_indices[k + 1])
        throw DuplicateCoordinate("index " + std::to_string(m_indices[k]) +
                                  " listed twice in index set");
  }

  static IndexSet full(int n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    return IndexSet(std::move(all));
  }

  int size() const { return static_cast<int>(m_indices.size()); }
  const std::vector<int>& indices() const { return m_indices; }

 private:
  std::vector<int> m_indices;
};

// Principal sub-tensor A[J]: entries a_{j_{k_1} ... j_{k_m}} for k in J^m,
// relabeled to run over 1..|J|.
template <typename Scalar>
Tensor<Scalar> principalSubtensor(const Tensor<Scalar>& A, const IndexSet& J) {
  const int n = A.dim();
  for (int i : J.indices())
    if (i < 1 || i > n)
      throw IndexOutOfRange("index " + std::to_string(i) +
                            " outside [1, " + std::to_string(n) + "]");
  const int r = J.size();
  const int m = A.order();
  const std::int64_t size = checkedPow(r, m);
  Vector<Scalar> data(size);
  std::vector<int> tuple(static_cast<std::size_t>(m), 0);
  const std::vector<int>& map = J.indices();
  for (std::int64_t flat = 0; flat < size; ++flat) {
    std::int64_t src = 0;
    for (int k = 0; k < m; ++k) src = src * n + (map[tuple[k]] - 1);
    data(flat) = A.coeff(src);
    for (int k = m - 1; k >= 0; --k) {  // odometer over J^m
      if (++tuple[k] < r) break;
      tuple[k] = 0;
    }
  }
  return Tensor<Scalar>(m, r, std::move(data));
}

// True iff every entry equals the entry at the sorted permutation of its
// tuple (bitwise comparison, no tolerance).
template <typename Scalar>
bool isSymmetric(const Tensor<Scalar>& A) {
  const int m = A.order();
  const int n = A.dim();
  std::vector<int> tuple(static_cast<std::size_t>(m));
  for (std::int64_t flat = 0; flat < A.size(); ++flat) {
    A.decode(flat, tuple);
    std::vector<int> rep = tuple;
    std::sort(rep.begin(), rep.end());
    std::int64_t repFlat = 0;
    for (int v : rep) repFlat = repFlat * n + v;
    if (A.coeff(flat) != A.coeff(repFlat)) return false;
  }
  return true;
}

// Symmetric part: each entry becomes the mean of its permutation orbit.
template <typename Scalar>
Tensor<Scalar> symmetrize(const Tensor<Scalar>& A) {
  const int m = A.order();
  const int n = A.dim();
  Vector<Scalar> orbitSum = Vector<Scalar>::Zero(A.size());
  Eigen::VectorXi orbitCount = Eigen::VectorXi::Zero(A.size());
  std::vector<int> tuple(static_cast<std::size_t>(m));
  std::vector<std::int64_t> rep(static_cast<std::size_t>(A.size()));
  for (std::int64_t flat = 0; flat < A.size(); ++flat) {
    A.decode(flat, tuple);
    std::vector<int> sorted = tuple;
    std::sort(sorted.begin(), sorted.end());
    std::int64_t repFlat = 0;
    for (int v : sorted) repFlat = repFlat * n + v;
    rep[static_cast<std::size_t>(flat)] = repFlat;
    orbitSum(repFlat) += A.coeff(flat);
    orbitCount(repFlat) += 1;
  }
  Vector<Scalar> data(A.size());
  for (std::int64_t flat = 0; flat < A.size(); ++flat) {
    const std::int64_t r = rep[static_cast<std::size_t>(flat)];
    data(flat) = orbitSum(r) / static_cast<Scalar>(orbitCount(r));
  }
  return Tensor<Scalar>(m, n, std::move(data));
}

}  // namespace tenstruct
