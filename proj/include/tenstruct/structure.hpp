#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tenstruct/tensor.hpp"

namespace tenstruct {

// Comparison policy: strict means q > eps, weak means q >= -eps.
// eps = 0 keeps Definition 5.1 exact; a positive eps is a user opt-in for
// noisy inputs.
struct Tolerance {
  double eps = 0.0;

  Tolerance() = default;
  explicit Tolerance(double e) : eps(e) {
    if (!std::isfinite(eps) || eps < 0.0)
      throw NonFiniteEntry("tolerance must be finite and nonnegative");
  }

  template <typename Scalar>
  bool strict(Scalar q) const {
    return q > static_cast<Scalar>(eps);
  }
  template <typename Scalar>
  bool weak(Scalar q) const {
    return q >= -static_cast<Scalar>(eps);
  }
};

enum class BVerdict { B, B0NotB, Neither };

inline const char* toString(BVerdict v) {
  switch (v) {
    case BVerdict::B: return "B";
    case BVerdict::B0NotB: return "B0_NOT_B";
    default: return "NEITHER";
  }
}

// One offending entry, reported with its full one-based tuple.
struct Violation {
  int row = 0;
  std::vector<int> tuple;
  std::string detail;
};

template <typename Scalar>
struct RowDiagnostics {
  int i = 0;  // one-based row index
  Scalar rowSum = 0;
  Scalar beta = 0;
  Scalar threshold = 0;  // rowSum / n^{m-1}
  Scalar offdiagAbsSum = 0;
};

namespace detail {

// Per-row aggregates shared by every membership test. All sums accumulate in
// increasing lexicographic tuple order.
template <typename Scalar>
struct RowFacts {
  Scalar diag = 0;
  Scalar rowSum = 0;
  Scalar offAbsSum = 0;
  Scalar negAbsSum = 0;   // sum of |a| over negative off-diagonal entries
  Scalar maxOff = 0;      // largest off-diagonal entry; 0 if there are none
  Scalar maxAbsOff = 0;
  bool hasOff = false;
  bool zRow = true;       // all off-diagonal entries <= eps
};

// Local (within-row) offset of the diagonal slot of row i.
inline std::int64_t diagLocalOffset(int i, int dim, int order) {
  std::int64_t local = 0;
  for (int k = 1; k < order; ++k) local = local * dim + i;
  return local;
}

template <typename Scalar>
std::vector<RowFacts<Scalar>> rowFacts(const Tensor<Scalar>& A,
                                       const Tolerance& tol) {
  const int n = A.dim();
  const std::int64_t rowLen = A.size() / n;
  std::vector<RowFacts<Scalar>> facts(static_cast<std::size_t>(n));
  const Vector<Scalar>& a = A.entries();
  for (int i = 0; i < n; ++i) {
    RowFacts<Scalar>& f = facts[static_cast<std::size_t>(i)];
    const std::int64_t base = static_cast<std::int64_t>(i) * rowLen;
    const std::int64_t diagLocal = diagLocalOffset(i, n, A.order());
    f.diag = a(base + diagLocal);
    for (std::int64_t j = 0; j < rowLen; ++j) {
      const Scalar v = a(base + j);
      f.rowSum += v;
      if (j == diagLocal) continue;
      const Scalar mag = std::abs(v);
      f.offAbsSum += mag;
      if (v < Scalar(0)) f.negAbsSum += mag;
      f.maxOff = f.hasOff ? std::max(f.maxOff, v) : v;
      f.maxAbsOff = std::max(f.maxAbsOff, mag);
      if (tol.strict(v)) f.zRow = false;
      f.hasOff = true;
    }
    if (!f.hasOff) f.maxOff = Scalar(0);
  }
  return facts;
}

}  // namespace detail

// True iff every off-diagonal entry is <= eps.
template <typename Scalar>
bool isZTensor(const Tensor<Scalar>& A, const Tolerance& tol = {}) {
  const int n = A.dim();
  const std::int64_t rowLen = A.size() / n;
  for (int i = 0; i < n; ++i) {
    const std::int64_t base = static_cast<std::int64_t>(i) * rowLen;
    const std::int64_t diagLocal = detail::diagLocalOffset(i, n, A.order());
    for (std::int64_t j = 0; j < rowLen; ++j)
      if (j != diagLocal && tol.strict(A.coeff(base + j))) return false;
  }
  return true;
}

// a_{i..i} (>| >=) sum of |off-diagonal| in row i, for every i.
template <typename Scalar>
bool diagonalDominance(const Tensor<Scalar>& A, bool strict,
                       const Tolerance& tol = {}) {
  for (const auto& f : detail::rowFacts(A, tol)) {
    const Scalar margin = f.diag - f.offAbsSum;
    if (strict ? !tol.strict(margin) : !tol.weak(margin)) return false;
  }
  return true;
}

// beta_i = max{0, off-diagonal entries of row i}.
template <typename Scalar>
Scalar betaQuantity(const Tensor<Scalar>& A, int i) {
  if (i < 1 || i > A.dim())
    throw IndexOutOfRange("row index " + std::to_string(i) + " outside [1, " +
                          std::to_string(A.dim()) + "]");
  const auto facts = detail::rowFacts(A, Tolerance{});
  const auto& f = facts[static_cast<std::size_t>(i - 1)];
  return std::max(Scalar(0), f.maxOff);
}

template <typename Scalar>
struct BClassification {
  BVerdict verdict = BVerdict::Neither;
  std::optional<Violation> firstViolation;  // lexicographically first tuple
                                            // blocking the next stronger class
};

namespace detail {

// Locates the lexicographically first tuple of row i whose scaled definition
// inequality fails at the requested strictness; falls back to the diagonal
// tuple when only the row-sum sign fails.
template <typename Scalar>
Violation firstRowViolation(const Tensor<Scalar>& A, int i, Scalar rowSum,
                            Scalar nPow, bool strict, const Tolerance& tol) {
  const int n = A.dim();
  const std::int64_t rowLen = A.size() / n;
  const std::int64_t base = static_cast<std::int64_t>(i) * rowLen;
  const std::int64_t diagLocal = diagLocalOffset(i, n, A.order());
  for (std::int64_t j = 0; j < rowLen; ++j) {
    if (j == diagLocal) continue;
    const Scalar gap = rowSum - nPow * A.coeff(base + j);
    if (strict ? !tol.strict(gap) : !tol.weak(gap)) {
      Violation v;
      v.row = i + 1;
      v.tuple = A.tupleOneBased(base + j);
      v.detail = "row " + std::to_string(i + 1) + ": row sum " +
                 std::to_string(static_cast<double>(rowSum)) +
                 (strict ? " not greater than " : " below ") +
                 "n^{m-1} * entry " +
                 std::to_string(static_cast<double>(A.coeff(base + j)));
      return v;
    }
  }
  Violation v;
  v.row = i + 1;
  v.tuple = A.tupleOneBased(base + diagLocal);
  v.detail = "row " + std::to_string(i + 1) + ": row sum " +
             std::to_string(static_cast<double>(rowSum)) +
             (strict ? " not positive" : " negative");
  return v;
}

template <typename Scalar>
struct BRowStatus {
  bool strictOk = true;
  bool weakOk = true;
};

// Evaluates both the Definition-5.1 form (row sum against n^{m-1} times each
// off entry) and the Theorem-5.2 form (row sum against n^{m-1} * beta_i) and
// demands bitwise agreement; they share the same rounded products, so a
// mismatch means a bug, not noise.
template <typename Scalar>
std::vector<BRowStatus<Scalar>> bRowStatus(
    const Tensor<Scalar>& A, const std::vector<RowFacts<Scalar>>& facts,
    const Tolerance& tol) {
  const int n = A.dim();
  const Scalar nPow =
      static_cast<Scalar>(checkedPow(n, A.order() - 1));
  const std::int64_t rowLen = A.size() / n;
  std::vector<BRowStatus<Scalar>> status(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& f = facts[static_cast<std::size_t>(i)];
    bool defStrict = tol.strict(f.rowSum);
    bool defWeak = tol.weak(f.rowSum);
    const std::int64_t base = static_cast<std::int64_t>(i) * rowLen;
    const std::int64_t diagLocal = diagLocalOffset(i, n, A.order());
    for (std::int64_t j = 0; j < rowLen && (defStrict || defWeak); ++j) {
      if (j == diagLocal) continue;
      const Scalar gap = f.rowSum - nPow * A.coeff(base + j);
      defStrict = defStrict && tol.strict(gap);
      defWeak = defWeak && tol.weak(gap);
    }
    const Scalar beta = std::max(Scalar(0), f.maxOff);
    const Scalar thmGap = f.rowSum - nPow * beta;
    const bool thmStrict = tol.strict(thmGap);
    const bool thmWeak = tol.weak(thmGap);
    if (defStrict != thmStrict || defWeak != thmWeak)
      throw InternalDisagreement(
          "b_classify: definition form and beta form disagree on row " +
          std::to_string(i + 1));
    status[static_cast<std::size_t>(i)] = {defStrict, defWeak};
  }
  return status;
}

}  // namespace detail

template <typename Scalar>
BClassification<Scalar> bClassify(const Tensor<Scalar>& A,
                                  const Tolerance& tol = {}) {
  const auto facts = detail::rowFacts(A, tol);
  const auto status = detail::bRowStatus(A, facts, tol);
  const Scalar nPow = static_cast<Scalar>(checkedPow(A.dim(), A.order() - 1));

  BClassification<Scalar> out;
  bool allStrict = true, allWeak = true;
  for (const auto& s : status) {
    allStrict = allStrict && s.strictOk;
    allWeak = allWeak && s.weakOk;
  }
  if (allStrict) {
    out.verdict = BVerdict::B;
    return out;
  }
  out.verdict = allWeak ? BVerdict::B0NotB : BVerdict::Neither;
  // first violation blocking the next stronger class
  const bool strictScan = allWeak;
  for (int i = 0; i < A.dim(); ++i) {
    const auto& s = status[static_cast<std::size_t>(i)];
    if (strictScan ? s.strictOk : s.weakOk) continue;
    out.firstViolation = detail::firstRowViolation(
        A, i, facts[static_cast<std::size_t>(i)].rowSum, nPow, strictScan,
        tol);
    break;
  }
  return out;
}

enum class EntryMode { B, B0 };

// Necessary entry conditions: the diagonal dominates max{0, off entries},
// the sum of magnitudes of negative off entries, and the magnitude of every
// off entry (strictly for mode B, weakly for mode B0).
template <typename Scalar>
bool entryNecessaryConditions(const Tensor<Scalar>& A, EntryMode mode,
                              const Tolerance& tol = {}) {
  const bool strict = (mode == EntryMode::B);
  for (const auto& f : detail::rowFacts(A, tol)) {
    const Scalar beta = std::max(Scalar(0), f.maxOff);
    const Scalar gaps[3] = {f.diag - beta, f.diag - f.negAbsSum,
                            f.diag - f.maxAbsOff};
    for (const Scalar g : gaps)
      if (strict ? !tol.strict(g) : !tol.weak(g)) return false;
  }
  return true;
}

template <typename Scalar>
struct RowNormBound {
  Scalar tBound = 0;                 // max_i sum_t |a_{i t}|
  std::optional<Scalar> fBound;      // tBound^{1/(m-1)}, even m only
};

template <typename Scalar>
RowNormBound<Scalar> rowNormBound(const Tensor<Scalar>& A) {
  const int n = A.dim();
  const std::int64_t rowLen = A.size() / n;
  Scalar tBound = 0;
  for (int i = 0; i < n; ++i) {
    Scalar s = 0;
    const std::int64_t base = static_cast<std::int64_t>(i) * rowLen;
    for (std::int64_t j = 0; j < rowLen; ++j) s += std::abs(A.coeff(base + j));
    tBound = std::max(tBound, s);
  }
  RowNormBound<Scalar> out{tBound, std::nullopt};
  if (A.order() % 2 == 0)
    out.fBound = detail::signedRoot(tBound, A.order() - 1);
  return out;
}

template <typename Scalar>
struct ClassificationReport {
  bool isZ = false;
  bool isB = false;
  bool isB0 = false;
  bool strictlyDiagDominated = false;
  bool diagDominated = false;
  bool entryConditionsB = false;
  bool entryConditionsB0 = false;
  // Theorem 5.5 recorded as a cross-check flag: for Z tensors the B (B0)
  // verdict and strict (weak) dominance must coincide.
  bool zB0DominanceEquiv = true;
  BVerdict verdict = BVerdict::Neither;
  std::vector<RowDiagnostics<Scalar>> perRow;
  std::vector<Violation> failures;
};

template <typename Scalar>
ClassificationReport<Scalar> classify(const Tensor<Scalar>& A,
                                      const Tolerance& tol = {}) {
  const auto facts = detail::rowFacts(A, tol);
  const auto status = detail::bRowStatus(A, facts, tol);
  const Scalar nPow = static_cast<Scalar>(checkedPow(A.dim(), A.order() - 1));

  ClassificationReport<Scalar> r;
  r.isZ = true;
  r.isB = true;
  r.isB0 = true;
  r.strictlyDiagDominated = true;
  r.diagDominated = true;
  for (int i = 0; i < A.dim(); ++i) {
    const auto& f = facts[static_cast<std::size_t>(i)];
    const auto& s = status[static_cast<std::size_t>(i)];
    r.isZ = r.isZ && f.zRow;
    r.isB = r.isB && s.strictOk;
    r.isB0 = r.isB0 && s.weakOk;
    const Scalar margin = f.diag - f.offAbsSum;
    r.strictlyDiagDominated = r.strictlyDiagDominated && tol.strict(margin);
    r.diagDominated = r.diagDominated && tol.weak(margin);
    RowDiagnostics<Scalar> d;
    d.i = i + 1;
    d.rowSum = f.rowSum;
    d.beta = std::max(Scalar(0), f.maxOff);
    d.threshold = f.rowSum / nPow;
    d.offdiagAbsSum = f.offAbsSum;
    r.perRow.push_back(d);
  }
  r.entryConditionsB = entryNecessaryConditions(A, EntryMode::B, tol);
  r.entryConditionsB0 = entryNecessaryConditions(A, EntryMode::B0, tol);
  r.verdict = r.isB ? BVerdict::B
                    : (r.isB0 ? BVerdict::B0NotB : BVerdict::Neither);

  if (r.verdict != BVerdict::B) {
    const bool strictScan = r.isB0;
    for (int i = 0; i < A.dim(); ++i) {
      const auto& s = status[static_cast<std::size_t>(i)];
      if (strictScan ? s.strictOk : s.weakOk) continue;
      r.failures.push_back(detail::firstRowViolation(
          A, i, facts[static_cast<std::size_t>(i)].rowSum, nPow, strictScan,
          tol));
    }
  }

  r.zB0DominanceEquiv = !r.isZ || (r.isB0 == r.diagDominated &&
                                   r.isB == r.strictlyDiagDominated);

  if (r.isB && !r.isB0)
    throw InternalDisagreement("classify: is_B without is_B0");
  if (r.strictlyDiagDominated && !r.diagDominated)
    throw InternalDisagreement("classify: strict dominance without weak");
  if (r.isB && !r.entryConditionsB)
    throw InternalDisagreement("classify: is_B without entry conditions");
  if (r.isB0 && !r.entryConditionsB0)
    throw InternalDisagreement("classify: is_B0 without weak entry conditions");
  return r;
}

}  // namespace tenstruct
