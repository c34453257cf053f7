#pragma once

#include <cstdlib>
#include <limits>
#include <optional>

#include "tenstruct/rng.hpp"
#include "tenstruct/structure.hpp"
#include "tenstruct/tensor.hpp"

namespace tenstruct {

enum class MapKind { T, F };
enum class AlphaMethod { Grid, Multistart };

inline const char* toString(MapKind k) { return k == MapKind::T ? "T" : "F"; }
inline const char* toString(AlphaMethod m) {
  return m == AlphaMethod::Grid ? "grid" : "multistart";
}

// T_A(x) = ||x||_2^{2-m} A x^{m-1}, T_A(0) = 0. Positively homogeneous of
// degree 1; reduces to the plain matrix action for m = 2.
template <typename Scalar>
Vector<Scalar> tOperator(const Tensor<Scalar>& A, const Vector<Scalar>& x) {
  if (x.size() != A.dim())
    throw DimensionMismatch("vector of size " + std::to_string(x.size()) +
                            " against tensor of dim " +
                            std::to_string(A.dim()));
  if (x.isZero(Scalar(0))) return Vector<Scalar>::Zero(A.dim());
  Vector<Scalar> y = contract(A, x);
  if (A.order() != 2) {
    const Scalar c = std::pow(x.squaredNorm(),
                              Scalar(0.5) * Scalar(2 - A.order()));
    y *= c;
  }
  return y;
}

// F_A(x) = (A x^{m-1})^{[1/(m-1)]}, defined for even m only.
template <typename Scalar>
Vector<Scalar> fOperator(const Tensor<Scalar>& A, const Vector<Scalar>& x) {
  if (A.order() % 2 != 0)
    throw OddOrderUnsupported("F operator requires even order, got " +
                              std::to_string(A.order()));
  if (x.size() != A.dim())
    throw DimensionMismatch("vector of size " + std::to_string(x.size()) +
                            " against tensor of dim " +
                            std::to_string(A.dim()));
  return componentwisePower(contract(A, x), Rational(1, A.order() - 1));
}

struct AlphaConfig {
  AlphaMethod method = AlphaMethod::Grid;
  double h = 0.05;               // grid resolution
  int starts = 64;               // multistart runs
  int iters = 500;               // max sweeps per run
  std::uint64_t seed = 1;
  std::int64_t maxEvals = 100'000'000;  // grid size cap; <= 0 means uncapped
};

template <typename Scalar>
struct AlphaEstimate {
  Scalar value = 0;
  Vector<Scalar> minimizer;
  MapKind map = MapKind::T;
  AlphaMethod method = AlphaMethod::Grid;
  double h = 0;          // effective lattice spacing (grid method)
  int starts = 0;        // multistart metadata
  int iters = 0;
  bool certified = false;
  std::int64_t evaluations = 0;
};

namespace detail {

template <typename Scalar>
bool lexLess(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return a.size() < b.size();
}

template <typename Scalar>
struct BestPoint {
  Scalar value = std::numeric_limits<Scalar>::infinity();
  Vector<Scalar> x;
  bool set = false;

  void consider(Scalar v, const Vector<Scalar>& cand) {
    if (!set || v < value || (v == value && lexLess(cand, x))) {
      value = v;
      x = cand;
      set = true;
    }
  }
};

// In-place contraction used by the search loops: builds the monomial table in
// preallocated buffers, then one dot per row. No allocation after warm-up.
template <typename Scalar>
struct ContractionScratch {
  Vector<Scalar> bufA, bufB;

  void prepare(int dim, int order) {
    const std::int64_t len = checkedPow(dim, order - 1);
    if (bufA.size() < len) {
      bufA.resize(len);
      bufB.resize(len);
    }
  }

  void run(const Tensor<Scalar>& A, const Vector<Scalar>& x,
           Vector<Scalar>& y) {
    const Eigen::Index n = A.dim();
    Scalar* cur = bufA.data();
    Scalar* alt = bufB.data();
    cur[0] = Scalar(1);
    Eigen::Index len = 1;
    for (int k = 0; k < A.order() - 1; ++k) {
      for (Eigen::Index i = 0; i < len; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          alt[i * n + j] = cur[i] * x(j);
      std::swap(cur, alt);
      len *= n;
    }
    const Vector<Scalar>& a = A.entries();
    y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar* row = a.data() + i * len;
      Scalar s = Scalar(0);
      for (Eigen::Index j = 0; j < len; ++j) s += row[j] * cur[j];
      y(i) = s;
    }
  }
};

// Point evaluation on the infinity sphere. phi maximizes the signed product
// of the chosen map over all indices; psi restricts the max to the support
// of x and skips the T-map norm scaling, so for T it reads the raw products
// x_i (A x^{m-1})_i (the ground truth for the P0 decision; phi and psi agree
// in sign at every point). For odd m the same contraction also yields the
// values at -x (every product flips sign), which the searchers exploit.
template <typename Scalar>
struct SphereEval {
  const Tensor<Scalar>* A = nullptr;
  MapKind map = MapKind::T;
  ContractionScratch<Scalar> scratch;
  Vector<Scalar> y;
  std::int64_t evals = 0;

  struct Value {
    Scalar phi, psi;
    Scalar phiNeg, psiNeg;  // values at -x; only meaningful for odd m
  };

  void bind(const Tensor<Scalar>& tensor, MapKind kind) {
    A = &tensor;
    map = kind;
    scratch.prepare(tensor.dim(), tensor.order());
  }

  Value operator()(const Vector<Scalar>& x) {
    ++evals;
    scratch.run(*A, x, y);
    const int m = A->order();
    const Scalar lowest = -std::numeric_limits<Scalar>::infinity();
    Scalar hi = lowest, lo = -lowest;
    Scalar hiS = lowest, loS = -lowest;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Scalar p;
      if (map == MapKind::F) {
        p = x(i) * signedRoot(y(i), static_cast<std::int64_t>(m - 1));
      } else {
        p = x(i) * y(i);
      }
      hi = std::max(hi, p);
      lo = std::min(lo, p);
      if (x(i) != Scalar(0)) {
        hiS = std::max(hiS, p);
        loS = std::min(loS, p);
      }
    }
    // psi stays on the raw products x_i (A x^{m-1})_i: the refutation
    // criterion reads sign per point, and witnesses keep the stated products
    Scalar c = Scalar(1);
    if (map == MapKind::T && m != 2)
      c = std::pow(x.squaredNorm(), Scalar(0.5) * Scalar(2 - m));
    return Value{c * hi, hiS, c * -lo, -loS};
  }
};

inline double latticeCoord(std::int64_t d, std::int64_t K) {
  return (2.0 * static_cast<double>(d)) / static_cast<double>(K) - 1.0;
}

inline std::int64_t latticeSteps(double h) {
  if (!std::isfinite(h) || h <= 0.0 || h > 2.0)
    throw ParseError("grid resolution h must lie in (0, 2]");
  return std::max<std::int64_t>(1, std::llround(2.0 / h));
}

template <typename Scalar>
struct SphereScan {
  BestPoint<Scalar> phi;  // min of the all-indices objective: alpha
  BestPoint<Scalar> psi;  // min of the support-restricted objective
  std::int64_t evaluations = 0;
  double hEffective = 0;
};

// Number of lattice points on the faces of the infinity sphere:
// 2n (K+1)^{n-1}, checked against the evaluation cap.
inline std::int64_t faceLatticeSize(int n, std::int64_t K,
                                    std::int64_t maxEvals) {
  const std::int64_t cap = maxEvals > 0
                               ? maxEvals
                               : std::numeric_limits<std::int64_t>::max() / 4;
  std::int64_t perFace = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (perFace > cap / (K + 1) + 1)
      throw ResourceLimit("grid of " + std::to_string(n) + " dims at " +
                          std::to_string(K + 1) +
                          " points per axis exceeds the evaluation cap " +
                          std::to_string(cap));
    perFace *= (K + 1);
  }
  const std::int64_t total = 2 * static_cast<std::int64_t>(n) * perFace;
  if (total > cap)
    throw ResourceLimit("face lattice needs " + std::to_string(total) +
                        " evaluations, cap is " + std::to_string(cap));
  return total;
}

// Exhaustive scan of the face lattice for m = 2: y = Ax is refreshed from a
// base vector with the innermost coordinate zeroed, so each point costs O(n)
// without cumulative rounding drift.
template <typename Scalar>
SphereScan<Scalar> gridScanMatrix(const Tensor<Scalar>& A, double h,
                                  std::int64_t maxEvals) {
  const int n = A.dim();
  const std::int64_t K = latticeSteps(h);
  faceLatticeSize(n, K, maxEvals);

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = A.coeff(i * n + j);

  SphereScan<Scalar> scan;
  scan.hEffective = 2.0 / static_cast<double>(K);
  Vector<Scalar> x(n), yBase(n);
  const Scalar lowest = -std::numeric_limits<Scalar>::infinity();

  for (int f = 0; f < n; ++f) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      const Scalar s = sgn == 0 ? Scalar(1) : Scalar(-1);
      if (n == 1) {
        x(0) = s;
        const Scalar p = s * (M(0, 0) * s);
        ++scan.evaluations;
        scan.phi.consider(p, x);
        scan.psi.consider(p, x);
        continue;
      }
      std::vector<int> freeIdx;
      for (int j = 0; j < n; ++j)
        if (j != f) freeIdx.push_back(j);
      const int inner = freeIdx.back();
      std::vector<std::int64_t> digit(freeIdx.size() - 1, 0);
      x(f) = s;
      for (std::size_t k = 0; k + 1 < freeIdx.size(); ++k)
        x(freeIdx[k]) = Scalar(-1);
      bool more = true;
      while (more) {
        x(inner) = Scalar(0);
        yBase.noalias() = M * x;
        for (std::int64_t d = 0; d <= K; ++d) {
          const Scalar t = static_cast<Scalar>(latticeCoord(d, K));
          x(inner) = t;
          Scalar phi = lowest, psi = lowest;
          for (int i = 0; i < n; ++i) {
            const Scalar p = x(i) * (yBase(i) + t * M(i, inner));
            phi = std::max(phi, p);
            if (x(i) != Scalar(0)) psi = std::max(psi, p);
          }
          ++scan.evaluations;
          scan.phi.consider(phi, x);
          scan.psi.consider(psi, x);
        }
        more = false;
        for (int k = static_cast<int>(digit.size()) - 1; k >= 0; --k) {
          if (++digit[static_cast<std::size_t>(k)] <= K) {
            x(freeIdx[static_cast<std::size_t>(k)]) = static_cast<Scalar>(
                latticeCoord(digit[static_cast<std::size_t>(k)], K));
            more = true;
            break;
          }
          digit[static_cast<std::size_t>(k)] = 0;
          x(freeIdx[static_cast<std::size_t>(k)]) = Scalar(-1);
        }
      }
    }
  }
  return scan;
}

template <typename Scalar>
SphereScan<Scalar> gridScanGeneric(const Tensor<Scalar>& A, MapKind map,
                                   double h, std::int64_t maxEvals) {
  const int n = A.dim();
  const std::int64_t K = latticeSteps(h);
  faceLatticeSize(n, K, maxEvals);

  SphereEval<Scalar> eval;
  eval.bind(A, map);
  SphereScan<Scalar> scan;
  scan.hEffective = 2.0 / static_cast<double>(K);
  Vector<Scalar> x(n);

  for (int f = 0; f < n; ++f) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      const Scalar s = sgn == 0 ? Scalar(1) : Scalar(-1);
      std::vector<int> freeIdx;
      for (int j = 0; j < n; ++j)
        if (j != f) freeIdx.push_back(j);
      std::vector<std::int64_t> digit(freeIdx.size(), 0);
      x(f) = s;
      for (int j : freeIdx) x(j) = Scalar(-1);
      bool more = true;
      while (more) {
        const auto v = eval(x);
        scan.phi.consider(v.phi, x);
        scan.psi.consider(v.psi, x);
        more = false;
        for (int k = static_cast<int>(digit.size()) - 1; k >= 0; --k) {
          if (++digit[static_cast<std::size_t>(k)] <= K) {
            x(freeIdx[static_cast<std::size_t>(k)]) = static_cast<Scalar>(
                latticeCoord(digit[static_cast<std::size_t>(k)], K));
            more = true;
            break;
          }
          digit[static_cast<std::size_t>(k)] = 0;
          x(freeIdx[static_cast<std::size_t>(k)]) = Scalar(-1);
        }
      }
    }
  }
  scan.evaluations = eval.evals;
  return scan;
}

template <typename Scalar>
SphereScan<Scalar> gridScan(const Tensor<Scalar>& A, MapKind map, double h,
                            std::int64_t maxEvals) {
  if (A.order() == 2) return gridScanMatrix(A, h, maxEvals);
  return gridScanGeneric(A, map, h, maxEvals);
}

// Projects onto the infinity sphere; the maximal component divides to
// exactly +-1.
template <typename Scalar>
bool projectToSphere(Vector<Scalar>& x) {
  const Scalar norm = x.template lpNorm<Eigen::Infinity>();
  if (norm <= Scalar(0)) return false;
  x /= norm;
  return true;
}

// Projected coordinate descent from one start: per coordinate, a staged line
// scan over [-1, 1] (coarse then two zooms), each candidate projected back to
// the sphere. `objective` selects phi or psi from the point value; every
// evaluated point also feeds the global minima via `record`.
template <typename Scalar, typename Objective, typename Record>
void coordinateDescent(Vector<Scalar> x, int iters, Objective objective,
                       Record record) {
  const int n = static_cast<int>(x.size());
  if (!projectToSphere(x)) return;
  Scalar cur = objective(record(x));
  Vector<Scalar> cand = x, best = x;
  for (int sweep = 0; sweep < iters; ++sweep) {
    bool improved = false;
    for (int j = 0; j < n; ++j) {
      Scalar bestVal = cur;
      Vector<Scalar> bestX = x;
      Scalar center = x(j);
      double radius = 1.0;
      for (int stage = 0; stage < 3; ++stage) {
        const int half = stage == 0 ? 8 : 4;
        Scalar stageBest = center;
        for (int k = -half; k <= half; ++k) {
          Scalar t;
          if (stage == 0) {
            t = static_cast<Scalar>(k) / static_cast<Scalar>(half);
          } else {
            t = center + static_cast<Scalar>(radius) * static_cast<Scalar>(k) /
                             static_cast<Scalar>(half);
            t = std::clamp(t, Scalar(-1), Scalar(1));
          }
          cand = x;
          cand(j) = t;
          if (!projectToSphere(cand)) continue;
          const Scalar v = objective(record(cand));
          if (v < bestVal || (v == bestVal && lexLess(cand, bestX))) {
            bestVal = v;
            bestX = cand;
            stageBest = t;
          }
        }
        center = stageBest;
        radius /= 8.0;
      }
      if (bestVal < cur) {
        cur = bestVal;
        x = bestX;
        improved = true;
      }
    }
    if (!improved) break;
  }
}

template <typename Scalar>
SphereScan<Scalar> multistartScan(const Tensor<Scalar>& A, MapKind map,
                                  int starts, int iters, std::uint64_t seed) {
  const int n = A.dim();
  const bool odd = A.order() % 2 != 0;
  SphereEval<Scalar> eval;
  eval.bind(A, map);
  SphereScan<Scalar> scan;

  auto record = [&](const Vector<Scalar>& x) {
    const auto v = eval(x);
    scan.phi.consider(v.phi, x);
    scan.psi.consider(v.psi, x);
    if (odd && map == MapKind::T) {
      const Vector<Scalar> neg = -x;
      scan.phi.consider(v.phiNeg, neg);
      scan.psi.consider(v.psiNeg, neg);
    }
    return v;
  };

  // deterministic probes: +-e_i and the all-ones corners
  Vector<Scalar> probe(n);
  for (int i = 0; i < n; ++i) {
    probe.setZero();
    probe(i) = Scalar(1);
    record(probe);
    probe(i) = Scalar(-1);
    record(probe);
  }
  probe.setOnes();
  record(probe);
  probe = -probe;
  record(probe);

  const CounterRng root(seed);
  for (int r = 0; r < starts; ++r) {
    CounterRng rng = root.substream(static_cast<std::uint64_t>(r));
    Vector<Scalar> x(n);
    for (int i = 0; i < n; ++i)
      x(i) = Scalar(2) * static_cast<Scalar>(rng.nextUnit()) - Scalar(1);
    if (x.template lpNorm<Eigen::Infinity>() < Scalar(1e-6)) x(0) = Scalar(1);
    using Value = typename SphereEval<Scalar>::Value;
    coordinateDescent(
        x, iters, [](const Value& v) { return v.phi; }, record);
    coordinateDescent(
        x, iters, [](const Value& v) { return v.psi; }, record);
  }
  scan.evaluations = eval.evals;
  return scan;
}

}  // namespace detail

// The max-product objective at one point: max_i x_i (op(x))_i, scaled like
// the operator. Exposed for independent re-evaluation of estimates.
template <typename Scalar>
Scalar maxProductObjective(const Tensor<Scalar>& A, MapKind map,
                           const Vector<Scalar>& x) {
  detail::SphereEval<Scalar> eval;
  eval.bind(A, map);
  return eval(x).phi;
}

// Same objective with the max restricted to the support of x.
template <typename Scalar>
Scalar supportProductObjective(const Tensor<Scalar>& A, MapKind map,
                               const Vector<Scalar>& x) {
  detail::SphereEval<Scalar> eval;
  eval.bind(A, map);
  return eval(x).psi;
}

/// Infinity-norm Lipschitz bound of the T objective over the unit cube:
// per row, |grad (x_i (Ax^{m-1})_i)|_1 <= m t_bound, and the norm factor
// ||x||_2^{2-m} contributes (m-2) sqrt(n) t_bound on the sphere.
template <typename Scalar>
Scalar objectiveLipschitz(const Tensor<Scalar>& A) {
  const Scalar t = rowNormBound(A).tBound;
  const int m = A.order();
  return t * (static_cast<Scalar>(m) +
              static_cast<Scalar>(m - 2) *
                  std::sqrt(static_cast<Scalar>(A.dim())));
}

// Comparison band for grid-certified alpha values at resolution h. The T
// objective is Lipschitz; the F objective is only Hoelder-(1/(m-1)) where a
// contraction component crosses zero, hence the extra root term.
template <typename Scalar>
Scalar gridSlack(const Tensor<Scalar>& A, MapKind map, double h) {
  const auto bound = rowNormBound(A);
  if (map == MapKind::T || A.order() == 2)
    return Scalar(2) * objectiveLipschitz(A) * static_cast<Scalar>(h);
  const int m = A.order();
  const Scalar lc = static_cast<Scalar>(m - 1) * bound.tBound;
  const Scalar root = detail::signedRoot(lc * static_cast<Scalar>(h) / 2,
                                         static_cast<std::int64_t>(m - 1));
  return *bound.fBound * static_cast<Scalar>(h) + Scalar(4) * root;
}

namespace detail {

template <typename Scalar>
AlphaEstimate<Scalar> makeEstimate(const Tensor<Scalar>& A, MapKind map,
                                   const AlphaConfig& cfg,
                                   const SphereScan<Scalar>& scan) {
  AlphaEstimate<Scalar> est;
  est.value = scan.phi.value;
  est.minimizer = scan.phi.x;
  est.map = map;
  est.method = cfg.method;
  est.h = scan.hEffective;
  est.starts = cfg.method == AlphaMethod::Multistart ? cfg.starts : 0;
  est.iters = cfg.method == AlphaMethod::Multistart ? cfg.iters : 0;
  est.certified = cfg.method == AlphaMethod::Grid;
  est.evaluations = scan.evaluations;

  const Scalar norm = est.minimizer.template lpNorm<Eigen::Infinity>();
  if (std::abs(norm - Scalar(1)) > Scalar(1e-12))
    throw InternalDisagreement("alpha minimizer is off the unit sphere");
  const Scalar check = maxProductObjective(A, map, est.minimizer);
  if (std::abs(check - est.value) >
      Scalar(1e-12) * (Scalar(1) + std::abs(est.value)))
    throw InternalDisagreement("alpha value does not re-evaluate at minimizer");
  return est;
}

}  // namespace detail

template <typename Scalar>
AlphaEstimate<Scalar> alphaEstimate(const Tensor<Scalar>& A, MapKind map,
                                    const AlphaConfig& cfg = {}) {
  if (map == MapKind::F && A.order() % 2 != 0)
    throw OddOrderUnsupported("alpha of the F operator requires even order");
  if (cfg.starts < 1 || cfg.iters < 1)
    throw ParseError("multistart configuration requires starts, iters >= 1");
  const auto scan =
      cfg.method == AlphaMethod::Grid
          ? detail::gridScan(A, map, cfg.h, cfg.maxEvals)
          : detail::multistartScan(A, map, cfg.starts, cfg.iters, cfg.seed);
  return detail::makeEstimate(A, map, cfg, scan);
}

enum class PClass { P, P0NotP, NotP0 };

inline const char* toString(PClass c) {
  switch (c) {
    case PClass::P: return "P";
    case PClass::P0NotP: return "P0_NOT_P";
    default: return "NOT_P0";
  }
}

template <typename Scalar>
struct PVerdict {
  PClass cls = PClass::P0NotP;
  std::optional<Vector<Scalar>> witness;
  AlphaEstimate<Scalar> alphaT;
  bool certified = false;
};

namespace detail {

// Exact witness test: all products over the support strictly negative.
template <typename Scalar>
bool refutesP0(const Tensor<Scalar>& A, const Vector<Scalar>& x) {
  if (x.isZero(Scalar(0))) return false;
  const Vector<Scalar> y = contract(A, x);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i) != Scalar(0) && !(x(i) * y(i) < Scalar(0))) return false;
  return true;
}

// Searches for a P0 refutation beyond the lattice: descends the
// scale-invariant form value Ax^m / ||x||_2^m (its sphere minimizers carry
// all-negative support products when the minimum is negative), then zeroes
// small components at a few thresholds and keeps any vector whose support
// products are all strictly negative.
template <typename Scalar>
std::optional<Vector<Scalar>> refutationSearch(
    const Tensor<Scalar>& A, std::vector<Vector<Scalar>> seeds,
    std::uint64_t seed, int iters) {
  const int n = A.dim();
  const int m = A.order();
  SphereEval<Scalar> eval;
  eval.bind(A, MapKind::T);

  ContractionScratch<Scalar> scratch;
  scratch.prepare(n, m);
  Vector<Scalar> y(n);
  auto formValue = [&](const Vector<Scalar>& x) {
    scratch.run(A, x, y);
    Scalar s = Scalar(0);
    for (Eigen::Index i = 0; i < x.size(); ++i) s += x(i) * y(i);
    return s / std::pow(x.squaredNorm(), Scalar(0.5) * Scalar(m));
  };

  std::optional<Vector<Scalar>> witness;
  auto tryVector = [&](Vector<Scalar> x) {
    if (witness || !projectToSphere(x)) return;
    static constexpr double kThresholds[] = {0.0,  1e-3, 1e-2, 0.05,
                                             0.1,  0.2,  0.3};
    for (double th : kThresholds) {
      Vector<Scalar> xc = x;
      for (Eigen::Index i = 0; i < xc.size(); ++i)
        if (std::abs(xc(i)) <= Scalar(th)) xc(i) = Scalar(0);
      if (!projectToSphere(xc)) continue;
      if (refutesP0(A, xc)) {
        witness = xc;
        return;
      }
      if (m % 2 != 0 && refutesP0<Scalar>(A, -xc)) {
        witness = Vector<Scalar>(-xc);
        return;
      }
    }
  };

  const CounterRng root(CounterRng::mix(seed ^ 0x5eedc0de));
  for (int r = 0; r < 8; ++r) {
    CounterRng rng = root.substream(static_cast<std::uint64_t>(r));
    Vector<Scalar> x(n);
    for (int i = 0; i < n; ++i)
      x(i) = Scalar(2) * static_cast<Scalar>(rng.nextUnit()) - Scalar(1);
    seeds.push_back(x);
  }
  Vector<Scalar> probe(n);
  for (int i = 0; i < n; ++i) {
    probe.setZero();
    probe(i) = Scalar(1);
    seeds.push_back(probe);
    seeds.push_back(Vector<Scalar>(-probe));
  }
  seeds.push_back(Vector<Scalar>::Ones(n));
  seeds.push_back(Vector<Scalar>(-Vector<Scalar>::Ones(n)));

  using Value = typename SphereEval<Scalar>::Value;
  for (const Vector<Scalar>& s : seeds) {
    if (witness) break;
    Vector<Scalar> x = s;
    if (!projectToSphere(x)) continue;
    tryVector(x);
    if (witness) break;
    // descend the support objective directly
    coordinateDescent(
        x, iters, [](const Value& v) { return v.psi; },
        [&](const Vector<Scalar>& p) {
          tryVector(p);
          return eval(p);
        });
    if (witness) break;
    // descend the form value, then clean up the support
    Vector<Scalar> formBest = x;
    Scalar formCur = formValue(formBest);
    coordinateDescent(
        x, iters, [](const Scalar& v) { return v; },
        [&](const Vector<Scalar>& p) {
          const Scalar v = formValue(p);
          if (v < formCur) {
            formCur = v;
            formBest = p;
          }
          return v;
        });
    tryVector(formBest);
  }
  return witness;
}

}  // namespace detail

// Three-way P / P0 / refuted decision. The alpha sign separates P from P0 on
// the searched set; the NOT_P0 witness, when found, is re-verified exactly,
// so that verdict is sound regardless of search method.
template <typename Scalar>
PVerdict<Scalar> pClassify(const Tensor<Scalar>& A,
                           const AlphaConfig& cfg = {}) {
  const auto scan =
      cfg.method == AlphaMethod::Grid
          ? detail::gridScan(A, MapKind::T, cfg.h, cfg.maxEvals)
          : detail::multistartScan(A, MapKind::T, cfg.starts, cfg.iters,
                                   cfg.seed);
  PVerdict<Scalar> verdict;
  verdict.alphaT = detail::makeEstimate(A, MapKind::T, cfg, scan);

  std::optional<Vector<Scalar>> witness;
  if (scan.psi.set && scan.psi.value < Scalar(0) &&
      detail::refutesP0(A, scan.psi.x)) {
    witness = scan.psi.x;
  } else {
    witness = detail::refutationSearch<Scalar>(
        A, {scan.psi.x, scan.phi.x}, cfg.seed, std::min(cfg.iters, 60));
  }

  if (witness) {
    verdict.cls = PClass::NotP0;
    verdict.witness = witness;
    verdict.certified = true;  // the witness is an exact certificate
    if (!detail::refutesP0(A, *witness))
      throw InternalDisagreement("refutation witness fails re-evaluation");
    return verdict;
  }
  if (verdict.alphaT.value > Scalar(0)) {
    verdict.cls = PClass::P;
    verdict.certified = cfg.method == AlphaMethod::Grid;
    return verdict;
  }
  verdict.cls = PClass::P0NotP;
  verdict.witness = scan.phi.x;  // max product <= 0 here
  verdict.certified = cfg.method == AlphaMethod::Grid;
  if (!(maxProductObjective(A, MapKind::T, *verdict.witness) <= Scalar(0)))
    throw InternalDisagreement("P0 witness has positive max product");
  return verdict;
}

template <typename Scalar>
struct ScalingCertificate {
  Vector<Scalar> x;
  int k = 0;  // one-based index of the maximal product
  Scalar epsilon = 0;
  Vector<Scalar> d;  // diagonal: d_k = 1, d_j = epsilon
  Scalar product = 0;
};

// Builds the diagonal scaling D with d_k = 1 at the best product index and
// epsilon elsewhere, sized so that x' D (Ax^{m-1}) stays positive: epsilon =
// min(1, p_k / (2 |sum of other products| + 1)) halves the available slack.
template <typename Scalar>
ScalingCertificate<Scalar> scalingCertificate(const Tensor<Scalar>& A,
                                              const Vector<Scalar>& x) {
  const Vector<Scalar> y = contract(A, x);
  int k = -1;
  Scalar pk = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Scalar p = x(i) * y(i);
    if (k < 0 || p > pk) {
      k = static_cast<int>(i);
      pk = p;
    }
  }
  if (k < 0 || !(pk > Scalar(0)))
    throw NoPositiveProduct(
        "no index with positive product; x refutes the P property");

  Scalar rest = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (i != k) rest += x(i) * y(i);
  const Scalar eps =
      std::min(Scalar(1), pk / (Scalar(2) * std::abs(rest) + Scalar(1)));

  ScalingCertificate<Scalar> cert;
  cert.x = x;
  cert.k = k + 1;
  cert.epsilon = eps;
  cert.d = Vector<Scalar>::Constant(x.size(), eps);
  cert.d(k) = Scalar(1);
  Scalar product = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    product += x(i) * cert.d(i) * y(i);
  cert.product = product;
  if (!(cert.product > Scalar(0)))
    throw InternalDisagreement("scaling certificate product is not positive");
  return cert;
}

}  // namespace tenstruct
