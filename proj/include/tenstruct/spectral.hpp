#pragma once

#include <Eigen/Eigenvalues>

#include <optional>
#include <string>
#include <vector>

#include "tenstruct/analysis.hpp"

namespace tenstruct {

enum class EigenKind { H, Z };

inline const char* toString(EigenKind k) { return k == EigenKind::H ? "H" : "Z"; }

template <typename Scalar>
struct EigenPair {
  Scalar lambda = 0;
  Vector<Scalar> x;
  EigenKind kind = EigenKind::Z;
  Scalar residual = 0;
  int hits = 1;           // number of runs that converged to this pair
  bool certified = false; // true on the exhaustive small-case path
};

struct SpectralConfig {
  int starts = 64;
  int iters = 500;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  double shift = -1.0;  // < 0 selects the automatic 1 + t_bound policy
};

template <typename Scalar>
struct SpectralResult {
  std::vector<EigenPair<Scalar>> pairs;
  bool symmetrized = false;       // input was not symmetric; results are for
                                  // the symmetrized tensor
  bool certifiedComplete = false; // exhaustive enumeration succeeded
  int convergedRuns = 0;
  int attemptedRuns = 0;
  std::string note;
};

// residual of the H equation: ||Ax^{m-1} - lambda x^{[m-1]}||_inf
template <typename Scalar>
Scalar hResidual(const Tensor<Scalar>& A, Scalar lambda,
                 const Vector<Scalar>& x) {
  const Vector<Scalar> y = contract(A, x);
  const Vector<Scalar> w =
      componentwisePower(x, Rational(A.order() - 1, 1));
  return (y - lambda * w).template lpNorm<Eigen::Infinity>();
}

// residual of the Z equation at unit x: ||Ax^{m-1} - lambda x||_inf
template <typename Scalar>
Scalar zResidual(const Tensor<Scalar>& A, Scalar lambda,
                 const Vector<Scalar>& x) {
  const Vector<Scalar> y = contract(A, x);
  return (y - lambda * x).template lpNorm<Eigen::Infinity>();
}

namespace detail {

// Flips x so its largest-magnitude component (smallest index on ties) is
// positive. Valid whenever (lambda, x) and (lambda, -x) represent the same
// pair: H pairs always, Z pairs for even m.
template <typename Scalar>
void canonicalSign(Vector<Scalar>& x) {
  Eigen::Index lead = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i)
    if (std::abs(x(i)) > std::abs(x(lead))) lead = i;
  if (x(lead) < Scalar(0)) x = -x;
}

// Merge rule: |lambda - lambda'| <= 1e-6 (1 + |lambda|) and the vectors match
// up to sign within 1e-4. Keeps the smaller residual.
template <typename Scalar>
void addPair(std::vector<EigenPair<Scalar>>& pairs, EigenPair<Scalar> p) {
  for (EigenPair<Scalar>& q : pairs) {
    if (std::abs(p.lambda - q.lambda) >
        Scalar(1e-6) * (Scalar(1) + std::abs(p.lambda)))
      continue;
    const Scalar dist = std::min((p.x - q.x).norm(), (p.x + q.x).norm());
    if (dist > Scalar(1e-4)) continue;
    q.hits += 1;
    if (p.residual < q.residual) {
      p.hits = q.hits;
      p.certified = p.certified || q.certified;
      q = p;
    }
    return;
  }
  pairs.push_back(std::move(p));
}

template <typename Scalar>
void sortPairs(std::vector<EigenPair<Scalar>>& pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const EigenPair<Scalar>& a, const EigenPair<Scalar>& b) {
              if (a.lambda != b.lambda) return a.lambda > b.lambda;
              return lexLess(a.x, b.x);
            });
}

// Start vectors: unit basis, normalized all-ones, then seeded random points.
template <typename Scalar>
std::vector<Vector<Scalar>> startVectors(int n, int starts, std::uint64_t seed,
                                         bool nonnegative) {
  std::vector<Vector<Scalar>> out;
  for (int i = 0; i < n && static_cast<int>(out.size()) < starts; ++i) {
    Vector<Scalar> e = Vector<Scalar>::Zero(n);
    e(i) = Scalar(1);
    out.push_back(std::move(e));
  }
  if (static_cast<int>(out.size()) < starts)
    out.push_back(Vector<Scalar>::Ones(n).normalized());
  const CounterRng root(seed);
  for (std::uint64_t r = 0; static_cast<int>(out.size()) < starts; ++r) {
    CounterRng rng = root.substream(r);
    Vector<Scalar> x(n);
    for (int i = 0; i < n; ++i)
      x(i) = Scalar(2) * static_cast<Scalar>(rng.nextUnit()) - Scalar(1);
    if (nonnegative) x = x.cwiseAbs();
    const Scalar norm = x.norm();
    if (norm < Scalar(1e-8)) continue;
    out.push_back(x / norm);
  }
  for (Vector<Scalar>& x : out) x.normalize();
  return out;
}

// One shifted power run on the Z map: x <- normalize(sigma Ax^{m-1} + gamma x),
// maximizing sigma Ax^m. The shift starts at 1 + t_bound, doubles (plus one)
// when the merit decreases (shift below the convexity threshold) and halves
// on long stalls.
template <typename Scalar>
std::optional<EigenPair<Scalar>> zPowerRun(const Tensor<Scalar>& A,
                                           Vector<Scalar> x, Scalar sigma,
                                           const SpectralConfig& cfg,
                                           Scalar tBound,
                                           ContractionScratch<Scalar>& scratch) {
  Scalar gamma = cfg.shift > 0 ? static_cast<Scalar>(cfg.shift)
                               : Scalar(1) + tBound;
  const Scalar gammaCap = Scalar(64) * (Scalar(1) + tBound);
  Vector<Scalar> y(x.size());
  Scalar meritPrev = -std::numeric_limits<Scalar>::infinity();
  int stall = 0;
  for (int it = 0; it < cfg.iters; ++it) {
    scratch.run(A, x, y);
    const Scalar lambda = x.dot(y);
    const Scalar residual =
        (y - lambda * x).template lpNorm<Eigen::Infinity>();
    if (residual <= static_cast<Scalar>(cfg.tol)) {
      EigenPair<Scalar> p;
      p.lambda = lambda;
      p.x = x;
      p.kind = EigenKind::Z;
      p.residual = residual;
      return p;
    }
    const Scalar merit = sigma * lambda;
    if (merit < meritPrev - Scalar(1e-12) * (Scalar(1) + std::abs(merit))) {
      gamma = std::min(Scalar(2) * gamma + Scalar(1), gammaCap);
      stall = 0;
    } else if (std::abs(merit - meritPrev) <=
               Scalar(1e-14) * (Scalar(1) + std::abs(merit))) {
      if (++stall >= 30) {
        gamma = std::max(gamma / Scalar(2), Scalar(1e-8));
        stall = 0;
      }
    } else {
      stall = 0;
    }
    meritPrev = merit;
    Vector<Scalar> next = sigma * y + gamma * x;
    const Scalar norm = next.norm();
    if (!(norm > Scalar(1e-14))) return std::nullopt;
    x = next / norm;
  }
  return std::nullopt;
}

// One shifted power run on the H map: w = sigma Ax^{m-1} + gamma x^{[m-1]},
// x <- normalize(w^{[1/(m-1)]}). For odd m the even root confines the run to
// the nonnegative orthant; components that would go slightly negative are
// clamped, anything worse aborts the run.
template <typename Scalar>
std::optional<EigenPair<Scalar>> hPowerRun(const Tensor<Scalar>& A,
                                           Vector<Scalar> x, Scalar sigma,
                                           const SpectralConfig& cfg,
                                           Scalar tBound,
                                           ContractionScratch<Scalar>& scratch) {
  const int m = A.order();
  const bool odd = m % 2 != 0;
  Scalar gamma = cfg.shift > 0 ? static_cast<Scalar>(cfg.shift)
                               : Scalar(1) + tBound;
  const Scalar gammaCap = Scalar(64) * (Scalar(1) + tBound);
  Vector<Scalar> y(x.size());
  Scalar meritPrev = -std::numeric_limits<Scalar>::infinity();
  int stall = 0;
  for (int it = 0; it < cfg.iters; ++it) {
    scratch.run(A, x, y);
    Scalar xm = Scalar(0);  // sum x_i^m
    for (Eigen::Index i = 0; i < x.size(); ++i)
      xm += intPow(x(i), static_cast<std::int64_t>(m));
    if (!(xm > Scalar(1e-14))) return std::nullopt;
    Scalar lambda = x.dot(y) / xm;
    const Vector<Scalar> w = componentwisePower(x, Rational(m - 1, 1));
    const Scalar residual =
        (y - lambda * w).template lpNorm<Eigen::Infinity>();
    if (residual <= static_cast<Scalar>(cfg.tol)) {
      EigenPair<Scalar> p;
      p.lambda = lambda;
      p.x = x;
      p.kind = EigenKind::H;
      p.residual = residual;
      return p;
    }
    const Scalar merit = sigma * lambda;
    if (merit < meritPrev - Scalar(1e-12) * (Scalar(1) + std::abs(merit))) {
      gamma = std::min(Scalar(2) * gamma + Scalar(1), gammaCap);
      stall = 0;
    } else if (std::abs(merit - meritPrev) <=
               Scalar(1e-14) * (Scalar(1) + std::abs(merit))) {
      if (++stall >= 30) {
        gamma = std::max(gamma / Scalar(2), Scalar(1e-8));
        stall = 0;
      }
    } else {
      stall = 0;
    }
    meritPrev = merit;
    Vector<Scalar> next = sigma * y + gamma * w;
    if (odd) {
      const Scalar floor = -Scalar(1e-12) * (Scalar(1) + tBound);
      for (Eigen::Index i = 0; i < next.size(); ++i) {
        if (next(i) < floor) return std::nullopt;
        if (next(i) < Scalar(0)) next(i) = Scalar(0);
      }
    }
    Vector<Scalar> z(next.size());
    for (Eigen::Index i = 0; i < next.size(); ++i)
      z(i) = signedRoot(next(i), static_cast<std::int64_t>(m - 1));
    const Scalar norm = z.norm();
    if (!(norm > Scalar(1e-14))) return std::nullopt;
    x = z / norm;
  }
  return std::nullopt;
}

// Real roots of a polynomial (ascending coefficients) inside [lo, hi], via
// the companion matrix, polished by Newton steps. Returns nullopt when the
// polynomial is identically ~zero (a continuum, not a root set).
template <typename Scalar>
std::optional<std::vector<Scalar>> realRootsIn(std::vector<Scalar> c,
                                               Scalar lo, Scalar hi) {
  Scalar maxAbs = 0;
  for (Scalar v : c) maxAbs = std::max(maxAbs, std::abs(v));
  if (maxAbs == Scalar(0)) return std::nullopt;
  int deg = static_cast<int>(c.size()) - 1;
  while (deg > 0 && std::abs(c[static_cast<std::size_t>(deg)]) <=
                        Scalar(1e-13) * maxAbs)
    --deg;
  std::vector<Scalar> roots;
  if (deg == 0) return roots;

  auto evalPoly = [&](Scalar t, Scalar& value, Scalar& deriv) {
    value = c[static_cast<std::size_t>(deg)];
    deriv = Scalar(0);
    for (int k = deg - 1; k >= 0; --k) {
      deriv = deriv * t + value;
      value = value * t + c[static_cast<std::size_t>(k)];
    }
  };

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  const Scalar lead = c[static_cast<std::size_t>(deg)];
  for (int k = 0; k < deg; ++k) {
    companion(k, deg - 1) =
        -static_cast<double>(c[static_cast<std::size_t>(k)] / lead);
    if (k > 0) companion(k, k - 1) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  for (int k = 0; k < deg; ++k) {
    const std::complex<double> z = solver.eigenvalues()(k);
    if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real()))) continue;
    Scalar t = static_cast<Scalar>(z.real());
    for (int it = 0; it < 3; ++it) {
      Scalar v, d;
      evalPoly(t, v, d);
      if (std::abs(d) < Scalar(1e-14) * maxAbs) break;
      t -= v / d;
    }
    if (t < lo - Scalar(1e-9) || t > hi + Scalar(1e-9)) continue;
    t = std::clamp(t, lo, hi);
    bool dup = false;
    for (Scalar r : roots)
      if (std::abs(r - t) <= Scalar(1e-9)) dup = true;
    if (!dup) roots.push_back(t);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Coefficients of (Ax^{m-1})_i as a polynomial in t for n = 2 charts
// x = (1, t) (chart 0) or x = (t, 1) (chart 1).
template <typename Scalar>
std::vector<Scalar> chartRowPolynomial(const Tensor<Scalar>& A, int row,
                                       int chart) {
  const int m = A.order();
  std::vector<Scalar> coeff(static_cast<std::size_t>(m), Scalar(0));
  const std::int64_t rowLen = A.size() / 2;
  std::vector<int> tuple(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < rowLen; ++j) {
    const std::int64_t flat = row * rowLen + j;
    A.decode(flat, tuple);
    int power = 0;
    for (int k = 1; k < m; ++k)
      power += (tuple[static_cast<std::size_t>(k)] == (chart == 0 ? 1 : 0));
    coeff[static_cast<std::size_t>(power)] += A.coeff(flat);
  }
  return coeff;
}

template <typename Scalar>
Scalar evalPolyValue(const std::vector<Scalar>& c, Scalar t) {
  Scalar v = Scalar(0);
  for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
  return v;
}

// Exhaustive H-eigenpair enumeration for n <= 2 via the chart polynomials:
// eigen directions are roots of q(t) = p_other(t) - t^{m-1} p_anchor(t).
// Returns false when a chart polynomial vanishes identically (eigenvector
// continuum) in which case representative pairs are still emitted.
template <typename Scalar>
bool hOracle(const Tensor<Scalar>& A, const SpectralConfig& cfg,
             std::vector<EigenPair<Scalar>>& pairs) {
  const int m = A.order();
  bool complete = true;
  auto emit = [&](Vector<Scalar> x, Scalar lambda) {
    const Scalar norm = x.norm();
    if (!(norm > Scalar(0))) return;
    x /= norm;
    canonicalSign(x);
    // lambda is scale-free for H pairs only up to the normalization of x:
    // recompute from the normalized vector.
    const Vector<Scalar> y = contract(A, x);
    Scalar xm = Scalar(0);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      xm += intPow(x(i), static_cast<std::int64_t>(m));
    if (std::abs(xm) > Scalar(1e-14)) lambda = x.dot(y) / xm;
    EigenPair<Scalar> p;
    p.lambda = lambda;
    p.x = x;
    p.kind = EigenKind::H;
    p.residual = hResidual(A, lambda, x);
    p.certified = true;
    if (p.residual <= static_cast<Scalar>(cfg.tol) * Scalar(100) + Scalar(1e-12))
      addPair(pairs, std::move(p));
    else
      complete = false;
  };

  if (A.dim() == 1) {
    emit(Vector<Scalar>::Ones(1), A.coeff(0));
    return complete;
  }

  for (int chart = 0; chart < 2; ++chart) {
    const auto pAnchor = chartRowPolynomial(A, chart == 0 ? 0 : 1, chart);
    const auto pOther = chartRowPolynomial(A, chart == 0 ? 1 : 0, chart);
    // q = pOther - t^{m-1} pAnchor
    std::vector<Scalar> q(static_cast<std::size_t>(2 * m - 1), Scalar(0));
    for (std::size_t k = 0; k < pOther.size(); ++k) q[k] += pOther[k];
    for (std::size_t k = 0; k < pAnchor.size(); ++k)
      q[k + static_cast<std::size_t>(m - 1)] -= pAnchor[k];
    const Scalar hi = chart == 0 ? Scalar(1) : Scalar(1) - Scalar(1e-12);
    const auto roots = realRootsIn(q, Scalar(-1) * hi, hi);
    if (!roots) {
      // continuum on this chart: every direction is an eigenvector
      complete = false;
      for (const Scalar t : {Scalar(-1), Scalar(-0.5), Scalar(0), Scalar(0.5),
                             Scalar(1)}) {
        if (chart == 1 && std::abs(t) >= Scalar(1)) continue;
        Vector<Scalar> x(2);
        x(chart == 0 ? 0 : 1) = Scalar(1);
        x(chart == 0 ? 1 : 0) = t;
        emit(x, evalPolyValue(pAnchor, t));
      }
      continue;
    }
    for (const Scalar t : *roots) {
      Vector<Scalar> x(2);
      x(chart == 0 ? 0 : 1) = Scalar(1);
      x(chart == 0 ? 1 : 0) = t;
      emit(x, evalPolyValue(pAnchor, t));
    }
  }
  return complete;
}

}  // namespace detail

// Z-eigenpairs by multistart shifted symmetric power iteration. Nonsymmetric
// input is symmetrized first and flagged. Results are deduplicated by
// (lambda, +-x) proximity and sorted by lambda descending; for odd m every
// pair with lambda != 0 is reported together with its (-lambda, -x) mirror.
template <typename Scalar>
SpectralResult<Scalar> zEigenpairs(const Tensor<Scalar>& A,
                                   const SpectralConfig& cfg = {}) {
  SpectralResult<Scalar> result;
  result.symmetrized = !isSymmetric(A);
  const Tensor<Scalar> S = result.symmetrized ? symmetrize(A) : A;
  const Scalar tBound = rowNormBound(S).tBound;
  detail::ContractionScratch<Scalar> scratch;
  scratch.prepare(S.dim(), S.order());

  const bool odd = S.order() % 2 != 0;
  const auto starts =
      detail::startVectors<Scalar>(S.dim(), cfg.starts, cfg.seed, false);
  for (const auto& x0 : starts) {
    for (const Scalar sigma : {Scalar(1), Scalar(-1)}) {
      ++result.attemptedRuns;
      auto pair = detail::zPowerRun(S, x0, sigma, cfg, tBound, scratch);
      if (!pair) continue;
      ++result.convergedRuns;
      if (!odd || std::abs(pair->lambda) <= Scalar(1e-12))
        detail::canonicalSign(pair->x);
      detail::addPair(result.pairs, *pair);
    }
  }
  if (odd) {
    // Theorem: for odd order, (-lambda, -x) accompanies every pair.
    const std::size_t found = result.pairs.size();
    for (std::size_t k = 0; k < found; ++k) {
      EigenPair<Scalar> p = result.pairs[k];
      if (std::abs(p.lambda) <= Scalar(1e-12)) continue;
      p.lambda = -p.lambda;
      p.x = -p.x;
      p.residual = zResidual(S, p.lambda, p.x);
      if (p.residual <= static_cast<Scalar>(cfg.tol))
        detail::addPair(result.pairs, std::move(p));
    }
  }
  detail::sortPairs(result.pairs);
  if (result.pairs.empty())
    result.note = "no start met the residual tolerance";
  return result;
}

// H-eigenpairs: exhaustive chart-polynomial enumeration for n <= 2, m <= 4
// (certified), multistart shifted power iteration otherwise.
template <typename Scalar>
SpectralResult<Scalar> hEigenpairs(const Tensor<Scalar>& A,
                                   const SpectralConfig& cfg = {}) {
  SpectralResult<Scalar> result;
  result.symmetrized = !isSymmetric(A);
  const Tensor<Scalar> S = result.symmetrized ? symmetrize(A) : A;

  if (S.dim() <= 2 && S.order() <= 4) {
    result.certifiedComplete = detail::hOracle(S, cfg, result.pairs);
    if (!result.certifiedComplete)
      result.note = result.pairs.empty()
                        ? "oracle found no residual-certified pair"
                        : "eigenvector continuum; representatives listed";
    detail::sortPairs(result.pairs);
    return result;
  }

  const Scalar tBound = rowNormBound(S).tBound;
  detail::ContractionScratch<Scalar> scratch;
  scratch.prepare(S.dim(), S.order());
  const bool odd = S.order() % 2 != 0;
  const auto starts =
      detail::startVectors<Scalar>(S.dim(), cfg.starts, cfg.seed, odd);
  for (const auto& x0 : starts) {
    for (const Scalar sigma : {Scalar(1), Scalar(-1)}) {
      ++result.attemptedRuns;
      auto pair = detail::hPowerRun(S, x0, sigma, cfg, tBound, scratch);
      if (!pair) continue;
      ++result.convergedRuns;
      detail::canonicalSign(pair->x);
      pair->residual = hResidual(S, pair->lambda, pair->x);
      if (pair->residual > static_cast<Scalar>(cfg.tol)) continue;
      detail::addPair(result.pairs, *pair);
    }
  }
  detail::sortPairs(result.pairs);
  if (result.pairs.empty())
    result.note = "no start met the residual tolerance";
  return result;
}

template <typename Scalar>
struct ExtremeZValues {
  Scalar lambdaMax = 0;
  Scalar lambdaMin = 0;
  Vector<Scalar> argmax;
  Vector<Scalar> argmin;
  bool symmetrized = false;
};

// Extremes of Ax^m over the Euclidean unit sphere: projected gradient
// ascent/descent with backtracking from every start, plus every Z-eigenvalue
// found by zEigenpairs (the extreme values are attained at Z-eigenpairs).
template <typename Scalar>
ExtremeZValues<Scalar> extremeZValues(const Tensor<Scalar>& A,
                                      const SpectralConfig& cfg = {}) {
  ExtremeZValues<Scalar> out;
  out.symmetrized = !isSymmetric(A);
  const Tensor<Scalar> S = out.symmetrized ? symmetrize(A) : A;
  const int n = S.dim();
  const Scalar tBound = rowNormBound(S).tBound;
  detail::ContractionScratch<Scalar> scratch;
  scratch.prepare(n, S.order());
  Vector<Scalar> y(n);

  auto value = [&](const Vector<Scalar>& x) {
    scratch.run(S, x, y);
    return x.dot(y);
  };

  bool seeded = false;
  auto consider = [&](const Vector<Scalar>& x, Scalar v) {
    if (!seeded) {
      out.lambdaMax = out.lambdaMin = v;
      out.argmax = out.argmin = x;
      seeded = true;
      return;
    }
    if (v > out.lambdaMax ||
        (v == out.lambdaMax && detail::lexLess(x, out.argmax))) {
      out.lambdaMax = v;
      out.argmax = x;
    }
    if (v < out.lambdaMin ||
        (v == out.lambdaMin && detail::lexLess(x, out.argmin))) {
      out.lambdaMin = v;
      out.argmin = x;
    }
  };

  const auto zres = zEigenpairs(S, cfg);
  for (const auto& p : zres.pairs) consider(p.x, p.lambda);

  const auto starts =
      detail::startVectors<Scalar>(n, cfg.starts, cfg.seed ^ 0x9e37, false);
  for (const auto& x0 : starts) {
    for (const Scalar sigma : {Scalar(1), Scalar(-1)}) {
      Vector<Scalar> x = x0;
      Scalar fx = value(x);
      consider(x, fx);
      Scalar eta = Scalar(1) / (Scalar(1) + tBound);
      for (int it = 0; it < cfg.iters; ++it) {
        scratch.run(S, x, y);  // gradient direction: m * y on the sphere
        bool stepped = false;
        for (int bt = 0; bt < 40; ++bt) {
          Vector<Scalar> trial = x + sigma * eta * y;
          const Scalar norm = trial.norm();
          if (norm > Scalar(1e-14)) {
            trial /= norm;
            const Scalar ft = value(trial);
            consider(trial, ft);
            if (sigma * ft > sigma * fx +
                                 Scalar(1e-15) * (Scalar(1) + std::abs(fx))) {
              x = trial;
              fx = ft;
              eta *= Scalar(1.25);
              stepped = true;
              break;
            }
          }
          eta /= Scalar(2);
        }
        if (!stepped) break;
      }
    }
  }
  return out;
}

enum class Definiteness {
  PositiveDefinite,
  PositiveSemidefinite,
  Indefinite,
  NotApplicableOddOrder
};

inline const char* toString(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "positive_definite";
    case Definiteness::PositiveSemidefinite: return "positive_semidefinite";
    case Definiteness::Indefinite: return "indefinite";
    default: return "not_applicable_odd_order";
  }
}

template <typename Scalar>
struct DefinitenessVerdict {
  Definiteness status = Definiteness::Indefinite;
  Scalar minZValue = 0;
  std::optional<Scalar> minHEstimate;
  bool certified = false;
  bool symmetrized = false;
  std::string note;
};

// Sign of the minimal Z-value with a tolerance band decides the verdict; on
// the small certified path the complete H spectrum must agree (positive
// definiteness of an even symmetric tensor is equivalent to positive H- and
// to positive Z-eigenvalues) and its category wins if the empirical sphere
// search missed the minimum.
template <typename Scalar>
DefinitenessVerdict<Scalar> definitenessCheck(const Tensor<Scalar>& A,
                                              const SpectralConfig& cfg = {}) {
  DefinitenessVerdict<Scalar> v;
  v.symmetrized = !isSymmetric(A);
  if (A.order() % 2 != 0) {
    v.status = Definiteness::NotApplicableOddOrder;
    const auto ext = extremeZValues(A, cfg);
    v.minZValue = ext.lambdaMin;
    return v;
  }
  const auto ext = extremeZValues(A, cfg);
  v.minZValue = ext.lambdaMin;
  const Scalar band = static_cast<Scalar>(cfg.tol);
  auto category = [&](Scalar value) {
    if (value > band) return Definiteness::PositiveDefinite;
    if (value >= -band) return Definiteness::PositiveSemidefinite;
    return Definiteness::Indefinite;
  };
  v.status = category(v.minZValue);

  const auto hres = hEigenpairs(A, cfg);
  if (!hres.pairs.empty()) {
    Scalar minH = hres.pairs.front().lambda;
    for (const auto& p : hres.pairs) minH = std::min(minH, p.lambda);
    v.minHEstimate = minH;
    if (hres.certifiedComplete) {
      v.certified = true;
      const Definiteness hStatus = category(minH);
      if (hStatus != v.status) {
        v.status = hStatus;
        v.note = "verdict from the certified H spectrum";
      }
    }
  }
  return v;
}

}  // namespace tenstruct
