#pragma once

#include <cmath>
#include <string>

#include "tenstruct/rng.hpp"
#include "tenstruct/structure.hpp"

namespace tenstruct {

enum class TensorClass { B, B0, ZDiagDominated, Symmetric, General };

inline const char* toString(TensorClass c) {
  switch (c) {
    case TensorClass::B: return "B";
    case TensorClass::B0: return "B0";
    case TensorClass::ZDiagDominated: return "Z_diag_dominated";
    case TensorClass::Symmetric: return "symmetric";
    default: return "general";
  }
}

inline TensorClass tensorClassFromString(const std::string& s) {
  if (s == "B") return TensorClass::B;
  if (s == "B0") return TensorClass::B0;
  if (s == "Z_diag_dominated") return TensorClass::ZDiagDominated;
  if (s == "symmetric") return TensorClass::Symmetric;
  if (s == "general") return TensorClass::General;
  throw ParseError("unknown tensor class \"" + s + "\"");
}

struct GenSpec {
  int order = 3;
  int dim = 2;
  TensorClass cls = TensorClass::General;
  std::uint64_t seed = 1;
  double scale = 1.0;
};

namespace detail {

inline void validateGenSpec(const GenSpec& spec) {
  if (spec.order < 2)
    throw DimensionMismatch("generator order must be at least 2, got " +
                            std::to_string(spec.order));
  if (spec.dim < 1)
    throw DimensionMismatch("generator dimension must be at least 1, got " +
                            std::to_string(spec.dim));
  if (!std::isfinite(spec.scale) || spec.scale < 0)
    throw ParseError("generator scale must be a finite nonnegative real");
  checkedPow(spec.dim, spec.order);
}

// Scales are snapped to powers of two so that scaled dyadic draws, row sums
// and dominance margins stay exactly representable; class boundaries placed
// by construction then survive floating-point verification verbatim.
inline double snapScale(double scale) {
  if (scale == 0.0 || scale == 1.0) return scale;
  return std::exp2(std::round(std::log2(scale)));
}

// Per-class substream so the same seed yields unrelated draws across specs.
inline CounterRng genStream(const GenSpec& spec) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(spec.cls) << 32) ^
      (static_cast<std::uint64_t>(spec.order) << 16) ^
      static_cast<std::uint64_t>(spec.dim);
  return CounterRng(spec.seed).substream(key);
}

}  // namespace detail

// B / B0 construction: sample off-diagonal entries, then lift each diagonal
// so the row sum strictly (B) or weakly (B0, on boundary rows) clears both
// the positivity and the n^{m-1}-average thresholds. scale = 0 collapses to
// the zero tensor, a boundary B0 instance.
template <typename Scalar = double>
Tensor<Scalar> genBTensor(const GenSpec& spec) {
  if (spec.cls != TensorClass::B && spec.cls != TensorClass::B0)
    throw ParseError("genBTensor requires class B or B0");
  detail::validateGenSpec(spec);
  const int n = spec.dim;
  const int m = spec.order;
  const std::int64_t size = checkedPow(n, m);
  const std::int64_t rowLen = size / n;
  const Scalar scale = static_cast<Scalar>(detail::snapScale(spec.scale));
  const Scalar nPow = static_cast<Scalar>(checkedPow(n, m - 1));
  const CounterRng rng = detail::genStream(spec);

  // diagonal flat index of row i: i repeated m times in base n
  auto diagAt = [&](int i) {
    std::int64_t flat = 0;
    for (int k = 0; k < m; ++k) flat = flat * n + i;
    return flat;
  };
  std::vector<Scalar> entries(static_cast<std::size_t>(size), Scalar(0));
  for (int i = 0; i < n; ++i) {
    const std::int64_t rowBase = i * rowLen;
    const std::int64_t diag = diagAt(i);
    Scalar offSum = Scalar(0);
    Scalar offMax = Scalar(0);  // beta-style: max of 0 and off entries
    for (std::int64_t j = 0; j < rowLen; ++j) {
      const std::int64_t flat = rowBase + j;
      if (flat == diag) continue;
      const Scalar v =
          static_cast<Scalar>(rng.dyadicAt(static_cast<std::uint64_t>(flat))) *
          scale;
      entries[static_cast<std::size_t>(flat)] = v;
      offSum += v;
      offMax = std::max(offMax, v);
    }
    const Scalar threshold = std::max(Scalar(0), nPow * offMax - offSum);
    Scalar lift = Scalar(0);
    const bool boundaryRow =
        spec.cls == TensorClass::B0 &&
        rng.positiveDyadicAt(static_cast<std::uint64_t>(2 * size + i)) <= 0.5;
    if (spec.cls == TensorClass::B || !boundaryRow)
      lift = static_cast<Scalar>(rng.positiveDyadicAt(
                 static_cast<std::uint64_t>(size + i))) *
             scale;
    entries[static_cast<std::size_t>(diag)] = threshold + lift;
  }
  Tensor<Scalar> result(m, n, std::move(entries));
  const auto cls = bClassify(result);
  const bool ok = spec.cls == TensorClass::B && scale > Scalar(0)
                      ? cls.verdict == BVerdict::B
                      : cls.verdict != BVerdict::Neither;
  if (!ok)
    throw InternalDisagreement(
        "generated tensor failed its class assertion: expected " +
        std::string(toString(spec.cls)) + ", classified " +
        std::string(toString(cls.verdict)));
  return result;
}

// Z tensor with prescribed diagonal dominance: nonpositive off entries, then
// diagonal = absolute row sum plus a strictly positive slack (strict) or the
// exact boundary value (weak).
template <typename Scalar = double>
Tensor<Scalar> genZDiagDominated(const GenSpec& spec, bool strict) {
  detail::validateGenSpec(spec);
  if (strict && spec.scale == 0)
    throw ParseError("strict dominance requires a positive scale");
  const int n = spec.dim;
  const int m = spec.order;
  const std::int64_t size = checkedPow(n, m);
  const std::int64_t rowLen = size / n;
  const Scalar scale = static_cast<Scalar>(detail::snapScale(spec.scale));
  const CounterRng rng = detail::genStream(spec);

  auto diagAt = [&](int i) {
    std::int64_t flat = 0;
    for (int k = 0; k < m; ++k) flat = flat * n + i;
    return flat;
  };
  std::vector<Scalar> entries(static_cast<std::size_t>(size), Scalar(0));
  for (int i = 0; i < n; ++i) {
    const std::int64_t rowBase = i * rowLen;
    const std::int64_t diag = diagAt(i);
    Scalar absSum = Scalar(0);
    for (std::int64_t j = 0; j < rowLen; ++j) {
      const std::int64_t flat = rowBase + j;
      if (flat == diag) continue;
      const Scalar v = -std::abs(static_cast<Scalar>(rng.dyadicAt(
                           static_cast<std::uint64_t>(flat)))) *
                       scale;
      entries[static_cast<std::size_t>(flat)] = v;
      absSum += -v;
    }
    Scalar slack = Scalar(0);
    if (strict)
      slack = static_cast<Scalar>(rng.positiveDyadicAt(
                  static_cast<std::uint64_t>(size + i))) *
              scale;
    entries[static_cast<std::size_t>(diag)] = absSum + slack;
  }
  Tensor<Scalar> result(m, n, std::move(entries));
  if (!isZTensor(result))
    throw InternalDisagreement("generated Z tensor has a positive off entry");
  if (!diagonalDominance(result, strict))
    throw InternalDisagreement("generated Z tensor misses its dominance mode");
  const auto cls = bClassify(result);
  if (strict ? cls.verdict != BVerdict::B : cls.verdict == BVerdict::Neither)
    throw InternalDisagreement(
        "dominated Z tensor failed the equivalence-backed class assertion");
  return result;
}

// Exactly symmetric tensor: one dyadic draw per permutation orbit, addressed
// by the orbit's sorted representative, so equality across the orbit is
// bitwise by construction.
template <typename Scalar = double>
Tensor<Scalar> genSymmetric(const GenSpec& spec) {
  detail::validateGenSpec(spec);
  const int n = spec.dim;
  const int m = spec.order;
  const std::int64_t size = checkedPow(n, m);
  const Scalar scale = static_cast<Scalar>(detail::snapScale(spec.scale));
  const CounterRng rng = detail::genStream(spec);

  std::vector<Scalar> entries(static_cast<std::size_t>(size));
  std::vector<int> tuple(static_cast<std::size_t>(m));
  std::vector<int> sorted(static_cast<std::size_t>(m));
  for (std::int64_t flat = 0; flat < size; ++flat) {
    std::int64_t rest = flat;
    for (int k = m; k-- > 0;) {
      tuple[static_cast<std::size_t>(k)] = static_cast<int>(rest % n);
      rest /= n;
    }
    sorted = tuple;
    std::sort(sorted.begin(), sorted.end());
    std::int64_t rep = 0;
    for (int k = 0; k < m; ++k) rep = rep * n + sorted[static_cast<std::size_t>(k)];
    entries[static_cast<std::size_t>(flat)] =
        static_cast<Scalar>(rng.dyadicAt(static_cast<std::uint64_t>(rep))) *
        scale;
  }
  Tensor<Scalar> result(m, n, std::move(entries));
  if (!isSymmetric(result))
    throw InternalDisagreement("generated symmetric tensor is not symmetric");
  return result;
}

// Unstructured tensor: independent dyadic draw per entry.
template <typename Scalar = double>
Tensor<Scalar> genGeneral(const GenSpec& spec) {
  detail::validateGenSpec(spec);
  const std::int64_t size = checkedPow(spec.dim, spec.order);
  const Scalar scale = static_cast<Scalar>(detail::snapScale(spec.scale));
  const CounterRng rng = detail::genStream(spec);
  std::vector<Scalar> entries(static_cast<std::size_t>(size));
  for (std::int64_t flat = 0; flat < size; ++flat)
    entries[static_cast<std::size_t>(flat)] =
        static_cast<Scalar>(rng.dyadicAt(static_cast<std::uint64_t>(flat))) *
        scale;
  return Tensor<Scalar>(spec.order, spec.dim, std::move(entries));
}

template <typename Scalar = double>
Tensor<Scalar> generate(const GenSpec& spec) {
  switch (spec.cls) {
    case TensorClass::B:
    case TensorClass::B0:
      return genBTensor<Scalar>(spec);
    case TensorClass::ZDiagDominated:
      return genZDiagDominated<Scalar>(spec, /*strict=*/true);
    case TensorClass::Symmetric:
      return genSymmetric<Scalar>(spec);
    default:
      return genGeneral<Scalar>(spec);
  }
}

inline std::string corpusFileName(const GenSpec& spec) {
  return std::string(toString(spec.cls)) + "_" + std::to_string(spec.order) +
         "_" + std::to_string(spec.dim) + "_" + std::to_string(spec.seed) +
         ".json";
}

}  // namespace tenstruct
