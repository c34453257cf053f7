#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tenstruct/analysis.hpp"
#include "tenstruct/generate.hpp"
#include "tenstruct/rng.hpp"

using namespace tenstruct;

namespace {

Vectord vec(std::initializer_list<double> v) {
  Vectord x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x(i++) = e;
  return x;
}

Vectord randomVec(CounterRng& rng, int n, double span) {
  Vectord x(n);
  for (int i = 0; i < n; ++i) x(i) = span * (2.0 * rng.nextUnit() - 1.0);
  return x;
}

}  // namespace

TEST_CASE("T operator") {
  const auto id4 = identityTensor<double>(4, 2);
  CHECK(oracle::sameVector(tOperator(id4, vec({0, 0})), vec({0, 0})));
  CHECK(oracle::sameVector(tOperator(id4, vec({1, 1})), vec({0.5, 0.5})));

  // matrices act exactly: exponent 2 - m vanishes
  const Tensor<double> M(2, 2, std::vector<double>{1, 2, 0, 1});
  CHECK(oracle::sameVector(tOperator(M, vec({3, -7})), vec({-11, -7})));
  CHECK(oracle::sameVector(tOperator(M, vec({0, 0})), vec({0, 0})));

  CHECK_THROWS_AS(tOperator(id4, vec({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("F operator") {
  const auto id4 = identityTensor<double>(4, 2);
  const Vectord x = vec({0.5, -0.75});
  CHECK(oracle::sameVector(fOperator(id4, x), x));

  const auto D = diagonalTensor(4, vec({8, 1}));
  CHECK(oracle::sameVector(fOperator(D, vec({1, 1})), vec({2, 1})));

  CHECK_THROWS_AS(fOperator(identityTensor<double>(3, 2), vec({1, 1})),
                  OddOrderUnsupported);
}

TEST_CASE("operators are positively homogeneous of degree 1") {
  CounterRng rng(77);
  for (int m : {2, 3, 4}) {
    for (int n : {2, 3}) {
      GenSpec spec{m, n, TensorClass::General, 11};
      const auto A = genGeneral(spec);
      for (int trial = 0; trial < 20; ++trial) {
        const Vectord x = randomVec(rng, n, 2.0);
        const double t = 10.0 * rng.nextUnit() + 1e-3;
        const Vectord lhs = tOperator(A, Vectord(t * x));
        const Vectord rhs = t * tOperator(A, x);
        CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <=
              1e-10 * (1.0 + rhs.lpNorm<Eigen::Infinity>()));
        if (m % 2 == 0) {
          const Vectord fl = fOperator(A, Vectord(t * x));
          const Vectord fr = t * fOperator(A, x);
          CHECK((fl - fr).lpNorm<Eigen::Infinity>() <=
                1e-10 * (1.0 + fr.lpNorm<Eigen::Infinity>()));
        }
      }
    }
  }
}

TEST_CASE("operator norms respect the row bounds") {
  CounterRng rng(131);
  for (int m : {2, 3, 4}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      GenSpec spec{m, 3, TensorClass::General, seed};
      const auto A = genGeneral(spec);
      const auto bound = rowNormBound(A);
      for (int trial = 0; trial < 60; ++trial) {
        const Vectord x = randomVec(rng, 3, 1.5);
        const double xn = x.lpNorm<Eigen::Infinity>();
        CHECK(tOperator(A, x).lpNorm<Eigen::Infinity>() <=
              bound.tBound * xn * (1.0 + 1e-10) + 1e-12);
        if (m % 2 == 0) {
          REQUIRE(bound.fBound.has_value());
          CHECK(fOperator(A, x).lpNorm<Eigen::Infinity>() <=
                *bound.fBound * xn * (1.0 + 1e-10) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("alpha on the reference instances") {
  AlphaConfig cfg;
  cfg.h = 0.05;
  const auto idMat = alphaEstimate(identityTensor<double>(2, 2), MapKind::T, cfg);
  CHECK(idMat.value == 1.0);
  CHECK(idMat.certified);
  CHECK(std::abs(idMat.minimizer.lpNorm<Eigen::Infinity>() - 1.0) <= 1e-12);
  CHECK(idMat.evaluations > 0);
  CHECK(idMat.h == 0.05);

  AlphaConfig fine;
  fine.h = 0.01;
  const auto id4 = alphaEstimate(identityTensor<double>(4, 2), MapKind::T, fine);
  CHECK(id4.value == doctest::Approx(0.5).epsilon(1e-12));

  const auto neg =
      alphaEstimate(Tensor<double>(2, 2, std::vector<double>{-1, 0, 0, -1}),
                    MapKind::T, cfg);
  CHECK(neg.value == -1.0);

  const auto idF = alphaEstimate(identityTensor<double>(4, 2), MapKind::F, cfg);
  CHECK(idF.value == 1.0);

  // reported value matches a re-evaluation at the reported minimizer
  CHECK(std::abs(maxProductObjective(identityTensor<double>(4, 2), MapKind::F,
                                     idF.minimizer) -
                 idF.value) <= 1e-12);
}

TEST_CASE("alpha validation and limits") {
  const auto id3 = identityTensor<double>(3, 2);
  CHECK_THROWS_AS(alphaEstimate(id3, MapKind::F), OddOrderUnsupported);
  AlphaConfig bad;
  bad.h = 3.0;
  CHECK_THROWS_AS(alphaEstimate(id3, MapKind::T, bad), ParseError);
  bad.h = 0.0;
  CHECK_THROWS_AS(alphaEstimate(id3, MapKind::T, bad), ParseError);

  AlphaConfig tiny;
  tiny.h = 0.01;
  tiny.maxEvals = 10;
  CHECK_THROWS_AS(alphaEstimate(identityTensor<double>(2, 3), MapKind::T, tiny),
                  ResourceLimit);
}

TEST_CASE("grid alpha agrees with the exhaustive oracle") {
  for (int m : {2, 3, 4}) {
    for (int n : {1, 2, 3}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        GenSpec spec{m, n, TensorClass::General, seed};
        const auto A = genGeneral(spec);
        AlphaConfig cfg;
        cfg.h = 0.25;
        const auto est = alphaEstimate(A, MapKind::T, cfg);
        const auto scan = oracle::bruteSphereScan(A, MapKind::T, 0.25);
        CHECK(std::abs(est.value - scan.phi) <=
              1e-12 * (1.0 + std::abs(scan.phi)));
        CHECK(std::abs(maxProductObjective(A, MapKind::T, scan.phiArg) -
                       scan.phi) <= 1e-12 * (1.0 + std::abs(scan.phi)));
        if (m % 2 == 0) {
          const auto estF = alphaEstimate(A, MapKind::F, cfg);
          const auto scanF = oracle::bruteSphereScan(A, MapKind::F, 0.25);
          CHECK(std::abs(estF.value - scanF.phi) <=
                1e-12 * (1.0 + std::abs(scanF.phi)));
          // sign equivalence between the two operators on the same lattice
          CHECK((estF.value > 0.0) == (est.value > 0.0));
        }
      }
    }
  }
}

TEST_CASE("alpha never exceeds the row norm bounds") {
  for (int m : {2, 3, 4}) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      GenSpec spec{m, 2, TensorClass::General, seed + 40};
      const auto A = genGeneral(spec);
      const auto bound = rowNormBound(A);
      AlphaConfig cfg;
      cfg.h = 0.1;
      CHECK(alphaEstimate(A, MapKind::T, cfg).value <=
            bound.tBound + 1e-12);
      if (m % 2 == 0) {
        REQUIRE(bound.fBound.has_value());
        CHECK(alphaEstimate(A, MapKind::F, cfg).value <=
              *bound.fBound + 1e-12);
      }
    }
  }
}

TEST_CASE("multistart alpha") {
  AlphaConfig cfg;
  cfg.method = AlphaMethod::Multistart;
  cfg.starts = 16;
  cfg.iters = 100;
  const auto est = alphaEstimate(identityTensor<double>(2, 2), MapKind::T, cfg);
  CHECK(est.value == 1.0);
  CHECK_FALSE(est.certified);
  CHECK(est.method == AlphaMethod::Multistart);
  CHECK(est.starts == 16);
  CHECK(std::abs(est.minimizer.lpNorm<Eigen::Infinity>() - 1.0) <= 1e-12);

  // any multistart result sits above the certified band of the true minimum
  GenSpec spec{3, 3, TensorClass::General, 9};
  const auto A = genGeneral(spec);
  AlphaConfig grid;
  grid.h = 0.05;
  const auto g = alphaEstimate(A, MapKind::T, grid);
  const auto ms = alphaEstimate(A, MapKind::T, cfg);
  CHECK(ms.value >= g.value - gridSlack(A, MapKind::T, grid.h));
}

TEST_CASE("p classification on the reference instances") {
  const auto evenMat = pClassify(identityTensor<double>(2, 2));
  CHECK(evenMat.cls == PClass::P);
  CHECK(evenMat.certified);
  CHECK_FALSE(evenMat.witness.has_value());
  CHECK(evenMat.alphaT.value == 1.0);

  const auto even4 = pClassify(identityTensor<double>(4, 2));
  CHECK(even4.cls == PClass::P);

  const auto odd2 = pClassify(identityTensor<double>(3, 2));
  CHECK(odd2.cls == PClass::NotP0);
  REQUIRE(odd2.witness.has_value());
  CHECK(oracle::sameVector(*odd2.witness, vec({-1, -1})));

  const auto odd3 = pClassify(identityTensor<double>(3, 3));
  CHECK(odd3.cls == PClass::NotP0);
  REQUIRE(odd3.witness.has_value());
  CHECK(oracle::sameVector(*odd3.witness, vec({-1, -1, -1})));

  const auto indef = pClassify(diagonalTensor(2, vec({1, -1})));
  CHECK(indef.cls == PClass::NotP0);
  REQUIRE(indef.witness.has_value());
  CHECK((*indef.witness)(0) == 0.0);
  CHECK(std::abs((*indef.witness)(1)) == 1.0);

  const auto semi = pClassify(diagonalTensor(2, vec({1, 0})));
  CHECK(semi.cls == PClass::P0NotP);
  CHECK(semi.alphaT.value == 0.0);
  REQUIRE(semi.witness.has_value());
  CHECK(maxProductObjective(diagonalTensor(2, vec({1, 0})), MapKind::T,
                            *semi.witness) <= 0.0);
}

TEST_CASE("refutation witnesses are exact certificates") {
  for (int m : {3, 5}) {
    for (int n : {2, 3}) {
      if (m == 5 && n == 3) continue;
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        GenSpec spec{m, n, TensorClass::Symmetric, seed};
        const auto A = genSymmetric(spec);
        AlphaConfig cfg;
        cfg.h = 0.1;
        const auto verdict = pClassify(A, cfg);
        CHECK(verdict.cls != PClass::P);
        REQUIRE(verdict.witness.has_value());
        const Vectord& w = *verdict.witness;
        const Vectord y = oracle::naiveContract(A, w);
        if (verdict.cls == PClass::NotP0) {
          bool allNeg = true;
          bool any = false;
          for (int i = 0; i < n; ++i) {
            if (w(i) == 0.0) continue;
            any = true;
            allNeg = allNeg && w(i) * y(i) < 0.0;
          }
          CHECK(any);
          CHECK(allNeg);
        } else {
          double best = -std::numeric_limits<double>::infinity();
          for (int i = 0; i < n; ++i) best = std::max(best, w(i) * y(i));
          CHECK(best <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("negative support minimum on the lattice forces a refutation") {
  for (int m : {2, 3, 4}) {
    for (std::uint64_t seed = 20; seed < 26; ++seed) {
      GenSpec spec{m, 2, TensorClass::General, seed};
      const auto A = genGeneral(spec);
      const auto scan = oracle::bruteSphereScan(A, MapKind::T, 0.2);
      AlphaConfig cfg;
      cfg.h = 0.2;
      const auto verdict = pClassify(A, cfg);
      if (scan.psi < -1e-12) CHECK(verdict.cls == PClass::NotP0);
      if (verdict.cls == PClass::P) CHECK(scan.psi > 0.0);
    }
  }
}

TEST_CASE("alpha monotonicity under diagonal lifts and subtensors") {
  const auto A = identityTensor<double>(4, 2);
  AlphaConfig cfg;
  cfg.h = 0.05;
  const double slack = 2.0 * objectiveLipschitz(A) * cfg.h;
  const double a = alphaEstimate(A, MapKind::T, cfg).value;

  const auto lifted = A + diagonalTensor(4, vec({0.5, 0.25}));
  CHECK(a <= alphaEstimate(lifted, MapKind::T, cfg).value + slack);

  for (int mask = 1; mask < 4; ++mask) {
    std::vector<int> J;
    for (int i = 0; i < 2; ++i)
      if (mask & (1 << i)) J.push_back(i + 1);
    const auto sub = principalSubtensor(A, IndexSet(J));
    CHECK(a <= alphaEstimate(sub, MapKind::T, cfg).value + slack);
    CHECK(alphaEstimate(A, MapKind::F, cfg).value <=
          alphaEstimate(sub, MapKind::F, cfg).value + slack);
  }
}

TEST_CASE("P verdicts survive principal subtensors") {
  const auto A = identityTensor<double>(4, 3);
  AlphaConfig cfg;
  cfg.h = 0.1;
  REQUIRE(pClassify(A, cfg).cls == PClass::P);
  for (int mask = 1; mask < 8; ++mask) {
    std::vector<int> J;
    for (int i = 0; i < 3; ++i)
      if (mask & (1 << i)) J.push_back(i + 1);
    CHECK(pClassify(principalSubtensor(A, IndexSet(J)), cfg).cls == PClass::P);
  }
}

TEST_CASE("vanishing symmetric forms have zero coefficients") {
  const auto zero = zeroTensor<double>(3, 2);
  const std::int64_t K = 8;
  bool allZero = true;
  for (std::int64_t i = 0; i <= K && allZero; ++i)
    for (std::int64_t j = 0; j <= K && allZero; ++j) {
      const Vectord x =
          vec({2.0 * double(i) / double(K) - 1.0,
               2.0 * double(j) / double(K) - 1.0});
      allZero = polynomialValue(zero, x) == 0.0;
    }
  CHECK(allZero);
  CHECK(oracle::sameEntries(zero, zeroTensor<double>(3, 2)));

  // contrapositive: a nonzero symmetric tensor shows up on the lattice
  std::vector<CoordEntry<double>> coords = {
      {{1, 1, 2}, 1e-8}, {{1, 2, 1}, 1e-8}, {{2, 1, 1}, 1e-8}};
  const auto bump = Tensor<double>::fromCoords(3, 2, coords);
  REQUIRE(isSymmetric(bump));
  bool sawNonzero = false;
  for (std::int64_t i = 0; i <= K && !sawNonzero; ++i)
    for (std::int64_t j = 0; j <= K && !sawNonzero; ++j) {
      const Vectord x =
          vec({2.0 * double(i) / double(K) - 1.0,
               2.0 * double(j) / double(K) - 1.0});
      sawNonzero = polynomialValue(bump, x) != 0.0;
    }
  CHECK(sawNonzero);
}

TEST_CASE("scaling certificates") {
  const auto idCert =
      scalingCertificate(identityTensor<double>(2, 2), vec({1, -1}));
  CHECK(idCert.k == 1);
  CHECK(idCert.epsilon == 1.0 / 3.0);
  CHECK(idCert.product == 1.0 + idCert.epsilon);
  CHECK(idCert.d(0) == 1.0);
  CHECK(idCert.d(1) == idCert.epsilon);

  const Tensor<double> M(2, 2, std::vector<double>{1, 2, 0, 1});
  const auto cert = scalingCertificate(M, vec({1, -1}));
  CHECK(cert.k == 2);
  CHECK(cert.epsilon == 1.0 / 3.0);
  CHECK(cert.product == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(cert.product > 0.0);
  CHECK(cert.d(1) == 1.0);

  const Tensor<double> neg(2, 2, std::vector<double>{-1, 0, 0, -1});
  CHECK_THROWS_AS(scalingCertificate(neg, vec({1, -1})), NoPositiveProduct);
}
