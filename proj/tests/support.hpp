#pragma once

// Generators and comparison helpers shared by the unit tests.

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "waring/exactnum.hpp"
#include "waring/groups.hpp"
#include "waring/matnum.hpp"

namespace testing {

using waring::CMatrix;
using waring::cplx;
using waring::exact::Rat;
using waring::exact::RatMatrix;

inline Rat random_rat(std::mt19937_64& rng, int height) {
  std::uniform_int_distribution<int> num(-height, height);
  std::uniform_int_distribution<int> den(1, height);
  Rat r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Rat random_nonzero_rat(std::mt19937_64& rng, int height) {
  for (;;) {
    Rat r = random_rat(rng, height);
    if (sgn(r) != 0) return r;
  }
}

/// Product of a few elementary matrices: lands anywhere in SL_2(Q).
inline RatMatrix random_sl2q(std::mt19937_64& rng, int height = 4) {
  RatMatrix m = RatMatrix::identity(2);
  std::uniform_int_distribution<int> steps(1, 4);
  const int k = steps(rng);
  for (int i = 0; i < k; ++i) {
    const Rat a = random_rat(rng, height);
    m = m * RatMatrix{{Rat(1), a}, {Rat(0), Rat(1)}};
    const Rat b = random_rat(rng, height);
    m = m * RatMatrix{{Rat(1), Rat(0)}, {b, Rat(1)}};
  }
  const Rat s = random_nonzero_rat(rng, height);
  return m * RatMatrix{{s, Rat(0)}, {Rat(0), 1 / s}};
}

inline CMatrix random_su2(std::mt19937_64& rng) {
  return waring::random_element(waring::GroupCtx::su(2), rng);
}

inline CMatrix diag2(double theta) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = std::polar(1.0, theta);
  d(1, 1) = std::polar(1.0, -theta);
  return d;
}

/// Max distance after greedy matching of two complex multisets.
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](const cplx& u, const cplx& v) { return std::abs(u - x) < std::abs(v - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

inline std::vector<cplx> eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m);
  std::vector<cplx> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return out;
}

}  // namespace testing
