#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "waring/exactnum.hpp"

using namespace waring;
using exact::Cyc;
using exact::ExactMatrix;
using exact::IntPoly;
using exact::Rat;

namespace {

Cyc random_cyc(std::mt19937_64& rng) {
  static const int conductors[] = {1, 3, 4, 5, 6, 8, 12};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(conductors) - 1);
  const int k = conductors[pick(rng)];
  std::vector<Rat> c(static_cast<std::size_t>(exact::field_degree_over_Q(k)));
  for (auto& x : c) x = testing::random_rat(rng, 5);
  return Cyc::from_coeffs(k, c);
}

Cyc random_nonzero_cyc(std::mt19937_64& rng) {
  for (;;) {
    Cyc c = random_cyc(rng);
    if (!c.is_zero()) return c;
  }
}

ExactMatrix random_exact(std::mt19937_64& rng, std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_cyc(rng);
  return m;
}

// Unit lower times unit upper with a random diagonal: always invertible.
ExactMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  ExactMatrix l = ExactMatrix::identity(n), u = ExactMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    u(i, i) = random_nonzero_cyc(rng);
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = random_cyc(rng);
      u(j, i) = random_cyc(rng);
    }
  }
  return l * u;
}

std::complex<double> eval_int(const IntPoly& p, std::complex<double> z) {
  std::complex<double> acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + static_cast<double>(*it);
  return acc;
}

}  // namespace

TEST_SUITE("exactnum") {

TEST_CASE("cyclotomic polynomials") {
  CHECK(exact::cyclotomic_poly(1) == IntPoly{-1, 1});
  CHECK(exact::cyclotomic_poly(8) == IntPoly{1, 0, 0, 0, 1});
  CHECK(exact::cyclotomic_poly(12) == IntPoly{1, 0, -1, 0, 1});
}

TEST_CASE("cyclotomic polynomials against numeric roots and t^k - 1") {
  for (int k = 1; k <= 60; ++k) {
    const IntPoly phi = exact::cyclotomic_poly(k);
    CHECK(static_cast<int>(phi.size()) - 1 == exact::field_degree_over_Q(k));
    for (int j = 1; j <= k; ++j) {
      const double mod = std::abs(eval_int(phi, std::polar(1.0, 2 * std::numbers::pi * j / k)));
      if (std::gcd(j, k) == 1) {
        CHECK(mod < 1e-6);
      } else {
        CHECK(mod > 1e-6);
      }
    }
    IntPoly prod{1};
    for (int d = 1; d <= k; ++d)
      if (k % d == 0) prod = exact::poly_mul(prod, exact::cyclotomic_poly(d));
    IntPoly want(static_cast<std::size_t>(k + 1), 0);
    want[0] = -1;
    want[static_cast<std::size_t>(k)] = 1;
    CHECK(prod == want);
  }
}

TEST_CASE("field degrees") {
  CHECK(exact::field_degree_over_Q(8) == 4);
  CHECK(exact::field_degree_over_Q(1) == 1);
  CHECK(exact::field_degree_over_Q(12) == 4);
}

TEST_CASE("cyclotomic arithmetic examples") {
  CHECK(Cyc::zeta(8) * Cyc::zeta(8) == Cyc::zeta(8, 2));
  CHECK(Cyc::zeta(8, 2) == Cyc::zeta(4));
  CHECK((Cyc::zeta(4) + Cyc::zeta(4, 3)).is_zero());
  const Cyc a = Cyc(1) + Cyc::zeta(8);
  CHECK(a / a == Cyc(1));
  CHECK_THROWS_AS(Cyc(1) / Cyc(0), Error);
  CHECK((Cyc::zeta(3) * Cyc::zeta(4)) == Cyc::zeta(12, 7));
}

TEST_CASE("roots of unity have exact order") {
  for (int k = 1; k <= 64; ++k) {
    const Cyc z = Cyc::zeta(k);
    CHECK(z.pow(k) == Cyc(1));
    Cyc p = Cyc(1);
    for (int j = 1; j < k; ++j) {
      p *= z;
      CHECK_FALSE(p == Cyc(1));
    }
  }
}

TEST_CASE("complex embedding") {
  CHECK(std::abs(Cyc::zeta(8, 3).to_complex() - std::polar(1.0, 3 * std::numbers::pi / 4)) < 1e-14);
  CHECK(Cyc::zeta(6).conj() == Cyc::zeta(6, 5));
}

TEST_CASE("string forms round-trip") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const Cyc c = random_cyc(rng);
    CHECK(Cyc::parse(c.str()) == c);
  }
  CHECK(Cyc::parse("zeta:6:1") == Cyc::zeta(6));
  CHECK(Cyc(Rat(-2, 7)).str() == "-2/7");
  CHECK(exact::parse_rat("6/4") == Rat(3, 2));
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const Cyc a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) {
      CHECK(a * a.inverse() == Cyc(1));
      CHECK((b / a) * a == b);
    }
  }
}

TEST_CASE("char poly of J_r") {
  for (const Cyc& r : {Cyc(-1), Cyc::zeta(4), Cyc::zeta(6, 5)}) {
    const ExactMatrix j{{Cyc(0), Cyc(1)}, {r, Cyc(0)}};
    CHECK(exact::poly_equal(exact::char_poly(j), {-r, Cyc(0), Cyc(1)}));
  }
}

TEST_CASE("char poly agrees with numeric eigenvalues") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const ExactMatrix m = random_exact(rng, 3);
    const auto p = exact::to_complex(exact::char_poly(m));
    for (const auto& lambda : testing::eigenvalues(to_cmatrix(m))) {
      std::complex<double> acc = 0;
      for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * lambda + *it;
      CHECK(std::abs(acc) < 1e-6 * (1 + std::abs(lambda)) * 100);
    }
  }
}

TEST_CASE("char poly is a similarity invariant") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
    const ExactMatrix m = random_exact(rng, n);
    const ExactMatrix p = random_invertible(rng, n);
    const ExactMatrix conj = p * m * exact::exact_inverse(p);
    CHECK(exact::poly_equal(exact::char_poly(conj), exact::char_poly(m)));
  }
}

TEST_CASE("inverse examples") {
  CHECK(exact::exact_inverse(ExactMatrix::identity(3)) == ExactMatrix::identity(3));
  const ExactMatrix j{{Cyc(0), Cyc(1)}, {Cyc(-1), Cyc(0)}};
  CHECK(exact::exact_inverse(j) == Cyc(-1) * j);
  const ExactMatrix d{{Cyc::zeta(6), Cyc(0)}, {Cyc(0), Cyc::zeta(6, 5)}};
  CHECK(exact::exact_inverse(d) == ExactMatrix{{Cyc::zeta(6, 5), Cyc(0)}, {Cyc(0), Cyc::zeta(6)}});
  CHECK_THROWS_AS(exact::exact_inverse(ExactMatrix{{Cyc(1), Cyc(2)}, {Cyc(2), Cyc(4)}}), SingularMatrixError);
}

TEST_CASE("inverse is two-sided on random matrices") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const ExactMatrix m = random_invertible(rng, 3);
    const ExactMatrix inv = exact::exact_inverse(m);
    CHECK(m * inv == ExactMatrix::identity(3));
    CHECK(inv * m == ExactMatrix::identity(3));
  }
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 30; ++i) {
    const ExactMatrix a = random_exact(rng, 3), b = random_exact(rng, 3);
    CHECK(exact::determinant(a * b) == exact::determinant(a) * exact::determinant(b));
  }
}

}  // TEST_SUITE
