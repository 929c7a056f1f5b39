#include <numbers>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "waring/goto.hpp"
#include "waring/groups.hpp"
#include "waring/principal.hpp"

using namespace waring;

namespace {

constexpr double pi = std::numbers::pi;

CMatrix torus(const GroupCtx& ctx, const std::vector<double>& angles) {
  return TorusPoint{ctx, angles}.matrix();
}

// Angle multisets compared on the circle after sorting e^{i a} by argument.
double angle_set_distance(std::vector<double> a, std::vector<double> b) {
  std::vector<cplx> x, y;
  for (double t : a) x.push_back(std::polar(1.0, t));
  for (double t : b) y.push_back(std::polar(1.0, t));
  return testing::multiset_distance(x, y);
}

std::vector<double> with_inverses(const std::vector<double>& a) {
  std::vector<double> out = a;
  for (double t : a) out.push_back(-t);
  return out;
}

}  // namespace

TEST_SUITE("groups") {

TEST_CASE("group spec parsing") {
  CHECK(GroupCtx::parse("su:7") == GroupCtx::su(7));
  CHECK(GroupCtx::parse("sp:4") == GroupCtx::sp(4));
  CHECK(GroupCtx::parse("k:10") == GroupCtx::k2n(5));
  CHECK(GroupCtx::parse("slq:4") == GroupCtx::sl_exact(4));
  CHECK(GroupCtx::parse("slfp:2:7") == GroupCtx::sl_fp(2, 7));
  CHECK(GroupCtx::k2n(5).str() == "k:10");
  CHECK(GroupCtx::k2n(5).dim() == 10);
  for (const char* bad : {"su", "su:", "xx:3", "k:7", "slfp:2", "su:abc"}) CHECK_THROWS_AS(GroupCtx::parse(bad), ParseError);
  CHECK_THROWS_AS(GroupCtx::parse("su:1"), DomainError);
  CHECK_THROWS_AS(GroupCtx::parse("slfp:2:8"), DomainError);
}

TEST_CASE("forms") {
  const CMatrix sp = GroupCtx::sp(2).form();
  CHECK(sp(0, 2) == cplx(1));
  CHECK(sp(2, 0) == cplx(-1));
  const CMatrix k = GroupCtx::k2n(2).form();
  CHECK(k(0, 2) == cplx(1));
  CHECK(k(2, 0) == cplx(1));
  CHECK(GroupCtx::su(3).form().size() == 0);
}

TEST_CASE("membership examples") {
  for (const GroupCtx ctx : {GroupCtx::su(4), GroupCtx::sp(3), GroupCtx::k2n(3)})
    CHECK(member(ctx, CMatrix::Identity(ctx.dim(), ctx.dim())).member);
  CHECK(member_exact(GroupCtx::su(3), build_goto(GroupCtx::su(3)).x_exact).member);
  const MembershipReport r = member_exact(GroupCtx::sp(3), build_goto(GroupCtx::sp(3)).x_exact);
  CHECK(r.member);
  CHECK(r.form_defect == 0);
  // odd permutation has det -1
  CMatrix swap = CMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  CHECK_FALSE(member(GroupCtx::su(2), swap).member);
  // unitary symplectic but not form-preserving for K
  CHECK_FALSE(member(GroupCtx::k2n(2), build_goto(GroupCtx::sp(2)).x).member);
  CHECK_THROWS_AS(member(GroupCtx::su(3), CMatrix::Identity(2, 2)), DimensionError);
}

TEST_CASE("membership is conjugation-stable") {
  std::mt19937_64 rng(1);
  for (const GroupCtx ctx : {GroupCtx::su(5), GroupCtx::sp(3), GroupCtx::k2n(4)}) {
    for (int i = 0; i < 20; ++i) {
      const CMatrix g = random_element(ctx, rng), c = random_element(ctx, rng);
      REQUIRE(member(ctx, g).member);
      CHECK(member(ctx, c * g * c.adjoint(), 2 * kVerifyTol).member);
    }
  }
}

TEST_CASE("SL_2(F_p) enumeration sizes") {
  CHECK(finite_group_elements(GroupCtx::sl_fp(2, 2)).size() == 6);
  CHECK(finite_group_elements(GroupCtx::sl_fp(2, 5)).size() == 120);
  CHECK(finite_group_elements(GroupCtx::sl_fp(2, 7)).size() == 336);
  CHECK_THROWS_AS(finite_group_elements(GroupCtx::sl_fp(2, 37)), DomainError);
}

TEST_CASE("torus_reduce of a torus element is trivial") {
  const GroupCtx ctx = GroupCtx::sp(3);
  const std::vector<double> a{0.3, 1.1, 2.5};
  const TorusReduction r = torus_reduce(ctx, torus(ctx, a));
  CHECK((r.conj.c * torus(ctx, a) * r.conj.c.adjoint() - r.point.matrix()).norm() <= 1e-9);
  CHECK(angle_set_distance(with_inverses(r.point.angles), with_inverses(a)) < 1e-9);
}

TEST_CASE("torus_reduce recovers a hidden Sp torus point") {
  const GroupCtx ctx = GroupCtx::sp(5);
  std::mt19937_64 rng(2);
  const std::vector<double> a{2 * pi / 5, 4 * pi / 5, -4 * pi / 5, -2 * pi / 5, 0};
  for (int i = 0; i < 10; ++i) {
    const CMatrix v = random_element(ctx, rng);
    const TorusReduction r = torus_reduce(ctx, v * torus(ctx, a) * v.adjoint());
    CHECK(angle_set_distance(with_inverses(r.point.angles), with_inverses(a)) < 1e-9);
  }
}

TEST_CASE("torus_reduce then re-embedding reproduces g") {
  std::mt19937_64 rng(3);
  for (const GroupCtx ctx : {GroupCtx::su(6), GroupCtx::sp(4), GroupCtx::k2n(3), GroupCtx::k2n(4)}) {
    for (int i = 0; i < 20; ++i) {
      const CMatrix g = random_element(ctx, rng);
      const TorusReduction r = torus_reduce(ctx, g);
      CHECK(member(ctx, r.conj.c, 1e-9).member);
      CHECK((r.conj.c.adjoint() * r.point.matrix() * r.conj.c - g).norm() <= 2e-9);
    }
  }
}

TEST_CASE("torus_reduce handles repeated eigenvalues") {
  std::mt19937_64 rng(4);
  for (const GroupCtx ctx : {GroupCtx::sp(3), GroupCtx::k2n(3), GroupCtx::k2n(4)}) {
    const int n = ctx.n;
    for (const double fill : {0.0, pi, 0.7}) {
      const std::vector<double> a(static_cast<std::size_t>(n), fill);
      const CMatrix v = random_element(ctx, rng);
      const CMatrix g = v * torus(ctx, a) * v.adjoint();
      const TorusReduction r = torus_reduce(ctx, g);
      CHECK((r.conj.c.adjoint() * r.point.matrix() * r.conj.c - g).norm() <= 2e-9);
    }
  }
}

TEST_CASE("conj_in_group on identical inputs") {
  std::mt19937_64 rng(5);
  const GroupCtx ctx = GroupCtx::su(4);
  const CMatrix a = random_element(ctx, rng);
  const Conjugator c = conj_in_group(ctx, a, a);
  CHECK(c.certified);
  CHECK((c.c * a * c.c.adjoint() - a).norm() <= 1e-8);
}

TEST_CASE("principal images are conjugate to the Goto elements") {
  const PrincipalEmbed sp = build_embedding(Family::SpC, 3);
  const CMatrix asp = sp(testing::diag2(2 * pi / 12));
  const Conjugator c1 = conj_in_group(GroupCtx::sp(3), asp, build_goto(GroupCtx::sp(3)).x);
  CHECK(c1.certified);
  CHECK(c1.residual <= 1e-8);

  const PrincipalEmbed k = build_embedding(Family::K2n, 4);
  const CMatrix ak = k(testing::diag2(2 * pi / 12));
  const Conjugator c2 = conj_in_group(GroupCtx::k2n(4), ak, build_goto(GroupCtx::k2n(4)).x);
  CHECK(c2.certified);
  CHECK(c2.residual <= 1e-8);
}

TEST_CASE("Sp torus points related by signed permutations are conjugate") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 2 * pi);
  const GroupCtx ctx = GroupCtx::sp(4);
  for (int i = 0; i < 30; ++i) {
    std::vector<double> a(4);
    for (auto& t : a) t = u(rng);
    std::vector<double> b = a;
    std::shuffle(b.begin(), b.end(), rng);
    for (auto& t : b)
      if (rng() & 1u) t = -t;
    const Conjugator c = conj_in_group(ctx, torus(ctx, a), torus(ctx, b));
    CHECK(c.certified);
    CHECK(member(ctx, c.c, 1e-8).member);
  }
}

TEST_CASE("non-conjugate inputs are rejected") {
  const GroupCtx ctx = GroupCtx::sp(2);
  CHECK_THROWS_AS(conj_in_group(ctx, torus(ctx, {0.1, 0.2}), torus(ctx, {0.1, 0.3})), GroupError);
}

TEST_CASE("K(2n) parity obstruction is reported") {
  // one sign flip and no eigenvalue +-1: not conjugate inside K(2n) by an admissible Weyl element
  const GroupCtx ctx = GroupCtx::k2n(3);
  CHECK_THROWS_AS(conj_in_group(ctx, torus(ctx, {0.4, 0.9, 1.7}), torus(ctx, {-0.4, 0.9, 1.7})), GroupError);
  // with eigenvalue 1 available the flip is absorbed
  const Conjugator c = conj_in_group(ctx, torus(ctx, {0.4, 0.9, 0.0}), torus(ctx, {-0.4, 0.9, 0.0}));
  CHECK(c.certified);
}

TEST_CASE("SU conjugators have determinant one") {
  std::mt19937_64 rng(7);
  const GroupCtx ctx = GroupCtx::su(5);
  for (int i = 0; i < 10; ++i) {
    const CMatrix a = random_element(ctx, rng), v = random_element(ctx, rng);
    const Conjugator c = conj_in_group(ctx, a, v * a * v.adjoint());
    CHECK(std::abs(c.c.determinant() - 1.0) <= 1e-9);
  }
}

}  // TEST_SUITE
