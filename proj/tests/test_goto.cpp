#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "waring/goto.hpp"
#include "waring/principal.hpp"

using namespace waring;
using exact::Cyc;
using exact::Rat;
using exact::RatMatrix;

namespace {

// The displayed n x n Ad matrix for K(2n): -1 in the corner, a signed cycle below.
RatMatrix k_ad_pattern(int n) {
  RatMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  m(0, 0) = -1;
  m(1, static_cast<std::size_t>(n - 1)) = 1;
  m(2, 1) = -1;
  for (int i = 3; i < n; ++i) m(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1)) = 1;
  return m;
}

TorusPoint random_torus_point(const GroupCtx& ctx, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const int r = ctx.family == Family::SU ? ctx.n - 1 : ctx.n;
  RVector c(r);
  for (int i = 0; i < r; ++i) c(i) = u(rng);
  return TorusPoint::from_lie_coords(ctx, c);
}

}  // namespace

TEST_SUITE("goto") {

TEST_CASE("SU(3) Goto element is the 3-cycle") {
  const GotoElement x = build_goto(GroupCtx::su(3));
  CHECK(x.root_order == 6);
  CHECK(exact::poly_equal(exact::char_poly(x.x_exact), exact::to_cyc_poly({-1, 0, 0, 1})));
  CHECK(x.x_exact(0, 2) == Cyc(1));
  CHECK(x.x_exact(1, 0) == Cyc(1));
  CHECK(x.x_exact(2, 1) == Cyc(1));
}

TEST_CASE("Sp(2) Goto element has char poly t^4 + 1") {
  const GotoElement x = build_goto(GroupCtx::sp(2));
  CHECK(exact::poly_str(exact::char_poly(x.x_exact)) == "t^4 + 1");
}

TEST_CASE("K(6) Ad matrix matches the displayed matrix") {
  const GotoElement x = build_goto(GroupCtx::k2n(3));
  const RatMatrix want{{Rat(-1), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(-1), Rat(0)}};
  CHECK(ad_on_torus(x.ctx, x.x) == want);
}

TEST_CASE("K(2n) Ad matrix follows the displayed pattern for all n") {
  for (int n = 3; n <= 12; ++n) {
    const GotoElement x = build_goto(GroupCtx::k2n(n));
    CHECK(ad_on_torus(x.ctx, x.x) == k_ad_pattern(n));
  }
}

TEST_CASE("Ad of the identity is the identity") {
  for (const auto& ctx : {GroupCtx::su(4), GroupCtx::sp(3), GroupCtx::k2n(3)}) {
    const RatMatrix m = ad_on_torus(ctx, CMatrix::Identity(ctx.dim(), ctx.dim()));
    CHECK(m == RatMatrix::identity(m.rows()));
  }
}

TEST_CASE("SU Ad of the n-cycle has det(M - I) = n") {
  // the cycle acts on the difference basis as the companion of 1 + t + ... + t^{n-1}
  for (int n = 2; n <= 16; ++n) {
    const GotoElement x = build_goto(GroupCtx::su(n));
    const RatMatrix m = ad_on_torus(x.ctx, x.x);
    const Rat d = exact::determinant(m - RatMatrix::identity(m.rows()));
    CHECK(abs(d) == n);
  }
}

TEST_CASE("ad_on_torus rejects elements outside the normalizer") {
  std::mt19937_64 rng(2);
  const GroupCtx ctx = GroupCtx::sp(3);
  CHECK_THROWS_AS(ad_on_torus(ctx, random_element(ctx, rng)), GroupError);
  CHECK_THROWS_AS(ad_on_torus(ctx, CMatrix::Identity(4, 4)), DimensionError);
}

TEST_CASE("det(M - I) is nonzero for every family up to n = 16") {
  for (int n = 2; n <= 16; ++n) {
    std::vector<GroupCtx> ctxs{GroupCtx::su(n), GroupCtx::sp(n)};
    if (n >= 3) ctxs.push_back(GroupCtx::k2n(n));
    for (const auto& ctx : ctxs) {
      const GotoReport rep = certify_goto(build_goto(ctx));
      CHECK(sgn(rep.det_ad_minus_one) != 0);
      CHECK(rep.membership.member);
      CHECK(rep.membership.unitarity_defect == 0.0);
      CHECK(rep.membership.det_defect == 0.0);
      CHECK(rep.membership.form_defect == 0.0);
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("certify_goto compares against the principal torus image") {
  SUBCASE("Sp(4): t^8 + 1 on both sides") {
    const GotoReport rep = certify_goto(build_goto(GroupCtx::sp(4)));
    CHECK(exact::poly_str(rep.char_poly) == "t^8 + 1");
    CHECK(rep.matches_principal);
    const PrincipalEmbed e = build_embedding(Family::SpC, 4);
    CHECK(exact::poly_equal(exact::char_poly(e.torus_image_exact(16)), rep.char_poly));
  }
  SUBCASE("K(8): (t^2 - 1)(t^6 - 1) and eigenvalue one") {
    const GotoReport rep = certify_goto(build_goto(GroupCtx::k2n(4)));
    CHECK(exact::poly_equal(rep.char_poly, exact::to_cyc_poly(exact::poly_mul({-1, 0, 1}, {-1, 0, 0, 0, 0, 0, 1}))));
    CHECK(rep.matches_principal);
    CHECK(rep.has_eigenvalue_one);
  }
  SUBCASE("SU(4): eigenvalues zeta_8 times the fourth roots of unity") {
    const GotoElement x = build_goto(GroupCtx::su(4));
    const GotoReport rep = certify_goto(x);
    CHECK(exact::poly_str(rep.char_poly) == "t^4 + 1");
    CHECK(rep.matches_principal);
    std::vector<cplx> want;
    for (int k = 0; k < 4; ++k) want.push_back(std::polar(1.0, std::numbers::pi / 4 + k * std::numbers::pi / 2));
    CHECK(testing::multiset_distance(testing::eigenvalues(x.x), want) < 1e-12);
  }
}

TEST_CASE("Goto element is conjugate in the group to the principal torus image") {
  for (const auto& ctx : {GroupCtx::sp(3), GroupCtx::k2n(4), GroupCtx::su(5), GroupCtx::su(6)}) {
    const GotoElement x = build_goto(ctx);
    const PrincipalEmbed e = build_embedding(ctx.family, ctx.n);
    const CMatrix a = e(testing::diag2(2 * std::numbers::pi / x.root_order));
    const Conjugator c = conj_in_group(ctx, a, x.x);
    CHECK(c.certified);
    CHECK(c.residual <= 1e-8);
    CHECK((c.c * a * c.c.adjoint() - x.x).norm() <= 1e-8);
  }
}

TEST_CASE("build_goto rejects unsupported ranks") {
  CHECK_THROWS_AS(build_goto(GroupCtx::k2n(2)), DomainError);
  CHECK_THROWS_AS(build_goto(GroupCtx::sl_exact(3)), DomainError);
}

TEST_CASE("solve_commutator with identity target") {
  const GroupCtx ctx = GroupCtx::sp(3);
  const GotoElement x = build_goto(ctx);
  const TorusPoint t = solve_commutator(ctx, x, TorusPoint{ctx, {0, 0, 0}});
  for (double a : t.angles) CHECK(std::min(a, 2 * std::numbers::pi - a) < 1e-12);
}

TEST_CASE("solve_commutator on SU(2) with the Weyl element") {
  const GroupCtx ctx = GroupCtx::su(2);
  GotoElement x;
  x.ctx = ctx;
  x.x = CMatrix::Zero(2, 2);
  x.x(0, 1) = 1;
  x.x(1, 0) = -1;
  const double phi = 1.1;
  const TorusPoint t = solve_commutator(ctx, x, TorusPoint{ctx, {phi, 2 * std::numbers::pi - phi}});
  CHECK(std::abs(t.lie_coords()(0) - (-phi / 2)) < 1e-12);
  const CMatrix tm = t.matrix();
  CHECK((x.x * tm * x.x.adjoint() * tm.adjoint() - testing::diag2(phi)).norm() < 1e-12);
}

TEST_CASE("solve_commutator residual on random torus targets") {
  std::mt19937_64 rng(17);
  for (int n = 2; n <= 10; ++n) {
    std::vector<GroupCtx> ctxs{GroupCtx::su(n), GroupCtx::sp(n)};
    if (n >= 3) ctxs.push_back(GroupCtx::k2n(n));
    for (const auto& ctx : ctxs) {
      const GotoElement x = build_goto(ctx);
      for (int trial = 0; trial < 100; ++trial) {
        const TorusPoint g0 = random_torus_point(ctx, rng);
        const TorusPoint t = solve_commutator(ctx, x, g0);
        const CMatrix tm = t.matrix();
        REQUIRE((x.x * tm * x.x.adjoint() * tm.adjoint() - g0.matrix()).norm() <= 1e-9);
      }
    }
  }
}

}
