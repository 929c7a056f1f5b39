#include "waring/goto.hpp"

#include <cmath>
#include <numbers>

#include "waring/principal.hpp"

namespace waring {

using exact::Cyc;
using exact::ExactMatrix;
using exact::Rat;
using exact::RatMatrix;

namespace {

// s_n: e_i -> e_{i+1}, e_{n-1} -> e_0
ExactMatrix cycle(int n) {
  ExactMatrix s(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  s(0, static_cast<std::size_t>(n - 1)) = 1;
  for (int i = 0; i + 1 < n; ++i) s(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = 1;
  return s;
}

// s'_{n-1}: fixes e_0 and cycles e_1 .. e_{n-1}
ExactMatrix cycle_fixing_first(int n) {
  ExactMatrix s(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  s(0, 0) = 1;
  if (n == 1) return s;
  s(1, static_cast<std::size_t>(n - 1)) = 1;
  for (int i = 1; i + 1 < n; ++i) s(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = 1;
  return s;
}

// [[I - D, D], [sign D, I - D]] with D the diagonal projector on the first `width` slots
ExactMatrix reflection_block(int n, int width, int sign) {
  const auto d = static_cast<std::size_t>(2 * n);
  ExactMatrix m = ExactMatrix::identity(d);
  for (int j = 0; j < width && j < n; ++j) {
    const auto a = static_cast<std::size_t>(j);
    const auto b = static_cast<std::size_t>(n + j);
    m(a, a) = 0;
    m(b, b) = 0;
    m(a, b) = 1;
    m(b, a) = sign;
  }
  return m;
}

// Lie(T) basis vector j as a diagonal.
std::vector<double> basis_diag(const GroupCtx& ctx, int j) {
  std::vector<double> v(static_cast<std::size_t>(ctx.dim()), 0.0);
  v[static_cast<std::size_t>(j)] = 1.0;
  v[static_cast<std::size_t>(ctx.family == Family::SU ? j + 1 : ctx.n + j)] = -1.0;
  return v;
}

int lie_rank(const GroupCtx& ctx) { return ctx.family == Family::SU ? ctx.n - 1 : ctx.n; }

}  // namespace

GotoElement build_goto(const GroupCtx& ctx) {
  GotoElement g;
  g.ctx = ctx;
  const int n = ctx.n;
  switch (ctx.family) {
    case Family::SU:
      if (n < 2) throw DomainError("SU Goto element needs n >= 2");
      g.x_exact = cycle(n);
      if (n % 2 == 0) g.x_exact = Cyc::zeta(2 * n) * g.x_exact;
      g.root_order = 2 * n;
      break;
    case Family::SpC: {
      if (n < 1) throw DomainError("Sp Goto element needs n >= 1");
      const ExactMatrix s = cycle(n);
      g.x_exact = exact::block_diag<Cyc>({s, s}) * reflection_block(n, 1, -1);
      g.root_order = 4 * n;
      break;
    }
    case Family::K2n: {
      if (n < 3) throw DomainError("K Goto element needs n >= 3");
      const ExactMatrix s = cycle_fixing_first(n);
      g.x_exact = exact::block_diag<Cyc>({s, s}) * reflection_block(n, 2, 1);
      g.root_order = 4 * n - 4;
      break;
    }
    default:
      throw DomainError("Goto elements are built for compact families only");
  }
  g.x = to_cmatrix(g.x_exact);
  return g;
}

RatMatrix ad_on_torus(const GroupCtx& ctx, const CMatrix& x) {
  if (!ctx.compact()) throw DomainError("ad_on_torus needs a compact family");
  if (x.rows() != ctx.dim() || x.cols() != ctx.dim()) throw DimensionError("ad_on_torus: wrong matrix size");
  const int r = lie_rank(ctx);
  const CMatrix xinv = MatrixOps<CMatrix>{}.inverse(x);
  RatMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) {
    const auto v = basis_diag(ctx, j);
    CMatrix h = CMatrix::Zero(ctx.dim(), ctx.dim());
    for (int i = 0; i < ctx.dim(); ++i) h(i, i) = v[static_cast<std::size_t>(i)];
    const CMatrix y = x * h * xinv;
    CMatrix off = y;
    off.diagonal().setZero();
    if (off.norm() > 1e-10 || y.diagonal().imag().norm() > 1e-10) {
      throw GroupError("element does not normalize the maximal torus");
    }
    const Eigen::VectorXd dg = y.diagonal().real();
    std::vector<double> coords(static_cast<std::size_t>(r));
    if (ctx.family == Family::SU) {
      double acc = 0;
      for (int i = 0; i < r; ++i) coords[static_cast<std::size_t>(i)] = acc += dg(i);
      if (std::abs(dg.sum()) > 1e-10) throw GroupError("Ad image leaves the trace-zero subspace");
    } else {
      for (int i = 0; i < r; ++i) {
        if (std::abs(dg(i) + dg(ctx.n + i)) > 1e-10) throw GroupError("Ad image leaves Lie(T)");
        coords[static_cast<std::size_t>(i)] = dg(i);
      }
    }
    for (int i = 0; i < r; ++i) {
      const double c = coords[static_cast<std::size_t>(i)];
      const double rc = std::round(c);
      if (std::abs(c - rc) > 1e-10) throw GroupError("Ad matrix is not integral");
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rat(static_cast<long>(rc));
    }
  }
  return m;
}

TorusPoint solve_commutator(const GroupCtx& ctx, const GotoElement& x, const TorusPoint& target) {
  if (!(target.ctx == ctx) || !(x.ctx == ctx)) throw DomainError("solve_commutator: context mismatch");
  const RatMatrix ad = ad_on_torus(ctx, x.x);
  const int r = lie_rank(ctx);
  RMatrix a(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      a(i, j) = ad(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d() - (i == j ? 1.0 : 0.0);
  const RVector phi = target.lie_coords();
  const CMatrix want = target.matrix();
  const CMatrix xinv = x.x.adjoint();

  auto attempt = [&](const RVector& rhs, TorusPoint& out) {
    const RVector theta = solve_real_linear(a, rhs);
    out = TorusPoint::from_lie_coords(ctx, theta);
    const CMatrix t = out.matrix();
    const CMatrix comm = x.x * t * xinv * t.adjoint();
    return (comm - want).norm() <= 1e-9;
  };

  TorusPoint out{ctx, {}};
  if (attempt(phi, out)) return out;
  // the coordinates are defined modulo the 2pi lattice; try shifted representatives
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int shift = 1; shift <= r; ++shift) {
    for (int i = 0; i < r; ++i) {
      for (int s : {shift, -shift}) {
        RVector rhs = phi;
        rhs(i) += s * two_pi;
        if (attempt(rhs, out)) return out;
      }
    }
  }
  throw ConvergenceError("commutator solve failed on all lattice shifts");
}

exact::IntPoly expected_goto_char_poly(const GroupCtx& ctx) {
  const auto n = static_cast<std::size_t>(ctx.n);
  exact::IntPoly p;
  switch (ctx.family) {
    case Family::SU:
      p.assign(n + 1, 0);
      p[0] = ctx.n % 2 == 0 ? 1 : -1;
      p[n] = 1;
      return p;
    case Family::SpC:
      p.assign(2 * n + 1, 0);
      p[0] = 1;
      p[2 * n] = 1;
      return p;
    case Family::K2n: {
      exact::IntPoly q(2 * n - 1, 0);
      q[0] = -1;
      q[2 * n - 2] = 1;
      return exact::poly_mul({-1, 0, 1}, q);
    }
    default:
      throw DomainError("no Goto polynomial for this family");
  }
}

GotoReport certify_goto(const GotoElement& x) {
  GotoReport rep;
  rep.ctx = x.ctx;
  rep.membership = member_exact(x.ctx, x.x_exact);
  rep.ad = ad_on_torus(x.ctx, x.x);
  rep.det_ad_minus_one = exact::determinant(rep.ad - RatMatrix::identity(rep.ad.rows()));
  rep.char_poly = exact::char_poly(x.x_exact);
  rep.expected_char_poly = exact::to_cyc_poly(expected_goto_char_poly(x.ctx));
  const auto weights = principal_weights(x.ctx.family, x.ctx.n);
  ExactMatrix diag(weights.size(), weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) diag(i, i) = Cyc::zeta(x.root_order, weights[i]);
  rep.principal_char_poly = exact::char_poly(diag);
  rep.matches_expected = exact::poly_equal(rep.char_poly, rep.expected_char_poly);
  rep.matches_principal = exact::poly_equal(rep.char_poly, rep.principal_char_poly);
  Cyc at_one(0);
  for (const auto& c : rep.char_poly) at_one += c;
  rep.has_eigenvalue_one = at_one.is_zero();
  rep.ok = rep.membership.member && sgn(rep.det_ad_minus_one) != 0 && rep.matches_expected &&
           rep.matches_principal && (x.ctx.family != Family::K2n || rep.has_eigenvalue_one);
  return rep;
}

}  // namespace waring
