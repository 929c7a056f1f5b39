#include "waring/factorize.hpp"

#include <algorithm>
#include <numbers>

namespace waring {

using exact::Cyc;
using exact::ExactMatrix;

double goto_target_angle(const GroupCtx& ctx) {
  constexpr double pi = std::numbers::pi;
  switch (ctx.family) {
    case Family::SU: return pi / ctx.n;
    case Family::SpC: return 2 * pi / (4 * ctx.n);
    case Family::K2n: return 2 * pi / (4 * ctx.n - 4);
    default: throw DomainError("width-two factorization needs a compact family");
  }
}

namespace {

CMatrix torus2(double phi) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = std::polar(1.0, phi);
  d(1, 1) = std::polar(1.0, -phi);
  return d;
}

GroupCtx with_rank(const GroupCtx& ctx, int n) {
  GroupCtx c = ctx;
  c.n = n;
  return c;
}

PreimageResult preimage_or_throw(const GroupCtx& ctx, const Word& w, double phi, const FactorizeOptions& opts) {
  PreimageResult r = su2_preimage(w, phi, opts.budget);
  if (r.found) return r;
  const auto n = least_rank_with_preimage(
      w, [&](int k) { return goto_target_angle(with_rank(ctx, k)); }, ctx.n + 1, opts.threshold_scan_max,
      opts.budget);
  const int threshold = n ? *n : -1;
  std::string msg = "no SU(2) preimage of the rank-" + std::to_string(ctx.n) + " target for " + print_word(w) +
                    " within budget (residual " + std::to_string(r.residual) + "); ";
  msg += n ? "empirical threshold N(w) = " + std::to_string(*n)
           : "no success up to rank " + std::to_string(opts.threshold_scan_max);
  throw PreimageBudgetError(msg, ctx.n, threshold);
}

double worst_defect(const MembershipReport& m) {
  return std::max({m.unitarity_defect, m.det_defect, m.form_defect});
}

}  // namespace

WidthTwoPlan plan_width_two(const GroupCtx& ctx, const Word& w1, const Word& w2, const FactorizeOptions& opts) {
  if (!ctx.compact()) throw DomainError("width-two factorization needs a compact family");
  if (w1.empty() || w2.empty()) throw DomainError("width-two factorization needs non-trivial words");
  WidthTwoPlan plan;
  plan.ctx = ctx;
  plan.w1 = w1;
  plan.w2 = w2;
  plan.goto_x = build_goto(ctx);
  plan.embed = build_embedding(ctx.family, ctx.n);
  plan.target_angle = goto_target_angle(ctx);

  plan.pre1 = preimage_or_throw(ctx, w1, plan.target_angle, opts);
  plan.pre2 = conjugate_preimage(preimage_or_throw(ctx, w2, plan.target_angle, opts));

  const CMatrix image = plan.embed(torus2(plan.target_angle));
  plan.q = conj_in_group(ctx, image, plan.goto_x.x, opts.tol);
  const CMatrix& q = plan.q.c;
  for (const auto& m : plan.pre1.witnesses) plan.a.push_back(q * plan.embed(m) * q.adjoint());
  for (const auto& m : plan.pre2.witnesses) plan.b.push_back(q * plan.embed(m) * q.adjoint());
  return plan;
}

FactorizationCert factorize_with_plan(const WidthTwoPlan& plan, const CMatrix& g, const FactorizeOptions& opts) {
  const GroupCtx& ctx = plan.ctx;
  if (g.rows() != ctx.dim() || g.cols() != ctx.dim()) throw DimensionError("target has the wrong size");
  const MembershipReport gm = member(ctx, g, std::max(opts.tol, kVerifyTol));
  if (!gm.member) throw DomainError("target is not an element of " + ctx.str());

  FactorizationCert cert;
  cert.ctx = ctx;
  cert.target = g;
  cert.w1 = plan.w1;
  cert.w2 = plan.w2;
  cert.goto_x = plan.goto_x.x;
  cert.q = plan.q.c;
  cert.target_angle = plan.target_angle;
  cert.tol = opts.tol;
  cert.seed = opts.budget.seed;

  const TorusReduction red = torus_reduce(ctx, g);
  cert.torus_point = red.point;
  cert.c0 = red.conj.c;
  cert.t = solve_commutator(ctx, plan.goto_x, red.point);

  const CMatrix c0i = cert.c0.adjoint();
  const CMatrix tm = cert.t.matrix();
  const CMatrix u = c0i * tm;  // conjugator for the second tuple
  for (const auto& a : plan.a) cert.witnesses_a.push_back(c0i * a * cert.c0);
  for (const auto& b : plan.b) cert.witnesses_b.push_back(u * b * u.adjoint());

  // verification by direct evaluation on the assembled witnesses
  const CMatrix v1 = evaluate<CMatrix>(plan.w1, cert.witnesses_a);
  const CMatrix v2 = evaluate<CMatrix>(plan.w2, cert.witnesses_b);
  cert.residual = (v1 * v2 - g).norm();
  const CMatrix& x = plan.goto_x.x;
  cert.conjugation_defect = std::max((v1 - c0i * x * cert.c0).norm(), (v2 - u * x.adjoint() * u.adjoint()).norm());
  for (const auto* set : {&cert.witnesses_a, &cert.witnesses_b})
    for (const auto& m : *set) cert.witness_defect = std::max(cert.witness_defect, worst_defect(member(ctx, m, 1.0)));
  for (const CMatrix* c : std::initializer_list<const CMatrix*>{&cert.c0, &cert.q, &u})
    cert.witness_defect = std::max(cert.witness_defect, worst_defect(member(ctx, *c, 1.0)));
  cert.ok = cert.residual <= opts.tol && cert.conjugation_defect <= opts.tol && cert.witness_defect <= 10 * opts.tol;
  return cert;
}

FactorizationCert factorize_compact(const GroupCtx& ctx, const CMatrix& g, const Word& w1, const Word& w2,
                                    const FactorizeOptions& opts) {
  return factorize_with_plan(plan_width_two(ctx, w1, w2, opts), g, opts);
}

ExactMatrix j_block(const Cyc& r) {
  return ExactMatrix{{Cyc(0), Cyc(1)}, {r, Cyc(0)}};
}

CentralSquares central_two_squares(int n, const Cyc& r) {
  if (n < 1) throw DomainError("central_two_squares needs n >= 1");
  if (!(r.pow(2 * n) == Cyc(1))) throw DomainError("r is not a 2n-th root of unity");
  CentralSquares out;
  out.n = n;
  out.r = r;
  const auto dim = static_cast<std::size_t>(2 * n);
  const Cyc minus_r = -r;
  std::vector<ExactMatrix> pb, qb;
  if (minus_r.pow(n) == Cyc(1)) {
    out.p_is_identity = true;
    out.p = ExactMatrix::identity(dim);
    for (int i = 0; i < n; ++i) qb.push_back(j_block(r));
    out.q = exact::block_diag(qb);
  } else {
    for (int i = 0; i + 1 < n; ++i) {
      pb.push_back(ExactMatrix::identity(2));
      qb.push_back(j_block(r));
    }
    pb.push_back(j_block(Cyc(-1)));
    qb.push_back(j_block(minus_r));
    out.p = exact::block_diag(pb);
    out.q = exact::block_diag(qb);
  }
  const ExactMatrix prod = out.p * out.p * out.q * out.q;
  if (!(prod == r * ExactMatrix::identity(dim)) || !(exact::determinant(out.p) == Cyc(1)) ||
      !(exact::determinant(out.q) == Cyc(1))) {
    throw DomainError("two-squares identity failed exact verification");
  }
  return out;
}

Zeta4Report check_zeta4_condition(const Word& w, const SearchBudget& budget) {
  Zeta4Report rep;
  rep.word = w;
  rep.preimage = su2_preimage(w, std::numbers::pi / 2, budget);
  rep.found = rep.preimage.found;
  return rep;
}

}  // namespace waring
