#pragma once

// Goto elements: x in the normalizer of the maximal torus whose adjoint
// action on Lie(T) has no eigenvalue 1, so every torus element is a
// commutator [x, t] with t in T.

#include <vector>

#include "waring/exactnum.hpp"
#include "waring/groups.hpp"
#include "waring/matnum.hpp"

namespace waring {

struct GotoElement {
  GroupCtx ctx;
  exact::ExactMatrix x_exact;
  CMatrix x;
  /// Root order m of the principal torus element conjugate to x:
  /// SU 2n, SpC 4n, K2n 4n - 4.
  int root_order = 0;
};

GotoElement build_goto(const GroupCtx& ctx);

/// Integer matrix of Ad(x) on Lie(T) in the fixed basis (columns are images).
/// Throws GroupError if x does not normalize T.
exact::RatMatrix ad_on_torus(const GroupCtx& ctx, const CMatrix& x);

/// t in T with x t x^{-1} t^{-1} = target.
TorusPoint solve_commutator(const GroupCtx& ctx, const GotoElement& x, const TorusPoint& target);

/// Characteristic polynomial predicted for x: SU t^n -+ 1, SpC t^{2n} + 1,
/// K2n (t^2 - 1)(t^{2n-2} - 1).
exact::IntPoly expected_goto_char_poly(const GroupCtx& ctx);

struct GotoReport {
  GroupCtx ctx;
  MembershipReport membership;
  exact::RatMatrix ad;
  exact::Rat det_ad_minus_one;
  std::vector<exact::Cyc> char_poly;
  std::vector<exact::Cyc> expected_char_poly;
  std::vector<exact::Cyc> principal_char_poly;  // diag(zeta_m^{weights})
  bool matches_expected = false;
  bool matches_principal = false;
  bool has_eigenvalue_one = false;   // required for K2n only
  bool ok = false;
};

GotoReport certify_goto(const GotoElement& x);

}  // namespace waring
