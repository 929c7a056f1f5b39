#pragma once

// Width-two factorization g = w1(A) w2(B) in SU(n), Sp(n) and K(2n), the
// exact two-squares decomposition of central elements of SL_{2n}, and the
// zeta_4 preimage check.

#include <cstdint>
#include <vector>

#include "waring/exactnum.hpp"
#include "waring/goto.hpp"
#include "waring/groups.hpp"
#include "waring/principal.hpp"
#include "waring/search.hpp"
#include "waring/wordlang.hpp"

namespace waring {

struct FactorizeOptions {
  double tol = 1e-8;
  SearchBudget budget;
  int threshold_scan_max = 48;  // largest rank tried when reporting N(w)
};

/// Angle phi of the principal torus point conjugate to the Goto element:
/// SU pi/n, SpC 2pi/(4n), K2n 2pi/(4n - 4).
double goto_target_angle(const GroupCtx& ctx);

/// Everything that does not depend on the target element.
struct WidthTwoPlan {
  GroupCtx ctx;
  Word w1, w2;
  GotoElement goto_x;
  PrincipalEmbed embed;
  double target_angle = 0.0;
  PreimageResult pre1;  // w1(a) = diag(e^{i phi}, e^{-i phi})
  PreimageResult pre2;  // w2(b) = diag(e^{-i phi}, e^{i phi})
  Conjugator q;         // q embed(diag(phi)) q^{-1} = x
  std::vector<CMatrix> a;  // q embed(a_i) q^{-1}, so w1(a) = x
  std::vector<CMatrix> b;  // q embed(b_i) q^{-1}, so w2(b) = x^{-1}
};

/// Throws PreimageBudgetError when a word has no preimage within budget.
WidthTwoPlan plan_width_two(const GroupCtx& ctx, const Word& w1, const Word& w2, const FactorizeOptions& opts = {});

struct FactorizationCert {
  GroupCtx ctx;
  CMatrix target;
  Word w1, w2;
  std::vector<CMatrix> witnesses_a;
  std::vector<CMatrix> witnesses_b;
  // intermediate data
  TorusPoint torus_point;  // c0 g c0^{-1} = T(torus_point)
  CMatrix c0;
  CMatrix goto_x;
  TorusPoint t;            // [x, T(t)] = T(torus_point)
  CMatrix q;
  double target_angle = 0.0;
  // verification
  double residual = 0.0;                // ||w1(A) w2(B) - g||_F
  double conjugation_defect = 0.0;      // w1(A), w2(B) against their conjugated targets
  double witness_defect = 0.0;          // worst membership defect over witnesses and conjugators
  double tol = 1e-8;
  std::uint64_t seed = 0;
  bool exact = false;
  bool ok = false;
};

FactorizationCert factorize_with_plan(const WidthTwoPlan& plan, const CMatrix& g, const FactorizeOptions& opts = {});

FactorizationCert factorize_compact(const GroupCtx& ctx, const CMatrix& g, const Word& w1, const Word& w2,
                                    const FactorizeOptions& opts = {});

struct CentralSquares {
  int n = 1;
  exact::Cyc r;
  exact::ExactMatrix p, q;  // p^2 q^2 = r I_{2n}, det p = det q = 1
  bool p_is_identity = false;
};

/// J_r = [[0, 1], [r, 0]] with J_r^2 = r I_2.
exact::ExactMatrix j_block(const exact::Cyc& r);

/// Exact P, Q in SL_{2n} with P^2 Q^2 = r I for r a 2n-th root of unity.
CentralSquares central_two_squares(int n, const exact::Cyc& r);

struct Zeta4Report {
  Word word;
  PreimageResult preimage;
  bool found = false;
};

/// Looks for zeta_4 = diag(i, -i) in w(SU(2)).
Zeta4Report check_zeta4_condition(const Word& w, const SearchBudget& budget = {});

}  // namespace waring
