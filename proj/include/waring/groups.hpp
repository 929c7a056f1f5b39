#pragma once

// Group contexts for the compact families SU(n), Sp(n) = U(2n) ∩ Sp(2n, C),
// K(2n) = U(2n) ∩ K(2n, C), plus SL_n over exact fields and SL_2(F_p).
// Provides membership tests, the diagonal torus model, reduction of an
// element to the torus and construction of in-group conjugators.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "waring/exactnum.hpp"
#include "waring/matnum.hpp"

namespace waring {

enum class Family { SU, SpC, K2n, SLExact, SLFp };

struct GroupCtx {
  Family family = Family::SU;
  int n = 2;  // rank parameter
  int p = 0;  // prime, SLFp only

  static GroupCtx su(int n);
  static GroupCtx sp(int n);
  static GroupCtx k2n(int n);
  static GroupCtx sl_exact(int n);
  static GroupCtx sl_fp(int n, int p);

  /// "su:7", "sp:4", "k:10" (K(2*5)), "slq:4", "slfp:2:7".
  static GroupCtx parse(std::string_view spec);
  std::string str() const;

  int dim() const noexcept;
  bool compact() const noexcept { return family == Family::SU || family == Family::SpC || family == Family::K2n; }
  /// [[0,I],[-I,0]] for SpC, [[0,I],[I,0]] for K2n, empty otherwise.
  CMatrix form() const;
  exact::ExactMatrix exact_form() const;

  friend bool operator==(const GroupCtx&, const GroupCtx&) = default;
};

struct MembershipReport {
  bool member = false;
  double unitarity_defect = 0.0;
  double det_defect = 0.0;
  double form_defect = 0.0;
};

MembershipReport member(const GroupCtx& ctx, const CMatrix& g, double tol = kVerifyTol);
/// Exact test: every defect is 0 or the report says non-member.
MembershipReport member_exact(const GroupCtx& ctx, const exact::ExactMatrix& g);

/// Torus point. SU: n angles with sum = 0 mod 2pi; SpC/K2n: n free angles
/// and the torus element diag(e^{i a_1..a_n}, e^{-i a_1..a_n}).
struct TorusPoint {
  GroupCtx ctx;
  std::vector<double> angles;  // each reduced to [0, 2pi)

  CMatrix matrix() const;
  /// Coordinates in the fixed Lie(T) basis: SU uses E^i - E^{i+1}
  /// (n-1 coordinates), SpC/K2n use E^i - E^{n+i} (n coordinates).
  RVector lie_coords() const;
  static TorusPoint from_lie_coords(const GroupCtx& ctx, const RVector& coords);
};

struct Conjugator {
  GroupCtx ctx;
  CMatrix c;
  bool certified = false;
  double residual = 0.0;
};

struct TorusReduction {
  Conjugator conj;  // conj.c * g * conj.c^{-1} = point.matrix()
  TorusPoint point;
};

TorusReduction torus_reduce(const GroupCtx& ctx, const CMatrix& g, double tol = 1e-9);

/// c in ctx with c a c^{-1} = b, re-verified before returning.
Conjugator conj_in_group(const GroupCtx& ctx, const CMatrix& a, const CMatrix& b, double tol = 1e-8);

/// Element of the compact group: product of exponentials of random Lie
/// algebra elements (not Haar, but spread over the whole group).
CMatrix random_element(const GroupCtx& ctx, std::mt19937_64& rng);

/// 2x2 matrix over F_p.
struct Fp2 {
  std::uint8_t a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const Fp2&, const Fp2&) = default;
};

/// All of SL_2(F_p), p prime <= 31, in lexicographic (a,b,c,d) order.
std::vector<Fp2> finite_group_elements(const GroupCtx& ctx);

template <>
struct MatrixOps<Fp2> {
  int p = 2;
  std::size_t dim(const Fp2&) const { return 2; }
  Fp2 identity(const Fp2&) const { return {}; }
  Fp2 multiply(const Fp2& x, const Fp2& y) const {
    auto m = [this](int v) { return static_cast<std::uint8_t>(v % p); };
    return {m(x.a * y.a + x.b * y.c), m(x.a * y.b + x.b * y.d), m(x.c * y.a + x.d * y.c),
            m(x.c * y.b + x.d * y.d)};
  }
  /// Inverse of a determinant-one matrix.
  Fp2 inverse(const Fp2& x) const {
    auto neg = [this](int v) { return static_cast<std::uint8_t>((p - v) % p); };
    return {x.d, neg(x.b), neg(x.c), x.a};
  }
};

}  // namespace waring
