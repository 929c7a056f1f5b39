#pragma once

// Principal SU(2) embeddings into SU(n), Sp(n) and K(2n), realized through
// symmetric powers of the standard representation.

#include <vector>

#include "waring/exactnum.hpp"
#include "waring/groups.hpp"
#include "waring/matnum.hpp"

namespace waring {

namespace detail {

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Entries of Sym^k(A) in the monomial basis x^{k-j} y^j, where A sends
// x -> a x + c y and y -> b x + d y (columns of A).
template <class S>
std::vector<std::vector<S>> sym_power_entries(int k, const S& a, const S& b, const S& c, const S& d) {
  const auto dim = static_cast<std::size_t>(k + 1);
  // pow_lin[m][i] = coefficient of x^{m-i} y^i in (p x + q y)^m
  auto powers = [k](const S& p, const S& q) {
    std::vector<std::vector<S>> out(static_cast<std::size_t>(k + 1));
    out[0] = {S(1)};
    for (int m = 1; m <= k; ++m) {
      const auto& prev = out[static_cast<std::size_t>(m - 1)];
      std::vector<S> cur(static_cast<std::size_t>(m + 1), S(0));
      for (std::size_t i = 0; i < prev.size(); ++i) {
        cur[i] += prev[i] * p;
        cur[i + 1] += prev[i] * q;
      }
      out[static_cast<std::size_t>(m)] = std::move(cur);
    }
    return out;
  };
  const auto px = powers(a, c);
  const auto py = powers(b, d);
  std::vector<std::vector<S>> m(dim, std::vector<S>(dim, S(0)));
  for (int j = 0; j <= k; ++j) {
    const auto& u = px[static_cast<std::size_t>(k - j)];
    const auto& v = py[static_cast<std::size_t>(j)];
    for (std::size_t s = 0; s < u.size(); ++s)
      for (std::size_t t = 0; t < v.size(); ++t) m[s + t][static_cast<std::size_t>(j)] += u[s] * v[t];
  }
  return m;
}

}  // namespace detail

/// Sym^k(A) on binary forms of degree k, monomial basis x^{k-j} y^j.
template <class T>
exact::Mat<T> sym_power(int k, const exact::Mat<T>& a) {
  if (a.rows() != 2 || a.cols() != 2) throw DimensionError("sym_power needs a 2x2 matrix");
  if (k < 0) throw DomainError("sym_power needs k >= 0");
  const auto e = detail::sym_power_entries<T>(k, a(0, 0), a(0, 1), a(1, 0), a(1, 1));
  exact::Mat<T> m(e.size(), e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j) m(i, j) = e[i][j];
  return m;
}

CMatrix sym_power(int k, const CMatrix& a);

/// The SL_2-invariant bilinear form on Sym^k: B with rho(g)^T B rho(g) = B,
/// normalized so B(0, k) = 1. Found by solving the invariance equations for
/// diag(2, 1/2) and the two elementary unipotents.
exact::RatMatrix invariant_form(int k);

struct PrincipalEmbed {
  Family family = Family::SU;
  int n = 2;
  int sym_degree = 1;        // k in Sym^k
  bool trivial_summand = false;  // K2n: Sym^{2n-2} + trivial
  std::vector<int> weights;  // weight of each diagonal slot of the target torus
  exact::RatMatrix form;     // invariant_form(sym_degree)
  CMatrix basis_change;      // Q, unitary
  std::vector<double> scale; // sqrt(binom(k, j)): monomial -> orthonormal basis

  GroupCtx ctx() const;
  /// Image of a 2x2 matrix (SU(2) input gives an element of ctx()).
  CMatrix operator()(const CMatrix& a) const;
  /// Exact image of diag(zeta_m, zeta_m^{-1}): diag(zeta_m^{w}) over the weights.
  exact::ExactMatrix torus_image_exact(int m) const;
};

/// SU: n >= 2, SpC: n >= 1, K2n: n >= 2.
PrincipalEmbed build_embedding(Family family, int n);

/// Expected weight multiset, descending in the first block.
std::vector<int> principal_weights(Family family, int n);

}  // namespace waring
