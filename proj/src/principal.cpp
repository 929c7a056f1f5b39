#include "waring/principal.hpp"

#include <cmath>

namespace waring {

using exact::Rat;
using exact::RatMatrix;

CMatrix sym_power(int k, const CMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw DimensionError("sym_power needs a 2x2 matrix");
  if (k < 0) throw DomainError("sym_power needs k >= 0");
  const auto e = detail::sym_power_entries<cplx>(k, a(0, 0), a(0, 1), a(1, 0), a(1, 1));
  const auto dim = static_cast<Eigen::Index>(e.size());
  CMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

namespace {

// Nullspace of a rational matrix (rows = equations), via reduced row echelon form.
std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>> a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Rat inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || sgn(a[i][c]) == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

RatMatrix invariant_form(int k) {
  if (k < 0) throw DomainError("invariant_form needs k >= 0");
  const auto dim = static_cast<std::size_t>(k + 1);

  // Torus generator h = diag(2, 1/2): rho(h) = diag(2^{k-2i}); the invariance
  // equation for entry (i, j) reads (2^{2k-2i-2j} - 1) B_ij = 0.
  const RatMatrix h{{Rat(2), Rat(0)}, {Rat(0), Rat(1, 2)}};
  const RatMatrix rh = sym_power(k, h);
  std::vector<std::pair<std::size_t, std::size_t>> support;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (rh(i, i) * rh(j, j) == 1) support.emplace_back(i, j);

  // Remaining unknowns: B on the support. Impose invariance under both unipotents.
  const std::vector<RatMatrix> gens{RatMatrix{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}},
                                    RatMatrix{{Rat(1), Rat(0)}, {Rat(1), Rat(1)}}};
  std::vector<std::vector<Rat>> eqs;
  for (const auto& g : gens) {
    const RatMatrix r = sym_power(k, g);
    // (r^T B r)_{st} - B_{st} = sum_{(i,j)} r_{is} B_ij r_{jt} - B_st
    for (std::size_t s = 0; s < dim; ++s) {
      for (std::size_t t = 0; t < dim; ++t) {
        std::vector<Rat> row(support.size());
        bool nonzero = false;
        for (std::size_t u = 0; u < support.size(); ++u) {
          const auto [i, j] = support[u];
          row[u] = r(i, s) * r(j, t);
          if (i == s && j == t) row[u] -= 1;
          nonzero = nonzero || sgn(row[u]) != 0;
        }
        if (nonzero) eqs.push_back(std::move(row));
      }
    }
  }
  const auto ns = nullspace(std::move(eqs), support.size());
  if (ns.size() != 1) throw DomainError("invariant form space is not one-dimensional");
  RatMatrix b(dim, dim);
  for (std::size_t u = 0; u < support.size(); ++u) b(support[u].first, support[u].second) = ns[0][u];
  if (sgn(b(0, dim - 1)) == 0) throw DomainError("invariant form vanishes at (0, k)");
  const Rat norm = b(0, dim - 1);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) b(i, j) /= norm;
  return b;
}

std::vector<int> principal_weights(Family family, int n) {
  std::vector<int> w;
  switch (family) {
    case Family::SU:
      for (int j = 0; j < n; ++j) w.push_back(n - 1 - 2 * j);
      break;
    case Family::SpC:
      for (int j = 0; j < n; ++j) w.push_back(2 * n - 1 - 2 * j);
      for (int j = 0; j < n; ++j) w.push_back(-(2 * n - 1 - 2 * j));
      break;
    case Family::K2n:
      for (int j = 0; j < n; ++j) w.push_back(2 * n - 2 - 2 * j);
      for (int j = 0; j < n; ++j) w.push_back(-(2 * n - 2 - 2 * j));
      break;
    default:
      throw DomainError("principal embedding needs a compact family");
  }
  return w;
}

PrincipalEmbed build_embedding(Family family, int n) {
  PrincipalEmbed e;
  e.family = family;
  e.n = n;
  switch (family) {
    case Family::SU:
      if (n < 2) throw DomainError("SU principal embedding needs n >= 2");
      e.sym_degree = n - 1;
      break;
    case Family::SpC:
      if (n < 1) throw DomainError("Sp principal embedding needs n >= 1");
      e.sym_degree = 2 * n - 1;
      break;
    case Family::K2n:
      if (n < 2) throw DomainError("K principal embedding needs n >= 2");
      e.sym_degree = 2 * n - 2;
      e.trivial_summand = true;
      break;
    default:
      throw DomainError("principal embedding needs a compact family");
  }
  const int k = e.sym_degree;
  e.weights = principal_weights(family, n);
  e.form = invariant_form(k);
  for (int j = 0; j <= k; ++j) e.scale.push_back(std::sqrt(static_cast<double>(detail::binomial(k, j))));

  const int d = e.ctx().dim();
  e.basis_change = CMatrix::Zero(d, d);
  if (family == Family::SU) {
    e.basis_change = CMatrix::Identity(d, d);
    return e;
  }

  // Form in the orthonormal basis f_j = sqrt(binom(k, j)) x^{k-j} y^j.
  auto bf = [&](int i, int j) {
    return e.form(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d() *
           e.scale[static_cast<std::size_t>(i)] * e.scale[static_cast<std::size_t>(j)];
  };
  const double unit = std::abs(bf(0, k));
  const int pairs = family == Family::SpC ? n : n - 1;
  for (int j = 0; j < pairs; ++j) {
    const double v = bf(j, k - j);
    if (std::abs(std::abs(v) - unit) > 1e-9 * unit) throw DomainError("form congruence failure");
    // f_j -> e_j, f_{k-j} -> sign * e_{n+j} so that Omega(e_j, sign e_{n+j}) = B_f(j, k-j) / unit
    e.basis_change(j, j) = 1.0;
    e.basis_change(n + j, k - j) = v > 0 ? 1.0 : -1.0;
  }
  if (family == Family::K2n) {
    // weight-0 vector f_{n-1} and the trivial summand share slots n-1 and 2n-1
    const int mid = n - 1;
    const int triv = k + 1;
    const double eps = bf(mid, mid);
    if (std::abs(std::abs(eps) - unit) > 1e-9 * unit) throw DomainError("form congruence failure");
    const double r = 1.0 / std::sqrt(2.0);
    const cplx first = eps > 0 ? cplx(r, 0) : cplx(0, r);
    e.basis_change(n - 1, mid) = first;
    e.basis_change(2 * n - 1, mid) = first;
    e.basis_change(n - 1, triv) = cplx(0, r);
    e.basis_change(2 * n - 1, triv) = cplx(0, -r);
  }

  // Q^T Omega Q must reproduce the extended form up to the common scale.
  const CMatrix om = e.ctx().form();
  CMatrix bext = CMatrix::Zero(d, d);
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) bext(i, j) = bf(i, j) / unit;
  if (e.trivial_summand) bext(k + 1, k + 1) = 1.0;
  if ((e.basis_change.transpose() * om * e.basis_change - bext).norm() > 1e-9) {
    throw DomainError("form congruence failure");
  }
  return e;
}

GroupCtx PrincipalEmbed::ctx() const {
  switch (family) {
    case Family::SU: return GroupCtx::su(n);
    case Family::SpC: return GroupCtx::sp(n);
    case Family::K2n: return GroupCtx::k2n(n);
    default: throw DomainError("principal embedding needs a compact family");
  }
}

CMatrix PrincipalEmbed::operator()(const CMatrix& a) const {
  const CMatrix rho = sym_power(sym_degree, a);
  const Eigen::Index k1 = rho.rows();
  const Eigen::Index d = trivial_summand ? k1 + 1 : k1;
  CMatrix ext = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < k1; ++i)
    for (Eigen::Index j = 0; j < k1; ++j)
      ext(i, j) = rho(i, j) * scale[static_cast<std::size_t>(j)] / scale[static_cast<std::size_t>(i)];
  if (trivial_summand) ext(k1, k1) = 1.0;
  CMatrix out = basis_change * ext * basis_change.adjoint();
  if (family == Family::SU) {
    // principal-branch det^{1/n} normalization; a no-op for exact SU(2) input
    out *= std::exp(-std::log(out.determinant()) / static_cast<double>(n));
  }
  return out;
}

exact::ExactMatrix PrincipalEmbed::torus_image_exact(int m) const {
  const auto d = weights.size();
  exact::ExactMatrix t(d, d);
  for (std::size_t i = 0; i < d; ++i) t(i, i) = exact::Cyc::zeta(m, weights[i]);
  return t;
}

}  // namespace waring
