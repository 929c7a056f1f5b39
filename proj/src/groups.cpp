#include "waring/groups.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace waring {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Eigenvalues closer than this to +-1 are treated as self-paired.
constexpr double kSelfPairedTol = 1e-8;

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int parse_int(std::string_view s, std::string_view whole) {
  if (s.empty()) throw ParseError("missing integer in group spec '" + std::string(whole) + "'", 0);
  int v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw ParseError("invalid integer in group spec '" + std::string(whole) + "'", 0);
    v = v * 10 + (ch - '0');
    if (v > 1'000'000) throw ParseError("integer too large in group spec", 0);
  }
  return v;
}

double wrap_pm_pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a > std::numbers::pi) a -= kTwoPi;
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

double wrap_2pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

double circ_dist(double a, double b) { return std::abs(wrap_pm_pi(a - b)); }

// Antiunitary map v -> Omega^T conj(v); sends lambda-eigenvectors of a group
// element to lambda^{-1}-eigenvectors.
Eigen::VectorXcd sigma(const CMatrix& omega, const Eigen::VectorXcd& v) {
  return omega.transpose() * v.conjugate();
}

}  // namespace

GroupCtx GroupCtx::su(int n) {
  if (n < 2) throw DomainError("SU(n) needs n >= 2");
  return {Family::SU, n, 0};
}
GroupCtx GroupCtx::sp(int n) {
  if (n < 1) throw DomainError("Sp(n) needs n >= 1");
  return {Family::SpC, n, 0};
}
GroupCtx GroupCtx::k2n(int n) {
  if (n < 2) throw DomainError("K(2n) needs n >= 2");
  return {Family::K2n, n, 0};
}
GroupCtx GroupCtx::sl_exact(int n) {
  if (n < 1) throw DomainError("SL_n needs n >= 1");
  return {Family::SLExact, n, 0};
}
GroupCtx GroupCtx::sl_fp(int n, int p) {
  if (n < 1) throw DomainError("SL_n needs n >= 1");
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  return {Family::SLFp, n, p};
}

GroupCtx GroupCtx::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("group spec needs 'family:n'", 0);
  const std::string_view fam = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);
  if (fam == "su") return su(parse_int(rest, spec));
  if (fam == "sp") return sp(parse_int(rest, spec));
  if (fam == "k") {
    const int m = parse_int(rest, spec);
    if (m % 2 != 0) throw ParseError("k:<dim> needs an even dimension", colon + 1);
    return k2n(m / 2);
  }
  if (fam == "slq") return sl_exact(parse_int(rest, spec));
  if (fam == "slfp") {
    const auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw ParseError("expected slfp:n:p", colon + 1);
    return sl_fp(parse_int(rest.substr(0, c2), spec), parse_int(rest.substr(c2 + 1), spec));
  }
  throw ParseError("unknown group family '" + std::string(fam) + "'", 0);
}

std::string GroupCtx::str() const {
  switch (family) {
    case Family::SU: return "su:" + std::to_string(n);
    case Family::SpC: return "sp:" + std::to_string(n);
    case Family::K2n: return "k:" + std::to_string(2 * n);
    case Family::SLExact: return "slq:" + std::to_string(n);
    case Family::SLFp: return "slfp:" + std::to_string(n) + ":" + std::to_string(p);
  }
  return "?";
}

int GroupCtx::dim() const noexcept {
  return (family == Family::SpC || family == Family::K2n) ? 2 * n : n;
}

CMatrix GroupCtx::form() const {
  if (family != Family::SpC && family != Family::K2n) return {};
  CMatrix om = CMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    om(i, n + i) = 1.0;
    om(n + i, i) = family == Family::SpC ? -1.0 : 1.0;
  }
  return om;
}

exact::ExactMatrix GroupCtx::exact_form() const {
  if (family != Family::SpC && family != Family::K2n) return {};
  const auto m = static_cast<std::size_t>(n);
  exact::ExactMatrix om(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    om(i, m + i) = exact::Cyc(1);
    om(m + i, i) = exact::Cyc(family == Family::SpC ? -1 : 1);
  }
  return om;
}

MembershipReport member(const GroupCtx& ctx, const CMatrix& g, double tol) {
  if (g.rows() != ctx.dim() || g.cols() != ctx.dim()) throw DimensionError("matrix dimension does not match group");
  MembershipReport r;
  if (ctx.compact()) r.unitarity_defect = unitarity_defect(g);
  r.det_defect = std::abs(g.determinant() - cplx(1.0, 0.0));
  if (ctx.family == Family::SpC || ctx.family == Family::K2n) {
    const CMatrix om = ctx.form();
    r.form_defect = (g.transpose() * om * g - om).norm();
  }
  r.member = r.unitarity_defect <= tol && r.det_defect <= tol && r.form_defect <= tol;
  return r;
}

MembershipReport member_exact(const GroupCtx& ctx, const exact::ExactMatrix& g) {
  const auto d = static_cast<std::size_t>(ctx.dim());
  if (g.rows() != d || g.cols() != d) throw DimensionError("matrix dimension does not match group");
  auto defect = [](const exact::ExactMatrix& diff) { return diff.is_zero() ? 0.0 : to_cmatrix(diff).norm(); };
  MembershipReport r;
  const auto id = exact::ExactMatrix::identity(d);
  if (ctx.compact()) {
    exact::ExactMatrix adj(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) adj(i, j) = g(j, i).conj();
    r.unitarity_defect = defect(adj * g - id);
  }
  const exact::Cyc det = exact::determinant(g);
  // exact inequality must never read as a zero defect
  r.det_defect = det == exact::Cyc(1) ? 0.0 : std::max(std::abs(det.to_complex() - 1.0), 1e-300);
  if (ctx.family == Family::SpC || ctx.family == Family::K2n) {
    const auto om = ctx.exact_form();
    r.form_defect = defect(g.transpose() * om * g - om);
  }
  r.member = r.unitarity_defect == 0.0 && r.det_defect == 0.0 && r.form_defect == 0.0;
  return r;
}

CMatrix TorusPoint::matrix() const {
  const int d = ctx.dim();
  CMatrix t = CMatrix::Zero(d, d);
  if (ctx.family == Family::SU) {
    for (int i = 0; i < ctx.n; ++i) t(i, i) = std::polar(1.0, angles[static_cast<std::size_t>(i)]);
  } else {
    for (int i = 0; i < ctx.n; ++i) {
      t(i, i) = std::polar(1.0, angles[static_cast<std::size_t>(i)]);
      t(ctx.n + i, ctx.n + i) = std::polar(1.0, -angles[static_cast<std::size_t>(i)]);
    }
  }
  return t;
}

RVector TorusPoint::lie_coords() const {
  const int n = ctx.n;
  if (ctx.family == Family::SU) {
    std::vector<double> a(static_cast<std::size_t>(n));
    double s = 0;
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i)] = wrap_pm_pi(angles[static_cast<std::size_t>(i)]);
      s += a[static_cast<std::size_t>(i)];
    }
    // remove the 2pi multiple, then spread the floating drift
    const double m = std::round(s / kTwoPi);
    a.back() -= m * kTwoPi;
    s -= m * kTwoPi;
    for (auto& x : a) x -= s / n;
    RVector c(n - 1);
    double acc = 0;
    for (int j = 0; j < n - 1; ++j) {
      acc += a[static_cast<std::size_t>(j)];
      c(j) = acc;
    }
    return c;
  }
  RVector c(n);
  for (int i = 0; i < n; ++i) c(i) = wrap_pm_pi(angles[static_cast<std::size_t>(i)]);
  return c;
}

TorusPoint TorusPoint::from_lie_coords(const GroupCtx& ctx, const RVector& coords) {
  TorusPoint t{ctx, {}};
  const int n = ctx.n;
  if (ctx.family == Family::SU) {
    if (coords.size() != n - 1) throw DimensionError("SU torus needs n-1 coordinates");
    double prev = 0;
    for (int j = 0; j < n - 1; ++j) {
      t.angles.push_back(wrap_2pi(coords(j) - prev));
      prev = coords(j);
    }
    t.angles.push_back(wrap_2pi(-prev));
    return t;
  }
  if (coords.size() != n) throw DimensionError("torus needs n coordinates");
  for (int i = 0; i < n; ++i) t.angles.push_back(wrap_2pi(coords(i)));
  return t;
}

namespace {

struct PairedBasis {
  CMatrix w;                  // columns v_1..v_n, u_1..u_n
  std::vector<double> angles;
  std::vector<bool> self_paired;  // slot carries eigenvalue +-1
};

// Orthonormal form-compatible eigenbasis for SpC / K2n elements.
PairedBasis paired_basis(const GroupCtx& ctx, const CMatrix& g, double tol) {
  const int n = ctx.n;
  const int d = 2 * n;
  const CMatrix om = ctx.form();
  const EigDecomp eig = eig_normal(g, std::max(tol, kVerifyTol));

  std::vector<int> upper, lower, plus_one, minus_one;
  for (int i = 0; i < d; ++i) {
    const cplx l = eig.eigenvalues[static_cast<std::size_t>(i)];
    if (std::abs(l - 1.0) < kSelfPairedTol) plus_one.push_back(i);
    else if (std::abs(l + 1.0) < kSelfPairedTol) minus_one.push_back(i);
    else if (l.imag() > 0) upper.push_back(i);
    else lower.push_back(i);
  }
  if (upper.size() != lower.size() || plus_one.size() % 2 != 0 || minus_one.size() % 2 != 0) {
    throw GroupError("eigenvalue pairing failure: unbalanced lambda / lambda^{-1} multiplicities");
  }
  // Greedy pairing check: each upper eigenvalue needs a lower partner at conj(lambda).
  {
    std::vector<bool> used(lower.size(), false);
    for (int i : upper) {
      const cplx target = std::conj(eig.eigenvalues[static_cast<std::size_t>(i)]);
      double best = 1e300;
      std::size_t bj = 0;
      for (std::size_t j = 0; j < lower.size(); ++j) {
        if (used[j]) continue;
        const double gap = std::abs(eig.eigenvalues[static_cast<std::size_t>(lower[j])] - target);
        if (gap < best) {
          best = gap;
          bj = j;
        }
      }
      if (best > 10.0 * std::max(tol, 1e-9)) {
        throw GroupError("eigenvalue pairing failure: gap " + std::to_string(best));
      }
      used[bj] = true;
    }
  }

  PairedBasis pb;
  pb.w = CMatrix::Zero(d, d);
  int slot = 0;
  auto add_pair = [&](const Eigen::VectorXcd& v, double angle, bool self) {
    pb.w.col(slot) = v;
    pb.w.col(n + slot) = sigma(om, v);
    pb.angles.push_back(wrap_2pi(angle));
    pb.self_paired.push_back(self);
    ++slot;
  };

  for (int i : upper) {
    add_pair(eig.eigenvectors.col(i), std::arg(eig.eigenvalues[static_cast<std::size_t>(i)]), false);
  }

  auto self_paired_block = [&](const std::vector<int>& idx, double angle) {
    if (idx.empty()) return;
    const int m = static_cast<int>(idx.size());
    std::vector<Eigen::VectorXcd> chosen;
    if (ctx.family == Family::SpC) {
      // quaternionic structure: sigma^2 = -1; pick v, take sigma(v), repeat on the complement
      std::vector<Eigen::VectorXcd> cand;
      for (int i : idx) cand.push_back(eig.eigenvectors.col(i));
      for (int k = 0; k < m / 2; ++k) {
        double best = -1;
        Eigen::VectorXcd bv;
        for (auto x : cand) {
          for (const auto& c : chosen) x -= c * c.dot(x);
          if (x.norm() > best) {
            best = x.norm();
            bv = x;
          }
        }
        if (best < 0.5) throw GroupError("degenerate self-paired eigenspace");
        bv /= bv.norm();
        const Eigen::VectorXcd bu = sigma(om, bv);
        chosen.push_back(bv);
        chosen.push_back(bu);
        add_pair(bv, angle, true);
      }
      return;
    }
    // K2n: real structure sigma^2 = 1; build an orthonormal basis of the
    // sigma-fixed real form, then pair (w1 +- i w2)/sqrt2.
    std::vector<Eigen::VectorXcd> cand;
    for (int i : idx) {
      const Eigen::VectorXcd e = eig.eigenvectors.col(i);
      const Eigen::VectorXcd s = sigma(om, e);
      cand.push_back(e + s);
      cand.push_back(cplx(0, 1) * (e - s));
    }
    for (int k = 0; k < m; ++k) {
      double best = -1;
      Eigen::VectorXcd bv;
      for (auto x : cand) {
        for (const auto& c : chosen) x -= c * c.dot(x).real();
        if (x.norm() > best) {
          best = x.norm();
          bv = x;
        }
      }
      if (best < 0.5) throw GroupError("degenerate self-paired eigenspace");
      bv = 0.5 * (bv + sigma(om, bv));
      bv /= bv.norm();
      chosen.push_back(bv);
    }
    for (int k = 0; k + 1 < m; k += 2) {
      const Eigen::VectorXcd v =
          (chosen[static_cast<std::size_t>(k)] + cplx(0, 1) * chosen[static_cast<std::size_t>(k) + 1]) / std::sqrt(2.0);
      add_pair(v, angle, true);
    }
  };
  self_paired_block(plus_one, 0.0);
  self_paired_block(minus_one, std::numbers::pi);

  if (slot != n) throw GroupError("eigenvalue pairing failure: slot count mismatch");
  return pb;
}

}  // namespace

TorusReduction torus_reduce(const GroupCtx& ctx, const CMatrix& g, double tol) {
  if (!ctx.compact()) throw DomainError("torus_reduce needs a compact family");
  const MembershipReport mr = member(ctx, g, std::max(tol, kVerifyTol) * 10);
  if (!mr.member) throw GroupError("torus_reduce input is not in " + ctx.str());
  const int n = ctx.n;

  CMatrix w;
  TorusPoint t{ctx, {}};
  if (ctx.family == Family::SU) {
    const EigDecomp eig = eig_normal(g, std::max(tol, kVerifyTol));
    w = eig.eigenvectors;
    const cplx det = w.determinant();
    w *= std::polar(1.0, -std::arg(det) / n);
    for (const cplx& l : eig.eigenvalues) t.angles.push_back(wrap_2pi(std::arg(l)));
    // snap the angle vector so the sum constraint holds exactly
    t = TorusPoint::from_lie_coords(ctx, t.lie_coords());
  } else {
    PairedBasis pb = paired_basis(ctx, g, tol);
    w = pb.w;
    t.angles = pb.angles;
    if (ctx.family == Family::K2n && w.determinant().real() < 0) {
      // swap v_j <-> u_j: det flips; prefer a +-1 slot where the torus point is unchanged
      int j = 0;
      for (int k = 0; k < n; ++k) {
        if (pb.self_paired[static_cast<std::size_t>(k)]) {
          j = k;
          break;
        }
      }
      w.col(j).swap(w.col(n + j));
      t.angles[static_cast<std::size_t>(j)] = wrap_2pi(-t.angles[static_cast<std::size_t>(j)]);
    }
  }

  TorusReduction out{{ctx, w.adjoint(), false, 0.0}, t};
  out.conj.residual = (out.conj.c * g * w - t.matrix()).norm();
  const MembershipReport cm = member(ctx, out.conj.c, std::max(tol, kVerifyTol) * 10);
  if (out.conj.residual > tol || !cm.member) {
    throw GroupError("torus reduction residual " + std::to_string(out.conj.residual) + " above tolerance");
  }
  out.conj.certified = true;
  return out;
}

namespace {

// Weyl-group element w (inside ctx) with w T(a) w^{-1} = T(b).
CMatrix weyl_match(const GroupCtx& ctx, const TorusPoint& a, const TorusPoint& b, double tol) {
  const int n = ctx.n;
  const double match_tol = std::max(10.0 * tol, 1e-9);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  if (ctx.family == Family::SU) {
    CMatrix w = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      double best = 1e300;
      int bj = -1;
      for (int j = 0; j < n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double dd = circ_dist(a.angles[static_cast<std::size_t>(j)], b.angles[static_cast<std::size_t>(i)]);
        if (dd < best) {
          best = dd;
          bj = j;
        }
      }
      if (best > match_tol) throw GroupError("inputs are not conjugate (eigenvalues differ)");
      used[static_cast<std::size_t>(bj)] = true;
      w(i, bj) = 1.0;
    }
    w *= std::polar(1.0, -std::arg(w.determinant()) / n);
    return w;
  }

  const double eps = ctx.family == Family::SpC ? -1.0 : 1.0;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::vector<int> sign(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double bi = b.angles[static_cast<std::size_t>(i)];
    double best = 1e300;
    int bj = -1, bs = 1;
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double aj = a.angles[static_cast<std::size_t>(j)];
      const double dp = circ_dist(aj, bi);
      const double dm = circ_dist(-aj, bi);
      if (dp < best) {
        best = dp;
        bj = j;
        bs = 1;
      }
      if (dm < best) {
        best = dm;
        bj = j;
        bs = -1;
      }
    }
    if (best > match_tol) throw GroupError("inputs are not conjugate (eigenvalues differ)");
    used[static_cast<std::size_t>(bj)] = true;
    perm[static_cast<std::size_t>(i)] = bj;
    sign[static_cast<std::size_t>(i)] = bs;
  }
  if (ctx.family == Family::K2n) {
    int flips = 0;
    for (int s : sign) flips += s < 0 ? 1 : 0;
    if (flips % 2 != 0) {
      int slot = -1;
      for (int i = 0; i < n; ++i) {
        const double bi = b.angles[static_cast<std::size_t>(i)];
        if (circ_dist(bi, 0.0) <= match_tol || circ_dist(bi, std::numbers::pi) <= match_tol) {
          slot = i;
          break;
        }
      }
      if (slot < 0) {
        throw GroupError("K(2n) parity obstruction: odd sign change and no eigenvalue +-1 to absorb it");
      }
      sign[static_cast<std::size_t>(slot)] = -sign[static_cast<std::size_t>(slot)];
    }
  }
  CMatrix w = CMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const int j = perm[static_cast<std::size_t>(i)];
    if (sign[static_cast<std::size_t>(i)] > 0) {
      w(i, j) = 1.0;
      w(n + i, n + j) = 1.0;
    } else {
      w(n + i, j) = 1.0;
      w(i, n + j) = eps;
    }
  }
  return w;
}

}  // namespace

Conjugator conj_in_group(const GroupCtx& ctx, const CMatrix& a, const CMatrix& b, double tol) {
  if (!ctx.compact()) throw DomainError("conj_in_group needs a compact family");
  const int d = ctx.dim();
  if (a.rows() != d || b.rows() != d) throw DimensionError("matrix dimension does not match group");
  Conjugator out{ctx, CMatrix::Identity(d, d), false, 0.0};
  out.residual = (a - b).norm();
  if (out.residual <= tol) {
    out.certified = true;
    return out;
  }
  const double inner = tol * 0.1;
  const TorusReduction ra = torus_reduce(ctx, a, inner);
  const TorusReduction rb = torus_reduce(ctx, b, inner);
  const CMatrix w = weyl_match(ctx, ra.point, rb.point, inner);
  out.c = rb.conj.c.adjoint() * w * ra.conj.c;
  out.residual = (out.c * a * out.c.adjoint() - b).norm();
  if (out.residual > tol || !member(ctx, out.c, tol).member) {
    throw GroupError("conjugator failed verification (residual " + std::to_string(out.residual) + ")");
  }
  out.certified = true;
  return out;
}

CMatrix random_element(const GroupCtx& ctx, std::mt19937_64& rng) {
  if (!ctx.compact()) throw DomainError("random_element needs a compact family");
  const int d = ctx.dim();
  std::normal_distribution<double> normal(0.0, 1.5);
  const CMatrix om = ctx.form();
  auto lie_element = [&] {
    CMatrix z(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) z(i, j) = cplx(normal(rng), normal(rng));
    CMatrix x = 0.5 * (z - z.adjoint());
    if (ctx.family == Family::SU) {
      x -= (x.trace() / static_cast<double>(d)) * CMatrix::Identity(d, d);
    } else {
      x = 0.5 * (x - om.transpose() * x.transpose() * om);
    }
    return x;
  };
  auto expm_skew = [&](const CMatrix& x) {
    const CMatrix h = cplx(0, -1) * x;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
    Eigen::VectorXcd phases(d);
    for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, es.eigenvalues()(i));
    return CMatrix(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
  };
  CMatrix g = expm_skew(lie_element()) * expm_skew(lie_element());
  if (ctx.family == Family::SU) g *= std::polar(1.0, -std::arg(g.determinant()) / d);
  return g;
}

std::vector<Fp2> finite_group_elements(const GroupCtx& ctx) {
  if (ctx.family != Family::SLFp || ctx.n != 2) throw DomainError("finite_group_elements needs slfp:2:p");
  const int p = ctx.p;
  if (p > 31) throw DomainError("p too large for enumeration (max 31)");
  std::vector<Fp2> out;
  out.reserve(static_cast<std::size_t>(p * (p * p - 1)));
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d)
          if (((a * d - b * c) % p + p) % p == 1) {
            out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c),
                           static_cast<std::uint8_t>(d)});
          }
  return out;
}

}  // namespace waring
