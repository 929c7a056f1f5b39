#include "waring/search.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <limits>
#include <numeric>

namespace waring {

using Mat2 = Eigen::Matrix2cd;

template <>
struct MatrixOps<Mat2> {
  std::size_t dim(const Mat2&) const { return 2; }
  Mat2 identity(const Mat2&) const { return Mat2::Identity(); }
  Mat2 multiply(const Mat2& a, const Mat2& b) const { return a * b; }
  Mat2 inverse(const Mat2& a) const { return a.adjoint(); }  // SU(2) only
};

using exact::Rat;
using exact::RatMatrix;

namespace {

Mat2 quat_mat(double a, double b, double c, double d) {
  Mat2 m;
  m << cplx(a, b), cplx(c, d), cplx(-c, d), cplx(a, -b);
  return m;
}

Mat2 target_matrix(double phi) {
  Mat2 t = Mat2::Zero();
  t(0, 0) = std::polar(1.0, phi);
  t(1, 1) = std::polar(1.0, -phi);
  return t;
}

// Unit quaternion blocks of a parameter vector as SU(2) matrices.
std::vector<Mat2> params_to_mats(const std::vector<double>& p) {
  std::vector<Mat2> out(p.size() / 4);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double a = p[4 * i], b = p[4 * i + 1], c = p[4 * i + 2], d = p[4 * i + 3];
    const double nrm = std::sqrt(a * a + b * b + c * c + d * d);
    if (nrm < 1e-12) {
      a = 1;
      b = c = d = 0;
    } else {
      a /= nrm;
      b /= nrm;
      c /= nrm;
      d /= nrm;
    }
    out[i] = quat_mat(a, b, c, d);
  }
  return out;
}

Mat2 renormalize(const Mat2& m) {
  const double a = m(0, 0).real(), b = m(0, 0).imag(), c = m(0, 1).real(), d = m(0, 1).imag();
  const double nrm = std::sqrt(a * a + b * b + c * c + d * d);
  return quat_mat(a / nrm, b / nrm, c / nrm, d / nrm);
}

struct Simplex {
  std::vector<double> x;
  double f;
};

// Nelder-Mead with the standard coefficients (1, 2, 1/2, 1/2).
Simplex nelder_mead(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& x0,
                    double step, int max_iter, double ftol) {
  const std::size_t n = x0.size();
  std::vector<Simplex> s;
  s.push_back({x0, f(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    auto x = x0;
    x[i] += step;
    s.push_back({x, f(x)});
  }
  auto by_f = [](const Simplex& a, const Simplex& b) { return a.f < b.f; };
  for (int it = 0; it < max_iter; ++it) {
    std::sort(s.begin(), s.end(), by_f);
    if (s.back().f - s.front().f < ftol && s.front().f < ftol) break;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += s[i].x[j] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + t * (s.back().x[j] - centroid[j]);
      return x;
    };
    const auto xr = along(-1.0);
    const double fr = f(xr);
    if (fr < s.front().f) {
      const auto xe = along(-2.0);
      const double fe = f(xe);
      s.back() = fe < fr ? Simplex{xe, fe} : Simplex{xr, fr};
    } else if (fr < s[n - 1].f) {
      s.back() = {xr, fr};
    } else {
      const bool outside = fr < s.back().f;
      const auto xc = along(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, s.back().f)) {
        s.back() = {xc, fc};
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j) s[i].x[j] = s[0].x[j] + 0.5 * (s[i].x[j] - s[0].x[j]);
          s[i].f = f(s[i].x);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), by_f);
  return s.front();
}

Mat2 exp_su2(double e0, double e1, double e2) {
  const double th = std::sqrt(e0 * e0 + e1 * e1 + e2 * e2);
  Mat2 x;
  x << cplx(0, e0), cplx(e1, e2), cplx(-e1, e2), cplx(0, -e0);
  if (th < 1e-300) return Mat2::Identity();
  return std::cos(th) * Mat2::Identity() + (std::sin(th) / th) * x;
}

Eigen::Matrix<double, 8, 1> residual_vector(const Word& w, const std::vector<Mat2>& a, const Mat2& target) {
  const Mat2 diff = evaluate<Mat2>(w, a) - target;
  Eigen::Matrix<double, 8, 1> r;
  for (int i = 0; i < 4; ++i) {
    r(2 * i) = diff(i / 2, i % 2).real();
    r(2 * i + 1) = diff(i / 2, i % 2).imag();
  }
  return r;
}

// Levenberg-Marquardt in right-multiplied tangent coordinates.
double polish(const Word& w, std::vector<Mat2>& a, const Mat2& target) {
  const auto d = static_cast<Eigen::Index>(a.size());
  auto r = residual_vector(w, a, target);
  double cost = r.squaredNorm();
  double lambda = 1e-6;
  constexpr double h = 1e-7;
  for (int it = 0; it < 100 && cost > 1e-30; ++it) {
    Eigen::MatrixXd jac(8, 3 * d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (int k = 0; k < 3; ++k) {
        double e[3] = {0, 0, 0};
        e[k] = h;
        auto plus = a;
        auto minus = a;
        plus[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] * exp_su2(e[0], e[1], e[2]);
        minus[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] * exp_su2(-e[0], -e[1], -e[2]);
        jac.col(3 * i + k) = (residual_vector(w, plus, target) - residual_vector(w, minus, target)) / (2 * h);
      }
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      Eigen::MatrixXd sys = jtj;
      sys.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd delta = sys.ldlt().solve(-jtr);
      auto trial = a;
      for (Eigen::Index i = 0; i < d; ++i) {
        trial[static_cast<std::size_t>(i)] =
            renormalize(a[static_cast<std::size_t>(i)] * exp_su2(delta(3 * i), delta(3 * i + 1), delta(3 * i + 2)));
      }
      const auto rt = residual_vector(w, trial, target);
      if (rt.squaredNorm() < cost) {
        a = std::move(trial);
        r = rt;
        const double prev = cost;
        cost = rt.squaredNorm();
        lambda = std::max(lambda / 10, 1e-12);
        improved = true;
        if (prev - cost < 1e-32) return std::sqrt(cost);
      } else {
        lambda *= 10;
      }
    }
    if (!improved) break;
  }
  return std::sqrt(cost);
}

void fill_result(PreimageResult& out, const std::vector<Mat2>& mats, double phi) {
  out.witnesses.clear();
  out.quaternions.clear();
  for (const auto& m : mats) {
    CMatrix c = m;
    out.witnesses.push_back(c);
    out.quaternions.push_back(su2_to_quaternion(c));
  }
  // independent re-evaluation on the dynamic-size backend
  out.residual = (evaluate<CMatrix>(out.word, out.witnesses) - CMatrix(target_matrix(phi))).norm();
}

}  // namespace

CMatrix quaternion_to_su2(const Quaternion& q) {
  return CMatrix(quat_mat(q[0], q[1], q[2], q[3]));
}

Quaternion su2_to_quaternion(const CMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("su2_to_quaternion needs a 2x2 matrix");
  return {m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag()};
}

PreimageResult su2_preimage(const Word& w, double phi, const SearchBudget& budget) {
  if (w.empty()) throw DomainError("preimage search needs a non-trivial word");
  if (budget.restarts < 1 || budget.iterations < 1 || !(budget.tol > 0)) {
    throw DomainError("preimage search budget must be positive");
  }
  PreimageResult out;
  out.word = w;
  out.target_angle = phi;
  const std::size_t d = w.arity();
  const Mat2 target = target_matrix(phi);

  if (w.syllables().size() == 1) {
    // x_g^e: take the e-th root of the torus target
    const Syllable s = w.syllables()[0];
    std::vector<Mat2> mats(d, Mat2::Identity());
    mats[s.generator - 1] = target_matrix(phi / static_cast<double>(s.exponent));
    fill_result(out, mats, phi);
    out.analytic = true;
    out.found = out.residual <= budget.tol;
    return out;
  }

  auto objective = [&](const std::vector<double>& p) {
    return (evaluate<Mat2>(w, params_to_mats(p)) - target).squaredNorm();
  };
  double best = std::numeric_limits<double>::infinity();
  std::vector<Mat2> best_mats;
  for (int r = 0; r < budget.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(budget.seed), static_cast<std::uint32_t>(budget.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::vector<double> x0(4 * d);
    for (auto& v : x0) v = normal(rng);
    const Simplex s = nelder_mead(objective, x0, 0.3, budget.iterations, 1e-20);
    std::vector<Mat2> mats = params_to_mats(s.x);
    const double res = polish(w, mats, target);
    out.restarts_used = r + 1;
    if (res < best) {
      best = res;
      best_mats = mats;
    }
    if (res <= budget.tol * 0.5) break;
  }
  fill_result(out, best_mats, phi);
  out.found = out.residual <= budget.tol;
  return out;
}

PreimageResult conjugate_preimage(const PreimageResult& r) {
  PreimageResult out = r;
  out.target_angle = -r.target_angle;
  for (auto& m : out.witnesses) m = m.conjugate().eval();
  out.quaternions.clear();
  for (const auto& m : out.witnesses) out.quaternions.push_back(su2_to_quaternion(m));
  out.residual = (evaluate<CMatrix>(out.word, out.witnesses) - CMatrix(target_matrix(out.target_angle))).norm();
  return out;
}

std::optional<int> least_rank_with_preimage(const Word& w, const std::function<double(int)>& angle_of_rank,
                                            int n_from, int n_to, const SearchBudget& budget) {
  for (int n = n_from; n <= n_to; ++n) {
    if (su2_preimage(w, angle_of_rank(n), budget).found) return n;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

long rat_height(const Rat& r) {
  mpz_class num = abs(r.get_num());
  const mpz_class& den = r.get_den();
  return num > den ? num.get_si() : den.get_si();
}

std::vector<Rat> rationals_by_height(int h) {
  if (h < 1) throw DomainError("height bound must be >= 1");
  std::vector<Rat> out;
  for (long k = 1; k <= h; ++k) {
    std::vector<Rat> level;
    if (k == 1) level = {Rat(-1), Rat(0), Rat(1)};
    for (long q = 1; q <= k && k > 1; ++q) {
      // p/q with max(|p|, q) = k
      for (long p = -k; p <= k; ++p) {
        if (std::max(std::abs(p), q) != k || std::gcd(p, q) != 1) continue;
        level.emplace_back(p, q);
      }
    }
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::optional<Rat> rational_sqrt(const Rat& r) {
  if (sgn(r) < 0) return std::nullopt;
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  return Rat(a, b);
}

namespace {

// Off-diagonal entries advance this many times slower than the diagonal.
constexpr std::size_t kOffDiagonalWeight = 4;

// Bounded-height SL_2(Q) matrices grouped into shells. A matrix
// [[a, b], [c, (1 + bc)/a]] has level max(i, W j, W k) where a = rats[i] and
// b, c = small[j], small[k] (small lists 0 first); the a = 0 matrices
// [[0, b], [-1/b, d]] have level max(W j, l) with d = rats[l].
class MatrixStream {
 public:
  MatrixStream(int bound) : bound_(bound), rats_(rationals_by_height(bound)) {
    small_.push_back(Rat(0));
    for (const auto& r : rats_)
      if (sgn(r) != 0) small_.push_back(r);
  }

  std::size_t levels() const { return kOffDiagonalWeight * (rats_.size() - 1) + 1; }

  void append_level(std::size_t level, std::vector<RatMatrix>& out) const {
    const std::size_t n = rats_.size();
    const std::size_t w = kOffDiagonalWeight;
    const std::size_t off_max = std::min(level / w, n - 1);
    const bool off_on_shell = level % w == 0 && level / w <= n - 1;
    // a != 0
    for (std::size_t i = 0; i <= std::min(level, n - 1); ++i) {
      if (sgn(rats_[i]) == 0) continue;
      for (std::size_t j = 0; j <= off_max; ++j) {
        for (std::size_t k = 0; k <= off_max; ++k) {
          const bool on_shell = i == level || (off_on_shell && (j == off_max || k == off_max));
          if (!on_shell) continue;
          const Rat d = (1 + small_[j] * small_[k]) / rats_[i];
          if (rat_height(d) > bound_) continue;
          out.push_back(RatMatrix{{rats_[i], small_[j]}, {small_[k], d}});
        }
      }
    }
    // a = 0
    for (std::size_t j = 1; j <= off_max; ++j) {
      for (std::size_t l = 0; l <= std::min(level, n - 1); ++l) {
        const bool on_shell = l == level || (off_on_shell && j == off_max);
        if (!on_shell) continue;
        out.push_back(RatMatrix{{Rat(0), small_[j]}, {Rat(-1) / small_[j], rats_[l]}});
      }
    }
  }

 private:
  int bound_;
  std::vector<Rat> rats_;
  std::vector<Rat> small_;
};

std::string key(const Rat& r) { return r.get_str(); }

std::string key(const RatMatrix& m) {
  return m(0, 0).get_str() + '|' + m(0, 1).get_str() + '|' + m(1, 0).get_str() + '|' + m(1, 1).get_str();
}

std::array<cplx, 2> eigen2(const RatMatrix& m) {
  const double t = Rat(m(0, 0) + m(1, 1)).get_d();
  const cplx disc = std::sqrt(cplx(t * t - 4.0, 0.0));
  return {(t + disc) / 2.0, (t - disc) / 2.0};
}

}  // namespace

std::vector<RatMatrix> sl2q_matrices(int bound) {
  const MatrixStream stream(bound);
  std::vector<RatMatrix> out;
  for (std::size_t level = 0; level < stream.levels(); ++level) stream.append_level(level, out);
  return out;
}

std::optional<DiscriminantSample> discriminant_sample(const Word& w, const std::vector<RatMatrix>& args) {
  if (w.empty()) throw DomainError("discriminant sampling needs a non-trivial word");
  const RatMatrix m = evaluate<RatMatrix>(w, args);
  DiscriminantSample s;
  s.word = w;
  s.args = args;
  s.trace = m(0, 0) + m(1, 1);
  s.delta = s.trace * s.trace - 4;
  if (sgn(s.delta) == 0) return std::nullopt;
  const auto root = rational_sqrt(s.delta);
  if (!root) return std::nullopt;
  s.root = *root;
  return s;
}

namespace {

// Fixed-size 2x2 rational matrix of determinant one.
struct Q2 {
  Rat a, b, c, d;
};

struct Q2Ops {
  std::size_t dim(const Q2&) const { return 2; }
  Q2 identity(const Q2&) const { return {Rat(1), Rat(0), Rat(0), Rat(1)}; }
  Q2 multiply(const Q2& x, const Q2& y) const {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  Q2 inverse(const Q2& x) const { return {x.d, -x.b, -x.c, x.a}; }
};

Q2 to_q2(const RatMatrix& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  const std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) h = h * 0x100000001b3ULL ^ static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i));
  return h;
}

struct TraceKey {
  std::array<Rat, 3> t;
  friend bool operator==(const TraceKey& x, const TraceKey& y) { return x.t == y.t; }
};

struct TraceKeyHash {
  std::size_t operator()(const TraceKey& k) const {
    std::size_t h = 0;
    for (const auto& r : k.t) h = (h * 31 + hash_mpz(r.get_num())) * 31 + hash_mpz(r.get_den());
    return h;
  }
};

// Traces of words in at most two SL_2 matrices are polynomials in
// tr A, tr B and tr AB, so tuples sharing these values share every trace.
std::optional<TraceKey> trace_invariants(const std::vector<const Q2*>& args) {
  if (args.size() == 1) return TraceKey{{Rat(args[0]->a + args[0]->d), Rat(0), Rat(0)}};
  if (args.size() == 2) {
    const Q2& x = *args[0];
    const Q2& y = *args[1];
    return TraceKey{{Rat(x.a + x.d), Rat(y.a + y.d), Rat(x.a * y.a + x.b * y.c + x.c * y.b + x.d * y.d)}};
  }
  return std::nullopt;
}

}  // namespace

DiscriminantReport sample_discriminant_squares(const Word& w, std::size_t count, int height) {
  if (w.empty()) throw DomainError("discriminant sampling needs a non-trivial word");
  DiscriminantReport rep;
  rep.word = w;
  rep.requested = count;
  rep.height = height;
  if (count == 0) {
    rep.complete = true;
    return rep;
  }
  const MatrixStream stream(height);
  const std::size_t d = w.arity();
  std::vector<RatMatrix> mats;
  std::vector<Q2> fast;
  std::set<Rat> traces;
  std::unordered_set<TraceKey, TraceKeyHash> seen_invariants;
  Q2Ops ops;
  for (std::size_t level = 0; level < stream.levels(); ++level) {
    const std::size_t old = mats.size();
    stream.append_level(level, mats);
    if (mats.size() == old) continue;
    for (std::size_t i = old; i < mats.size(); ++i) fast.push_back(to_q2(mats[i]));
    // tuples over [0, size)^d using at least one new matrix
    std::vector<std::size_t> idx(d, 0);
    std::vector<Q2> args(d);
    std::vector<const Q2*> ptrs(d);
    for (;;) {
      bool fresh = false;
      for (auto i : idx) fresh = fresh || i >= old;
      if (fresh) {
        for (std::size_t i = 0; i < d; ++i) ptrs[i] = &fast[idx[i]];
        const auto inv = trace_invariants(ptrs);
        if (!inv || seen_invariants.insert(std::move(*inv)).second) {
          for (std::size_t i = 0; i < d; ++i) args[i] = fast[idx[i]];
          ++rep.tuples_scanned;
          const Q2 m = evaluate<Q2, Q2Ops>(w, args, ops);
          Rat t = m.a + m.d;
          if (traces.count(t) == 0) {
            Rat delta = t * t - 4;
            const auto root = sgn(delta) != 0 ? rational_sqrt(delta) : std::nullopt;
            if (root) {
              traces.insert(t);
              DiscriminantSample smp;
              smp.word = w;
              for (std::size_t i = 0; i < d; ++i) smp.args.push_back(mats[idx[i]]);
              smp.trace = std::move(t);
              smp.delta = std::move(delta);
              smp.root = *root;
              rep.samples.push_back(std::move(smp));
              if (rep.samples.size() == count) {
                rep.complete = true;
                return rep;
              }
            }
          }
        }
      }
      std::size_t pos = 0;
      while (pos < d && ++idx[pos] == mats.size()) idx[pos++] = 0;
      if (pos == d) break;
    }
  }
  return rep;
}

Prop41Report prop41_search(int bound, std::size_t near_miss_count) {
  Prop41Report rep;
  rep.bound = bound;
  rep.zeta8_degree = exact::field_degree_over_Q(8);
  const auto mats = sl2q_matrices(bound);
  rep.matrices = mats.size();
  rep.pairs = rep.matrices * rep.matrices;

  std::vector<RatMatrix> fourth(mats.size());
  std::vector<Rat> tr4(mats.size());
  std::unordered_map<std::string, std::size_t> by_power;  // A^4 -> first A
  std::unordered_map<std::string, std::uint64_t> trace_count;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const RatMatrix sq = mats[i] * mats[i];
    fourth[i] = sq * sq;
    tr4[i] = fourth[i](0, 0) + fourth[i](1, 1);
    by_power.emplace(key(fourth[i]), i);
    ++trace_count[key(tr4[i])];
  }

  // A^4 B^4 = -I  <=>  A^4 = -(B^4)^{-1}
  for (std::size_t j = 0; j < mats.size(); ++j) {
    const RatMatrix& b4 = fourth[j];
    const RatMatrix want{{-b4(1, 1), b4(0, 1)}, {b4(1, 0), -b4(0, 0)}};
    auto it = by_power.find(key(want));
    if (it != by_power.end() && rep.solutions.size() < 16) rep.solutions.emplace_back(mats[it->second], mats[j]);
    auto tc = trace_count.find(key(Rat(-tr4[j])));
    if (tc != trace_count.end()) rep.trace_coincidences += tc->second;
  }

  // Near misses: pairs minimizing |tr(A^4) + tr(B^4)|.
  std::map<Rat, std::size_t> sorted;  // distinct tr(A^4) -> representative
  for (std::size_t i = 0; i < mats.size(); ++i) sorted.emplace(tr4[i], i);
  struct Cand {
    Rat gap;
    std::size_t a, b;
  };
  std::vector<Cand> cands;
  std::set<std::pair<Rat, Rat>> seen;
  for (std::size_t j = 0; j < mats.size(); ++j) {
    const Rat target = -tr4[j];
    auto it = sorted.lower_bound(target);
    for (int side = 0; side < 2; ++side) {
      auto cur = it;
      if (side == 1) {
        if (cur == sorted.begin()) continue;
        --cur;
      } else if (cur == sorted.end()) {
        continue;
      }
      const Rat gap = cur->first + tr4[j];
      if (sgn(gap) == 0) continue;
      const std::pair<Rat, Rat> k = std::minmax(cur->first, tr4[j]);
      if (!seen.insert(k).second) continue;
      cands.push_back({gap, cur->second, j});
    }
  }
  const std::size_t keep = std::min(near_miss_count, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep), cands.end(),
                    [](const Cand& x, const Cand& y) { return abs(x.gap) < abs(y.gap); });
  for (std::size_t i = 0; i < keep; ++i) {
    Prop41NearMiss nm;
    nm.a = mats[cands[i].a];
    nm.b = mats[cands[i].b];
    nm.trace_gap = cands[i].gap;
    double defect = std::numeric_limits<double>::infinity();
    for (const cplx& l : eigen2(nm.a))
      for (const cplx& m : eigen2(nm.b)) defect = std::min(defect, std::abs(std::pow(l / m, 4) + 1.0));
    nm.eigen_ratio_defect = defect;
    rep.near_misses.push_back(std::move(nm));
  }
  return rep;
}

}  // namespace waring
