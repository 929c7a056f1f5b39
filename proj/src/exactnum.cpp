#include "waring/exactnum.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

namespace waring::exact {

namespace {

// Exact division of integer polynomials by a monic divisor.
IntPoly poly_div_monic(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  IntPoly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw DomainError("inexact cyclotomic division");
  }
  return q;
}

IntPoly compute_cyclotomic(int k) {
  IntPoly num(static_cast<std::size_t>(k) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(k)] = 1;
  IntPoly den{1};
  for (int d = 1; d < k; ++d) {
    if (k % d == 0) den = poly_mul(den, cyclotomic_poly(d));
  }
  return poly_div_monic(std::move(num), den);
}

struct CycloTable {
  int k = 1;
  int phi = 1;
  IntPoly poly;
  // powers[m] = t^m mod Phi_k, m in [0, k)
  std::vector<std::vector<long long>> powers;
};

CycloTable build_table(int k) {
  CycloTable t;
  t.k = k;
  t.poly = compute_cyclotomic(k);
  t.phi = static_cast<int>(t.poly.size()) - 1;
  const auto phi = static_cast<std::size_t>(t.phi);
  std::vector<long long> cur(phi, 0);
  cur[0] = 1;
  t.powers.reserve(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) {
    t.powers.push_back(cur);
    // multiply by t and reduce the overflow coefficient with t^phi = -sum Phi_i t^i
    const long long top = cur[phi - 1];
    for (std::size_t i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t i = 0; i < phi; ++i) cur[i] -= top * t.poly[i];
    }
  }
  return t;
}

const CycloTable& table(int k) {
  if (k < 1 || k > kMaxConductor) {
    throw DomainError("conductor " + std::to_string(k) + " outside [1, " +
                      std::to_string(kMaxConductor) + "]");
  }
  static std::array<std::once_flag, kMaxConductor + 1> flags;
  static std::array<std::unique_ptr<CycloTable>, kMaxConductor + 1> tables;
  const auto idx = static_cast<std::size_t>(k);
  std::call_once(flags[idx], [&] { tables[idx] = std::make_unique<CycloTable>(build_table(k)); });
  return *tables[idx];
}

// Reduces bucket coefficients (index = power of zeta_k, taken mod k) to the power basis.
std::vector<Rat> reduce_buckets(const CycloTable& t, const std::vector<Rat>& buckets) {
  const auto phi = static_cast<std::size_t>(t.phi);
  std::vector<Rat> out(phi);
  for (std::size_t m = 0; m < buckets.size(); ++m) {
    if (sgn(buckets[m]) == 0) continue;
    if (m < phi) {
      out[m] += buckets[m];
      continue;
    }
    const auto& p = t.powers[m];
    for (std::size_t i = 0; i < phi; ++i) {
      if (p[i] != 0) out[i] += buckets[m] * static_cast<long>(p[i]);
    }
  }
  return out;
}

int checked_lcm(int a, int b) {
  const long long l = std::lcm(static_cast<long long>(a), static_cast<long long>(b));
  if (l > kMaxConductor) {
    throw DomainError("conductor lcm(" + std::to_string(a) + "," + std::to_string(b) +
                      ") exceeds cap " + std::to_string(kMaxConductor));
  }
  return static_cast<int>(l);
}

}  // namespace

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

IntPoly cyclotomic_poly(int k) {
  if (k < 1) throw DomainError("cyclotomic_poly needs k >= 1");
  if (k <= kMaxConductor) return table(k).poly;
  return compute_cyclotomic(k);
}

int field_degree_over_Q(int k) {
  if (k < 1) throw DomainError("field degree needs k >= 1");
  int n = k;
  int phi = k;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      phi -= phi / p;
    }
  }
  if (n > 1) phi -= phi / n;
  return phi;
}

Cyc Cyc::zeta(int k, long long power) {
  const CycloTable& t = table(k);
  long long m = power % k;
  if (m < 0) m += k;
  std::vector<Rat> c(static_cast<std::size_t>(t.phi));
  const auto& p = t.powers[static_cast<std::size_t>(m)];
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(static_cast<long>(p[i]));
  return Cyc(k, std::move(c));
}

Cyc Cyc::from_coeffs(int k, const std::vector<Rat>& coeffs) {
  const CycloTable& t = table(k);
  std::vector<Rat> buckets(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < coeffs.size(); ++i) buckets[i % static_cast<std::size_t>(k)] += coeffs[i];
  return Cyc(k, reduce_buckets(t, buckets));
}

Cyc Cyc::promoted(int k2) const {
  if (k2 == k_) return *this;
  if (k2 % k_ != 0) throw DomainError("cannot promote conductor " + std::to_string(k_) + " to " + std::to_string(k2));
  const CycloTable& t = table(k2);
  const auto step = static_cast<std::size_t>(k2 / k_);
  std::vector<Rat> buckets(static_cast<std::size_t>(k2));
  for (std::size_t i = 0; i < c_.size(); ++i) buckets[(i * step) % static_cast<std::size_t>(k2)] = c_[i];
  return Cyc(k2, reduce_buckets(t, buckets));
}

bool Cyc::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

Rat Cyc::rational_value() const {
  if (!is_rational()) throw DomainError("cyclotomic element is not rational");
  return c_[0];
}

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyc& Cyc::operator+=(const Cyc& o) {
  if (o.k_ != k_) {
    const int l = checked_lcm(k_, o.k_);
    *this = promoted(l);
    return *this += o.promoted(l);
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) { return *this += -o; }

Cyc& Cyc::operator*=(const Cyc& o) {
  if (o.k_ != k_) {
    const int l = checked_lcm(k_, o.k_);
    *this = promoted(l);
    return *this *= o.promoted(l);
  }
  if (k_ == 1 || k_ == 2) {
    c_[0] *= o.c_[0];
    return *this;
  }
  const CycloTable& t = table(k_);
  const auto k = static_cast<std::size_t>(k_);
  std::vector<Rat> buckets(k);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (sgn(o.c_[j]) == 0) continue;
      buckets[(i + j) % k] += c_[i] * o.c_[j];
    }
  }
  c_ = reduce_buckets(t, buckets);
  return *this;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  if (c_.size() == 1) return Cyc(k_, {1 / c_[0]});
  // Solve (multiplication-by-this) x = 1 in the power basis.
  const std::size_t n = c_.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
  Cyc basis = Cyc::zeta(k_, 0);
  const Cyc z = Cyc::zeta(k_, 1);
  for (std::size_t j = 0; j < n; ++j) {
    const Cyc col = *this * basis;
    for (std::size_t i = 0; i < n; ++i) a[i][j] = col.c_[i];
    basis *= z;
  }
  a[0][n] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) throw DomainError("singular multiplication matrix");
    std::swap(a[p], a[c]);
    const Rat inv = 1 / a[c][c];
    for (std::size_t j = c; j <= n; ++j) a[c][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a[i][c]) == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return Cyc(k_, std::move(x));
}

Cyc& Cyc::operator/=(const Cyc& o) { return *this *= o.inverse(); }

Cyc Cyc::pow(long long e) const {
  Cyc base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? 0ULL - static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
  Cyc acc(1);
  while (n > 0) {
    if (n & 1ULL) acc *= base;
    n >>= 1ULL;
    if (n > 0) base *= base;
  }
  return acc;
}

Cyc Cyc::conj() const {
  if (c_.size() == 1) return *this;
  std::vector<Rat> buckets(static_cast<std::size_t>(k_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    buckets[(static_cast<std::size_t>(k_) - i) % static_cast<std::size_t>(k_)] = c_[i];
  }
  return Cyc(k_, reduce_buckets(table(k_), buckets));
}

bool operator==(const Cyc& a, const Cyc& b) {
  if (a.k_ == b.k_) return a.c_ == b.c_;
  if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
  const int l = checked_lcm(a.k_, b.k_);
  return a.promoted(l).c_ == b.promoted(l).c_;
}

std::complex<double> Cyc::to_complex() const {
  std::complex<double> z = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k_);
    z += c_[i].get_d() * std::polar(1.0, ang);
  }
  return z;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat parse_rat(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (!s.empty() && s[0] == '+') s = s.substr(1);
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("invalid rational '" + std::string(text) + "'", 0);
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
  r.canonicalize();
  return r;
}

std::string Cyc::str() const {
  if (is_rational()) return rat_str(c_[0]);
  std::string out = "zeta:" + std::to_string(k_) + ":[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += rat_str(c_[i]);
  }
  return out + "]";
}

Cyc Cyc::parse(std::string_view text) {
  if (text.rfind("zeta:", 0) != 0) return Cyc(parse_rat(text));
  const std::string_view rest = text.substr(5);
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) throw ParseError("expected zeta:k:...", 5);
  int k = 0;
  try {
    k = std::stoi(std::string(rest.substr(0, colon)));
  } catch (const std::exception&) {
    throw ParseError("invalid conductor", 5);
  }
  if (k < 1) throw ParseError("conductor must be positive", 5);
  const std::string_view body = rest.substr(colon + 1);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw ParseError("expected ']'", text.size());
    std::vector<Rat> coeffs;
    std::string inner(body.substr(1, body.size() - 2));
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) coeffs.push_back(parse_rat(item));
    return from_coeffs(k, coeffs);
  }
  long long j = 0;
  try {
    std::size_t used = 0;
    j = std::stoll(std::string(body), &used);
    if (used != body.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError("invalid zeta exponent", 6 + static_cast<std::size_t>(colon));
  }
  return zeta(k, j);
}

std::vector<Cyc> to_cyc_poly(const IntPoly& p) {
  std::vector<Cyc> out;
  out.reserve(p.size());
  for (long long c : p) out.emplace_back(static_cast<long>(c));
  return out;
}

namespace {
template <class T>
bool poly_equal_impl(const std::vector<T>& a, const std::vector<T>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const T x = i < a.size() ? a[i] : T(0);
    const T y = i < b.size() ? b[i] : T(0);
    if (!(x == y)) return false;
  }
  return true;
}
}  // namespace

bool poly_equal(const std::vector<Cyc>& a, const std::vector<Cyc>& b) { return poly_equal_impl(a, b); }
bool poly_equal(const std::vector<Rat>& a, const std::vector<Rat>& b) { return poly_equal_impl(a, b); }

std::string poly_str(const std::vector<Cyc>& p) {
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i].is_zero()) continue;
    std::string coeff = p[i].str();
    const bool rational = p[i].is_rational();
    bool negative = rational && sgn(p[i].rational_value()) < 0;
    if (negative) coeff = rat_str(-p[i].rational_value());
    if (!out.empty()) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    const bool unit = rational && coeff == "1";
    if (i == 0) {
      out += coeff;
    } else {
      if (!unit) out += (rational ? coeff : "(" + coeff + ")") + "*";
      out += i == 1 ? "t" : "t^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<std::complex<double>> to_complex(const std::vector<Cyc>& v) {
  std::vector<std::complex<double>> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_complex());
  return out;
}

}  // namespace waring::exact
