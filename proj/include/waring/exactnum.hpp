#pragma once

// Exact arithmetic over Q and the cyclotomic fields Q(zeta_k), plus dense
// exact matrices (products, inverses, determinants, characteristic
// polynomials).

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "waring/error.hpp"
#include "waring/wordlang.hpp"

namespace waring::exact {

using Rat = mpq_class;
using IntPoly = std::vector<long long>;  // coefficients, lowest degree first

/// Largest conductor accepted by Cyc arithmetic.
inline constexpr int kMaxConductor = 256;

/// The k-th cyclotomic polynomial, via Phi_k = (t^k - 1) / prod_{d | k, d < k} Phi_d.
IntPoly cyclotomic_poly(int k);

/// [Q(zeta_k) : Q] = phi(k).
int field_degree_over_Q(int k);

/// An element of Q(zeta_k), stored as the unique residue of degree < phi(k)
/// modulo Phi_k in the power basis 1, zeta_k, zeta_k^2, ...
class Cyc {
 public:
  Cyc() : k_(1), c_{Rat(0)} {}
  Cyc(long v) : k_(1), c_{Rat(v)} {}  // NOLINT(google-explicit-constructor)
  Cyc(int v) : Cyc(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Cyc(const Rat& v) : k_(1), c_{v} {}  // NOLINT(google-explicit-constructor)

  /// zeta_k^power.
  static Cyc zeta(int k, long long power = 1);
  /// Builds from an arbitrary-length coefficient list in zeta_k, reducing mod Phi_k.
  static Cyc from_coeffs(int k, const std::vector<Rat>& coeffs);

  int conductor() const noexcept { return k_; }
  const std::vector<Rat>& coeffs() const noexcept { return c_; }

  /// Re-expresses the element in Q(zeta_k2); k2 must be a multiple of conductor().
  Cyc promoted(int k2) const;

  bool is_zero() const;
  bool is_rational() const;
  /// Requires is_rational().
  Rat rational_value() const;

  Cyc inverse() const;
  Cyc pow(long long e) const;
  /// Complex conjugate: zeta_k -> zeta_k^{-1}.
  Cyc conj() const;

  /// Principal complex embedding zeta_k -> exp(2 pi i / k).
  std::complex<double> to_complex() const;

  /// "p/q" for rationals, "zeta:k:[c0,c1,...]" otherwise.
  std::string str() const;
  /// Accepts "p", "p/q", "zeta:k:j" (zeta_k^j) and "zeta:k:[c0,...]".
  static Cyc parse(std::string_view text);

  Cyc operator-() const;
  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  Cyc& operator/=(const Cyc& o);

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
  friend Cyc operator/(Cyc a, const Cyc& b) { return a /= b; }
  friend bool operator==(const Cyc& a, const Cyc& b);

 private:
  Cyc(int k, std::vector<Rat> c) : k_(k), c_(std::move(c)) {}

  int k_;
  std::vector<Rat> c_;
};

std::string rat_str(const Rat& r);
Rat parse_rat(std::string_view text);

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero_scalar(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (is_zero_scalar(b(k, j))) continue;
          c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }
  friend Mat operator+(Mat a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Mat operator-(Mat a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Mat operator*(const T& s, Mat a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!is_zero_scalar(x)) return false;
    return true;
  }

 private:
  static bool is_zero_scalar(const Rat& x) { return sgn(x) == 0; }
  static bool is_zero_scalar(const Cyc& x) { return x.is_zero(); }
  template <class U>
  static bool is_zero_scalar(const U& x) { return x == U(0); }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using ExactMatrix = Mat<Cyc>;
using RatMatrix = Mat<Rat>;

/// Block-diagonal sum.
template <class T>
Mat<T> block_diag(const std::vector<Mat<T>>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  Mat<T> m(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

namespace detail {
inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const Cyc& x) { return x.is_zero(); }
}  // namespace detail

/// det(tI - M), coefficients lowest degree first (monic, length n+1).
/// Berkowitz's algorithm: ring operations only, no divisions.
template <class T>
std::vector<T> char_poly(const Mat<T>& m) {
  if (!m.square()) throw DimensionError("char_poly needs a square matrix");
  const std::size_t n = m.rows();
  // vect holds the char poly of the leading r x r block, highest degree first.
  std::vector<T> vect{T(1)};
  for (std::size_t r = 0; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R C, -R M C, ..., -R M^{r-1} C
    std::vector<T> col(r + 2, T(0));
    col[0] = T(1);
    col[1] = T(0) - m(r, r);
    std::vector<T> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T dot(0);
      for (std::size_t j = 0; j < r; ++j) {
        if (!detail::is_zero(v[j]) && !detail::is_zero(m(r, j))) dot += m(r, j) * v[j];
      }
      col[k + 2] = T(0) - dot;
      if (k + 1 < r) {
        std::vector<T> next(r, T(0));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            if (!detail::is_zero(v[j]) && !detail::is_zero(m(i, j))) next[i] += m(i, j) * v[j];
        v = std::move(next);
      }
    }
    std::vector<T> nv(r + 2, T(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        if (!detail::is_zero(col[i - j]) && !detail::is_zero(vect[j])) nv[i] += col[i - j] * vect[j];
    vect = std::move(nv);
  }
  return {vect.rbegin(), vect.rend()};
}

/// Gauss-Jordan inverse over a field. Throws SingularMatrixError.
template <class T>
Mat<T> exact_inverse(const Mat<T>& m) {
  if (!m.square()) throw DimensionError("inverse needs a square matrix");
  const std::size_t n = m.rows();
  Mat<T> a = m;
  Mat<T> inv = Mat<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && detail::is_zero(a(p, c))) ++p;
    if (p == n) throw SingularMatrixError("matrix is singular");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const T piv_inv = T(1) / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = a(c, j) * piv_inv;
      inv(c, j) = inv(c, j) * piv_inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || detail::is_zero(a(i, c))) continue;
      const T f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!detail::is_zero(a(c, j))) a(i, j) -= f * a(c, j);
        if (!detail::is_zero(inv(c, j))) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

template <class T>
T determinant(const Mat<T>& m) {
  if (!m.square()) throw DimensionError("determinant needs a square matrix");
  const std::size_t n = m.rows();
  if constexpr (std::is_same_v<T, Cyc>) {
    // Inverses in Q(zeta_k) cost a phi(k)-sized linear solve; the division-free route is cheaper.
    const std::vector<T> p = char_poly(m);
    return n % 2 == 0 ? p[0] : T(0) - p[0];
  }
  Mat<T> a = m;
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && detail::is_zero(a(p, c))) ++p;
    if (p == n) return T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = T(0) - det;
    }
    det *= a(c, c);
    const T piv_inv = T(1) / a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (detail::is_zero(a(i, c))) continue;
      const T f = a(i, c) * piv_inv;
      for (std::size_t j = c; j < n; ++j)
        if (!detail::is_zero(a(c, j))) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Exact polynomial from integer coefficients.
std::vector<Cyc> to_cyc_poly(const IntPoly& p);
/// Product of integer polynomials.
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
/// Coefficient-wise equality with implicit zero padding.
bool poly_equal(const std::vector<Cyc>& a, const std::vector<Cyc>& b);
bool poly_equal(const std::vector<Rat>& a, const std::vector<Rat>& b);
/// Human-readable polynomial in t, e.g. "t^4 + 1".
std::string poly_str(const std::vector<Cyc>& p);

std::vector<std::complex<double>> to_complex(const std::vector<Cyc>& v);

}  // namespace waring::exact

namespace waring {

template <class T>
struct MatrixOps<exact::Mat<T>> {
  std::size_t dim(const exact::Mat<T>& m) const { return m.rows(); }
  exact::Mat<T> identity(const exact::Mat<T>& like) const {
    return exact::Mat<T>::identity(like.rows());
  }
  exact::Mat<T> multiply(const exact::Mat<T>& a, const exact::Mat<T>& b) const { return a * b; }
  exact::Mat<T> inverse(const exact::Mat<T>& a) const { return exact::exact_inverse(a); }
};

}  // namespace waring
