#pragma once

// Exhaustive ground truth over SL_2(F_p): word images as bitsets over a
// fixed enumeration of the group, and coverage of the product set
// w1(G) w2(G).

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waring/exactnum.hpp"
#include "waring/groups.hpp"
#include "waring/wordlang.hpp"

namespace waring {

/// SL_2(F_p) with a dense index over finite_group_elements order.
class FiniteSL2 {
 public:
  explicit FiniteSL2(int p);

  int p() const noexcept { return p_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Fp2>& elements() const noexcept { return elements_; }
  const Fp2& at(std::size_t i) const { return elements_[i]; }
  std::size_t index(const Fp2& g) const;
  std::size_t identity_index() const { return index(Fp2{}); }
  std::size_t minus_identity_index() const;
  MatrixOps<Fp2> ops() const { return MatrixOps<Fp2>{p_}; }
  Fp2 multiply(const Fp2& a, const Fp2& b) const { return ops().multiply(a, b); }
  Fp2 inverse(const Fp2& a) const { return ops().inverse(a); }

 private:
  int p_;
  std::vector<Fp2> elements_;
  std::vector<std::int32_t> lookup_;  // p^4 slots, -1 outside SL_2
};

using ElementSet = boost::dynamic_bitset<>;

struct OracleOptions {
  unsigned threads = 1;
  /// Largest number of tuples evaluated in exhaustive mode.
  std::uint64_t exhaustive_budget = 200'000'000;
  /// Tuples drawn when the arity is too large for exhaustive mode; 0 means throw instead.
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
};

struct WordImage {
  int p = 0;
  Word word;
  ElementSet members;
  std::size_t size = 0;
  bool exhaustive = true;
  std::uint64_t tuples = 0;
  bool conjugation_closed = false;
  bool inversion_closed = false;
};

/// Exhaustive image for arity <= 2 within budget, random sampling otherwise
/// (a subset of the image, flagged exhaustive = false). Throws DomainError
/// when p is not a prime <= 31 or the budget is exceeded without sampling.
WordImage word_image(const FiniteSL2& g, const Word& w, const OracleOptions& opts = {});
WordImage word_image(int p, const Word& w, const OracleOptions& opts = {});

/// Closure under conjugation by the generators [[1,1],[0,1]] and [[1,0],[1,1]].
bool conjugation_closed(const FiniteSL2& g, const ElementSet& s);
bool inversion_closed(const FiniteSL2& g, const ElementSet& s);

enum class Coverage { All, NonCentral, Neither };
std::string coverage_str(Coverage c);

struct OracleReport {
  int p = 0;
  Word w1, w2;
  std::size_t group_order = 0;
  std::size_t image1_size = 0, image2_size = 0;
  bool exhaustive = true;
  std::size_t covered = 0;
  Coverage coverage = Coverage::Neither;
  bool identity_covered = false;
  bool minus_identity_covered = false;
  bool minus_identity_in_image1 = false;
  bool minus_identity_in_image2 = false;
  bool images_conjugation_closed = false;
  double millis = 0.0;
};

/// g is covered when some s in w1(G) has s^{-1} g in w2(G).
OracleReport product_coverage(int p, const Word& w1, const Word& w2, const OracleOptions& opts = {});
/// Product set itself, for callers that need membership of particular elements.
ElementSet product_set(const FiniteSL2& g, const ElementSet& s1, const ElementSet& s2, unsigned threads = 1);

/// Reduction mod p of an exact matrix with rational entries whose
/// denominators are prime to p; nullopt otherwise or if det != 1 mod p.
std::optional<Fp2> reduce_mod_p(const exact::ExactMatrix& m, int p);

}  // namespace waring
