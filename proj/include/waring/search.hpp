#pragma once

// Searches the existence arguments delegate to: SU(2) preimages of torus
// targets under a word map, rational samples with square discriminant, and
// the bounded scan for x^4 y^4 = -I over SL_2(Q).

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "waring/exactnum.hpp"
#include "waring/matnum.hpp"
#include "waring/wordlang.hpp"

namespace waring {

struct SearchBudget {
  int restarts = 64;
  int iterations = 2000;
  double tol = 1e-10;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

using Quaternion = std::array<double, 4>;  // a + b i + c j + d k, unit norm

/// [[a + b i, c + d i], [-c + d i, a - b i]]
CMatrix quaternion_to_su2(const Quaternion& q);
Quaternion su2_to_quaternion(const CMatrix& m);

struct PreimageResult {
  Word word;
  double target_angle = 0.0;
  bool found = false;
  bool analytic = false;  // closed form for single-syllable words
  std::vector<Quaternion> quaternions;
  std::vector<CMatrix> witnesses;
  double residual = 0.0;  // ||w(witnesses) - diag(e^{i phi}, e^{-i phi})||_F
  int restarts_used = 0;
};

/// Witnesses in SU(2)^d with w(witnesses) = diag(e^{i phi}, e^{-i phi}).
/// Random restarts of Nelder-Mead on unit quaternions, each followed by a
/// damped Gauss-Newton polish. found = false when the budget runs out.
PreimageResult su2_preimage(const Word& w, double phi, const SearchBudget& budget = {});

/// Entrywise conjugate witnesses: a preimage for -phi.
PreimageResult conjugate_preimage(const PreimageResult& r);

/// Least n in [n_from, n_to] for which su2_preimage(w, angle_of_rank(n))
/// succeeds, or nullopt.
std::optional<int> least_rank_with_preimage(const Word& w, const std::function<double(int)>& angle_of_rank,
                                            int n_from, int n_to, const SearchBudget& budget = {});

// ---- rational searches ----

/// Height max(|p|, q) of p/q in lowest terms.
long rat_height(const exact::Rat& r);

/// All rationals of height <= h, ordered by height then value.
std::vector<exact::Rat> rationals_by_height(int h);

/// Square root in Q, if r is a square.
std::optional<exact::Rat> rational_sqrt(const exact::Rat& r);

/// Every matrix in SL_2(Q) whose entries have height <= bound.
std::vector<exact::RatMatrix> sl2q_matrices(int bound);

struct DiscriminantSample {
  Word word;
  std::vector<exact::RatMatrix> args;
  exact::Rat trace;
  exact::Rat delta;  // trace^2 - 4
  exact::Rat root;   // root^2 = delta
};

/// The sample for one argument tuple, if its discriminant is a nonzero square.
std::optional<DiscriminantSample> discriminant_sample(const Word& w, const std::vector<exact::RatMatrix>& args);

struct DiscriminantReport {
  Word word;
  std::size_t requested = 0;
  int height = 0;
  std::vector<DiscriminantSample> samples;  // pairwise distinct traces
  std::uint64_t tuples_scanned = 0;
  bool complete = false;                    // samples.size() == requested
};

/// Scans tuples of SL_2(Q) matrices with entries of height <= height, in
/// order of the largest matrix index used, collecting distinct traces.
DiscriminantReport sample_discriminant_squares(const Word& w, std::size_t count, int height);

struct Prop41NearMiss {
  exact::RatMatrix a, b;
  exact::Rat trace_gap;            // tr(A^4) + tr(B^4), nonzero
  double eigen_ratio_defect = 0;   // min |r^4 + 1| over eigenvalue ratios r
};

struct Prop41Report {
  int bound = 0;
  std::uint64_t matrices = 0;
  std::uint64_t pairs = 0;  // pairs covered by the scan
  std::vector<std::pair<exact::RatMatrix, exact::RatMatrix>> solutions;  // A^4 B^4 = -I
  std::uint64_t trace_coincidences = 0;  // pairs with tr(A^4) + tr(B^4) = 0
  std::vector<Prop41NearMiss> near_misses;
  int zeta8_degree = 0;
};

/// Exhaustive over pairs of matrices with entries of height <= bound.
/// For A, B in SL_2, an eigenvalue ratio is a primitive 8th root of unity
/// exactly when tr(A^4) + tr(B^4) = 0, so near misses are ranked by that gap.
Prop41Report prop41_search(int bound, std::size_t near_miss_count = 5);

}  // namespace waring
