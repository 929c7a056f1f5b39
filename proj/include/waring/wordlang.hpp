#pragma once

// Words of the free group F_d: parsing, printing, free reduction and
// evaluation on tuples of square matrices over any scalar backend.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "waring/error.hpp"

namespace waring {

struct Syllable {
  std::uint32_t generator = 1;  // 1-based, x1 is generator 1
  std::int64_t exponent = 1;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A freely reduced word. Adjacent syllables never share a generator and no
/// exponent is zero; every constructor reduces.
class Word {
 public:
  Word() = default;

  static Word from_syllables(const std::vector<Syllable>& syllables);
  static Word generator(std::uint32_t index, std::int64_t exponent = 1);
  static Word commutator(const Word& u, const Word& v);

  const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
  bool empty() const noexcept { return syllables_.empty(); }
  /// Largest generator index present (0 for the empty word).
  std::uint32_t arity() const noexcept;
  /// Sum of |exponent| over syllables.
  std::uint64_t length() const noexcept;

  Word inverse() const;
  Word pow(std::int64_t k) const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  void push(Syllable s);
  std::vector<Syllable> syllables_;
};

/// Hard cap on the number of syllables produced while parsing.
inline constexpr std::size_t kMaxWordSyllables = 1u << 20;

/// Parses the word grammar
///   word := term { WS term } ; term := atom [ "^" int ] ;
///   atom := gen | "(" word ")" | "[" word "," word "]" | "1" ;
///   gen := "x" posint ; int := ["-"] posint
/// Throws ParseError with the offending position.
Word parse_word(std::string_view text);

/// Canonical form, e.g. "x2 x1^-1"; the empty word prints as "1".
std::string print_word(const Word& w);

inline Word invert_word(const Word& w) { return w.inverse(); }

/// Backend hooks used by evaluate(). Specialized next to each matrix type.
template <class M>
struct MatrixOps;

template <class M, class Ops = MatrixOps<M>>
M evaluate(const Word& w, std::span<const M> args, const Ops& ops = {}) {
  if (args.size() < w.arity()) {
    throw DimensionError("word of arity " + std::to_string(w.arity()) + " given " +
                         std::to_string(args.size()) + " arguments");
  }
  if (args.empty()) {
    throw DimensionError("evaluate needs at least one argument to fix the dimension");
  }
  const std::size_t dim = ops.dim(args[0]);
  for (const M& a : args) {
    if (ops.dim(a) != dim) throw DimensionError("arguments have mismatched dimensions");
  }

  std::vector<std::optional<M>> inverses(args.size());
  M result = ops.identity(args[0]);
  for (const Syllable& s : w.syllables()) {
    const std::size_t g = s.generator - 1;
    const M* base = &args[g];
    if (s.exponent < 0) {
      if (!inverses[g]) inverses[g] = ops.inverse(args[g]);
      base = &*inverses[g];
    }
    // |exponent| as unsigned so INT64_MIN is safe
    std::uint64_t e = s.exponent < 0 ? 0 - static_cast<std::uint64_t>(s.exponent)
                                     : static_cast<std::uint64_t>(s.exponent);
    M power = *base;
    std::optional<M> acc;
    while (e > 0) {
      if (e & 1u) acc = acc ? ops.multiply(*acc, power) : power;
      e >>= 1u;
      if (e > 0) power = ops.multiply(power, power);
    }
    result = ops.multiply(result, *acc);
  }
  return result;
}

template <class M, class Ops = MatrixOps<M>>
M evaluate(const Word& w, const std::vector<M>& args, const Ops& ops = {}) {
  return evaluate<M, Ops>(w, std::span<const M>(args.data(), args.size()), ops);
}

}  // namespace waring
