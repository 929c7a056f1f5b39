#include "waring/wordlang.hpp"

#include <cctype>
#include <limits>

namespace waring {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("exponent overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("exponent overflow");
  return r;
}

}  // namespace

void Word::push(Syllable s) {
  if (s.generator == 0) throw DomainError("generator index 0 is not allowed");
  if (s.exponent == 0) return;
  if (!syllables_.empty() && syllables_.back().generator == s.generator) {
    const std::int64_t e = checked_add(syllables_.back().exponent, s.exponent);
    if (e == 0) {
      syllables_.pop_back();
    } else {
      syllables_.back().exponent = e;
    }
    return;
  }
  syllables_.push_back(s);
}

Word Word::from_syllables(const std::vector<Syllable>& syllables) {
  Word w;
  for (const Syllable& s : syllables) w.push(s);
  return w;
}

Word Word::generator(std::uint32_t index, std::int64_t exponent) {
  Word w;
  w.push({index, exponent});
  return w;
}

Word Word::commutator(const Word& u, const Word& v) {
  return u * v * u.inverse() * v.inverse();
}

std::uint32_t Word::arity() const noexcept {
  std::uint32_t a = 0;
  for (const Syllable& s : syllables_) a = std::max(a, s.generator);
  return a;
}

std::uint64_t Word::length() const noexcept {
  std::uint64_t n = 0;
  for (const Syllable& s : syllables_) {
    n += s.exponent < 0 ? 0 - static_cast<std::uint64_t>(s.exponent)
                        : static_cast<std::uint64_t>(s.exponent);
  }
  return n;
}

Word Word::inverse() const {
  Word w;
  w.syllables_.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) {
    if (it->exponent == std::numeric_limits<std::int64_t>::min()) {
      throw DomainError("exponent overflow");
    }
    w.syllables_.push_back({it->generator, -it->exponent});
  }
  return w;
}

Word operator*(const Word& a, const Word& b) {
  if (a.syllables_.size() + b.syllables_.size() > kMaxWordSyllables) {
    throw DomainError("word too long");
  }
  Word w = a;
  for (const Syllable& s : b.syllables_) w.push(s);
  return w;
}

Word Word::pow(std::int64_t k) const {
  if (k == 0 || empty()) return {};
  if (syllables_.size() == 1) {
    return generator(syllables_[0].generator, checked_mul(syllables_[0].exponent, k));
  }
  if (k == std::numeric_limits<std::int64_t>::min()) throw DomainError("exponent overflow");
  Word base = k < 0 ? inverse() : *this;
  std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  Word acc;
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return acc;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Word parse() {
    skip_ws();
    Word w = word();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_atom_start() const {
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == 'x' || c == '(' || c == '[' || c == '1';
  }

  Word word() {
    if (!at_atom_start()) fail("expected a term");
    Word w = term();
    for (;;) {
      skip_ws();
      if (!at_atom_start()) break;
      w = w * term();
    }
    return w;
  }

  Word term() {
    const std::size_t start = pos_;
    Word a = atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      const std::int64_t k = integer();
      try {
        a = a.pow(k);
      } catch (const DomainError& e) {
        throw ParseError(e.what(), start);
      }
    }
    return a;
  }

  Word atom() {
    const char c = text_[pos_];
    if (c == 'x') {
      const std::size_t start = pos_;
      ++pos_;
      const std::uint64_t idx = positive_integer();
      if (idx == 0) throw ParseError("generator index 0", start);
      if (idx > std::numeric_limits<std::uint32_t>::max()) {
        throw ParseError("generator index too large", start);
      }
      return Word::generator(static_cast<std::uint32_t>(idx));
    }
    if (c == '1') {
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("numeric literal other than 1");
      }
      return {};
    }
    if (c == '(') {
      ++pos_;
      skip_ws();
      Word w = word();
      skip_ws();
      expect(')');
      return w;
    }
    // '['
    const std::size_t start = pos_;
    ++pos_;
    skip_ws();
    Word u = word();
    skip_ws();
    expect(',');
    skip_ws();
    Word v = word();
    skip_ws();
    expect(']');
    try {
      return Word::commutator(u, v);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), start);
    }
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::uint64_t positive_integer() {
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected digits");
    }
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) {
        throw ParseError("integer overflow", start);
      }
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    const std::uint64_t v = positive_integer();
    if (v == 0) throw ParseError("exponent must be a positive integer or its negative", start);
    const auto limit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    if (v > limit) throw ParseError("exponent overflow", start);
    return neg ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return Parser(text).parse(); }

std::string print_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const Syllable& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += 'x';
    out += std::to_string(s.generator);
    if (s.exponent != 1) {
      out += '^';
      out += std::to_string(s.exponent);
    }
  }
  return out;
}

}  // namespace waring
