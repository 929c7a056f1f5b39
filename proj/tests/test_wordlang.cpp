#include <random>
#include <string>

#include "doctest.h"
#include "support.hpp"
#include "waring/matnum.hpp"
#include "waring/principal.hpp"
#include "waring/wordlang.hpp"

using namespace waring;
using exact::Rat;
using exact::RatMatrix;

namespace {

Word random_word(std::mt19937_64& rng, std::uint32_t max_gen = 3, int max_syllables = 8) {
  std::uniform_int_distribution<std::uint32_t> gen(1, max_gen);
  std::uniform_int_distribution<int> len(0, max_syllables), exp(-4, 4);
  std::vector<Syllable> s;
  const int k = len(rng);
  for (int i = 0; i < k; ++i) {
    int e = 0;
    while (e == 0) e = exp(rng);
    s.push_back({gen(rng), e});
  }
  return Word::from_syllables(s);
}

// Random expression over the full grammar: products, powers, groups, brackets, "1".
std::string random_text(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 5 : 1), gen(1, 3), exp(-3, 3), terms(1, 3);
  std::string atom;
  switch (kind(rng)) {
    case 0:
    case 1:
      atom = "x" + std::to_string(gen(rng));
      break;
    case 2:
      atom = "1";
      break;
    case 3:
    case 4: {
      atom = "(";
      const int t = terms(rng);
      for (int i = 0; i < t; ++i) atom += (i ? " " : "") + random_text(rng, depth - 1);
      atom += ")";
      break;
    }
    default:
      atom = "[" + random_text(rng, depth - 1) + "," + random_text(rng, depth - 1) + "]";
  }
  const int e = exp(rng);
  if (e != 0 && e != 1) atom += "^" + std::to_string(e);
  return atom;
}

std::vector<RatMatrix> random_args(std::mt19937_64& rng, std::size_t d) {
  std::vector<RatMatrix> a;
  for (std::size_t i = 0; i < d; ++i) a.push_back(testing::random_sl2q(rng, 3));
  return a;
}

RatMatrix conjugate(const RatMatrix& c, const RatMatrix& m) { return c * m * exact::exact_inverse(c); }

}  // namespace

TEST_SUITE("wordlang") {

TEST_CASE("parsing examples") {
  CHECK(parse_word("x1^2").syllables() == std::vector<Syllable>{{1, 2}});
  CHECK(parse_word("x1 x1^-1 x2").syllables() == std::vector<Syllable>{{2, 1}});
  CHECK(parse_word("[x1,x2]").syllables() == std::vector<Syllable>{{1, 1}, {2, 1}, {1, -1}, {2, -1}});
  CHECK(parse_word("1").empty());
  CHECK(parse_word("(x1 x2)^2 x2^-1 x1^-1") == parse_word("x1 x2"));
  CHECK(parse_word("[x1,x2]").arity() == 2);
  CHECK(parse_word("x3^-2").arity() == 3);
}

TEST_CASE("parse errors carry positions") {
  for (const char* bad : {"", "x", "x0", "x1^", "x1^0", "(x1", "[x1 x2]", "x1 )", "y1", "x1^99999999999999999999"}) {
    CHECK_THROWS_AS(parse_word(bad), ParseError);
  }
  try {
    parse_word("x1 x2^");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("printing examples") {
  CHECK(print_word(Word::generator(1, 2)) == "x1^2");
  CHECK(print_word(Word{}) == "1");
  CHECK(print_word(Word::from_syllables({{2, 1}, {1, -1}})) == "x2 x1^-1");
}

TEST_CASE("inversion examples") {
  CHECK(invert_word(Word::generator(1, 2)) == Word::generator(1, -2));
  CHECK(invert_word(Word{}).empty());
  CHECK(invert_word(parse_word("[x1,x2]")) == parse_word("x2 x1 x2^-1 x1^-1"));
}

TEST_CASE("evaluation examples") {
  const RatMatrix j{{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}};
  const RatMatrix minus_i{{Rat(-1), Rat(0)}, {Rat(0), Rat(-1)}};
  CHECK(evaluate<RatMatrix>(parse_word("x1^2"), {j}) == minus_i);
  CHECK(evaluate<RatMatrix>(parse_word("x1^3"), {j}) == Rat(-1) * j);
  std::mt19937_64 rng(1);
  const RatMatrix g = testing::random_sl2q(rng);
  CHECK(evaluate<RatMatrix>(parse_word("[x1,x2]"), {g, g}) == RatMatrix::identity(2));
  CHECK(evaluate<RatMatrix>(Word{}, {g}) == RatMatrix::identity(2));
}

TEST_CASE("evaluation errors") {
  const RatMatrix sing{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK_THROWS_AS(evaluate<RatMatrix>(parse_word("x1^-1"), {sing}), SingularMatrixError);
  CHECK_THROWS_AS(evaluate<CMatrix>(parse_word("x1^-1"), {CMatrix::Zero(2, 2)}), SingularMatrixError);
  CHECK_THROWS_AS(evaluate<RatMatrix>(parse_word("x1 x2"), {RatMatrix::identity(2)}), DimensionError);
  CHECK_THROWS_AS(evaluate<RatMatrix>(parse_word("x1 x2"), {RatMatrix::identity(2), RatMatrix::identity(3)}),
                  DimensionError);
}

TEST_CASE("large exponents use binary powering") {
  const RatMatrix u{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
  const RatMatrix want{{Rat(1), Rat(1'000'000'007)}, {Rat(0), Rat(1)}};
  CHECK(evaluate<RatMatrix>(Word::generator(1, 1'000'000'007), {u}) == want);
}

TEST_CASE("round trip: parse of print is the identity on reduced words") {
  std::mt19937_64 rng(500);
  for (int i = 0; i < 500; ++i) {
    const Word w = random_word(rng);
    CHECK(parse_word(print_word(w)) == w);
  }
}

TEST_CASE("round trip: print of parse is idempotent on strings") {
  std::mt19937_64 rng(501);
  for (int i = 0; i < 500; ++i) {
    const std::string text = random_text(rng, 3);
    const std::string once = print_word(parse_word(text));
    CHECK_MESSAGE(print_word(parse_word(once)) == once, text);
  }
}

TEST_CASE("words are reduced after every operation") {
  std::mt19937_64 rng(502);
  for (int i = 0; i < 500; ++i) {
    const Word a = random_word(rng), b = random_word(rng);
    for (const Word& w : {a * b, a.inverse(), a.pow(3), Word::commutator(a, b)}) {
      const auto& s = w.syllables();
      for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(s[k].exponent != 0);
        if (k > 0) CHECK(s[k].generator != s[k - 1].generator);
      }
    }
    CHECK((a * a.inverse()).empty());
    CHECK(invert_word(invert_word(a)) == a);
  }
}

TEST_CASE("conjugation equivariance over SL_2(Q), exact") {
  std::mt19937_64 rng(503);
  for (int i = 0; i < 500; ++i) {
    const Word w = random_word(rng, 3, 5);
    const auto args = random_args(rng, 3);
    const RatMatrix c = testing::random_sl2q(rng, 3);
    std::vector<RatMatrix> conj;
    for (const auto& a : args) conj.push_back(conjugate(c, a));
    CHECK(evaluate(w, conj) == conjugate(c, evaluate(w, args)));
  }
}

TEST_CASE("conjugation equivariance over SU(3), floating") {
  std::mt19937_64 rng(504);
  const GroupCtx ctx = GroupCtx::su(3);
  for (int i = 0; i < 500; ++i) {
    const Word w = random_word(rng, 3, 6);
    std::vector<CMatrix> args, conj;
    const CMatrix c = random_element(ctx, rng);
    for (int k = 0; k < 3; ++k) {
      args.push_back(random_element(ctx, rng));
      conj.push_back(c * args.back() * c.adjoint());
    }
    CHECK((evaluate(w, conj) - c * evaluate(w, args) * c.adjoint()).norm() <= 1e-10);
  }
}

TEST_CASE("inverted words evaluate to inverses") {
  std::mt19937_64 rng(505);
  for (int i = 0; i < 200; ++i) {
    const Word w = random_word(rng, 2, 5);
    const auto args = random_args(rng, 2);
    CHECK(evaluate(invert_word(w), args) * evaluate(w, args) == RatMatrix::identity(2));
  }
}

TEST_CASE("homomorphism under substitution by Sym^k") {
  std::mt19937_64 rng(506);
  for (int i = 0; i < 100; ++i) {
    const Word w = random_word(rng, 2, 4);
    const auto args = random_args(rng, 2);
    const int k = 1 + i % 4;
    std::vector<RatMatrix> images;
    for (const auto& a : args) images.push_back(sym_power(k, a));
    CHECK(evaluate(w, images) == sym_power(k, evaluate(w, args)));
  }
}

}  // TEST_SUITE
