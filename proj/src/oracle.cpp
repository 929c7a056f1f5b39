#include "waring/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <thread>

namespace waring {

namespace {

bool small_prime(int p) {
  if (p < 2 || p > 31) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::size_t slot(const Fp2& g, int p) {
  const auto q = static_cast<std::size_t>(p);
  return ((static_cast<std::size_t>(g.a) * q + g.b) * q + g.c) * q + g.d;
}

// Runs body(lo, hi, out) over [0, n) split into contiguous chunks, then ORs the results.
template <class Body>
ElementSet parallel_union(std::size_t n, std::size_t bits, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<ElementSet> parts(threads, ElementSet(bits));
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(n, t * chunk), hi = std::min(n, lo + chunk);
    if (threads == 1) {
      body(lo, hi, parts[t]);
    } else {
      pool.emplace_back([&, lo, hi, t] { body(lo, hi, parts[t]); });
    }
  }
  for (auto& th : pool) th.join();
  for (unsigned t = 1; t < threads; ++t) parts[0] |= parts[t];
  return parts[0];
}

}  // namespace

FiniteSL2::FiniteSL2(int p) : p_(p) {
  if (!small_prime(p)) throw DomainError("SL_2(F_p) enumeration needs a prime p <= 31, got " + std::to_string(p));
  elements_ = finite_group_elements(GroupCtx::sl_fp(2, p));
  lookup_.assign(static_cast<std::size_t>(p) * p * p * p, -1);
  for (std::size_t i = 0; i < elements_.size(); ++i) lookup_[slot(elements_[i], p)] = static_cast<std::int32_t>(i);
}

std::size_t FiniteSL2::index(const Fp2& g) const {
  const std::int32_t i = lookup_.at(slot(g, p_));
  if (i < 0) throw DomainError("matrix is not in SL_2(F_p)");
  return static_cast<std::size_t>(i);
}

std::size_t FiniteSL2::minus_identity_index() const {
  const auto m = static_cast<std::uint8_t>(p_ - 1);
  return index(Fp2{m, 0, 0, m});
}

bool conjugation_closed(const FiniteSL2& g, const ElementSet& s) {
  const Fp2 gens[] = {{1, 1, 0, 1}, {1, 0, 1, 1}};
  for (std::size_t i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) {
    for (const Fp2& h : gens) {
      const Fp2 c = g.multiply(g.multiply(h, g.at(i)), g.inverse(h));
      if (!s.test(g.index(c))) return false;
    }
  }
  return true;
}

bool inversion_closed(const FiniteSL2& g, const ElementSet& s) {
  for (std::size_t i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
    if (!s.test(g.index(g.inverse(g.at(i))))) return false;
  return true;
}

WordImage word_image(const FiniteSL2& g, const Word& w, const OracleOptions& opts) {
  WordImage img;
  img.p = g.p();
  img.word = w;
  const std::size_t order = g.order();
  const std::uint32_t arity = w.arity();
  const auto ops = g.ops();

  double tuples = 1;
  for (std::uint32_t i = 0; i < arity; ++i) tuples *= static_cast<double>(order);
  if (arity <= 2 && tuples <= static_cast<double>(opts.exhaustive_budget)) {
    img.tuples = static_cast<std::uint64_t>(tuples);
    if (arity == 0) {
      img.members = ElementSet(order);
      img.members.set(g.identity_index());
    } else {
      img.members = parallel_union(order, order, opts.threads, [&](std::size_t lo, std::size_t hi, ElementSet& out) {
        std::vector<Fp2> args(arity);
        for (std::size_t i = lo; i < hi; ++i) {
          args[0] = g.at(i);
          if (arity == 1) {
            out.set(g.index(evaluate(w, args, ops)));
            continue;
          }
          for (std::size_t j = 0; j < order; ++j) {
            args[1] = g.at(j);
            out.set(g.index(evaluate(w, args, ops)));
          }
        }
      });
    }
  } else {
    if (opts.samples == 0) {
      throw DomainError("word of arity " + std::to_string(arity) + " over F_" + std::to_string(g.p()) +
                        " exceeds the exhaustive budget");
    }
    img.exhaustive = false;
    img.tuples = opts.samples;
    img.members = ElementSet(order);
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, order - 1);
    std::vector<Fp2> args(std::max<std::uint32_t>(arity, 1));
    for (std::uint64_t s = 0; s < opts.samples; ++s) {
      for (auto& a : args) a = g.at(pick(rng));
      img.members.set(g.index(evaluate(w, args, ops)));
    }
  }
  img.size = img.members.count();
  img.conjugation_closed = conjugation_closed(g, img.members);
  img.inversion_closed = inversion_closed(g, img.members);
  return img;
}

WordImage word_image(int p, const Word& w, const OracleOptions& opts) { return word_image(FiniteSL2(p), w, opts); }

std::string coverage_str(Coverage c) {
  switch (c) {
    case Coverage::All: return "G";
    case Coverage::NonCentral: return "G\\Z(G)";
    default: return "neither";
  }
}

ElementSet product_set(const FiniteSL2& g, const ElementSet& s1, const ElementSet& s2, unsigned threads) {
  const std::size_t order = g.order();
  std::vector<Fp2> inv1;
  for (std::size_t i = s1.find_first(); i != ElementSet::npos; i = s1.find_next(i)) inv1.push_back(g.inverse(g.at(i)));
  return parallel_union(order, order, threads, [&](std::size_t lo, std::size_t hi, ElementSet& out) {
    for (std::size_t k = lo; k < hi; ++k) {
      const Fp2& target = g.at(k);
      for (const Fp2& si : inv1) {
        if (s2.test(g.index(g.multiply(si, target)))) {
          out.set(k);
          break;
        }
      }
    }
  });
}

OracleReport product_coverage(int p, const Word& w1, const Word& w2, const OracleOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const FiniteSL2 g(p);
  const WordImage i1 = word_image(g, w1, opts);
  const WordImage i2 = w2 == w1 ? i1 : word_image(g, w2, opts);
  const ElementSet prod = product_set(g, i1.members, i2.members, opts.threads);

  OracleReport rep;
  rep.p = p;
  rep.w1 = w1;
  rep.w2 = w2;
  rep.group_order = g.order();
  rep.image1_size = i1.size;
  rep.image2_size = i2.size;
  rep.exhaustive = i1.exhaustive && i2.exhaustive;
  rep.covered = prod.count();
  const std::size_t id = g.identity_index();
  const std::size_t mid = g.minus_identity_index();
  rep.identity_covered = prod.test(id);
  rep.minus_identity_covered = prod.test(mid);
  rep.minus_identity_in_image1 = i1.members.test(mid);
  rep.minus_identity_in_image2 = i2.members.test(mid);
  rep.images_conjugation_closed = i1.conjugation_closed && i2.conjugation_closed;
  const std::size_t centre = id == mid ? 1 : 2;
  const std::size_t central_hits = static_cast<std::size_t>(rep.identity_covered) +
                                   static_cast<std::size_t>(id != mid && rep.minus_identity_covered);
  if (rep.covered == rep.group_order) {
    rep.coverage = Coverage::All;
  } else if (rep.covered - central_hits == rep.group_order - centre) {
    rep.coverage = Coverage::NonCentral;
  } else {
    rep.coverage = Coverage::Neither;
  }
  rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::optional<Fp2> reduce_mod_p(const exact::ExactMatrix& m, int p) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("reduce_mod_p needs a 2x2 matrix");
  std::uint8_t e[4];
  for (std::size_t k = 0; k < 4; ++k) {
    const exact::Cyc& c = m(k / 2, k % 2);
    if (!c.is_rational()) return std::nullopt;
    const exact::Rat r = c.rational_value();
    const mpz_class num = r.get_num(), den = r.get_den();
    if (den % p == 0) return std::nullopt;
    mpz_class inv;
    const mpz_class pz = p;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    mpz_class v = (num * inv) % pz;
    if (v < 0) v += pz;
    e[k] = static_cast<std::uint8_t>(v.get_si());
  }
  const Fp2 g{e[0], e[1], e[2], e[3]};
  if (((g.a * g.d - g.b * g.c) % p + p) % p != 1 % p) return std::nullopt;
  return g;
}

}  // namespace waring
