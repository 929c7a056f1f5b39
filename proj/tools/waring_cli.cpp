// Command-line front end: one subcommand per pipeline, JSON artifacts out.
// Exit codes: 0 success, 1 usage error, 2 verification or budget failure.

#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "waring/factorize.hpp"
#include "waring/goto.hpp"
#include "waring/oracle.hpp"
#include "waring/principal.hpp"
#include "waring/search.hpp"
#include "waring/serialize.hpp"

using namespace waring;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;

struct RunConfig {
  std::uint64_t seed = 42;
  double tol = kAcceptTol;
  unsigned threads = 1;
  std::string out;
  int restarts = SearchBudget{}.restarts;
  int iterations = SearchBudget{}.iterations;
};

// Usage errors raised after CLI11 has accepted the arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

SearchBudget budget(const RunConfig& cfg) {
  SearchBudget b;
  b.seed = cfg.seed;
  b.restarts = cfg.restarts;
  b.iterations = cfg.iterations;
  return b;
}

GroupCtx parse_group(const std::string& spec) {
  try {
    return GroupCtx::parse(spec);
  } catch (const Error& e) {
    throw UsageError(std::string("bad group spec: ") + e.what());
  }
}

Word parse_word_arg(const std::string& text) {
  try {
    return parse_word(text);
  } catch (const ParseError& e) {
    throw UsageError("bad word '" + text + "': " + e.what());
  }
}

int cmd_factorize(const RunConfig& cfg, const std::string& group, const std::string& w1s, const std::string& w2s,
                  const std::string& target) {
  const GroupCtx ctx = parse_group(group);
  if (!ctx.compact()) throw UsageError("factorize needs su:n, sp:n or k:2n");
  const Word w1 = parse_word_arg(w1s), w2 = parse_word_arg(w2s);
  if (w1.empty() || w2.empty()) throw UsageError("words must be non-trivial");

  CMatrix g;
  if (target == "random") {
    std::mt19937_64 rng(cfg.seed);
    g = random_element(ctx, rng);
  } else if (target == "identity") {
    g = CMatrix::Identity(ctx.dim(), ctx.dim());
  } else {
    const json j = read_json(target);
    g = cmatrix_from_json(j.contains("target") ? j["target"] : j);
  }
  if (g.rows() != ctx.dim() || g.cols() != ctx.dim()) throw UsageError("target has the wrong size");
  if (!member(ctx, g, std::max(cfg.tol, kVerifyTol)).member) throw UsageError("target is not in " + ctx.str());

  FactorizeOptions opts;
  opts.tol = cfg.tol;
  opts.budget = budget(cfg);
  try {
    const FactorizationCert cert = factorize_compact(ctx, g, w1, w2, opts);
    emit(cfg, certificate_to_json(cert));
    const VerifyResult v = verify_certificate(certificate_to_json(cert));
    if (!cert.ok || !v.ok) {
      std::cerr << "verification failed: " << v.message << "\n";
      return kFailed;
    }
    return kOk;
  } catch (const PreimageBudgetError& e) {
    json j{{"group", ctx.str()},
           {"words", {{"w1", print_word(w1)}, {"w2", print_word(w2)}}},
           {"status", "preimage_budget_exhausted"},
           {"rank", e.rank()},
           {"empirical_threshold", e.threshold() < 0 ? json(nullptr) : json(e.threshold())},
           {"message", e.what()}};
    emit(cfg, j);
    std::cerr << e.what() << "\n";
    return kFailed;
  }
}

int cmd_verify(const RunConfig& cfg, const std::string& path) {
  const json cert = read_json(path);
  VerifyResult v;
  try {
    v = verify_certificate(cert);
  } catch (const Error& e) {
    std::cerr << "malformed certificate: " << e.what() << "\n";
    return kFailed;
  }
  emit(cfg, {{"ok", v.ok},
             {"residual", v.residual},
             {"stored_residual", v.stored_residual},
             {"witness_defect", v.witness_defect},
             {"tol", v.tol},
             {"message", v.message}});
  if (!v.ok) std::cerr << "verification failed: " << v.message << "\n";
  return v.ok ? kOk : kFailed;
}

int cmd_goto(const RunConfig& cfg, const std::string& group) {
  const GroupCtx ctx = parse_group(group);
  if (!ctx.compact()) throw UsageError("goto needs su:n, sp:n or k:2n");
  const GotoElement x = build_goto(ctx);
  const GotoReport rep = certify_goto(x);
  json j = to_json(rep);
  j["root_order"] = x.root_order;
  j["x"] = to_json(x.x_exact);
  emit(cfg, j);
  return rep.ok ? kOk : kFailed;
}

int cmd_embed(const RunConfig& cfg, const std::string& group, double theta) {
  const GroupCtx ctx = parse_group(group);
  if (!ctx.compact()) throw UsageError("embed needs su:n, sp:n or k:2n");
  const PrincipalEmbed e = build_embedding(ctx.family, ctx.n);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = std::polar(1.0, theta);
  d(1, 1) = std::polar(1.0, -theta);
  const CMatrix img = e(d);
  // compare the diagonal of the torus image with the weight list
  double defect = 0;
  for (std::size_t i = 0; i < e.weights.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    defect = std::max(defect, std::abs(img(ii, ii) - std::polar(1.0, e.weights[i] * theta)));
  }
  const MembershipReport m = member(ctx, img);
  json j = to_json(e);
  j["theta"] = theta;
  j["torus_image"] = to_json(img);
  j["weight_defect"] = defect;
  j["image_member"] = m.member;
  emit(cfg, j);
  return defect <= 1e-10 && m.member ? kOk : kFailed;
}

int cmd_oracle(const RunConfig& cfg, int p, const std::string& w1s, const std::string& w2s, std::uint64_t samples) {
  const Word w1 = parse_word_arg(w1s), w2 = parse_word_arg(w2s);
  OracleOptions opts;
  opts.threads = cfg.threads;
  opts.samples = samples;
  opts.seed = cfg.seed;
  try {
    emit(cfg, to_json(product_coverage(p, w1, w2, opts)));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return kOk;
}

int cmd_central(const RunConfig& cfg, int n, const std::string& rs) {
  exact::Cyc r;
  try {
    r = exact::Cyc::parse(rs);
  } catch (const Error& e) {
    throw UsageError(std::string("bad root: ") + e.what());
  }
  CentralSquares s;
  try {
    s = central_two_squares(n, r);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  emit(cfg, to_json(s));
  return kOk;
}

int cmd_discriminant(const RunConfig& cfg, const std::string& ws, std::size_t count, int height) {
  const Word w = parse_word_arg(ws);
  if (w.empty()) throw UsageError("word must be non-trivial");
  const DiscriminantReport rep = sample_discriminant_squares(w, count, height);
  emit(cfg, to_json(rep));
  return rep.complete ? kOk : kFailed;
}

int cmd_prop41(const RunConfig& cfg, int bound, std::size_t near, const std::vector<int>& primes) {
  const Prop41Report rep = prop41_search(bound, near);
  json j = to_json(rep);
  json finite = json::array();
  OracleOptions opts;
  opts.threads = cfg.threads;
  const Word x4 = Word::generator(1, 4);
  for (int p : primes) {
    const OracleReport o = product_coverage(p, x4, x4, opts);
    finite.push_back({{"p", p}, {"minus_identity_covered", o.minus_identity_covered}, {"coverage", coverage_str(o.coverage)}});
  }
  j["finite_fields"] = finite;
  emit(cfg, j);
  return kOk;
}

int cmd_zeta4(const RunConfig& cfg, const std::string& ws) {
  const Word w = parse_word_arg(ws);
  if (w.empty()) throw UsageError("word must be non-trivial");
  emit(cfg, to_json(check_zeta4_condition(w, budget(cfg))));
  return kOk;
}

void common_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  sub->add_option("--tol", cfg.tol, "certificate tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--threads", cfg.threads, "cap on worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--out,--report", cfg.out, "write JSON here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waring-width constructions for compact Lie groups"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string group, w1 = "x1^2", w2 = "x1^2", target = "random", cert, word = "x1^2", root = "-1";
  int n = 1, p = 7, height = 50, bound = 5;
  double theta = 0.37;
  std::size_t count = 100, near = 5;
  std::uint64_t samples = 0;
  std::vector<int> primes{3, 5, 7, 17};

  auto* fac = app.add_subcommand("factorize", "width-two factorization g = w1(A) w2(B)");
  fac->add_option("--group", group, "su:n, sp:n or k:2n")->required();
  fac->add_option("--w1", w1, "first word")->capture_default_str();
  fac->add_option("--w2", w2, "second word")->capture_default_str();
  fac->add_option("--target", target, "random, identity or a JSON matrix file")->capture_default_str();
  fac->add_option("--restarts", cfg.restarts, "preimage search restarts")->check(CLI::PositiveNumber);
  fac->add_option("--iterations", cfg.iterations, "iterations per restart")->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "re-check a certificate from its stored data");
  ver->add_option("certificate", cert, "certificate JSON")->required();

  auto* got = app.add_subcommand("goto", "certify the Goto element");
  got->add_option("--group", group, "su:n, sp:n or k:2n")->required();

  auto* emb = app.add_subcommand("embed", "principal embedding and its torus weights");
  emb->add_option("--group", group, "su:n, sp:n or k:2n")->required();
  emb->add_option("--theta", theta, "torus angle")->capture_default_str();

  auto* orc = app.add_subcommand("oracle", "product coverage over SL_2(F_p)");
  orc->add_option("--p", p, "prime <= 31")->required();
  orc->add_option("--w1", w1, "first word")->capture_default_str();
  orc->add_option("--w2", w2, "second word")->capture_default_str();
  orc->add_option("--samples", samples, "tuples to sample when exhaustive enumeration is too large");

  auto* cen = app.add_subcommand("central", "exact two squares for r I in SL_2n");
  cen->add_option("--n", n, "half the matrix size")->required()->check(CLI::PositiveNumber);
  cen->add_option("--r", root, "root of unity: p, p/q, zeta:k:j")->capture_default_str();

  auto* dis = app.add_subcommand("sample-discriminant", "rational samples with square discriminant");
  dis->add_option("--word", word, "word")->capture_default_str();
  dis->add_option("--count", count, "samples wanted")->capture_default_str();
  dis->add_option("--height", height, "entry height bound")->capture_default_str()->check(CLI::PositiveNumber);

  auto* p41 = app.add_subcommand("prop41", "search for A^4 B^4 = -I over SL_2(Q)");
  p41->add_option("--bound", bound, "entry height bound")->capture_default_str()->check(CLI::PositiveNumber);
  p41->add_option("--near-misses", near, "near misses to report")->capture_default_str();
  p41->add_option("--primes", primes, "finite fields for the contrast scan")->capture_default_str();

  auto* z4 = app.add_subcommand("zeta4", "look for zeta_4 in w(SU(2))");
  z4->add_option("--word", word, "word")->capture_default_str();

  for (auto* sub : {fac, ver, got, emb, orc, cen, dis, p41, z4}) common_flags(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*fac) return cmd_factorize(cfg, group, w1, w2, target);
    if (*ver) return cmd_verify(cfg, cert);
    if (*got) return cmd_goto(cfg, group);
    if (*emb) return cmd_embed(cfg, group, theta);
    if (*orc) return cmd_oracle(cfg, p, w1, w2, samples);
    if (*cen) return cmd_central(cfg, n, root);
    if (*dis) return cmd_discriminant(cfg, word, count, height);
    if (*p41) return cmd_prop41(cfg, bound, near, primes);
    if (*z4) return cmd_zeta4(cfg, word);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
