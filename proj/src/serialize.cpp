#include "waring/serialize.hpp"

namespace waring {

using exact::Cyc;
using exact::ExactMatrix;
using exact::RatMatrix;

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix cmatrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows", 0);
  const auto n = static_cast<Eigen::Index>(j.size());
  const auto m = static_cast<Eigen::Index>(j[0].size());
  CMatrix out(n, m);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) throw ParseError("ragged matrix row", 0);
    for (Eigen::Index c = 0; c < m; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError("matrix entry must be [re, im]", 0);
      }
      out(r, c) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return out;
}

json to_json(const ExactMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(exact::rat_str(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix exact_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("exact matrix must be a non-empty array of rows", 0);
  ExactMatrix out(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != out.cols()) throw ParseError("ragged matrix row", 0);
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = Cyc::parse(j[r][c].get<std::string>());
  }
  return out;
}

namespace {

json matrices(const std::vector<CMatrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

json poly(const std::vector<Cyc>& p) {
  json out = json::array();
  for (const auto& c : p) out.push_back(c.str());
  return out;
}

json membership(const MembershipReport& m) {
  return {{"member", m.member},
          {"unitarity_defect", m.unitarity_defect},
          {"det_defect", m.det_defect},
          {"form_defect", m.form_defect}};
}

json rat_matrix_pair(const RatMatrix& a, const RatMatrix& b) { return {{"A", to_json(a)}, {"B", to_json(b)}}; }

}  // namespace

json certificate_to_json(const FactorizationCert& c) {
  json j;
  j["group"] = c.ctx.str();
  j["words"] = {{"w1", print_word(c.w1)}, {"w2", print_word(c.w2)}};
  j["target"] = to_json(c.target);
  j["witnesses_A"] = matrices(c.witnesses_a);
  j["witnesses_B"] = matrices(c.witnesses_b);
  j["conjugators"] = {{"c0", to_json(c.c0)}, {"q", to_json(c.q)}, {"c0_inv_t", to_json(c.c0.adjoint() * c.t.matrix())}};
  j["torus_data"] = {{"angles", c.torus_point.angles},
                     {"goto_x", to_json(c.goto_x)},
                     {"t_angles", c.t.angles},
                     {"target_angle", c.target_angle}};
  j["residual"] = c.residual;
  j["conjugation_defect"] = c.conjugation_defect;
  j["witness_defect"] = c.witness_defect;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["exact"] = c.exact;
  j["ok"] = c.ok;
  return j;
}

VerifyResult verify_certificate(const json& cert) {
  VerifyResult v;
  try {
    const GroupCtx ctx = GroupCtx::parse(cert.at("group").get<std::string>());
    const Word w1 = parse_word(cert.at("words").at("w1").get<std::string>());
    const Word w2 = parse_word(cert.at("words").at("w2").get<std::string>());
    const CMatrix target = cmatrix_from_json(cert.at("target"));
    std::vector<CMatrix> a, b;
    for (const auto& m : cert.at("witnesses_A")) a.push_back(cmatrix_from_json(m));
    for (const auto& m : cert.at("witnesses_B")) b.push_back(cmatrix_from_json(m));
    v.tol = cert.at("tol").get<double>();
    v.stored_residual = cert.at("residual").get<double>();
    if (!(v.tol > 0)) throw ParseError("tol must be positive", 0);
    for (const auto* set : {&a, &b})
      for (const auto& m : *set)
        if (m.rows() != ctx.dim() || m.cols() != ctx.dim()) throw DimensionError("witness has the wrong size");
    if (target.rows() != ctx.dim() || target.cols() != ctx.dim()) throw DimensionError("target has the wrong size");

    v.residual = (evaluate<CMatrix>(w1, a) * evaluate<CMatrix>(w2, b) - target).norm();
    for (const auto* set : {&a, &b}) {
      for (const auto& m : *set) {
        const MembershipReport r = member(ctx, m, 1.0);
        v.witness_defect = std::max({v.witness_defect, r.unitarity_defect, r.det_defect, r.form_defect});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what(), 0);
  }
  const bool res_ok = v.residual <= v.tol;
  const bool wit_ok = v.witness_defect <= 10 * v.tol;
  v.ok = res_ok && wit_ok;
  if (v.ok) {
    v.message = "verified";
  } else if (!res_ok) {
    v.message = "residual " + std::to_string(v.residual) + " exceeds tol";
  } else {
    v.message = "witness membership defect " + std::to_string(v.witness_defect) + " exceeds 10 tol";
  }
  return v;
}

json to_json(const GotoReport& r) {
  return {{"group", r.ctx.str()},
          {"membership", membership(r.membership)},
          {"ad", to_json(r.ad)},
          {"det_ad_minus_one", exact::rat_str(r.det_ad_minus_one)},
          {"char_poly", exact::poly_str(r.char_poly)},
          {"expected_char_poly", exact::poly_str(r.expected_char_poly)},
          {"principal_char_poly", exact::poly_str(r.principal_char_poly)},
          {"char_poly_coeffs", poly(r.char_poly)},
          {"matches_expected", r.matches_expected},
          {"matches_principal", r.matches_principal},
          {"has_eigenvalue_one", r.has_eigenvalue_one},
          {"ok", r.ok}};
}

json to_json(const PrincipalEmbed& e) {
  return {{"group", e.ctx().str()},
          {"sym_degree", e.sym_degree},
          {"trivial_summand", e.trivial_summand},
          {"weights", e.weights},
          {"form", to_json(e.form)},
          {"basis_change", to_json(e.basis_change)}};
}

json to_json(const OracleReport& r) {
  return {{"p", r.p},
          {"w1", print_word(r.w1)},
          {"w2", print_word(r.w2)},
          {"group_order", r.group_order},
          {"image1_size", r.image1_size},
          {"image2_size", r.image2_size},
          {"exhaustive", r.exhaustive},
          {"covered", r.covered},
          {"coverage", coverage_str(r.coverage)},
          {"identity_covered", r.identity_covered},
          {"minus_identity_covered", r.minus_identity_covered},
          {"minus_identity_in_image1", r.minus_identity_in_image1},
          {"minus_identity_in_image2", r.minus_identity_in_image2},
          {"images_conjugation_closed", r.images_conjugation_closed},
          {"millis", r.millis}};
}

json to_json(const CentralSquares& s) {
  return {{"n", s.n},
          {"r", s.r.str()},
          {"p_is_identity", s.p_is_identity},
          {"P", to_json(s.p)},
          {"Q", to_json(s.q)},
          {"exact", true}};
}

json to_json(const PreimageResult& r) {
  json q = json::array();
  for (const auto& x : r.quaternions) q.push_back(x);
  return {{"word", print_word(r.word)},
          {"target_angle", r.target_angle},
          {"found", r.found},
          {"analytic", r.analytic},
          {"quaternions", q},
          {"witnesses", matrices(r.witnesses)},
          {"residual", r.residual},
          {"restarts_used", r.restarts_used}};
}

json to_json(const DiscriminantReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json args = json::array();
    for (const auto& m : s.args) args.push_back(to_json(m));
    samples.push_back({{"args", args},
                       {"trace", exact::rat_str(s.trace)},
                       {"delta", exact::rat_str(s.delta)},
                       {"root", exact::rat_str(s.root)}});
  }
  return {{"word", print_word(r.word)},
          {"requested", r.requested},
          {"height", r.height},
          {"found", r.samples.size()},
          {"tuples_scanned", r.tuples_scanned},
          {"complete", r.complete},
          {"samples", samples}};
}

json to_json(const Prop41Report& r) {
  json sols = json::array();
  for (const auto& [a, b] : r.solutions) sols.push_back(rat_matrix_pair(a, b));
  json near = json::array();
  for (const auto& m : r.near_misses) {
    json e = rat_matrix_pair(m.a, m.b);
    e["trace_gap"] = exact::rat_str(m.trace_gap);
    e["eigen_ratio_defect"] = m.eigen_ratio_defect;
    near.push_back(std::move(e));
  }
  return {{"bound", r.bound},
          {"matrices", r.matrices},
          {"pairs", r.pairs},
          {"solutions", sols},
          {"trace_coincidences", r.trace_coincidences},
          {"near_misses", near},
          {"zeta8_degree", r.zeta8_degree}};
}

json to_json(const Zeta4Report& r) {
  return {{"word", print_word(r.word)},
          {"found", r.found},
          {"preimage", to_json(r.preimage)},
          {"note", r.found ? "zeta_4 lies in w(SU(2)); the width-two covering property follows for this word"
                           : "no preimage of zeta_4 found within budget"}};
}

}  // namespace waring
