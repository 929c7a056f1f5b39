#pragma once

// JSON artifacts: certificates, their self-contained verification, and
// report encodings for every CLI subcommand. Floats are written in shortest
// round-trip form, so reading back yields the same doubles.

#include <string>

#include "json.hpp"
#include "waring/factorize.hpp"
#include "waring/goto.hpp"
#include "waring/oracle.hpp"
#include "waring/principal.hpp"
#include "waring/search.hpp"

namespace waring {

using json = nlohmann::ordered_json;

/// Rows of [re, im] pairs.
json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const json& j);
/// Rows of exact strings ("p/q" or "zeta:k:[...]").
json to_json(const exact::ExactMatrix& m);
json to_json(const exact::RatMatrix& m);
exact::ExactMatrix exact_matrix_from_json(const json& j);

/// {group, words, target, witnesses_A, witnesses_B, conjugators, torus_data,
///  residual, seed, exact, ...}
json certificate_to_json(const FactorizationCert& c);

struct VerifyResult {
  bool ok = false;
  double residual = 0.0;          // recomputed from the stored witnesses
  double stored_residual = 0.0;
  double witness_defect = 0.0;    // worst membership defect over stored witnesses
  double tol = 0.0;
  std::string message;
};

/// Re-evaluates the stored words on the stored witnesses and compares with
/// the stored target. Uses nothing from the pipeline. Throws ParseError on a
/// malformed certificate.
VerifyResult verify_certificate(const json& cert);

json to_json(const GotoReport& r);
json to_json(const PrincipalEmbed& e);
json to_json(const OracleReport& r);
json to_json(const CentralSquares& s);
json to_json(const PreimageResult& r);
json to_json(const DiscriminantReport& r);
json to_json(const Prop41Report& r);
json to_json(const Zeta4Report& r);

}  // namespace waring
