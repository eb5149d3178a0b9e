#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "collig/colligation.hpp"
#include "collig/divisor.hpp"
#include "collig/invariants.hpp"
#include "collig/verify.hpp"

namespace collig {

// JSON documents for the CLI: colligations, matrices, fingerprints, divisor
// summaries. Plain nlohmann::json keeps object keys sorted, which makes every
// emitted document canonical; parsing validates and reports InputError.

using Json = nlohmann::json;

// A parsed colligation is exact or float depending on the document's "mode".
using ColligationVar =
    std::variant<Colligation<ExactScalar>, Colligation<Cx>>;

Mode parse_mode(const std::string& s);
Flavor parse_flavor(const std::string& s);

Json scalar_to_json(const ExactScalar& v);
Json scalar_to_json(const Cx& v);
ExactScalar exact_scalar_from_json(const Json& j);
Cx float_scalar_from_json(const Json& j);

Json mat_to_json(const Mat<ExactScalar>& m);
Json mat_to_json(const Mat<Cx>& m);
Mat<ExactScalar> exact_mat_from_json(const Json& j);
Mat<Cx> float_mat_from_json(const Json& j);

// {"alpha":., "m":., "N":., "mode":., "flavor":., "entries":[[..],..]} with
// the full (alpha+mN)^2 matrix row-major; exact entries as strings, float
// entries as [re, im] pairs.
Json colligation_to_json(const Colligation<ExactScalar>& C);
Json colligation_to_json(const Colligation<Cx>& C);
ColligationVar colligation_from_json(const Json& j);

// Key spellings used in fingerprint documents.
std::string cwb_key_str(const CwbKey& key);

Json fingerprint_to_json(const InvariantFingerprint<ExactScalar>& fp);
Json fingerprint_to_json(const InvariantFingerprint<Cx>& fp);

Json poly_to_json(const SparsePoly<ExactScalar>& p);
Json divisor_summary_to_json(const DivisorSummary& s);

// Suite report with per-case entries and summary counts; residual appears
// only on cases that measured one.
Json report_to_json(const Report& r);

// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const Json& j);

}  // namespace collig
