#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "freediv/families.hpp"
#include "freediv/graded.hpp"
#include "freediv/obstruction.hpp"
#include "freediv/saito.hpp"

namespace freediv {

using Json = nlohmann::json;

/// Objects keep their keys sorted; two-space indentation, trailing newline.
std::string dump(const Json& j);

Json vars_to_json(const VarContext& ctx);
VarContext vars_from_json(const Json& j);

/// {"rows": n, "cols": m, "entries": [[poly, ...], ...]}
Json matrix_to_json(const PolyMatrix& m);
/// Throws ParseError on malformed entries, PreconditionError on a shape mismatch.
PolyMatrix matrix_from_json(const Json& j, const VarContext& ctx);

/// {"vars", "f", "matrix", "det_scalar", "log_quotients", "status": "verified"}
Json certificate_to_json(const SaitoCertificate& c);
/// {"status": "failed", "kind", "column", "detail"}
Json failure_to_json(const SaitoFailure& f);

Json euler_field_to_json(const EulerField& e);
Json hilbert_burch_to_json(const HilbertBurch& hb);
Json binomial_to_json(const BinomialClassification& c, const VarContext& ctx);
Json report_to_json(const ObstructionReport& r);

/// Comma-separated lists as they appear on the command line.
std::vector<std::string> split(const std::string& text, char sep);
std::vector<std::int64_t> parse_int_list(const std::string& text);

}  // namespace freediv
