#include "freediv/json_io.hpp"

#include <charconv>

#include "freediv/parse.hpp"

namespace freediv {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json vars_to_json(const VarContext& ctx) { return ctx.names(); }

VarContext vars_from_json(const Json& j) {
  if (!j.is_array()) throw PreconditionError("vars must be an array of names");
  std::vector<std::string> names;
  for (const auto& v : j) {
    if (!v.is_string() || !is_identifier(v.get<std::string>()))
      throw PreconditionError("invalid variable name in vars");
    names.push_back(v.get<std::string>());
  }
  return VarContext(std::move(names));
}

Json matrix_to_json(const PolyMatrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    entries.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

PolyMatrix matrix_from_json(const Json& j, const VarContext& ctx) {
  if (!j.is_object() || !j.contains("entries")) throw PreconditionError("matrix JSON needs an entries array");
  const Json& e = j.at("entries");
  if (!e.is_array()) throw PreconditionError("matrix entries must be an array of rows");
  const std::size_t rows = e.size();
  const std::size_t cols = rows ? e.at(0).size() : 0;
  if (j.contains("rows") && j.at("rows").get<std::size_t>() != rows)
    throw PreconditionError("matrix rows field disagrees with the entries");
  if (j.contains("cols") && j.at("cols").get<std::size_t>() != cols)
    throw PreconditionError("matrix cols field disagrees with the entries");
  PolyMatrix m(ctx, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!e[r].is_array() || e[r].size() != cols) throw PreconditionError("ragged matrix row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& cell = e[r][c];
      if (cell.is_number_integer()) {
        m.set(r, c, Polynomial::constant(ctx, Rational(cell.get<long>())));
      } else if (cell.is_string()) {
        m.set(r, c, parse_polynomial(cell.get<std::string>(), ctx));
      } else {
        throw PreconditionError("matrix entries must be polynomial strings");
      }
    }
  }
  return m;
}

Json certificate_to_json(const SaitoCertificate& c) {
  Json lq = Json::array();
  for (const auto& q : c.log_quotients) lq.push_back(to_string(q));
  return {{"vars", vars_to_json(c.divisor.context())},
          {"f", to_string(c.divisor)},
          {"matrix", matrix_to_json(c.matrix)},
          {"det_scalar", to_string(c.det_scalar)},
          {"log_quotients", std::move(lq)},
          {"status", "verified"}};
}

Json failure_to_json(const SaitoFailure& f) {
  Json out = {{"status", "failed"}, {"kind", to_string(f.kind)}, {"detail", f.detail}};
  out["column"] = f.column ? Json(*f.column) : Json(nullptr);
  return out;
}

Json euler_field_to_json(const EulerField& e) {
  Json out = Json::array();
  for (const auto& q : e.coefficients) out.push_back(to_string(q));
  return out;
}

Json hilbert_burch_to_json(const HilbertBurch& hb) {
  return {{"matrix", matrix_to_json(hb.matrix)}, {"scalar", to_string(hb.scalar)}};
}

Json binomial_to_json(const BinomialClassification& c, const VarContext& ctx) {
  auto names = [&](const std::vector<std::size_t>& idx) {
    Json out = Json::array();
    for (auto i : idx) out.push_back(ctx.name(i));
    return out;
  };
  Json out = {{"verdict", to_string(c.verdict)},
              {"homogeneous", c.homogeneous},
              {"missing_m", names(c.missing_m)},
              {"missing_n", names(c.missing_n)},
              {"reason", c.reason}};
  out["certificate"] = c.certificate ? certificate_to_json(*c.certificate) : Json(nullptr);
  return out;
}

Json report_to_json(const ObstructionReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"verdict", c.verdict}, {"witness", c.witness}});
  Json out = {{"candidate", to_string(r.candidate)},
              {"vars", vars_to_json(r.candidate.context())},
              {"checks", std::move(checks)},
              {"conclusion", to_string(r.conclusion)},
              {"justification", to_string(r.justification)}};
  out["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : Json(nullptr);
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  out.push_back(cur);
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& item : split(text, ',')) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size())
      throw ParseError("expected an integer in '" + text + "'", 0);
    out.push_back(v);
  }
  return out;
}

}  // namespace freediv
