#include "freediv/obstruction.hpp"

#include <algorithm>

#include "freediv/linalg.hpp"
#include "freediv/parse.hpp"

namespace freediv {

namespace {

using nlohmann::json;

std::uint32_t require_form(const Polynomial& f, const char* what) {
  if (f.is_zero()) throw PreconditionError(std::string(what) + ": f is zero");
  auto k = homogeneous_degree(f);
  if (!k) throw PreconditionError(std::string(what) + ": f is not homogeneous");
  if (*k < 1) throw PreconditionError(std::string(what) + ": f has degree 0");
  return static_cast<std::uint32_t>(*k);
}

Polynomial monomial_of(const VarContext& ctx, const std::set<std::size_t>& vars) {
  Exponents e(ctx.size(), 0);
  for (std::size_t i : vars) {
    if (i >= ctx.size()) throw PreconditionError("variable index out of range");
    e[i] = 1;
  }
  return Polynomial::monomial(ctx, std::move(e));
}

json rational_list(const QVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

json functional_json(const Polynomial& like, const MembershipWitness& w) {
  json out = json::array();
  for (std::size_t i = 0; i < w.monomials.size(); ++i) {
    if (sgn(w.functional[i]) == 0) continue;
    out.push_back({{"monomial", to_string(Polynomial::monomial(like.context(), w.monomials[i]))},
                   {"value", to_string(w.functional[i])}});
  }
  return out;
}

}  // namespace

std::vector<Polynomial> xifi_generators(const Polynomial& f) {
  require_form(f, "xifi_generators");
  std::vector<Polynomial> out;
  const auto grad = gradient(f);
  for (std::size_t i = 0; i < f.num_vars(); ++i) out.push_back(Polynomial::variable(f.context(), i) * grad[i]);
  return out;
}

std::vector<Polynomial> xifi_hat_generators(const Polynomial& f) {
  auto out = xifi_generators(f);
  for (auto& g : out) g += f;
  return out;
}

bool generates_within(const std::vector<Polynomial>& elements, const std::vector<Polynomial>& gens) {
  return std::all_of(elements.begin(), elements.end(),
                     [&](const Polynomial& e) { return graded_membership(e, gens).has_value(); });
}

XifiIdealComparison compare_xifi_ideals(const Polynomial& f) {
  XifiIdealComparison out;
  out.xifi = xifi_generators(f);
  out.hat = xifi_hat_generators(f);
  out.same_ideal = true;
  auto express = [&](const std::vector<Polynomial>& from, const std::vector<Polynomial>& in,
                     std::vector<std::vector<Polynomial>>& sink) {
    for (const auto& p : from) {
      auto h = graded_membership(p, in);
      if (!h) {
        out.same_ideal = false;
        sink.emplace_back();
      } else {
        sink.push_back(std::move(*h));
      }
    }
  };
  express(out.hat, out.xifi, out.hat_in_xifi);
  express(out.xifi, out.hat, out.xifi_in_hat);
  return out;
}

ScalarMembership scalar_membership_obstruction(const Polynomial& f) {
  ScalarMembership out;
  out.k = require_form(f, "scalar_membership_obstruction");
  out.n = f.num_vars();
  const std::size_t v = std::min(out.k, out.n);
  std::set<std::size_t> first;
  for (std::size_t i = 0; i < v; ++i) first.insert(i);
  out.target = monomial_of(f.context(), first);
  if (out.k > out.n) {
    out.by_degree = true;
    return out;
  }
  const auto gens = xifi_generators(f);
  if (auto h = graded_membership(out.target, gens)) {
    out.member = true;
    QVector lambda;
    for (const auto& hi : *h) lambda.push_back(hi.constant_value());
    out.lambda = std::move(lambda);
  } else {
    out.inconsistency = graded_nonmembership_witness(out.target, gens);
    if (!out.inconsistency) throw CrossCheckError("non-membership without an inconsistency witness");
  }
  return out;
}

bool monomial_graded_membership(const std::set<std::size_t>& A, const Polynomial& f) {
  const std::uint32_t k = require_form(f, "monomial_graded_membership");
  if (A.size() < k) return false;
  return graded_membership(monomial_of(f.context(), A), xifi_generators(f)).has_value();
}

SmoothnessRefuted::SmoothnessRefuted(std::size_t axis, const std::string& name)
    : PreconditionError("smoothness assertion refuted at " + name + "-axis"), axis_(axis) {}

Rational char_value_of_map(const std::vector<std::size_t>& j_map, const Rational& t) {
  const std::size_t n = j_map.size();
  std::vector<QVector> m(n, QVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] -= t;
    // h(e_i) = e_{j(i)}: column i has its 1 in row j(i)
    m[j_map[i]][i] += 1;
  }
  return determinant(std::move(m));
}

ExponentIndependence exponent_independence(const Polynomial& f) {
  ExponentIndependence out;
  out.k = require_form(f, "exponent_independence");
  if (out.k < 2) throw PreconditionError("exponent_independence needs degree at least 2");
  const std::size_t n = f.num_vars();
  std::vector<QVector> exps;
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < n && !found; ++j) {
      Exponents e(n, 0);
      e[i] += static_cast<std::uint32_t>(out.k - 1);
      e[j] += 1;
      if (f.terms().count(e)) {
        found = j;
        QVector row;
        for (auto x : e) row.push_back(Rational(x));
        exps.push_back(std::move(row));
      }
    }
    if (!found) throw SmoothnessRefuted(i, f.context().name(i));
    out.j_map.push_back(*found);
  }
  out.det_value = char_value_of_map(out.j_map, -Rational(static_cast<long>(out.k) - 1));
  out.rank = rank(exps);
  out.independent = sgn(out.det_value) != 0;
  if (out.independent != (out.rank == n))
    throw CrossCheckError("exponent determinant " + to_string(out.det_value) + " disagrees with rank " +
                          std::to_string(out.rank));
  return out;
}

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::NotFree: return "not_free";
    case Conclusion::FreeCertificate: return "free_certificate";
    case Conclusion::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Justification j) {
  switch (j) {
    case Justification::None: return "none";
    case Justification::Euler3Criterion: return "three-variable Euler criterion";
    case Justification::BinomialNecessity: return "binomial necessity";
    case Justification::XifiChain: return "xifi syzygy transfer with forced non-membership";
  }
  return "?";
}

const ObstructionCheck* ObstructionReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ObstructionReport smooth_times_nc_verdict(const Polynomial& f, const std::vector<Polynomial>& ells,
                                          bool smooth_asserted) {
  const std::uint32_t k = require_form(f, "smooth_times_nc_verdict");
  const VarContext& ctx = f.context();
  const std::size_t n = ctx.size();
  if (ells.size() != n) throw PreconditionError("expected " + std::to_string(n) + " linear forms");

  std::vector<QVector> L(n, QVector(n, Rational(0)));
  Polynomial product = Polynomial::constant(ctx, 1);
  for (std::size_t i = 0; i < n; ++i) {
    require_same_context(ells[i], f, "smooth_times_nc_verdict");
    for (const auto& [e, c] : ells[i].terms()) {
      if (total_degree(e) != 1) throw PreconditionError("form " + to_string(ells[i]) + " is not linear");
      const auto at = std::find(e.begin(), e.end(), 1u) - e.begin();
      L[i][static_cast<std::size_t>(at)] = c;
    }
    if (ells[i].is_zero()) throw PreconditionError("zero linear form");
    product *= ells[i];
  }
  const Rational detL = determinant(L);
  if (sgn(detL) == 0) throw PreconditionError("linear forms are dependent");
  auto Linv = inverse(L);
  if (!Linv) throw CrossCheckError("nonzero determinant but no inverse");

  // old x_j = sum_i Linv[j][i] * l_i, with l_i renamed to x_i
  std::vector<Polynomial> old_in_new;
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial p(ctx);
    for (std::size_t i = 0; i < n; ++i) p += Polynomial::variable(ctx, i) * (*Linv)[j][i];
    old_in_new.push_back(std::move(p));
  }
  const Polynomial ft = substitute(f, old_in_new);
  for (std::size_t i = 0; i < n; ++i)
    if (!(substitute(ells[i], old_in_new) == Polynomial::variable(ctx, i)))
      throw CrossCheckError("coordinate change does not send the forms to the variables");

  ObstructionReport r{product * f, {}, Conclusion::Inconclusive, Justification::None, std::nullopt};
  r.checks.push_back({"coordinate_change", "holds", {{"transformed_f", to_string(ft)}, {"det", to_string(detL)}}});

  const bool hypotheses = k > 2 && n > 2;
  r.checks.push_back({"hypotheses", hypotheses ? "holds" : "not_applicable",
                      {{"k", k}, {"n", n}, {"requires", "k > 2 and n > 2"}}});

  const ScalarMembership m = scalar_membership_obstruction(ft);
  json mw = {{"target", to_string(m.target)}, {"by_degree", m.by_degree}};
  if (m.lambda) mw["lambda"] = rational_list(*m.lambda);
  if (m.inconsistency) mw["functional"] = functional_json(ft, *m.inconsistency);
  r.checks.push_back({"scalar_membership", m.member ? "holds" : "violated", mw});

  bool independent = false;
  bool refuted = false;
  if (k >= 2) {
    try {
      const ExponentIndependence x = exponent_independence(ft);
      independent = x.independent;
      json jm = json::array();
      for (auto j : x.j_map) jm.push_back(j);
      r.checks.push_back({"exponent_independence", independent ? "confirmed" : "failed",
                          {{"j_map", jm},
                           {"t", to_string(-Rational(static_cast<long>(k) - 1))},
                           {"det_value", to_string(x.det_value)},
                           {"rank", x.rank}}});
    } catch (const SmoothnessRefuted& e) {
      refuted = true;
      r.checks.push_back({"exponent_independence", smooth_asserted ? "refuted" : "failed",
                          {{"axis", e.axis()}, {"message", e.what()}}});
    }
  } else {
    r.checks.push_back({"exponent_independence", "not_applicable", {{"k", k}}});
  }
  r.checks.push_back({"smoothness", smooth_asserted ? (refuted ? "refuted" : "asserted") : "not_asserted", json::object()});

  if (smooth_asserted && hypotheses && !refuted && !m.member && independent) {
    r.conclusion = Conclusion::NotFree;
    r.justification = Justification::XifiChain;
  }
  check_report_invariants(r);
  return r;
}

ObstructionReport xifi_certificate_report(const Polynomial& f, std::uint32_t bound) {
  require_form(f, "xifi_certificate_report");
  const VarContext& ctx = f.context();
  Polynomial g = f;
  for (std::size_t i = 0; i < ctx.size(); ++i) g *= Polynomial::variable(ctx, i);
  ObstructionReport r{g, {}, Conclusion::Inconclusive, Justification::None, std::nullopt};
  auto S = xifi_syzygy_candidate(f, bound);
  if (!S) {
    r.checks.push_back({"xifi_syzygies", "failed", {{"bound", bound}}});
    return r;
  }
  SaitoResult res = saito_from_xifi(f, *S);
  if (auto* fail = std::get_if<SaitoFailure>(&res)) {
    r.checks.push_back({"xifi_syzygies", "failed", {{"bound", bound}, {"detail", describe(*fail)}}});
    return r;
  }
  r.certificate = std::get<SaitoCertificate>(std::move(res));
  r.checks.push_back({"xifi_syzygies", "holds", {{"bound", bound}, {"count", S->cols()}}});
  r.conclusion = Conclusion::FreeCertificate;
  check_report_invariants(r);
  return r;
}

ObstructionReport binomial_report(const Polynomial& F) {
  const BinomialClassification c = is_free_binomial(F);
  ObstructionReport r{F, {}, Conclusion::Inconclusive, Justification::None, c.certificate};
  json w = {{"homogeneous", c.homogeneous}, {"reason", c.reason}};
  json mm = json::array(), mn = json::array();
  for (auto i : c.missing_m) mm.push_back(F.context().name(i));
  for (auto i : c.missing_n) mn.push_back(F.context().name(i));
  w["missing_m"] = mm;
  w["missing_n"] = mn;
  switch (c.verdict) {
    case BinomialVerdict::Free:
      r.checks.push_back({"binomial_conditions", "holds", w});
      r.conclusion = Conclusion::FreeCertificate;
      break;
    case BinomialVerdict::NotFree:
      r.checks.push_back({"binomial_conditions", "violated", w});
      r.conclusion = Conclusion::NotFree;
      r.justification = Justification::BinomialNecessity;
      break;
    case BinomialVerdict::Unknown:
      r.checks.push_back({"binomial_conditions", "not_applicable", w});
      break;
  }
  check_report_invariants(r);
  return r;
}

ObstructionReport euler3_report(const Polynomial& f, const EulerField& e) {
  const Euler3Result res = euler3_divisor(f, e);
  ObstructionReport r{f, {}, Conclusion::Inconclusive, Justification::None, res.certificate};
  json w = {{"case", to_string(res.verdict)}, {"reason", res.reason}};
  switch (res.verdict) {
    case Euler3Verdict::NotFree:
      r.checks.push_back({"jacobian_condition", "violated", w});
      r.conclusion = Conclusion::NotFree;
      r.justification = Justification::Euler3Criterion;
      break;
    case Euler3Verdict::Free:
    case Euler3Verdict::Suspension:
      r.checks.push_back({"jacobian_condition", "holds", w});
      if (r.certificate) r.conclusion = Conclusion::FreeCertificate;
      break;
  }
  check_report_invariants(r);
  return r;
}

void check_report_invariants(const ObstructionReport& r) {
  if (r.conclusion == Conclusion::NotFree) {
    if (r.justification == Justification::None) throw CrossCheckError("NotFree without a justification");
    const bool violated = std::any_of(r.checks.begin(), r.checks.end(),
                                      [](const ObstructionCheck& c) { return c.verdict == "violated"; });
    if (!violated) throw CrossCheckError("NotFree without a violated check");
    if (r.certificate) throw CrossCheckError("NotFree report carries a Saito certificate");
  }
  if (r.conclusion == Conclusion::FreeCertificate && !r.certificate)
    throw CrossCheckError("FreeCertificate report without a certificate");
}

}  // namespace freediv
