#include "freediv/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "freediv/parse.hpp"

namespace freediv {

namespace {

Rational rational_of(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw PreconditionError("expected a rational as an integer or a string");
}

template <typename T>
std::vector<T> list_of(const Json& params, const char* key) {
  if (!params.contains(key)) throw PreconditionError(std::string("missing parameter '") + key + "'");
  return params.at(key).get<std::vector<T>>();
}

std::vector<std::uint32_t> unsigned_list(const Json& params, const char* key) {
  std::vector<std::uint32_t> out;
  for (auto v : list_of<std::int64_t>(params, key)) {
    if (v < 0) throw PreconditionError(std::string("negative entry in '") + key + "'");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

// Polynomial from {"f": expr, "vars": [...]}; inferred order when vars is absent.
Polynomial poly_param(const Json& params, const char* key, const char* vars_key = "vars") {
  if (!params.contains(key)) throw PreconditionError(std::string("missing parameter '") + key + "'");
  const std::string text = params.at(key).get<std::string>();
  if (params.contains(vars_key)) return parse_polynomial(text, vars_from_json(params.at(vars_key)));
  return parse_polynomial(text);
}

Weight weight_param(const Json& params, std::size_t n) {
  if (!params.contains("weights")) return Weight::standard(n);
  Weight w{params.at("weights").get<std::vector<std::int64_t>>()};
  if (w.entries.size() != n) throw PreconditionError("weights need one entry per variable");
  return w;
}

Polynomial rename_into(const Polynomial& p, const VarContext& target) {
  std::vector<Polynomial> image;
  for (std::size_t i = 0; i < target.size(); ++i) image.push_back(Polynomial::variable(target, i));
  return substitute(p, image);
}

Json poly_list(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

SaitoCertificate first_certificate(const Polynomial& f, const char* what) {
  AutoOutcome o = auto_certify(f);
  if (o.certificates.empty())
    throw PreconditionError(std::string("no Saito certificate found for the ") + what + " " + to_string(f));
  return o.certificates.front().certificate;
}

Polynomial product_of_vars(const VarContext& ctx) {
  Polynomial p = Polynomial::constant(ctx, 1);
  for (std::size_t i = 0; i < ctx.size(); ++i) p *= Polynomial::variable(ctx, i);
  return p;
}

}  // namespace

// ------------------------------------------------------------- constructors

FramedDivisor frame_from_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw PreconditionError("empty frame spec");
  const std::string& kind = parts[0];
  if (kind == "nc" && parts.size() == 2) return normal_crossing_frame(VarContext(split(parts[1], ',')));
  if (kind == "curve" && parts.size() == 3) {
    const Polynomial f = parse_polynomial(parts[1]);
    if (f.num_vars() != 2) throw PreconditionError("curve frame needs two variables");
    std::vector<std::int64_t> w = parse_int_list(parts[2]);
    return frame_single(plane_curve_seed(f, Weight{w}), Weight{w});
  }
  if (kind == "brieskorn" && parts.size() == 3) {
    std::vector<std::uint32_t> t;
    for (auto v : parse_int_list(parts[1])) {
      if (v < 1) throw PreconditionError("brieskorn exponents must be positive");
      t.push_back(static_cast<std::uint32_t>(v));
    }
    if (t.size() != 2) throw PreconditionError("a brieskorn frame has a single factor: give two exponents");
    const FactoredDivisor g = brieskorn_chain(t);
    const VarContext ctx(indexed_names(parts[2], 2));
    PolyMatrix m(ctx, 2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) m.set(r, c, rename_into(g.matrix()(r, c), ctx));
    const FactoredDivisor renamed = make_factored({rename_into(g.factors[0], ctx)}, m, "brieskorn frame");
    const std::int64_t L = std::lcm<std::int64_t>(t[0], t[1]);
    const Weight w{{L / t[0], L / t[1]}};
    return frame_single(renamed, w);
  }
  throw PreconditionError("unknown frame spec '" + spec + "'");
}

SaitoCertificate transport_certificate(const SaitoCertificate& c, const Polynomial& f) {
  const VarContext& from = c.divisor.context();
  const VarContext& to = f.context();
  if (from == to) return require_saito(f, c.matrix, "transported certificate");
  if (from.size() != to.size()) throw PreconditionError("certificate and polynomial have different variables");
  PolyMatrix m(to, to.size(), c.matrix.cols());
  for (std::size_t i = 0; i < to.size(); ++i) {
    auto src = from.index_of(to.name(i));
    if (!src) throw PreconditionError("variable " + to.name(i) + " is not in the certificate");
    for (std::size_t j = 0; j < c.matrix.cols(); ++j) m.set(i, j, c.matrix(*src, j).embed(to));
  }
  return require_saito(f, m, "transported certificate");
}

ConstructResult construct(const std::string& kind, const Json& p) {
  ConstructResult out{kind, std::nullopt, Json::object()};
  if (kind == "binomial") {
    BinomialSpec s;
    s.n = p.value("n", std::size_t{0});
    s.a = unsigned_list(p, "a");
    s.b = unsigned_list(p, "b");
    s.alpha = p.value("alpha", 1u);
    s.beta = p.value("beta", 1u);
    s.u = p.value("u", 0u);
    s.t = p.value("t", 0u);
    out.certificate = binomial_divisor(s);
  } else if (kind == "triangular") {
    const Polynomial seed = poly_param(p, "seed");
    const Weight w = weight_param(p, seed.num_vars());
    FactoredDivisor g = plane_curve_seed(seed, w);
    for (const auto& st : p.value("steps", Json::array())) {
      TriangularStep step;
      step.a = st.value("a", 1u);
      step.b = st.value("b", 1u);
      step.alpha = st.contains("alpha") ? rational_of(st.at("alpha")) : Rational(1);
      step.beta = st.contains("beta") ? rational_of(st.at("beta")) : Rational(1);
      step.new_var = st.at("var").get<std::string>();
      g = triangular_extend(g, step);
    }
    out.extra["factors"] = poly_list(g.factors);
    out.certificate = g.certificate;
  } else if (kind == "brieskorn") {
    const FactoredDivisor g = brieskorn_chain(unsigned_list(p, "t"));
    out.extra["factors"] = poly_list(g.factors);
    out.certificate = g.certificate;
  } else if (kind == "compose") {
    const FramedDivisor inner = frame_from_spec(p.at("inner").get<std::string>());
    const Polynomial H = poly_param(p, "H", "H_vars");
    SaitoCertificate hc = p.contains("H_matrix") ? require_saito(H, matrix_from_json(p.at("H_matrix"), H.context()), "H")
                                                 : first_certificate(H, "outer divisor");
    out.extra["H_certificate"] = certificate_to_json(hc);
    out.certificate = compose(inner, hc);
  } else if (kind == "sum-compose") {
    out.certificate = sum_compose(frame_from_spec(p.at("left").get<std::string>()),
                                  frame_from_spec(p.at("right").get<std::string>()));
  } else if (kind == "tangent" || kind == "jets") {
    const Polynomial f = poly_param(p, "f");
    const std::size_t n = f.num_vars();
    const Weight w = weight_param(p, n);
    const SaitoCertificate seed = first_certificate(f, "seed");
    const HilbertBurch hb = hilbert_burch_of(seed, w);
    out.extra["hilbert_burch"] = hilbert_burch_to_json(hb);
    if (kind == "tangent") {
      auto fresh = p.contains("fresh") ? p.at("fresh").get<std::vector<std::string>>() : indexed_names("y", n);
      out.certificate = tangent_extend(f, hb, w, fresh);
    } else {
      std::vector<std::vector<std::string>> fresh;
      if (p.contains("fresh")) {
        fresh = p.at("fresh").get<std::vector<std::vector<std::string>>>();
      } else {
        const std::size_t m = p.value("m", std::size_t{1});
        for (std::size_t j = 1; j <= m; ++j) fresh.push_back(indexed_names("y" + std::to_string(j) + "_", n));
      }
      out.certificate = multi_jet_extend(f, hb, w, fresh);
    }
  } else if (kind == "iterate") {
    const Polynomial f = poly_param(p, "f");
    const std::size_t n = f.num_vars();
    const Weight w = weight_param(p, n);
    const std::size_t steps = p.value("steps", std::size_t{1});
    std::vector<std::vector<std::string>> fresh;
    for (std::size_t i = 0; i < steps; ++i)
      fresh.push_back(indexed_names("t" + std::to_string(i + 1) + "_", (std::size_t{1} << i) * n));
    const auto seq = iterate_tangent(first_certificate(f, "seed"), w, fresh);
    Json s = Json::array();
    for (const auto& c : seq)
      s.push_back({{"vars", c.divisor.num_vars()}, {"degree", c.divisor.total_degree()}, {"f", to_string(c.divisor)}});
    out.extra["sequence"] = std::move(s);
    out.certificate = seq.back();
  } else if (kind == "cone") {
    std::vector<Rational> alphas;
    for (const auto& a : p.at("alphas")) alphas.push_back(rational_of(a));
    const auto r = cone_family(unsigned_list(p, "gamma"), p.at("a").get<std::uint32_t>(), p.at("b").get<std::uint32_t>(),
                               p.at("c").get<std::uint32_t>(), alphas);
    out.extra["f"] = to_string(r.f);
    out.extra["field"] = euler_field_to_json(r.field);
    out.extra["verdict"] = to_string(r.result.verdict);
    out.extra["reason"] = r.result.reason;
    out.certificate = r.result.certificate;
  } else {
    throw PreconditionError("unknown construction '" + kind + "'");
  }
  return out;
}

// ------------------------------------------------------------ auto-certify

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Free: return "free";
    case Verdict::NotFree: return "not_free";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "free") return Verdict::Free;
  if (s == "not_free") return Verdict::NotFree;
  if (s == "inconclusive") return Verdict::Inconclusive;
  throw PreconditionError("unknown expectation '" + s + "'");
}

Verdict AutoOutcome::verdict() const {
  const bool not_free = std::any_of(reports.begin(), reports.end(),
                                    [](const RouteReport& r) { return r.report.conclusion == Conclusion::NotFree; });
  if (not_free && !certificates.empty()) {
    std::string routes;
    for (const auto& c : certificates) routes += " " + c.route;
    throw CrossCheckError("certified free by" + routes + " but reported not free");
  }
  if (!certificates.empty()) return Verdict::Free;
  return not_free ? Verdict::NotFree : Verdict::Inconclusive;
}

AutoOutcome auto_certify(const Polynomial& f, const AutoOptions& opt) {
  AutoOutcome out;
  const VarContext& ctx = f.context();
  const std::size_t n = ctx.size();
  if (f.is_constant()) {
    out.notes.push_back({"input", "constant polynomial"});
    return out;
  }
  auto attempt = [&](const char* route, auto&& body) {
    try {
      body();
    } catch (const PreconditionError& e) {
      out.notes.push_back({route, e.what()});
    } catch (const VerificationError& e) {
      out.notes.push_back({route, e.what()});
    }
  };
  auto take = [&](const char* route, ObstructionReport r) {
    if (r.certificate) out.certificates.push_back({route, *r.certificate});
    out.reports.push_back({route, std::move(r)});
  };

  attempt("monomial", [&] {
    if (f.size() != 1) throw PreconditionError("more than one term");
    const Exponents& e = f.leading_exponents();
    std::vector<Polynomial> diag;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] > 1) throw PreconditionError("monomial is not squarefree");
      diag.push_back(e[i] ? Polynomial::variable(ctx, i) : Polynomial::constant(ctx, 1));
    }
    out.certificates.push_back({"monomial", require_saito(f, PolyMatrix::diagonal(diag), "monomial")});
  });
  if (f.size() == 1) return out;

  attempt("binomial", [&] { take("binomial", binomial_report(f)); });

  if (n == 3) {
    attempt("euler3", [&] {
      const AnnihilatorSpace a = euler_annihilators(f);
      if (a.basis.size() != 1)
        throw PreconditionError("annihilator space has dimension " + std::to_string(a.basis.size()));
      take("euler3", euler3_report(f, a.basis.front()));
    });
  }

  if (n == 2) {
    attempt("plane_curve", [&] {
      if (!is_squarefree(f)) throw PreconditionError("not reduced");
      const auto grad = gradient(f);
      std::vector<Polynomial> g;
      const AnnihilatorSpace a = euler_annihilators(f);
      if (a.unit_field) {
        for (std::size_t i = 0; i < 2; ++i) g.push_back(Polynomial::variable(ctx, i) * a.unit_field->coefficients[i]);
      } else {
        const std::uint32_t bound = opt.bound.value_or(default_syzygy_bound(f));
        SyzygySearch s = bounded_syzygy_solve(grad, f, bound);
        if (!s.found) throw PreconditionError("f not found in its Jacobian ideal within degree " + std::to_string(bound));
        g = s.solutions.front();
      }
      const PolyMatrix m = PolyMatrix::from_rows(ctx, {{g[0], -grad[1]}, {g[1], grad[0]}});
      out.certificates.push_back({"plane_curve", require_saito(f, m, "plane curve")});
    });
  }

  const auto h = divide_exact(f, product_of_vars(ctx));
  if (h && !h->is_constant() && homogeneous_degree(*h)) {
    attempt("xifi", [&] {
      const std::uint32_t bound = opt.bound.value_or(default_syzygy_bound(*h));
      ObstructionReport r = xifi_certificate_report(*h, bound);
      if (r.certificate) r.certificate = transport_certificate(*r.certificate, f);
      take("xifi", std::move(r));
    });
    attempt("smooth_times_nc", [&] {
      std::vector<Polynomial> xs;
      for (std::size_t i = 0; i < n; ++i) xs.push_back(Polynomial::variable(ctx, i));
      take("smooth_times_nc", smooth_times_nc_verdict(*h, xs, opt.smooth_asserted));
    });
  } else {
    out.notes.push_back({"xifi", "f is not x_1...x_n times a nonconstant form"});
  }
  return out;
}

Json outcome_to_json(const AutoOutcome& o) {
  Json certs = Json::array(), reports = Json::array(), notes = Json::array();
  for (const auto& c : o.certificates) certs.push_back({{"route", c.route}, {"certificate", certificate_to_json(c.certificate)}});
  for (const auto& r : o.reports) reports.push_back({{"route", r.route}, {"report", report_to_json(r.report)}});
  for (const auto& n : o.notes) notes.push_back({{"route", n.route}, {"message", n.message}});
  return {{"verdict", to_string(o.verdict())}, {"certificates", certs}, {"reports", reports}, {"notes", notes}};
}

Json analyze(const Polynomial& f, const AutoOptions& opt) {
  Json out = {{"vars", vars_to_json(f.context())}, {"f", to_string(f)}};
  const auto d = homogeneous_degree(f);
  out["degree"] = d ? Json(*d) : Json(nullptr);
  out["squarefree"] = is_squarefree(f);
  const AnnihilatorSpace a = euler_annihilators(f);
  Json basis = Json::array();
  for (const auto& e : a.basis) basis.push_back(euler_field_to_json(e));
  out["annihilators"] = std::move(basis);
  out["admits_nonzero_degree"] = a.admits_nonzero_degree;
  out["unit_field"] = a.unit_field ? euler_field_to_json(*a.unit_field) : Json(nullptr);
  try {
    out["binomial"] = binomial_to_json(is_free_binomial(f), f.context());
  } catch (const PreconditionError&) {
    out["binomial"] = nullptr;
  }
  out["auto"] = outcome_to_json(auto_certify(f, opt));
  return out;
}

// ------------------------------------------------------------------ corpus

std::vector<CorpusEntry> load_corpus(const Json& j) {
  if (!j.is_array()) throw PreconditionError("corpus must be a JSON array");
  std::vector<CorpusEntry> out;
  for (const auto& item : j) {
    CorpusEntry e;
    e.id = item.at("id").get<std::string>();
    e.vars = item.value("vars", std::vector<std::string>{});
    e.f = item.at("f").get<std::string>();
    if (item.contains("matrix")) e.matrix = item.at("matrix");
    if (item.contains("recipe")) e.recipe = item.at("recipe");
    e.expect = verdict_from_string(item.at("expect").get<std::string>());
    e.source = item.value("source", std::string{});
    e.smooth = item.value("smooth", false);
    out.push_back(std::move(e));
  }
  return out;
}

CorpusResult run_entry(const CorpusEntry& e) {
  CorpusResult r;
  r.id = e.id;
  r.expect = e.expect;
  r.source = e.source;
  try {
    const Polynomial f = e.vars.empty() ? parse_polynomial(e.f) : parse_polynomial(e.f, VarContext(e.vars));
    // canonical text must reparse to the same polynomial
    if (!(parse_polynomial(to_string(f), f.context()) == f)) throw CrossCheckError("print/parse round trip failed");
    AutoOutcome o;
    if (e.matrix) {
      SaitoResult res = verify_saito(f, matrix_from_json(*e.matrix, f.context()));
      if (auto* c = std::get_if<SaitoCertificate>(&res)) o.certificates.push_back({"matrix", *c});
      else o.notes.push_back({"matrix", describe(std::get<SaitoFailure>(res))});
    }
    if (e.recipe) {
      const ConstructResult c = construct(e.recipe->at("kind").get<std::string>(), e.recipe->value("params", Json::object()));
      if (c.certificate) o.certificates.push_back({"recipe", transport_certificate(*c.certificate, f)});
      else o.notes.push_back({"recipe", "construction gave no certificate"});
    }
    AutoOutcome a = auto_certify(f, AutoOptions{e.smooth, std::nullopt});
    for (auto& c : a.certificates) o.certificates.push_back(std::move(c));
    for (auto& x : a.reports) o.reports.push_back(std::move(x));
    for (auto& x : a.notes) o.notes.push_back(std::move(x));
    r.got = o.verdict();
    r.passed = *r.got == e.expect;
    std::string routes;
    for (const auto& c : o.certificates) routes += (routes.empty() ? "" : ",") + c.route;
    for (const auto& x : o.reports)
      if (x.report.conclusion == Conclusion::NotFree) routes += (routes.empty() ? "" : ",") + x.route;
    r.detail = routes.empty() ? "no deciding route" : routes;
  } catch (const Error& err) {
    r.error = err.kind();
    r.detail = err.what();
  } catch (const std::exception& err) {
    r.error = ErrorKind::CrossCheck;
    r.detail = err.what();
  }
  return r;
}

std::vector<CorpusResult> run_corpus(const std::vector<CorpusEntry>& entries, unsigned threads, std::uint64_t seed) {
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<CorpusResult> results(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < order.size();) results[order[i]] = run_entry(entries[order[i]]);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(entries.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(results.begin(), results.end(), [](const CorpusResult& a, const CorpusResult& b) { return a.id < b.id; });
  return results;
}

Json corpus_results_to_json(const std::vector<CorpusResult>& results) {
  Json out = Json::array();
  for (const auto& r : results) {
    out.push_back({{"id", r.id},
                   {"expect", to_string(r.expect)},
                   {"got", r.got ? Json(to_string(*r.got)) : Json(nullptr)},
                   {"pass", r.passed},
                   {"source", r.source},
                   {"detail", r.detail}});
  }
  return out;
}

std::string corpus_table(const std::vector<CorpusResult>& results) {
  std::size_t w = 2;
  for (const auto& r : results) w = std::max(w, r.id.size());
  std::ostringstream os;
  std::size_t passed = 0;
  auto pad = [](const std::string& s, std::size_t n) { return s + std::string(n > s.size() ? n - s.size() : 0, ' '); };
  os << pad("id", w) << "  " << pad("expect", 12) << "  " << pad("got", 12) << "  result  detail\n";
  for (const auto& r : results) {
    passed += r.passed;
    os << pad(r.id, w) << "  " << pad(to_string(r.expect), 12) << "  " << pad(r.got ? to_string(*r.got) : "error", 12)
       << "  " << (r.passed ? "PASS  " : "FAIL  ") << "  " << r.detail << "\n";
  }
  os << passed << "/" << results.size() << " entries passed\n";
  return os.str();
}

}  // namespace freediv
