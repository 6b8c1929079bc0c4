// Command-line front-end: parsing, verification, constructions, analysis,
// obstructions and the regression corpus. JSON goes to stdout, warnings to stderr.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "freediv/parse.hpp"
#include "freediv/pipeline.hpp"

using namespace freediv;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::Precondition: return 3;
    case ErrorKind::Verification: return 4;
    case ErrorKind::CrossCheck: return 5;
  }
  return 1;
}

Polynomial read_poly(const std::string& text, const std::string& vars) {
  if (!vars.empty()) return parse_polynomial(text, VarContext(split(vars, ',')));
  const Polynomial p = parse_polynomial(text);
  std::cerr << "warning: variables inferred in order of appearance: ";
  for (std::size_t i = 0; i < p.num_vars(); ++i) std::cerr << (i ? "," : "") << p.context().name(i);
  std::cerr << "\n";
  return p;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what(), e.byte);
  }
}

Json int_list(const std::string& text) { return parse_int_list(text); }

Json string_list(const std::string& text) { return split(text, ','); }

struct ConstructFlags {
  std::string params, f, vars, weights, fresh;
  // binomial
  std::size_t n = 0;
  std::string a, b;
  unsigned alpha = 1, beta = 1, u = 0, t = 0;
  // triangular
  std::string seed;
  std::vector<std::string> steps;
  // brieskorn
  std::string exponents;
  // composites
  std::string inner, H, H_vars, H_matrix, left, right;
  // jets / iterate
  std::size_t m = 1, iterations = 1;
  // cone
  std::string gamma, alphas;
  unsigned ca = 1, cb = 1, cc = 1;
};

Json construct_params(const std::string& kind, const ConstructFlags& c) {
  Json p = c.params.empty() ? Json::object() : Json::parse(c.params);
  auto put = [&](const char* key, Json v) {
    if (!p.contains(key)) p[key] = std::move(v);
  };
  if (!c.vars.empty()) put("vars", string_list(c.vars));
  if (!c.weights.empty()) put("weights", int_list(c.weights));
  if (!c.f.empty()) put("f", c.f);
  if (kind == "binomial") {
    put("n", c.n);
    put("a", c.a.empty() ? Json::array() : int_list(c.a));
    put("b", c.b.empty() ? Json::array() : int_list(c.b));
    put("alpha", c.alpha);
    put("beta", c.beta);
    put("u", c.u);
    put("t", c.t);
  } else if (kind == "triangular") {
    if (!c.seed.empty()) put("seed", c.seed);
    Json steps = Json::array();
    for (const auto& s : c.steps) {
      auto parts = split(s, ',');
      if (parts.size() != 5) throw ParseError("step must be a,b,alpha,beta,var: '" + s + "'", 0);
      steps.push_back({{"a", std::stoul(parts[0])}, {"b", std::stoul(parts[1])}, {"alpha", parts[2]}, {"beta", parts[3]},
                       {"var", parts[4]}});
    }
    if (!c.steps.empty()) put("steps", steps);
  } else if (kind == "brieskorn") {
    if (!c.exponents.empty()) put("t", int_list(c.exponents));
  } else if (kind == "compose") {
    if (!c.inner.empty()) put("inner", c.inner);
    if (!c.H.empty()) put("H", c.H);
    if (!c.H_vars.empty()) put("H_vars", string_list(c.H_vars));
    if (!c.H_matrix.empty()) put("H_matrix", read_json_file(c.H_matrix));
  } else if (kind == "sum-compose") {
    if (!c.left.empty()) put("left", c.left);
    if (!c.right.empty()) put("right", c.right);
  } else if (kind == "tangent") {
    if (!c.fresh.empty()) put("fresh", string_list(c.fresh));
  } else if (kind == "jets") {
    put("m", c.m);
  } else if (kind == "iterate") {
    put("steps", c.iterations);
  } else if (kind == "cone") {
    if (!c.gamma.empty()) put("gamma", int_list(c.gamma));
    put("a", c.ca);
    put("b", c.cb);
    put("c", c.cc);
    if (!c.alphas.empty()) put("alphas", string_list(c.alphas));
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freediv: constructions, certificates and obstructions for free divisors"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for every randomized choice (corpus dispatch order)");

  std::string f_text, vars, matrix_file, linear_forms, corpus_file = FREEDIV_CORPUS_FILE;
  bool assert_smooth = false, as_json = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a polynomial in canonical form");
  parse_cmd->add_option("--f", f_text, "Polynomial")->required();
  parse_cmd->add_option("--vars", vars, "Comma-separated variable order");

  auto* verify_cmd = app.add_subcommand("verify", "Check Saito's criterion for a matrix");
  verify_cmd->add_option("--f", f_text, "Divisor")->required();
  verify_cmd->add_option("--matrix", matrix_file, "Matrix JSON (or a certificate JSON)")->required();
  verify_cmd->add_option("--vars", vars, "Comma-separated variable order");

  auto* construct_cmd = app.add_subcommand("construct", "Run a constructor and print its certificate");
  construct_cmd->require_subcommand(1);
  ConstructFlags cf;
  std::string kind;
  auto add_kind = [&](const std::string& name, const std::string& help) {
    auto* sub = construct_cmd->add_subcommand(name, help);
    sub->add_option("--params", cf.params, "Parameters as a JSON object (flags fill missing keys)");
    sub->callback([&, name] { kind = name; });
    return sub;
  };
  auto* k_bin = add_kind("binomial", "x1...xn y^u z^t (x^a y^alpha + x^b z^beta)");
  k_bin->add_option("--n", cf.n);
  k_bin->add_option("--a", cf.a, "Exponents a_1..a_n");
  k_bin->add_option("--b", cf.b, "Exponents b_1..b_n");
  k_bin->add_option("--alpha", cf.alpha);
  k_bin->add_option("--beta", cf.beta);
  k_bin->add_option("--u", cf.u);
  k_bin->add_option("--t", cf.t);
  auto* k_tri = add_kind("triangular", "Plane curve seed extended by alpha x^a + beta F^b steps");
  k_tri->add_option("--seed", cf.seed, "Weighted homogeneous plane curve");
  k_tri->add_option("--vars", cf.vars);
  k_tri->add_option("--weights", cf.weights);
  k_tri->add_option("--step", cf.steps, "a,b,alpha,beta,var (repeatable)");
  auto* k_bri = add_kind("brieskorn", "G_2 ... G_i for x_1^t_1 + ... + x_j^t_j");
  k_bri->add_option("--t", cf.exponents, "Exponents t_1,...,t_i");
  auto* k_com = add_kind("compose", "H(f_1, ..., f_k) for a framed inner divisor");
  k_com->add_option("--inner", cf.inner, "Frame spec: nc:VARS | curve:EXPR:W | brieskorn:T:PREFIX");
  k_com->add_option("--H", cf.H, "Outer divisor in one variable per factor");
  k_com->add_option("--H-vars", cf.H_vars, "Variable order of H");
  k_com->add_option("--H-matrix", cf.H_matrix, "Saito matrix of H (JSON file)");
  auto* k_sum = add_kind("sum-compose", "f g (f + g) over disjoint variables");
  k_sum->add_option("--left", cf.left, "Frame spec of f");
  k_sum->add_option("--right", cf.right, "Frame spec of g");
  for (auto* sub : {add_kind("tangent", "f f* over fresh variables"), add_kind("jets", "f f*1 ... f*m"),
                    add_kind("iterate", "F_{i+1} = F_i F_i*")}) {
    sub->add_option("--f", cf.f, "Weighted homogeneous free divisor");
    sub->add_option("--vars", cf.vars);
    sub->add_option("--weights", cf.weights);
    if (sub->get_name() == "tangent") sub->add_option("--fresh", cf.fresh, "Names of the new variables");
    if (sub->get_name() == "jets") sub->add_option("--m", cf.m, "Number of jet groups");
    if (sub->get_name() == "iterate") sub->add_option("--steps", cf.iterations, "Number of tangent steps");
  }
  auto* k_cone = add_kind("cone", "x^g1 y^g2 z^g3 prod (x^a - alpha_i y^b z^c)");
  k_cone->add_option("--gamma", cf.gamma, "g1,g2,g3");
  k_cone->add_option("--a", cf.ca);
  k_cone->add_option("--b", cf.cb);
  k_cone->add_option("--c", cf.cc);
  k_cone->add_option("--alphas", cf.alphas, "Comma-separated rationals");

  auto* analyze_cmd = app.add_subcommand("analyze", "Euler annihilators, homogeneity and every certification route");
  analyze_cmd->add_option("--f", f_text, "Polynomial")->required();
  analyze_cmd->add_option("--vars", vars, "Comma-separated variable order");
  analyze_cmd->add_flag("--assert-smooth", assert_smooth, "Treat f / (x1...xn) as smooth");

  auto* obstruct_cmd = app.add_subcommand("obstruct", "Obstructions for g = l_1...l_n f");
  obstruct_cmd->add_option("--f", f_text, "Form f")->required();
  obstruct_cmd->add_option("--vars", vars, "Comma-separated variable order");
  obstruct_cmd->add_option("--linear-forms", linear_forms, "Semicolon-separated forms l_1;...;l_n (default: the variables)");
  obstruct_cmd->add_flag("--assert-smooth", assert_smooth, "Assert that f is smooth");

  auto* corpus_cmd = app.add_subcommand("corpus", "Regression corpus");
  corpus_cmd->require_subcommand(1);
  auto* corpus_run = corpus_cmd->add_subcommand("run", "Run every corpus entry");
  corpus_run->add_option("--file", corpus_file, "Corpus JSON");
  corpus_run->add_option("--threads", threads, "Worker threads");
  corpus_run->add_flag("--json", as_json, "Print results as JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (parse_cmd->parsed()) {
      const Polynomial p = read_poly(f_text, vars);
      std::cout << dump({{"vars", vars_to_json(p.context())}, {"f", to_string(p)}, {"terms", p.size()}});
      return 0;
    }
    if (verify_cmd->parsed()) {
      const Polynomial p = read_poly(f_text, vars);
      Json mj = read_json_file(matrix_file);
      if (mj.contains("matrix")) mj = mj.at("matrix");
      SaitoResult r = verify_saito(p, matrix_from_json(mj, p.context()));
      if (auto* c = std::get_if<SaitoCertificate>(&r)) {
        std::cout << dump(certificate_to_json(*c));
        return 0;
      }
      std::cout << dump(failure_to_json(std::get<SaitoFailure>(r)));
      return 4;
    }
    if (construct_cmd->parsed()) {
      ConstructResult r = construct(kind, construct_params(kind, cf));
      Json out = r.extra;
      out["kind"] = r.kind;
      out["divisor"] = r.certificate ? Json(to_string(r.certificate->divisor)) : Json(nullptr);
      out["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : Json(nullptr);
      std::cout << dump(out);
      return 0;
    }
    if (analyze_cmd->parsed()) {
      std::cout << dump(analyze(read_poly(f_text, vars), AutoOptions{assert_smooth, std::nullopt}));
      return 0;
    }
    if (obstruct_cmd->parsed()) {
      const Polynomial f = read_poly(f_text, vars);
      std::vector<Polynomial> ells;
      if (linear_forms.empty()) {
        for (std::size_t i = 0; i < f.num_vars(); ++i) ells.push_back(Polynomial::variable(f.context(), i));
      } else {
        for (const auto& l : split(linear_forms, ';')) ells.push_back(parse_polynomial(l, f.context()));
      }
      std::cout << dump(report_to_json(smooth_times_nc_verdict(f, ells, assert_smooth)));
      return 0;
    }
    if (corpus_run->parsed()) {
      const auto results = run_corpus(load_corpus(read_json_file(corpus_file)), threads, seed);
      if (as_json) std::cout << dump(corpus_results_to_json(results));
      else std::cout << corpus_table(results);
      int code = 0;
      for (const auto& r : results) {
        if (r.error) code = std::max(code, exit_code(*r.error));
        else if (!r.passed) code = std::max(code, 4);
      }
      return code;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
