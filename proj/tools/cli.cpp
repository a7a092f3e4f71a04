#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <ostream>
#include <random>

#include "arbokt/ainfty.hpp"
#include "arbokt/io.hpp"
#include "arbokt/reduced.hpp"

namespace arbokt::cli {

namespace {

using json = nlohmann::ordered_json;

struct Config {
  std::string format = "text";
  std::string out;
  std::string resolution;
  std::string psi;
  std::string vars;
  std::string ideal;
  std::string kind = "generic";
  std::string backend = "generic-lift";
  std::string fixtures;
  std::string kt = "arborescent";
  int max_degree = 0;
  int max_length = 8;
  int n_max = 4;
  std::uint64_t seed = 1;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  for (const auto& x : out)
    if (x.empty()) throw InputError("empty entry in list '" + s + "'");
  return out;
}

/// Identifiers of the ideal in order of first appearance.
std::vector<std::string> infer_variables(const std::string& ideal) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < ideal.size();) {
    if (std::isalpha(static_cast<unsigned char>(ideal[i])) || ideal[i] == '_') {
      std::size_t j = i;
      while (j < ideal.size() && (std::isalnum(static_cast<unsigned char>(ideal[j])) || ideal[j] == '_')) ++j;
      std::string name = ideal.substr(i, j - i);
      if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(ideal[i]))) {
      while (i < ideal.size() && std::isalnum(static_cast<unsigned char>(ideal[i]))) ++i;
    } else {
      ++i;
    }
  }
  return vars;
}

std::vector<Poly> parse_ideal(const Config& c) {
  if (c.ideal.empty()) throw InputError("--ideal is required");
  std::vector<std::string> vars = c.vars.empty() ? infer_variables(c.ideal) : split_list(c.vars);
  if (vars.empty()) throw InputError("no variables given or found in the ideal");
  RingPtr ring = Ring::make(vars);
  std::vector<Poly> gens;
  for (const auto& g : split_list(c.ideal)) gens.push_back(Poly::parse(g, ring));
  return gens;
}

Resolution build_resolution(const Config& c) {
  std::vector<Poly> gens = parse_ideal(c);
  if (c.kind == "generic") return resolve_ideal(gens, c.max_length);
  if (c.kind == "taylor") return build_taylor(gens);
  if (c.kind == "koszul") return build_koszul(gens);
  throw InputError("unknown --kind '" + c.kind + "'");
}

std::shared_ptr<const Resolution> input_resolution(const Config& c) {
  if (!c.resolution.empty()) {
    if (!c.ideal.empty()) throw InputError("give either --resolution or --ideal, not both");
    return load_resolution(c.resolution);
  }
  return std::make_shared<const Resolution>(build_resolution(c));
}

PsiTable input_psi(const Config& c, const std::shared_ptr<const Resolution>& res, int needed_degree) {
  if (!c.psi.empty()) {
    PsiTable t = load_psi(c.psi, res);
    if (!t.complete() && t.max_degree() < needed_degree)
      throw InputError("psi table known to degree " + std::to_string(t.max_degree()) + ", degree " +
                       std::to_string(needed_degree) + " needed");
    return t;
  }
  if (c.backend == "dga") {
    if (!res->product()) throw InputError("backend dga needs a resolution with a product block");
    return psi_from_dga(res);
  }
  if (c.backend == "generic-lift") return construct_psi(res, needed_degree);
  throw InputError("unknown --backend '" + c.backend + "'");
}

void emit(const Config& c, std::ostream& out, const json& j, const std::string& text) {
  if (c.format == "json")
    out << j.dump(2) << "\n";
  else
    out << text;
}

json check_json(const CheckReport& r, const std::string& name) {
  json j;
  j["check"] = name;
  j["passed"] = r.passed();
  j["entries"] = r.entries.size();
  if (auto f = r.first_failure()) j["first_failure"] = f->check + " (degree " + std::to_string(f->degree) + "): " + f->detail;
  return j;
}

std::string check_text(const json& j) {
  std::string s = std::string(j["passed"].get<bool>() ? "PASS " : "FAIL ") + j["check"].get<std::string>();
  if (j.contains("first_failure")) s += "\n  first counterexample: " + j["first_failure"].get<std::string>();
  return s + "\n";
}

// ---------------------------------------------------------------- commands

int cmd_resolve(const Config& c, std::ostream& out) {
  Resolution res = build_resolution(c);
  ValidationReport v = validate(res);
  json j;
  j["kind"] = c.kind;
  j["variables"] = res.ring()->variables();
  json ranks = json::array();
  for (int i = 1; i <= res.length(); ++i) ranks.push_back(res.rank(i));
  j["ranks"] = ranks;
  j["truncated"] = res.truncated();
  j["product"] = res.product().has_value();
  json checks = json::array();
  for (const auto& e : v.entries)
    checks.push_back({{"check", e.check}, {"degree", e.degree}, {"passed", e.passed}, {"detail", e.detail}});
  j["validation"] = checks;
  j["passed"] = v.passed();
  if (!c.out.empty()) write_text_file(c.out, resolution_to_json(res));

  std::string text = "ranks:";
  for (const auto& r : ranks) text += " " + std::to_string(r.get<std::size_t>());
  text += res.truncated() ? " (truncated)\n" : "\n";
  for (const auto& e : v.entries)
    if (!e.passed) text += "FAIL " + e.check + " (degree " + std::to_string(e.degree) + "): " + e.detail + "\n";
  text += std::string("validation: ") + (v.passed() ? "PASS" : "FAIL") + "\n";
  emit(c, out, j, text);
  return v.passed() ? kPass : kVerificationFailure;
}

int cmd_kt(const Config& c, std::ostream& out) {
  auto res = input_resolution(c);
  int degree = c.max_degree > 0 ? c.max_degree : res->length() + 1;
  PsiTable psi = input_psi(c, res, degree);
  std::string table = psi_to_json(psi);
  if (c.out.empty()) {
    out << table;
    return kPass;
  }
  write_text_file(c.out, table);
  json j;
  j["backend"] = c.psi.empty() ? c.backend : "file";
  j["max_degree"] = psi.max_degree();
  j["vanishing_bound"] = psi.vanishing_bound();
  j["entries"] = psi.entries().size();
  j["out"] = c.out;
  emit(c, out, j,
       "psi entries: " + std::to_string(psi.entries().size()) + " (max degree " + std::to_string(psi.max_degree()) +
           ", zero above degree " + std::to_string(psi.vanishing_bound()) + ")\n");
  return kPass;
}

int cmd_verify(const Config& c, std::ostream& out) {
  auto res = input_resolution(c);
  int degree = c.max_degree > 0 ? c.max_degree : 6;
  PsiTable psi = input_psi(c, res, degree);
  KTComplex kt(psi, degree);

  json checks = json::array();
  checks.push_back(check_json(verify_delta_squared(kt), "delta_squared"));
  {
    TreeBasis basis(*res);
    std::vector<CTree> pool;
    for (int d = 1; d <= degree; ++d)
      for (const auto& t : basis.nontrivial(d)) pool.push_back(t);
    std::mt19937_64 rng(c.seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    if (pool.size() > 200) pool.resize(200);
    checks.push_back(check_json(compare_delta_forms(kt, pool), "closed_equals_recursive"));
  }
  checks.push_back(check_json(verify_retract(kt, degree - 1), "retract"));
  checks.push_back(check_json(verify_h0(kt), "h0"));
  checks.push_back(check_json(verify_homology(kt, std::min(3, degree - 1)), "homology"));
  bool passed = true;
  for (const auto& ch : checks) passed = passed && ch["passed"].get<bool>();

  json j;
  j["max_degree"] = degree;
  j["psi_entries"] = psi.entries().size();
  j["checks"] = checks;
  std::string text;
  for (const auto& ch : checks) text += check_text(ch);

  if (!c.fixtures.empty()) {
    AuditReport audit = audit_psi(load_psi(c.fixtures, res));
    json entries = json::array();
    for (const auto& e : audit.entries) {
      json row{{"tree", e.tree}, {"decorations", e.decorations}, {"listed", e.listed}, {"passed", e.passed}};
      if (!e.passed) {
        row["d_value"] = e.actual;
        row["required"] = e.required;
      }
      entries.push_back(row);
      text += std::string(e.passed ? "PASS" : "FAIL") + " audit " + e.tree + (e.listed ? "" : " (unlisted)") + "\n";
      if (!e.passed) text += "  d(value) = " + e.actual + "\n  required = " + e.required + "\n";
    }
    j["audit"] = {{"file", c.fixtures}, {"passed", audit.passed()}, {"entries", entries}};
    passed = passed && audit.passed();
  }
  j["passed"] = passed;
  text += std::string("verify: ") + (passed ? "PASS" : "FAIL") + "\n";
  if (!c.out.empty()) write_text_file(c.out, j.dump(2) + "\n");
  emit(c, out, j, text);
  return passed ? kPass : kVerificationFailure;
}

json chain_json_value(const Resolution& res, const Chain& ch) { return json::parse(chain_to_json(res, ch)); }

int cmd_ainfty(const Config& c, std::ostream& out) {
  auto res = input_resolution(c);
  PsiTable psi = input_psi(c, res, res->length() + 1);
  std::size_t n_max = static_cast<std::size_t>(std::max(1, c.n_max));
  AInftyOptions opts;
  opts.seed = c.seed;
  AInftyReport a = verify_ainfty(psi, n_max, opts);
  AInftyReport s = verify_cinfty(psi, std::min<std::size_t>(n_max, 4));

  auto rows = [](const AInftyReport& r) {
    json arr = json::array();
    for (const auto& row : r.rows) {
      json j{{"n", row.n}};
      if (row.relation == "cinfty") j["i"] = row.i;
      j["tuples"] = row.tuples;
      j["failures"] = row.failures;
      if (row.failures) j["first_failure"] = row.first_failure;
      arr.push_back(j);
    }
    return arr;
  };
  json mus = json::array();
  std::string text;
  for (const auto& row : a.rows)
    text += std::string(row.failures ? "FAIL" : "PASS") + " ainfty n=" + std::to_string(row.n) + " (" +
            std::to_string(row.tuples) + " tuples)" + (row.failures ? "\n  first counterexample: " + row.first_failure : "") +
            "\n";
  for (const auto& row : s.rows)
    text += std::string(row.failures ? "FAIL" : "PASS") + " cinfty n=" + std::to_string(row.n) +
            " i=" + std::to_string(row.i) + " (" + std::to_string(row.tuples) + " tuples)" +
            (row.failures ? "\n  first counterexample: " + row.first_failure : "") + "\n";
  for (std::size_t n = 3; n <= n_max; ++n) {
    auto values = nonzero_mu(psi, n);
    text += "mu_" + std::to_string(n) + ": " + std::to_string(values.size()) + " nonzero values on generators\n";
    for (const auto& v : values) {
      json args = json::array();
      std::string shown;
      for (const auto& g : v.args) {
        args.push_back(res->name(g));
        shown += (shown.empty() ? "" : ", ") + res->name(g);
      }
      mus.push_back({{"n", n}, {"args", args}, {"value", chain_json_value(*res, v.value)}});
      text += "  mu_" + std::to_string(n) + "(" + shown + ") = " + res->to_string(v.value) + "\n";
    }
  }
  bool passed = a.passed() && s.passed();
  json j;
  j["n_max"] = n_max;
  j["degree_bound"] = a.degree_bound;
  j["ainfty"] = rows(a);
  j["cinfty"] = rows(s);
  j["mu"] = mus;
  j["passed"] = passed;
  text += std::string("ainfty: ") + (passed ? "PASS" : "FAIL") + "\n";
  if (!c.out.empty()) write_text_file(c.out, j.dump(2) + "\n");
  emit(c, out, j, text);
  return passed ? kPass : kVerificationFailure;
}

int cmd_betti(const Config& c, std::ostream& out) {
  int degree = c.max_degree > 0 ? c.max_degree : 6;
  std::unique_ptr<KTGenerators> gens;
  std::unique_ptr<KTComplex> kt;
  std::shared_ptr<const Resolution> res;
  if (c.kt == "exterior") {
    if (!c.resolution.empty()) throw InputError("--kt exterior takes --ideal, not --resolution");
    gens = std::make_unique<ExteriorKoszulKT>(parse_ideal(c));
  } else if (c.kt == "arborescent") {
    res = input_resolution(c);
    kt = std::make_unique<KTComplex>(input_psi(c, res, degree + 1), degree + 1);
    gens = std::make_unique<ArborescentKT>(*kt);
  } else {
    throw InputError("unknown --kt '" + c.kt + "'");
  }
  ReducedComplex rc = reduce_at_origin(*gens, degree);
  BettiVector b = betti(rc);
  MinimalityReport m = is_minimal(rc);

  json bj = json::array();
  json gj = json::array();
  bool bounded = true;
  std::string text = "b:";
  for (int i = 0; i <= b.max_degree; ++i) {
    if (b.b[i]) {
      bj.push_back(*b.b[i]);
      gj.push_back(b.generators[i]);
      bounded = bounded && *b.b[i] <= b.generators[i];
      text += " " + std::to_string(*b.b[i]);
    } else {
      bj.push_back(nullptr);
      gj.push_back(nullptr);
      text += " -";
    }
  }
  text += "  (degrees 0.." + std::to_string(b.max_degree) + ")\ngenerators:";
  for (int i = 1; i <= b.max_degree; ++i) text += " " + std::to_string(b.generators[i]);
  text += std::string("\nminimal: ") + (m.minimal ? "true" : "false") + "\n";
  json j;
  j["b"] = bj;
  j["generators"] = gj;
  j["max_degree"] = b.max_degree;
  j["kt"] = c.kt;
  j["minimal"] = m.minimal;
  if (const Violation* v = m.first()) {
    j["first_violation"] = v->target_text;
    j["first_violation_source"] = v->source_text;
    j["first_violation_coefficient"] = v->coefficient.get_str();
    text += "first violation: " + v->source_text + " -> " + v->target_text + " (" + v->coefficient.get_str() + ")\n";
  } else {
    j["first_violation"] = nullptr;
  }
  j["violations"] = m.violations.size();
  if (kt) {
    json w = json::array();
    for (int mm = 0; 2 * mm + 1 <= b.max_degree; ++mm) {
      try {
        Witness x = witness_Tm(*kt, mm);
        w.push_back({{"m", mm}, {"tree", x.text}, {"closed", x.closed}, {"exact", x.exact}});
        text += "witness T_" + std::to_string(mm) + " = " + x.text + ": " +
                (x.certified() ? "closed, not exact" : "NOT certified") + "\n";
      } catch (const InputError&) {
        break;
      }
    }
    j["witnesses"] = w;
  }
  j["rank_bound_holds"] = bounded;
  if (!c.out.empty()) write_text_file(c.out, j.dump(2) + "\n");
  emit(c, out, j, text);
  return bounded ? kPass : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Arborescent Koszul-Tate resolutions: construction and verification", "arbokt"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--out", c.out, "Output file");
  };
  auto add_input = [&](CLI::App* s) {
    s->add_option("--resolution", c.resolution, "Resolution JSON file");
    s->add_option("--vars", c.vars, "Comma-separated variables (default: in order of appearance)");
    s->add_option("--ideal", c.ideal, "Comma-separated generators of the ideal");
    s->add_option("--kind", c.kind, "Resolution builder")->check(CLI::IsMember({"generic", "taylor", "koszul"}));
    s->add_option("--max-length", c.max_length, "Length cap for the generic builder");
  };
  auto add_psi = [&](CLI::App* s) {
    s->add_option("--psi", c.psi, "psi table JSON file");
    s->add_option("--backend", c.backend, "psi construction")->check(CLI::IsMember({"generic-lift", "dga"}));
  };

  CLI::App* resolve = app.add_subcommand("resolve", "Build and validate a free resolution");
  add_common(resolve);
  add_input(resolve);
  CLI::App* kt = app.add_subcommand("kt", "Construct the arborescent operations");
  add_common(kt);
  add_input(kt);
  add_psi(kt);
  kt->add_option("--max-degree", c.max_degree, "Highest tree degree")->check(CLI::PositiveNumber);
  CLI::App* verify = app.add_subcommand("verify", "Check delta^2 = 0, retract identities and homology");
  add_common(verify);
  add_input(verify);
  add_psi(verify);
  verify->add_option("--max-degree", c.max_degree, "Highest tree degree checked")->check(CLI::PositiveNumber);
  verify->add_option("--fixtures", c.fixtures, "psi table to audit entry by entry");
  verify->add_option("--seed", c.seed, "Seed for the sampled checks");
  CLI::App* ainfty = app.add_subcommand("ainfty", "Check the induced A-infinity and C-infinity relations");
  add_common(ainfty);
  add_input(ainfty);
  add_psi(ainfty);
  ainfty->add_option("--n-max", c.n_max, "Highest arity")->check(CLI::Range(1, 6));
  ainfty->add_option("--seed", c.seed, "Seed for the random O-mixed tuples");
  CLI::App* bet = app.add_subcommand("betti", "Reduced complex at the origin, b_i and minimality");
  add_common(bet);
  add_input(bet);
  add_psi(bet);
  bet->add_option("--max-degree", c.max_degree, "Highest homological degree")->check(CLI::PositiveNumber);
  bet->add_option("--kt", c.kt, "Koszul-Tate model")->check(CLI::IsMember({"arborescent", "exterior"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (resolve->parsed()) return cmd_resolve(c, out);
    if (kt->parsed()) return cmd_kt(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
    if (ainfty->parsed()) return cmd_ainfty(c, out);
    if (bet->parsed()) return cmd_betti(c, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const RingMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "verification failure: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kInputError;
}

}  // namespace arbokt::cli
