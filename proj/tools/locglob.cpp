// Batch driver: decide, report, counterexample, certify, strata, audit.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "locglob/locglob.hpp"

using namespace locglob;

namespace {

enum Exit { kOk = 0, kUsage = 1, kUnsupported = 2, kCapacity = 3, kInternal = 4 };

struct Options {
  std::string out;
  long prime_bound = 100;
  long budget = kDefaultEnumBudget;
  bool timing = true;
};

long budget_default() {
  if (const char* v = std::getenv("LOCGLOB_BUDGET")) {
    char* end = nullptr;
    long b = std::strtol(v, &end, 10);
    if (end && *end == '\0' && b > 0) return b;
    throw ValidationError("LOCGLOB_BUDGET must be a positive integer");
  }
  return kDefaultEnumBudget;
}

Problem parse_problem(const std::string& s) {
  if (s == "tri") return Problem::tri;
  if (s == "diag") return Problem::diag;
  throw ValidationError("problem must be tri or diag");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw ValidationError("cannot write " + o.out);
  f << text;
}

Json envelope(const std::string& command, const Json& inputs) {
  return Json{{"tool", kVersion}, {"command", command}, {"inputs", inputs}};
}

struct Result {
  int code = kOk;
  Json json;
  std::string text;  // non-JSON output (CSV)
};

Result finish(const Options& o, Json j, std::chrono::steady_clock::time_point t0, int code) {
  if (o.timing)
    j["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return {code, std::move(j), {}};
}

// ---------------------------------------------------------------- decide

template <class R>
std::vector<Place<R>> places_at(const Matrix<R>& M, long p);

template <>
std::vector<Place<Int>> places_at(const Matrix<Int>&, long p) {
  return {Place<Int>(Int(p))};
}

template <>
std::vector<Place<QuadInt>> places_at(const Matrix<QuadInt>& M, long p) {
  if (!is_prime(Int(p))) throw ValidationError(std::to_string(p) + " is not prime");
  std::vector<Place<QuadInt>> out;
  for (const auto& P : primes_above(M.proto().ring(), Int(p))) out.emplace_back(P);
  return out;
}

template <class R>
std::optional<bool> residue_ring(const Matrix<R>&, const Place<R>&, unsigned, Problem, std::uint64_t) {
  return std::nullopt;
}
std::optional<bool> residue_ring(const Matrix<Int>& M, const Place<Int>& P, unsigned i, Problem k, std::uint64_t budget) {
  return k == Problem::tri ? tri_residue_ring(M, P.p(), i, budget) : diag_residue_ring(M, P.p(), i, budget);
}

struct DecideArgs {
  std::string problem = "tri", level = "ring";
  long prime = 0;
  int prime_index = -1;
  unsigned exponent = 1;
};

template <class R>
Result decide(const Options& o, const DecideArgs& a, const Matrix<R>& M, const Json& input) {
  auto t0 = std::chrono::steady_clock::now();
  Problem p = parse_problem(a.problem);
  Json inputs{{"problem", a.problem}, {"level", a.level}, {"matrix", input}};
  Json j = envelope("decide", inputs);
  int code = kOk;
  if (a.level == "ring" || a.level == "field") {
    Decision<R> d = a.level == "ring" ? (p == Problem::tri ? tri_over_ring(M) : diag_over_ring(M)) : decide_global(M, p, false);
    j["verdict"] = to_string(d.verdict);
    j["decision"] = to_json(d);
    if (d.verdict == Verdict::unsupported) code = kUnsupported;
  } else {
    if (a.prime < 2) throw ValidationError("--prime is required for level " + a.level);
    auto places = places_at(M, a.prime);
    if (a.prime_index >= static_cast<int>(places.size())) throw ValidationError("--prime-index out of range");
    Json per = Json::array();
    bool all = true, unsupported = false;
    for (std::size_t k = 0; k < places.size(); ++k) {
      if (a.prime_index >= 0 && static_cast<int>(k) != a.prime_index) continue;
      const auto& P = places[k];
      Json v{{"prime", P.str()}, {"norm", to_json(P.norm())}};
      std::optional<bool> ok;
      if (a.level == "local") ok = p == Problem::tri ? tri_local(M, P) : diag_local(M, P);
      else if (a.level == "residue-field") ok = p == Problem::tri ? tri_residue_field(M, P) : diag_residue_field(M, P);
      else if (a.level == "completion") ok = p == Problem::tri ? tri_completion(M, P) : diag_completion(M, P);
      else if (a.level == "residue-ring") {
        ok = residue_ring(M, P, a.exponent, p, static_cast<std::uint64_t>(o.budget));
        v["exponent"] = a.exponent;
      } else {
        throw ValidationError("unknown level " + a.level);
      }
      if (!ok) {
        unsupported = true;
        v["verdict"] = "unsupported";
        v["note"] = "residue-ring search is implemented over Z only";
      } else {
        v["verdict"] = *ok ? "yes" : "no";
        all = all && *ok;
      }
      per.push_back(v);
    }
    j["inputs"]["prime"] = a.prime;
    j["inputs"]["prime_index"] = a.prime_index;
    if (a.level == "residue-ring") j["inputs"]["exponent"] = a.exponent;
    j["verdict"] = unsupported ? "unsupported" : (all ? "yes" : "no");
    j["primes"] = per;
    if (unsupported) code = kUnsupported;
  }
  return finish(o, j, t0, code);
}

// ---------------------------------------------------------------- report

template <class R>
Result report(const Options& o, const std::string& kind, unsigned levels, const Matrix<R>& M, const Json& input) {
  auto t0 = std::chrono::steady_clock::now();
  auto rep = local_global_report(M, parse_problem(kind), o.prime_bound, levels);
  Json j = envelope("report", Json{{"kind", kind}, {"prime_bound", o.prime_bound}, {"residue_levels", levels}, {"matrix", input}});
  j["report"] = to_json(rep);
  return finish(o, j, t0, rep.violations.empty() ? kOk : kInternal);
}

// ---------------------------------------------------------------- counterexamples

Result counterexample(const Options& o, const std::string& kind, long d, std::size_t n, bool do_certify, long search_norm) {
  auto t0 = std::chrono::steady_clock::now();
  Problem p = parse_problem(kind);
  Json inputs{{"kind", kind}, {"d", d}, {"n", n}, {"certify", do_certify}};
  if (do_certify) inputs["prime_bound"] = o.prime_bound;
  if (p == Problem::diag) inputs["search_norm"] = search_norm;
  Json j = envelope("counterexample", inputs);
  Matrix<QuadInt> M;
  if (p == Problem::tri) {
    auto rc = build_tri_counterexample(d, n);
    j["recipe"] = to_json(rc);
    M = rc.M;
  } else {
    auto rc = build_diag_counterexample(d, n, Int(search_norm));
    j["recipe"] = to_json(rc);
    M = rc.M;
  }
  j["matrix"] = matrix_file_json(M);
  if (do_certify) j["certification"] = to_json(certify(M, p, o.prime_bound));
  return finish(o, j, t0, kOk);
}

Result certify_cmd(const Options& o, const std::string& kind, const Matrix<QuadInt>& M, const Json& input) {
  auto t0 = std::chrono::steady_clock::now();
  Json j = envelope("certify", Json{{"kind", kind}, {"prime_bound", o.prime_bound}, {"matrix", input}});
  j["certification"] = to_json(certify(M, parse_problem(kind), o.prime_bound));
  return finish(o, j, t0, kOk);
}

// ---------------------------------------------------------------- strata

std::string csv_quote(const std::string& s) { return s.find(',') == std::string::npos ? s : "\"" + s + "\""; }

Result strata(const Options& o, int m, int n, long lambda, const std::vector<int>& qs, bool audit, bool equations) {
  auto t0 = std::chrono::steady_clock::now();
  Json inputs{{"m", m}, {"n", n}, {"lambda", lambda}, {"q", qs}, {"audit", audit}, {"equations", equations}};
  auto idx = enum_strata(m, n, IndexFamily::R);
  if (audit) {
    Json j = envelope("strata", inputs);
    Json audits = Json::array();
    bool u = true, p = true, c = true, poly = true;
    for (int q : qs) {
      auto a = audit_strata(m, n, lambda, q, o.budget);
      u = u && a.union_ok;
      p = p && a.presentation_ok;
      c = c && a.classification_ok;
      poly = poly && a.polynomial_ok;
      audits.push_back(to_json(a));
    }
    j["shape"] = {{"m", m}, {"n", n}, {"lambda", lambda}};
    j["q"] = qs;
    j["union_ok"] = u;
    j["presentation_ok"] = p;
    j["classification_ok"] = c;
    j["polynomial_ok"] = poly;
    if (qs.size() == 1) j["counts"] = audits[0]["counts"];
    j["audits"] = audits;
    return finish(o, j, t0, u && p && c && poly ? kOk : kInternal);
  }
  if (equations) {
    Json j = envelope("strata", inputs);
    auto eq_json = [](const StratumIndex& s, const EquationSet& E) {
      auto ex = E.expanded();
      return Json{{"index", s.s.empty() ? s.r : s.s}, {"equation_count", ex.size()}, {"equations", ex}};
    };
    Json v = Json::array(), w = Json::array();
    for (const auto& s : idx) v.push_back(eq_json(s, equations_Vr(m, n, s.r)));
    for (const auto& s : enum_strata(m, n, IndexFamily::S)) w.push_back(eq_json(s, equations_Ws(m, n, s.s)));
    auto xp = equations_XprimeM(m, n).expanded();
    j["XprimeM"] = {{"equation_count", xp.size()}, {"equations", xp}};
    j["Vr"] = v;
    j["Ws"] = w;
    return finish(o, j, t0, kOk);
  }
  std::ostringstream csv;
  csv << "r,equation_count,dim,count_polynomial";
  for (int q : qs) csv << ",count_q" << q;
  csv << "\n";
  std::vector<GF> fields;
  for (int q : qs) fields.emplace_back(q);
  for (const auto& s : idx) {
    auto E = equations_Vr(m, n, s.r);
    csv << csv_quote(s.str()) << "," << E.equation_count() << "," << dim_stratum(m, n, s.r) << ","
        << stratum_count_polynomial(m, n, s.r).str();
    for (const auto& F : fields) csv << "," << count_points(F, E, o.budget);
    csv << "\n";
  }
  return {kOk, Json(), csv.str()};
}

// ---------------------------------------------------------------- component audits

JordanShape parse_shape(const std::vector<long>& eigen, const std::vector<std::string>& blocks) {
  if (!eigen.empty() && !blocks.empty()) throw ValidationError("give either --eigen or --blocks");
  if (!eigen.empty()) return JordanShape::diagonal(eigen);
  if (blocks.empty()) throw ValidationError("a shape is required (--eigen or --blocks)");
  JordanShape s;
  for (const auto& b : blocks) {
    auto colon = b.find(':');
    if (colon == std::string::npos) throw ValidationError("block must read lambda:size, got " + b);
    try {
      s.blocks.push_back({std::stol(b.substr(0, colon)), std::stoi(b.substr(colon + 1))});
    } catch (const std::exception&) {
      throw ValidationError("block must read lambda:size, got " + b);
    }
    if (s.blocks.back().size < 1) throw ValidationError("block size must be positive");
  }
  return s;
}

Result audit(const Options& o, const JordanShape& shape, int q, const std::string& variety, bool transport) {
  auto t0 = std::chrono::steady_clock::now();
  if (variety != "X" && variety != "Y" && variety != "both") throw ValidationError("variety must be X, Y or both");
  Json j = envelope("audit", Json{{"shape", to_json(shape)}, {"q", q}, {"variety", variety}, {"transport", transport}});
  bool ok = true;
  Json out = Json::array();
  for (bool diag : {false, true}) {
    if ((diag && variety == "X") || (!diag && variety == "Y")) continue;
    auto a = audit_components(shape, q, diag, transport, o.budget);
    ok = ok && a.counts_ok && a.transport_ok;
    out.push_back(to_json(a));
  }
  j["ok"] = ok;
  j["audits"] = out;
  return finish(o, j, t0, ok ? kOk : kInternal);
}

// ---------------------------------------------------------------- dispatch from recorded inputs

template <class Fn>
Result with_matrix(const Json& m, Fn&& fn) {
  return std::visit([&](const auto& M) { return fn(M); }, parse_matrix_json(m));
}

Result run(const Options& o, const std::string& command, const Json& in) {
  if (command == "decide") {
    DecideArgs a;
    a.problem = in.at("problem").get<std::string>();
    a.level = in.at("level").get<std::string>();
    if (in.contains("prime")) a.prime = in["prime"].get<long>();
    if (in.contains("prime_index")) a.prime_index = in["prime_index"].get<int>();
    if (in.contains("exponent")) a.exponent = in["exponent"].get<unsigned>();
    return with_matrix(in.at("matrix"), [&](const auto& M) { return decide(o, a, M, matrix_file_json(M)); });
  }
  if (command == "report") {
    Options oo = o;
    oo.prime_bound = in.at("prime_bound").get<long>();
    auto levels = in.at("residue_levels").get<unsigned>();
    auto kind = in.at("kind").get<std::string>();
    return with_matrix(in.at("matrix"), [&](const auto& M) { return report(oo, kind, levels, M, matrix_file_json(M)); });
  }
  if (command == "counterexample") {
    Options oo = o;
    if (in.contains("prime_bound")) oo.prime_bound = in["prime_bound"].get<long>();
    long norm = in.contains("search_norm") ? in["search_norm"].get<long>() : kDefaultSearchNorm;
    return counterexample(oo, in.at("kind").get<std::string>(), in.at("d").get<long>(), in.at("n").get<std::size_t>(),
                          in.at("certify").get<bool>(), norm);
  }
  if (command == "certify") {
    Options oo = o;
    oo.prime_bound = in.at("prime_bound").get<long>();
    auto M = parse_matrix_json(in.at("matrix"));
    if (!std::holds_alternative<Matrix<QuadInt>>(M)) throw ValidationError("certification needs a matrix over a quadratic ring");
    const auto& Q = std::get<Matrix<QuadInt>>(M);
    return certify_cmd(oo, in.at("kind").get<std::string>(), Q, matrix_file_json(Q));
  }
  if (command == "strata")
    return strata(o, in.at("m").get<int>(), in.at("n").get<int>(), in.at("lambda").get<long>(), in.at("q").get<std::vector<int>>(),
                  in.at("audit").get<bool>(), in.at("equations").get<bool>());
  if (command == "audit") {
    JordanShape s;
    for (const auto& b : in.at("shape")) s.blocks.push_back({b.at("lambda").get<long>(), b.at("size").get<int>()});
    return audit(o, s, in.at("q").get<int>(), in.at("variety").get<std::string>(), in.at("transport").get<bool>());
  }
  throw ValidationError("unknown command " + command);
}

// ---------------------------------------------------------------- verify-only

Json strip_timing(Json j) {
  if (j.is_object()) j.erase("timing_ms");
  return j;
}

Result verify(const Options& o, const Json& rep) {
  auto t0 = std::chrono::steady_clock::now();
  const std::string cmd = rep.at("command").get<std::string>();
  const Json& in = rep.at("inputs");
  Json checks = Json::array();
  bool all = true;
  auto check = [&](const std::string& what, bool ok) {
    checks.push_back({{"check", what}, {"ok", ok}});
    all = all && ok;
  };
  auto witness = [&](const Json& matrix, const Json& decision, Problem p, bool over_ring, const std::string& label) {
    if (!decision.contains("witness") || decision["witness"].is_null()) return;
    with_matrix(matrix, [&](const auto& M) {
      auto Mf = to_field_matrix(M);
      auto T = parse_field_matrix(decision["witness"], Mf.proto());
      check(label + " witness re-verifies", verify_witness(Mf, T, p, over_ring));
      return Result{};
    });
  };

  if (cmd == "decide" && rep.contains("decision"))
    witness(in.at("matrix"), rep["decision"], parse_problem(in.at("problem").get<std::string>()), in.at("level") == "ring", "decision");
  if (cmd == "report")
    for (const auto& c : rep.at("report").at("conditions"))
      if (c.contains("decision"))
        witness(in.at("matrix"), c["decision"], parse_problem(in.at("kind").get<std::string>()), c.at("index") == 1,
                "condition " + std::to_string(c.at("index").get<int>()));
  if (cmd == "counterexample" || cmd == "certify") {
    const Json& mat = cmd == "certify" ? in.at("matrix") : rep.at("matrix");
    if (rep.contains("certification")) {
      const Json& c = rep["certification"];
      Problem p = parse_problem(c.at("kind").get<std::string>());
      witness(mat, c.at("field_leg"), p, false, "field leg");
      check("ring leg verdict is no", c.at("ring_leg").at("verdict") == "no");
      check("every local leg holds", c.at("local_leg").at("all_ok").get<bool>());
    }
  }
  Options quiet = o;
  quiet.timing = false;
  Result again = run(quiet, cmd, in);
  check("rerun reproduces the report", again.code == kOk && strip_timing(again.json) == strip_timing(rep));

  Json j{{"tool", kVersion}, {"command", "verify-only"}, {"verified_command", cmd}, {"verified", all}, {"checks", checks}};
  return finish(o, j, t0, all ? kOk : kInternal);
}

int exit_for(const Error& e) { return static_cast<int>(e.error_class()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact local-global checks for triangularizing and diagonalizing integral matrices"};
  app.set_version_flag("--version", kVersion);
  app.fallthrough();
  app.require_subcommand(0, 1);

  Options o;
  std::string verify_path;
  bool no_timing = false;
  app.add_option("-o,--out", o.out, "Write the report here instead of stdout");
  app.add_option("--prime-bound", o.prime_bound, "Largest prime norm tested")->check(CLI::Range(2L, 100000L))->capture_default_str();
  app.add_option("--budget", o.budget, "Enumeration budget (default 1e7, or LOCGLOB_BUDGET)")->check(CLI::PositiveNumber);
  app.add_flag("--no-timing", no_timing, "Omit the timing field");
  app.add_option("--verify-only", verify_path, "Re-verify a report written by this tool");

  DecideArgs da;
  std::string in_path;
  auto* dec = app.add_subcommand("decide", "Decide one condition for one matrix");
  dec->add_option("--problem", da.problem)->check(CLI::IsMember({"tri", "diag"}))->required();
  dec->add_option("--level", da.level)
      ->check(CLI::IsMember({"ring", "local", "residue-ring", "residue-field", "field", "completion"}))
      ->capture_default_str();
  dec->add_option("--in", in_path, "Matrix JSON file")->required()->check(CLI::ExistingFile);
  dec->add_option("--prime", da.prime, "Rational prime for local levels");
  dec->add_option("--prime-index", da.prime_index, "Pick one prime above p (0-based); default all");
  dec->add_option("--exponent", da.exponent, "Exponent i for O/P^i")->check(CLI::Range(1u, 64u))->capture_default_str();

  std::string kind = "tri";
  unsigned levels = kDefaultResidueLevels;
  auto* rep = app.add_subcommand("report", "All six conditions and the implication checks");
  rep->add_option("--kind", kind)->check(CLI::IsMember({"tri", "diag"}))->required();
  rep->add_option("--in", in_path)->required()->check(CLI::ExistingFile);
  rep->add_option("--levels", levels, "Residue-ring exponents to test")->check(CLI::Range(1u, 16u))->capture_default_str();

  long d = -5;
  std::size_t n = 2;
  bool do_certify = false;
  long search_norm = kDefaultSearchNorm;
  auto* cex = app.add_subcommand("counterexample", "Build a local-global counterexample over an imaginary quadratic ring");
  cex->add_option("--kind", kind)->check(CLI::IsMember({"tri", "diag"}))->required();
  cex->add_option("--d", d)->capture_default_str();
  cex->add_option("--n", n)->check(CLI::Range(2, 12))->capture_default_str();
  cex->add_flag("--certify", do_certify);
  cex->add_option("--search-norm", search_norm, "Norm bound for element searches")->check(CLI::PositiveNumber)->capture_default_str();

  auto* cer = app.add_subcommand("certify", "Three-leg certification of a candidate counterexample");
  cer->add_option("--kind", kind)->check(CLI::IsMember({"tri", "diag"}))->required();
  cer->add_option("--in", in_path)->required()->check(CLI::ExistingFile);

  int m = 1, nn = 2;
  long lambda = 0;
  std::vector<int> qs{2};
  bool do_audit = false, do_eq = false;
  auto* str = app.add_subcommand("strata", "Stratum tables, defining equations and enumeration audits");
  str->add_option("--m", m)->check(CLI::Range(1, 8))->capture_default_str();
  str->add_option("--n", nn)->check(CLI::Range(2, 8))->capture_default_str();
  str->add_option("--lambda", lambda)->capture_default_str();
  str->add_option("--q", qs, "Field sizes")->check(CLI::Range(2, 256));
  str->add_flag("--audit", do_audit, "Enumerate GL and compare the point sets");
  str->add_flag("--equations", do_eq, "Emit the defining equations as JSON");

  std::vector<long> eigen;
  std::vector<std::string> blocks;
  int q = 3;
  std::string variety = "both";
  bool no_transport = false;
  auto* aud = app.add_subcommand("audit", "Component counts and transport maps over a finite field");
  aud->add_option("--eigen", eigen, "Diagonal eigenvalues");
  aud->add_option("--blocks", blocks, "Jordan blocks as lambda:size");
  aud->add_option("--q", q)->check(CLI::Range(2, 256))->capture_default_str();
  aud->add_option("--variety", variety)->check(CLI::IsMember({"X", "Y", "both"}))->capture_default_str();
  aud->add_flag("--no-transport", no_transport);

  try {
    o.budget = budget_default();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  o.timing = !no_timing;

  try {
    Result r;
    if (!verify_path.empty()) {
      if (app.get_subcommands().size()) throw ValidationError("--verify-only takes no command");
      r = verify(o, read_json_file(verify_path));
    } else if (*dec || *rep || *cer) {
      Json mat = read_json_file(in_path);
      auto M = parse_matrix_json(mat);
      Json norm = std::visit([](const auto& A) { return matrix_file_json(A); }, M);
      if (*dec) {
        Json in{{"problem", da.problem}, {"level", da.level}, {"matrix", norm}, {"prime", da.prime}, {"prime_index", da.prime_index}};
        if (da.level == "residue-ring") in["exponent"] = da.exponent;
        r = run(o, "decide", in);
      } else if (*rep) {
        r = run(o, "report", Json{{"kind", kind}, {"prime_bound", o.prime_bound}, {"residue_levels", levels}, {"matrix", norm}});
      } else {
        r = run(o, "certify", Json{{"kind", kind}, {"prime_bound", o.prime_bound}, {"matrix", norm}});
      }
    } else if (*cex) {
      r = counterexample(o, kind, d, n, do_certify, search_norm);
    } else if (*str) {
      r = strata(o, m, nn, lambda, qs, do_audit, do_eq);
    } else if (*aud) {
      r = audit(o, parse_shape(eigen, blocks), q, variety, !no_transport);
    } else {
      std::cout << app.help();
      return kUsage;
    }
    emit(o, r.text.empty() ? r.json.dump(2) + "\n" : r.text);
    return r.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
