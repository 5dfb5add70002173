#pragma once

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "counterexamples.hpp"
#include "deciders.hpp"
#include "errors.hpp"
#include "report.hpp"
#include "strata.hpp"

namespace locglob {

using Json = nlohmann::ordered_json;

/// A matrix read from a file: integer entries or entries of a quadratic maximal order.
using AnyMatrix = std::variant<Matrix<Int>, Matrix<QuadInt>>;

// ---------------------------------------------------------------- scalars

inline Json to_json(const Int& a) {
  if (a.fits_slong_p()) return a.get_si();
  return a.get_str();
}
inline Json to_json(const Rat& a) {
  if (a.get_den() == 1) return to_json(Int(a.get_num()));
  return a.get_str();
}
inline Json to_json(const QuadInt& a) { return Json::array({to_json(a.x()), to_json(a.y())}); }
inline Json to_json(const QuadRat& a) { return Json::array({to_json(a.x()), to_json(a.y())}); }

inline Json to_json(const QuadIdeal& I) {
  return Json{{"a", to_json(I.a())}, {"b", to_json(I.b())}, {"c", to_json(I.c())}, {"den", to_json(I.den())}, {"str", I.str()}};
}
inline Json to_json(const PrimeIdeal& P) {
  return Json{{"p", to_json(P.p)}, {"f", P.f}, {"ramified", P.ramified}, {"ideal", to_json(P.ideal)}};
}

template <class T>
Json to_json(const Matrix<T>& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class T>
Json to_json(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(to_json(e));
  return out;
}

template <class T>
Json to_json(const Poly<T>& p) {
  return Json{{"coefficients", to_json(p.c)}, {"str", p.str()}};
}

inline Json ring_json(const Int&) { return Json{{"ring", "Z"}}; }
inline Json ring_json(const Rat&) { return Json{{"ring", "Z"}}; }
inline Json ring_json(const QuadRing& R) {
  return Json{{"ring", "Qsqrt"}, {"d", R.d}, {"basis", R.half_integral_basis() ? "w = (1+sqrt(d))/2" : "w = sqrt(d)"}};
}
inline Json ring_json(const QuadInt& p) { return ring_json(p.ring()); }
inline Json ring_json(const QuadRat& p) { return ring_json(p.ring()); }

// ---------------------------------------------------------------- parsing

namespace detail {

inline Int parse_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long>());
  if (j.is_string()) {
    static const std::regex re("^-?[0-9]+$");
    auto s = j.get<std::string>();
    if (std::regex_match(s, re)) return Int(s);
  }
  if (j.is_number_float()) throw ValidationError(where + ": entry must be an integer");
  throw ParseError(where + ": expected an integer");
}

inline Rat parse_rat(const Json& j, const std::string& where) {
  if (j.is_string()) {
    static const std::regex re("^-?[0-9]+(/[0-9]+)?$");
    auto s = j.get<std::string>();
    if (!std::regex_match(s, re)) throw ParseError(where + ": expected an integer or p/q");
    Rat r(s);
    if (r.get_den() == 0) throw ValidationError(where + ": zero denominator");
    r.canonicalize();
    return r;
  }
  return Rat(parse_int(j, where));
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

template <class T, class F>
std::vector<std::vector<T>> parse_rows(const Json& entries, const std::string& where, F&& entry) {
  if (!entries.is_array() || entries.empty()) throw ParseError(where + ": expected a non-empty array of rows");
  std::vector<std::vector<T>> rows;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& r = entries[i];
    std::string wi = where + "[" + std::to_string(i) + "]";
    if (!r.is_array()) throw ParseError(wi + ": expected an array");
    if (r.size() != entries[0].size()) throw ParseError(wi + ": ragged row");
    std::vector<T> row;
    for (std::size_t k = 0; k < r.size(); ++k) row.push_back(entry(r[k], wi + "[" + std::to_string(k) + "]"));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void check_shape(const Json& j, std::size_t rows, std::size_t cols) {
  if (j.contains("rows") && parse_int(j["rows"], "rows") != static_cast<long>(rows))
    throw ValidationError("rows: declared " + j["rows"].dump() + ", found " + std::to_string(rows));
  if (j.contains("cols") && parse_int(j["cols"], "cols") != static_cast<long>(cols))
    throw ValidationError("cols: declared " + j["cols"].dump() + ", found " + std::to_string(cols));
}

inline QuadRing parse_ring_d(const Json& j) {
  const Json& dj = field(j, "d", "matrix");
  Int d = parse_int(dj, "d");
  if (!d.fits_slong_p()) throw ValidationError("d: out of range");
  return QuadRing(d.get_si());
}

}  // namespace detail

/// Matrix from its JSON description. Field paths appear in every error.
inline AnyMatrix parse_matrix_json(const Json& j) {
  std::string ring = detail::field(j, "ring", "matrix").is_string() ? j["ring"].get<std::string>() : "";
  const Json& e = detail::field(j, "entries", "matrix");
  if (ring == "Z") {
    auto rows = detail::parse_rows<Int>(e, "entries", [](const Json& x, const std::string& w) { return detail::parse_int(x, w); });
    detail::check_shape(j, rows.size(), rows[0].size());
    return Matrix<Int>(rows, Int(0));
  }
  if (ring == "Qsqrt") {
    QuadRing R = detail::parse_ring_d(j);
    auto rows = detail::parse_rows<QuadInt>(e, "entries", [&](const Json& x, const std::string& w) {
      if (!x.is_array() || x.size() != 2) throw ParseError(w + ": expected [x, y] for x + y*w");
      return QuadInt(R, detail::parse_int(x[0], w + "[0]"), detail::parse_int(x[1], w + "[1]"));
    });
    detail::check_shape(j, rows.size(), rows[0].size());
    return Matrix<QuadInt>(rows, QuadInt(R, 0));
  }
  throw ValidationError("ring: expected \"Z\" or \"Qsqrt\"");
}

/// Parse JSON text, reporting syntax errors by line.
inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(ex.byte, text.size()), '\n'));
    throw ParseError(origin + ": line " + std::to_string(line) + ": malformed JSON");
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

inline AnyMatrix parse_matrix_file(const std::string& path) {
  Json j = read_json_file(path);
  try {
    return parse_matrix_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Field-valued matrix (witnesses in reports) over Q or the quadratic field of `proto`.
inline Matrix<Rat> parse_field_matrix(const Json& e, const Rat&) {
  return Matrix<Rat>(detail::parse_rows<Rat>(e, "witness", [](const Json& x, const std::string& w) { return detail::parse_rat(x, w); }),
                     Rat(0));
}
inline Matrix<QuadRat> parse_field_matrix(const Json& e, const QuadRat& proto) {
  const QuadRing& R = proto.ring();
  return Matrix<QuadRat>(detail::parse_rows<QuadRat>(e, "witness",
                                                     [&](const Json& x, const std::string& w) {
                                                       if (!x.is_array() || x.size() != 2) throw ParseError(w + ": expected [x, y]");
                                                       return QuadRat(R, detail::parse_rat(x[0], w), detail::parse_rat(x[1], w));
                                                     }),
                         QuadRat(R, 0));
}

/// The matrix as an input file would describe it.
template <class R>
Json matrix_file_json(const Matrix<R>& M) {
  Json j = ring_json(M.proto());
  j.erase("basis");
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  j["entries"] = to_json(M);
  return j;
}

// ---------------------------------------------------------------- certificates and decisions

template <class F>
Json to_json(const NonSplitFactor<F>& c) {
  return Json{{"kind", "NonSplitFactor"}, {"factor", to_json(c.factor)}, {"charpoly", to_json(c.charpoly)}};
}
template <class F>
Json to_json(const DefectiveEigenvalue<F>& c) {
  return Json{{"kind", "DefectiveEigenvalue"}, {"eigenvalue", to_json(c.eigenvalue)}, {"algebraic", c.algebraic}, {"geometric", c.geometric}};
}
inline Json to_json(const ContentClassObstruction& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries)
    entries.push_back({{"eigenvalue", to_json(e.eigenvalue)},
                       {"eigenvector", to_json(e.eigenvector)},
                       {"content", to_json(e.content)},
                       {"class_rep", to_json(e.class_rep)}});
  return Json{{"kind", "ContentClassObstruction"}, {"entries", entries}, {"blocked", c.blocked}};
}
template <class R>
Json to_json(const DetThetaObstruction<R>& c) {
  return Json{{"kind", "DetThetaObstruction"}, {"theta", to_json(c.theta)}, {"det", to_json(c.det)}, {"primes", c.primes}};
}
inline Json to_json(const LocalValuationObstruction& c) {
  return Json{{"kind", "LocalValuationObstruction"}, {"prime", c.prime}, {"ord_xy", c.ord_xy}, {"ord_a", c.ord_a}};
}
inline Json to_json(const ClassDistributionInfeasible& c) {
  return Json{{"kind", "ClassDistributionInfeasible"},
              {"B", to_json(c.B)},
              {"integral", c.integral},
              {"contents", to_json(c.contents)},
              {"targets", to_json(c.targets)}};
}

template <class R>
Json to_json(const Decision<R>& d) {
  Json j{{"verdict", to_string(d.verdict)}, {"mode", d.mode}};
  j["witness"] = d.witness ? to_json(*d.witness) : Json();
  j["transformed"] = d.transformed ? to_json(*d.transformed) : Json();
  j["certificate"] = d.certificate ? std::visit([](const auto& c) { return to_json(c); }, *d.certificate) : Json();
  j["note"] = d.note;
  return j;
}

// ---------------------------------------------------------------- counterexamples

inline Json to_json(const TriCexRecipe& r) {
  return Json{{"ring", ring_json(r.ring)}, {"n", r.n},       {"a", to_json(r.a)},           {"b", to_json(r.b)},
              {"corner_flipped", r.corner_flipped},     {"N", to_json(r.N)}, {"det_N", to_json(r.detN)}, {"lambda", to_json(r.lambda)},
              {"M", to_json(r.M)}};
}

inline Json to_json(const DiagCexRecipe& r) {
  Json local{{"prime", to_json(r.local.prime)},
             {"uniformizer", to_json(r.local.uniformizer)},
             {"scaled_witness", to_json(r.local.scaled)},
             {"ord_det", r.local.ord_det},
             {"min_entry_ord", r.local.min_entry_ord}};
  return Json{{"ring", ring_json(r.ring)},
              {"n", r.n},
              {"m", r.m},
              {"p0", to_json(r.p0)},
              {"pa", to_json(r.pa)},
              {"ps", to_json(r.ps)},
              {"pr", to_json(r.pr)},
              {"pt", to_json(r.pt)},
              {"a", to_json(r.a)},
              {"a0", to_json(r.a0)},
              {"s", to_json(r.s)},
              {"r", to_json(r.r)},
              {"t", to_json(r.t)},
              {"alpha", to_json(r.alpha)},
              {"beta", to_json(r.beta)},
              {"T0", to_json(r.T0)},
              {"lambda", to_json(r.lambda)},
              {"M", to_json(r.M)},
              {"local", local}};
}

inline Json to_json(const CertificationReport& c) {
  Json locals = Json::array();
  bool all = true;
  for (const auto& l : c.locals) {
    locals.push_back({{"prime", l.prime.str()}, {"norm", to_json(l.prime.norm())}, {"ok", l.ok}});
    all = all && l.ok;
  }
  return Json{{"kind", to_string(c.kind)},
              {"prime_norm_bound", c.prime_norm_bound},
              {"field_leg", to_json(c.field)},
              {"local_leg", {{"all_ok", all}, {"primes", locals}}},
              {"ring_leg", to_json(c.ring)},
              {"ring_certificate_rechecked", c.ring_recheck}};
}

// ---------------------------------------------------------------- reports

template <class R>
Json to_json(const LocalGlobalReport<R>& rep) {
  Json conds = Json::array();
  for (const auto& c : rep.conditions) {
    Json j{{"index", c.index}, {"statement", c.statement}, {"status", to_string(c.status)}};
    if (c.decision) j["decision"] = to_json(*c.decision);
    if (!c.primes.empty()) {
      Json ps = Json::array();
      for (const auto& p : c.primes) {
        Json pj{{"prime", p.prime}, {"norm", to_json(p.norm)}, {"status", to_string(p.status)}};
        if (c.index == 3) pj["level"] = p.level;
        if (!p.note.empty()) pj["note"] = p.note;
        ps.push_back(pj);
      }
      j["primes"] = ps;
    }
    if (!c.note.empty()) j["note"] = c.note;
    conds.push_back(j);
  }
  return Json{{"kind", to_string(rep.kind)},          {"prime_norm_bound", rep.prime_norm_bound},
              {"residue_levels", rep.residue_levels}, {"primes_checked", rep.primes_checked},
              {"conditions", conds},                  {"violations", rep.violations},
              {"notes", rep.notes}};
}

inline Json to_json(const StrataAudit& a) {
  Json counts;
  for (const auto& s : a.strata) counts["V" + s.index.str()] = to_json(s.points);
  counts["X"] = to_json(a.x_points);
  counts["Xprime"] = to_json(a.xprime_points);
  counts["union"] = to_json(a.union_points);
  Json inter = Json::object();
  for (const auto& [k, v] : a.intersections) inter["V" + k.first + "&V" + k.second] = to_json(v);
  Json strata = Json::array();
  for (const auto& s : a.strata)
    strata.push_back({{"r", s.index.r}, {"dim", s.dim}, {"points", to_json(s.points)}, {"polynomial_value", to_json(s.polynomial)}});
  return Json{{"shape", {{"m", a.m}, {"n", a.n}, {"lambda", a.lambda}}},
              {"q", a.q},
              {"union_ok", a.union_ok},
              {"presentation_ok", a.presentation_ok},
              {"classification_ok", a.classification_ok},
              {"polynomial_ok", a.polynomial_ok},
              {"counts", counts},
              {"intersections", inter},
              {"strata", strata},
              {"failures", a.failures}};
}

inline Json to_json(const JordanShape& s) {
  Json blocks = Json::array();
  for (const auto& b : s.blocks) blocks.push_back({{"lambda", b.lambda}, {"size", b.size}});
  return blocks;
}

inline Json to_json(const ComponentAudit& a) {
  Json comps = Json::array();
  for (const auto& [p, c] : a.components) comps.push_back({{"sigma", p}, {"points", to_json(c)}});
  return Json{{"q", a.q},
              {"variety", a.diagonal ? "Y" : "X"},
              {"total", to_json(a.total)},
              {"expected_total", to_json(a.expected_total)},
              {"expected_each", to_json(a.expected_each)},
              {"counts_ok", a.counts_ok},
              {"transport_ok", a.transport_ok},
              {"components", comps},
              {"failures", a.failures}};
}

}  // namespace locglob
