#pragma once

// JSON and text renderings of every result type. Integers go out as strings.

#include "k3lat/family.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace k3lat::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "k3lat/1";
inline constexpr const char* kVersion = "1.0.0";

inline Json to_json(const Integer& v) { return to_string(v); }

inline Json to_json(const Matrix2& m) {
  return Json::array({Json::array({to_string(m.m00), to_string(m.m01)}),
                      Json::array({to_string(m.m10), to_string(m.m11)})});
}

inline Json to_json(const LatticeVector& v) { return Json::array({to_string(v.m), to_string(v.n)}); }

Json to_json(const pell::PellSolution& s);

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

inline Json to_json(const pell::PellSolution& s) {
  return Json{{"x", to_string(s.x)}, {"y", to_string(s.y)}, {"rhs", to_string(s.rhs)},
              {"tag", pell::tag_name(s.tag)}};
}

inline Json to_json(const pell::Certificate& c) {
  Json prefilters = Json::array();
  for (const auto& p : c.prefilters) {
    prefilters.push_back(Json{{"modulus", to_string(p.modulus)}, {"obstructs", p.obstructs}});
  }
  return Json{{"method", c.method},
              {"bound", to_string(c.bound)},
              {"prefilters", prefilters},
              {"obstruction_modulus", optional_json(c.obstruction_modulus)}};
}

inline Json to_json(const pell::Decision& d) {
  Json j{{"solvable", d.solvable}, {"solution", optional_json(d.solution)}};
  j["bound"] = to_string(d.certificate.bound);
  j["method"] = d.certificate.method;
  j["prefilters"] = to_json(d.certificate)["prefilters"];
  j["obstruction_modulus"] = optional_json(d.certificate.obstruction_modulus);
  return j;
}

inline Json to_json(const Representation& r) {
  Json j{{"represented", r.represented},
         {"mode", r.method},
         {"witness", optional_json(r.witness)},
         {"pell_witness", optional_json(r.pell_witness)},
         {"certificate", r.certificate}};
  if (r.pell_decision) j["pell"] = to_json(*r.pell_decision);
  return j;
}

inline Json to_json(const ScaledMatrix& s) {
  Json j{{"integral", s.integral()}};
  if (s.integral()) {
    j["value"] = to_json(s.value());
  } else {
    j["numerator"] = to_json(s.numerator);
    j["denominator"] = to_string(s.denominator);
  }
  return j;
}

inline Json to_json(const DiscriminantAction& a) {
  return Json{{"verdict", verdict_name(a.verdict)},
              {"(M-I)Q^-1", to_json(a.plus_test)},
              {"(M+I)Q^-1", to_json(a.minus_test)},
              {"smith",
               Json{{"invariants", Json::array({to_string(a.smith.d1), to_string(a.smith.d2)})},
                    {"u", to_json(a.smith.u)},
                    {"generator_images", to_json(a.generator_images)}}}};
}

inline Json isometry_json(const Isometry& iso) {
  return Json{{"matrix", to_json(iso.matrix())}, {"det", to_string(iso.det())}};
}

inline Json to_json(const LabeledGenerator& g) {
  Json j{{"id", g.id}, {"matrix", to_json(g.iso.matrix())}, {"det", to_string(g.iso.det())},
         {"label", symplecticity_name(g.label)}};
  j["discriminant_action"] = to_json(discriminant_action(g.iso));
  if (g.iso.det() == -1) {
    const auto v = fixed_primitive_vector(g.iso, 1);
    j["fixed_vector"] = optional_json(v);
    j["fixed_square"] = v ? Json(to_string(evaluate(g.iso.gram(), *v))) : Json(nullptr);
  }
  return j;
}

inline Json to_json(const AutGroupReport& r) {
  Json j{{"classification", classification_name(r.classification)}};
  if (r.classification == Classification::unsupported) j["reason"] = r.reason;
  if (r.generator) {
    j["h"] = Json{{"matrix", to_json(r.generator->h.matrix())},
                  {"alpha1", to_string(r.generator->first.alpha)},
                  {"beta1", to_string(r.generator->first.beta)},
                  {"pell", to_json(r.generator->pell)},
                  {"discriminant_action", to_json(discriminant_action(r.generator->h))}};
    j["discriminant_order"] = std::to_string(r.discriminant_order);
    j["minus_exponent"] =
        r.minus_exponent ? Json(std::to_string(*r.minus_exponent)) : Json(nullptr);
  }
  if (r.cyclic) {
    j["cyclic_generator"] = to_json(*r.cyclic);
    j["cyclic_generator"]["exponent"] = std::to_string(r.cyclic_exponent);
  } else {
    j["cyclic_generator"] = nullptr;
  }
  Json inv = Json::array();
  for (const auto& g : r.involutions) inv.push_back(to_json(g));
  j["involutions"] = inv;
  Json cand = Json::array();
  for (const auto& c : r.candidates) {
    cand.push_back(Json{{"k", std::to_string(c.k)},
                        {"sign", c.sign},
                        {"alpha", to_string(c.solution.alpha)},
                        {"beta", to_string(c.solution.beta)},
                        {"certified", c.rejection.empty()},
                        {"rejection", c.rejection.empty() ? Json(nullptr) : Json(c.rejection)}});
  }
  j["candidates"] = cand;
  j["cone_reference"] = optional_json(r.cone_reference);
  j["notes"] = r.notes;
  return j;
}

inline Json to_json(const LinearVerdict& v) {
  return Json{{"verdict", linear_kind_name(v.kind)},
              {"fixed_vector", optional_json(v.fixed_vector)},
              {"fixed_square", optional_json(v.fixed_square)},
              {"detail", v.detail}};
}

inline Json to_json(const SmallCurveCriterion& s) {
  Json ledger = Json::array();
  for (const auto& l : s.ledger) ledger.push_back(l.conclusion);
  Json j{{"holds", s.holds},
         {"r", to_string(s.r)},
         {"threshold", to_string(small_curve_threshold())},
         {"quartic_class", optional_json(s.quartic_class)}};
  j["normalized_gram"] = s.normalization ? to_json(s.normalization->transformed) : Json(nullptr);
  j["basis_change"] = s.normalization ? to_json(s.normalization->matrix) : Json(nullptr);
  j["degree_ledger"] = ledger;
  j["reasons"] = s.reasons;
  return j;
}

inline std::string global_text(const GizatullinReport& g) {
  if (g.global == GlobalVerdict::no_nontrivial_automorphism_induced) {
    return global_verdict_name(g.global);
  }
  return std::string("inconclusive: ") + join(g.reasons, "; ");
}

inline Json to_json(const GizatullinReport& g) {
  Json per = Json::array();
  for (const auto& gv : g.per_generator) {
    Json e{{"id", gv.id}, {"order", order_name(gv.order)}};
    e["linear"] = to_json(gv.verdict);
    per.push_back(e);
  }
  return Json{{"global", global_verdict_name(g.global)},
              {"summary", global_text(g)},
              {"reasons", g.reasons},
              {"birational", g.birational_verdict},
              {"small_curve_criterion", to_json(g.small_curve)},
              {"per_generator", per},
              {"reduction", g.reduction},
              {"embedding_independence", g.embedding_independence}};
}

inline Json gram_json(const GramMatrix& g) {
  return Json{{"gram", to_json(g.matrix())},
              {"a", to_string(g.a())},
              {"b", to_string(g.b())},
              {"c", to_string(g.c())},
              {"quartic_normalized", g.quartic_normalized()}};
}

inline Json envelope(const std::vector<std::string>& command) {
  return Json{{"schema", kSchema},
              {"tool", Json{{"name", "k3lat"}, {"version", kVersion}}},
              {"command", command}};
}

inline std::vector<std::string> certificates_of(const GizatullinReport& g) {
  std::vector<std::string> out;
  for (const auto& l : g.small_curve.ledger) out.push_back(l.conclusion);
  for (const auto& gv : g.per_generator) out.push_back(gv.id + ": " + gv.verdict.detail);
  return out;
}

// ---------------------------------------------------------------------------
// Analyses.

struct Analysis {
  GramMatrix gram;
  RepresentMode mode;
  Representation isotropic;
  Representation minus_two;
  AutGroupReport aut;
  GizatullinReport gizatullin;
};

inline Analysis analyze(const GramMatrix& g, RepresentMode mode) {
  AutGroupReport aut = classify(g, mode);
  GizatullinReport giz = full_verdict(g, aut, mode);
  return {g, mode, represents(g, 0, mode), represents(g, -2, mode), std::move(aut), std::move(giz)};
}

/// 0 decided, 2 inconclusive, 1 hypothesis failure.
inline int exit_code(const Analysis& a) {
  if (a.aut.classification == Classification::unsupported) return 1;
  return a.gizatullin.global == GlobalVerdict::no_nontrivial_automorphism_induced ? 0 : 2;
}

inline Json analysis_json(const Analysis& a, const std::vector<std::string>& command) {
  Json j = envelope(command);
  j["input"] = gram_json(a.gram);
  Json res{{"r", to_string(a.gram.r())},
           {"r_is_square", pell::is_perfect_square(a.gram.r()).has_value()},
           {"mode", mode_name(a.mode)},
           {"aut", classification_name(a.aut.classification)},
           {"gizatullin", global_verdict_name(a.gizatullin.global)},
           {"gizatullin_summary", global_text(a.gizatullin)}};
  res["represents_zero"] = to_json(a.isotropic);
  res["represents_minus_two"] = to_json(a.minus_two);
  res["aut_group"] = to_json(a.aut);
  res["gizatullin_report"] = to_json(a.gizatullin);
  j["results"] = res;
  j["assumptions"] = a.aut.assumptions.empty() ? geometric_assumptions() : a.aut.assumptions;
  j["certificates"] = certificates_of(a.gizatullin);
  return j;
}

inline int exit_code(const FamilyVerification& f) {
  if (!f.hypothesis_holds) return 1;
  return f.all_passed() ? 0 : 2;
}

inline Json family_json(const FamilyVerification& f, const std::vector<std::string>& command) {
  Json j = envelope(command);
  j["input"] = gram_json(f.instance.gram);
  j["input"]["n"] = to_string(f.instance.n);
  Json clauses = Json::array();
  for (const auto& c : f.clauses) {
    clauses.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  Json res{{"n", to_string(f.instance.n)},
           {"r", to_string(f.instance.r)},
           {"r_is_square", false},
           {"hypothesis_holds", f.hypothesis_holds},
           {"aut", classification_name(f.aut.classification)},
           {"gizatullin", global_text(f.gizatullin)},
           {"all_clauses_pass", f.all_passed()}};
  res["pell_minus_eight"] = to_json(f.minus_eight);
  res["minimal_pell"] = to_json(f.minimal);
  res["matrices"] = Json{{"sigma", to_json(f.instance.sigma.matrix())},
                         {"tau", to_json(f.instance.tau.matrix())},
                         {"h", to_json(f.instance.h.matrix())},
                         {"g_star", to_json(f.instance.g_star.matrix())}};
  res["discriminant_actions"] = Json{{"sigma", to_json(discriminant_action(f.instance.sigma))},
                                     {"tau", to_json(discriminant_action(f.instance.tau))},
                                     {"h", to_json(discriminant_action(f.instance.h))},
                                     {"g_star", to_json(discriminant_action(f.instance.g_star))}};
  res["clauses"] = clauses;
  res["aut_group"] = to_json(f.aut);
  res["gizatullin_report"] = to_json(f.gizatullin);
  j["results"] = res;
  j["assumptions"] = geometric_assumptions();
  j["certificates"] = certificates_of(f.gizatullin);
  return j;
}

inline Json pell_json(const Integer& r, const Integer& rhs, const pell::Decision& d,
                      const std::vector<std::string>& command) {
  Json j = envelope(command);
  j["input"] = Json{{"r", to_string(r)}, {"rhs", to_string(rhs)}};
  j["results"] = to_json(d);
  j["assumptions"] = Json::array();
  std::vector<std::string> certs;
  if (!d.solvable) {
    if (d.certificate.obstruction_modulus) {
      certs.push_back("x^2 - " + to_string(r) + " y^2 = " + to_string(rhs) + " has no solution mod " +
                      to_string(*d.certificate.obstruction_modulus));
    } else {
      certs.push_back("no solution class with 0 <= y <= " + to_string(d.certificate.bound) + " (" +
                      d.certificate.method + ")");
    }
  }
  j["certificates"] = certs;
  return j;
}

struct ScanRow {
  Integer n;
  Integer r;
  bool hypothesis = false;
  Classification aut = Classification::unsupported;
  bool excluded = false;
  std::string detail;
};

inline ScanRow scan_row(const Integer& n) {
  const FamilyVerification f = verify_main_theorem(n);
  return {n,
          f.instance.r,
          f.hypothesis_holds,
          f.aut.classification,
          f.gizatullin.global == GlobalVerdict::no_nontrivial_automorphism_induced,
          global_text(f.gizatullin)};
}

inline Json scan_json(const std::vector<ScanRow>& rows, const std::vector<std::string>& command) {
  Json j = envelope(command);
  j["input"] = Json{{"from", rows.empty() ? Json(nullptr) : Json(to_string(rows.front().n))},
                    {"to", rows.empty() ? Json(nullptr) : Json(to_string(rows.back().n))}};
  Json out = Json::array();
  std::size_t holds = 0, excluded = 0, dihedral = 0;
  Json unsolvable = Json::array();
  for (const auto& row : rows) {
    out.push_back(Json{{"n", to_string(row.n)},
                       {"r", to_string(row.r)},
                       {"pell_hypothesis", row.hypothesis ? "holds" : "fails"},
                       {"aut", classification_name(row.aut)},
                       {"verdict", row.excluded ? "excluded" : "inconclusive"},
                       {"detail", row.detail}});
    holds += row.hypothesis;
    excluded += row.excluded;
    dihedral += row.aut == Classification::infinite_dihedral;
    if (row.hypothesis) unsolvable.push_back(to_string(row.n));
  }
  j["results"] = Json{{"rows", out},
                      {"summary",
                       Json{{"count", rows.size()},
                            {"pell_hypothesis_holds", holds},
                            {"pell_hypothesis_fails", rows.size() - holds},
                            {"infinite_dihedral", dihedral},
                            {"excluded", excluded},
                            {"inconclusive", rows.size() - excluded},
                            {"hypothesis_holds_for_n", unsolvable}}}};
  j["assumptions"] = geometric_assumptions();
  j["certificates"] = Json::array();
  return j;
}

// ---------------------------------------------------------------------------
// Text.

inline std::string matrix_line(const Matrix2& m) { return matrix_text(m); }

inline std::string analysis_text(const Analysis& a) {
  std::string s;
  s += "gram        " + matrix_line(a.gram.matrix()) + "\n";
  s += "r           " + to_string(a.gram.r()) + "\n";
  s += "mode        " + std::string(mode_name(a.mode)) + "\n";
  s += "represents0 " + std::string(a.isotropic.represented ? "yes" : "no") + "\n";
  s += "represents-2 " + std::string(a.minus_two.represented ? "yes" : "no") + "\n";
  s += "aut         " + std::string(classification_name(a.aut.classification));
  if (!a.aut.reason.empty()) s += " (" + a.aut.reason + ")";
  s += "\n";
  if (a.aut.generator) s += "h           " + matrix_line(a.aut.generator->h.matrix()) + "\n";
  for (const auto& g : a.aut.involutions) {
    s += g.id + std::string(12 - std::min<std::size_t>(11, g.id.size()), ' ') +
         matrix_line(g.iso.matrix()) + "  " + symplecticity_name(g.label) + "\n";
  }
  if (a.aut.cyclic) {
    s += "g = h^" + std::to_string(a.aut.cyclic_exponent) + "     " +
         matrix_line(a.aut.cyclic->iso.matrix()) + "  " + symplecticity_name(a.aut.cyclic->label) +
         "\n";
  }
  s += "gizatullin  " + global_text(a.gizatullin) + "\n";
  return s;
}

inline std::string family_text(const FamilyVerification& f) {
  std::string s;
  s += "n           " + to_string(f.instance.n) + "\n";
  s += "r           " + to_string(f.instance.r) + "\n";
  s += "sigma       " + matrix_line(f.instance.sigma.matrix()) + "\n";
  s += "tau         " + matrix_line(f.instance.tau.matrix()) + "\n";
  s += "h           " + matrix_line(f.instance.h.matrix()) + "\n";
  s += "g*          " + matrix_line(f.instance.g_star.matrix()) + "\n";
  for (const auto& c : f.clauses) {
    s += std::string(c.passed ? "pass " : "FAIL ") + c.name + ": " + c.detail + "\n";
  }
  s += "gizatullin  " + global_text(f.gizatullin) + "\n";
  return s;
}

inline std::string pell_text(const Integer& r, const Integer& rhs, const pell::Decision& d) {
  std::string s = "x^2 - " + to_string(r) + " y^2 = " + to_string(rhs) + ": ";
  if (d.solvable) {
    s += "solvable, (" + to_string(d.solution->x) + ", " + to_string(d.solution->y) + ")\n";
  } else {
    s += "unsolvable (" + d.certificate.method + ", bound " + to_string(d.certificate.bound);
    if (d.certificate.obstruction_modulus) s += ", mod " + to_string(*d.certificate.obstruction_modulus);
    s += ")\n";
  }
  return s;
}

inline std::string scan_text(const std::vector<ScanRow>& rows) {
  std::string s;
  for (const auto& row : rows) {
    s += "n=" + to_string(row.n) + " r=" + to_string(row.r) +
         " pell-hypothesis=" + (row.hypothesis ? "holds" : "fails") +
         " aut=" + classification_name(row.aut) +
         " verdict=" + (row.excluded ? "excluded" : "inconclusive") + "\n";
  }
  return s;
}

}  // namespace k3lat::report
