#pragma once

// The family Q_n = [[4, 2n], [2n, 2]] with its closed-form isometries.

#include "k3lat/gizatullin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3lat {

struct FamilyInstance {
  Integer n;
  GramMatrix gram;
  Integer r;
  Isometry sigma;
  Isometry tau;
  Isometry h;
  Isometry g_star;
};

namespace detail {

inline Matrix2 family_gram(const Integer& n) { return {4, 2 * n, 2 * n, 2}; }

inline Matrix2 family_sigma(const Integer& n) {
  const Integer n2 = n * n;
  return {2 * n2 - 1, 2 * n2 * n - 2 * n, -2 * n, 1 - 2 * n2};
}

inline Matrix2 family_tau(const Integer& n) {
  const Integer n2 = n * n, n3 = n2 * n, n4 = n2 * n2, n5 = n4 * n, n6 = n3 * n3, n7 = n6 * n;
  const Integer corner = 8 * n6 - 20 * n4 + 12 * n2 - 1;
  return {corner, 8 * n7 - 24 * n5 + 20 * n3 - 4 * n, -8 * n5 + 16 * n3 - 6 * n, -corner};
}

inline Matrix2 family_h(const Integer& n) { return {2 * n * n - 1, n, -2 * n, -1}; }

inline Matrix2 family_g_star(const Integer& n) {
  const Integer n2 = n * n;
  return {4 * n2 * n2 - 6 * n2 + 1, 2 * n2 * n - 2 * n, 4 * n - 4 * n2 * n, 1 - 2 * n2};
}

}  // namespace detail

inline FamilyInstance instantiate(const Integer& n) {
  if (n < 2) throw HypothesisError("family requires n >= 2, got n=" + to_string(n));
  const GramMatrix g = admit(detail::family_gram(n));
  if (pell::is_perfect_square(g.r())) throw InvariantFailure("r = 4n^2 - 8 is a square");
  FamilyInstance f{n,
                   g,
                   g.r(),
                   verify(g, detail::family_sigma(n)),
                   verify(g, detail::family_tau(n)),
                   verify(g, detail::family_h(n)),
                   verify(g, detail::family_g_star(n))};
  const Matrix2 id = Matrix2::identity();
  if (!(f.sigma.matrix() * f.sigma.matrix() == id)) throw InvariantFailure("sigma^2 != I");
  if (!(f.tau.matrix() * f.tau.matrix() == id)) throw InvariantFailure("tau^2 != I");
  if (!(generator_h(g).h.matrix() == f.h.matrix())) throw InvariantFailure("closed-form h != generator_h");
  if (!(f.h.matrix() * f.h.matrix() == f.g_star.matrix())) throw InvariantFailure("g* != h^2");
  return f;
}

struct Clause {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FamilyVerification {
  FamilyInstance instance;
  pell::Decision minus_eight;
  Representation isotropic;
  Representation minus_two;
  pell::PellSolution minimal;
  AutGroupReport aut;
  GizatullinReport gizatullin;
  std::vector<Clause> clauses;
  bool hypothesis_holds = false;

  bool all_passed() const {
    for (const auto& c : clauses) {
      if (!c.passed) return false;
    }
    return true;
  }
};

inline std::string matrix_text(const Matrix2& m) {
  return "[[" + to_string(m.m00) + "," + to_string(m.m01) + "],[" + to_string(m.m10) + "," +
         to_string(m.m11) + "]]";
}

/// Runs the whole pipeline on Q_n and checks every printed identity.
inline FamilyVerification verify_main_theorem(const Integer& n) {
  FamilyInstance inst = instantiate(n);
  const GramMatrix& g = inst.gram;
  const Integer& r = inst.r;

  FamilyVerification out{inst,
                         pell::solvable(r, -8),
                         represents(g, 0, RepresentMode::exact),
                         represents(g, -2, RepresentMode::exact),
                         pell::minimal_solution(r, 4),
                         {},
                         {},
                         {},
                         false};
  auto add = [&](std::string name, bool ok, std::string detail) {
    out.clauses.push_back({std::move(name), ok, std::move(detail)});
  };

  add("r-non-square", true, "r=" + to_string(r) + " lies strictly between consecutive squares");
  add("pell-minus-eight-unsolvable", !out.minus_eight.solvable,
      out.minus_eight.solvable
          ? "z^2-" + to_string(r) + "b^2=-8 has (" + to_string(out.minus_eight.solution->x) + ", " +
                to_string(out.minus_eight.solution->y) + ")"
          : "z^2-" + to_string(r) + "b^2=-8 unsolvable (" + out.minus_eight.certificate.method + ")");
  add("no-isotropic-class", !out.isotropic.represented, "r is not a square");
  add("no-minus-two-class", !out.minus_two.represented,
      out.minus_two.witness ? "witness (" + to_string(out.minus_two.witness->m) + ", " +
                                  to_string(out.minus_two.witness->n) + ")"
                            : "exact orbit scan found no vector");
  out.hypothesis_holds = !out.minus_eight.solvable && !out.isotropic.represented &&
                         !out.minus_two.represented;

  const Integer x = 2 * n * n - 2;
  add("minimal-pell", out.minimal.x == x && out.minimal.y == n,
      "minimal solution of x^2-" + to_string(r) + "y^2=4 is (" + to_string(out.minimal.x) + ", " +
          to_string(out.minimal.y) + "), expected (" + to_string(x) + ", " + to_string(n) + ")");

  const Matrix2 ts = inst.tau.matrix() * inst.sigma.matrix();
  add("g-star-equals-tau-sigma", ts == inst.g_star.matrix(), "tau*sigma=" + matrix_text(ts));
  add("g-star-equals-h-squared", inst.h.matrix() * inst.h.matrix() == inst.g_star.matrix(),
      "h^2=" + matrix_text(inst.h.matrix() * inst.h.matrix()));

  const auto sa = discriminant_action(inst.sigma);
  const auto ta = discriminant_action(inst.tau);
  const auto ga = discriminant_action(inst.g_star);
  add("sigma-minus-identity", sa.verdict == ActionVerdict::minus_identity,
      std::string("sigma acts as ") + verdict_name(sa.verdict));
  add("tau-minus-identity", ta.verdict == ActionVerdict::minus_identity,
      std::string("tau acts as ") + verdict_name(ta.verdict));
  add("g-star-plus-identity", ga.verdict == ActionVerdict::plus_identity,
      std::string("g* acts as ") + verdict_name(ga.verdict));

  for (const auto* iso : {&inst.sigma, &inst.tau}) {
    const auto v = fixed_primitive_vector(*iso, 1);
    const Integer q = v ? evaluate(g, *v) : Integer(0);
    add(iso == &inst.sigma ? "sigma-fixed-square-two" : "tau-fixed-square-two", v && q == 2,
        v ? "fixed vector (" + to_string(v->m) + ", " + to_string(v->n) + "), square " + to_string(q)
          : "no fixed vector");
  }

  if (out.hypothesis_holds) {
    out.aut = classify(g);
    bool found_sigma = false, found_tau = false;
    for (const auto& inv : out.aut.involutions) {
      found_sigma = found_sigma || inv.iso.matrix() == inst.sigma.matrix();
      found_tau = found_tau || inv.iso.matrix() == inst.tau.matrix();
    }
    add("aut-infinite-dihedral",
        out.aut.classification == Classification::infinite_dihedral && found_sigma && found_tau,
        std::string("classification ") + classification_name(out.aut.classification) +
            (found_sigma && found_tau ? ", involutions sigma and tau certified"
                                      : ", printed involutions not among the certified ones"));
    out.gizatullin = full_verdict(g, out.aut);
    const bool ok = out.gizatullin.global == GlobalVerdict::no_nontrivial_automorphism_induced;
    add("gizatullin", ok,
        ok ? global_verdict_name(out.gizatullin.global)
           : std::string("inconclusive: ") + join(out.gizatullin.reasons, "; "));
  } else {
    out.aut = classify(g);
    add("aut-infinite-dihedral", false, "hypothesis fails: " + out.aut.reason);
    out.gizatullin = full_verdict(g, out.aut);
    add("gizatullin", false, "hypothesis fails");
  }
  return out;
}

}  // namespace k3lat
