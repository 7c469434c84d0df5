#pragma once

// Classification of the automorphism group as Z or D_inf, with generators.

#include "k3lat/isometry.hpp"
#include "k3lat/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3lat {

enum class Classification { infinite_cyclic, infinite_dihedral, unsupported };

inline const char* classification_name(Classification c) {
  switch (c) {
    case Classification::infinite_cyclic: return "infinite-cyclic";
    case Classification::infinite_dihedral: return "infinite-dihedral";
    case Classification::unsupported: return "unsupported";
  }
  return "unsupported";
}

enum class Symplecticity { symplectic, anti_symplectic };

inline const char* symplecticity_name(Symplecticity s) {
  return s == Symplecticity::symplectic ? "symplectic" : "anti-symplectic";
}

struct LabeledGenerator {
  std::string id;  // "sigma", "tau", "g"
  Isometry iso;
  Symplecticity label;
  ActionVerdict action;
};

struct InvolutionCandidate {
  unsigned long long k;   // top row taken from h^{-k}
  int sign;               // +1 or -1
  RowSolution solution;
  std::optional<Isometry> involution;
  std::string rejection;  // empty when certified
};

inline const std::vector<std::string>& geometric_assumptions() {
  static const std::vector<std::string> kAssumptions{
      "Morrison existence: every even lattice of signature (1,1) is the Picard lattice of a K3 surface",
      "Gluing: an isometry of Pic(S) acting as +-Id on A(Pic(S)) extends to H^2(S,Z) by +-Id on T(S)",
      "Global Torelli: an ample-cone preserving Hodge isometry is induced by a unique automorphism",
      "Without 0 and -2 classes the ample cone is a component of the positive cone",
      "Symplectic labels are read off the discriminant action (+Id symplectic, -Id anti-symplectic), valid for Picard number <= 8"};
  return kAssumptions;
}

struct AutGroupReport {
  Classification classification = Classification::unsupported;
  std::string reason;                       // for unsupported
  std::optional<Representation> isotropic;  // represents(G, 0)
  std::optional<Representation> minus_two;  // represents(G, -2)
  std::optional<GeneratorH> generator;
  unsigned long long discriminant_order = 0;          // order of h on A(L)
  std::optional<unsigned long long> minus_exponent;   // least k with h^k = -Id on A(L)
  unsigned long long cyclic_exponent = 0;
  std::optional<LabeledGenerator> cyclic;
  std::vector<LabeledGenerator> involutions;
  std::vector<InvolutionCandidate> candidates;
  std::optional<LatticeVector> cone_reference;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;
};

/// A vector of positive square fixing the component of the positive cone
/// that plays the ample cone: h1 when 2a > 0, else h2, else the first small
/// positive vector.
inline LatticeVector positive_reference(const GramMatrix& g) {
  if (g.a() > 0) return {1, 0};
  if (g.c() > 0) return {0, 1};
  for (long bound = 1;; ++bound) {
    for (long n = -bound; n <= bound; ++n) {
      for (long m = -bound; m <= bound; ++m) {
        const LatticeVector v{m, n};
        if (evaluate(g, v) > 0) return v.m < 0 || (v.m == 0 && v.n < 0) ? Integer(-1) * v : v;
      }
    }
  }
}

/// Certifies an involution: integral isometry, squares to I, acts as -Id on
/// A(L), preserves the positive-cone component of `reference`. Returns the
/// reason for rejection, or an empty string.
inline std::string certify_involution(const Isometry& iso, const LatticeVector& reference) {
  if (!(iso.matrix() * iso.matrix() == Matrix2::identity())) return "does not square to I";
  if (eigenspace_rank(iso, 1) != 1) return "+1-eigenlattice does not have rank 1";
  const auto action = discriminant_action(iso);
  if (action.verdict != ActionVerdict::minus_identity) {
    return std::string("discriminant action is ") + verdict_name(action.verdict);
  }
  if (!positive_cone_preserving(iso, reference)) return "swaps the positive cone components";
  return {};
}

/// All involution candidates tau(+-row1(h^{-k})), k = 1..order, with their
/// verdicts. Every improper isometry is +-h^j tau_0 and the discriminant
/// action is periodic in j with period `order`, so this list decides whether
/// a certified involution exists.
inline std::vector<InvolutionCandidate> enumerate_involutions(const GramMatrix& g,
                                                              const GeneratorH& gen,
                                                              unsigned long long order,
                                                              const LatticeVector& reference) {
  std::vector<InvolutionCandidate> out;
  const Isometry h_inv = inverse(gen.h);
  Matrix2 p = Matrix2::identity();
  for (unsigned long long k = 1; k <= order; ++k) {
    p = p * h_inv.matrix();
    for (int s : {1, -1}) {
      InvolutionCandidate c{k, s, {Integer(s) * p.m00, Integer(s) * p.m01}, std::nullopt, {}};
      try {
        Isometry tau = involution_from_solution(g, c.solution);
        c.rejection = certify_involution(tau, reference);
        c.involution = std::move(tau);
      } catch (const ConstructionError& e) {
        c.rejection = e.what();
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

inline AutGroupReport classify(const GramMatrix& g, RepresentMode mode = RepresentMode::exact) {
  AutGroupReport report;
  report.assumptions = geometric_assumptions();
  const Integer r = g.r();
  if (auto root = pell::is_perfect_square(r)) {
    report.reason = "r = " + to_string(r) + " is a perfect square (isotropic classes exist)";
    report.isotropic = represents(g, 0, mode);
    return report;
  }
  report.isotropic = represents(g, 0, mode);
  if (report.isotropic->represented) {
    report.reason = "the lattice represents 0";
    return report;
  }
  report.minus_two = represents(g, -2, mode);
  if (report.minus_two->represented) {
    report.reason = "the lattice represents -2";
    if (report.minus_two->witness) {
      report.reason += " by (" + to_string(report.minus_two->witness->m) + ", " +
                       to_string(report.minus_two->witness->n) + ")";
    }
    return report;
  }

  report.generator = generator_h(g);
  const GeneratorH& gen = *report.generator;
  const DiscriminantOrder ord = discriminant_order(gen.h);
  report.discriminant_order = ord.order;
  report.minus_exponent = ord.minus_exponent;
  const LatticeVector reference = positive_reference(g);
  report.cone_reference = reference;
  if (!positive_cone_preserving(gen.h, reference)) {
    throw InvariantFailure("generator h swaps the positive cone components");
  }
  if (g.content() > 1) {
    report.notes.push_back("form has content " + to_string(g.content()) +
                           "; h is built from the primitive form with r' = " +
                           to_string(r / (g.content() * g.content())));
  }
  report.notes.push_back(
      "the group-structure hypotheses checked here are r non-square and no 0 or -2 classes; "
      "r > 225 only enters the Cremona criterion");

  report.candidates = enumerate_involutions(g, gen, ord.order, reference);
  const InvolutionCandidate* first = nullptr;
  for (const auto& c : report.candidates) {
    if (c.rejection.empty()) {
      first = &c;
      break;
    }
  }

  if (first != nullptr) {
    report.classification = Classification::infinite_dihedral;
    report.cyclic_exponent = ord.order;
    const Isometry g_star = power(gen.h, static_cast<long long>(ord.order));
    const Isometry sigma = *first->involution;
    const Isometry tau = compose(g_star, sigma);
    const std::string why = certify_involution(tau, reference);
    if (!why.empty()) throw InvariantFailure("h^d * sigma is not a certified involution: " + why);
    report.involutions.push_back(
        {"sigma", sigma, Symplecticity::anti_symplectic, ActionVerdict::minus_identity});
    report.involutions.push_back(
        {"tau", tau, Symplecticity::anti_symplectic, ActionVerdict::minus_identity});
    report.cyclic = LabeledGenerator{"g", g_star, Symplecticity::symplectic,
                                     ActionVerdict::plus_identity};
    if (ord.minus_exponent) {
      report.notes.push_back("h^" + std::to_string(*ord.minus_exponent) +
                             " acts as -Id on A(L); infinite-order automorphisms in D_inf are "
                             "symplectic, so the translation subgroup is generated by h^" +
                             std::to_string(ord.order));
    }
    return report;
  }

  report.classification = Classification::infinite_cyclic;
  const bool minus_first = ord.minus_exponent.has_value() && *ord.minus_exponent < ord.order;
  report.cyclic_exponent = minus_first ? *ord.minus_exponent : ord.order;
  const Isometry gen_power = power(gen.h, static_cast<long long>(report.cyclic_exponent));
  report.cyclic = LabeledGenerator{
      "g", gen_power, minus_first ? Symplecticity::anti_symplectic : Symplecticity::symplectic,
      minus_first ? ActionVerdict::minus_identity : ActionVerdict::plus_identity};
  return report;
}

// ---------------------------------------------------------------------------
// Normal forms in D_inf = <sigma, tau>.

enum class Generator { sigma, tau };

/// Translations are (tau sigma)^l, reflections are (tau sigma)^l sigma.
struct WordNormalForm {
  long long l = 0;
  bool reflection = false;

  /// For reflections: conjugate to sigma when l is even, to tau when odd.
  Generator conjugacy_class() const { return l % 2 == 0 ? Generator::sigma : Generator::tau; }
  friend bool operator==(const WordNormalForm&, const WordNormalForm&) = default;
};

inline Generator parse_generator(const std::string& token) {
  if (token == "sigma" || token == "s" || token == "σ") return Generator::sigma;
  if (token == "tau" || token == "t" || token == "τ") return Generator::tau;
  throw Error("unknown generator token '" + token + "'");
}

inline WordNormalForm word_reduce(const std::vector<Generator>& word) {
  WordNormalForm f;
  for (Generator x : word) {
    if (x == Generator::sigma) {
      f.reflection = !f.reflection;
    } else if (f.reflection) {
      // (ts)^l s t = (ts)^(l-1)
      f.l -= 1;
      f.reflection = false;
    } else {
      // (ts)^l t = (ts)^(l+1) s
      f.l += 1;
      f.reflection = true;
    }
  }
  return f;
}

inline WordNormalForm word_reduce(const std::vector<std::string>& tokens) {
  std::vector<Generator> word;
  word.reserve(tokens.size());
  for (const auto& t : tokens) word.push_back(parse_generator(t));
  return word_reduce(word);
}

/// Multiplies the normal form out: (tau sigma)^l [sigma].
inline Matrix2 evaluate_word(const WordNormalForm& f, const Isometry& sigma, const Isometry& tau) {
  const Isometry ts = compose(tau, sigma);
  Matrix2 m = power(ts, f.l).matrix();
  if (f.reflection) m = m * sigma.matrix();
  return m;
}

}  // namespace k3lat
