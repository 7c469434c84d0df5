#pragma once

// Cremona criteria: which automorphisms could come from Bir(P^3).

#include "k3lat/autgroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3lat {

inline const Integer& small_curve_threshold() {
  static const Integer kThreshold = 225;
  return kThreshold;
}

struct DegreeLine {
  int degree = 0;
  std::string conclusion;
};

struct SmallCurveCriterion {
  bool holds = false;
  Integer r;
  std::optional<LatticeVector> quartic_class;  // primitive class of square 4
  std::optional<BasisChange> normalization;    // basis with quartic_class first
  std::vector<DegreeLine> ledger;              // filled when holds
  std::vector<std::string> reasons;            // why it fails
};

/// r > 225 and no 0 or -2 classes, read in a basis whose first vector has
/// square 4. Every curve of degree d < 16 then has n = 0.
inline SmallCurveCriterion small_curve_criterion(const GramMatrix& g,
                                                 RepresentMode mode = RepresentMode::exact) {
  SmallCurveCriterion out;
  out.r = g.r();

  if (g.quartic_normalized()) {
    out.quartic_class = LatticeVector{1, 0};
  } else {
    const auto four = represents(g, 4, RepresentMode::exact);
    if (four.witness) out.quartic_class = four.witness;
  }
  if (out.quartic_class) {
    out.normalization = complete_primitive_to_basis(g, *out.quartic_class);
  } else {
    out.reasons.push_back("no quartic normalization witnessed");
  }

  if (out.r <= small_curve_threshold()) {
    out.reasons.push_back("r=" + to_string(out.r) + " ≤ " + to_string(small_curve_threshold()));
  }
  if (represents(g, 0, mode).represented) out.reasons.push_back("the lattice represents 0");
  if (represents(g, -2, mode).represented) out.reasons.push_back("the lattice represents -2");
  out.holds = out.reasons.empty();
  if (!out.holds) return out;

  for (int d = 1; d <= 15; ++d) {
    // 4 C^2 = d^2 - r n^2 > 0 and d^2 <= 225 < r leave only n = 0.
    std::string line = "d=" + std::to_string(d) + ": d^2=" + std::to_string(d * d) + " < r=" +
                       to_string(out.r) + ", so d^2 - r n^2 > 0 forces n=0";
    line += d % 4 == 0 ? ", C=" + std::to_string(d / 4) + "h1 is cut by a hypersurface"
                       : ", and 4 does not divide d, so no such class";
    out.ledger.push_back({d, std::move(line)});
  }
  return out;
}

enum class OrderTag { finite, infinite };

inline const char* order_name(OrderTag t) { return t == OrderTag::finite ? "finite" : "infinite"; }

enum class LinearKind { excluded_no_fixed_square_four, excluded_infinite_order, not_excluded };

inline const char* linear_kind_name(LinearKind k) {
  switch (k) {
    case LinearKind::excluded_no_fixed_square_four: return "excluded: no fixed square-4 class";
    case LinearKind::excluded_infinite_order: return "excluded: infinite order";
    case LinearKind::not_excluded: return "not-excluded";
  }
  return "not-excluded";
}

struct LinearVerdict {
  LinearKind kind = LinearKind::not_excluded;
  std::optional<LatticeVector> fixed_vector;
  std::optional<Integer> fixed_square;
  std::string detail;

  bool excluded() const { return kind != LinearKind::not_excluded; }
};

/// Could `iso` be the restriction of a projective linear map for some
/// embedding? Infinite order: never. Finite order: only if it fixes a class
/// of square 4, and the fixed classes are the multiples of one primitive v.
inline LinearVerdict linear_verdict(const Isometry& iso, OrderTag order) {
  LinearVerdict out;
  if (order == OrderTag::infinite) {
    out.kind = LinearKind::excluded_infinite_order;
    out.detail = "an automorphism of infinite order is not the restriction of a projective automorphism";
    return out;
  }
  if (!(iso.matrix() * iso.matrix() == Matrix2::identity())) {
    throw Error("linear_verdict: finite case expects an involution");
  }
  out.fixed_vector = fixed_primitive_vector(iso, 1);
  if (!out.fixed_vector) {
    out.kind = LinearKind::excluded_no_fixed_square_four;
    out.detail = "no nonzero fixed class";
    return out;
  }
  const Integer q = evaluate(iso.gram(), *out.fixed_vector);
  out.fixed_square = q;
  if (q == 4 || q == 1) {
    out.kind = LinearKind::not_excluded;
    out.detail = "fixed class (" + to_string(out.fixed_vector->m) + ", " +
                 to_string(out.fixed_vector->n) + ") has square " + to_string(q);
    return out;
  }
  out.kind = LinearKind::excluded_no_fixed_square_four;
  out.detail = "fixed classes are lambda*(" + to_string(out.fixed_vector->m) + ", " +
               to_string(out.fixed_vector->n) + ") with square " + to_string(q) +
               "*lambda^2 != 4";
  return out;
}

struct GeneratorVerdict {
  std::string id;
  OrderTag order;
  LinearVerdict verdict;
};

enum class GlobalVerdict { no_nontrivial_automorphism_induced, inconclusive };

inline const char* global_verdict_name(GlobalVerdict v) {
  return v == GlobalVerdict::no_nontrivial_automorphism_induced
             ? "no-nontrivial-automorphism-induced"
             : "inconclusive";
}

struct GizatullinReport {
  SmallCurveCriterion small_curve;
  bool birational_excluded = false;
  std::string birational_verdict;  // "excluded-by-r>225" or "not-excluded(...)"
  std::vector<GeneratorVerdict> per_generator;
  GlobalVerdict global = GlobalVerdict::inconclusive;
  std::vector<std::string> reasons;
  std::string reduction;
  std::string embedding_independence;
};

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline GizatullinReport full_verdict(const GramMatrix& g, const AutGroupReport& report,
                                     RepresentMode mode = RepresentMode::exact) {
  GizatullinReport out;
  out.small_curve = small_curve_criterion(g, mode);
  out.birational_excluded = out.small_curve.holds;
  out.birational_verdict = out.birational_excluded
                               ? "excluded-by-r>225"
                               : "not-excluded(" + join(out.small_curve.reasons, "; ") + ")";
  out.embedding_independence =
      "every embedding into P^3 is given by a very ample H with H^2=4; H is primitive, so it "
      "completes to a basis (H, w) of Pic(S) and the criterion reads the same r in that basis";

  switch (report.classification) {
    case Classification::unsupported:
      out.reasons.push_back("automorphism group not classified: " + report.reason);
      break;
    case Classification::infinite_cyclic:
      out.per_generator.push_back(
          {"g", OrderTag::infinite, linear_verdict(report.cyclic->iso, OrderTag::infinite)});
      out.reduction = "Aut = Z: every nontrivial element has infinite order";
      break;
    case Classification::infinite_dihedral:
      for (const auto& inv : report.involutions) {
        out.per_generator.push_back({inv.id, OrderTag::finite, linear_verdict(inv.iso, OrderTag::finite)});
      }
      out.per_generator.push_back(
          {"g", OrderTag::infinite, linear_verdict(report.cyclic->iso, OrderTag::infinite)});
      out.reduction =
          "finite-order elements are (sigma tau)^l sigma; l=2m gives a conjugate of sigma by "
          "(tau sigma)^m, l=2m+1 a conjugate of tau by (sigma tau)^m sigma; conjugates fix the "
          "images of the fixed classes, so the sigma and tau classes decide all reflections";
      break;
  }

  if (!out.birational_excluded) {
    for (const auto& reason : out.small_curve.reasons) out.reasons.push_back(reason);
  }
  for (const auto& gv : out.per_generator) {
    if (!gv.verdict.excluded()) {
      out.reasons.push_back(gv.id + " not excluded: " + gv.verdict.detail);
    }
  }
  if (out.reasons.empty()) out.global = GlobalVerdict::no_nontrivial_automorphism_induced;
  return out;
}

}  // namespace k3lat
