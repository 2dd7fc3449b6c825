#pragma once

// Separatrix existence decisions with machine-checkable certificates.
//
// verdict() tries a fixed list of rules in priority order and cites the
// first whose hypotheses all hold:
//
//   1. tree_resolution_graph          dual graph is a tree; prune saddle-node
//                                     crossings to a subcurve meeting the
//                                     subcurve criterion
//   2. trivial_residual_representation  trivial representation, exceptional
//   3. torsion_residual_representation  torsion representation, exceptional,
//                                     no saddle-nodes
//   4. q_gorenstein_normal_sheaf      Gorenstein data, no saddle-nodes,
//                                     exceptional
//   5. closed_world_nonexistence      infinite representation, exceptional,
//                                     no singularities off the crossings
//   6. no_rule_applies                NotGuaranteed
//
// An existence rule that fires on an input declaring closed_world yields
// InconsistentInput: the declaration contradicts the rule's conclusion.

#include "sepkit/dualgraph.hpp"
#include "sepkit/holonomy.hpp"
#include "sepkit/intersection.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sepkit {

enum class Conclusion { SeparatrixExists, NotGuaranteed, CertifiedAbsent, InconsistentInput };
enum class HypothesisStatus { Satisfied, Failed, Skipped };

std::string_view to_string(Conclusion c);
std::string_view to_string(HypothesisStatus s);

struct CheckedHypothesis {
  std::string name;  // "<rule>/<check>"
  HypothesisStatus status = HypothesisStatus::Skipped;
  std::string evidence;
};

struct RuleAttempt {
  std::string rule;
  bool all_satisfied = false;
  std::vector<CheckedHypothesis> hypotheses;
};

struct CountBound {
  std::int64_t declared_m = 0;
  std::size_t lower_bound = 0;
  bool holds = false;  // declared_m >= lower_bound >= 1
};

struct GorensteinReduction {
  std::int64_t k = 0;
  /// D . E_j for D = sum (a_i - k) E_i, in component order.
  std::vector<std::pair<std::string, Integer>> pairings;
  bool orthogonality_holds = false;
  bool forced_a = false;              // a_i = k for every component
  bool holonomy_power_check = false;  // every cycle holonomy^k = 1
};

struct Witnesses {
  std::optional<std::vector<std::string>> subcurve;
  std::optional<CountBound> count_bound;
  std::optional<std::uint64_t> torsion_order;
  std::optional<GorensteinReduction> gorenstein;
};

struct Certificate {
  Conclusion conclusion = Conclusion::NotGuaranteed;
  std::string rule;
  std::string statement;
  /// Hypotheses of the cited rule; for NotGuaranteed, those of every rule tried.
  std::vector<CheckedHypothesis> hypotheses;
  Witnesses witnesses;
  /// Every rule evaluated before the conclusion, in priority order.
  std::vector<RuleAttempt> trace;
};

/// Strong-side component of the saddle-node crossings, reached by deleting
/// them and keeping the forest component no weak side points into. Ties go to
/// the component containing the earliest listed curve. Throws NotATree.
std::vector<std::string> toma_prune(const DualGraph& g);

/// Lower bound on the number of separatrix germs from the rational rank of
/// the residual divisor. Throws HypothesisUnmet naming the failed hypothesis.
CountBound separatrix_bound(const DualGraph& g);

/// Existence through a connected subcurve whose attachment points all carry
/// CS index 0. Throws EmptySelection, DisconnectedSelection, UnknownId.
Certificate subcurve_criterion(const DualGraph& ambient, std::span<const std::string> keep);

/// Evaluates the Gorenstein data under the assumption that the curve carries
/// no singularities off its crossings. Throws HypothesisUnmet or
/// GorensteinInconsistent (some D . E_j != 0).
GorensteinReduction gorenstein_reduce(const DualGraph& g);

/// Throws ValidationFailed when validate_indices reports errors.
Certificate verdict(const DualGraph& g);

/// Re-evaluates one recorded hypothesis ("<rule>/<check>") from scratch.
HypothesisStatus recheck_hypothesis(const DualGraph& g, const Certificate& cert, std::string_view name);

}  // namespace sepkit
