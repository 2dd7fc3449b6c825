#pragma once

// Cohomology of the dual graph with coefficients in the multiplicative group
// of the field: cycle basis, holonomies of the residual representation, and
// the residual divisor when the representation is trivial.

#include "sepkit/dualgraph.hpp"
#include "sepkit/intersection.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sepkit {

/// One crossing traversed either tail->head (forward) or head->tail.
struct DirectedStep {
  std::size_t crossing = 0;
  bool forward = true;

  friend bool operator==(const DirectedStep&, const DirectedStep&) = default;
};

struct CycleBasis {
  std::vector<std::size_t> tree;  // crossing indices of the spanning tree
  /// One fundamental cycle per non-tree crossing; the first step is that
  /// crossing, traversed tail->head.
  std::vector<std::vector<DirectedStep>> cycles;
};

/// Breadth-first spanning tree rooted at the first component, crossings
/// scanned in input order. Throws Disconnected.
CycleBasis cycle_basis(const DualGraph& g);

/// Fundamental cycles relative to an arbitrary spanning tree. Throws
/// SchemaError if `tree` is not a spanning tree of g.
CycleBasis cycle_basis_from_tree(const DualGraph& g, std::span<const std::size_t> tree);

/// Which side's CS index defines the edge weight.
///   HeadSide: delta(tail->head) = -1/cs_tail  (= -CS on the head component)
///   TailSide: delta(tail->head) = -cs_tail
/// TailSide holonomies are exactly the inverses of HeadSide ones.
enum class Convention { HeadSide, TailSide };

/// Edge weight for traversing crossing `index` in the given direction.
/// Throws SaddleNodePresent for saddle-node crossings.
FieldElement edge_weight(const DualGraph& g, std::size_t index, bool forward,
                         Convention convention = Convention::HeadSide);

/// Ordered product of edge weights; nullopt if the cycle meets a saddle-node.
std::optional<FieldElement> cycle_holonomy(const DualGraph& g, std::span<const DirectedStep> cycle,
                                           Convention convention = Convention::HeadSide);

enum class RepresentationKind { Trivial, Torsion, Infinite, Indeterminate };

std::string_view to_string(RepresentationKind kind);

struct CycleHolonomy {
  std::vector<DirectedStep> cycle;
  std::optional<FieldElement> value;     // empty when the cycle meets a saddle-node
  std::optional<std::uint64_t> order;    // multiplicative order when a root of unity
};

struct RepresentationClass {
  RepresentationKind kind = RepresentationKind::Trivial;
  std::optional<std::uint64_t> order;    // set for Torsion
  std::vector<CycleHolonomy> holonomies;
  std::vector<std::size_t> indeterminate_cycles;
};

RepresentationClass representation_class(const DualGraph& g, Convention convention = Convention::HeadSide);
RepresentationClass classify(const DualGraph& g, const CycleBasis& basis,
                             Convention convention = Convention::HeadSide);

struct ResidualDivisor {
  /// Per component, in component order; the first entry is 1.
  std::vector<std::pair<std::string, FieldElement>> residues;
  /// Per smooth singularity with a known index: -cs * residue(host).
  std::vector<std::pair<std::string, FieldElement>> separatrix_residues;

  Divisor as_divisor() const;
};

/// Throws SaddleNodePresent or NontrivialRepresentation.
ResidualDivisor residual_divisor(const DualGraph& g);

}  // namespace sepkit
