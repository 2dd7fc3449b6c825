#pragma once

// Decorated resolution dual graphs: components (vertices), crossings (edges)
// and the foliation data attached to them.

#include "sepkit/exactfield.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sepkit {

enum class SingularityKind { NonDegenerate, SaddleNodeStrongOnC, SaddleNodeWeakOnC };

std::string_view to_string(SingularityKind kind);

/// A singular point of the foliation on a component away from the crossings.
struct SmoothSingularity {
  std::string id;
  SingularityKind kind = SingularityKind::NonDegenerate;
  /// CS index of the component at this point. May be absent only for
  /// saddle-nodes; a strong-on-C saddle-node then defaults to 0.
  std::optional<FieldElement> cs;
  bool has_transverse_separatrix = true;
  /// Set when the entry stands for a crossing with a component dropped by
  /// induced_subcurve.
  std::optional<std::string> attached_to;
};

struct Component {
  std::string id;
  std::int64_t self_intersection = 0;
  std::uint32_t genus = 0;
  std::vector<SmoothSingularity> smooth_singularities;
};

/// Stores CS(F, C_tail, p). The head-side index is its reciprocal and is never
/// stored.
struct NonDegenerateCrossing {
  FieldElement cs_tail;
};

struct SaddleNodeCrossing {
  std::string weak;  // tail or head
  std::optional<FieldElement> cs_weak;
};

struct Crossing {
  std::string id;
  std::string tail;
  std::string head;
  std::variant<NonDegenerateCrossing, SaddleNodeCrossing> kind;

  bool is_saddle_node() const { return std::holds_alternative<SaddleNodeCrossing>(kind); }
};

struct GorensteinData {
  std::int64_t k = 1;
  std::map<std::string, std::int64_t> a;
};

struct DualGraph {
  FieldPtr field;
  std::vector<Component> components;
  std::vector<Crossing> crossings;
  std::optional<GorensteinData> gorenstein;
  /// The input asserts there are no foliation singularities on the curve
  /// besides the crossings.
  bool closed_world = false;

  /// Throws UnknownId.
  std::size_t index_of(std::string_view component_id) const;
  std::optional<std::size_t> find(std::string_view component_id) const;
  std::size_t tail_index(const Crossing& c) const { return index_of(c.tail); }
  std::size_t head_index(const Crossing& c) const { return index_of(c.head); }
  std::size_t smooth_singularity_count() const;
};

/// CS(F, C_v, p) at crossing `c` seen from component `v`: cs_tail on the tail,
/// 1/cs_tail on the head; for saddle-nodes 0 on the strong side and cs_weak on
/// the weak side (nullopt when unspecified).
std::optional<FieldElement> crossing_index_at(const DualGraph& g, const Crossing& c, std::size_t v);

/// Checks every structural invariant (ids, endpoints, self-loops, element
/// lengths, connectivity, Gorenstein coverage). Throws the matching Error.
void validate_structure(const DualGraph& g);

/// Rewrites each crossing so the tail precedes the head in component order.
void normalize_orientation(DualGraph& g);

/// Parses and validates the JSON input format. Orientation is normalized.
DualGraph parse_graph(std::string_view document);

/// Inverse of parse_graph. Key order is fixed so output is reproducible.
std::string serialize_graph(const DualGraph& g);

enum class Severity { Error, Warning, Info };

std::string_view to_string(Severity s);

struct Finding {
  Severity severity = Severity::Info;
  std::string code;
  std::string subject;
  std::string message;
};

/// Vertex-sum (Camacho-Sad) consistency, reducedness screen, and per-component
/// Z-index / normal degree report.
std::vector<Finding> validate_indices(const DualGraph& g);

bool has_errors(std::span<const Finding> findings);

/// Restricts to `keep`; crossings with dropped components become smooth
/// singularities on the kept side carrying the kept side's CS index.
/// Throws EmptySelection, DisconnectedSelection, UnknownId.
DualGraph induced_subcurve(const DualGraph& g, std::span<const std::string> keep);

/// True when the components at `vertices` induce a connected subgraph.
bool induces_connected(const DualGraph& g, std::span<const std::size_t> vertices);

}  // namespace sepkit
