#pragma once

// Generators for example inputs. Every generator is deterministic in its
// parameters; random_tree uses mt19937_64, whose output sequence is fixed by
// the standard, and reduces it by hand rather than through <random>
// distributions.

#include "sepkit/dualgraph.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sepkit {

struct ExampleParams {
  std::optional<std::array<std::int64_t, 3>> self_intersections;  // camacho
  std::optional<Rational> t;                                      // p2_cycle
  std::optional<std::uint64_t> seed;                              // random_tree
  std::optional<std::size_t> n;
  std::optional<double> saddle_node_probability;
  std::optional<std::string> field;  // "rational" or "quadratic"
  std::optional<bool> closed_world;
  /// Attaches Gorenstein data with every a_i equal to k.
  std::optional<std::int64_t> gorenstein_k;
};

struct GeneratedExample {
  std::string name;
  DualGraph graph;
  /// camacho: the relation the crossing index t must satisfy.
  std::optional<RationalPolynomial> constraint;
  std::vector<std::string> notes;
};

std::vector<std::string_view> example_names();

/// Three curves meeting pairwise. The index t at the E1-E2 crossing must be a
/// root of (e2e3-1)t^2 + (e1+e2-e1e2e3-e3)t + (e1e3-1); the field is Q when
/// that root is rational and Q(t) otherwise. Throws BadParams when no root
/// gives nonzero indices.
GeneratedExample camacho_example(const std::array<std::int64_t, 3>& self_intersections, bool closed_world = true);

/// Three lines in the projective plane with indices parametrized by t.
/// Throws BadParams for t in {0, -1}.
GeneratedExample p2_cycle_example(const Rational& t);

/// Triangle over Q(i) whose residual holonomy is i.
GeneratedExample torsion4_example();

enum class TreeField { Rational, Quadratic };

/// Random negative definite tree; each crossing is a saddle-node with the
/// given probability. Vertex sums are closed with one padding singularity per
/// component.
GeneratedExample random_tree_example(std::uint64_t seed, std::size_t n, double saddle_node_probability,
                                     TreeField field = TreeField::Rational);

/// Adds one nondegenerate singularity per component absorbing whatever the
/// crossings leave of the self-intersection. Components whose sum already
/// matches get nothing. Throws SchemaError if a weak-side index is unknown.
void pad_vertex_sums(DualGraph& g, std::string_view prefix = "s");

/// Throws BadParams for unknown names or out-of-range parameters.
GeneratedExample generate_example(std::string_view name, const ExampleParams& params);

/// Parses {"self_intersections": [...], "t": "2", "seed": 7, ...}. Throws BadParams.
ExampleParams parse_example_params(std::string_view json);

/// Graph document with an extra "generator" block describing the example.
std::string serialize_example(const GeneratedExample& ex);

}  // namespace sepkit
