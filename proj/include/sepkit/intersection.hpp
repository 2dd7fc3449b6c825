#pragma once

// Intersection matrix of the curve and exact definiteness tests.

#include "sepkit/dualgraph.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sepkit {

struct IntersectionMatrix {
  std::vector<std::string> ids;  // component order
  std::vector<std::vector<std::int64_t>> entries;

  std::size_t order() const { return ids.size(); }
  std::vector<std::vector<Integer>> as_integers() const;
};

struct Definiteness {
  bool negative_definite = false;
  Integer determinant;
  bool invertible = false;
  /// Leading principal minors of orders 1..k, stopping at the first zero.
  std::vector<Integer> leading_minors;
};

/// Diagonal = self-intersections, off-diagonal = number of crossings.
IntersectionMatrix intersection_matrix(const DualGraph& g);

Definiteness definiteness(const IntersectionMatrix& m);
Definiteness definiteness(const std::vector<std::vector<Integer>>& m);

/// Exact determinant by Bareiss elimination with row pivoting.
Integer determinant(std::vector<std::vector<Integer>> m);

/// A C-divisor supported on components and separatrix germs (keyed by the
/// smooth singularity id the germ passes through).
struct Divisor {
  std::map<std::string, FieldElement> coefficients;
};

/// R . C_j for every component, in component order. Throws UnknownId.
std::vector<std::pair<std::string, FieldElement>> divisor_pairing(const DualGraph& g, const Divisor& r);

}  // namespace sepkit
