#pragma once

// Shared helpers for the test binaries: fixture loading, seeded generators,
// and oracles written independently of the library code they check.

#include "sepkit/dualgraph.hpp"
#include "sepkit/exactfield.hpp"
#include "sepkit/holonomy.hpp"
#include "sepkit/intersection.hpp"
#include "sepkit/verdict.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testkit {

using namespace sepkit;

std::string read_file(const std::string& path);
std::string data_path(const std::string& name);
DualGraph load(const std::string& name);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

// Fields used by the generators.
FieldPtr field_q();
FieldPtr field_gauss();     // Q(i)
FieldPtr field_sqrt2();     // Q(sqrt 2)
FieldPtr field_eisenstein();  // Q(zeta_3)

Rational random_rational(Rng& rng, std::int64_t max_abs = 9);
FieldElement random_nonzero(Rng& rng, const FieldPtr& field);
/// A root of unity in `field` (±1, ±i, ±zeta_3^k as available).
FieldElement random_root_of_unity(Rng& rng, const FieldPtr& field);

struct CycleGraphOptions {
  std::size_t min_n = 2, max_n = 7;
  std::size_t min_extra = 1, max_extra = 3;  // non-tree crossings
  unsigned root_of_unity_percent = 50;
  unsigned saddle_node_percent = 0;
  bool pad = true;
};

/// Connected multigraph with at least one cycle, diagonally dominant negative
/// self-intersections, padded vertex sums. Field drawn from the four above.
DualGraph random_cycle_graph(Rng& rng, const CycleGraphOptions& opt = {});

/// Crossing indices built from random residues so the representation is
/// trivial by construction: cs_tail = -mu(head) / mu(tail).
DualGraph random_trivial_graph(Rng& rng, std::size_t n, std::size_t extra, const FieldPtr& field);

/// Random connected multigraph with a negative definite intersection matrix
/// that need not be diagonally dominant. Indices are placeholders.
DualGraph random_negative_definite_graph(Rng& rng, std::size_t n);

/// Permutes components and renames every id consistently.
DualGraph relabel(const DualGraph& g, Rng& rng);

/// Reverses the orientation of a random subset of crossings.
DualGraph flip_some(const DualGraph& g, Rng& rng);

// ---- oracles ----

/// Rank over Q by Gauss-Jordan elimination on rationals.
std::size_t rank_oracle(std::vector<std::vector<Rational>> rows);

/// Determinant by permutation expansion (small n only).
Integer det_oracle(const std::vector<std::vector<Integer>>& m);

/// Negative definiteness via the pivots of Gaussian elimination on -M over Q.
bool negative_definite_oracle(const std::vector<std::vector<Integer>>& m);

/// Coordinates of each element over the power basis, as rational rows.
std::vector<std::vector<Rational>> coordinate_rows(const std::vector<FieldElement>& elems);

/// All forest components (after deleting saddle-node crossings) that receive
/// no weak-oriented saddle-node crossing, as sorted id sets.
std::vector<std::set<std::string>> toma_oracle(const DualGraph& g);

}  // namespace testkit
