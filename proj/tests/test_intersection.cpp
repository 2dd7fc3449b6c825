#include "support.hpp"

#include "sepkit/error.hpp"
#include "sepkit/fixtures.hpp"

#include <doctest.h>

using namespace testkit;

TEST_CASE("Camacho-shape matrix") {
  const DualGraph g = load("camacho_sqrt21.json");
  const IntersectionMatrix m = intersection_matrix(g);
  CHECK(m.entries == std::vector<std::vector<std::int64_t>>{{-2, 1, 1}, {1, -2, 1}, {1, 1, -3}});
  const Definiteness d = definiteness(m);
  CHECK(d.leading_minors == std::vector<Integer>{-2, 3, -3});
  CHECK(d.determinant == -3);
  CHECK(d.negative_definite);
  CHECK(d.invertible);
}

TEST_CASE("plane cycle is neither definite nor invertible") {
  const Definiteness d = definiteness(intersection_matrix(p2_cycle_example(Rational(2)).graph));
  CHECK_FALSE(d.negative_definite);
  CHECK(d.determinant == 0);
  CHECK_FALSE(d.invertible);
}

TEST_CASE("multiple crossings between two curves add up") {
  DualGraph g = load("chain_sqrt2.json");
  Crossing extra = g.crossings[0];
  extra.id = "p12b";
  g.crossings.push_back(extra);
  CHECK(intersection_matrix(g).entries[0][1] == 2);
}

TEST_CASE("determinant and definiteness agree with brute-force oracles") {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 6));
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const long v = i == j ? static_cast<long>(rng.between(-6, 1)) : static_cast<long>(rng.between(0, 2));
        m[i][j] = v;
        m[j][i] = v;
      }
    }
    const Definiteness d = definiteness(m);
    CHECK(d.determinant == det_oracle(m));
    CHECK(d.negative_definite == negative_definite_oracle(m));
    CHECK(determinant(m) == det_oracle(m));
  }
}

TEST_CASE("determinant with a zero leading entry pivots") {
  const std::vector<std::vector<Integer>> m{{0, 1, 2}, {1, 0, 3}, {2, 3, 0}};
  CHECK(determinant(m) == det_oracle(m));
  CHECK_FALSE(definiteness(m).negative_definite);
}

TEST_CASE("divisor pairing on the Camacho matrix") {
  const DualGraph g = load("camacho_sqrt21.json");
  Divisor d;
  d.coefficients.emplace("E1", FieldElement::from_int(g.field, -1));
  const auto p = divisor_pairing(g, d);
  REQUIRE(p.size() == 3);
  CHECK(p[0].first == "E1");
  CHECK(p[0].second == FieldElement::from_int(g.field, 2));
  CHECK(p[1].second == FieldElement::from_int(g.field, -1));
  CHECK(p[2].second == FieldElement::from_int(g.field, -1));

  Divisor bad;
  bad.coefficients.emplace("nowhere", FieldElement::one(g.field));
  CHECK_THROWS_AS(divisor_pairing(g, bad), Error);
}

TEST_CASE("separatrix germs pair with their host only") {
  const DualGraph g = load("chain_sqrt2.json");
  Divisor d;
  d.coefficients.emplace("s2", FieldElement::from_int(g.field, 5));
  const auto p = divisor_pairing(g, d);
  CHECK(p[0].second.is_zero());
  CHECK(p[1].second == FieldElement::from_int(g.field, 5));
}

TEST_CASE("divisor pairing is linear") {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const DualGraph g = random_cycle_graph(rng);
    auto random_divisor = [&] {
      Divisor d;
      for (const auto& c : g.components)
        if (rng.chance(70)) d.coefficients.emplace(c.id, random_nonzero(rng, g.field));
      for (const auto& c : g.components)
        for (const auto& s : c.smooth_singularities)
          if (rng.chance(50)) d.coefficients.emplace(s.id, random_nonzero(rng, g.field));
      return d;
    };
    const Divisor r = random_divisor(), s = random_divisor();
    const FieldElement a = random_nonzero(rng, g.field), b = random_nonzero(rng, g.field);
    Divisor combo;
    for (const auto& [k, v] : r.coefficients) combo.coefficients.emplace(k, a * v);
    for (const auto& [k, v] : s.coefficients) {
      auto [it, inserted] = combo.coefficients.emplace(k, b * v);
      if (!inserted) it->second += b * v;
    }
    const auto pr = divisor_pairing(g, r), ps = divisor_pairing(g, s), pc = divisor_pairing(g, combo);
    for (std::size_t j = 0; j < pc.size(); ++j) CHECK(pc[j].second == a * pr[j].second + b * ps[j].second);
  }
}
