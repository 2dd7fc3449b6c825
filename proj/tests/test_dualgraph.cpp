#include "support.hpp"

#include "sepkit/error.hpp"
#include "sepkit/fixtures.hpp"

#include <doctest.h>

using namespace testkit;

namespace {

ErrorCode parse_error(const std::string& doc) {
  try {
    parse_graph(doc);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("document parsed");
  return ErrorCode::BadParams;
}

const char* kTwoCurves = R"({
  "field": {"min_poly": ["0"]},
  "components": [{"id": "E1", "self_intersection": -2}, {"id": "E2", "self_intersection": -2}],
  "crossings": [{"tail": "E2", "head": "E1", "kind": "nondegenerate", "cs_tail": ["-2"]}]
})";

std::size_t count_code(const std::vector<Finding>& fs, const std::string& code) {
  std::size_t n = 0;
  for (const auto& f : fs) n += f.code == code;
  return n;
}

}  // namespace

TEST_CASE("parsing normalizes orientation and defaults crossing ids") {
  const DualGraph g = parse_graph(kTwoCurves);
  REQUIRE(g.crossings.size() == 1);
  const Crossing& c = g.crossings[0];
  CHECK(c.id == "p1");
  CHECK(c.tail == "E1");
  CHECK(c.head == "E2");
  // the stored index moved to the other side: 1 / (-2)
  CHECK(std::get<NonDegenerateCrossing>(c.kind).cs_tail == FieldElement::from_rational(g.field, Rational(-1, 2)));
  CHECK(crossing_index_at(g, c, 1) == FieldElement::from_int(g.field, -2));
}

TEST_CASE("structural errors carry their codes") {
  CHECK(parse_error("[]") == ErrorCode::SchemaError);
  CHECK(parse_error("{not json") == ErrorCode::SchemaError);
  CHECK(parse_error(R"({"field": {"min_poly": ["0"]}, "components": [], "extra": 1})") == ErrorCode::SchemaError);
  CHECK(parse_error(read_file(data_path("self_loop.json"))) == ErrorCode::SelfLoop);
  CHECK(parse_error(R"({"field": {"min_poly": ["0"]},
    "components": [{"id": "E1", "self_intersection": -1}, {"id": "E2", "self_intersection": -1}]})") ==
        ErrorCode::Disconnected);
  CHECK(parse_error(R"({"field": {"min_poly": ["0"]},
    "components": [{"id": "E1", "self_intersection": -1}],
    "crossings": [{"tail": "E1", "head": "E9", "kind": "nondegenerate", "cs_tail": ["-1"]}]})") ==
        ErrorCode::UnknownId);
  CHECK(parse_error(R"({"field": {"min_poly": ["1", "0"]},
    "components": [{"id": "E1", "self_intersection": -1}, {"id": "E2", "self_intersection": -1}],
    "crossings": [{"tail": "E1", "head": "E2", "kind": "nondegenerate", "cs_tail": ["-1"]}]})") ==
        ErrorCode::BadFieldElement);
  CHECK(parse_error(R"({"field": {"min_poly": ["0"]},
    "components": [{"id": "E1", "self_intersection": -1}, {"id": "E1", "self_intersection": -1}]})") ==
        ErrorCode::SchemaError);
  CHECK(parse_error(R"({"field": {"min_poly": ["0"]},
    "components": [{"id": "E1", "self_intersection": -1, "smooth_singularities": [
      {"id": "s", "kind": "nondegenerate", "cs": ["-1"]}]}],
    "closed_world": true})") == ErrorCode::SchemaError);
  CHECK(parse_error(R"({"field": {"min_poly": ["0"]},
    "components": [{"id": "E1", "self_intersection": -1}, {"id": "E2", "self_intersection": -1}],
    "crossings": [{"tail": "E1", "head": "E2", "kind": "nondegenerate", "cs_tail": ["0"]}]})") ==
        ErrorCode::BadFieldElement);
  CHECK(parse_error(R"({"field": {"min_poly": ["0"]},
    "components": [{"id": "E1", "self_intersection": -1}, {"id": "E2", "self_intersection": -1}],
    "crossings": [{"tail": "E1", "head": "E2", "kind": "saddle_node", "weak": "E3"}]})") ==
        ErrorCode::SchemaError);
  CHECK(parse_error(R"({"field": {"min_poly": ["0"]},
    "components": [{"id": "E1", "self_intersection": -1}],
    "gorenstein": {"k": 2, "a": {}}})") == ErrorCode::SchemaError);
}

TEST_CASE("self-loop message suggests a blow-up") {
  try {
    parse_graph(read_file(data_path("self_loop.json")));
    FAIL("parsed");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("blow") != std::string::npos);
  }
}

TEST_CASE("serialize and parse round trip") {
  const std::vector<DualGraph> graphs{
      load("camacho_sqrt21.json"), load("star_saddle.json"), load("chain_sqrt2.json"),
      torsion4_example().graph, p2_cycle_example(Rational(5, 3)).graph,
      random_tree_example(5, 20, 0.3, TreeField::Quadratic).graph};
  for (const auto& g : graphs) {
    const std::string once = serialize_graph(g);
    CHECK(serialize_graph(parse_graph(once)) == once);
  }
}

TEST_CASE("index validation on the reference inputs") {
  const auto cam = validate_indices(load("camacho_sqrt21.json"));
  CHECK_FALSE(has_errors(cam));
  CHECK(count_code(cam, "normal_degree") == 3);

  const auto bad = validate_indices(load("vertex_sum_mismatch.json"));
  CHECK(has_errors(bad));
  CHECK(count_code(bad, "vertex_sum_mismatch") == 2);

  const auto p2 = validate_indices(p2_cycle_example(Rational(2)).graph);
  CHECK_FALSE(has_errors(p2));
  CHECK(count_code(p2, "non_reduced_crossing") == 2);  // indices 3 and 3/2
}

TEST_CASE("unknown weak-side index downgrades the vertex sum to a warning") {
  DualGraph g = load("path_saddle.json");
  std::get<SaddleNodeCrossing>(g.crossings[0].kind).cs_weak.reset();
  const auto fs = validate_indices(g);
  CHECK_FALSE(has_errors(fs));
  CHECK(count_code(fs, "vertex_sum_unchecked") == 1);
}

TEST_CASE("normal degree reports Z and C^2 + Z") {
  const auto fs = validate_indices(torsion4_example().graph);
  for (const auto& f : fs) {
    if (f.code != "normal_degree") continue;
    CHECK(f.severity == Severity::Info);
    CHECK(f.message.find("Z = 3") != std::string::npos);
  }
}

TEST_CASE("every generated fixture validates without errors") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto field = seed % 2 ? TreeField::Quadratic : TreeField::Rational;
    const auto g = random_tree_example(seed, 1 + seed % 40, 0.3, field).graph;
    CHECK_FALSE(has_errors(validate_indices(g)));
  }
  CHECK_FALSE(has_errors(validate_indices(torsion4_example().graph)));
  CHECK_FALSE(has_errors(validate_indices(camacho_example({-2, -2, -3}).graph)));
  CHECK_FALSE(has_errors(validate_indices(camacho_example({-3, -3, -3}).graph)));
  Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    Rational t = random_rational(rng);
    if (t == 0 || t == -1) continue;
    CHECK_FALSE(has_errors(validate_indices(p2_cycle_example(t).graph)));
  }
}

TEST_CASE("induced subcurve converts dropped crossings to attachments") {
  const DualGraph g = load("camacho_sqrt21.json");
  const std::vector<std::string> keep{"E1"};
  const DualGraph sub = induced_subcurve(g, keep);
  REQUIRE(sub.components.size() == 1);
  CHECK(sub.crossings.empty());
  const auto& ss = sub.components[0].smooth_singularities;
  REQUIRE(ss.size() == 2);
  CHECK(ss[0].attached_to == std::optional<std::string>("E2"));
  CHECK(*ss[0].cs == FieldElement(g.field, {Rational(-11, 10), Rational(1, 10)}));
  CHECK(ss[1].attached_to == std::optional<std::string>("E3"));
  CHECK_FALSE(sub.closed_world);
  // the vertex sum still closes
  CHECK_FALSE(has_errors(validate_indices(sub)));
}

TEST_CASE("induced subcurve on the whole curve is the identity") {
  for (const auto& g : {load("camacho_sqrt21.json"), load("star_saddle.json")}) {
    std::vector<std::string> all;
    for (const auto& c : g.components) all.push_back(c.id);
    CHECK(serialize_graph(induced_subcurve(g, all)) == serialize_graph(g));
  }
}

TEST_CASE("induced subcurve selection errors") {
  const DualGraph g = load("path_saddle.json");
  auto code = [&](std::vector<std::string> keep) {
    try {
      induced_subcurve(g, keep);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::BadParams;
  };
  CHECK(code({}) == ErrorCode::EmptySelection);
  CHECK(code({"E1", "E3"}) == ErrorCode::DisconnectedSelection);
  CHECK(code({"E7"}) == ErrorCode::UnknownId);
}

TEST_CASE("saddle-node attachments keep their side") {
  const DualGraph g = load("path_saddle.json");
  const std::vector<std::string> strong{"E2", "E3"}, weak{"E1"};
  const auto s1 = induced_subcurve(g, strong);
  const auto& att = s1.components[0].smooth_singularities.back();
  CHECK(att.kind == SingularityKind::SaddleNodeStrongOnC);
  CHECK(att.cs->is_zero());
  const auto s2 = induced_subcurve(g, weak);
  const auto& att2 = s2.components[0].smooth_singularities.back();
  CHECK(att2.kind == SingularityKind::SaddleNodeWeakOnC);
  CHECK(*att2.cs == FieldElement::from_rational(g.field, Rational(-1, 3)));
}
