#include "sepkit/fixtures.hpp"

#include "json_io.hpp"
#include "sepkit/error.hpp"

#include <random>

namespace sepkit {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::BadParams, msg); }

Component curve(std::string id, std::int64_t self_intersection) {
  Component c;
  c.id = std::move(id);
  c.self_intersection = self_intersection;
  return c;
}

Crossing nondegenerate(std::string id, std::string tail, std::string head, FieldElement cs_tail) {
  return Crossing{std::move(id), std::move(tail), std::move(head), NonDegenerateCrossing{std::move(cs_tail)}};
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// A negative rational of absolute value at most 1.
Rational small_negative(Rng& rng) {
  const std::int64_t den = rng.between(1, 9);
  const std::int64_t num = rng.between(1, den);
  return make_rational(-num, den);
}

FieldElement random_index(Rng& rng, const FieldPtr& field) {
  if (field->degree() == 1) return FieldElement::from_rational(field, small_negative(rng));
  const std::int64_t a = rng.between(-9, 9), b = rng.between(-3, 3), c = rng.between(1, 5);
  if (b == 0) return FieldElement::from_rational(field, small_negative(rng));
  return FieldElement(field, {make_rational(a, c), make_rational(b, c)});
}

}  // namespace

std::vector<std::string_view> example_names() { return {"camacho", "p2_cycle", "torsion4", "random_tree"}; }

GeneratedExample camacho_example(const std::array<std::int64_t, 3>& e, bool closed_world) {
  const Integer e1 = static_cast<long>(e[0]), e2 = static_cast<long>(e[1]), e3 = static_cast<long>(e[2]);
  const RationalPolynomial constraint(
      {Rational(e1 * e3 - 1), Rational(e1 + e2 - e1 * e2 * e3 - e3), Rational(e2 * e3 - 1)});
  if (constraint.degree() < 1) bad("constraint polynomial is constant for these self-intersections");

  auto admissible = [&](const Rational& t) { return t != 0 && Rational(e1) != t && Rational(e2) * t != 1; };

  GeneratedExample ex;
  ex.name = "camacho";
  ex.constraint = constraint;
  std::optional<FieldElement> t;
  for (const auto& r : rational_roots(constraint)) {
    if (admissible(r)) {
      ex.graph.field = NumberField::rationals();
      t = FieldElement::from_rational(ex.graph.field, r);
      ex.notes.push_back("constraint has the rational root t = " + to_string(r));
      break;
    }
  }
  if (!t) {
    if (constraint.degree() != 2 || !rational_roots(constraint).empty()) {
      bad("constraint polynomial has no admissible root for these self-intersections");
    }
    const RationalPolynomial m = constraint.monic();
    ex.graph.field = NumberField::create({m.coeff(0), m.coeff(1)});
    t = FieldElement::generator(ex.graph.field);
    ex.notes.push_back("t is the field generator, a root of " + constraint.to_string("t"));
  }
  const FieldPtr& f = ex.graph.field;
  ex.graph.components = {curve("E1", e[0]), curve("E2", e[1]), curve("E3", e[2])};
  ex.graph.crossings = {
      nondegenerate("p12", "E1", "E2", *t),
      nondegenerate("p13", "E1", "E3", FieldElement::from_int(f, e[0]) - *t),
      nondegenerate("p23", "E2", "E3", FieldElement::from_int(f, e[1]) - t->inverse()),
  };
  ex.graph.closed_world = closed_world;
  return ex;
}

GeneratedExample p2_cycle_example(const Rational& t) {
  if (t == 0 || t == -1) bad("p2_cycle needs t outside {0, -1}");
  GeneratedExample ex;
  ex.name = "p2_cycle";
  ex.graph.field = NumberField::rationals();
  const FieldPtr& f = ex.graph.field;
  ex.graph.components = {curve("L1", 1), curve("L2", 1), curve("L3", 1)};
  ex.graph.crossings = {
      nondegenerate("p12", "L1", "L2", FieldElement::from_rational(f, -t)),
      nondegenerate("p13", "L1", "L3", FieldElement::from_rational(f, 1 + t)),
      nondegenerate("p23", "L2", "L3", FieldElement::from_rational(f, (1 + t) / t)),
  };
  ex.graph.closed_world = true;
  ex.notes.push_back("t = " + to_string(t));
  return ex;
}

GeneratedExample torsion4_example() {
  GeneratedExample ex;
  ex.name = "torsion4";
  ex.graph.field = NumberField::create({Rational(1), Rational(0)});
  const FieldPtr& f = ex.graph.field;
  const FieldElement one = FieldElement::one(f), i = FieldElement::generator(f);
  ex.graph.components = {curve("E1", -3), curve("E2", -3), curve("E3", -3)};
  ex.graph.crossings = {
      nondegenerate("p12", "E1", "E2", -one),
      nondegenerate("p13", "E1", "E3", -i),
      nondegenerate("p23", "E2", "E3", -one),
  };
  pad_vertex_sums(ex.graph);
  ex.notes.push_back("field Q(i) with i^2 = -1; holonomy of the triangle is i");
  return ex;
}

GeneratedExample random_tree_example(std::uint64_t seed, std::size_t n, double p, TreeField field) {
  if (n == 0) bad("random_tree needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) bad("saddle_node_probability must lie in [0, 1]");
  Rng rng(seed);
  GeneratedExample ex;
  ex.name = "random_tree";
  ex.graph.field = field == TreeField::Rational ? NumberField::rationals()
                                                : NumberField::create({Rational(-2), Rational(0)});
  const FieldPtr& f = ex.graph.field;

  std::vector<std::int64_t> degree(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t parent = rng.below(i);
    ++degree[parent];
    ++degree[i];
    std::string tail = "E" + std::to_string(parent + 1), head = "E" + std::to_string(i + 1);
    std::variant<NonDegenerateCrossing, SaddleNodeCrossing> kind = SaddleNodeCrossing{};
    if (rng.unit() < p) {
      const bool weak_is_tail = rng.below(2) == 0;
      kind = SaddleNodeCrossing{weak_is_tail ? tail : head, random_index(rng, f)};
    } else {
      kind = NonDegenerateCrossing{random_index(rng, f)};
    }
    Crossing c{"p" + std::to_string(i), std::move(tail), std::move(head), std::move(kind)};
    ex.graph.crossings.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < n; ++i) {
    ex.graph.components.push_back(curve("E" + std::to_string(i + 1), -(degree[i] + 1 + rng.between(0, 2))));
  }
  pad_vertex_sums(ex.graph);
  ex.notes.push_back("seed " + std::to_string(seed));
  return ex;
}

void pad_vertex_sums(DualGraph& g, std::string_view prefix) {
  for (std::size_t v = 0; v < g.components.size(); ++v) {
    Component& comp = g.components[v];
    FieldElement sum = FieldElement::zero(g.field);
    for (const auto& c : g.crossings) {
      if (c.tail != comp.id && c.head != comp.id) continue;
      auto cs = crossing_index_at(g, c, v);
      if (!cs) throw Error(ErrorCode::SchemaError, "crossing " + c.id + " has an unknown weak-side index");
      sum += *cs;
    }
    for (const auto& s : comp.smooth_singularities) {
      if (s.cs) sum += *s.cs;
    }
    FieldElement rest = FieldElement::from_int(g.field, static_cast<long>(comp.self_intersection)) - sum;
    if (rest.is_zero()) continue;
    SmoothSingularity s;
    s.id = std::string(prefix) + std::to_string(v + 1);
    s.cs = std::move(rest);
    comp.smooth_singularities.push_back(std::move(s));
  }
}

GeneratedExample generate_example(std::string_view name, const ExampleParams& p) {
  GeneratedExample ex;
  if (name == "camacho") {
    ex = camacho_example(p.self_intersections.value_or(std::array<std::int64_t, 3>{-2, -2, -3}),
                         p.closed_world.value_or(true));
  } else if (name == "p2_cycle") {
    ex = p2_cycle_example(p.t.value_or(Rational(2)));
  } else if (name == "torsion4") {
    ex = torsion4_example();
  } else if (name == "random_tree") {
    TreeField field = TreeField::Rational;
    if (p.field && *p.field == "quadratic") {
      field = TreeField::Quadratic;
    } else if (p.field && *p.field != "rational") {
      bad("field must be \"rational\" or \"quadratic\"");
    }
    const std::size_t n = p.n.value_or(12);
    if (n > 100000) bad("random_tree is limited to 100000 components");
    ex = random_tree_example(p.seed.value_or(1), n, p.saddle_node_probability.value_or(0.3), field);
  } else {
    bad("unknown example \"" + std::string(name) + "\"");
  }
  if (p.closed_world && name != "camacho") {
    if (*p.closed_world && ex.graph.smooth_singularity_count() > 0) {
      bad("closed_world cannot be set on an example with singularities off the crossings");
    }
    ex.graph.closed_world = *p.closed_world;
  }
  if (p.gorenstein_k) {
    if (*p.gorenstein_k <= 0) bad("gorenstein_k must be positive");
    GorensteinData gd{*p.gorenstein_k, {}};
    for (const auto& c : ex.graph.components) gd.a[c.id] = *p.gorenstein_k;
    ex.graph.gorenstein = std::move(gd);
  }
  validate_structure(ex.graph);
  return ex;
}

ExampleParams parse_example_params(std::string_view text) {
  ExampleParams p;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return p;
  detail::Json doc;
  try {
    doc = detail::Json::parse(text);
  } catch (const detail::Json::parse_error& e) {
    bad(std::string("example parameters are not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("example parameters must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "self_intersections") {
        if (!value.is_array() || value.size() != 3) bad("self_intersections must be an array of three integers");
        std::array<std::int64_t, 3> e{};
        for (std::size_t i = 0; i < 3; ++i) {
          if (!value[i].is_number_integer()) bad("self_intersections must be an array of three integers");
          e[i] = value[i].get<std::int64_t>();
          if (e[i] < -1000000 || e[i] > 1000000) bad("self_intersections out of range");
        }
        p.self_intersections = e;
      } else if (key == "t") {
        if (value.is_number_integer()) {
          p.t = Rational(value.get<long>());
        } else if (value.is_string()) {
          p.t = parse_rational(value.get<std::string>());
        } else {
          bad("t must be an integer or a \"p/q\" string");
        }
      } else if (key == "seed") {
        if (!value.is_number_unsigned()) bad("seed must be a non-negative integer");
        p.seed = value.get<std::uint64_t>();
      } else if (key == "n") {
        if (!value.is_number_unsigned()) bad("n must be a positive integer");
        p.n = value.get<std::size_t>();
      } else if (key == "saddle_node_probability") {
        if (!value.is_number()) bad("saddle_node_probability must be a number");
        p.saddle_node_probability = value.get<double>();
      } else if (key == "field") {
        if (!value.is_string()) bad("field must be a string");
        p.field = value.get<std::string>();
      } else if (key == "closed_world") {
        if (!value.is_boolean()) bad("closed_world must be a boolean");
        p.closed_world = value.get<bool>();
      } else if (key == "gorenstein_k") {
        if (!value.is_number_integer()) bad("gorenstein_k must be an integer");
        p.gorenstein_k = value.get<std::int64_t>();
      } else {
        bad("unknown example parameter \"" + key + "\"");
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadFieldElement) bad(e.what());
    throw;
  }
  return p;
}

std::string serialize_example(const GeneratedExample& ex) {
  detail::Json doc = detail::graph_to_json(ex.graph);
  detail::Json gen = detail::Json::object();
  gen["name"] = ex.name;
  if (ex.constraint) {
    detail::Json coeffs = detail::Json::array();
    for (const auto& c : ex.constraint->primitive_integer_coeffs()) coeffs.push_back(detail::integer_to_json(c));
    gen["constraint_polynomial"] = {{"variable", "t"},
                                    {"text", ex.constraint->to_string("t")},
                                    {"coefficients_ascending", coeffs}};
  }
  gen["notes"] = ex.notes;
  doc["generator"] = std::move(gen);
  return doc.dump(2) + "\n";
}

}  // namespace sepkit
