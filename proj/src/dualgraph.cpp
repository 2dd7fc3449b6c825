#include "sepkit/dualgraph.hpp"

#include "json_io.hpp"
#include "sepkit/error.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace sepkit {

std::string_view to_string(SingularityKind kind) {
  switch (kind) {
    case SingularityKind::NonDegenerate: return "nondegenerate";
    case SingularityKind::SaddleNodeStrongOnC: return "saddle_node_strong_on_c";
    case SingularityKind::SaddleNodeWeakOnC: return "saddle_node_weak_on_c";
  }
  return "unknown";
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
  }
  return "unknown";
}

std::optional<std::size_t> DualGraph::find(std::string_view component_id) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].id == component_id) return i;
  }
  return std::nullopt;
}

std::size_t DualGraph::index_of(std::string_view component_id) const {
  if (auto i = find(component_id)) return *i;
  throw Error(ErrorCode::UnknownId, "unknown component id \"" + std::string(component_id) + "\"");
}

std::size_t DualGraph::smooth_singularity_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.smooth_singularities.size();
  return n;
}

std::optional<FieldElement> crossing_index_at(const DualGraph& g, const Crossing& c, std::size_t v) {
  const bool at_tail = g.components[v].id == c.tail;
  if (const auto* nd = std::get_if<NonDegenerateCrossing>(&c.kind)) {
    return at_tail ? nd->cs_tail : nd->cs_tail.inverse();
  }
  const auto& sn = std::get<SaddleNodeCrossing>(c.kind);
  if (g.components[v].id != sn.weak) return FieldElement::zero(g.field);
  return sn.cs_weak;
}

bool induces_connected(const DualGraph& g, std::span<const std::size_t> vertices) {
  if (vertices.empty()) return false;
  std::unordered_set<std::size_t> in(vertices.begin(), vertices.end());
  std::vector<std::vector<std::size_t>> adj(g.components.size());
  for (const auto& c : g.crossings) {
    std::size_t t = g.index_of(c.tail), h = g.index_of(c.head);
    if (in.count(t) && in.count(h)) {
      adj[t].push_back(h);
      adj[h].push_back(t);
    }
  }
  std::vector<bool> seen(g.components.size(), false);
  std::deque<std::size_t> queue{vertices.front()};
  seen[vertices.front()] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == in.size();
}

void validate_structure(const DualGraph& g) {
  if (!g.field) throw Error(ErrorCode::SchemaError, "graph has no number field");
  if (g.components.empty()) throw Error(ErrorCode::SchemaError, "graph has no components");

  auto check_element = [&](const FieldElement& e, const std::string& where) {
    if (!same_field(e.field(), g.field)) {
      throw Error(ErrorCode::BadFieldElement, where + ": element belongs to a different field");
    }
  };

  std::unordered_set<std::string> ids;
  for (const auto& comp : g.components) {
    if (comp.id.empty()) throw Error(ErrorCode::SchemaError, "component with empty id");
    if (!ids.insert(comp.id).second) throw Error(ErrorCode::SchemaError, "duplicate id \"" + comp.id + "\"");
  }
  for (const auto& comp : g.components) {
    for (const auto& s : comp.smooth_singularities) {
      if (s.id.empty()) throw Error(ErrorCode::SchemaError, "singularity with empty id on " + comp.id);
      if (!ids.insert(s.id).second) throw Error(ErrorCode::SchemaError, "duplicate id \"" + s.id + "\"");
      if (s.cs) check_element(*s.cs, "singularity " + s.id);
      if (s.kind == SingularityKind::NonDegenerate) {
        if (!s.cs) throw Error(ErrorCode::BadFieldElement, "nondegenerate singularity " + s.id + " needs a cs value");
        if (s.cs->is_zero()) {
          throw Error(ErrorCode::BadFieldElement, "nondegenerate singularity " + s.id + " has cs = 0");
        }
        if (!s.has_transverse_separatrix) {
          throw Error(ErrorCode::SchemaError,
                      "nondegenerate singularity " + s.id + " always has a transverse separatrix");
        }
      }
    }
  }

  std::unordered_set<std::string> crossing_ids;
  for (const auto& c : g.crossings) {
    if (!crossing_ids.insert(c.id).second) throw Error(ErrorCode::SchemaError, "duplicate crossing id \"" + c.id + "\"");
    g.index_of(c.tail);
    g.index_of(c.head);
    if (c.tail == c.head) {
      throw Error(ErrorCode::SelfLoop, "crossing " + c.id + " joins " + c.tail +
                                           " to itself; blow up the point until the curve has normal crossings "
                                           "between distinct smooth components");
    }
    if (const auto* nd = std::get_if<NonDegenerateCrossing>(&c.kind)) {
      check_element(nd->cs_tail, "crossing " + c.id);
      if (nd->cs_tail.is_zero()) throw Error(ErrorCode::BadFieldElement, "crossing " + c.id + " has cs_tail = 0");
    } else {
      const auto& sn = std::get<SaddleNodeCrossing>(c.kind);
      if (sn.weak != c.tail && sn.weak != c.head) {
        throw Error(ErrorCode::SchemaError, "crossing " + c.id + ": weak side must be " + c.tail + " or " + c.head);
      }
      if (sn.cs_weak) check_element(*sn.cs_weak, "crossing " + c.id);
    }
  }

  if (g.gorenstein) {
    if (g.gorenstein->k <= 0) throw Error(ErrorCode::SchemaError, "gorenstein.k must be positive");
    for (const auto& [id, _] : g.gorenstein->a) g.index_of(id);
    for (const auto& comp : g.components) {
      if (!g.gorenstein->a.count(comp.id)) {
        throw Error(ErrorCode::SchemaError, "gorenstein.a has no entry for component " + comp.id);
      }
    }
  }

  if (g.closed_world && g.smooth_singularity_count() > 0) {
    throw Error(ErrorCode::SchemaError, "closed_world declares no smooth-point singularities, but some are listed");
  }

  std::vector<std::size_t> all(g.components.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (!induces_connected(g, all)) throw Error(ErrorCode::Disconnected, "dual graph is not connected");
}

void normalize_orientation(DualGraph& g) {
  for (auto& c : g.crossings) {
    if (g.index_of(c.tail) <= g.index_of(c.head)) continue;
    std::swap(c.tail, c.head);
    if (auto* nd = std::get_if<NonDegenerateCrossing>(&c.kind)) nd->cs_tail = nd->cs_tail.inverse();
  }
}

// ---------------------------------------------------------------------------
// JSON input

namespace {

using detail::Json;

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::SchemaError, msg); }

const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where + ": missing key \"" + key + "\"");
  return *it;
}

std::string require_string(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) schema(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::int64_t require_integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) schema(where + " must be an integer");
  return v.get<std::int64_t>();
}

void reject_unknown_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      schema(where + ": unknown key \"" + it.key() + "\"");
    }
  }
}

FieldElement parse_element(const FieldPtr& field, const Json& v, const std::string& where) {
  if (!v.is_array()) throw Error(ErrorCode::BadFieldElement, where + ": field element must be an array of rationals");
  std::vector<std::string> parts;
  for (const auto& p : v) {
    if (p.is_string()) {
      parts.push_back(p.get<std::string>());
    } else if (p.is_number_integer()) {
      parts.push_back(std::to_string(p.get<std::int64_t>()));
    } else {
      throw Error(ErrorCode::BadFieldElement, where + ": coordinates must be \"p/q\" strings");
    }
  }
  try {
    return element_from_strings(field, parts);
  } catch (const Error& e) {
    throw Error(ErrorCode::BadFieldElement, where + ": " + e.what());
  }
}

std::optional<FieldElement> parse_optional_element(const FieldPtr& field, const Json& obj, const char* key,
                                                   const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return parse_element(field, *it, where);
}

FieldPtr parse_field(const Json& v) {
  if (!v.is_object()) schema("\"field\" must be an object");
  reject_unknown_keys(v, {"min_poly", "degree"}, "field");
  const Json& mp = require(v, "min_poly", "field");
  if (!mp.is_array()) schema("field.min_poly must be an array");
  std::vector<Rational> tail;
  for (const auto& c : mp) {
    if (c.is_string()) {
      try {
        tail.push_back(parse_rational(c.get<std::string>()));
      } catch (const Error& e) {
        schema(std::string("field.min_poly: ") + e.what());
      }
    } else if (c.is_number_integer()) {
      tail.emplace_back(c.get<long>());
    } else {
      schema("field.min_poly entries must be rational strings");
    }
  }
  if (auto d = v.find("degree"); d != v.end()) {
    if (require_integer(*d, "field.degree") != static_cast<std::int64_t>(tail.size())) {
      schema("field.degree disagrees with the length of min_poly");
    }
  }
  return NumberField::create(std::move(tail));
}

SingularityKind parse_singularity_kind(const std::string& s, const std::string& where) {
  if (s == "nondegenerate") return SingularityKind::NonDegenerate;
  if (s == "saddle_node_strong_on_c") return SingularityKind::SaddleNodeStrongOnC;
  if (s == "saddle_node_weak_on_c") return SingularityKind::SaddleNodeWeakOnC;
  schema(where + ": unknown singularity kind \"" + s + "\"");
}

Component parse_component(const FieldPtr& field, const Json& v, std::size_t index) {
  const std::string where = "components[" + std::to_string(index) + "]";
  if (!v.is_object()) schema(where + " must be an object");
  reject_unknown_keys(v, {"id", "self_intersection", "genus", "smooth_singularities"}, where);
  Component comp;
  comp.id = require_string(v, "id", where);
  comp.self_intersection = require_integer(require(v, "self_intersection", where), where + ".self_intersection");
  if (auto g = v.find("genus"); g != v.end()) {
    std::int64_t genus = require_integer(*g, where + ".genus");
    if (genus < 0) schema(where + ".genus must be non-negative");
    comp.genus = static_cast<std::uint32_t>(genus);
  }
  if (auto ss = v.find("smooth_singularities"); ss != v.end()) {
    if (!ss->is_array()) schema(where + ".smooth_singularities must be an array");
    std::size_t k = 0;
    for (const auto& sv : *ss) {
      const std::string sw = where + ".smooth_singularities[" + std::to_string(k++) + "]";
      if (!sv.is_object()) schema(sw + " must be an object");
      reject_unknown_keys(sv, {"id", "kind", "cs", "separatrix", "attached_to"}, sw);
      SmoothSingularity s;
      s.id = require_string(sv, "id", sw);
      s.kind = parse_singularity_kind(require_string(sv, "kind", sw), sw);
      s.cs = parse_optional_element(field, sv, "cs", sw + ".cs");
      if (auto sep = sv.find("separatrix"); sep != sv.end()) {
        if (!sep->is_boolean()) schema(sw + ".separatrix must be a boolean");
        s.has_transverse_separatrix = sep->get<bool>();
      }
      if (auto at = sv.find("attached_to"); at != sv.end() && !at->is_null()) {
        if (!at->is_string()) schema(sw + ".attached_to must be a string");
        s.attached_to = at->get<std::string>();
      }
      comp.smooth_singularities.push_back(std::move(s));
    }
  }
  return comp;
}

Crossing parse_crossing(const FieldPtr& field, const Json& v, std::size_t index) {
  const std::string where = "crossings[" + std::to_string(index) + "]";
  if (!v.is_object()) schema(where + " must be an object");
  reject_unknown_keys(v, {"id", "tail", "head", "kind", "cs_tail", "weak", "cs_weak"}, where);
  Crossing c{.id = "p" + std::to_string(index + 1),
             .tail = require_string(v, "tail", where),
             .head = require_string(v, "head", where),
             .kind = SaddleNodeCrossing{}};
  if (v.contains("id")) c.id = require_string(v, "id", where);
  const std::string kind = require_string(v, "kind", where);
  if (kind == "nondegenerate") {
    c.kind = NonDegenerateCrossing{parse_element(field, require(v, "cs_tail", where), where + ".cs_tail")};
  } else if (kind == "saddle_node") {
    c.kind = SaddleNodeCrossing{require_string(v, "weak", where), parse_optional_element(field, v, "cs_weak", where)};
  } else {
    schema(where + ": unknown crossing kind \"" + kind + "\"");
  }
  return c;
}

}  // namespace

DualGraph parse_graph(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::parse_error& e) {
    schema(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema("top level must be an object");
  reject_unknown_keys(doc, {"field", "components", "crossings", "gorenstein", "closed_world", "generator"}, "input");

  DualGraph g;
  g.field = parse_field(require(doc, "field", "input"));

  const Json& comps = require(doc, "components", "input");
  if (!comps.is_array()) schema("\"components\" must be an array");
  for (std::size_t i = 0; i < comps.size(); ++i) g.components.push_back(parse_component(g.field, comps[i], i));

  if (auto cr = doc.find("crossings"); cr != doc.end()) {
    if (!cr->is_array()) schema("\"crossings\" must be an array");
    for (std::size_t i = 0; i < cr->size(); ++i) g.crossings.push_back(parse_crossing(g.field, (*cr)[i], i));
  }

  if (auto gd = doc.find("gorenstein"); gd != doc.end() && !gd->is_null()) {
    if (!gd->is_object()) schema("\"gorenstein\" must be an object");
    reject_unknown_keys(*gd, {"k", "a"}, "gorenstein");
    GorensteinData data;
    data.k = require_integer(require(*gd, "k", "gorenstein"), "gorenstein.k");
    const Json& a = require(*gd, "a", "gorenstein");
    if (!a.is_object()) schema("gorenstein.a must be an object");
    for (auto it = a.begin(); it != a.end(); ++it) {
      data.a[it.key()] = require_integer(it.value(), "gorenstein.a." + it.key());
    }
    g.gorenstein = std::move(data);
  }

  if (auto cw = doc.find("closed_world"); cw != doc.end()) {
    if (!cw->is_boolean()) schema("\"closed_world\" must be a boolean");
    g.closed_world = cw->get<bool>();
  }

  // Endpoint resolution and self-loops are reported before orientation is
  // normalized, which needs both endpoints.
  for (const auto& c : g.crossings) {
    g.index_of(c.tail);
    g.index_of(c.head);
  }
  validate_structure(g);
  normalize_orientation(g);
  return g;
}

// ---------------------------------------------------------------------------
// JSON output

namespace detail {

Json integer_to_json(const Integer& n) {
  if (n.fits_slong_p()) return Json(n.get_si());
  return Json(n.get_str());
}

Json field_to_json(const NumberField& field) {
  Json mp = Json::array();
  for (const auto& c : field.min_poly_tail()) mp.push_back(to_string(c));
  return Json{{"min_poly", mp}, {"degree", field.degree()}};
}

Json element_to_json(const FieldElement& e) { return Json(element_to_strings(e)); }

Json optional_element_to_json(const std::optional<FieldElement>& e) {
  return e ? element_to_json(*e) : Json(nullptr);
}

Json graph_to_json(const DualGraph& g) {
  Json doc;
  doc["field"] = field_to_json(*g.field);
  Json comps = Json::array();
  for (const auto& comp : g.components) {
    Json cj;
    cj["id"] = comp.id;
    cj["self_intersection"] = comp.self_intersection;
    cj["genus"] = comp.genus;
    Json ss = Json::array();
    for (const auto& s : comp.smooth_singularities) {
      Json sj;
      sj["id"] = s.id;
      sj["kind"] = to_string(s.kind);
      sj["cs"] = optional_element_to_json(s.cs);
      sj["separatrix"] = s.has_transverse_separatrix;
      if (s.attached_to) sj["attached_to"] = *s.attached_to;
      ss.push_back(std::move(sj));
    }
    cj["smooth_singularities"] = std::move(ss);
    comps.push_back(std::move(cj));
  }
  doc["components"] = std::move(comps);
  Json crossings = Json::array();
  for (const auto& c : g.crossings) {
    Json xj;
    xj["id"] = c.id;
    xj["tail"] = c.tail;
    xj["head"] = c.head;
    if (const auto* nd = std::get_if<NonDegenerateCrossing>(&c.kind)) {
      xj["kind"] = "nondegenerate";
      xj["cs_tail"] = element_to_json(nd->cs_tail);
    } else {
      const auto& sn = std::get<SaddleNodeCrossing>(c.kind);
      xj["kind"] = "saddle_node";
      xj["weak"] = sn.weak;
      xj["cs_weak"] = optional_element_to_json(sn.cs_weak);
    }
    crossings.push_back(std::move(xj));
  }
  doc["crossings"] = std::move(crossings);
  if (g.gorenstein) {
    Json a = Json::object();
    for (const auto& comp : g.components) {
      if (auto it = g.gorenstein->a.find(comp.id); it != g.gorenstein->a.end()) a[comp.id] = it->second;
    }
    doc["gorenstein"] = Json{{"k", g.gorenstein->k}, {"a", std::move(a)}};
  }
  doc["closed_world"] = g.closed_world;
  return doc;
}

Json finding_to_json(const Finding& f) {
  return Json{{"severity", to_string(f.severity)}, {"code", f.code}, {"subject", f.subject}, {"message", f.message}};
}

}  // namespace detail

std::string serialize_graph(const DualGraph& g) { return detail::graph_to_json(g).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Index validation

std::vector<Finding> validate_indices(const DualGraph& g) {
  std::vector<Finding> out;
  const FieldPtr& K = g.field;

  auto warn_non_reduced = [&](const FieldElement& cs, const std::string& subject, const char* code) {
    if (cs.is_positive_rational()) {
      out.push_back({Severity::Warning, code, subject,
                     "CS index " + cs.to_string() + " is a positive rational; the singularity is not reduced"});
    }
  };

  for (const auto& c : g.crossings) {
    if (const auto* nd = std::get_if<NonDegenerateCrossing>(&c.kind)) {
      warn_non_reduced(nd->cs_tail, c.id, "non_reduced_crossing");
    }
  }

  for (std::size_t v = 0; v < g.components.size(); ++v) {
    const Component& comp = g.components[v];
    FieldElement sum = FieldElement::zero(K);
    std::vector<std::string> unknown;
    std::size_t z = 0;

    for (const auto& c : g.crossings) {
      if (c.tail != comp.id && c.head != comp.id) continue;
      ++z;
      if (auto cs = crossing_index_at(g, c, v)) {
        sum += *cs;
      } else {
        unknown.push_back("weak index at crossing " + c.id);
      }
    }
    for (const auto& s : comp.smooth_singularities) {
      ++z;
      if (s.kind == SingularityKind::NonDegenerate) warn_non_reduced(*s.cs, s.id, "non_reduced_singularity");
      if (s.kind == SingularityKind::SaddleNodeStrongOnC && s.cs && !s.cs->is_zero()) {
        out.push_back({Severity::Warning, "strong_side_index_nonzero", s.id,
                       "a saddle-node has CS index 0 along its strong separatrix, got " + s.cs->to_string()});
      }
      if (s.cs) {
        sum += *s.cs;
      } else if (s.kind == SingularityKind::SaddleNodeStrongOnC) {
        // strong side contributes 0
      } else {
        unknown.push_back("index at " + s.id);
      }
    }

    const FieldElement target = FieldElement::from_int(K, static_cast<long>(comp.self_intersection));
    if (!unknown.empty()) {
      std::string what;
      for (const auto& u : unknown) what += (what.empty() ? "" : ", ") + u;
      out.push_back({Severity::Warning, "vertex_sum_unchecked", comp.id,
                     "index sum cannot be checked against C^2 = " + std::to_string(comp.self_intersection) +
                         ": unspecified " + what});
    } else if (!(sum == target)) {
      out.push_back({Severity::Error, "vertex_sum_mismatch", comp.id,
                     "sum of CS indices is " + sum.to_string() + " but C^2 = " +
                         std::to_string(comp.self_intersection)});
    }

    out.push_back({Severity::Info, "normal_degree", comp.id,
                   "Z = " + std::to_string(z) + ", N_F.C = C^2 + Z = " +
                       std::to_string(comp.self_intersection + static_cast<std::int64_t>(z))});
  }
  return out;
}

bool has_errors(std::span<const Finding> findings) {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::Error; });
}

// ---------------------------------------------------------------------------
// Subcurves

DualGraph induced_subcurve(const DualGraph& g, std::span<const std::string> keep) {
  if (keep.empty()) throw Error(ErrorCode::EmptySelection, "subcurve selection is empty");
  std::set<std::size_t> kept;
  for (const auto& id : keep) kept.insert(g.index_of(id));
  std::vector<std::size_t> kept_vec(kept.begin(), kept.end());
  if (!induces_connected(g, kept_vec)) {
    throw Error(ErrorCode::DisconnectedSelection, "selected components do not induce a connected subcurve");
  }

  DualGraph sub;
  sub.field = g.field;
  std::vector<std::size_t> new_index(g.components.size(), SIZE_MAX);
  for (std::size_t v : kept_vec) {
    new_index[v] = sub.components.size();
    sub.components.push_back(g.components[v]);
  }

  std::unordered_set<std::string> taken;
  for (const auto& comp : g.components) {
    taken.insert(comp.id);
    for (const auto& s : comp.smooth_singularities) taken.insert(s.id);
  }

  for (const auto& c : g.crossings) {
    const std::size_t t = g.index_of(c.tail), h = g.index_of(c.head);
    const bool kt = kept.count(t) > 0, kh = kept.count(h) > 0;
    if (kt && kh) {
      sub.crossings.push_back(c);
      continue;
    }
    if (!kt && !kh) continue;
    const std::size_t v = kt ? t : h;
    const std::string& dropped = kt ? c.head : c.tail;
    SmoothSingularity s;
    s.id = c.id;
    for (int n = 2; taken.count(s.id); ++n) s.id = c.id + "~" + std::to_string(n);
    taken.insert(s.id);
    s.cs = crossing_index_at(g, c, v);
    s.attached_to = dropped;
    s.has_transverse_separatrix = true;
    if (const auto* sn = std::get_if<SaddleNodeCrossing>(&c.kind)) {
      s.kind = sn->weak == g.components[v].id ? SingularityKind::SaddleNodeWeakOnC : SingularityKind::SaddleNodeStrongOnC;
    } else {
      s.kind = SingularityKind::NonDegenerate;
    }
    sub.components[new_index[v]].smooth_singularities.push_back(std::move(s));
  }

  sub.closed_world = g.closed_world && sub.smooth_singularity_count() == 0;

  if (g.gorenstein) {
    GorensteinData data{g.gorenstein->k, {}};
    for (const auto& comp : sub.components) data.a[comp.id] = g.gorenstein->a.at(comp.id);
    sub.gorenstein = std::move(data);
  }
  return sub;
}

}  // namespace sepkit
