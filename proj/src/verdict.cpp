#include "sepkit/verdict.hpp"

#include "sepkit/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace sepkit {

std::string_view to_string(Conclusion c) {
  switch (c) {
    case Conclusion::SeparatrixExists: return "separatrix_exists";
    case Conclusion::NotGuaranteed: return "not_guaranteed";
    case Conclusion::CertifiedAbsent: return "certified_absent";
    case Conclusion::InconsistentInput: return "inconsistent_input";
  }
  return "unknown";
}

std::string_view to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::Satisfied: return "satisfied";
    case HypothesisStatus::Failed: return "failed";
    case HypothesisStatus::Skipped: return "skipped";
  }
  return "unknown";
}

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string describe(const RepresentationClass& rc) {
  std::string s(to_string(rc.kind));
  if (rc.order) s += " of order " + std::to_string(*rc.order);
  return s;
}

// Lazily computed analysis shared by all checks of one evaluation.
class Context {
 public:
  Context(const DualGraph& g, std::optional<std::vector<std::string>> keep) : g_(g), keep_(std::move(keep)) {}

  const DualGraph& graph() const { return g_; }

  const Definiteness& definiteness() {
    if (!def_) def_ = sepkit::definiteness(intersection_matrix(g_));
    return *def_;
  }

  const RepresentationClass& representation() {
    if (!rep_) rep_ = representation_class(g_);
    return *rep_;
  }

  std::size_t cycle_rank() const { return g_.crossings.size() + 1 - g_.components.size(); }

  // The subcurve under test: given explicitly, or the pruned tree subcurve.
  const std::vector<std::string>& keep() {
    if (!keep_) keep_ = toma_prune(g_);
    return *keep_;
  }

  const DualGraph& sub() {
    if (!sub_) sub_ = induced_subcurve(g_, keep());
    return *sub_;
  }

  const RepresentationClass& sub_representation() {
    if (!sub_rep_) sub_rep_ = representation_class(sub());
    return *sub_rep_;
  }

 private:
  const DualGraph& g_;
  std::optional<std::vector<std::string>> keep_;
  std::optional<Definiteness> def_;
  std::optional<RepresentationClass> rep_;
  std::optional<DualGraph> sub_;
  std::optional<RepresentationClass> sub_rep_;
};

struct Outcome {
  bool ok = false;
  std::string evidence;
};

using Check = std::function<Outcome(Context&)>;

std::optional<std::string> first_saddle_node_crossing(const DualGraph& g) {
  for (const auto& c : g.crossings)
    if (c.is_saddle_node()) return c.id;
  return std::nullopt;
}

std::optional<std::string> first_saddle_node_point(const DualGraph& g) {
  for (const auto& comp : g.components)
    for (const auto& s : comp.smooth_singularities)
      if (s.kind != SingularityKind::NonDegenerate) return s.id;
  return std::nullopt;
}

Outcome check_tree(Context& ctx) {
  const std::size_t r = ctx.cycle_rank();
  if (r == 0) return {true, "dual graph has no cycles"};
  return {false, "dual graph has " + std::to_string(r) + " independent cycle(s)"};
}

Outcome check_exceptional(Context& ctx) {
  const Definiteness& d = ctx.definiteness();
  std::vector<std::string> minors;
  for (const auto& m : d.leading_minors) minors.push_back(m.get_str());
  std::string ev = "leading principal minors " + join(minors);
  if (d.negative_definite) return {true, ev + " alternate in sign; intersection matrix is negative definite"};
  return {false, ev + "; intersection matrix is not negative definite"};
}

Outcome check_no_saddle_node_crossings(Context& ctx) {
  if (auto id = first_saddle_node_crossing(ctx.graph())) return {false, "crossing " + *id + " is a saddle-node"};
  return {true, "every crossing is nondegenerate"};
}

Outcome check_all_nondegenerate(Context& ctx) {
  if (auto id = first_saddle_node_crossing(ctx.graph())) return {false, "crossing " + *id + " is a saddle-node"};
  if (auto id = first_saddle_node_point(ctx.graph())) return {false, "singularity " + *id + " is a saddle-node"};
  return {true, "every singularity on the curve is nondegenerate"};
}

Outcome check_representation(Context& ctx, RepresentationKind want) {
  const RepresentationClass& rc = ctx.representation();
  const std::string ev = "residual representation is " + describe(rc);
  return {rc.kind == want, ev};
}

Outcome check_gorenstein_present(Context& ctx) {
  if (!ctx.graph().gorenstein) return {false, "no Gorenstein data supplied"};
  return {true, "Gorenstein data supplied with k = " + std::to_string(ctx.graph().gorenstein->k)};
}

Outcome check_closed_world(Context& ctx) {
  const DualGraph& g = ctx.graph();
  if (!g.closed_world) return {false, "input does not declare closed_world"};
  if (g.smooth_singularity_count() != 0) return {false, "closed_world declared but singularities are listed"};
  return {true, "input declares no singularities off the crossings"};
}

Outcome check_sub_crossings(Context& ctx) {
  const DualGraph& sub = ctx.sub();
  if (auto id = first_saddle_node_crossing(sub)) return {false, "subcurve crossing " + *id + " is a saddle-node"};
  return {true, "subcurve {" + join(ctx.keep()) + "} has only nondegenerate crossings"};
}

Outcome check_sub_attachments(Context& ctx) {
  std::size_t count = 0;
  for (const auto& comp : ctx.sub().components) {
    for (const auto& s : comp.smooth_singularities) {
      if (!s.attached_to) continue;
      ++count;
      if (!s.cs) return {false, "attachment " + s.id + " to " + *s.attached_to + " has unknown CS index"};
      if (!s.cs->is_zero()) {
        return {false, "attachment " + s.id + " to " + *s.attached_to + " has CS index " + s.cs->to_string()};
      }
    }
  }
  return {true, std::to_string(count) + " attachment point(s), all with CS index 0"};
}

Outcome check_sub_representation(Context& ctx) {
  const RepresentationClass& rc = ctx.sub_representation();
  return {rc.kind == RepresentationKind::Trivial, "subcurve representation is " + describe(rc)};
}

Outcome check_invertible(Context& ctx) {
  const Definiteness& d = ctx.definiteness();
  return {d.invertible, "determinant " + d.determinant.get_str()};
}

Outcome check_no_weak_on_curve(Context& ctx) {
  for (const auto& comp : ctx.graph().components)
    for (const auto& s : comp.smooth_singularities)
      if (s.kind == SingularityKind::SaddleNodeWeakOnC)
        return {false, "singularity " + s.id + " has its weak direction along " + comp.id};
  return {true, "no saddle-node has its weak direction along the curve"};
}

const std::map<std::string, Check, std::less<>>& registry() {
  static const std::map<std::string, Check, std::less<>> checks = {
      {"dual_graph_is_tree", check_tree},
      {"exceptional", check_exceptional},
      {"no_saddle_node_crossings", check_no_saddle_node_crossings},
      {"all_singularities_nondegenerate", check_all_nondegenerate},
      {"representation_trivial", [](Context& c) { return check_representation(c, RepresentationKind::Trivial); }},
      {"representation_torsion", [](Context& c) { return check_representation(c, RepresentationKind::Torsion); }},
      {"representation_infinite", [](Context& c) { return check_representation(c, RepresentationKind::Infinite); }},
      {"gorenstein_data_present", check_gorenstein_present},
      {"closed_world_declared", check_closed_world},
      {"subcurve_crossings_nondegenerate", check_sub_crossings},
      {"subcurve_attachments_cs_zero", check_sub_attachments},
      {"subcurve_representation_trivial", check_sub_representation},
      {"intersection_matrix_invertible", check_invertible},
      {"no_weak_direction_on_curve", check_no_weak_on_curve},
  };
  return checks;
}

struct Rule {
  std::string_view id;
  std::vector<std::string_view> checks;
};

const Rule kTree{"tree_resolution_graph",
                 {"dual_graph_is_tree", "exceptional", "subcurve_crossings_nondegenerate",
                  "subcurve_attachments_cs_zero", "subcurve_representation_trivial"}};
const Rule kTrivial{"trivial_residual_representation",
                    {"no_saddle_node_crossings", "representation_trivial", "exceptional"}};
const Rule kTorsion{"torsion_residual_representation",
                    {"all_singularities_nondegenerate", "representation_torsion", "exceptional"}};
const Rule kGorenstein{"q_gorenstein_normal_sheaf",
                       {"gorenstein_data_present", "all_singularities_nondegenerate", "exceptional"}};
const Rule kClosedWorld{"closed_world_nonexistence",
                        {"closed_world_declared", "no_saddle_node_crossings", "representation_infinite", "exceptional"}};
const Rule kSubcurve{"exceptional_subcurve",
                     {"subcurve_crossings_nondegenerate", "subcurve_attachments_cs_zero",
                      "subcurve_representation_trivial", "exceptional"}};

Outcome run_check(Context& ctx, std::string_view name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorCode::BadParams, "unknown hypothesis \"" + std::string(name) + "\"");
  return it->second(ctx);
}

RuleAttempt attempt(Context& ctx, const Rule& rule) {
  RuleAttempt a{std::string(rule.id), true, {}};
  for (auto check : rule.checks) {
    CheckedHypothesis h{std::string(rule.id) + "/" + std::string(check), HypothesisStatus::Skipped, ""};
    if (a.all_satisfied) {
      Outcome o = run_check(ctx, check);
      h.status = o.ok ? HypothesisStatus::Satisfied : HypothesisStatus::Failed;
      h.evidence = std::move(o.evidence);
      a.all_satisfied = o.ok;
    } else {
      h.evidence = "not evaluated after an earlier hypothesis failed";
    }
    a.hypotheses.push_back(std::move(h));
  }
  return a;
}

GorensteinReduction reduce(const DualGraph& g) {
  const GorensteinData& gd = *g.gorenstein;
  const IntersectionMatrix m = intersection_matrix(g);
  const std::size_t n = m.order();

  GorensteinReduction r;
  r.k = gd.k;
  std::vector<Integer> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = Integer(static_cast<long>(gd.a.at(m.ids[i]))) - static_cast<long>(gd.k);

  r.orthogonality_holds = true;
  for (std::size_t j = 0; j < n; ++j) {
    Integer acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += d[i] * static_cast<long>(m.entries[i][j]);
    if (acc != 0) r.orthogonality_holds = false;
    r.pairings.emplace_back(m.ids[j], std::move(acc));
  }
  r.forced_a = std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 0; });

  r.holonomy_power_check = true;
  for (const auto& h : representation_class(g).holonomies) {
    if (!h.value || !h.value->pow(gd.k).is_one()) {
      r.holonomy_power_check = false;
      break;
    }
  }
  return r;
}

std::string first_nonzero_pairing(const GorensteinReduction& r) {
  for (const auto& [id, v] : r.pairings)
    if (v != 0) return "D." + id + " = " + v.get_str();
  return {};
}

std::string existence_statement(std::string_view rule) {
  if (rule == kTree.id) return "the pruned tree subcurve carries a separatrix, so the curve has one";
  if (rule == kTrivial.id) return "trivial residual representation on an exceptional curve forces a separatrix";
  if (rule == kTorsion.id) return "torsion residual representation on an exceptional curve forces a separatrix";
  if (rule == kGorenstein.id) return "Q-Gorenstein normal sheaf without saddle-nodes forces a separatrix";
  return "a separatrix exists";
}

void conclude_existence(Certificate& cert, const DualGraph& g, RuleAttempt& a) {
  cert.rule = a.rule;
  cert.hypotheses = a.hypotheses;
  if (g.closed_world) {
    cert.conclusion = Conclusion::InconsistentInput;
    cert.hypotheses.push_back({a.rule + "/closed_world_declared", HypothesisStatus::Satisfied,
                               "input declares no singularities off the crossings"});
    cert.statement = existence_statement(a.rule) +
                     ", but a separatrix must pass through a singularity off the crossings and none is declared";
  } else {
    cert.conclusion = Conclusion::SeparatrixExists;
    cert.statement = existence_statement(a.rule);
  }
}

}  // namespace

std::vector<std::string> toma_prune(const DualGraph& g) {
  const std::size_t n = g.components.size();
  if (g.crossings.size() + 1 != n) {
    throw Error(ErrorCode::NotATree, "dual graph has " + std::to_string(g.crossings.size() + 1 - n) +
                                         " independent cycle(s); pruning needs a tree");
  }
  // Forest components after deleting saddle-node crossings.
  std::vector<std::size_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return root[v] == v ? v : root[v] = find(root[v]);
  };
  for (const auto& c : g.crossings) {
    if (c.is_saddle_node()) continue;
    std::size_t a = find(g.tail_index(c)), b = find(g.head_index(c));
    if (a != b) root[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& c : g.crossings) {
    if (const auto* sn = std::get_if<SaddleNodeCrossing>(&c.kind)) ++indegree[find(g.index_of(sn->weak))];
  }
  std::size_t chosen = n;
  for (std::size_t v = 0; v < n && chosen == n; ++v)
    if (indegree[find(v)] == 0) chosen = find(v);
  if (chosen == n) throw Error(ErrorCode::NotATree, "every forest component receives a weak direction");

  std::vector<std::string> out;
  for (std::size_t v = 0; v < n; ++v)
    if (find(v) == chosen) out.push_back(g.components[v].id);
  return out;
}

CountBound separatrix_bound(const DualGraph& g) {
  Context ctx(g, std::nullopt);
  for (std::string_view name :
       {"no_saddle_node_crossings", "representation_trivial", "intersection_matrix_invertible", "no_weak_direction_on_curve"}) {
    Outcome o = run_check(ctx, name);
    if (!o.ok) throw Error(ErrorCode::HypothesisUnmet, std::string(name) + ": " + o.evidence);
  }
  const ResidualDivisor rd = residual_divisor(g);
  std::vector<FieldElement> values;
  for (const auto& [id, v] : rd.residues) values.push_back(v);
  for (const auto& [id, v] : rd.separatrix_residues) values.push_back(v);

  CountBound b;
  b.lower_bound = rational_span_dimension(values);
  for (const auto& comp : g.components)
    for (const auto& s : comp.smooth_singularities)
      if (s.has_transverse_separatrix) ++b.declared_m;
  b.holds = b.lower_bound >= 1 && b.declared_m >= static_cast<std::int64_t>(b.lower_bound);
  return b;
}

Certificate subcurve_criterion(const DualGraph& ambient, std::span<const std::string> keep) {
  // Validate the selection up front so errors surface as thrown codes.
  const DualGraph sub = induced_subcurve(ambient, keep);
  std::vector<std::string> ids;
  for (const auto& c : sub.components) ids.push_back(c.id);

  Context ctx(ambient, ids);
  RuleAttempt a = attempt(ctx, kSubcurve);
  Certificate cert;
  cert.witnesses.subcurve = ids;
  cert.trace.push_back(a);
  if (a.all_satisfied) {
    conclude_existence(cert, ambient, a);
    cert.statement = "subcurve {" + join(ids) + "} meets the criterion; " +
                     (cert.conclusion == Conclusion::SeparatrixExists
                          ? std::string("a separatrix exists")
                          : std::string("this contradicts the closed_world declaration"));
  } else {
    cert.rule = a.rule;
    cert.hypotheses = a.hypotheses;
    cert.conclusion = Conclusion::NotGuaranteed;
    cert.statement = "subcurve {" + join(ids) + "} does not meet the criterion";
  }
  return cert;
}

GorensteinReduction gorenstein_reduce(const DualGraph& g) {
  Context ctx(g, std::nullopt);
  for (std::string_view name : {"gorenstein_data_present", "all_singularities_nondegenerate", "exceptional"}) {
    Outcome o = run_check(ctx, name);
    if (!o.ok) throw Error(ErrorCode::HypothesisUnmet, std::string(name) + ": " + o.evidence);
  }
  GorensteinReduction r = reduce(g);
  if (!r.orthogonality_holds) {
    throw Error(ErrorCode::GorensteinInconsistent,
                "Gorenstein data inconsistent with the intersection form: " + first_nonzero_pairing(r) + " != 0");
  }
  return r;
}

Certificate verdict(const DualGraph& g) {
  const std::vector<Finding> findings = validate_indices(g);
  if (has_errors(findings)) {
    std::string msg = "index validation failed:";
    for (const auto& f : findings)
      if (f.severity == Severity::Error) msg += " [" + f.code + " " + f.subject + "] " + f.message + ";";
    throw Error(ErrorCode::ValidationFailed, msg);
  }

  Context ctx(g, std::nullopt);
  Certificate cert;

  RuleAttempt tree = attempt(ctx, kTree);
  cert.trace.push_back(tree);
  if (tree.all_satisfied) {
    cert.witnesses.subcurve = ctx.keep();
    conclude_existence(cert, g, tree);
    return cert;
  }

  RuleAttempt trivial = attempt(ctx, kTrivial);
  cert.trace.push_back(trivial);
  if (trivial.all_satisfied) {
    conclude_existence(cert, g, trivial);
    try {
      CountBound b = separatrix_bound(g);
      cert.witnesses.count_bound = b;
      if (!b.holds && cert.conclusion == Conclusion::SeparatrixExists) {
        cert.conclusion = Conclusion::InconsistentInput;
        cert.statement = "the residual divisor needs at least " + std::to_string(b.lower_bound) +
                         " separatrix germ(s) but only " + std::to_string(b.declared_m) + " are declared";
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HypothesisUnmet) throw;
    }
    return cert;
  }

  RuleAttempt torsion = attempt(ctx, kTorsion);
  cert.trace.push_back(torsion);
  if (torsion.all_satisfied) {
    cert.witnesses.torsion_order = ctx.representation().order;
    conclude_existence(cert, g, torsion);
    return cert;
  }

  RuleAttempt gor = attempt(ctx, kGorenstein);
  cert.trace.push_back(gor);
  if (gor.all_satisfied) {
    GorensteinReduction r = reduce(g);
    cert.witnesses.gorenstein = r;
    conclude_existence(cert, g, gor);
    if (cert.conclusion == Conclusion::InconsistentInput) {
      if (!r.orthogonality_holds) {
        cert.statement += "; with no such singularity the data would need " + first_nonzero_pairing(r) + " to vanish";
      } else if (!r.holonomy_power_check) {
        cert.statement += "; with no such singularity every holonomy would be a k-th root of unity, and one is not";
      }
    }
    return cert;
  }

  RuleAttempt closed = attempt(ctx, kClosedWorld);
  cert.trace.push_back(closed);
  if (closed.all_satisfied) {
    cert.rule = closed.rule;
    cert.hypotheses = closed.hypotheses;
    cert.conclusion = Conclusion::CertifiedAbsent;
    cert.statement = "no singularity off the crossings and infinite residual representation: no separatrix "
                     "transverse to the curve";
    return cert;
  }

  cert.rule = "no_rule_applies";
  cert.conclusion = Conclusion::NotGuaranteed;
  cert.statement = "no rule's hypotheses all hold; existence is not guaranteed";
  for (const auto& a : cert.trace) cert.hypotheses.insert(cert.hypotheses.end(), a.hypotheses.begin(), a.hypotheses.end());
  return cert;
}

HypothesisStatus recheck_hypothesis(const DualGraph& g, const Certificate& cert, std::string_view name) {
  const auto slash = name.find('/');
  if (slash == std::string_view::npos) {
    throw Error(ErrorCode::BadParams, "hypothesis name \"" + std::string(name) + "\" lacks a rule prefix");
  }
  Context ctx(g, cert.witnesses.subcurve);
  return run_check(ctx, name.substr(slash + 1)).ok ? HypothesisStatus::Satisfied : HypothesisStatus::Failed;
}

}  // namespace sepkit
