#include "sepkit/report.hpp"

#include "json_io.hpp"
#include "sepkit/error.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace sepkit {

using detail::Json;

namespace {

Json cycle_to_json(const DualGraph& g, const std::vector<DirectedStep>& cycle) {
  Json steps = Json::array();
  for (const auto& s : cycle) {
    steps.push_back(
        Json{{"crossing", g.crossings[s.crossing].id}, {"direction", s.forward ? "tail_to_head" : "head_to_tail"}});
  }
  return steps;
}

std::string cycle_to_text(const DualGraph& g, const std::vector<DirectedStep>& cycle) {
  std::string out;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += " ";
    out += g.crossings[cycle[i].crossing].id + (cycle[i].forward ? "+" : "-");
  }
  return out;
}

Json representation_to_json(const DualGraph& g, const RepresentationClass& rc) {
  Json j;
  j["kind"] = to_string(rc.kind);
  if (rc.order) j["order"] = *rc.order;
  Json hs = Json::array();
  for (const auto& h : rc.holonomies) {
    Json hj;
    hj["cycle"] = cycle_to_json(g, h.cycle);
    hj["value"] = detail::optional_element_to_json(h.value);
    if (h.order) hj["order"] = *h.order;
    hs.push_back(std::move(hj));
  }
  j["holonomies"] = std::move(hs);
  return j;
}

Json residual_to_json(const ResidualDivisor& rd) {
  Json res = Json::object(), sep = Json::object();
  for (const auto& [id, v] : rd.residues) res[id] = detail::element_to_json(v);
  for (const auto& [id, v] : rd.separatrix_residues) sep[id] = detail::element_to_json(v);
  return Json{{"residues", res}, {"separatrix_residues", sep}};
}

Json certificate_to_json(const Certificate& cert) {
  Json j;
  j["conclusion"] = to_string(cert.conclusion);
  j["rule"] = cert.rule;
  j["statement"] = cert.statement;
  Json hyps = Json::array();
  for (const auto& h : cert.hypotheses) {
    hyps.push_back(Json{{"name", h.name}, {"status", to_string(h.status)}, {"evidence", h.evidence}});
  }
  j["hypotheses"] = std::move(hyps);

  Json w = Json::object();
  const Witnesses& wit = cert.witnesses;
  if (wit.subcurve) w["subcurve"] = *wit.subcurve;
  if (wit.count_bound) {
    w["count_bound"] = Json{{"declared_m", wit.count_bound->declared_m},
                            {"lower_bound", wit.count_bound->lower_bound},
                            {"holds", wit.count_bound->holds}};
  }
  if (wit.torsion_order) w["torsion_order"] = *wit.torsion_order;
  if (wit.gorenstein) {
    Json pairings = Json::object();
    for (const auto& [id, v] : wit.gorenstein->pairings) pairings[id] = detail::integer_to_json(v);
    w["gorenstein"] = Json{{"k", wit.gorenstein->k},
                           {"pairings", pairings},
                           {"orthogonality_holds", wit.gorenstein->orthogonality_holds},
                           {"forced_a", wit.gorenstein->forced_a},
                           {"holonomy_power_check", wit.gorenstein->holonomy_power_check}};
  }
  j["witnesses"] = std::move(w);

  Json trace = Json::array();
  for (const auto& a : cert.trace) trace.push_back(Json{{"rule", a.rule}, {"all_satisfied", a.all_satisfied}});
  j["trace"] = std::move(trace);
  return j;
}

void certificate_to_text(std::ostream& os, const Certificate& cert) {
  os << "conclusion: " << to_string(cert.conclusion) << "\n";
  os << "rule: " << cert.rule << "\n";
  os << "statement: " << cert.statement << "\n";
  os << "hypotheses:\n";
  for (const auto& h : cert.hypotheses) {
    os << "  [" << to_string(h.status) << "] " << h.name << ": " << h.evidence << "\n";
  }
  const Witnesses& w = cert.witnesses;
  if (w.subcurve) {
    os << "subcurve:";
    for (const auto& id : *w.subcurve) os << " " << id;
    os << "\n";
  }
  if (w.count_bound) {
    os << "count bound: declared " << w.count_bound->declared_m << ", lower bound " << w.count_bound->lower_bound
       << (w.count_bound->holds ? " (holds)" : " (violated)") << "\n";
  }
  if (w.torsion_order) os << "torsion order: " << *w.torsion_order << "\n";
  if (w.gorenstein) {
    os << "gorenstein: k = " << w.gorenstein->k << ", D.E_j =";
    for (const auto& [id, v] : w.gorenstein->pairings) os << " " << id << ":" << v.get_str();
    os << ", forced a_i = k: " << (w.gorenstein->forced_a ? "yes" : "no")
       << ", holonomy^k = 1: " << (w.gorenstein->holonomy_power_check ? "yes" : "no") << "\n";
  }
}

void findings_to_text(std::ostream& os, std::span<const Finding> findings) {
  if (findings.empty()) os << "no findings\n";
  for (const auto& f : findings) {
    os << to_string(f.severity) << " " << f.code << " " << f.subject << ": " << f.message << "\n";
  }
}

Json findings_to_json(std::span<const Finding> findings) {
  Json arr = Json::array();
  for (const auto& f : findings) arr.push_back(detail::finding_to_json(f));
  return arr;
}

}  // namespace

std::string input_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
  return buf;
}

AnalysisReport analyze(const DualGraph& g, std::string_view digest) {
  AnalysisReport r;
  r.digest = std::string(digest);
  r.findings = validate_indices(g);
  r.matrix = intersection_matrix(g);
  r.definiteness = definiteness(r.matrix);
  r.representation = representation_class(g);
  if (r.representation.kind == RepresentationKind::Trivial) {
    try {
      r.residual = residual_divisor(g);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SaddleNodePresent && e.code() != ErrorCode::NontrivialRepresentation) throw;
      r.residual_note = e.what();
    }
  } else {
    r.residual_note = "residual representation is " + std::string(to_string(r.representation.kind));
  }
  if (!has_errors(r.findings)) {
    r.certificate = verdict(g);
  }
  return r;
}

std::string render_analysis(const DualGraph& g, const AnalysisReport& r, Format fmt) {
  if (fmt == Format::Json) {
    Json j;
    j["input_digest"] = r.digest;
    j["field"] = detail::field_to_json(*g.field);
    j["findings"] = findings_to_json(r.findings);
    Json minors = Json::array();
    for (const auto& m : r.definiteness.leading_minors) minors.push_back(detail::integer_to_json(m));
    j["intersection"] = Json{{"components", r.matrix.ids},
                             {"matrix", r.matrix.entries},
                             {"determinant", detail::integer_to_json(r.definiteness.determinant)},
                             {"leading_minors", minors},
                             {"negative_definite", r.definiteness.negative_definite},
                             {"invertible", r.definiteness.invertible}};
    j["representation"] = representation_to_json(g, r.representation);
    if (r.residual) {
      j["residual_divisor"] = residual_to_json(*r.residual);
    } else {
      j["residual_divisor"] = nullptr;
      j["residual_divisor_note"] = r.residual_note;
    }
    j["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : Json(nullptr);
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "input: " << r.digest << "\n";
  os << "field: " << g.field->modulus().to_string("a") << "\n";
  os << "\nfindings:\n";
  findings_to_text(os, r.findings);
  os << "\nintersection matrix (" << r.matrix.order() << " components):\n";
  for (std::size_t i = 0; i < r.matrix.order(); ++i) {
    os << "  " << r.matrix.ids[i] << ":";
    for (auto v : r.matrix.entries[i]) os << " " << v;
    os << "\n";
  }
  os << "determinant: " << r.definiteness.determinant.get_str() << "\n";
  os << "negative definite: " << (r.definiteness.negative_definite ? "yes" : "no") << "\n";
  os << "\nrepresentation: " << to_string(r.representation.kind);
  if (r.representation.order) os << " (order " << *r.representation.order << ")";
  os << "\n";
  for (const auto& h : r.representation.holonomies) {
    os << "  " << cycle_to_text(g, h.cycle) << " -> " << (h.value ? h.value->to_string() : "undefined") << "\n";
  }
  os << "\nresidual divisor:";
  if (r.residual) {
    os << "\n";
    for (const auto& [id, v] : r.residual->residues) os << "  " << id << ": " << v.to_string() << "\n";
    for (const auto& [id, v] : r.residual->separatrix_residues) os << "  " << id << ": " << v.to_string() << "\n";
  } else {
    os << " none (" << r.residual_note << ")\n";
  }
  os << "\n";
  if (r.certificate) {
    certificate_to_text(os, *r.certificate);
  } else {
    os << "no verdict: index validation reported errors\n";
  }
  return os.str();
}

std::string render_findings(std::span<const Finding> findings, Format fmt) {
  if (fmt == Format::Json) return Json{{"findings", findings_to_json(findings)}}.dump(2) + "\n";
  std::ostringstream os;
  findings_to_text(os, findings);
  return os.str();
}

std::string render_certificate(const Certificate& cert, Format fmt) {
  if (fmt == Format::Json) return certificate_to_json(cert).dump(2) + "\n";
  std::ostringstream os;
  certificate_to_text(os, cert);
  return os.str();
}

std::string render_prune(const DualGraph& g, std::span<const std::string> subcurve, bool explicit_selection,
                         Format fmt) {
  const DualGraph sub = induced_subcurve(g, subcurve);
  if (fmt == Format::Json) {
    Json j;
    j["source"] = explicit_selection ? "selection" : "toma_prune";
    j["subcurve"] = std::vector<std::string>(subcurve.begin(), subcurve.end());
    j["graph"] = detail::graph_to_json(sub);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << (explicit_selection ? "selected subcurve:" : "pruned subcurve:");
  for (const auto& id : subcurve) os << " " << id;
  os << "\n";
  for (const auto& comp : sub.components) {
    for (const auto& s : comp.smooth_singularities) {
      if (!s.attached_to) continue;
      os << "  attachment " << s.id << " on " << comp.id << " (to " << *s.attached_to
         << "): cs = " << (s.cs ? s.cs->to_string() : "unknown") << "\n";
    }
  }
  return os.str();
}

}  // namespace sepkit
