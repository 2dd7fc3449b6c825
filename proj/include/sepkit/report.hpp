#pragma once

// Report assembly for the command-line front end. Every renderer emits keys
// and lists in a fixed order so output is byte-identical across runs.

#include "sepkit/dualgraph.hpp"
#include "sepkit/holonomy.hpp"
#include "sepkit/intersection.hpp"
#include "sepkit/verdict.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sepkit {

enum class Format { Json, Text };

/// "fnv1a64:<16 hex digits>" of the raw input bytes.
std::string input_digest(std::string_view bytes);

struct AnalysisReport {
  std::string digest;
  std::vector<Finding> findings;
  IntersectionMatrix matrix;
  Definiteness definiteness;
  RepresentationClass representation;
  std::optional<ResidualDivisor> residual;
  std::string residual_note;  // why the residual divisor is absent
  std::optional<Certificate> certificate;
};

AnalysisReport analyze(const DualGraph& g, std::string_view digest);

std::string render_analysis(const DualGraph& g, const AnalysisReport& r, Format fmt);
std::string render_findings(std::span<const Finding> findings, Format fmt);
std::string render_certificate(const Certificate& cert, Format fmt);

/// `subcurve` is Γ₀ or an explicit selection; the induced subcurve document is
/// embedded in the JSON form.
std::string render_prune(const DualGraph& g, std::span<const std::string> subcurve, bool explicit_selection,
                         Format fmt);

}  // namespace sepkit
