#include "sepkit/sepkit.h"

#include "sepkit/error.hpp"
#include "sepkit/fixtures.hpp"
#include "sepkit/report.hpp"
#include "sepkit/verdict.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

struct sepkit_graph {
  sepkit::DualGraph graph;
  std::string digest;
};

namespace {

thread_local std::string last_error;

sepkit_status from_code(sepkit::ErrorCode code) {
  return static_cast<sepkit_status>(static_cast<int>(code) + 1);
}

sepkit::Format to_format(sepkit_format f) {
  return f == SEPKIT_FORMAT_TEXT ? sepkit::Format::Text : sepkit::Format::Json;
}

sepkit_status fail(sepkit_status status, const std::string& msg) {
  last_error = msg;
  return status;
}

sepkit_status emit(const std::string& text, char** out) {
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buf) return fail(SEPKIT_ERR_INTERNAL, "out of memory");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  *out = buf;
  return SEPKIT_OK;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
sepkit_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const sepkit::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SEPKIT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SEPKIT_ERR_INTERNAL, e.what());
  }
}

std::vector<std::string> to_ids(const char* const* keep, size_t nkeep) {
  std::vector<std::string> ids;
  for (size_t i = 0; i < nkeep; ++i) ids.emplace_back(keep[i]);
  return ids;
}

}  // namespace

extern "C" {

sepkit_status sepkit_graph_parse(const char* text, size_t length, sepkit_graph** out) {
  if (!text || !out) return fail(SEPKIT_ERR_INVALID_ARGUMENT, "text and out must be non-null");
  return guarded([&] {
    std::string_view doc(text, length);
    auto* g = new sepkit_graph{sepkit::parse_graph(doc), sepkit::input_digest(doc)};
    *out = g;
    return SEPKIT_OK;
  });
}

void sepkit_graph_free(sepkit_graph* graph) { delete graph; }

sepkit_status sepkit_graph_serialize(const sepkit_graph* graph, char** out) {
  if (!graph || !out) return fail(SEPKIT_ERR_INVALID_ARGUMENT, "graph and out must be non-null");
  *out = nullptr;
  return guarded([&] { return emit(sepkit::serialize_graph(graph->graph), out); });
}

sepkit_status sepkit_validate(const sepkit_graph* graph, sepkit_format format, char** out, int* has_errors) {
  if (!graph || !out) return fail(SEPKIT_ERR_INVALID_ARGUMENT, "graph and out must be non-null");
  *out = nullptr;
  return guarded([&] {
    const auto findings = sepkit::validate_indices(graph->graph);
    if (has_errors) *has_errors = sepkit::has_errors(findings) ? 1 : 0;
    return emit(sepkit::render_findings(findings, to_format(format)), out);
  });
}

sepkit_status sepkit_analyze(const sepkit_graph* graph, sepkit_format format, char** out, int* has_errors) {
  if (!graph || !out) return fail(SEPKIT_ERR_INVALID_ARGUMENT, "graph and out must be non-null");
  *out = nullptr;
  return guarded([&] {
    const auto report = sepkit::analyze(graph->graph, graph->digest);
    if (has_errors) *has_errors = sepkit::has_errors(report.findings) ? 1 : 0;
    return emit(sepkit::render_analysis(graph->graph, report, to_format(format)), out);
  });
}

sepkit_status sepkit_prune(const sepkit_graph* graph, const char* const* keep, size_t nkeep, sepkit_format format,
                           char** out) {
  if (!graph || !out || (nkeep > 0 && !keep)) return fail(SEPKIT_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const bool explicit_selection = nkeep > 0;
    const auto ids = explicit_selection ? to_ids(keep, nkeep) : sepkit::toma_prune(graph->graph);
    return emit(sepkit::render_prune(graph->graph, ids, explicit_selection, to_format(format)), out);
  });
}

sepkit_status sepkit_verdict(const sepkit_graph* graph, const char* const* keep, size_t nkeep, sepkit_format format,
                             char** out) {
  if (!graph || !out || (nkeep > 0 && !keep)) return fail(SEPKIT_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto cert = nkeep > 0 ? sepkit::subcurve_criterion(graph->graph, to_ids(keep, nkeep))
                                : sepkit::verdict(graph->graph);
    return emit(sepkit::render_certificate(cert, to_format(format)), out);
  });
}

sepkit_status sepkit_example(const char* name, const char* params_json, char** out) {
  if (!name || !out) return fail(SEPKIT_ERR_INVALID_ARGUMENT, "name and out must be non-null");
  *out = nullptr;
  return guarded([&] {
    const auto params = sepkit::parse_example_params(params_json ? params_json : "");
    return emit(sepkit::serialize_example(sepkit::generate_example(name, params)), out);
  });
}

void sepkit_string_free(char* text) { std::free(text); }

const char* sepkit_last_error(void) { return last_error.c_str(); }

const char* sepkit_status_name(sepkit_status status) {
  switch (status) {
    case SEPKIT_OK: return "OK";
    case SEPKIT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SEPKIT_ERR_INTERNAL: return "Internal";
    default: break;
  }
  const int code = static_cast<int>(status) - 1;
  if (code >= 0 && code <= static_cast<int>(sepkit::ErrorCode::BadParams)) {
    return sepkit::to_string(static_cast<sepkit::ErrorCode>(code)).data();
  }
  return "Unknown";
}

const char* sepkit_version(void) { return "0.1.0"; }

}  // extern "C"
