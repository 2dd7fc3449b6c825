// sepkit command-line front end. Talks to the library only through the C API.

#include "sepkit/sepkit.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kUsageError = 2;

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  std::vector<std::string> keep;

  std::string example;
  std::string params;
  std::vector<std::int64_t> self_intersections;
  std::string t;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n;
  std::optional<double> saddle_node_probability;
  std::string field;
  std::string closed_world;
  std::optional<std::int64_t> gorenstein_k;
};

class Text {
 public:
  Text() = default;
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  ~Text() { sepkit_string_free(ptr); }
  char** out() { return &ptr; }
  const char* get() const { return ptr ? ptr : ""; }

 private:
  char* ptr = nullptr;
};

class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;
  ~Graph() { sepkit_graph_free(ptr); }
  sepkit_graph** out() { return &ptr; }
  const sepkit_graph* get() const { return ptr; }

 private:
  sepkit_graph* ptr = nullptr;
};

int usage_error(const std::string& msg) {
  std::cerr << "sepkit: error: " << msg << "\n";
  return kUsageError;
}

bool is_usage_status(sepkit_status s) {
  return s == SEPKIT_ERR_BAD_PARAMS || s == SEPKIT_ERR_INVALID_ARGUMENT || s == SEPKIT_ERR_EMPTY_SELECTION ||
         s == SEPKIT_ERR_DISCONNECTED_SELECTION;
}

int report_failure(sepkit_status s, bool selection_call = false) {
  std::cerr << "sepkit: " << sepkit_status_name(s) << ": " << sepkit_last_error() << "\n";
  if (is_usage_status(s) || (selection_call && s == SEPKIT_ERR_UNKNOWN_ID)) return kUsageError;
  return kInputError;
}

std::optional<std::string> read_input(const std::string& path) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  buf << in.rdbuf();
  return buf.str();
}

int write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return std::cout ? kOk : kInputError;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "sepkit: cannot write " << path << "\n";
    return kInputError;
  }
  return kOk;
}

std::string example_params(const Options& o) {
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  if (!o.params.empty()) {
    try {
      p = nlohmann::ordered_json::parse(o.params);
    } catch (const nlohmann::json::parse_error& e) {
      throw CLI::ValidationError("--params", std::string("not valid JSON: ") + e.what());
    }
    if (!p.is_object()) throw CLI::ValidationError("--params", "must be a JSON object");
  }
  if (!o.self_intersections.empty()) p["self_intersections"] = o.self_intersections;
  if (!o.t.empty()) p["t"] = o.t;
  if (o.seed) {
    p["seed"] = *o.seed;
  } else if (const char* env = std::getenv("SEPKIT_SEED"); env && o.example == "random_tree") {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0') throw CLI::ValidationError("SEPKIT_SEED", "must be a non-negative integer");
    p["seed"] = static_cast<std::uint64_t>(v);
  }
  if (o.n) p["n"] = *o.n;
  if (o.saddle_node_probability) p["saddle_node_probability"] = *o.saddle_node_probability;
  if (!o.field.empty()) p["field"] = o.field;
  if (!o.closed_world.empty()) p["closed_world"] = o.closed_world == "true";
  if (o.gorenstein_k) p["gorenstein_k"] = *o.gorenstein_k;
  return p.dump();
}

int run_example(const Options& o) {
  std::string params;
  try {
    params = example_params(o);
  } catch (const CLI::Error& e) {
    return usage_error(e.what());
  }
  Text out;
  if (sepkit_status s = sepkit_example(o.example.c_str(), params.c_str(), out.out()); s != SEPKIT_OK) {
    return report_failure(s);
  }
  return write_output(o.output, out.get());
}

int run_graph_command(const std::string& command, const Options& o) {
  const std::optional<std::string> text = read_input(o.input);
  if (!text) return usage_error("cannot read " + o.input);
  Graph g;
  if (sepkit_status s = sepkit_graph_parse(text->data(), text->size(), g.out()); s != SEPKIT_OK) {
    return report_failure(s);
  }
  const sepkit_format fmt = o.format == "text" ? SEPKIT_FORMAT_TEXT : SEPKIT_FORMAT_JSON;
  std::vector<const char*> keep;
  for (const auto& id : o.keep) keep.push_back(id.c_str());

  Text out;
  int has_errors = 0;
  sepkit_status s = SEPKIT_OK;
  if (command == "validate") {
    s = sepkit_validate(g.get(), fmt, out.out(), &has_errors);
  } else if (command == "analyze") {
    s = sepkit_analyze(g.get(), fmt, out.out(), &has_errors);
  } else if (command == "prune") {
    s = sepkit_prune(g.get(), keep.data(), keep.size(), fmt, out.out());
  } else {
    s = sepkit_verdict(g.get(), keep.data(), keep.size(), fmt, out.out());
  }
  if (s != SEPKIT_OK) return report_failure(s, !keep.empty());
  const int rc = write_output(o.output, out.get());
  if (rc != kOk) return rc;
  return has_errors ? kInputError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separatrix existence certificates for decorated resolution graphs"};
  app.set_version_flag("--version", std::string(sepkit_version()));
  app.require_subcommand(1);

  Options o;
  auto add_io = [&](CLI::App* sub, bool with_keep) {
    sub->add_option("--input", o.input, "Input graph document (default: standard input)");
    sub->add_option("--output", o.output, "Output file (default: standard output)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    if (with_keep) sub->add_option("--keep", o.keep, "Comma-separated component ids")->delimiter(',');
  };

  add_io(app.add_subcommand("validate", "Report index findings"), false);
  add_io(app.add_subcommand("analyze", "Full analysis report"), false);
  add_io(app.add_subcommand("prune", "List the pruned tree subcurve, or the induced subcurve of --keep"), true);
  add_io(app.add_subcommand("verdict", "Separatrix existence certificate"), true);

  CLI::App* ex = app.add_subcommand("example", "Write a generated input document");
  ex->add_option("name", o.example, "camacho, p2_cycle, torsion4 or random_tree")->required();
  ex->add_option("--output", o.output, "Output file (default: standard output)");
  ex->add_option("--params", o.params, "Parameters as a JSON object");
  ex->add_option("--self-intersections", o.self_intersections, "camacho: three self-intersections")
      ->delimiter(',')
      ->expected(3);
  ex->add_option("--t", o.t, "p2_cycle: rational parameter");
  ex->add_option("--seed", o.seed, "random_tree: seed (SEPKIT_SEED is used when absent)");
  ex->add_option("--n", o.n, "random_tree: number of components");
  ex->add_option("--saddle-node-probability", o.saddle_node_probability, "random_tree: per-crossing probability");
  ex->add_option("--field", o.field, "random_tree: rational or quadratic")
      ->check(CLI::IsMember({"rational", "quadratic"}));
  ex->add_option("--closed-world", o.closed_world, "Declare no singularities off the crossings")
      ->check(CLI::IsMember({"true", "false"}));
  ex->add_option("--gorenstein-k", o.gorenstein_k, "Attach Gorenstein data with every a_i = k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == ex) return run_example(o);
  return run_graph_command(chosen->get_name(), o);
}
