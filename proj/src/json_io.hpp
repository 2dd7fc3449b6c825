#pragma once

// Internal JSON conversions shared by the graph parser and the report writer.

#include "sepkit/dualgraph.hpp"

#include <json.hpp>

namespace sepkit::detail {

using Json = nlohmann::ordered_json;

Json field_to_json(const NumberField& field);
Json element_to_json(const FieldElement& e);
Json optional_element_to_json(const std::optional<FieldElement>& e);
Json graph_to_json(const DualGraph& g);
Json finding_to_json(const Finding& f);

/// Integers that may exceed 64 bits are written as decimal strings.
Json integer_to_json(const Integer& n);

}  // namespace sepkit::detail
