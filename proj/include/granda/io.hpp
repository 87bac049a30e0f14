#pragma once

#include <string>

#include <json.hpp>

#include "granda/sequence.hpp"
#include "granda/stepfn.hpp"

namespace granda {

// All serialization goes through ordered_json so field order is fixed by the
// writer, never by a hash map: identical values always produce identical
// bytes, and reading a file written here and writing it back is the
// identity.

nlohmann::ordered_json sequence_to_json(const GrandSequence& x);
GrandSequence sequence_from_json(const nlohmann::json& j);

nlohmann::ordered_json step_to_json(const StepFunction& g);
StepFunction step_from_json(const nlohmann::json& j);

// Canonical file body: two-space indent, trailing newline.
std::string canonical_text(const nlohmann::ordered_json& j);

// Canonical record line: compact, no trailing newline.
std::string record_line(const nlohmann::ordered_json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace granda
