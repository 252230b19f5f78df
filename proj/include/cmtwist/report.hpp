#pragma once

// Job parsing, dispatch and deterministic JSON reports for the cmtwist CLI.
//
// A job document is
//   {"command": "<name>", "payload": {...}, "output": "<path>"}
// with "payload" and "output" optional. Unknown keys are rejected at every
// level. Reports are nlohmann::json objects (keys sorted) and contain no
// timestamps, so identical jobs serialize to identical bytes.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cmtwist/cm_types.hpp"

namespace cmtwist {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "cmtwist 0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class Command { field, cmtype, twist_x, twist_e, discond, inertia, base_cert, example_41, example_42 };

std::string to_string(Command c);
std::optional<Command> command_from_string(std::string_view name);

struct JobSpec {
    Command command = Command::field;
    Json payload = Json::object();
    std::optional<std::string> output_path;
};

/// Exit status: 0 all conclusions reached, 1 input error, 2 hypothesis failure.
enum class Outcome { ok = 0, input_error = 1, hypothesis_failure = 2 };

struct Report {
    Json document;
    Outcome outcome = Outcome::ok;
};

/// Strict schema check of a parsed job document. Throws InputError with the
/// offending JSON path.
JobSpec validate_input(const Json& document);
/// Parses text then validates; parse errors carry line/column.
JobSpec parse_job(std::string_view text);

/// Canonical JSON form of a job (round-trips through validate_input).
Json job_to_json(const JobSpec& job);

/// Runs a job. Never throws for input or hypothesis errors; those are
/// reported in the document and reflected in `outcome`.
Report run(const JobSpec& job);

/// Pretty-printed JSON followed by a newline.
std::string serialize(const Report& report);

// Literals shared with tests.
AbelianField parse_field(const Json& literal, const std::string& path = "field");
CMType parse_cm_type(const Json& literal, const std::string& path = "cm_type");
WeilDatum parse_datum(const Json& literal, const std::string& path = "datum");
Json field_to_json(const AbelianField& k);

}  // namespace cmtwist
