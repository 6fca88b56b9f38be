#pragma once

#include <string>

#include <json.hpp>

#include "rlap/sample.hpp"

namespace rlap {

// Reads one JSONL dataset of a declared kind. Validates the per-kind schema
// (SchemaError with the offending line), segments reading-comprehension
// contexts into sentences, and rejects contexts with fewer than three
// sentences (TooShortContext). Sample ids must be unique within a file.
Dataset ingest(const std::string& path, TaskKind kind, const std::string& language = "en");

// Parses a single record; `line` is only for error messages.
TaskSample parse_sample(const nlohmann::json& j, TaskKind kind, const std::string& language,
                        long line = 0);

nlohmann::json sample_to_json(const TaskSample& sample);

// JSONL writer; ingest(write(x)) == x field-for-field.
void write_dataset(const std::string& path, const Dataset& dataset);

}  // namespace rlap
