// Batch front end: parse job documents, dispatch computations, and emit
// deterministic reports. The input format is JSON with all rationals as
// strings; reports are reproducible byte-for-byte.
#pragma once

#include "defcohom/constructions.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace defcohom {

struct JobTask {
    std::string op;
    nlohmann::json params;
};

struct JobSpec {
    nlohmann::json document; // validated input document
    std::vector<JobTask> tasks;
};

// Validates structure, rationals, indices and shapes; throws Error with a
// field location on malformed input. No cohomology is computed here.
JobSpec parse_job(const std::string& text);

struct MaterializedModel {
    DvbModel model;
    MultiDerivation bracket; // not necessarily Maurer-Cartan yet
    std::string description;
};

MaterializedModel materialize_model(const JobSpec& spec);

// Executes the tasks in order; task failures do not abort later tasks.
// The report carries one entry per task with status PASS, FAIL or ERROR.
nlohmann::json run_job(const JobSpec& spec, const std::string& raw_input);

// PASS/FAIL/ERROR aggregate: 0 all PASS, 1 some FAIL or task ERROR.
int report_exit_code(const nlohmann::json& report);

std::string report_to_table(const nlohmann::json& report);

// Named example catalog with ready-to-run job documents.
nlohmann::json examples_catalog();

// FNV-1a 64-bit digest, hex-encoded; used for the report metadata.
std::string input_digest(const std::string& bytes);

} // namespace defcohom
