#pragma once

#include <span>
#include <string>

#include "aucpower/api/requests.hpp"

namespace aucpower::api {

// Result documents shared by the CLI (--json) and the HTTP service. Each has
// the shape
//   {"schema_version", "tool": {"name", "version"}, "command",
//    "inputs": <fully resolved inputs incl. seed>, "results", "notes": [...]}
// and contains no timestamps, so equal inputs give byte-identical dumps.
json single_document(const SingleInputs& in);
json pilot_document(const PilotInputs& in);
json binormal_document(const BinormalInputs& in);
json preview_document(const PreviewInputs& in);

// Canonical serialisation used by both front ends.
std::string dump_document(const json& doc);

// "n,power,mc_se" table of every power estimate in a pilot or binormal
// document (single estimate, curve points, or all points visited by a search).
std::string curve_csv(const json& doc);

json power_estimate_json(const PowerEstimate& e);

// FNV-1a over labels and the bit patterns of both score columns; identifies a
// pilot dataset in echoed inputs without repeating it.
std::string dataset_fingerprint(const PilotDataset& data);

}  // namespace aucpower::api
