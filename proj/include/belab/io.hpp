#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "belab/catalog.hpp"
#include "belab/certify.hpp"
#include "belab/range.hpp"
#include "belab/types.hpp"

namespace belab {

/// On-disk state record: dims, row-major matrix entries, and provenance
/// labels. Matrix entries round-trip bit-exactly through the JSON encoding.
struct StateFile {
  DensityMatrix state;
  std::string label;
  std::string family;
  std::optional<double> lambda;
};

nlohmann::json to_json(const StateFile& sf);
StateFile state_from_json(const nlohmann::json& j);

void write_state(const std::filesystem::path& path, const StateFile& sf);
StateFile read_state(const std::filesystem::path& path);

/// CSV with header `lambda,value` and one 17-significant-digit row per grid
/// point.
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep);

nlohmann::json sweep_to_json(const SweepResult& sweep);
nlohmann::json certify_to_json(const CertifyReport& report, double tol);
nlohmann::json range_report_to_json(const RangeReport& report);
nlohmann::json gamma_to_json(const GammaSearch& search);
nlohmann::json ucpb_evidence_to_json(const UcpbEvidence& evidence);

/// `{"name": ..., "version": ...}` block stamped into every JSON report.
nlohmann::json tool_stamp();

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace belab
