#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "galrep/pipeline/assets.hpp"
#include "json.hpp"

namespace galrep::pipeline {

enum class StageStatus { Pass, Fail, Skipped };

std::string to_string(StageStatus s);

struct StageResult {
  std::string name;
  StageStatus status = StageStatus::Skipped;
  std::string summary;
  nlohmann::json witness;  // values backing the verdict
};

struct PipelineOptions {
  long prime_bound = 50;
  long precision_bits = 256;
  std::uint64_t seed = 0x5eed;
};

struct VerificationReport {
  std::vector<StageResult> stages;
  nlohmann::json correspondences;  // derived row id -> matched labels and polynomials
  nlohmann::json skipped_primes;   // polynomial name -> [{l, reason}]
  nlohmann::json metadata;
  const StageResult* find(const std::string& name) const;
  int failures() const;
  bool passed() const { return failures() == 0; }
};

/// Runs the verification chain on a bundle; later stages whose inputs failed
/// are marked skipped. Never throws for mathematical failures.
VerificationReport run_pipeline(const AssetBundle& bundle, const PipelineOptions& options = {});

enum class ReportFormat { Json, Human };

/// Deterministic rendering: sorted keys in JSON, fixed layout for humans.
std::string emit_report(const VerificationReport& r, ReportFormat format);

nlohmann::json to_json(const VerificationReport& r);

}  // namespace galrep::pipeline
