#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semnet/nullmodels.hpp"
#include "semnet/record.hpp"

namespace semnet {

inline constexpr const char* kVersion = "0.1.0";

struct PipelineConfig {
  std::string input_path;
  RecordFormat format = RecordFormat::jsonl;
  int merge_threshold = 2;
  double fdr_t = 0.05;
  std::vector<ModelKind> models = {ModelKind::BiRGM, ModelKind::BiPCM, ModelKind::BiCM};
  double polarization_threshold = 0.5;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out_dir;
  bool strict_parse = true;
  int min_community_size = 2;  // verified members required for a bundle
  int louvain_restarts = 10;
  int cp_restarts = 10;

  // Throws std::invalid_argument on an unusable configuration.
  void validate() const;
  std::string canonical_string() const;
  std::string config_hash() const;
};

// Stage names, in execution order: ingest, project, validate, communities,
// mesoscale, metrics.
const std::vector<std::string>& stage_names();

// Runs one stage from cached upstream artifacts in config.out_dir. Files
// written by a failing stage are removed before the error propagates.
// Returns the relative paths written.
std::vector<std::string> run_stage(const std::string& name, const PipelineConfig& config);

// Full pipeline: every stage in order, then the manifest. Returns all
// relative artifact paths including the manifest.
std::vector<std::string> run_pipeline(const PipelineConfig& config);

// (Re)writes out_dir/manifest.json describing the current artifact tree.
std::string write_manifest(const PipelineConfig& config);

}  // namespace semnet
