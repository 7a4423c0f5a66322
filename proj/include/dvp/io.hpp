#pragma once

// CSV and JSON file formats used by the command-line tool and the harness.

#include "dvp/circle.hpp"
#include "dvp/density.hpp"
#include "dvp/estimators.hpp"
#include "dvp/harness.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dvp {

// All readers and writers throw IoError on file errors and ConfigError on
// malformed content.

std::vector<Angle> read_angles_csv(const std::string& path);
void write_angles_csv(const std::string& path, std::span<const Angle> angles);
//! Columns angle,density.
void write_density_csv(const std::string& path, const DensityEstimate& est);
//! Columns angle,j0,...,j2n.
void write_basis_csv(const std::string& path, int n, const AngularGrid& grid);

inline constexpr std::string_view kRecordHeader =
  "family,alpha,sample_size,method,rep,loss,value,infinite,runtime_ms,seed";
inline constexpr std::string_view kSummaryHeader =
  "family,alpha,sample_size,method,loss,mean,ci_lo,ci_hi,n_finite,n_infinite";

std::string format_record(const LossRecord& r);
//! nullopt for malformed lines.
std::optional<LossRecord> parse_record(std::string_view line);
std::vector<LossRecord> read_records_csv(const std::string& path);
void write_summary_csv(const std::string& path, std::span<const SummaryRow> rows);

//! Round-trip decimal formatting of a double.
std::string format_double(double x);

//! Experiment configuration; unknown keys raise ConfigError.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::string& path);

//! Estimator settings for a single fit: optional blocks "dpm", "fdbayes",
//! "nnts" and a top-level "seed".
struct EstimatorConfig
{
  DpmConfig dpm;
  FdbayesConfig fdbayes;
  NntsConfig nnts;
  std::uint64_t seed = 0;
};

EstimatorConfig parse_estimator_config(std::string_view json_text);
EstimatorConfig load_estimator_config(const std::string& path);

//! JSON sidecar: diagnostics plus an echo of the settings used.
std::string diagnostics_json(const DensityEstimate& est, const EstimatorConfig& cfg);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

} // namespace dvp
