#pragma once

// Simulation runner: draw datasets from the target families, fit every
// method on the same dataset, score every loss, and summarise with
// percentile bootstrap intervals.

#include "dvp/estimators.hpp"
#include "dvp/random.hpp"
#include "dvp/targets.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dvp {

enum class Method
{
  pd,
  pc,
  naic,
  nbic,
  fdbayes,
};

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);
inline constexpr Method kAllMethods[] = { Method::pd, Method::pc, Method::naic, Method::nbic,
                                          Method::fdbayes };
inline constexpr LossKind kAllLosses[] = { LossKind::kl, LossKind::l1, LossKind::l2,
                                           LossKind::hellinger };

struct FamilyGrid
{
  TargetFamily family;
  std::vector<double> alphas;
};

//! 13 evenly spaced values: [0, 1] for skewed-vm, [0, 2pi) for the w-family.
std::vector<double> default_alpha_grid(TargetFamily family);

struct ExperimentConfig
{
  std::vector<FamilyGrid> families = {
    { TargetFamily::skewed_von_mises, default_alpha_grid(TargetFamily::skewed_von_mises) },
    { TargetFamily::w, default_alpha_grid(TargetFamily::w) },
  };
  std::vector<std::size_t> sample_sizes = { 30, 100 };
  int reps = 100;
  std::vector<Method> methods = { std::begin(kAllMethods), std::end(kAllMethods) };
  std::vector<LossKind> losses = { std::begin(kAllLosses), std::end(kAllLosses) };
  std::uint64_t master_seed = 0;
  DpmConfig dpm;
  FdbayesConfig fdbayes;
  NntsConfig nnts;
  std::size_t grid = 2048;
  //! 0 means one worker per hardware thread.
  int workers = 0;
  std::string output;

  //! Throws ConfigError.
  void validate() const;
};

struct LossRecord
{
  TargetFamily family;
  double alpha;
  std::size_t sample_size;
  Method method;
  int rep;
  LossKind loss;
  //! +inf for infinite KL; NaN when the estimator failed.
  double value;
  double runtime_ms;
  std::uint64_t seed;

  bool infinite() const;
  bool failed() const;
};

//! Seed of the dataset for one (family, alpha index, size, rep); independent
//! of the method list.
std::uint64_t dataset_seed(std::uint64_t master, TargetFamily family, std::size_t alpha_index,
                           std::size_t size, int rep);
std::uint64_t method_seed(std::uint64_t dataset, Method method);

//! The dataset every method sees for the given key.
std::vector<Angle> draw_dataset(const TargetDensity& target, std::size_t size, std::uint64_t seed);

//! Fits one method; fixed estimator seeds are replaced by `seed`.
DensityEstimate fit_method(Method method, std::span<const Angle> data,
                           const ExperimentConfig& cfg, std::uint64_t seed);

//! Identifies a (family, alpha, size, method, rep) cell whose rows are
//! already complete; used to resume.
struct RecordKey
{
  TargetFamily family;
  double alpha;
  std::size_t sample_size;
  Method method;
  int rep;

  friend auto operator<=>(const RecordKey&, const RecordKey&) = default;
};

using RecordSink = std::function<void(std::span<const LossRecord>)>;

//! Runs every (family, alpha, size, rep) on a bounded worker pool. The sink
//! receives each cell's rows in key order, one call per cell, from a single
//! thread at a time. Cells listed in `done` are skipped.
void run_experiment(const ExperimentConfig& cfg, const RecordSink& sink,
                    std::span<const RecordKey> done = {});
std::vector<LossRecord> run_experiment(const ExperimentConfig& cfg);

//! Appends rows to `path`, first dropping malformed or incomplete cells left
//! by an interrupted run. Throws IoError when the file cannot be written.
void run_experiment_to_csv(const ExperimentConfig& cfg, const std::string& path);

//! Percentile bootstrap interval for the mean. Throws std::invalid_argument on
//! empty or non-finite input.
std::pair<double, double> bootstrap_ci(std::span<const double> values, double level,
                                       int resamples, Rng& rng);

//! Type-7 sample quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double p);

struct SummaryRow
{
  TargetFamily family;
  double alpha;
  std::size_t sample_size;
  Method method;
  LossKind loss;
  double mean;
  double ci_lo;
  double ci_hi;
  std::size_t n_finite;
  std::size_t n_infinite;
};

//! One row per (family, alpha, size, method, loss), in first-seen order.
//! Means and intervals use finite values only; failed rows are dropped.
std::vector<SummaryRow> summarize(std::span<const LossRecord> records, std::uint64_t seed = 0,
                                  double level = 0.95, int resamples = 2000);

} // namespace dvp
