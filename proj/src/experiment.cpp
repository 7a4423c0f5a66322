#include "dvp/harness.hpp"

#include "dvp/errors.hpp"
#include "dvp/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace dvp {

std::string_view
method_name(Method method)
{
  switch (method) {
    case Method::pd:
      return "pd";
    case Method::pc:
      return "pc";
    case Method::naic:
      return "naic";
    case Method::nbic:
      return "nbic";
    case Method::fdbayes:
      return "fdbayes";
  }
  return "unknown";
}

std::optional<Method>
parse_method(std::string_view name)
{
  for (Method m : kAllMethods)
    if (method_name(m) == name)
      return m;
  return std::nullopt;
}

std::vector<double>
default_alpha_grid(TargetFamily family)
{
  std::vector<double> out(13);
  for (int k = 0; k < 13; ++k)
    out[k] = family == TargetFamily::skewed_von_mises ? k / 12.0 : kTwoPi * k / 13.0;
  return out;
}

void
ExperimentConfig::validate() const
{
  if (families.empty())
    throw ConfigError("no target families");
  for (const FamilyGrid& f : families) {
    if (f.alphas.empty())
      throw ConfigError("empty alpha grid for " + std::string(family_name(f.family)));
    for (double a : f.alphas) {
      try {
        TargetDensity(f.family, a, AngularGrid(16));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (sample_sizes.empty() ||
      std::any_of(sample_sizes.begin(), sample_sizes.end(), [](std::size_t s) { return s == 0; }))
    throw ConfigError("sample sizes must be positive");
  if (reps < 1)
    throw ConfigError("reps must be at least 1");
  if (methods.empty())
    throw ConfigError("no methods");
  if (losses.empty())
    throw ConfigError("no losses");
  if (grid < 16)
    throw ConfigError("grid must have at least 16 points");
  if (workers < 0)
    throw ConfigError("workers must be nonnegative");
  if (nnts.degrees.empty() ||
      std::any_of(nnts.degrees.begin(), nnts.degrees.end(), [](int d) { return d < 0; }))
    throw ConfigError("nnts degrees must be a nonempty list of nonnegative integers");
  try {
    dpm.validate();
    fdbayes.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

bool
LossRecord::infinite() const
{
  return std::isinf(value);
}

bool
LossRecord::failed() const
{
  return std::isnan(value);
}

std::uint64_t
dataset_seed(std::uint64_t master, TargetFamily family, std::size_t alpha_index, std::size_t size,
             int rep)
{
  return derive_seed({ master, hash_string(family_name(family)), alpha_index, size,
                       static_cast<std::uint64_t>(rep) });
}

std::uint64_t
method_seed(std::uint64_t dataset, Method method)
{
  return derive_seed({ dataset, hash_string(method_name(method)) });
}

namespace {

std::uint64_t
nnts_path_seed(std::uint64_t dataset)
{
  return derive_seed({ dataset, hash_string("nnts") });
}

} // namespace

std::vector<Angle>
draw_dataset(const TargetDensity& target, std::size_t size, std::uint64_t seed)
{
  Rng rng(seed);
  return sample_target(target, size, rng);
}

DensityEstimate
fit_method(Method method, std::span<const Angle> data, const ExperimentConfig& cfg,
           std::uint64_t seed)
{
  const AngularGrid grid(cfg.grid);
  switch (method) {
    case Method::pd:
    case Method::pc: {
      DpmConfig dpm = cfg.dpm;
      dpm.seed = seed;
      return method == Method::pd ? fit_pd(data, dpm, grid) : fit_pc(data, dpm, grid);
    }
    case Method::fdbayes: {
      FdbayesConfig fd = cfg.fdbayes;
      fd.seed = seed;
      return fit_fdbayes(data, fd, grid);
    }
    case Method::naic:
      return fit_nnts_ic(data, InfoCriterion::aic, cfg.nnts, seed, grid);
    case Method::nbic:
      return fit_nnts_ic(data, InfoCriterion::bic, cfg.nnts, seed, grid);
  }
  throw std::invalid_argument("unknown method");
}

namespace {

struct Cell
{
  std::size_t family_index;
  std::size_t alpha_index;
  std::size_t size;
  int rep;
  std::vector<Method> methods;
};

using Clock = std::chrono::steady_clock;

double
elapsed_ms(Clock::time_point start)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool
usable(const DensityEstimate& est)
{
  return std::all_of(est.values.begin(), est.values.end(),
                     [](double v) { return std::isfinite(v) && v >= 0.0; });
}

std::vector<LossRecord>
run_cell(const ExperimentConfig& cfg, const Cell& cell, const TargetDensity& target)
{
  const FamilyGrid& fam = cfg.families[cell.family_index];
  const std::uint64_t ds = dataset_seed(cfg.master_seed, fam.family, cell.alpha_index, cell.size,
                                        cell.rep);
  const std::vector<Angle> data = draw_dataset(target, cell.size, ds);
  const AngularGrid grid(cfg.grid);

  std::vector<LossRecord> rows;
  auto emit = [&](Method m, const DensityEstimate* est, double ms, std::uint64_t seed) {
    for (LossKind loss : cfg.losses) {
      double value = est ? compute_loss(loss, target, *est) : std::nan("");
      rows.push_back({ fam.family, fam.alphas[cell.alpha_index], cell.size, m, cell.rep, loss,
                       value, ms, seed });
    }
  };

  // nAIC and nBIC select from one shared path of fits
  std::optional<NntsPath> path;
  double path_ms = 0.0;
  bool path_failed = false;
  auto need_path = [&] {
    if (path || path_failed)
      return;
    auto start = Clock::now();
    try {
      Rng rng(nnts_path_seed(ds));
      path = fit_nnts_path(data, cfg.nnts.degrees, rng, cfg.nnts.options);
    } catch (const std::exception&) {
      path_failed = true;
    }
    path_ms = elapsed_ms(start);
  };

  for (Method m : cell.methods) {
    if (m == Method::naic || m == Method::nbic) {
      need_path();
      const std::uint64_t seed = nnts_path_seed(ds);
      if (path_failed) {
        emit(m, nullptr, path_ms, seed);
        continue;
      }
      InfoCriterion ic = m == Method::naic ? InfoCriterion::aic : InfoCriterion::bic;
      DensityEstimate est = nnts_estimate(path->select(ic), grid, std::string(method_name(m)));
      emit(m, usable(est) ? &est : nullptr, path_ms, seed);
      continue;
    }
    const std::uint64_t seed = method_seed(ds, m);
    auto start = Clock::now();
    std::optional<DensityEstimate> est;
    try {
      est = fit_method(m, data, cfg, seed);
      if (!usable(*est))
        est.reset();
    } catch (const std::exception&) {
      est.reset();
    }
    emit(m, est ? &*est : nullptr, elapsed_ms(start), seed);
  }
  return rows;
}

} // namespace

void
run_experiment(const ExperimentConfig& cfg, const RecordSink& sink, std::span<const RecordKey> done)
{
  cfg.validate();
  const std::set<RecordKey> skip(done.begin(), done.end());
  const AngularGrid grid(cfg.grid);

  std::vector<std::vector<TargetDensity>> targets(cfg.families.size());
  for (std::size_t f = 0; f < cfg.families.size(); ++f)
    for (double a : cfg.families[f].alphas)
      targets[f].emplace_back(cfg.families[f].family, a, grid);

  std::vector<Cell> cells;
  for (std::size_t f = 0; f < cfg.families.size(); ++f)
    for (std::size_t a = 0; a < cfg.families[f].alphas.size(); ++a)
      for (std::size_t size : cfg.sample_sizes)
        for (int rep = 0; rep < cfg.reps; ++rep) {
          Cell cell{ f, a, size, rep, {} };
          for (Method m : cfg.methods)
            if (!skip.contains(
                  { cfg.families[f].family, cfg.families[f].alphas[a], size, m, rep }))
              cell.methods.push_back(m);
          if (!cell.methods.empty())
            cells.push_back(std::move(cell));
        }

  std::size_t workers = cfg.workers > 0 ? static_cast<std::size_t>(cfg.workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(cells.size(), 1));

  std::vector<std::vector<LossRecord>> results(cells.size());
  std::vector<char> ready(cells.size(), 0);
  std::size_t next_emit = 0;
  std::atomic<std::size_t> next{ 0 };
  std::atomic<bool> stop{ false };
  std::exception_ptr error;
  std::mutex mutex;

  auto work = [&] {
    while (!stop) {
      std::size_t i = next++;
      if (i >= cells.size())
        return;
      const Cell& cell = cells[i];
      std::vector<LossRecord> rows;
      try {
        rows = run_cell(cfg, cell, targets[cell.family_index][cell.alpha_index]);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error)
          error = std::current_exception();
        stop = true;
        return;
      }
      std::lock_guard lock(mutex);
      results[i] = std::move(rows);
      ready[i] = 1;
      try {
        while (next_emit < cells.size() && ready[next_emit]) {
          sink(results[next_emit]);
          std::vector<LossRecord>().swap(results[next_emit]);
          ++next_emit;
        }
      } catch (...) {
        if (!error)
          error = std::current_exception();
        stop = true;
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back(work);
    for (auto& t : pool)
      t.join();
  }
  if (error)
    std::rethrow_exception(error);
}

std::vector<LossRecord>
run_experiment(const ExperimentConfig& cfg)
{
  std::vector<LossRecord> out;
  run_experiment(cfg, [&](std::span<const LossRecord> rows) {
    out.insert(out.end(), rows.begin(), rows.end());
  });
  return out;
}

void
run_experiment_to_csv(const ExperimentConfig& cfg, const std::string& path)
{
  cfg.validate();
  namespace fs = std::filesystem;

  std::vector<RecordKey> done;
  std::ostringstream kept;
  kept << kRecordHeader << '\n';

  if (fs::exists(path)) {
    std::ifstream in(path);
    if (!in)
      throw IoError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line != kRecordHeader)
      throw IoError(path + " exists but is not a loss-record file");

    std::vector<LossRecord> rows;
    while (std::getline(in, line))
      if (auto r = parse_record(line))
        rows.push_back(*r);

    // a cell is complete when every configured loss is present exactly once
    std::map<RecordKey, std::set<LossKind>> seen;
    std::map<RecordKey, std::size_t> count;
    for (const LossRecord& r : rows) {
      RecordKey key{ r.family, r.alpha, r.sample_size, r.method, r.rep };
      seen[key].insert(r.loss);
      ++count[key];
    }
    const std::set<LossKind> wanted(cfg.losses.begin(), cfg.losses.end());
    std::set<RecordKey> complete;
    for (const auto& [key, losses] : seen)
      if (losses == wanted && count[key] == wanted.size())
        complete.insert(key);
    for (const LossRecord& r : rows)
      if (complete.contains({ r.family, r.alpha, r.sample_size, r.method, r.rep }))
        kept << format_record(r) << '\n';
    done.assign(complete.begin(), complete.end());
  }

  const std::string tmp = path + ".tmp";
  write_text_file(tmp, kept.str());
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot replace " + path + ": " + ec.message());

  std::ofstream out(path, std::ios::app);
  if (!out)
    throw IoError("cannot open " + path + " for appending");
  run_experiment(
    cfg,
    [&](std::span<const LossRecord> rows) {
      for (const LossRecord& r : rows)
        out << format_record(r) << '\n';
      out.flush();
      if (!out)
        throw IoError("write to " + path + " failed");
    },
    done);
}

} // namespace dvp
