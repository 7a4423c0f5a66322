// dvpcirc: sample targets, fit estimators, run simulations and summarise them.

#include "dvp/basis.hpp"
#include "dvp/errors.hpp"
#include "dvp/estimators.hpp"
#include "dvp/harness.hpp"
#include "dvp/io.hpp"
#include "dvp/targets.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>

namespace {

enum Exit
{
  kOk = 0,
  kConfig = 2,
  kIo = 3,
  kNumerical = 4,
};

std::string
sidecar_path(const std::string& out)
{
  std::filesystem::path p(out);
  p.replace_extension(".diag.json");
  return p.string();
}

void
cmd_sample(const std::string& family_name, double alpha, std::size_t count, std::uint64_t seed,
           const std::string& out)
{
  auto family = dvp::parse_family(family_name);
  if (!family)
    throw dvp::ConfigError("unknown family '" + family_name + "'");
  dvp::TargetDensity target(*family, alpha, dvp::AngularGrid(8192));
  dvp::Rng rng(seed);
  dvp::write_angles_csv(out, dvp::sample_target(target, count, rng));
}

void
cmd_estimate(const std::string& method_name, const std::string& data_path,
             const std::string& config_path, std::size_t grid_size, const std::string& out)
{
  auto method = dvp::parse_method(method_name);
  if (!method)
    throw dvp::ConfigError("unknown method '" + method_name + "'");
  if (grid_size < 16)
    throw dvp::ConfigError("grid must have at least 16 points");
  dvp::EstimatorConfig cfg;
  if (!config_path.empty())
    cfg = dvp::load_estimator_config(config_path);
  auto data = dvp::read_angles_csv(data_path);
  if (data.empty())
    throw dvp::ConfigError(data_path + " holds no angles");

  const dvp::AngularGrid grid(grid_size);
  dvp::DensityEstimate est;
  switch (*method) {
    case dvp::Method::pd:
      est = dvp::fit_pd(data, cfg.dpm, grid);
      break;
    case dvp::Method::pc:
      est = dvp::fit_pc(data, cfg.dpm, grid);
      break;
    case dvp::Method::fdbayes:
      est = dvp::fit_fdbayes(data, cfg.fdbayes, grid);
      break;
    case dvp::Method::naic:
      est = dvp::fit_nnts_ic(data, dvp::InfoCriterion::aic, cfg.nnts, cfg.seed, grid);
      break;
    case dvp::Method::nbic:
      est = dvp::fit_nnts_ic(data, dvp::InfoCriterion::bic, cfg.nnts, cfg.seed, grid);
      break;
  }
  for (double v : est.values)
    if (!std::isfinite(v) || v < 0.0)
      throw dvp::NumericalError("estimate has non-finite or negative values");
  dvp::write_density_csv(out, est);
  dvp::write_text_file(sidecar_path(out), dvp::diagnostics_json(est, cfg));
}

void
cmd_simulate(const std::string& config_path, const std::string& out)
{
  dvp::ExperimentConfig cfg = dvp::load_experiment_config(config_path);
  std::string path = out.empty() ? cfg.output : out;
  if (path.empty())
    throw dvp::ConfigError("no output path: pass --out or set \"output\"");
  dvp::run_experiment_to_csv(cfg, path);
}

void
cmd_summarize(const std::string& in, const std::string& out, std::uint64_t seed, double level,
              int resamples)
{
  if (!(level > 0.0 && level < 1.0) || resamples < 1)
    throw dvp::ConfigError("bad bootstrap settings");
  auto records = dvp::read_records_csv(in);
  dvp::write_summary_csv(out, dvp::summarize(records, seed, level, resamples));
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{ "Circular density estimation with De la Vallee Poussin mixtures" };
  app.require_subcommand(1);

  std::string family, out, method, data, config, in;
  double alpha = 0.0, level = 0.95;
  std::size_t count = 0, grid = 2048;
  std::uint64_t seed = 0;
  int n = 1, resamples = 2000;

  auto* sample = app.add_subcommand("sample", "Draw angles from a target density");
  sample->add_option("--family", family, "skewed-vm or w")->required();
  sample->add_option("--alpha", alpha)->required();
  sample->add_option("--count", count)->required();
  sample->add_option("--seed", seed);
  sample->add_option("--out", out)->required();

  auto* estimate = app.add_subcommand("estimate", "Fit one estimator to a data file");
  estimate->add_option("--method", method, "pd, pc, naic, nbic or fdbayes")->required();
  estimate->add_option("--data", data)->required();
  estimate->add_option("--config", config);
  estimate->add_option("--grid", grid);
  estimate->add_option("--out", out)->required();

  auto* simulate = app.add_subcommand("simulate", "Run a simulation study");
  simulate->add_option("--config", config)->required();
  simulate->add_option("--out", out);

  auto* summarize = app.add_subcommand("summarize", "Mean losses with bootstrap intervals");
  summarize->add_option("--in", in)->required();
  summarize->add_option("--out", out)->required();
  summarize->add_option("--seed", seed);
  summarize->add_option("--level", level);
  summarize->add_option("--resamples", resamples);

  auto* basis = app.add_subcommand("basis", "Tabulate the degree-n basis");
  basis->add_option("--n", n)->required();
  basis->add_option("--grid", grid);
  basis->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*sample)
      cmd_sample(family, alpha, count, seed, out);
    else if (*estimate)
      cmd_estimate(method, data, config, grid, out);
    else if (*simulate)
      cmd_simulate(config, out);
    else if (*summarize)
      cmd_summarize(in, out, seed, level, resamples);
    else if (*basis) {
      if (n < 0 || grid < 1)
        throw dvp::ConfigError("need n >= 0 and grid >= 1");
      dvp::write_basis_csv(out, n, dvp::AngularGrid(grid));
    }
  } catch (const dvp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const dvp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const dvp::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
