#include "dvp/io.hpp"

#include "dvp/errors.hpp"

#include <json.hpp>

#include <set>

namespace dvp {

namespace {

using nlohmann::json;

void
reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
               std::string_view where)
{
  if (!obj.is_object())
    throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (std::string_view a : allowed)
      ok = ok || item.key() == a;
    if (!ok)
      throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
  }
}

template<typename T>
void
read_into(const json& obj, const char* key, T& dst)
{
  if (obj.contains(key))
    dst = obj.at(key).get<T>();
}

void
parse_dpm(const json& j, DpmConfig& cfg)
{
  reject_unknown(j,
                 { "concentration", "rho_rate", "n_max", "iters", "burn_in", "thin_to",
                   "atom_step", "slice_decay" },
                 "dpm");
  read_into(j, "concentration", cfg.concentration);
  read_into(j, "rho_rate", cfg.rho_rate);
  read_into(j, "n_max", cfg.n_max);
  read_into(j, "iters", cfg.iters);
  read_into(j, "burn_in", cfg.burn_in);
  read_into(j, "thin_to", cfg.thin_to);
  read_into(j, "atom_step", cfg.atom_step);
  read_into(j, "slice_decay", cfg.slice_decay);
}

void
parse_fdbayes(const json& j, FdbayesConfig& cfg)
{
  reject_unknown(j, { "m_max", "iters", "burn_in", "thin_to" }, "fdbayes");
  read_into(j, "m_max", cfg.m_max);
  read_into(j, "iters", cfg.iters);
  read_into(j, "burn_in", cfg.burn_in);
  read_into(j, "thin_to", cfg.thin_to);
}

void
parse_nnts(const json& j, NntsConfig& cfg)
{
  reject_unknown(j, { "degrees", "restarts", "max_iterations", "tolerance" }, "nnts");
  read_into(j, "degrees", cfg.degrees);
  read_into(j, "restarts", cfg.options.restarts);
  read_into(j, "max_iterations", cfg.options.max_iterations);
  read_into(j, "tolerance", cfg.options.tolerance);
}

json
parse_text(std::string_view text)
{
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

json
dpm_json(const DpmConfig& c)
{
  return { { "concentration", c.concentration }, { "rho_rate", c.rho_rate },
           { "n_max", c.n_max },                 { "iters", c.iters },
           { "burn_in", c.burn_in },             { "thin_to", c.thin_to },
           { "atom_step", c.atom_step },         { "slice_decay", c.slice_decay } };
}

json
fdbayes_json(const FdbayesConfig& c)
{
  return { { "m_max", c.m_max },
           { "iters", c.iters },
           { "burn_in", c.burn_in },
           { "thin_to", c.thin_to } };
}

json
nnts_json(const NntsConfig& c)
{
  return { { "degrees", c.degrees },
           { "restarts", c.options.restarts },
           { "max_iterations", c.options.max_iterations },
           { "tolerance", c.options.tolerance } };
}

} // namespace

ExperimentConfig
parse_experiment_config(std::string_view json_text)
{
  const json j = parse_text(json_text);
  ExperimentConfig cfg;
  try {
    reject_unknown(j,
                   { "families", "sample_sizes", "reps", "methods", "losses", "master_seed",
                     "grid", "workers", "output", "dpm", "fdbayes", "nnts" },
                   "experiment config");
    if (j.contains("families")) {
      cfg.families.clear();
      for (const json& f : j.at("families")) {
        reject_unknown(f, { "family", "alphas" }, "families entry");
        auto name = f.at("family").get<std::string>();
        auto family = parse_family(name);
        if (!family)
          throw ConfigError("unknown family '" + name + "'");
        FamilyGrid grid{ *family, default_alpha_grid(*family) };
        read_into(f, "alphas", grid.alphas);
        cfg.families.push_back(std::move(grid));
      }
    }
    read_into(j, "sample_sizes", cfg.sample_sizes);
    read_into(j, "reps", cfg.reps);
    if (j.contains("methods")) {
      cfg.methods.clear();
      std::set<Method> seen;
      for (const auto& name : j.at("methods").get<std::vector<std::string>>()) {
        auto m = parse_method(name);
        if (!m)
          throw ConfigError("unknown method '" + name + "'");
        if (seen.insert(*m).second)
          cfg.methods.push_back(*m);
      }
    }
    if (j.contains("losses")) {
      cfg.losses.clear();
      std::set<LossKind> seen;
      for (const auto& name : j.at("losses").get<std::vector<std::string>>()) {
        auto l = parse_loss(name);
        if (!l)
          throw ConfigError("unknown loss '" + name + "'");
        if (seen.insert(*l).second)
          cfg.losses.push_back(*l);
      }
    }
    read_into(j, "master_seed", cfg.master_seed);
    read_into(j, "grid", cfg.grid);
    read_into(j, "workers", cfg.workers);
    read_into(j, "output", cfg.output);
    if (j.contains("dpm"))
      parse_dpm(j.at("dpm"), cfg.dpm);
    if (j.contains("fdbayes"))
      parse_fdbayes(j.at("fdbayes"), cfg.fdbayes);
    if (j.contains("nnts"))
      parse_nnts(j.at("nnts"), cfg.nnts);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig
load_experiment_config(const std::string& path)
{
  return parse_experiment_config(read_text_file(path));
}

EstimatorConfig
parse_estimator_config(std::string_view json_text)
{
  const json j = parse_text(json_text);
  EstimatorConfig cfg;
  try {
    reject_unknown(j, { "seed", "dpm", "fdbayes", "nnts" }, "estimator config");
    read_into(j, "seed", cfg.seed);
    if (j.contains("dpm"))
      parse_dpm(j.at("dpm"), cfg.dpm);
    if (j.contains("fdbayes"))
      parse_fdbayes(j.at("fdbayes"), cfg.fdbayes);
    if (j.contains("nnts"))
      parse_nnts(j.at("nnts"), cfg.nnts);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  cfg.dpm.seed = cfg.seed;
  cfg.fdbayes.seed = cfg.seed;
  try {
    cfg.dpm.validate();
    cfg.fdbayes.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.nnts.degrees.empty())
    throw ConfigError("nnts degrees must be nonempty");
  for (int d : cfg.nnts.degrees)
    if (d < 0)
      throw ConfigError("nnts degrees must be nonnegative");
  return cfg;
}

EstimatorConfig
load_estimator_config(const std::string& path)
{
  return parse_estimator_config(read_text_file(path));
}

std::string
diagnostics_json(const DensityEstimate& est, const EstimatorConfig& cfg)
{
  const Diagnostics& d = est.diagnostics;
  json j;
  j["method"] = est.method;
  j["seed"] = d.seed;
  j["grid"] = est.grid.size();
  j["integral"] = est.integral();
  j["acceptance_rate"] = d.acceptance_rate >= 0.0 ? json(d.acceptance_rate) : json(nullptr);
  j["degree_histogram"] = d.degree_histogram;
  j["retained"] = d.retained;
  j["mean_components"] = d.mean_components;
  j["selected_degree"] = d.selected_degree >= 0 ? json(d.selected_degree) : json(nullptr);
  j["loglik"] = std::isfinite(d.loglik) ? json(d.loglik) : json(nullptr);
  j["boundary_suspect"] = d.boundary_suspect;
  j["config"] = { { "seed", cfg.seed },
                  { "dpm", dpm_json(cfg.dpm) },
                  { "fdbayes", fdbayes_json(cfg.fdbayes) },
                  { "nnts", nnts_json(cfg.nnts) } };
  return j.dump(2) + "\n";
}

} // namespace dvp
