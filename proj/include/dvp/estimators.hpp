#pragma once

// Posterior-mean density estimators.
//
//   pd       Dirichlet process mixture with the binned kernel
//            f(u | mu, n) = sum_j 1{mu in R_{j,n}} C_{j,n}(u)
//   pc       Dirichlet process mixture with the continuous-location kernel
//            f(u | mu, n) = C_{0,n}(u - mu)
//   fdbayes  NNTS densities under a uniform prior on the coefficient sphere
//            and on the degree {0, ..., m_max}
//
// Both DPM estimators place a prior rho(n) ~ exp(-n / rho_rate) on the degree,
// truncated to {1, ..., n_max}, and are sampled with the slice-efficient
// sampler using deterministic slice bounds xi_j = slice_decay^{j+1}.

#include "dvp/circle.hpp"
#include "dvp/density.hpp"
#include "dvp/nnts.hpp"
#include "dvp/random.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dvp {

struct DpmConfig
{
  double concentration = 1.0;
  double rho_rate = 5.0;
  int n_max = 60;
  int iters = 8000;
  int burn_in = 2000;
  int thin_to = 2000;
  std::uint64_t seed = 0;
  //! Standard deviation of the wrapped-normal atom proposal (pc only).
  double atom_step = 0.25;
  double slice_decay = 0.9;

  //! Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct FdbayesConfig
{
  int m_max = 5;
  int iters = 100000;
  int burn_in = 10000;
  int thin_to = 2000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct NntsConfig
{
  std::vector<int> degrees = { 0, 1, 2, 3, 4, 5, 6, 7 };
  NntsOptions options;
};

enum class LocationKernel
{
  binned,     // pd
  continuous, // pc
};

//! log rho(n) for n = 1..n_max, normalised over the truncation range.
std::vector<double> log_degree_prior(const DpmConfig& cfg);

//! Index drawn with probability proportional to exp(log_weights), computed
//! with max subtraction.
std::size_t sample_log_categorical(std::span<const double> log_weights, Rng& rng);

//! Draws the degree from P(N = n) ~ rho(n) prod_i f(x_i | mu_{s_i}, n).
//! Both spans are indexed by n - 1. Returns n in 1..size.
int update_degree(std::span<const double> loglik_by_degree,
                  std::span<const double> log_prior,
                  Rng& rng);

//! Retained sweep indices: exactly thin_to evenly spaced post-burn-in sweeps.
bool is_retained(int sweep, int iters, int burn_in, int thin_to);

struct ChainState
{
  std::vector<double> sticks;  // v_j
  std::vector<double> weights; // w_j = v_j prod_{l<j} (1 - v_l)
  std::vector<double> atoms;   // mu_j
  std::vector<int> alloc;      // s_i
  std::vector<double> slice;   // u_i
  int degree = 1;              // N
};

class SliceSampler
{
public:
  SliceSampler(std::span<const Angle> data, LocationKernel kernel, const DpmConfig& cfg);

  //! One Gibbs sweep: slice variables, allocations, sticks, atoms, degree.
  void sweep();

  const ChainState& state() const { return state_; }
  double slice_bound(std::size_t j) const;
  //! Sum of the instantiated stick weights.
  double instantiated_mass() const;

  //! Predictive density of the current sweep on `grid`: instantiated
  //! components plus the residual mass pushed through the uniform base.
  std::vector<double> predictive(const AngularGrid& grid) const;

  //! log f(x | mu, n) for the configured kernel.
  double log_kernel(double x, double mu, int n) const;

  std::size_t atom_proposals() const { return atom_proposals_; }
  std::size_t atom_accepts() const { return atom_accepts_; }

private:
  void update_slices();
  void extend_sticks(double min_slice);
  void update_allocations();
  void update_sticks();
  void update_atoms();
  void update_degree_step();
  void recompute_weights();

  std::vector<double> data_;
  LocationKernel kernel_;
  DpmConfig cfg_;
  Rng rng_;
  ChainState state_;
  std::vector<double> log_norm_;   // index n, 0..n_max
  std::vector<double> log_prior_;  // index n - 1
  std::size_t atom_proposals_ = 0;
  std::size_t atom_accepts_ = 0;
};

DensityEstimate fit_pd(std::span<const Angle> data, const DpmConfig& cfg,
                       const AngularGrid& grid = AngularGrid(2048));
DensityEstimate fit_pc(std::span<const Angle> data, const DpmConfig& cfg,
                       const AngularGrid& grid = AngularGrid(2048));
DensityEstimate fit_fdbayes(std::span<const Angle> data, const FdbayesConfig& cfg,
                            const AngularGrid& grid = AngularGrid(2048));

//! Maximum-likelihood NNTS estimate with the degree chosen by `ic`.
DensityEstimate fit_nnts_ic(std::span<const Angle> data, InfoCriterion ic,
                            const NntsConfig& cfg, std::uint64_t seed,
                            const AngularGrid& grid = AngularGrid(2048));
DensityEstimate nnts_estimate(const NntsFit& fit, const AngularGrid& grid, std::string method);

} // namespace dvp
