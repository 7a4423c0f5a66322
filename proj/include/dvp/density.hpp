#pragma once

#include "dvp/circle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dvp {

struct Diagnostics
{
  std::uint64_t seed = 0;
  //! MH acceptance rate (pc atom moves, fdbayes proposals); negative when
  //! the method has no Metropolis step.
  double acceptance_rate = -1.0;
  //! Histogram of the model degree over retained sweeps, index = degree.
  std::vector<std::size_t> degree_histogram;
  std::size_t retained = 0;
  //! Mean number of instantiated sticks per retained sweep (DPM methods).
  double mean_components = 0.0;
  //! Selected degree for the NNTS point estimates; -1 otherwise.
  int selected_degree = -1;
  double loglik = 0.0;
  bool boundary_suspect = false;
};

//! Density values on a uniform grid; the output of every estimator.
struct DensityEstimate
{
  AngularGrid grid{ 1 };
  std::vector<double> values;
  std::string method;
  Diagnostics diagnostics;

  double integral() const;
};

} // namespace dvp
