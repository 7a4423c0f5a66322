#pragma once

#include "dvp/basis.hpp"
#include "dvp/circle.hpp"

#include <functional>
#include <span>
#include <vector>

namespace dvp {

//! C_n(u) = sum_j c_j C_{j,n}(u) with (c_0, ..., c_{2n}) in the simplex.
class DvpMixture
{
public:
  //! Throws std::invalid_argument unless the weights are a valid simplex
  //! point of size 2n+1 (nonnegative, summing to one within 1e-12).
  DvpMixture(int n, std::vector<double> weights);

  static DvpMixture uniform(int n);
  static DvpMixture one_hot(int n, int j);

  int degree() const { return spec_.degree(); }
  const BasisSpec& basis() const { return spec_; }
  std::span<const double> weights() const { return weights_; }

  double operator()(double u) const;
  double derivative(double u) const;

  std::vector<double> on_grid(const AngularGrid& grid) const;
  std::vector<double> derivative_on_grid(const AngularGrid& grid) const;

private:
  BasisSpec spec_;
  std::vector<double> weights_;
};

double eval_mixture(const DvpMixture& m, Angle u);
double mixture_derivative(const DvpMixture& m, Angle u);

//! Values of C_{j,n} at every grid node, one row per j.
std::vector<std::vector<double>> basis_table(int n, const AngularGrid& grid);

//! T_n f = sum_j (integral of f over R_{j,n}) C_{j,n}. Each bin integral uses
//! 256 Gauss-Legendre nodes; the weights are renormalised to sum to one.
DvpMixture discretized_operator(const std::function<double(double)>& f, int n);

//! Grid version: f is read as piecewise constant on the cells centred at the
//! grid nodes, and cell/bin overlaps are integrated exactly.
DvpMixture discretized_operator(std::span<const double> f, const AngularGrid& grid, int n);

//! (T_n f)(u) = integral C_{0,n}(u - mu) f(mu) dmu by direct quadrature on
//! the grid. Output is a density on the same grid.
std::vector<double> dvp_mean_operator(std::span<const double> f, const AngularGrid& grid, int n);

//! Sign changes of x read cyclically; zeros are skipped. 0 for all-zero input.
int cyclic_variation(std::span<const double> x);

//! Cyclic forward differences (x_2 - x_1, ..., x_1 - x_m).
std::vector<double> cyclic_differences(std::span<const double> x);

struct ShapeReport
{
  double total_variation;
  //! Cyclic variation of the cyclic differences of the weights.
  int cyclic_variation_of_weights;
  bool periodically_unimodal;
  //! Cyclic variation of the derivative sampled on the grid.
  int derivative_sign_changes;
  double range_lo;
  double range_hi;
};

ShapeReport shape_report(const DvpMixture& m, const AngularGrid& grid);

//! sum over j with d(u, R_{j,n}) >= delta of (2 pi/(2n+1)) C_{j,n}(u).
double far_bin_mass(int n, Angle u, double delta);

} // namespace dvp
