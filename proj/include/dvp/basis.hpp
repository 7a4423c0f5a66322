#pragma once

// The De la Vallee Poussin density basis
//
//   C_{j,n}(u) = 2^{2n} / (2 pi binom(2n, n)) * ((1 + cos(u - 2 pi j/(2n+1))) / 2)^n
//
// for j = 0..2n. Each C_{j,n} is a probability density on the circle, and
// the rescaled family (2 pi/(2n+1)) C_{j,n} is a partition of unity.

#include "dvp/circle.hpp"
#include "dvp/random.hpp"

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace dvp {

//! log binom(a, b) through log-gamma; valid far beyond where factorials overflow.
double log_binom(int a, int b);

class BasisSpec
{
public:
  explicit BasisSpec(int n);

  int degree() const { return n_; }
  int size() const { return 2 * n_ + 1; }
  //! log(2^{2n} / (2 pi binom(2n, n)))
  double log_norm() const { return log_norm_; }
  double center(int j) const { return kTwoPi * j / (2.0 * n_ + 1.0); }

  //! C_{j,n}(u), evaluated as exp(log_norm + 2n log|cos((u - center)/2)|).
  double eval(int j, double u) const;
  //! log C_{j,n}(u); -infinity at the antipode of the center.
  double log_eval(int j, double u) const;
  //! C_{0,n}(t), the kernel centred at zero.
  double kernel(double t) const;
  double log_kernel(double t) const;
  //! d/du C_{j,n}(u).
  double derivative(int j, double u) const;

private:
  int n_;
  double log_norm_;
};

double eval_basis(int j, int n, Angle u);

//! binom(2n, n-|p|) / binom(2n, n) for |p| <= n, 0 otherwise.
double moment_ratio(int n, int p);

//! E exp(i p U) for U ~ C_{j,n}.
std::complex<double> trig_moment(int j, int n, int p);

//! i.i.d. draws with density C_{j,n}: U = (1 - 2V) arccos(1 - 2W) + 2 pi j/(2n+1),
//! V ~ Bernoulli(1/2), W ~ Beta(1/2, 1/2 + n).
std::vector<Angle> sample_basis(int j, int n, std::size_t count, Rng& rng);

//! Coefficients d_{j,l}^{n,r} expressing C_{j,n} in the degree n + r basis.
class ElevationMatrix
{
public:
  ElevationMatrix(int n, int r);

  int degree() const { return n_; }
  int elevation() const { return r_; }
  int rows() const { return 2 * n_ + 1; }
  int cols() const { return 2 * (n_ + r_) + 1; }
  double operator()(int j, int l) const { return d_[j * cols() + l]; }
  std::span<const double> row(int j) const
  {
    return { d_.data() + j * cols(), static_cast<std::size_t>(cols()) };
  }

  //! Coefficients in the elevated basis: c'_l = sum_j c_j d_{j,l}.
  std::vector<double> apply(std::span<const double> coeffs) const;

private:
  int n_;
  int r_;
  std::vector<double> d_;
};

ElevationMatrix elevation_matrix(int n, int r);

struct Elevation
{
  int r;
  std::vector<double> weights;
};

//! Smallest r <= max_r making every elevated coefficient nonnegative.
//! `coeffs` may hold negative entries but must sum to one. Returns nullopt
//! when max_r is exhausted, which happens when the polynomial is not
//! strictly positive or max_r is too small. max_r defaults to 64 n.
std::optional<Elevation> elevate_to_nonnegative(std::span<const double> coeffs,
                                                int n,
                                                std::optional<int> max_r = {});

} // namespace dvp
