#pragma once

// Nonnegative trigonometric sums: f(u) = |sum_{k=0}^{M} c_k e^{iku}|^2 with
// complex coefficients on the sphere sum |c_k|^2 = 1/(2 pi).

#include "dvp/circle.hpp"
#include "dvp/random.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace dvp {

inline const double kNntsRadius = 1.0 / std::sqrt(kTwoPi);

class NntsModel
{
public:
  //! Throws std::invalid_argument unless sum |c_k|^2 = 1/(2 pi) within 1e-12.
  explicit NntsModel(std::vector<std::complex<double>> coeffs);

  static NntsModel uniform();
  //! Uniform draw on the sphere of C^{M+1} (normalised complex Gaussian).
  static NntsModel random(int degree, Rng& rng);
  //! Rescales an arbitrary nonzero vector onto the sphere.
  static NntsModel normalized(std::vector<std::complex<double>> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const std::complex<double>> coeffs() const { return coeffs_; }

  double operator()(double u) const;
  std::vector<double> on_grid(const AngularGrid& grid) const;

  //! r_d with f(u) = r_0 + 2 Re sum_{d>=1} r_d e^{idu}; r_d = sum_k c_{k+d} conj(c_k).
  std::vector<std::complex<double>> autocorrelation() const;

private:
  std::vector<std::complex<double>> coeffs_;
};

double nnts_eval(const NntsModel& model, Angle u);

//! Powers e^{iku_i}, k = 0..M, for every datum; shared by the likelihood,
//! the gradient and the Metropolis sampler.
class NntsDesign
{
public:
  NntsDesign(std::span<const Angle> data, int degree);

  int degree() const { return degree_; }
  std::size_t samples() const { return n_; }
  std::complex<double> power(std::size_t i, int k) const
  {
    return powers_[i * (degree_ + 1) + k];
  }

  //! Log-likelihood of the first c.size() coefficients (c.size() <= M + 1).
  double loglik(std::span<const std::complex<double>> c) const;
  //! Gradient in the (Re c_0, Im c_0, Re c_1, ...) parameterisation.
  std::vector<double> gradient(std::span<const std::complex<double>> c) const;

private:
  int degree_;
  std::size_t n_;
  std::vector<std::complex<double>> powers_;
};

struct NntsFit
{
  NntsModel model;
  double loglik;
  int iterations;
  //! Set for degenerate data (all points equal with M >= 1) or when the
  //! optimiser stopped at the iteration cap.
  bool boundary_suspect;
};

struct NntsOptions
{
  int restarts = 2;
  int max_iterations = 500;
  double tolerance = 1e-8;
  //! Called with the log-likelihood and coefficients of every accepted iterate.
  std::function<void(double, std::span<const std::complex<double>>)> observer;
};

//! Projected gradient ascent on the sphere with backtracking line search,
//! best of `restarts` random starts.
NntsFit nnts_mle(std::span<const Angle> data, int degree, Rng& rng,
                 const NntsOptions& options = {});

enum class InfoCriterion
{
  aic,
  bic,
};

//! Free real parameters: 2M (M+1 complex numbers less norm and phase).
int nnts_parameter_count(int degree);
double information_criterion(InfoCriterion ic, double loglik, int degree, std::size_t n);

//! One fit per candidate degree; both criteria select from the same path.
struct NntsPath
{
  std::vector<int> degrees;
  std::vector<NntsFit> fits;
  std::size_t samples;

  const NntsFit& select(InfoCriterion ic) const;
  std::vector<double> scores(InfoCriterion ic) const;
};

NntsPath fit_nnts_path(std::span<const Angle> data, std::span<const int> degrees,
                       Rng& rng, const NntsOptions& options = {});

NntsFit select_by_ic(std::span<const Angle> data, std::span<const int> degrees,
                     InfoCriterion ic, Rng& rng, const NntsOptions& options = {});

} // namespace dvp
