#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace dvp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

//! A point of the circle, stored as its representative in [0, 2pi).
class Angle
{
public:
  constexpr Angle() = default;
  //! Wraps `x` onto [0, 2pi). Throws std::domain_error for non-finite input.
  explicit Angle(double x);

  constexpr double value() const { return value_; }
  constexpr operator double() const { return value_; }

  Angle operator+(double delta) const { return Angle(value_ + delta); }
  Angle operator-(double delta) const { return Angle(value_ - delta); }

private:
  double value_ = 0.0;
};

Angle wrap(double x);

//! Arc-length distance min_k |u - v + 2 pi k|, in [0, pi].
double ang_dist(Angle u, Angle v);

//! G equally spaced nodes 2 pi k / G with rectangle-rule weight 2 pi / G.
class AngularGrid
{
public:
  explicit AngularGrid(std::size_t size);

  std::size_t size() const { return size_; }
  double weight() const { return kTwoPi / static_cast<double>(size_); }
  double point(std::size_t k) const
  {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(size_);
  }
  std::vector<double> points() const;

  friend bool operator==(const AngularGrid&, const AngularGrid&) = default;

private:
  std::size_t size_;
};

//! The arc R_{j,n} = [pi(2j-1)/(2n+1), pi(2j+1)/(2n+1)) taken mod 2 pi.
struct Bin
{
  int j;
  int n;

  double center() const;
  double arclength() const;
  //! Left endpoint before wrapping; negative for j = 0 when n >= 1.
  double lower() const;
  double upper() const;
  //! Left-closed, right-open membership, wrapping R_{0,n} across zero.
  bool contains(Angle u) const;
};

//! Index j with u in R_{j,n}. Boundary points belong to the bin on their right.
int bin_index(Angle u, int n);

//! Rectangle-rule sum of values * 2pi/G.
double integrate(std::span<const double> values, const AngularGrid& grid);

} // namespace dvp
