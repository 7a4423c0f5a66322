#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace dvp {

//! The library never shares generator state: every chain, fit or sampler
//! takes an exclusively held stream.
using Rng = std::mt19937_64;

//! SplitMix64 finaliser; used to turn structured keys into seeds.
constexpr std::uint64_t
mix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t
hash_string(std::string_view s)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

//! Order-sensitive combination of key components into one seed.
constexpr std::uint64_t
derive_seed(std::initializer_list<std::uint64_t> parts)
{
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t p : parts)
    h = mix64(h ^ mix64(p));
  return h;
}

inline double
uniform01(Rng& rng)
{
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double
sample_gamma(double shape, Rng& rng)
{
  return std::gamma_distribution<double>(shape, 1.0)(rng);
}

//! Beta(a, b) through the two-gamma construction.
inline double
sample_beta(double a, double b, Rng& rng)
{
  double x = sample_gamma(a, rng);
  double y = sample_gamma(b, rng);
  double s = x + y;
  return s > 0.0 ? x / s : 0.5;
}

} // namespace dvp
