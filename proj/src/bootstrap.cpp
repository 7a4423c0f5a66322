#include "dvp/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace dvp {

double
quantile_sorted(std::span<const double> sorted, double p)
{
  if (sorted.empty())
    throw std::invalid_argument("quantile of empty data");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("quantile level must lie in [0, 1]");
  double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::pair<double, double>
bootstrap_ci(std::span<const double> values, double level, int resamples, Rng& rng)
{
  if (values.empty())
    throw std::invalid_argument("bootstrap of empty data");
  if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); }))
    throw std::invalid_argument("bootstrap input must be finite");
  if (!(level > 0.0 && level < 1.0) || resamples < 1)
    throw std::invalid_argument("bad bootstrap settings");

  const std::size_t n = values.size();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> means(resamples);
  for (double& m : means) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      s += values[pick(rng)];
    m = s / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const double tail = 0.5 * (1.0 - level);
  return { quantile_sorted(means, tail), quantile_sorted(means, 1.0 - tail) };
}

std::vector<SummaryRow>
summarize(std::span<const LossRecord> records, std::uint64_t seed, double level, int resamples)
{
  using Key = std::tuple<TargetFamily, double, std::size_t, Method, LossKind>;
  std::map<Key, std::size_t> index;
  std::vector<Key> order;
  std::vector<std::vector<double>> finite;
  std::vector<std::size_t> infinite;

  for (const LossRecord& r : records) {
    Key key{ r.family, r.alpha, r.sample_size, r.method, r.loss };
    auto [it, fresh] = index.try_emplace(key, order.size());
    if (fresh) {
      order.push_back(key);
      finite.emplace_back();
      infinite.push_back(0);
    }
    if (r.infinite())
      ++infinite[it->second];
    else if (!r.failed())
      finite[it->second].push_back(r.value);
  }

  std::vector<SummaryRow> out;
  out.reserve(order.size());
  for (std::size_t g = 0; g < order.size(); ++g) {
    const auto& [family, alpha, size, method, loss] = order[g];
    SummaryRow row{ family, alpha, size, method, loss, std::nan(""), std::nan(""), std::nan(""),
                    finite[g].size(), infinite[g] };
    if (!finite[g].empty()) {
      double s = 0.0;
      for (double v : finite[g])
        s += v;
      row.mean = s / static_cast<double>(finite[g].size());
      Rng rng(derive_seed({ seed, static_cast<std::uint64_t>(family), std::bit_cast<std::uint64_t>(alpha),
                            size, static_cast<std::uint64_t>(method),
                            static_cast<std::uint64_t>(loss) }));
      std::tie(row.ci_lo, row.ci_hi) = bootstrap_ci(finite[g], level, resamples, rng);
    }
    out.push_back(row);
  }
  return out;
}

} // namespace dvp
