#include "dvp/io.hpp"

#include "dvp/basis.hpp"
#include "dvp/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dvp {

namespace {

std::vector<std::string_view>
split(std::string_view line, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

std::string_view
trim(std::string_view s)
{
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  return s;
}

// strtod rather than from_chars: it also accepts inf and nan spellings
std::optional<double>
to_double(std::string_view s)
{
  std::string buf(trim(s));
  if (buf.empty())
    return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size())
    return std::nullopt;
  return v;
}

template<typename T>
std::optional<T>
to_integer(std::string_view s)
{
  s = trim(s);
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

std::ofstream
open_out(const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open " + path + " for writing");
  return out;
}

void
finish(std::ofstream& out, const std::string& path)
{
  out.flush();
  if (!out)
    throw IoError("write to " + path + " failed");
}

} // namespace

std::string
format_double(double x)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string
read_text_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void
write_text_file(const std::string& path, std::string_view text)
{
  std::ofstream out = open_out(path);
  out << text;
  finish(out, path);
}

std::vector<Angle>
read_angles_csv(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "angle")
    throw ConfigError(path + ": expected header 'angle'");
  std::vector<Angle> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty())
      continue;
    auto v = to_double(line);
    if (!v || !std::isfinite(*v))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": not a finite angle");
    out.emplace_back(*v);
  }
  return out;
}

void
write_angles_csv(const std::string& path, std::span<const Angle> angles)
{
  std::ofstream out = open_out(path);
  out << "angle\n";
  for (Angle a : angles)
    out << format_double(a.value()) << '\n';
  finish(out, path);
}

void
write_density_csv(const std::string& path, const DensityEstimate& est)
{
  std::ofstream out = open_out(path);
  out << "angle,density\n";
  for (std::size_t k = 0; k < est.values.size(); ++k)
    out << format_double(est.grid.point(k)) << ',' << format_double(est.values[k]) << '\n';
  finish(out, path);
}

void
write_basis_csv(const std::string& path, int n, const AngularGrid& grid)
{
  BasisSpec spec(n);
  std::ofstream out = open_out(path);
  out << "angle";
  for (int j = 0; j < spec.size(); ++j)
    out << ",j" << j;
  out << '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double u = grid.point(k);
    out << format_double(u);
    for (int j = 0; j < spec.size(); ++j)
      out << ',' << format_double(spec.eval(j, u));
    out << '\n';
  }
  finish(out, path);
}

std::string
format_record(const LossRecord& r)
{
  std::string s;
  s += family_name(r.family);
  s += ',' + format_double(r.alpha);
  s += ',' + std::to_string(r.sample_size);
  s += ',';
  s += method_name(r.method);
  s += ',' + std::to_string(r.rep);
  s += ',';
  s += loss_name(r.loss);
  s += ',' + format_double(r.value);
  s += r.infinite() ? ",1" : ",0";
  char ms[32];
  std::snprintf(ms, sizeof ms, ",%.3f", r.runtime_ms);
  s += ms;
  s += ',' + std::to_string(r.seed);
  return s;
}

std::optional<LossRecord>
parse_record(std::string_view line)
{
  auto f = split(trim(line), ',');
  if (f.size() != 10)
    return std::nullopt;
  auto family = parse_family(trim(f[0]));
  auto alpha = to_double(f[1]);
  auto size = to_integer<std::size_t>(f[2]);
  auto method = parse_method(trim(f[3]));
  auto rep = to_integer<int>(f[4]);
  auto loss = parse_loss(trim(f[5]));
  auto value = to_double(f[6]);
  auto infinite = to_integer<int>(f[7]);
  auto ms = to_double(f[8]);
  auto seed = to_integer<std::uint64_t>(f[9]);
  if (!family || !alpha || !size || !method || !rep || !loss || !value || !infinite || !ms ||
      !seed)
    return std::nullopt;
  if ((*infinite != 0) != std::isinf(*value))
    return std::nullopt;
  return LossRecord{ *family, *alpha, *size, *method, *rep, *loss, *value, *ms, *seed };
}

std::vector<LossRecord>
read_records_csv(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kRecordHeader)
    throw ConfigError(path + ": expected header '" + std::string(kRecordHeader) + "'");
  std::vector<LossRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty())
      continue;
    auto r = parse_record(line);
    if (!r)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed record");
    out.push_back(*r);
  }
  return out;
}

void
write_summary_csv(const std::string& path, std::span<const SummaryRow> rows)
{
  std::ofstream out = open_out(path);
  out << kSummaryHeader << '\n';
  for (const SummaryRow& r : rows) {
    out << family_name(r.family) << ',' << format_double(r.alpha) << ',' << r.sample_size << ','
        << method_name(r.method) << ',' << loss_name(r.loss) << ',' << format_double(r.mean)
        << ',' << format_double(r.ci_lo) << ',' << format_double(r.ci_hi) << ',' << r.n_finite
        << ',' << r.n_infinite << '\n';
  }
  finish(out, path);
}

} // namespace dvp
