// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "convev/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "convev/errors.hpp"

namespace convev
{

Kernel::Kernel(std::function<double(double)> evaluator, KernelInfo info)
  : eval_(std::move(evaluator)), info_(std::move(info))
{
  if (!eval_)
  {
    throw InvalidParameter("Kernel: empty evaluator");
  }
}

std::vector<double> Kernel::sample_offsets(double spacing, std::size_t count) const
{
  std::vector<double> a(count);
  for (std::size_t m = 0; m < count; m++)
  {
    a[m] = eval_(static_cast<double>(m) * spacing);
  }
  return a;
}

GridFn Kernel::sample(const Grid &grid) const
{
  // Sampled by offset so that a(-x) and a(x) come from bit-identical arguments.
  const std::size_t c = grid.center();
  const std::vector<double> half = sample_offsets(grid.spacing(), c + 1);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); i++)
  {
    v[i] = half[i >= c ? i - c : c - i];
  }
  return GridFn(grid, std::move(v));
}

Kernel gaussian()
{
  const double inv_sqrt_pi = std::numbers::inv_sqrtpi;
  KernelInfo info;
  info.label = "gaussian";
  info.a0 = inv_sqrt_pi;
  info.a2pp = -2.0 * inv_sqrt_pi;
  info.second_moment = 0.5;
  info.plateau_half_width = 0.0;
  info.strictly_unimodal = true;
  return Kernel([inv_sqrt_pi](double x) { return std::exp(-x * x) * inv_sqrt_pi; },
                std::move(info));
}

Kernel tent()
{
  KernelInfo info;
  info.label = "tent";
  info.a0 = 1.0;
  info.second_moment = 1.0 / 6.0;
  info.plateau_half_width = 0.0;
  info.strictly_unimodal = false;
  info.support_half_width = 1.0;
  return Kernel([](double x) { return std::max(0.0, 1.0 - std::abs(x)); }, std::move(info));
}

Kernel indicator()
{
  KernelInfo info;
  info.label = "indicator";
  info.a0 = 1.0;
  info.a2pp = 0.0;
  info.second_moment = 1.0 / 12.0;
  info.plateau_half_width = 0.5;
  info.strictly_unimodal = false;
  info.support_half_width = 0.5;
  return Kernel(
      [](double x)
      {
        const double d = std::abs(x) - 0.5;
        if (std::abs(d) <= 1e-12)
        {
          return 0.5;
        }
        return d < 0.0 ? 1.0 : 0.0;
      },
      std::move(info));
}

namespace
{

double interpolate_table(const std::vector<double> &x, const std::vector<double> &a, double t)
{
  if (t < x.front() || t > x.back())
  {
    return 0.0;
  }
  auto it = std::upper_bound(x.begin(), x.end(), t);
  if (it == x.end())
  {
    return a.back();
  }
  const auto j = static_cast<std::size_t>(it - x.begin());
  const double s = (t - x[j - 1]) / (x[j] - x[j - 1]);
  return (1.0 - s) * a[j - 1] + s * a[j];
}

}  // namespace

Kernel sampled_kernel(std::vector<double> x, std::vector<double> a, std::string label)
{
  if (x.size() != a.size() || x.size() < 2)
  {
    throw InvalidParameter("sampled kernel: need matching x and a columns with >= 2 rows");
  }
  for (std::size_t i = 0; i < x.size(); i++)
  {
    if (!std::isfinite(x[i]) || !std::isfinite(a[i]))
    {
      throw InvalidParameter("sampled kernel: non-finite entry");
    }
    if (i > 0 && !(x[i] > x[i - 1]))
    {
      throw InvalidParameter("sampled kernel: x must be strictly increasing");
    }
  }
  auto zero = std::find(x.begin(), x.end(), 0.0);
  if (zero == x.end())
  {
    throw InvalidParameter("sampled kernel: table must contain x = 0");
  }
  if (x.front() == 0.0)
  {
    // One-sided table: mirror.
    std::vector<double> xs, as;
    for (std::size_t i = x.size() - 1; i > 0; i--)
    {
      xs.push_back(-x[i]);
      as.push_back(a[i]);
    }
    xs.insert(xs.end(), x.begin(), x.end());
    as.insert(as.end(), a.begin(), a.end());
    x = std::move(xs);
    a = std::move(as);
  }
  const auto i0 = static_cast<std::size_t>(std::find(x.begin(), x.end(), 0.0) - x.begin());

  KernelInfo info;
  info.label = std::move(label);
  info.a0 = a[i0];
  double m2 = 0.0;
  for (std::size_t i = 1; i < x.size(); i++)
  {
    const double w = x[i] - x[i - 1];
    m2 += 0.5 * w * (x[i] * x[i] * a[i] + x[i - 1] * x[i - 1] * a[i - 1]);
  }
  info.second_moment = m2;
  double plateau = 0.0;
  for (std::size_t i = i0 + 1; i < x.size() && a[i] == a[i0]; i++)
  {
    plateau = x[i];
  }
  info.plateau_half_width = plateau;
  bool strict = true;
  double support = 0.0;
  for (std::size_t i = i0; i < x.size(); i++)
  {
    if (a[i] > 0.0)
    {
      support = x[i];
    }
    if (i > i0 && !(a[i] < a[i - 1] && a[i] > 0.0))
    {
      strict = false;
    }
  }
  info.strictly_unimodal = strict;
  info.support_half_width = support;

  auto xs = std::make_shared<const std::vector<double>>(std::move(x));
  auto as = std::make_shared<const std::vector<double>>(std::move(a));
  return Kernel([xs, as](double t) { return interpolate_table(*xs, *as, t); }, std::move(info));
}

Kernel grid_kernel(const GridFn &samples, KernelInfo info)
{
  auto values = std::make_shared<const std::vector<double>>(samples.values().begin(),
                                                            samples.values().end());
  const double h = samples.grid().spacing();
  const auto center = static_cast<double>(samples.grid().center());
  const auto last = static_cast<double>(samples.size() - 1);
  return Kernel(
      [values, h, center, last](double x)
      {
        const double t = x / h + center;
        if (t < 0.0 || t > last)
        {
          return 0.0;
        }
        const double r = std::round(t);
        if (std::abs(t - r) <= 1e-9)
        {
          return (*values)[static_cast<std::size_t>(r)];
        }
        const auto i = static_cast<std::size_t>(t);
        const double s = t - static_cast<double>(i);
        return (1.0 - s) * (*values)[i] + s * (*values)[i + 1];
      },
      std::move(info));
}

namespace
{

bool parse_double(std::string_view text, double &out)
{
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
  {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
  {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+')
  {
    text.remove_prefix(1);
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

Kernel load_kernel_csv(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw InvalidParameter("cannot open kernel file " + path.string());
  }
  std::vector<double> xs, as;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line))
  {
    lineno++;
    if (line.empty() || line.front() == '#')
    {
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
    {
      throw InvalidParameter(path.string() + ":" + std::to_string(lineno) +
                             ": expected two comma-separated columns");
    }
    double x = 0.0, a = 0.0;
    const std::string_view view(line);
    if (!parse_double(view.substr(0, comma), x) || !parse_double(view.substr(comma + 1), a))
    {
      if (xs.empty())
      {
        continue;  // header row
      }
      throw InvalidParameter(path.string() + ":" + std::to_string(lineno) +
                             ": malformed number");
    }
    xs.push_back(x);
    as.push_back(a);
  }
  return sampled_kernel(std::move(xs), std::move(as), "file:" + path.string());
}

Kernel kernel_from_selector(const std::string &selector)
{
  if (selector == "gaussian")
  {
    return gaussian();
  }
  if (selector == "tent")
  {
    return tent();
  }
  if (selector == "indicator")
  {
    return indicator();
  }
  if (selector.rfind("file:", 0) == 0)
  {
    return load_kernel_csv(selector.substr(5));
  }
  throw InvalidParameter("unknown kernel '" + selector +
                         "' (expected gaussian | tent | indicator | file:<path>)");
}

double default_half_width(const Kernel &k)
{
  const double support = k.info().support_half_width;
  return std::isfinite(support) ? std::max(10.0, support) : 10.0;
}

ValidationReport validate_kernel(const Kernel &k, const Grid &grid)
{
  const double h = grid.spacing();
  const double support = k.info().support_half_width;
  if (std::isfinite(support) ? h > support / 100.0 : h > 0.01)
  {
    throw ResolutionError("validate_kernel: spacing " + std::to_string(h) +
                          " does not resolve kernel '" + k.label() + "'");
  }
  ValidationReport r;
  const std::size_t c = grid.center();
  const double scale = std::max(std::abs(k(0.0)), 1e-300);
  double deviation = 0.0, most_negative = 0.0, violation = 0.0;
  bool strict = true;
  double prev = k(0.0);
  for (std::size_t m = 0; m <= c; m++)
  {
    const double x = static_cast<double>(m) * h;
    const double ap = k(x);
    const double an = k(-x);
    deviation = std::max(deviation, std::abs(ap - an));
    most_negative = std::min({most_negative, ap, an});
    if (m > 0)
    {
      violation = std::max(violation, ap - prev);
      strict = strict && ap < prev;
    }
    prev = ap;
  }
  r.evenness_deviation = deviation;
  r.most_negative = most_negative;
  r.unimodality_violation = violation;
  r.even = deviation <= 1e-12 * scale;
  r.nonnegative = most_negative >= -1e-14 * scale;
  r.unimodal = violation <= 1e-14 * scale;
  r.strictly_unimodal = strict;
  r.normalization_deviation = std::abs(quadrature(k.sample(grid)) - 1.0);
  r.normalized = r.normalization_deviation <= 1e-6;
  return r;
}

GridFn convolve(const Kernel &a, const GridFn &f, ConvolutionMethod method)
{
  const Grid &grid = f.grid();
  const std::size_t n = grid.size();
  const std::size_t span = n - 1;  // largest node offset, 2N
  const std::vector<double> half = a.sample_offsets(grid.spacing(), span + 1);
  std::vector<double> filter(2 * span + 1);
  for (std::size_t p = 0; p < filter.size(); p++)
  {
    filter[p] = half[p >= span ? p - span : span - p];
  }
  const std::vector<double> full = linear_convolve(filter, f.values(), method);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; i++)
  {
    out[i] = grid.spacing() * full[i + span];
  }
  return GridFn(grid, std::move(out));
}

}  // namespace convev
