// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "convev/kernel_transform.hpp"

#include <algorithm>
#include <cmath>

#include "convev/convolution.hpp"
#include "convev/errors.hpp"
#include "convev/io.hpp"

namespace convev
{

TransformParameters transform_parameters(double sigma, double zeta)
{
  if (!(zeta >= 0.0) || !std::isfinite(zeta) || !std::isfinite(sigma))
  {
    throw InvalidParameter("transform_parameters: zeta must be finite and >= 0");
  }
  if (!(sigma > zeta) || !(sigma > 0.0))
  {
    throw AdmissibilityError("no solution in the unimodal cone for sigma <= zeta (sigma = " +
                             format_double(sigma) + ", zeta = " + format_double(zeta) + ")");
  }
  return {sigma - zeta, zeta / sigma};
}

std::size_t truncation_depth(double mu, double tol)
{
  if (!(mu >= 0.0 && mu < 1.0))
  {
    throw OutOfRange("truncation_depth: mu must lie in [0, 1)");
  }
  if (!(tol > 0.0 && tol < 1.0))
  {
    throw InvalidParameter("truncation_depth: tol must lie in (0, 1)");
  }
  if (mu == 0.0)
  {
    return 0;
  }
  const double k = std::ceil(std::log(tol * (1.0 - mu)) / std::log(mu));
  auto depth = static_cast<std::size_t>(std::max(0.0, k));
  // Guard against rounding in the logarithms.
  while (std::pow(mu, static_cast<double>(depth + 1)) / (1.0 - mu) >= tol)
  {
    depth++;
  }
  return depth;
}

double recommended_half_width(const Kernel &a, double mu, double tol)
{
  const std::size_t k = truncation_depth(mu, tol);
  return default_half_width(a) +
         3.0 * std::sqrt(static_cast<double>(k) * a.info().second_moment);
}

TransformedKernel::TransformedKernel(std::string base_label, double mu, GridFn samples,
                                     std::size_t depth, double truncation_bound,
                                     double renormalization, double leaked_mass,
                                     KernelInfo base_info)
  : base_label_(std::move(base_label)), mu_(mu), samples_(std::move(samples)), depth_(depth),
    truncation_bound_(truncation_bound), renormalization_(renormalization),
    leaked_mass_(leaked_mass), base_info_(std::move(base_info))
{
}

double TransformedKernel::a0() const
{
  return samples_[samples_.grid().center()];
}

double TransformedKernel::a2pp() const
{
  const std::size_t c = samples_.grid().center();
  const std::size_t s = 4;
  if (c < 2 * s)
  {
    throw ResolutionError("a2pp: grid too small for the difference stencil");
  }
  const double d = static_cast<double>(s) * samples_.grid().spacing();
  const double f0 = samples_[c];
  const double f1 = samples_[c + s] + samples_[c - s];
  const double f2 = samples_[c + 2 * s] + samples_[c - 2 * s];
  return (-f2 + 16.0 * f1 - 30.0 * f0) / (12.0 * d * d);
}

double TransformedKernel::second_moment() const
{
  const Grid &g = samples_.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); i++)
  {
    const double x = g.point(i);
    sum += x * x * samples_[i];
  }
  return g.spacing() * sum;
}

Kernel TransformedKernel::kernel() const
{
  KernelInfo info;
  info.label = "transformed(" + base_label_ + ",mu=" + format_double(mu_) + ")";
  info.a0 = a0();
  if (mu_ > 0.0 || base_info_.a2pp)
  {
    info.a2pp = mu_ > 0.0 ? a2pp() : *base_info_.a2pp;
  }
  info.second_moment = second_moment();
  info.plateau_half_width = mu_ > 0.0 ? 0.0 : base_info_.plateau_half_width;
  info.strictly_unimodal = base_info_.strictly_unimodal || mu_ > 0.0;
  info.support_half_width = mu_ > 0.0 ? samples_.grid().half_width()
                                      : base_info_.support_half_width;
  return grid_kernel(samples_, std::move(info));
}

TransformedKernel transform_kernel(const Kernel &a, double mu, const Grid &grid, double tol)
{
  if (!(mu >= 0.0 && mu <= max_mu))
  {
    throw OutOfRange("transform_kernel: mu = " + format_double(mu) + " outside [0, " +
                     format_double(max_mu) + "]; sigma is too close to zeta");
  }
  const std::size_t depth = truncation_depth(mu, tol);
  const double bound = mu == 0.0 ? 0.0 : std::pow(mu, static_cast<double>(depth + 1)) / (1.0 - mu);
  const GridFn base = a.sample(grid);
  if (mu == 0.0)
  {
    return TransformedKernel(a.label(), mu, base, 0, 0.0, 1.0, 0.0, a.info());
  }

  const std::size_t n = grid.size();
  const std::size_t c = grid.center();
  const double h = grid.spacing();
  const FixedConvolver conv(base.values(), n);
  std::vector<double> power(base.values().begin(), base.values().end());
  std::vector<double> full(conv.output_length());
  std::vector<double> acc(n);
  double coef = 1.0 - mu;
  for (std::size_t i = 0; i < n; i++)
  {
    acc[i] = coef * power[i];
  }
  double leaked = 0.0;
  for (std::size_t k = 1; k <= depth; k++)
  {
    conv.apply(power, full);
    double outside = 0.0;
    for (std::size_t i = 0; i < c; i++)
    {
      outside += std::abs(full[i]) + std::abs(full[full.size() - 1 - i]);
    }
    coef *= mu;
    leaked += coef * h * h * outside;
    for (std::size_t i = 0; i < n; i++)
    {
      power[i] = h * full[i + c];
      acc[i] += coef * power[i];
    }
  }
  if (leaked > tol)
  {
    throw GridTooSmall("transform_kernel: " + format_double(leaked) +
                       " of the mass leaves the grid (half-width " +
                       format_double(grid.half_width()) + "); enlarge L to at least " +
                       format_double(recommended_half_width(a, mu, tol)));
  }
  // Exact evenness and sign; FFT roundoff leaves ~1e-17 noise in the tails.
  for (std::size_t i = 0; i < c; i++)
  {
    const double m = std::max(0.0, 0.5 * (acc[i] + acc[n - 1 - i]));
    acc[i] = m;
    acc[n - 1 - i] = m;
  }
  acc[c] = std::max(0.0, acc[c]);
  double mass = 0.0;
  for (double x : acc)
  {
    mass += x;
  }
  mass *= h;
  const double factor = 1.0 / mass;
  if (!(std::abs(factor - 1.0) <= 10.0 * tol))
  {
    throw ResolutionError("transform_kernel: renormalization factor " +
                          format_double(factor) +
                          " is not within 10 tol of 1; the base kernel is not resolved");
  }
  for (double &x : acc)
  {
    x *= factor;
  }
  return TransformedKernel(a.label(), mu, GridFn(grid, std::move(acc)), depth, bound, factor,
                           leaked, a.info());
}

ResolventCheck resolvent_check(const Kernel &a, double mu, const GridFn &g,
                               double tol_transform, double tol_picard, std::size_t max_iter)
{
  if (!(mu >= 0.0 && mu < 1.0))
  {
    throw OutOfRange("resolvent_check: mu must lie in [0, 1)");
  }
  const Grid &grid = g.grid();
  const double lt = std::max(grid.half_width(), recommended_half_width(a, mu, tol_transform));
  const TransformedKernel tk =
      transform_kernel(a, mu, make_grid(lt, grid.spacing()), tol_transform);
  GridFn series = convolve(tk.kernel(), g);
  series *= 1.0 / (1.0 - mu);

  const GridFn ag = convolve(a, g);
  std::vector<double> w(ag.values().begin(), ag.values().end());
  std::size_t it = 0;
  for (;;)
  {
    if (it >= max_iter)
    {
      throw NonConvergence("resolvent_check: Picard iteration did not converge", 0.0);
    }
    it++;
    const GridFn aw = convolve(a, GridFn(grid, w));
    double diff = 0.0, size = 0.0;
    for (std::size_t i = 0; i < w.size(); i++)
    {
      const double next = mu * aw[i] + ag[i];
      diff += (next - w[i]) * (next - w[i]);
      size += next * next;
      w[i] = next;
    }
    if (std::sqrt(diff) <= tol_picard * std::sqrt(size))
    {
      break;
    }
  }
  ResolventCheck r{GridFn(grid, std::move(w)), std::move(series), it, 0.0};
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < grid.size(); i++)
  {
    num += (r.direct[i] - r.series[i]) * (r.direct[i] - r.series[i]);
    den += r.direct[i] * r.direct[i];
  }
  r.relative_difference = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return r;
}

}  // namespace convev
