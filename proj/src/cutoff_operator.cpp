// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "convev/cutoff_operator.hpp"

#include <algorithm>
#include <cmath>

#include "convev/convolution.hpp"
#include "convev/errors.hpp"

namespace convev
{

OddProfile::OddProfile(double spacing, std::vector<double> values)
  : spacing_(spacing), values_(std::move(values))
{
  if (!(spacing > 0.0) || !std::isfinite(spacing))
  {
    throw InvalidParameter("OddProfile: spacing must be positive");
  }
  for (double v : values_)
  {
    if (!std::isfinite(v))
    {
      throw InvalidParameter("OddProfile: non-finite value");
    }
  }
}

double OddProfile::at(double x) const
{
  if (x < 0.0)
  {
    return -at(-x);
  }
  if (values_.empty())
  {
    return 0.0;
  }
  const double t = x / spacing_ - 0.5;  // position in cell-centre units
  if (t < 0.0)
  {
    // Between the mirrored cell -c_1 and c_1.
    return values_[0] * (x / (0.5 * spacing_));
  }
  const auto k = static_cast<std::size_t>(t);
  if (k >= values_.size())
  {
    return 0.0;
  }
  const double s = t - static_cast<double>(k);
  const double next = k + 1 < values_.size() ? values_[k + 1] : 0.0;
  return (1.0 - s) * values_[k] + s * next;
}

double OddProfile::norm() const
{
  double sum = 0.0;
  for (double v : values_)
  {
    sum += v * v;
  }
  return std::sqrt(2.0 * spacing_ * sum);
}

GridFn OddProfile::to_grid(const Grid &grid) const
{
  return GridFn::sample(grid, [this](double x) { return at(x); });
}

double inner(const OddProfile &v, const OddProfile &w)
{
  if (v.spacing() != w.spacing())
  {
    throw IncompatibleGrid("inner: profiles on different spacings");
  }
  const std::size_t n = std::min(v.size(), w.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < n; k++)
  {
    sum += v[k] * w[k];
  }
  return 2.0 * v.spacing() * sum;
}

Cutoff::Cutoff(double xi, double spacing) : xi_(xi), spacing_(spacing)
{
  if (!(xi > 0.0) || !std::isfinite(xi))
  {
    throw InvalidParameter("cut-off length xi must be positive");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing))
  {
    throw InvalidParameter("spacing must be positive");
  }
  const double t = xi / spacing;
  double m = std::floor(t);
  double s = t - m;
  if (s < 1e-9)
  {
    s = 0.0;
  }
  else if (s > 1.0 - 1e-9)
  {
    m += 1.0;
    s = 0.0;
  }
  full_ = static_cast<std::size_t>(m);
  fraction_ = s;
}

double Cutoff::weight(std::size_t k) const
{
  if (k < full_)
  {
    return 1.0;
  }
  return k == full_ ? fraction_ : 0.0;
}

struct CutoffOperator::Workspace
{
  FixedConvolver convolver;
  std::vector<double> odd;   // odd extension, length 2n
  std::vector<double> full;  // convolution output
  double spacing;
};

CutoffOperator::CutoffOperator(const Kernel &kernel, const Cutoff &cutoff,
                               ConvolutionMethod method)
  : cutoff_(cutoff)
{
  const std::size_t n = cutoff.active_cells();
  sqrt_weight_.resize(n);
  for (std::size_t k = 0; k < n; k++)
  {
    sqrt_weight_[k] = std::sqrt(cutoff.weight(k));
  }
  if (n == 0)
  {
    return;
  }
  // kernel[p] = a((p + 1 - n) h), p = 0..3n-2, covers every offset c_k -+ c_l.
  const double h = cutoff.spacing();
  const std::vector<double> half = kernel.sample_offsets(h, 2 * n);
  std::vector<double> filter(3 * n - 1);
  for (std::size_t p = 0; p < filter.size(); p++)
  {
    filter[p] = half[p + 1 >= n ? p + 1 - n : n - 1 - p];
  }
  FixedConvolver conv(filter, 2 * n, method);
  const std::size_t out_len = conv.output_length();
  work_ = std::make_unique<Workspace>(
      Workspace{std::move(conv), std::vector<double>(2 * n), std::vector<double>(out_len), h});
}

CutoffOperator::~CutoffOperator() = default;
CutoffOperator::CutoffOperator(CutoffOperator &&) noexcept = default;
CutoffOperator &CutoffOperator::operator=(CutoffOperator &&) noexcept = default;

void CutoffOperator::apply(std::span<const double> v, std::span<double> out) const
{
  const std::size_t n = size();
  if (v.size() != n || out.size() != n)
  {
    throw InvalidParameter("CutoffOperator::apply: size mismatch");
  }
  if (n == 0)
  {
    return;
  }
  // Odd extension: slot q holds cell l = q - n + 1, mirrored with a sign flip for l <= 0.
  std::vector<double> &y = work_->odd;
  for (std::size_t k = 0; k < n; k++)
  {
    const double wk = sqrt_weight_[k] * v[k];
    y[n + k] = wk;
    y[n - 1 - k] = -wk;
  }
  work_->convolver.apply(y, work_->full);
  const double h = work_->spacing;
  for (std::size_t k = 0; k < n; k++)
  {
    out[k] = sqrt_weight_[k] * h * work_->full[k + 2 * n - 1];
  }
}

namespace
{

void require_on_grid(const Grid &grid, double xi)
{
  if (xi > grid.half_width() * (1.0 + 1e-12))
  {
    throw OutOfRange("cut-off xi = " + std::to_string(xi) + " exceeds grid half-width " +
                     std::to_string(grid.half_width()));
  }
}

}  // namespace

OddProfile apply_A(const Kernel &kernel, const Grid &grid, double xi, const OddProfile &v)
{
  require_on_grid(grid, xi);
  if (v.spacing() != grid.spacing())
  {
    throw IncompatibleGrid("apply_A: profile spacing differs from grid spacing");
  }
  const Cutoff cutoff(xi, grid.spacing());
  const CutoffOperator op(kernel, cutoff);
  const std::size_t n = op.size();
  std::vector<double> in(n, 0.0);
  std::copy_n(v.values().begin(), std::min(n, v.size()), in.begin());
  std::vector<double> out(n);
  op.apply(in, out);
  out.resize(std::max(n, v.size()), 0.0);
  out.resize(v.size());
  return OddProfile(v.spacing(), std::move(out));
}

double rayleigh(const Kernel &kernel, const Grid &grid, double xi, const OddProfile &v)
{
  const double nv = v.norm();
  if (nv == 0.0)
  {
    throw DomainError("rayleigh: zero profile");
  }
  const OddProfile av = apply_A(kernel, grid, xi, v);
  return inner(v, av) / (nv * nv);
}

OddProfile test_function(const Cutoff &cutoff)
{
  const std::size_t n = cutoff.active_cells();
  const double c = -1.0 / std::sqrt(2.0 * cutoff.xi());
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; k++)
  {
    v[k] = c * std::sqrt(cutoff.weight(k));
  }
  return OddProfile(cutoff.spacing(), std::move(v));
}

OddProfile effective_profile(const Cutoff &cutoff, const OddProfile &v)
{
  std::vector<double> y(v.size());
  for (std::size_t k = 0; k < v.size(); k++)
  {
    y[k] = std::sqrt(cutoff.weight(k)) * v[k];
  }
  return OddProfile(v.spacing(), std::move(y));
}

ConeReport cone_membership(const OddProfile &v, const Cutoff &cutoff)
{
  double vmax = 0.0;
  for (double x : v.values())
  {
    vmax = std::max(vmax, std::abs(x));
  }
  const double tau = 1e-10 * vmax;
  const std::size_t active = cutoff.active_cells();
  ConeReport r;
  double worst = 0.0;
  bool strict = v.size() > 0 && active > 0;
  for (std::size_t k = 0; k < v.size(); k++)
  {
    worst = std::max(worst, v[k]);
    if (k < active)
    {
      strict = strict && v[k] < 0.0;
    }
    else
    {
      strict = strict && std::abs(v[k]) <= tau;
    }
  }
  r.worst_violation = worst;
  r.in_cone = worst <= tau;
  // The forward difference at the origin is v(c_1) - v(0) = v_1.
  r.in_strict_cone = r.in_cone && strict;
  return r;
}

}  // namespace convev
