// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "convev/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "convev/errors.hpp"

namespace convev
{

Grid::Grid(std::size_t half_count, double spacing) : half_count_(half_count), spacing_(spacing)
{
  if (!(spacing > 0.0) || !std::isfinite(spacing) || half_count == 0)
  {
    throw InvalidParameter("grid needs spacing > 0 and at least one node per side");
  }
}

std::vector<double> Grid::points() const
{
  std::vector<double> x(size());
  for (std::size_t i = 0; i < x.size(); i++)
  {
    x[i] = point(i);
  }
  return x;
}

std::size_t Grid::nearest(double x) const
{
  const double t = std::round(x / spacing_) + static_cast<double>(half_count_);
  if (t <= 0.0)
  {
    return 0;
  }
  return std::min(static_cast<std::size_t>(t), size() - 1);
}

Grid make_grid(double half_width, double spacing)
{
  if (!(half_width > 0.0) || !(spacing > 0.0) || !std::isfinite(half_width) ||
      !std::isfinite(spacing))
  {
    throw InvalidParameter("make_grid: half_width and spacing must be positive and finite");
  }
  if (half_width < spacing)
  {
    throw InvalidParameter("make_grid: half_width must be at least the spacing");
  }
  const double count = std::round(half_width / spacing);
  return Grid(static_cast<std::size_t>(count), spacing);
}

GridFn::GridFn(const Grid &grid, std::vector<double> values)
  : grid_(grid), values_(std::move(values))
{
  if (values_.size() != grid_.size())
  {
    throw InvalidParameter("GridFn: " + std::to_string(values_.size()) +
                           " values for a grid of " + std::to_string(grid_.size()) +
                           " points");
  }
  for (double v : values_)
  {
    if (!std::isfinite(v))
    {
      throw DomainError("GridFn: non-finite sample");
    }
  }
}

GridFn GridFn::zeros(const Grid &grid)
{
  return GridFn(grid, std::vector<double>(grid.size(), 0.0));
}

double GridFn::interpolate(double x) const
{
  const double t = x / grid_.spacing() + static_cast<double>(grid_.center());
  if (t < 0.0 || t > static_cast<double>(size() - 1))
  {
    return 0.0;
  }
  const auto i = std::min(static_cast<std::size_t>(t), size() - 2);
  const double s = t - static_cast<double>(i);
  return (1.0 - s) * values_[i] + s * values_[i + 1];
}

GridFn &GridFn::operator*=(double s)
{
  for (double &v : values_)
  {
    v *= s;
  }
  return *this;
}

GridFn operator*(double s, GridFn f)
{
  f *= s;
  return f;
}

void require_same_grid(const GridFn &a, const GridFn &b, const char *context)
{
  if (!(a.grid() == b.grid()))
  {
    throw IncompatibleGrid(std::string(context) + ": operands live on different grids");
  }
}

double quadrature(const GridFn &f)
{
  double s = 0.0;
  for (double v : f.values())
  {
    s += v;
  }
  return f.grid().spacing() * s;
}

double inner(const GridFn &f, const GridFn &g)
{
  require_same_grid(f, g, "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); i++)
  {
    s += f[i] * g[i];
  }
  return f.grid().spacing() * s;
}

double norm2(const GridFn &f)
{
  return std::sqrt(inner(f, f));
}

double norm_inf(const GridFn &f)
{
  double m = 0.0;
  for (double v : f.values())
  {
    m = std::max(m, std::abs(v));
  }
  return m;
}

GridFn convolve(const GridFn &a, const GridFn &f, ConvolutionMethod method)
{
  require_same_grid(a, f, "convolve");
  const std::size_t n = f.size();
  const std::size_t c = f.grid().center();
  // a holds offsets -N..N; full[p] pairs offset p - N - j with f_j, so node i sits at
  // p = i + N.
  const std::vector<double> full = linear_convolve(a.values(), f.values(), method);
  std::vector<double> out(n);
  const double h = f.grid().spacing();
  for (std::size_t i = 0; i < n; i++)
  {
    out[i] = h * full[i + c];
  }
  return GridFn(f.grid(), std::move(out));
}

}  // namespace convev
