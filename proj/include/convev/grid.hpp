// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONVEV_GRID_HPP
#define CONVEV_GRID_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "convev/convolution.hpp"

namespace convev
{

// Uniform grid x_i = (i - N) h, i = 0..2N, symmetric about the origin.
class Grid
{
public:
  Grid(std::size_t half_count, double spacing);

  double spacing() const { return spacing_; }
  double half_width() const { return static_cast<double>(half_count_) * spacing_; }
  std::size_t half_count() const { return half_count_; }
  std::size_t size() const { return 2 * half_count_ + 1; }
  std::size_t center() const { return half_count_; }

  double point(std::size_t i) const
  {
    return (static_cast<double>(i) - static_cast<double>(half_count_)) * spacing_;
  }
  std::vector<double> points() const;

  // Index of the node nearest to x, clamped to the grid.
  std::size_t nearest(double x) const;

  bool operator==(const Grid &other) const = default;

private:
  std::size_t half_count_;
  double spacing_;
};

// Grid with n = 2 round(L/h) + 1 nodes; the realized half-width is h round(L/h).
Grid make_grid(double half_width, double spacing);

// Samples of a real function on a grid.
class GridFn
{
public:
  GridFn(const Grid &grid, std::vector<double> values);

  static GridFn zeros(const Grid &grid);

  template <typename F>
  static GridFn sample(const Grid &grid, F &&f)
  {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); i++)
    {
      v[i] = f(grid.point(i));
    }
    return GridFn(grid, std::move(v));
  }

  const Grid &grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  // Value at x by linear interpolation between nodes; zero outside the grid.
  double interpolate(double x) const;

  GridFn &operator*=(double s);

private:
  Grid grid_;
  std::vector<double> values_;
};

GridFn operator*(double s, GridFn f);

// h sum_i f(x_i), uniform weight h at every node.
double quadrature(const GridFn &f);

// Grid L2 inner product h sum_i f_i g_i and the induced norm.
double inner(const GridFn &f, const GridFn &g);
double norm2(const GridFn &f);
double norm_inf(const GridFn &f);

// (a * f)(x_i) = h sum_j a(x_i - x_j) f(x_j), with a(x) = 0 for |x| > L.
GridFn convolve(const GridFn &a, const GridFn &f,
                ConvolutionMethod method = ConvolutionMethod::automatic);

// Throws IncompatibleGrid unless both functions share one grid.
void require_same_grid(const GridFn &a, const GridFn &b, const char *context);

}  // namespace convev

#endif  // CONVEV_GRID_HPP
