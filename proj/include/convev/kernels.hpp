// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONVEV_KERNELS_HPP
#define CONVEV_KERNELS_HPP

#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "convev/grid.hpp"

namespace convev
{

struct KernelInfo
{
  std::string label;
  double a0 = 0.0;                     // a(0)
  std::optional<double> a2pp;          // a''(0); absent where undefined
  double second_moment = 0.0;          // int y^2 a(y) dy
  double plateau_half_width = 0.0;     // largest p with a constant on [0, p]
  bool strictly_unimodal = false;      // a'(x) < 0 for all x > 0
  double support_half_width = std::numeric_limits<double>::infinity();
};

// Even, nonnegative, unimodal, unit-mass convolution kernel. Immutable.
class Kernel
{
public:
  Kernel(std::function<double(double)> evaluator, KernelInfo info);

  double operator()(double x) const { return eval_(x); }
  const KernelInfo &info() const { return info_; }
  const std::string &label() const { return info_.label; }

  // a(m h) for m = 0..count-1.
  std::vector<double> sample_offsets(double spacing, std::size_t count) const;
  GridFn sample(const Grid &grid) const;

private:
  std::function<double(double)> eval_;
  KernelInfo info_;
};

// exp(-x^2)/sqrt(pi).
Kernel gaussian();
// max(0, 1 - |x|).
Kernel tent();
// 1 on |x| < 1/2, 0 outside, and 1/2 on the jump |x| = 1/2 itself.
Kernel indicator();

// Kernel from a sampled table with linear interpolation, zero outside the table. x must
// be strictly increasing and contain 0; a table with x >= 0 only is mirrored evenly.
Kernel sampled_kernel(std::vector<double> x, std::vector<double> a, std::string label);

// Kernel backed by grid samples; exact at nodes, linear in between, zero beyond the grid.
Kernel grid_kernel(const GridFn &samples, KernelInfo info);

// Reads a two-column CSV `x,a` (header row and '#' comment lines allowed).
Kernel load_kernel_csv(const std::filesystem::path &path);

// Kernel by name: gaussian | tent | indicator | file:<path>.
Kernel kernel_from_selector(const std::string &selector);

// Default half-width for computations with this kernel (a(L) < 1e-12 for the Gaussian).
double default_half_width(const Kernel &k);

struct ValidationReport
{
  bool even = false;
  bool nonnegative = false;
  bool unimodal = false;
  bool normalized = false;
  bool strictly_unimodal = false;
  double evenness_deviation = 0.0;
  double most_negative = 0.0;
  double unimodality_violation = 0.0;
  double normalization_deviation = 0.0;

  // Assumption-level properties (strict unimodality is reported separately).
  bool admissible() const { return even && nonnegative && unimodal && normalized; }
};

// Checks evenness, sign, unimodality and unit mass on the grid nodes. Throws
// ResolutionError if h > support/100 (compact support) or h > 0.01 (unbounded).
ValidationReport validate_kernel(const Kernel &k, const Grid &grid);

// (a * f)(x_i) = h sum_j a(x_i - x_j) f_j with a evaluated at every offset.
GridFn convolve(const Kernel &a, const GridFn &f,
                ConvolutionMethod method = ConvolutionMethod::automatic);

}  // namespace convev

#endif  // CONVEV_KERNELS_HPP
