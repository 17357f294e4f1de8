// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONVEV_KERNEL_TRANSFORM_HPP
#define CONVEV_KERNEL_TRANSFORM_HPP

#include <string>
#include <utility>

#include "convev/grid.hpp"
#include "convev/kernels.hpp"

namespace convev
{

struct TransformParameters
{
  double sigma_tilde = 0.0;  // sigma - zeta
  double mu = 0.0;           // zeta / sigma
};

// Throws AdmissibilityError unless sigma > zeta >= 0.
TransformParameters transform_parameters(double sigma, double zeta);

// Smallest K with mu^{K+1} / (1 - mu) < tol; 0 for mu = 0.
std::size_t truncation_depth(double mu, double tol);

// Half-width that holds the widened kernel: L_a + 3 sqrt(K m2).
double recommended_half_width(const Kernel &a, double mu, double tol);

// Largest mu accepted by transform_kernel; beyond it the series depth blows up.
inline constexpr double max_mu = 0.999;

class TransformedKernel
{
public:
  TransformedKernel(std::string base_label, double mu, GridFn samples, std::size_t depth,
                    double truncation_bound, double renormalization, double leaked_mass,
                    KernelInfo base_info);

  const std::string &base_label() const { return base_label_; }
  double mu() const { return mu_; }
  const GridFn &samples() const { return samples_; }
  std::size_t truncation_depth() const { return depth_; }
  double truncation_bound() const { return truncation_bound_; }
  double renormalization() const { return renormalization_; }
  double leaked_mass() const { return leaked_mass_; }

  double a0() const;
  // Second derivative at 0 by 5-point central differences at spacing 4h.
  double a2pp() const;
  double second_moment() const;

  // Exact at nodes, linear in between, zero past the grid.
  Kernel kernel() const;

private:
  std::string base_label_;
  double mu_;
  GridFn samples_;
  std::size_t depth_;
  double truncation_bound_;
  double renormalization_;
  double leaked_mass_;
  KernelInfo base_info_;
};

// a~ = (1 - mu) sum_{k=0}^{K} mu^k a^{*(k+1)} by iterated discrete convolution on the
// grid, renormalized to unit mass. Throws GridTooSmall if more than tol of the mass
// leaves the grid, OutOfRange for mu outside [0, max_mu].
TransformedKernel transform_kernel(const Kernel &a, double mu, const Grid &grid,
                                   double tol = 1e-8);

struct ResolventCheck
{
  GridFn direct;  // Picard solution of w = mu a*w + a*g
  GridFn series;  // (1 - mu)^{-1} a~ * g
  std::size_t picard_iterations = 0;
  double relative_difference = 0.0;
};

// Compares both routes to the resolvent on g's grid.
ResolventCheck resolvent_check(const Kernel &a, double mu, const GridFn &g,
                               double tol_transform = 1e-8, double tol_picard = 1e-10,
                               std::size_t max_iter = 100000);

}  // namespace convev

#endif  // CONVEV_KERNEL_TRANSFORM_HPP
