// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONVEV_NONLINEAR_SOLVER_HPP
#define CONVEV_NONLINEAR_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "convev/cutoff_operator.hpp"
#include "convev/grid.hpp"
#include "convev/kernels.hpp"

namespace convev
{

// f(r) = zeta r for r <= theta and (zeta + eta)(r - theta) + zeta theta above.
struct BilinearNonlinearity
{
  double zeta = 0.0;
  double theta = 0.6;
  double eta = 2.5;

  // Throws InvalidParameter unless zeta >= 0, theta > 0, eta > 0.
  void validate() const;
};

// Throws DomainError for r < 0.
double eval_f(const BilinearNonlinearity &p, double r);

struct Tolerances
{
  double power = 1e-10;
  double bisect = 1e-8;
  double transform = 1e-8;
};

struct SolveOptions
{
  double h = 1e-3;
  // Half-width of the working grid; 0 selects the kernel default. With zeta > 0 the grid is
  // widened to hold the transformed kernel.
  double half_width = 0.0;
  Tolerances tol;
};

struct TransformRecord
{
  double mu = 0.0;
  std::size_t depth = 0;
  double truncation_bound = 0.0;
  double renormalization = 1.0;
  double a0 = 0.0;
  double a2pp = 0.0;
  double second_moment = 0.0;
};

struct Solution
{
  double sigma = 0.0;
  BilinearNonlinearity params;
  std::string kernel_label;
  std::optional<TransformRecord> transform;
  double xi = 0.0;
  double lambda = 0.0;
  double lambda_target = 0.0;
  std::size_t power_iterations = 0;
  double power_residual = 0.0;
  OddProfile v{1.0, {}};  // effective derivative profile chi_xi v on cells
  GridFn u_tilde = GridFn::zeros(Grid(1, 1.0));
  double tau = 0.0;
  GridFn u = GridFn::zeros(Grid(1, 1.0));
  double residual_rel = 0.0;
  SolveOptions options;
};

// Admissible sigma lie in the open interval (zeta, zeta + eta).
bool admissible(const BilinearNonlinearity &p, double sigma);

// Constructs the unique solution in the unimodal cone; throws AdmissibilityError outside
// (zeta, zeta + eta).
Solution solve_sigma(const Kernel &kernel, const BilinearNonlinearity &params, double sigma,
                     const SolveOptions &options = {});

// ||sigma u - a*f(u)|| / max(||sigma u||, 1e-300) on u's grid.
double residual(const Kernel &kernel, const BilinearNonlinearity &params, double sigma,
                const GridFn &u);

// f(u) node by node.
GridFn apply_f(const BilinearNonlinearity &params, const GridFn &u);

// chi_xi v sampled at the grid nodes (odd reconstruction).
GridFn derivative_profile(const Solution &s);

struct SweepEntry
{
  double sigma = 0.0;
  bool ok = false;
  double xi = 0.0;
  double lambda = 0.0;
  double tau = 0.0;
  double u_norm2 = 0.0;
  double u_norm_inf = 0.0;
  double residual_rel = 0.0;
  std::string error;
};

// One entry per sigma in input order; failures are recorded, not thrown.
std::vector<SweepEntry> sweep(const Kernel &kernel, const BilinearNonlinearity &params,
                              const std::vector<double> &sigmas,
                              const SolveOptions &options = {});

}  // namespace convev

#endif  // CONVEV_NONLINEAR_SOLVER_HPP
