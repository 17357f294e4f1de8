// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONVEV_KR_SOLVER_HPP
#define CONVEV_KR_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "convev/cutoff_operator.hpp"

namespace convev
{

struct PowerOptions
{
  double tol = 1e-10;            // on ||A v - lambda v||
  std::size_t max_iter = 100000;
  double lambda_floor = 1e-13;   // below this the operator is treated as trivial
};

struct EigenPair
{
  double xi = 0.0;
  double lambda = 0.0;
  OddProfile v{1.0, {}};  // unit norm, nonpositive on x > 0
  std::size_t iterations = 0;
  double residual = 0.0;
  bool degenerate = false;  // lambda = 0 and v undefined
};

// Principal eigenpair of A_xi by power iteration. The start vector defaults to the
// normalized test function; a warm start is truncated or zero-padded to the cut-off.
EigenPair power_method(const Kernel &kernel, const Grid &grid, double xi,
                       const PowerOptions &options = {},
                       const OddProfile *start = nullptr);

struct EigenCurveEntry
{
  double xi = 0.0;
  double lambda = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool degenerate = false;
  std::string error;  // empty on success
};

struct EigenCurve
{
  std::string kernel_label;
  double spacing = 0.0;
  double half_width = 0.0;
  std::vector<EigenCurveEntry> entries;
};

// Evaluates lambda_xi on a sorted list. A failing entry is recorded and the sweep continues.
EigenCurve eigencurve(const Kernel &kernel, const Grid &grid, const std::vector<double> &xis,
                      const PowerOptions &options = {});

struct InversionOptions
{
  double tol_lambda = 1e-8;
  std::size_t max_bisections = 200;
  PowerOptions power;
};

struct Inversion
{
  double xi = 0.0;
  EigenPair pair;
  std::size_t evaluations = 0;
};

// The unique xi with |lambda_xi - target| <= tol_lambda, by bracketing bisection. The
// bracket starts at [h, 1] and doubles its upper end; GridTooSmall if it outgrows the grid.
Inversion invert_lambda(const Kernel &kernel, const Grid &grid, double target,
                        const InversionOptions &options = {});

}  // namespace convev

#endif  // CONVEV_KR_SOLVER_HPP
