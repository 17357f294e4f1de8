// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "convev/kr_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "convev/errors.hpp"

namespace convev
{

namespace
{

double grid_norm(std::span<const double> v, double h)
{
  return std::sqrt(2.0 * h * std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

EigenPair power_method(const Kernel &kernel, const Grid &grid, double xi,
                       const PowerOptions &options, const OddProfile *start)
{
  if (!(options.tol > 0.0))
  {
    throw InvalidParameter("power_method: tolerance must be positive");
  }
  if (xi > grid.half_width() * (1.0 + 1e-12))
  {
    throw OutOfRange("power_method: xi exceeds grid half-width");
  }
  const double h = grid.spacing();
  const Cutoff cutoff(xi, h);
  const CutoffOperator op(kernel, cutoff);
  const std::size_t n = op.size();

  EigenPair pair;
  pair.xi = xi;

  std::vector<double> v(n, 0.0);
  if (start != nullptr && start->spacing() == h)
  {
    std::copy_n(start->values().begin(), std::min(n, start->size()), v.begin());
  }
  double nv = grid_norm(v, h);
  if (!(nv > 0.0))
  {
    const OddProfile t = test_function(cutoff);
    std::copy(t.values().begin(), t.values().end(), v.begin());
    nv = grid_norm(v, h);
  }
  if (!(nv > 0.0))
  {
    pair.degenerate = true;
    pair.v = OddProfile(h, std::vector<double>(n, 0.0));
    return pair;
  }
  for (double &x : v)
  {
    x /= nv;
  }

  std::vector<double> av(n);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= options.max_iter; it++)
  {
    op.apply(v, av);
    const double lambda = grid_norm(av, h);
    if (lambda < options.lambda_floor)
    {
      pair.degenerate = true;
      pair.lambda = 0.0;
      pair.iterations = it;
      pair.residual = lambda;
      pair.v = OddProfile(h, std::vector<double>(n, 0.0));
      return pair;
    }
    double r2 = 0.0;
    for (std::size_t k = 0; k < n; k++)
    {
      const double d = av[k] - lambda * v[k];
      r2 += d * d;
    }
    residual = std::sqrt(2.0 * h * r2);
    if (residual <= options.tol)
    {
      // Keep the evaluated vector so that the residual refers to the returned pair.
      const double sum = std::accumulate(v.begin(), v.end(), 0.0);
      if (sum > 0.0)
      {
        for (double &x : v)
        {
          x = -x;
        }
      }
      pair.lambda = lambda;
      pair.iterations = it;
      pair.residual = residual;
      pair.v = OddProfile(h, std::move(v));
      return pair;
    }
    for (std::size_t k = 0; k < n; k++)
    {
      v[k] = av[k] / lambda;
    }
  }
  throw NonConvergence("power_method: no convergence at xi = " + std::to_string(xi) +
                           " after " + std::to_string(options.max_iter) + " iterations",
                       residual);
}

EigenCurve eigencurve(const Kernel &kernel, const Grid &grid, const std::vector<double> &xis,
                      const PowerOptions &options)
{
  for (std::size_t i = 0; i < xis.size(); i++)
  {
    if (!(xis[i] > 0.0) || (i > 0 && !(xis[i] > xis[i - 1])))
    {
      throw InvalidParameter("eigencurve: xi list must be positive and strictly increasing");
    }
  }
  EigenCurve curve;
  curve.kernel_label = kernel.label();
  curve.spacing = grid.spacing();
  curve.half_width = grid.half_width();
  for (double xi : xis)
  {
    EigenCurveEntry e;
    e.xi = xi;
    try
    {
      const EigenPair p = power_method(kernel, grid, xi, options);
      e.lambda = p.lambda;
      e.iterations = p.iterations;
      e.residual = p.residual;
      e.degenerate = p.degenerate;
    }
    catch (const NonConvergence &err)
    {
      e.lambda = std::numeric_limits<double>::quiet_NaN();
      e.residual = err.last_residual();
      e.error = err.what();
    }
    catch (const Error &err)
    {
      e.lambda = std::numeric_limits<double>::quiet_NaN();
      e.residual = std::numeric_limits<double>::quiet_NaN();
      e.error = err.what();
    }
    curve.entries.push_back(std::move(e));
  }
  return curve;
}

Inversion invert_lambda(const Kernel &kernel, const Grid &grid, double target,
                        const InversionOptions &options)
{
  if (!(target > 0.0 && target < 1.0))
  {
    throw OutOfRange("invert_lambda: target must lie in (0, 1)");
  }
  if (!(options.tol_lambda > 0.0))
  {
    throw InvalidParameter("invert_lambda: tolerance must be positive");
  }
  const double h = grid.spacing();
  const double limit = grid.half_width();
  Inversion result;

  auto evaluate = [&](double xi, const EigenPair *warm)
  {
    result.evaluations++;
    const OddProfile *start = (warm != nullptr && !warm->degenerate) ? &warm->v : nullptr;
    return power_method(kernel, grid, xi, options.power, start);
  };
  auto accept = [&](EigenPair p)
  {
    result.xi = p.xi;
    result.pair = std::move(p);
    return result;
  };

  double lo = h;
  EigenPair plo = evaluate(lo, nullptr);
  if (std::abs(plo.lambda - target) <= options.tol_lambda)
  {
    return accept(std::move(plo));
  }
  if (plo.lambda > target)
  {
    throw OutOfRange("invert_lambda: target below lambda at the smallest resolvable xi; "
                     "refine the grid");
  }
  double hi = std::min(1.0, limit);
  EigenPair phi = evaluate(hi, &plo);
  while (phi.lambda < target)
  {
    if (std::abs(phi.lambda - target) <= options.tol_lambda)
    {
      return accept(std::move(phi));
    }
    if (hi >= limit)
    {
      throw GridTooSmall("invert_lambda: lambda_xi stays below the target up to the grid "
                         "half-width " + std::to_string(limit) + "; enlarge L");
    }
    lo = hi;
    plo = std::move(phi);
    hi = std::min(2.0 * hi, limit);
    phi = evaluate(hi, &plo);
  }
  if (std::abs(phi.lambda - target) <= options.tol_lambda)
  {
    return accept(std::move(phi));
  }

  const EigenPair *warm = &phi;
  for (std::size_t i = 0; i < options.max_bisections; i++)
  {
    const double mid = 0.5 * (lo + hi);
    EigenPair pm = evaluate(mid, warm);
    if (std::abs(pm.lambda - target) <= options.tol_lambda)
    {
      return accept(std::move(pm));
    }
    if (pm.lambda < target)
    {
      lo = mid;
      plo = std::move(pm);
      warm = &plo;
    }
    else
    {
      hi = mid;
      phi = std::move(pm);
      warm = &phi;
    }
    if (hi - lo <= 1e-15 * hi)
    {
      break;
    }
  }
  throw NonConvergence("invert_lambda: bisection stalled before reaching the lambda "
                           "tolerance",
                       std::min(std::abs(plo.lambda - target), std::abs(phi.lambda - target)));
}

}  // namespace convev
