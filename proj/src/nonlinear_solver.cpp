// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "convev/nonlinear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "convev/errors.hpp"
#include "convev/io.hpp"
#include "convev/kernel_transform.hpp"
#include "convev/kr_solver.hpp"

namespace convev
{

void BilinearNonlinearity::validate() const
{
  if (!(zeta >= 0.0) || !std::isfinite(zeta))
  {
    throw InvalidParameter("zeta must be finite and >= 0");
  }
  if (!(theta > 0.0) || !std::isfinite(theta))
  {
    throw InvalidParameter("theta must be finite and > 0");
  }
  if (!(eta > 0.0) || !std::isfinite(eta))
  {
    throw InvalidParameter("eta must be finite and > 0");
  }
}

double eval_f(const BilinearNonlinearity &p, double r)
{
  if (r < 0.0)
  {
    throw DomainError("eval_f: negative argument " + format_double(r));
  }
  if (r <= p.theta)
  {
    return p.zeta * r;
  }
  return (p.zeta + p.eta) * (r - p.theta) + p.zeta * p.theta;
}

bool admissible(const BilinearNonlinearity &p, double sigma)
{
  return sigma > p.zeta && sigma < p.zeta + p.eta;
}

GridFn apply_f(const BilinearNonlinearity &params, const GridFn &u)
{
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); i++)
  {
    out[i] = eval_f(params, u[i]);
  }
  return GridFn(u.grid(), std::move(out));
}

double residual(const Kernel &kernel, const BilinearNonlinearity &params, double sigma,
                const GridFn &u)
{
  const GridFn af = convolve(kernel, apply_f(params, u));
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u.size(); i++)
  {
    const double su = sigma * u[i];
    num += (su - af[i]) * (su - af[i]);
    den += su * su;
  }
  const double h = u.grid().spacing();
  return std::sqrt(h * num) / std::max(std::sqrt(h * den), 1e-300);
}

Solution solve_sigma(const Kernel &kernel, const BilinearNonlinearity &params, double sigma,
                     const SolveOptions &options)
{
  params.validate();
  if (!admissible(params, sigma))
  {
    throw AdmissibilityError(
        "sigma = " + format_double(sigma) + " is outside the admissible interval (" +
        format_double(params.zeta) + ", " + format_double(params.zeta + params.eta) +
        "); no unimodal solution exists for sigma <= zeta or sigma >= zeta + eta");
  }
  const double h = options.h;
  const double base_width =
      options.half_width > 0.0 ? options.half_width : default_half_width(kernel);

  Solution s;
  s.sigma = sigma;
  s.params = params;
  s.kernel_label = kernel.label();
  s.options = options;

  // Working system: (a, sigma) for zeta = 0, (a~, sigma - zeta) otherwise.
  std::optional<Kernel> transformed;
  double sigma_work = sigma;
  double width = base_width;
  if (params.zeta > 0.0)
  {
    const TransformParameters tp = transform_parameters(sigma, params.zeta);
    sigma_work = tp.sigma_tilde;
    width = std::max(width, recommended_half_width(kernel, tp.mu, options.tol.transform));
    const TransformedKernel tk =
        transform_kernel(kernel, tp.mu, make_grid(width, h), options.tol.transform);
    transformed = tk.kernel();
    s.transform = TransformRecord{tp.mu,
                                  tk.truncation_depth(),
                                  tk.truncation_bound(),
                                  tk.renormalization(),
                                  tk.a0(),
                                  tk.a2pp(),
                                  tk.second_moment()};
  }
  const Kernel &work = transformed ? *transformed : kernel;
  const Grid grid = make_grid(width, h);
  s.options.half_width = grid.half_width();

  s.lambda_target = sigma_work / params.eta;
  InversionOptions inv_opts;
  inv_opts.tol_lambda = options.tol.bisect;
  inv_opts.power.tol = options.tol.power;
  const Inversion inv = invert_lambda(work, grid, s.lambda_target, inv_opts);
  s.xi = inv.xi;
  s.lambda = inv.pair.lambda;
  s.power_iterations = inv.pair.iterations;
  s.power_residual = inv.pair.residual;

  const Cutoff cutoff(s.xi, h);
  s.v = effective_profile(cutoff, inv.pair.v);

  // u~ at node i >= 0 is -h times the sum of the cells right of it; zero from xi on.
  const std::size_t n_half = grid.half_count();
  const std::size_t c = grid.center();
  if (s.v.size() > n_half)
  {
    throw GridTooSmall("solve_sigma: cut-off exceeds the grid; enlarge L");
  }
  std::vector<double> ut(grid.size(), 0.0);
  double tail = 0.0;
  for (std::size_t j = s.v.size(); j-- > 0;)
  {
    tail -= h * s.v[j];
    ut[c + j] = tail;
    ut[c - j] = tail;
  }
  s.u_tilde = GridFn(grid, std::move(ut));

  const GridFn conv = convolve(work, s.u_tilde);
  const double at_xi = conv.interpolate(s.xi);
  if (!(at_xi > 0.0))
  {
    throw NonConvergence("solve_sigma: (a * u~)(xi) is not positive", at_xi);
  }
  s.tau = params.theta / at_xi;
  std::vector<double> u(grid.size());
  for (std::size_t i = 0; i < u.size(); i++)
  {
    // Clamp FFT roundoff in the far tails; u is nonnegative by construction.
    u[i] = std::max(0.0, s.tau * conv[i]);
  }
  // The exact solution is even; average mirrored nodes so roundoff does not break that.
  for (std::size_t i = 0, j = u.size() - 1; i < j; i++, j--)
  {
    const double m = 0.5 * (u[i] + u[j]);
    u[i] = m;
    u[j] = m;
  }
  s.u = GridFn(grid, std::move(u));
  s.residual_rel = residual(kernel, params, sigma, s.u);
  return s;
}

GridFn derivative_profile(const Solution &s)
{
  return s.v.to_grid(s.u.grid());
}

std::vector<SweepEntry> sweep(const Kernel &kernel, const BilinearNonlinearity &params,
                              const std::vector<double> &sigmas, const SolveOptions &options)
{
  std::vector<SweepEntry> out;
  out.reserve(sigmas.size());
  for (double sigma : sigmas)
  {
    SweepEntry e;
    e.sigma = sigma;
    try
    {
      const Solution s = solve_sigma(kernel, params, sigma, options);
      e.ok = true;
      e.xi = s.xi;
      e.lambda = s.lambda;
      e.tau = s.tau;
      e.u_norm2 = norm2(s.u);
      e.u_norm_inf = norm_inf(s.u);
      e.residual_rel = s.residual_rel;
    }
    catch (const Error &err)
    {
      e.error = err.what();
      e.xi = e.lambda = e.tau = e.u_norm2 = e.u_norm_inf = e.residual_rel =
          std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace convev
