// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "convev/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "convev/errors.hpp"
#include "convev/kernel_transform.hpp"
#include "convev/kr_solver.hpp"

namespace convev
{

namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Samples g(x) on 201 points of [-1, 1].
template <typename F>
std::vector<double> sample_unit(F &&g)
{
  constexpr int count = 201;
  std::vector<double> out(count);
  for (int i = 0; i < count; i++)
  {
    out[i] = g(-1.0 + 2.0 * i / (count - 1));
  }
  return out;
}

}  // namespace

ScalingFit fit_power_law(const std::vector<double> &x, const std::vector<double> &y,
                         double predicted_exponent, double predicted_prefactor)
{
  const std::size_t n = x.size();
  if (n != y.size() || n < 4)
  {
    throw InvalidParameter("fit_power_law: need at least 4 (x, y) pairs");
  }
  const bool up = x[1] > x[0];
  for (std::size_t i = 0; i < n; i++)
  {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
    {
      throw DomainError("fit_power_law: data must be positive");
    }
    if (i > 0 && (up ? !(x[i] > x[i - 1]) : !(x[i] < x[i - 1])))
    {
      throw InvalidParameter("fit_power_law: abscissa must be strictly monotone");
    }
  }
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; i++)
  {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; i++)
  {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  ScalingFit f;
  f.abscissa = x;
  f.ordinate = y;
  f.fitted_exponent = sxy / sxx;
  const double intercept = my - f.fitted_exponent * mx;
  f.fitted_prefactor = std::exp(intercept);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; i++)
  {
    const double r = ly[i] - (intercept + f.fitted_exponent * lx[i]);
    ss_res += r * r;
  }
  f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  f.predicted_exponent = predicted_exponent;
  f.predicted_prefactor = predicted_prefactor;
  f.prefactor_at_predicted = std::exp(my - predicted_exponent * mx);
  f.exponent_deviation = f.fitted_exponent - predicted_exponent;
  f.prefactor_deviation = f.prefactor_at_predicted / predicted_prefactor - 1.0;
  f.predicted.resize(n);
  for (std::size_t i = 0; i < n; i++)
  {
    f.predicted[i] = predicted_prefactor * std::pow(x[i], predicted_exponent);
  }
  return f;
}

double cosine_similarity(const std::vector<double> &f, const std::vector<double> &g)
{
  if (f.size() != g.size())
  {
    throw InvalidParameter("cosine_similarity: size mismatch");
  }
  double fg = 0.0, ff = 0.0, gg = 0.0;
  for (std::size_t i = 0; i < f.size(); i++)
  {
    fg += f[i] * g[i];
    ff += f[i] * f[i];
    gg += g[i] * g[i];
  }
  if (ff == 0.0 || gg == 0.0)
  {
    return 0.0;
  }
  return std::abs(fg) / std::sqrt(ff * gg);
}

double half_second_moment(const Kernel &kernel)
{
  return 0.5 * kernel.info().second_moment;
}

SmallSigmaReport check_small_sigma(const Kernel &kernel, const BilinearNonlinearity &params,
                                   const std::vector<double> &sigmas,
                                   const SolveOptions &options)
{
  const auto &a2pp = kernel.info().a2pp;
  if (!a2pp || !(*a2pp < 0.0))
  {
    throw UnsupportedKernel("small-sigma asymptotics need a''(0) < 0; kernel '" +
                            kernel.label() + "' is not smooth at the origin");
  }
  params.validate();
  if (params.zeta != 0.0)
  {
    throw InvalidParameter("small-sigma asymptotics are stated for zeta = 0");
  }
  if (sigmas.size() < 4)
  {
    throw InvalidParameter("small-sigma probe needs at least 4 sigma values");
  }
  for (double s : sigmas)
  {
    if (!(s > 0.0 && s <= params.eta / 10.0))
    {
      throw InvalidParameter("small-sigma probe needs sigma in (0, eta/10]");
    }
  }
  const double a0 = kernel.info().a0;
  const double constant = std::cbrt(3.0 / (2.0 * params.eta * std::abs(*a2pp)));

  SmallSigmaReport r;
  std::vector<double> xi;
  for (double sigma : sigmas)
  {
    const Solution s = solve_sigma(kernel, params, sigma, options);
    xi.push_back(s.xi);
    r.scaled.push_back(s.xi / std::cbrt(sigma));
    r.residuals.push_back(s.residual_rel);
    const Grid &g = s.u.grid();
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); i++)
    {
      sup = std::max(sup, std::abs(s.u[i] - params.theta * kernel(g.point(i)) / a0));
    }
    r.sup_distance.push_back(sup);
    const auto w = sample_unit([&](double t) { return s.u.interpolate(s.xi * t) - params.theta; });
    const auto p = sample_unit([](double t) { return 1.0 - t * t; });
    r.shape_similarity.push_back(cosine_similarity(w, p));
  }
  r.fit = fit_power_law(sigmas, xi, 1.0 / 3.0, constant);
  return r;
}

LargeSigmaReport check_large_sigma(const Kernel &kernel, const BilinearNonlinearity &params,
                                   const std::vector<double> &gaps,
                                   const SolveOptions &options)
{
  params.validate();
  if (gaps.size() < 4)
  {
    throw InvalidParameter("large-sigma probe needs at least 4 gap values");
  }
  for (double g : gaps)
  {
    if (!(g > 0.0 && g < params.eta))
    {
      throw AdmissibilityError("large-sigma probe needs 0 < zeta + eta - sigma < eta");
    }
  }
  LargeSigmaReport r;

  // Working kernel in the limit sigma -> zeta + eta.
  const double base_width =
      options.half_width > 0.0 ? options.half_width : default_half_width(kernel);
  std::optional<Kernel> limit_kernel;
  if (params.zeta > 0.0)
  {
    const double mu = params.zeta / (params.zeta + params.eta);
    const double w = std::max(base_width, recommended_half_width(kernel, mu, options.tol.transform));
    limit_kernel = transform_kernel(kernel, mu, make_grid(w, options.h), options.tol.transform)
                       .kernel();
  }
  const Kernel &work = limit_kernel ? *limit_kernel : kernel;
  r.m_analytic = half_second_moment(work);

  const double min_gap = *std::min_element(gaps.begin(), gaps.end());
  const double xi_max = std::numbers::pi * std::sqrt(r.m_analytic * params.eta / min_gap);
  SolveOptions opts = options;
  opts.half_width = std::max({base_width, 1.25 * xi_max + 10.0, r.tail_xi + 10.0});

  const Grid tail_grid = make_grid(opts.half_width, options.h);
  PowerOptions popts;
  popts.tol = options.tol.power;
  const EigenPair tail = power_method(work, tail_grid, r.tail_xi, popts);
  r.tail_lambda = tail.lambda;
  r.m_tail = (1.0 - tail.lambda) * r.tail_xi * r.tail_xi / (std::numbers::pi * std::numbers::pi);

  std::vector<double> xi, norms;
  for (double gap : gaps)
  {
    const double sigma = params.zeta + params.eta - gap;
    const Solution s = solve_sigma(kernel, params, sigma, opts);
    xi.push_back(s.xi);
    norms.push_back(norm2(s.u));
    r.scaled.push_back(std::sqrt(gap) * s.xi);
    r.residuals.push_back(s.residual_rel);
    const auto w = sample_unit([&](double t) { return s.u.interpolate(s.xi * t); });
    const auto c = sample_unit([](double t) { return 1.0 + std::cos(std::numbers::pi * t); });
    r.shape_similarity.push_back(cosine_similarity(w, c));
  }
  const double constant = std::numbers::pi * std::sqrt(r.m_analytic * params.eta);
  r.xi_fit = fit_power_law(gaps, xi, -0.5, constant);
  r.norm_fit = fit_power_law(gaps, norms, -0.75, nan);
  const std::size_t imin =
      static_cast<std::size_t>(std::min_element(gaps.begin(), gaps.end()) - gaps.begin());
  r.m_scaling = r.scaled[imin] * r.scaled[imin] /
                (std::numbers::pi * std::numbers::pi * params.eta);
  return r;
}

KappaReport check_kappa(const Kernel &kernel, const BilinearNonlinearity &params,
                        const std::vector<double> &gaps, const SolveOptions &options,
                        double window)
{
  params.validate();
  if (!(params.zeta > 0.0))
  {
    throw InvalidParameter("kappa probe needs zeta > 0");
  }
  KappaReport r;
  r.gaps = gaps;
  r.window = window;
  if (kernel.label() == "gaussian")
  {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    r.kappa0_reference = 1.0 / std::sqrt(params.zeta);
    r.kappa2_reference = 2.0 * std::riemann_zeta(1.5) / (sqrt_pi * params.zeta);
    r.xi_limit = std::cbrt(3.0 / (2.0 * params.eta * r.kappa2_reference));
  }
  else
  {
    r.kappa0_reference = r.kappa2_reference = r.xi_limit = nan;
  }
  for (double gap : gaps)
  {
    const double sigma = params.zeta + gap;
    if (!(params.zeta / sigma <= max_mu))
    {
      throw OutOfRange("kappa probe: sigma - zeta = " + std::to_string(gap) +
                       " puts mu above the transform cap");
    }
    const Solution s = solve_sigma(kernel, params, sigma, options);
    const TransformRecord &t = *s.transform;
    MomentData m;
    m.m = 0.5 * t.second_moment;
    m.a0 = t.a0;
    m.a2pp = t.a2pp;
    m.kappa0 = t.a0 / std::sqrt(gap);
    m.kappa2 = std::abs(t.a2pp) / gap;
    r.moments.push_back(m);
    r.xi.push_back(s.xi);
    r.residuals.push_back(s.residual_rel);
    const Grid &g = s.u.grid();
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); i++)
    {
      if (std::abs(g.point(i)) <= window)
      {
        sup = std::max(sup, std::abs(s.u[i] - params.theta));
      }
    }
    r.sup_distance.push_back(sup);
  }
  r.kappa0_extrapolated = r.kappa2_extrapolated = nan;
  if (gaps.size() >= 2)
  {
    const std::size_t n = gaps.size();
    const double s1 = std::sqrt(gaps[n - 2]), s2 = std::sqrt(gaps[n - 1]);
    auto extrapolate = [&](double e1, double e2) { return (e2 * s1 - e1 * s2) / (s1 - s2); };
    r.kappa0_extrapolated = extrapolate(r.moments[n - 2].kappa0, r.moments[n - 1].kappa0);
    r.kappa2_extrapolated = extrapolate(r.moments[n - 2].kappa2, r.moments[n - 1].kappa2);
  }
  return r;
}

}  // namespace convev
