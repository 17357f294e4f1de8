// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "convev/errors.hpp"
#include "convev/kernel_transform.hpp"
#include "oracles.hpp"

using namespace convev;

TEST_CASE("transform_parameters")
{
  const TransformParameters p = transform_parameters(2.0, 1.0);
  CHECK(p.sigma_tilde == 1.0);
  CHECK(p.mu == 0.5);
  const TransformParameters q = transform_parameters(1.7, 0.0);
  CHECK(q.sigma_tilde == 1.7);
  CHECK(q.mu == 0.0);
  CHECK_THROWS_AS(transform_parameters(1.0, 1.0), AdmissibilityError);
  CHECK_THROWS_AS(transform_parameters(0.5, 1.0), AdmissibilityError);
}

TEST_CASE("truncation depth meets the geometric tail bound")
{
  CHECK(truncation_depth(0.0, 1e-8) == 0);
  for (double mu : {0.1, 0.5, 0.9, 0.99})
  {
    const std::size_t k = truncation_depth(mu, 1e-8);
    CHECK(std::pow(mu, k + 1) / (1 - mu) < 1e-8);
    // Smallest K with mu^K / (1 - mu) <= tol.
    CHECK(std::pow(mu, k) / (1 - mu) <= 1e-8 * (1 + 1e-12));
    CHECK(std::pow(mu, k - 1) / (1 - mu) > 1e-8);
  }
}

TEST_CASE("mu = 0 reproduces the kernel exactly")
{
  const Grid g = make_grid(10.0, 1e-2);
  const TransformedKernel tk = transform_kernel(gaussian(), 0.0, g);
  CHECK(tk.truncation_depth() == 0);
  const GridFn a = gaussian().sample(g);
  for (std::size_t i = 0; i < g.size(); i++)
  {
    CHECK(tk.samples()[i] == a[i]);
  }
}

TEST_CASE("Gaussian transform against the closed-form convolution powers")
{
  const double mu = 0.5;
  const Grid g = make_grid(recommended_half_width(gaussian(), mu, 1e-8), 1e-2);
  const TransformedKernel tk = transform_kernel(gaussian(), mu, g, 1e-8);
  CHECK(quadrature(tk.samples()) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(tk.renormalization() - 1.0) <= 1e-7);
  const int depth = static_cast<int>(tk.truncation_depth());
  for (double x : {0.0, 0.3, 1.0, 2.5, 5.0})
  {
    CHECK(tk.samples().interpolate(x) ==
          doctest::Approx(oracle::gaussian_transformed(mu, depth, x)).epsilon(1e-7));
  }
  CHECK(tk.a0() < gaussian()(0.0));
  CHECK(tk.second_moment() > gaussian().info().second_moment);
  // a~''(0) from the closed form: sum of (1 - mu) mu^k (-2 / k) / sqrt(k pi), k = K + 1.
  double a2 = 0.0, c = 1.0 - mu;
  for (int k = 1; k <= depth + 1; k++)
  {
    a2 += c * (-2.0 / k) / std::sqrt(k * std::numbers::pi);
    c *= mu;
  }
  CHECK(tk.a2pp() == doctest::Approx(a2).epsilon(1e-5));
}

TEST_CASE("transformed kernels stay admissible and erase plateaus")
{
  for (const Kernel &k : {gaussian(), tent(), indicator()})
  {
    for (double mu : {0.1, 0.5, 0.9})
    {
      CAPTURE(k.label());
      CAPTURE(mu);
      const Grid g = make_grid(recommended_half_width(k, mu, 1e-8), 5e-3);
      const TransformedKernel tk = transform_kernel(k, mu, g, 1e-8);
      CHECK(quadrature(tk.samples()) == doctest::Approx(1.0).epsilon(1e-6));
      const GridFn &s = tk.samples();
      bool even = true, strict = true;
      for (std::size_t i = 0; i < g.center(); i++)
      {
        even = even && s[i] == s[g.size() - 1 - i];
        CHECK(s[i] >= 0.0);
      }
      for (std::size_t i = g.center() + 1; i < g.size(); i++)
      {
        if (s[i] > 1e-10)
        {
          strict = strict && s[i] < s[i - 1];
        }
      }
      CHECK(even);
      CHECK(strict);
      CHECK(tk.kernel().info().strictly_unimodal);
      CHECK(tk.kernel().info().plateau_half_width == 0.0);
      CHECK(tk.second_moment() > k.info().second_moment);
    }
  }
}

TEST_CASE("mass leakage is reported as a grid problem")
{
  CHECK_THROWS_AS(transform_kernel(gaussian(), 0.9, make_grid(10.0, 1e-2), 1e-8), GridTooSmall);
  CHECK_THROWS_AS(transform_kernel(gaussian(), 0.9995, make_grid(10.0, 1e-2), 1e-8), OutOfRange);
}

TEST_CASE("resolvent check: series and Picard agree")
{
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double mu : {0.1, 0.5, 0.9})
  {
    const Grid g = make_grid(recommended_half_width(gaussian(), mu, 1e-8), 1e-2);
    for (int trial = 0; trial < 10; trial++)
    {
      const double c1 = u(rng) * 4 - 2, c2 = u(rng) * 4 - 2, w = 0.2 + u(rng);
      const GridFn gfun = GridFn::sample(g, [&](double x) {
        return std::exp(-(x - c1) * (x - c1) / w) + 0.5 * std::exp(-(x - c2) * (x - c2));
      });
      const ResolventCheck r = resolvent_check(gaussian(), mu, gfun);
      CAPTURE(mu);
      CHECK(r.relative_difference < 1e-6);
    }
  }
  const Grid g = make_grid(10.0, 1e-2);
  const ResolventCheck zero = resolvent_check(gaussian(), 0.5, GridFn::zeros(g));
  CHECK(norm_inf(zero.direct) == 0.0);
  CHECK(norm_inf(zero.series) == 0.0);
  const GridFn gg = gaussian().sample(g);
  const ResolventCheck identity = resolvent_check(gaussian(), 0.0, gg);
  CHECK(identity.relative_difference < 1e-12);
}
