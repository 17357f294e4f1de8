// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "convev/errors.hpp"
#include "convev/kernels.hpp"

using namespace convev;

TEST_CASE("built-in kernels evaluate their closed forms")
{
  const Kernel g = gaussian();
  CHECK(g(0.0) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)));
  CHECK(g(1.3) == doctest::Approx(std::exp(-1.69) / std::sqrt(std::numbers::pi)));
  const Kernel t = tent();
  CHECK(t(0.25) == doctest::Approx(0.75));
  CHECK(t(-1.5) == 0.0);
  const Kernel i = indicator();
  CHECK(i(0.49) == 1.0);
  CHECK(i(-0.5) == 0.5);
  CHECK(i(0.51) == 0.0);
}

TEST_CASE("kernel metadata")
{
  const KernelInfo g = gaussian().info();
  CHECK(g.a2pp.has_value());
  CHECK(*g.a2pp == doctest::Approx(-2.0 / std::sqrt(std::numbers::pi)));
  CHECK(g.second_moment == doctest::Approx(0.5));
  CHECK(g.strictly_unimodal);
  CHECK_FALSE(tent().info().a2pp.has_value());
  CHECK(tent().info().second_moment == doctest::Approx(1.0 / 6.0));
  CHECK(indicator().info().plateau_half_width == 0.5);
  CHECK(indicator().info().second_moment == doctest::Approx(1.0 / 12.0));
  CHECK(default_half_width(gaussian()) == 10.0);
}

TEST_CASE("validate_kernel accepts the built-in kernels")
{
  const Grid g = make_grid(10.0, 1e-3);
  for (const Kernel &k : {gaussian(), tent(), indicator()})
  {
    CAPTURE(k.label());
    const ValidationReport r = validate_kernel(k, g);
    CHECK(r.admissible());
    CHECK(r.normalization_deviation <= 1e-6);
  }
  CHECK(validate_kernel(gaussian(), g).strictly_unimodal);
  CHECK_FALSE(validate_kernel(indicator(), g).strictly_unimodal);
}

TEST_CASE("validate_kernel detects inadmissible kernels")
{
  const Grid g = make_grid(5.0, 1e-3);
  const Kernel shifted([](double x) { return std::exp(-(x - 0.3) * (x - 0.3)) / std::sqrt(std::numbers::pi); },
                       KernelInfo{"shifted"});
  CHECK_FALSE(validate_kernel(shifted, g).even);
  const Kernel bimodal(
      [](double x) { return (std::exp(-(x - 1) * (x - 1)) + std::exp(-(x + 1) * (x + 1))) / (2 * std::sqrt(std::numbers::pi)); },
      KernelInfo{"bimodal"});
  const ValidationReport r = validate_kernel(bimodal, g);
  CHECK(r.even);
  CHECK_FALSE(r.unimodal);
  const Kernel heavy([](double x) { return 2.0 * std::exp(-x * x) / std::sqrt(std::numbers::pi); },
                     KernelInfo{"heavy"});
  CHECK_FALSE(validate_kernel(heavy, g).normalized);
}

TEST_CASE("validate_kernel refuses unresolved grids")
{
  CHECK_THROWS_AS(validate_kernel(gaussian(), make_grid(10.0, 0.05)), ResolutionError);
  CHECK_THROWS_AS(validate_kernel(indicator(), make_grid(10.0, 0.01)), ResolutionError);
}

TEST_CASE("sampled kernels interpolate and mirror one-sided tables")
{
  const Kernel k = sampled_kernel({0.0, 0.5, 1.0}, {1.0, 0.5, 0.0}, "table");
  CHECK(k(0.25) == doctest::Approx(0.75));
  CHECK(k(-0.25) == doctest::Approx(0.75));
  CHECK(k(2.0) == 0.0);
  CHECK(k.info().a0 == 1.0);
  CHECK(k.info().support_half_width == doctest::Approx(0.5));
  CHECK_THROWS_AS(sampled_kernel({0.0, 0.0}, {1.0, 1.0}, "bad"), InvalidParameter);
  CHECK_THROWS_AS(sampled_kernel({0.1, 0.2}, {1.0, 1.0}, "bad"), InvalidParameter);
}

TEST_CASE("kernel CSV round trip through the selector")
{
  const auto dir = std::filesystem::temp_directory_path() / "convev_kernel_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "tent.csv";
  {
    std::ofstream out(path);
    out << "# tent kernel\nx,a\n";
    for (int i = 0; i <= 2000; i++)
    {
      const double x = i * 1e-3;
      out << x << ',' << std::max(0.0, 1.0 - x) << '\n';
    }
  }
  const Kernel k = kernel_from_selector("file:" + path.string());
  CHECK(k(0.3) == doctest::Approx(0.7));
  CHECK(k(-0.3) == doctest::Approx(0.7));
  const ValidationReport r = validate_kernel(k, make_grid(10.0, 1e-3));
  CHECK(r.admissible());
  CHECK_THROWS_AS(kernel_from_selector("lorentzian"), InvalidParameter);
  CHECK_THROWS_AS(kernel_from_selector("file:/nonexistent/kernel.csv"), InvalidParameter);
}

TEST_CASE("kernel convolution reaches every grid offset")
{
  const Grid g = make_grid(3.0, 0.01);
  const GridFn one = GridFn::sample(g, [](double) { return 1.0; });
  const GridFn c = convolve(gaussian(), one);
  // At the centre the whole kernel mass within [-3, 3] is seen.
  CHECK(c[g.center()] == doctest::Approx(std::erf(3.0)).epsilon(1e-6));
  // At the edge only half of it, plus the h a(0) / 2 endpoint excess of the Riemann sum.
  const double edge = 0.5 * std::erf(6.0) + 0.5 * 0.01 / std::sqrt(std::numbers::pi);
  CHECK(c[g.size() - 1] == doctest::Approx(edge).epsilon(1e-6));
}
