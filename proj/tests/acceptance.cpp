// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

//
// Acceptance suite. Prints one PASS/FAIL line per criterion with the measured values and
// exits nonzero if any criterion fails. Reference values come from closed forms and from
// the dense oracle in oracles.cpp, never from the solver under test.
//

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "convev/asymptotics.hpp"
#include "convev/io.hpp"
#include "convev/kernel_transform.hpp"
#include "convev/kr_solver.hpp"
#include "convev/nonlinear_solver.hpp"
#include "oracles.hpp"

using namespace convev;

namespace
{

constexpr double pi = std::numbers::pi;

struct Outcome
{
  bool pass = true;
  std::string details;

  // Records a sub-check; failed sub-checks are marked in the details.
  void check(bool ok, const std::string &what)
  {
    pass = pass && ok;
    details += (details.empty() ? "" : "; ") + what + (ok ? "" : " [FAIL]");
  }
  void note(const std::string &what) { details += (details.empty() ? "" : "; ") + what; }
};

std::string fmt(double x, int digits = 4)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool strictly_increasing(const std::vector<double> &v)
{
  for (std::size_t i = 1; i < v.size(); i++)
  {
    if (!(v[i] > v[i - 1]))
    {
      return false;
    }
  }
  return true;
}

bool strictly_decreasing(const std::vector<double> &v)
{
  for (std::size_t i = 1; i < v.size(); i++)
  {
    if (!(v[i] < v[i - 1]))
    {
      return false;
    }
  }
  return true;
}

std::string list(const std::vector<double> &v, int digits = 4)
{
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); i++)
  {
    s += (i ? ", " : "") + fmt(v[i], digits);
  }
  return s + "]";
}

const BilinearNonlinearity fig2{0.0, 0.6, 2.5};
const BilinearNonlinearity fig8{1.0, 0.6, 2.5};
const std::vector<double> fig2_sigmas{0.5, 1.0, 1.5, 2.0};

// Solutions of criterion 6, reused by criterion 11.
std::vector<Solution> fig2_solutions;

Outcome criterion_1()
{
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> xis{0.25, 0.5, 1, 2, 4, 8, 16};
  const EigenCurve c = eigencurve(gaussian(), make_grid(16.0, 2e-3), xis);
  std::vector<double> lambda;
  bool ok = true;
  for (const auto &e : c.entries)
  {
    ok = ok && e.error.empty();
    lambda.push_back(e.lambda);
  }
  o.check(ok, "all entries converged");
  o.check(strictly_increasing(lambda), "strictly increasing " + list(lambda, 6));
  bool inside = true;
  for (double l : lambda)
  {
    inside = inside && l > 0.0 && l < 1.0;
  }
  o.check(inside, "all in (0,1)");
  o.check(lambda.back() > 0.98, "lambda(16) = " + fmt(lambda.back(), 6) + " > 0.98");
  const double t = seconds_since(t0);
  o.check(t < 120.0, "runtime " + fmt(t, 3) + " s < 120 s");
  return o;
}

Outcome criterion_2()
{
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const Grid grid = make_grid(1.0, 1e-4);
  std::vector<double> xis, lambda;
  for (int i = 0; i <= 6; i++)
  {
    xis.push_back(0.05 + 0.025 * i);
    lambda.push_back(power_method(gaussian(), grid, xis.back()).lambda);
  }
  const double predicted = 4.0 / (3.0 * std::sqrt(pi));  // (2/3)|a''(0)|
  const ScalingFit f = fit_power_law(xis, lambda, 3.0, predicted);
  o.check(std::abs(f.fitted_exponent - 3.0) <= 0.1,
          "slope " + fmt(f.fitted_exponent, 5) + " = 3 +- 0.1");
  o.check(std::abs(f.prefactor_deviation) <= 0.05,
          "prefactor " + fmt(f.prefactor_at_predicted, 5) + " vs " + fmt(predicted, 5) + " (" +
              fmt(100 * f.prefactor_deviation, 3) + "%, within 5%)");
  o.note("free-fit prefactor " + fmt(f.fitted_prefactor, 4) + ", R^2 " + fmt(f.r_squared, 6));
  const double t = seconds_since(t0);
  o.check(t < 60.0, "runtime " + fmt(t, 3) + " s < 60 s");
  return o;
}

Outcome criterion_3()
{
  Outcome o;
  const EigenPair p = power_method(gaussian(), make_grid(25.0, 0.01), 20.0);
  const double tail = (1.0 - p.lambda) * 400.0;
  const double predicted = pi * pi / 4.0;
  const double dev = tail / predicted - 1.0;
  o.check(std::abs(dev) <= 0.05, "(1-lambda) xi^2 = " + fmt(tail, 6) + " vs pi^2/4 = " +
                                     fmt(predicted, 6) + " (" + fmt(100 * dev, 3) + "%)");
  o.note("lambda(20) = " + fmt(p.lambda, 8));
  return o;
}

Outcome criterion_4()
{
  Outcome o;
  const Grid grid = make_grid(2.0, 0.01);  // 201 nodes on the closed half-line [0, 2]
  double worst = 0.0;
  for (const Kernel &k : {gaussian(), tent(), indicator()})
  {
    for (double xi : {0.5, 1.0, 2.0})
    {
      const EigenPair p = power_method(k, grid, xi);
      const oracle::DenseEigen d =
          oracle::dense_cutoff_eigen([&](double x) { return k(x); }, grid.spacing(), xi);
      worst = std::max(worst, std::abs(p.lambda - d.lambda));
    }
  }
  o.check(worst <= 1e-8, "max |lambda_power - lambda_dense| = " + fmt(worst, 3) +
                             " over 3 kernels x 3 xi (<= 1e-8)");
  return o;
}

Outcome criterion_5()
{
  Outcome o;
  const Grid grid = make_grid(10.0, 1e-3);
  double worst = 0.0;
  for (double xi : {0.1, 0.2, 0.25})
  {
    worst = std::max(worst, power_method(indicator(), grid, xi).lambda);
  }
  o.check(worst <= 1e-12, "max lambda on {0.1,0.2,0.25} = " + fmt(worst, 3));
  const double l3 = power_method(indicator(), grid, 0.3).lambda;
  o.check(l3 > 1e-4, "lambda(0.3) = " + fmt(l3, 5) + " > 1e-4");
  const EigenPair p = power_method(indicator(), grid, 0.35);
  double flat = 0.0;
  for (std::size_t k = 0; k < p.v.size(); k++)
  {
    if (p.v.cell_center(k) < 0.5 - 0.35)
    {
      flat = std::max(flat, std::abs(p.v[k]));
    }
  }
  o.check(flat <= 1e-9, "max |v| on (0, 0.15) at xi = 0.35: " + fmt(flat, 3));
  return o;
}

Outcome criterion_6()
{
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> xi, res;
  bool shape = true, crossing = true;
  for (double sigma : fig2_sigmas)
  {
    fig2_solutions.push_back(solve_sigma(gaussian(), fig2, sigma));
    const Solution &s = fig2_solutions.back();
    xi.push_back(s.xi);
    res.push_back(s.residual_rel);
    const Grid &g = s.u.grid();
    const double h = g.spacing();
    const double top = norm_inf(s.u);
    const std::size_t c = g.center();
    shape = shape && s.u[c] == top;
    for (std::size_t i = 1; i <= c; i++)
    {
      shape = shape && s.u[c + i] == s.u[c - i] && s.u[c + i] <= s.u[c + i - 1] + 1e-9 * top;
    }
    const double slope = std::abs(s.u.interpolate(s.xi + h) - s.u.interpolate(s.xi - h)) / (2 * h);
    crossing = crossing && std::abs(s.u.interpolate(s.xi) - fig2.theta) <= 2 * h * slope;
  }
  double worst = 0.0;
  for (double r : res)
  {
    worst = std::max(worst, r);
  }
  o.check(worst <= 1e-6, "max residual " + fmt(worst, 3) + " <= 1e-6 " + list(res, 3));
  o.check(shape, "u even and unimodal");
  o.check(crossing, "u(xi) = 0.6 within 2h|u'|");
  o.check(strictly_increasing(xi), "xi_sigma increasing " + list(xi, 6));
  const double t = seconds_since(t0);
  o.check(t < 300.0, "runtime " + fmt(t, 3) + " s < 300 s");
  return o;
}

Outcome criterion_7()
{
  Outcome o;
  std::vector<double> res, mass;
  for (double sigma : {1.5, 2.0, 3.0})
  {
    const Solution s = solve_sigma(gaussian(), fig8, sigma);
    res.push_back(s.residual_rel);
    const double mu = fig8.zeta / sigma;
    const Grid g = make_grid(recommended_half_width(gaussian(), mu, 1e-8), 1e-3);
    mass.push_back(quadrature(transform_kernel(gaussian(), mu, g, 1e-8).samples()) - 1.0);
  }
  double worst = 0.0, worst_mass = 0.0;
  for (double r : res)
  {
    worst = std::max(worst, r);
  }
  for (double m : mass)
  {
    worst_mass = std::max(worst_mass, std::abs(m));
  }
  o.check(worst <= 1e-4, "max original-equation residual " + fmt(worst, 3) + " <= 1e-4");
  o.check(worst_mass <= 1e-6, "max |int a~ - 1| = " + fmt(worst_mass, 3));
  double worst_resolvent = 0.0;
  for (double mu : {0.1, 0.5, 0.9})
  {
    const Grid g = make_grid(recommended_half_width(gaussian(), mu, 1e-8), 0.01);
    const ResolventCheck r = resolvent_check(gaussian(), mu, gaussian().sample(g));
    worst_resolvent = std::max(worst_resolvent, r.relative_difference);
  }
  o.check(worst_resolvent <= 1e-6,
          "max resolvent mismatch " + fmt(worst_resolvent, 3) + " at mu in {0.1,0.5,0.9}");
  return o;
}

Outcome criterion_8()
{
  Outcome o;
  const std::vector<double> sigmas{0.02, 0.04, 0.06, 0.08, 0.1};
  const SmallSigmaReport r = check_small_sigma(gaussian(), fig2, sigmas);
  o.check(std::abs(r.fit.fitted_exponent - 1.0 / 3.0) <= 0.05,
          "exponent " + fmt(r.fit.fitted_exponent, 4) + " = 1/3 +- 0.05");
  o.check(r.fit.r_squared >= 0.99, "R^2 " + fmt(r.fit.r_squared, 6));
  const double dev = r.scaled.front() / r.fit.predicted_prefactor - 1.0;
  o.check(std::abs(dev) <= 0.1, "sigma^(-1/3) xi at 0.02 = " + fmt(r.scaled.front(), 5) +
                                    " vs " + fmt(r.fit.predicted_prefactor, 5) + " (" +
                                    fmt(100 * dev, 3) + "%)");
  // Decreasing as sigma decreases, i.e. increasing along the increasing sigma list.
  o.check(strictly_increasing(r.sup_distance),
          "sup|u - theta a/a(0)| decreasing as sigma -> 0 " + list(r.sup_distance, 3));
  return o;
}

Outcome criterion_9()
{
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  SolveOptions opts;
  opts.h = 0.01;
  const std::vector<double> gaps{0.2, 0.1, 0.05, 0.025};
  const LargeSigmaReport r = check_large_sigma(gaussian(), fig2, gaps, opts);
  const double predicted = pi * std::sqrt(0.25 * 2.5);
  const double dev = r.scaled.back() / predicted - 1.0;
  o.check(std::abs(dev) <= 0.1, "(eta-sigma)^(1/2) xi at 0.025 = " + fmt(r.scaled.back(), 5) +
                                    " vs " + fmt(predicted, 5) + " (" + fmt(100 * dev, 3) +
                                    "%)");
  o.check(std::abs(r.norm_fit.fitted_exponent + 0.75) <= 0.08,
          "||u||_2 exponent " + fmt(r.norm_fit.fitted_exponent, 4) + " = -3/4 +- 0.08");
  o.note("diagnostic: -5/4 from the mass identity, deviation " +
         fmt(r.norm_fit.fitted_exponent + 1.25, 3));
  double worst_shape = 1.0;
  for (double c : r.shape_similarity)
  {
    worst_shape = std::min(worst_shape, c);
  }
  o.check(worst_shape >= 0.99, "min |cos(u(xi x), 1+cos(pi x))| = " + fmt(worst_shape, 5));
  const double routes = std::abs(r.m_tail / r.m_scaling - 1.0);
  o.check(routes <= 0.1, "m routes: tail " + fmt(r.m_tail, 4) + ", scaling " +
                             fmt(r.m_scaling, 4) + " (" + fmt(100 * routes, 3) + "% apart)");
  const double t = seconds_since(t0);
  o.check(t < 600.0, "runtime " + fmt(t, 3) + " s < 600 s");
  return o;
}

// Monotone along the list and moving toward the target.
bool monotone_toward(const std::vector<double> &v, double target)
{
  for (std::size_t i = 1; i < v.size(); i++)
  {
    const bool same_side = (v[i] - v[i - 1]) * (target - v[i - 1]) > 0.0;
    if (!same_side || !(std::abs(target - v[i]) < std::abs(target - v[i - 1])))
    {
      return false;
    }
  }
  return true;
}

Outcome criterion_10()
{
  Outcome o;
  const std::vector<double> gaps{0.2, 0.1, 0.05};
  const KappaReport r = check_kappa(gaussian(), fig8, gaps);
  std::vector<double> k0, k2;
  for (const auto &m : r.moments)
  {
    k0.push_back(m.kappa0);
    k2.push_back(m.kappa2);
  }
  o.check(monotone_toward(k0, r.kappa0_reference),
          "kappa0 " + list(k0) + " monotone toward " + fmt(r.kappa0_reference));
  const double d0 = k0.back() / r.kappa0_reference - 1.0;
  o.check(std::abs(d0) <= 0.15, "final kappa0 within 15% (" + fmt(100 * d0, 3) + "%)");
  o.check(monotone_toward(k2, r.kappa2_reference),
          "kappa2 " + list(k2) + " monotone toward " + fmt(r.kappa2_reference));
  const double d2 = k2.back() / r.kappa2_reference - 1.0;
  o.check(std::abs(d2) <= 0.15, "final kappa2 within 15% (" + fmt(100 * d2, 3) + "%)");
  o.check(strictly_decreasing(r.sup_distance),
          "sup_{|x|<=2}|u - theta| decreasing " + list(r.sup_distance, 3));
  o.note("diagnostic extrapolation in (sigma-zeta)^(1/2): kappa0 " +
         fmt(r.kappa0_extrapolated) + ", kappa2 " + fmt(r.kappa2_extrapolated));
  return o;
}

Outcome criterion_11()
{
  Outcome o;
  double worst = 1.0;
  for (const Solution &s : fig2_solutions)
  {
    const Grid &g = s.u.grid();
    const double h = g.spacing();
    const GridFn v = derivative_profile(s);
    std::vector<double> du, vv;
    for (std::size_t i = 1; i + 1 < g.size(); i++)
    {
      if (std::abs(g.point(i)) < s.xi - h)
      {
        du.push_back((s.u[i + 1] - s.u[i - 1]) / (2 * h));
        vv.push_back(v[i]);
      }
    }
    worst = std::min(worst, cosine_similarity(du, vv));
  }
  o.check(!fig2_solutions.empty(), "solutions of criterion 6 available");
  o.check(worst >= 1 - 1e-4, "min |cos(chi u', v)| = 1 - " + fmt(1 - worst, 3));
  return o;
}

int run_cli(const std::string &args)
{
  const std::string cmd = std::string(CONVEV_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path &p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion_12()
{
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path root = CONVEV_ACCEPTANCE_TMP;
  std::vector<std::string> files{"eigencurve.csv"};
  for (double s : fig2_sigmas)
  {
    files.push_back("solution_" + format_double(s) + ".csv");
  }
  bool ran = true;
  for (const char *run : {"a", "b"})
  {
    const fs::path dir = root / run;
    fs::remove_all(dir);
    ran = ran && run_cli("eigencurve --h 2e-3 --xi 0.25,0.5,1,2,4,8,16 --out " +
                         dir.string()) == 0;
    for (double s : fig2_sigmas)
    {
      ran = ran && run_cli("--zeta 0 --theta 0.6 --eta 2.5 solve --sigma " + format_double(s) +
                           " --out " + dir.string()) == 0;
    }
  }
  o.check(ran, "CLI runs succeeded");
  std::size_t same = 0;
  for (const auto &f : files)
  {
    const std::string a = slurp(root / "a" / f), b = slurp(root / "b" / f);
    same += (!a.empty() && a == b) ? 1 : 0;
  }
  o.check(same == files.size(), std::to_string(same) + "/" + std::to_string(files.size()) +
                                    " CSVs byte-identical across runs");
  return o;
}

}  // namespace

int main()
{
  struct Criterion
  {
    int id;
    const char *title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "eigencurve monotonicity and limits", criterion_1},
      {2, "small-xi cubic law", criterion_2},
      {3, "large-xi tail", criterion_3},
      {4, "oracle equivalence", criterion_4},
      {5, "degenerate indicator regime", criterion_5},
      {6, "nonlinear construction residual", criterion_6},
      {7, "transform equivalence", criterion_7},
      {8, "small-sigma scaling", criterion_8},
      {9, "large-sigma scaling", criterion_9},
      {10, "kappa probes", criterion_10},
      {11, "derivative-profile proportionality", criterion_11},
      {12, "determinism", criterion_12},
  };
  int failures = 0;
  for (const auto &c : criteria)
  {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = c.run();
    }
    catch (const std::exception &e)
    {
      o.pass = false;
      o.details = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d %s  %s (%.1f s): %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                seconds_since(t0), o.details.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
