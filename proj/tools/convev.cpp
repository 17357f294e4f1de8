// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

//
// Command-line driver: eigencurves, nonlinear solutions, sweeps, transformed kernels and
// asymptotic probes. Every command writes CSV files (plus JSON sidecars where scalars are
// involved) into --out.
//

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "convev/asymptotics.hpp"
#include "convev/errors.hpp"
#include "convev/io.hpp"
#include "convev/kernel_transform.hpp"
#include "convev/kr_solver.hpp"
#include "convev/nonlinear_solver.hpp"

namespace
{

using convev::format_double;
using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_invalid = 2;

struct RunConfig
{
  std::string kernel = "gaussian";
  convev::BilinearNonlinearity params;
  double h = 1e-3;
  double half_width = 0.0;  // 0: kernel default
  convev::Tolerances tol;
  std::string out = ".";
};

// Thrown for parameter problems detected by the driver itself.
struct UsageError : convev::InvalidParameter
{
  using convev::InvalidParameter::InvalidParameter;
};

std::string header_line(const RunConfig &c, const std::string &command)
{
  return "convev " CONVEV_VERSION " | command=" + command + " | kernel=" + c.kernel +
         " | zeta=" + format_double(c.params.zeta) + " theta=" + format_double(c.params.theta) +
         " eta=" + format_double(c.params.eta) + " | h=" + format_double(c.h) +
         " L=" + (c.half_width > 0.0 ? format_double(c.half_width) : std::string("auto")) +
         " | tol_power=" + format_double(c.tol.power) +
         " tol_bisect=" + format_double(c.tol.bisect) +
         " tol_transform=" + format_double(c.tol.transform);
}

json config_json(const RunConfig &c, const std::string &command)
{
  json j;
  j["version"] = CONVEV_VERSION;
  j["command"] = command;
  j["kernel"] = c.kernel;
  j["zeta"] = c.params.zeta;
  j["theta"] = c.params.theta;
  j["eta"] = c.params.eta;
  j["h"] = c.h;
  j["tol_power"] = c.tol.power;
  j["tol_bisect"] = c.tol.bisect;
  j["tol_transform"] = c.tol.transform;
  return j;
}

// NaN and infinities are not valid JSON numbers.
json number(double x)
{
  return std::isfinite(x) ? json(x) : json(nullptr);
}

convev::SolveOptions solve_options(const RunConfig &c)
{
  convev::SolveOptions o;
  o.h = c.h;
  o.half_width = c.half_width;
  o.tol = c.tol;
  return o;
}

std::filesystem::path output_path(const RunConfig &c, const std::string &name)
{
  std::filesystem::create_directories(c.out);
  return std::filesystem::path(c.out) / name;
}

void write_json(const std::filesystem::path &path, const json &j)
{
  convev::write_text_file(path, j.dump(2) + "\n");
}

void validate_common(const RunConfig &c)
{
  c.params.validate();
  if (!(c.h > 0.0) || !std::isfinite(c.h))
  {
    throw UsageError("--h must be positive");
  }
  if (c.half_width < 0.0 || !std::isfinite(c.half_width))
  {
    throw UsageError("--L must be positive (or 0 for the default)");
  }
  if (!(c.tol.power > 0.0) || !(c.tol.bisect > 0.0) || !(c.tol.transform > 0.0 && c.tol.transform < 1.0))
  {
    throw UsageError("tolerances must be positive (and --tol-transform < 1)");
  }
}

convev::Grid working_grid(const RunConfig &c, const convev::Kernel &k, double minimum = 0.0)
{
  const double width = c.half_width > 0.0 ? c.half_width : convev::default_half_width(k);
  return convev::make_grid(std::max(width, minimum), c.h);
}

int cmd_eigencurve(const RunConfig &c, const std::vector<double> &xis)
{
  const convev::Kernel k = convev::kernel_from_selector(c.kernel);
  const double xi_max = xis.empty() ? 0.0 : *std::max_element(xis.begin(), xis.end());
  const convev::Grid grid = working_grid(c, k, c.half_width > 0.0 ? 0.0 : xi_max);
  convev::PowerOptions popts;
  popts.tol = c.tol.power;
  const convev::EigenCurve curve = convev::eigencurve(k, grid, xis, popts);

  convev::CsvWriter csv({"xi", "lambda", "iterations", "residual", "errors"});
  csv.comment(header_line(c, "eigencurve"));
  csv.comment("grid: h=" + format_double(grid.spacing()) +
              " L=" + format_double(grid.half_width()));
  std::size_t failures = 0;
  for (const auto &e : curve.entries)
  {
    failures += e.error.empty() ? 0 : 1;
    csv.row({e.xi, e.lambda, static_cast<double>(e.iterations), e.residual}, e.error);
  }
  const auto path = output_path(c, "eigencurve.csv");
  csv.save(path);
  std::cout << "wrote " << path.string() << '\n';
  return (!xis.empty() && failures == xis.size()) ? exit_failure : exit_ok;
}

int cmd_solve(const RunConfig &c, double sigma)
{
  const convev::Kernel k = convev::kernel_from_selector(c.kernel);
  const convev::Solution s = convev::solve_sigma(k, c.params, sigma, solve_options(c));
  const convev::GridFn fu = convev::apply_f(c.params, s.u);
  const convev::GridFn v = convev::derivative_profile(s);
  const convev::Grid &grid = s.u.grid();

  convev::CsvWriter csv({"x", "u", "f_of_u", "v"});
  csv.comment(header_line(c, "solve"));
  csv.comment("sigma=" + format_double(sigma) + " xi=" + format_double(s.xi) +
              " grid: h=" + format_double(grid.spacing()) +
              " L=" + format_double(grid.half_width()));
  for (std::size_t i = 0; i < grid.size(); i++)
  {
    csv.row({grid.point(i), s.u[i], fu[i], v[i]});
  }
  const std::string stem = "solution_" + format_double(sigma);
  const auto csv_path = output_path(c, stem + ".csv");
  csv.save(csv_path);

  json j = config_json(c, "solve");
  j["sigma"] = s.sigma;
  j["xi_sigma"] = s.xi;
  j["lambda"] = s.lambda;
  j["lambda_target"] = s.lambda_target;
  j["tau_sigma"] = s.tau;
  j["residual_rel"] = s.residual_rel;
  j["L"] = grid.half_width();
  j["power_iterations"] = s.power_iterations;
  j["power_residual"] = s.power_residual;
  j["u_norm2"] = convev::norm2(s.u);
  j["u_norm_inf"] = convev::norm_inf(s.u);
  if (s.transform)
  {
    j["transform"] = {{"mu", s.transform->mu},
                      {"truncation_depth", s.transform->depth},
                      {"truncation_bound", s.transform->truncation_bound},
                      {"renormalization", s.transform->renormalization},
                      {"a0", s.transform->a0},
                      {"a2pp", s.transform->a2pp},
                      {"second_moment", s.transform->second_moment}};
  }
  const auto json_path = output_path(c, stem + ".json");
  write_json(json_path, j);
  std::cout << "wrote " << csv_path.string() << " and " << json_path.string()
            << " (residual " << format_double(s.residual_rel) << ")\n";
  return exit_ok;
}

int cmd_sweep(const RunConfig &c, const std::vector<double> &sigmas)
{
  const convev::Kernel k = convev::kernel_from_selector(c.kernel);
  const auto entries = convev::sweep(k, c.params, sigmas, solve_options(c));

  convev::CsvWriter csv(
      {"sigma", "xi", "lambda", "tau", "u_norm2", "u_norm_inf", "residual_rel", "errors"});
  csv.comment(header_line(c, "sweep"));
  std::size_t inadmissible = 0, failed = 0;
  for (const auto &e : entries)
  {
    if (!e.ok)
    {
      failed++;
      inadmissible += convev::admissible(c.params, e.sigma) ? 0 : 1;
    }
    csv.row({e.sigma, e.xi, e.lambda, e.tau, e.u_norm2, e.u_norm_inf, e.residual_rel}, e.error);
  }
  const auto path = output_path(c, "sweep.csv");
  csv.save(path);
  std::cout << "wrote " << path.string() << '\n';
  if (!entries.empty() && inadmissible == entries.size())
  {
    std::cerr << "error: no sigma in the admissible interval (" << format_double(c.params.zeta)
              << ", " << format_double(c.params.zeta + c.params.eta) << ")\n";
    return exit_invalid;
  }
  return (!entries.empty() && failed == entries.size()) ? exit_failure : exit_ok;
}

int cmd_transform(const RunConfig &c, const std::vector<double> &mus)
{
  const convev::Kernel k = convev::kernel_from_selector(c.kernel);
  for (double mu : mus)
  {
    const double need = convev::recommended_half_width(k, mu, c.tol.transform);
    const convev::Grid grid = working_grid(c, k, c.half_width > 0.0 ? 0.0 : need);
    const convev::TransformedKernel tk = convev::transform_kernel(k, mu, grid, c.tol.transform);

    // Sampled-kernel input format, one-sided (mirrored on load).
    convev::CsvWriter csv({"x", "a"});
    csv.comment(header_line(c, "transform"));
    csv.comment("mu=" + format_double(mu) + " depth=" +
                std::to_string(tk.truncation_depth()) +
                " truncation_bound=" + format_double(tk.truncation_bound()) +
                " renormalization=" + format_double(tk.renormalization()) +
                " grid: h=" + format_double(grid.spacing()) +
                " L=" + format_double(grid.half_width()));
    for (std::size_t i = grid.center(); i < grid.size(); i++)
    {
      csv.row({grid.point(i), tk.samples()[i]});
    }
    const auto path = output_path(c, "transformed_" + format_double(mu) + ".csv");
    csv.save(path);
    std::cout << "wrote " << path.string() << " (a~(0) = " << format_double(tk.a0()) << ")\n";
  }
  return exit_ok;
}

void save_fit(const RunConfig &c, const std::string &command, const std::string &stem,
              const convev::ScalingFit &fit, json extra)
{
  convev::CsvWriter csv({"abscissa", "ordinate", "predicted"});
  csv.comment(header_line(c, command));
  for (std::size_t i = 0; i < fit.abscissa.size(); i++)
  {
    csv.row({fit.abscissa[i], fit.ordinate[i], fit.predicted[i]});
  }
  csv.save(output_path(c, stem + ".csv"));

  json j = config_json(c, command);
  j["fitted_exponent"] = number(fit.fitted_exponent);
  j["fitted_prefactor"] = number(fit.fitted_prefactor);
  j["r_squared"] = number(fit.r_squared);
  j["predicted_exponent"] = number(fit.predicted_exponent);
  j["predicted_prefactor"] = number(fit.predicted_prefactor);
  j["prefactor_at_predicted"] = number(fit.prefactor_at_predicted);
  j["exponent_deviation"] = number(fit.exponent_deviation);
  j["prefactor_deviation"] = number(fit.prefactor_deviation);
  for (auto &[key, value] : extra.items())
  {
    j[key] = value;
  }
  write_json(output_path(c, stem + ".json"), j);
  std::cout << "wrote " << (std::filesystem::path(c.out) / (stem + ".csv")).string()
            << " (exponent " << format_double(fit.fitted_exponent) << ", predicted "
            << format_double(fit.predicted_exponent) << ")\n";
}

json array(const std::vector<double> &v)
{
  json a = json::array();
  for (double x : v)
  {
    a.push_back(number(x));
  }
  return a;
}

int cmd_asympt(const RunConfig &c, const std::string &which, std::vector<double> values)
{
  const convev::Kernel k = convev::kernel_from_selector(c.kernel);
  const convev::SolveOptions opts = solve_options(c);
  if (which == "small")
  {
    if (values.empty())
    {
      values = {0.02, 0.04, 0.06, 0.08, 0.1};
    }
    const auto r = convev::check_small_sigma(k, c.params, values, opts);
    save_fit(c, "asympt small", "asympt_small", r.fit,
             {{"scaled_xi", array(r.scaled)},
              {"sup_distance", array(r.sup_distance)},
              {"shape_similarity", array(r.shape_similarity)},
              {"residuals", array(r.residuals)}});
    return exit_ok;
  }
  if (which == "large")
  {
    if (values.empty())
    {
      values = {0.2, 0.1, 0.05, 0.025};
    }
    const auto r = convev::check_large_sigma(k, c.params, values, opts);
    save_fit(c, "asympt large", "asympt_large", r.xi_fit,
             {{"scaled_xi", array(r.scaled)},
              {"shape_similarity", array(r.shape_similarity)},
              {"residuals", array(r.residuals)},
              {"m_analytic", r.m_analytic},
              {"m_tail", r.m_tail},
              {"m_scaling", r.m_scaling},
              {"tail_xi", r.tail_xi},
              {"tail_lambda", r.tail_lambda}});
    save_fit(c, "asympt large", "asympt_large_norm", r.norm_fit, json::object());
    return exit_ok;
  }
  if (which == "kappa")
  {
    if (values.empty())
    {
      values = {0.2, 0.1, 0.05};
    }
    const auto r = convev::check_kappa(k, c.params, values, opts);
    convev::CsvWriter csv(
        {"gap", "kappa0", "kappa2", "a0", "a2pp", "m", "xi", "sup_distance", "residual_rel"});
    csv.comment(header_line(c, "asympt kappa"));
    csv.comment("sup_distance window |x| <= " + format_double(r.window));
    for (std::size_t i = 0; i < r.gaps.size(); i++)
    {
      const auto &m = r.moments[i];
      csv.row({r.gaps[i], m.kappa0, m.kappa2, m.a0, m.a2pp, m.m, r.xi[i], r.sup_distance[i],
               r.residuals[i]});
    }
    csv.save(output_path(c, "asympt_kappa.csv"));
    json j = config_json(c, "asympt kappa");
    j["kappa0_reference"] = number(r.kappa0_reference);
    j["kappa2_reference"] = number(r.kappa2_reference);
    j["xi_limit"] = number(r.xi_limit);
    j["kappa0_extrapolated"] = number(r.kappa0_extrapolated);
    j["kappa2_extrapolated"] = number(r.kappa2_extrapolated);
    j["window"] = r.window;
    write_json(output_path(c, "asympt_kappa.json"), j);
    std::cout << "wrote " << (std::filesystem::path(c.out) / "asympt_kappa.csv").string() << '\n';
    return exit_ok;
  }
  throw UsageError("asympt expects small | large | kappa");
}

bool is_parameter_error(const convev::Error &e)
{
  return dynamic_cast<const convev::InvalidParameter *>(&e) ||
         dynamic_cast<const convev::AdmissibilityError *>(&e) ||
         dynamic_cast<const convev::UnsupportedKernel *>(&e) ||
         dynamic_cast<const convev::OutOfRange *>(&e) ||
         dynamic_cast<const convev::ResolutionError *>(&e) ||
         dynamic_cast<const convev::IncompatibleGrid *>(&e) ||
         dynamic_cast<const convev::GridTooSmall *>(&e);
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"convev: nonlocal eigenvalue problems with bilinear nonlinearity"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(CONVEV_VERSION));
  app.set_config("--config", "", "Flat key=value file (command-line flags take precedence)");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  app.add_option("--kernel", c.kernel, "gaussian | tent | indicator | file:<path>")
      ->capture_default_str();
  app.add_option("--zeta", c.params.zeta, "Slope below the kink")->capture_default_str();
  app.add_option("--theta", c.params.theta, "Kink location")->capture_default_str();
  app.add_option("--eta", c.params.eta, "Slope jump at the kink")->capture_default_str();
  app.add_option("--h", c.h, "Grid spacing")->capture_default_str();
  app.add_option("--L", c.half_width, "Grid half-width (0: automatic)")->capture_default_str();
  app.add_option("--tol-power", c.tol.power, "Power-method residual tolerance")
      ->capture_default_str();
  app.add_option("--tol-bisect", c.tol.bisect, "Eigenvalue inversion tolerance")
      ->capture_default_str();
  app.add_option("--tol-transform", c.tol.transform, "Neumann-series tail tolerance")
      ->capture_default_str();
  app.add_option("--out", c.out, "Output directory")->capture_default_str();

  std::vector<double> xis, sigmas, mus, values;
  double sigma = 0.0;
  std::string which;

  auto *eig = app.add_subcommand("eigencurve", "lambda_xi on a list of cut-off lengths");
  eig->add_option("--xi", xis, "Cut-off lengths (sorted)")->delimiter(',');
  auto *solve = app.add_subcommand("solve", "Solution for one sigma");
  solve->add_option("--sigma", sigma, "Eigenvalue parameter")->required();
  auto *sw = app.add_subcommand("sweep", "Solution summaries for several sigma");
  sw->add_option("--sigma", sigmas, "Eigenvalue parameters")->delimiter(',');
  auto *tr = app.add_subcommand("transform", "Transformed kernels a~ for several mu");
  tr->add_option("--mu", mus, "Series parameters mu in [0, 1)")->delimiter(',')->required();
  auto *as = app.add_subcommand("asympt", "Asymptotic probes");
  as->add_option("probe", which, "small | large | kappa")
      ->required()
      ->check(CLI::IsMember({"small", "large", "kappa"}));
  as->add_option("--sigma", values,
                 "small: sigma values; large: zeta + eta - sigma; kappa: sigma - zeta")
      ->delimiter(',');

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_invalid;
  }

  try
  {
    validate_common(c);
    if (eig->parsed())
    {
      return cmd_eigencurve(c, xis);
    }
    if (solve->parsed())
    {
      return cmd_solve(c, sigma);
    }
    if (sw->parsed())
    {
      return cmd_sweep(c, sigmas);
    }
    if (tr->parsed())
    {
      return cmd_transform(c, mus);
    }
    return cmd_asympt(c, which, values);
  }
  catch (const convev::AdmissibilityError &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  catch (const convev::Error &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return is_parameter_error(e) ? exit_invalid : exit_failure;
  }
  catch (const std::exception &e)
  {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_failure;
  }
}
