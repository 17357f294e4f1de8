// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONVEV_ASYMPTOTICS_HPP
#define CONVEV_ASYMPTOTICS_HPP

#include <vector>

#include "convev/kernels.hpp"
#include "convev/nonlinear_solver.hpp"

namespace convev
{

// Least-squares power law y ~ C x^p in log-log coordinates.
struct ScalingFit
{
  std::vector<double> abscissa;
  std::vector<double> ordinate;
  std::vector<double> predicted;  // predicted_prefactor x^predicted_exponent (NaN if unknown)
  double fitted_exponent = 0.0;
  double fitted_prefactor = 0.0;
  double r_squared = 0.0;
  double predicted_exponent = 0.0;
  double predicted_prefactor = 0.0;
  // Geometric mean of y / x^p at the predicted exponent; free of the intercept bias
  // that the free fit picks up from higher-order corrections.
  double prefactor_at_predicted = 0.0;
  double exponent_deviation = 0.0;   // fitted - predicted
  double prefactor_deviation = 0.0;  // prefactor_at_predicted / predicted - 1
};

// Needs >= 4 positive points with strictly monotone abscissa. A NaN predicted prefactor
// means "exponent only".
ScalingFit fit_power_law(const std::vector<double> &x, const std::vector<double> &y,
                         double predicted_exponent, double predicted_prefactor);

// |<f, g>| / (||f|| ||g||); 0 if either vanishes.
double cosine_similarity(const std::vector<double> &f, const std::vector<double> &g);

// Small sigma with zeta = 0: xi_sigma ~ (3 sigma / (2 eta |a''(0)|))^{1/3} and
// u_sigma -> theta a / a(0).
struct SmallSigmaReport
{
  ScalingFit fit;                    // xi_sigma against sigma
  std::vector<double> scaled;        // sigma^{-1/3} xi_sigma
  std::vector<double> sup_distance;  // sup |u_sigma - theta a / a(0)|
  std::vector<double> shape_similarity;  // (u - theta)(xi x) against 1 - x^2 on [-1, 1]
  std::vector<double> residuals;
};

// Throws UnsupportedKernel unless a''(0) is defined and negative.
SmallSigmaReport check_small_sigma(const Kernel &kernel, const BilinearNonlinearity &params,
                                   const std::vector<double> &sigmas,
                                   const SolveOptions &options = {});

// Half the second moment of a kernel, m = (1/2) int y^2 a(y) dy.
double half_second_moment(const Kernel &kernel);

// Large sigma: xi_sigma ~ pi (m eta)^{1/2} (zeta + eta - sigma)^{-1/2} and
// ||u_sigma||_2 ~ (zeta + eta - sigma)^{-3/4}.
struct LargeSigmaReport
{
  ScalingFit xi_fit;    // xi_sigma against the gap zeta + eta - sigma
  ScalingFit norm_fit;  // ||u_sigma||_2 against the gap
  std::vector<double> scaled;  // gap^{1/2} xi_sigma
  std::vector<double> shape_similarity;  // u(xi x) against 1 + cos(pi x) on [-1, 1]
  std::vector<double> residuals;
  double m_analytic = 0.0;   // from the working kernel's second moment
  double m_tail = 0.0;       // (1 - lambda_xi) xi^2 / pi^2 at xi = tail_xi
  double m_scaling = 0.0;    // from the smallest gap
  double tail_xi = 20.0;
  double tail_lambda = 0.0;
};

// gaps are zeta + eta - sigma. The grid half-width is chosen from the predicted xi.
LargeSigmaReport check_large_sigma(const Kernel &kernel, const BilinearNonlinearity &params,
                                   const std::vector<double> &gaps,
                                   const SolveOptions &options = {});

struct MomentData
{
  double m = 0.0;
  double a0 = 0.0;
  double a2pp = 0.0;
  double kappa0 = 0.0;
  double kappa2 = 0.0;
};

// sigma -> zeta with zeta > 0: a~(0) ~ kappa0 (sigma - zeta)^{1/2},
// |a~''(0)| ~ kappa2 (sigma - zeta), u_sigma -> theta.
struct KappaReport
{
  std::vector<double> gaps;  // sigma - zeta
  std::vector<MomentData> moments;
  std::vector<double> xi;
  std::vector<double> sup_distance;  // sup |u_sigma - theta| on |x| <= window
  std::vector<double> residuals;
  double window = 2.0;
  double kappa0_reference = 0.0;  // NaN without a closed form
  double kappa2_reference = 0.0;
  double xi_limit = 0.0;          // (3 / (2 eta kappa2_reference))^{1/3}
  // Extrapolation in (sigma - zeta)^{1/2} from the last two points; diagnostic only.
  double kappa0_extrapolated = 0.0;
  double kappa2_extrapolated = 0.0;
};

KappaReport check_kappa(const Kernel &kernel, const BilinearNonlinearity &params,
                        const std::vector<double> &gaps, const SolveOptions &options = {},
                        double window = 2.0);

}  // namespace convev

#endif  // CONVEV_ASYMPTOTICS_HPP
