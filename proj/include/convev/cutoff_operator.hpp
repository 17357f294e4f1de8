// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONVEV_CUTOFF_OPERATOR_HPP
#define CONVEV_CUTOFF_OPERATOR_HPP

#include <memory>
#include <span>
#include <vector>

#include "convev/grid.hpp"
#include "convev/kernels.hpp"

namespace convev
{

//
// Odd profiles are stored on the half-line cells c_k = (k - 1/2) h, k = 1..n. The value at
// the origin is zero by construction and v(-x) = -v(x) holds exactly on reconstruction.
//
class OddProfile
{
public:
  OddProfile(double spacing, std::vector<double> values);

  double spacing() const { return spacing_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double cell_center(std::size_t k) const { return (static_cast<double>(k) + 0.5) * spacing_; }

  // Odd piecewise-linear reconstruction through the cell centres, zero past the last cell.
  double at(double x) const;

  // Full-line grid norm, sqrt(2 h sum v_k^2).
  double norm() const;

  // Samples the reconstruction on every node of the grid.
  GridFn to_grid(const Grid &grid) const;

private:
  double spacing_;
  std::vector<double> values_;
};

// Full-line inner product 2 h sum v_k w_k.
double inner(const OddProfile &v, const OddProfile &w);

//
// Cut-off interval [-xi, xi] on cells of width h. Cells 1..M lie fully inside; cell M + 1
// is covered by the fraction s in [0, 1) and enters with weight s.
//
class Cutoff
{
public:
  Cutoff(double xi, double spacing);

  double xi() const { return xi_; }
  double spacing() const { return spacing_; }
  std::size_t full_cells() const { return full_; }
  double fraction() const { return fraction_; }
  std::size_t active_cells() const { return full_ + (fraction_ > 0.0 ? 1 : 0); }
  double weight(std::size_t k) const;  // 0-based cell index

private:
  double xi_;
  double spacing_;
  std::size_t full_;
  double fraction_;
};

//
// Symmetric discretization of A_xi = chi a * (chi .) on odd profiles:
//   (A v)_k = w_k^{1/2} h sum_l [a(c_k - c_l) - a(c_k + c_l)] w_l^{1/2} v_l,
// with the cell weights w of the cut-off. Long profiles use an FFT of the odd extension.
//
class CutoffOperator
{
public:
  CutoffOperator(const Kernel &kernel, const Cutoff &cutoff,
                 ConvolutionMethod method = ConvolutionMethod::automatic);
  ~CutoffOperator();
  CutoffOperator(CutoffOperator &&) noexcept;
  CutoffOperator &operator=(CutoffOperator &&) noexcept;

  const Cutoff &cutoff() const { return cutoff_; }
  std::size_t size() const { return sqrt_weight_.size(); }

  // out = A v on the active cells; both spans have size().
  void apply(std::span<const double> v, std::span<double> out) const;

private:
  struct Workspace;
  Cutoff cutoff_;
  std::vector<double> sqrt_weight_;
  std::unique_ptr<Workspace> work_;
};

// Applies A_xi to v. Cells past the cut-off are ignored on input and zero on output;
// the result has the same length as v. Throws OutOfRange if xi exceeds the grid.
OddProfile apply_A(const Kernel &kernel, const Grid &grid, double xi, const OddProfile &v);

// <v, A_xi v> / ||v||^2. Throws DomainError for v = 0.
double rayleigh(const Kernel &kernel, const Grid &grid, double xi, const OddProfile &v);

// Normalized test function -(2 xi)^{-1/2} sgn(x) chi_xi in the weighted cell variables.
OddProfile test_function(const Cutoff &cutoff);

// chi_xi v: the profile with the cut-off weights folded in (w^{1/2} v on active cells).
OddProfile effective_profile(const Cutoff &cutoff, const OddProfile &v);

struct ConeReport
{
  bool in_cone = false;         // v <= 0 on x > 0
  bool in_strict_cone = false;  // v < 0 on (0, xi], v = 0 beyond, negative slope at 0
  double worst_violation = 0.0;
};

// Membership with slack 1e-10 ||v||_inf.
ConeReport cone_membership(const OddProfile &v, const Cutoff &cutoff);

}  // namespace convev

#endif  // CONVEV_CUTOFF_OPERATOR_HPP
