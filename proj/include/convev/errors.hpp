// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONVEV_ERRORS_HPP
#define CONVEV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace convev
{

// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// A parameter violates an operation precondition (sign, range, ordering).
class InvalidParameter : public Error
{
public:
  using Error::Error;
};

// Two grid functions live on different grids.
class IncompatibleGrid : public Error
{
public:
  using Error::Error;
};

// The grid is too coarse to resolve a kernel.
class ResolutionError : public Error
{
public:
  using Error::Error;
};

// A value lies outside the range an operation can handle (e.g. xi > L).
class OutOfRange : public Error
{
public:
  using Error::Error;
};

// The computational domain is too small; the message suggests enlarging L.
class GridTooSmall : public Error
{
public:
  using Error::Error;
};

// An argument outside the mathematical domain (negative profile value, zero vector).
class DomainError : public Error
{
public:
  using Error::Error;
};

// sigma outside the open interval (zeta, zeta + eta) where unimodal solutions exist.
class AdmissibilityError : public Error
{
public:
  using Error::Error;
};

// The kernel lacks data an operation needs (e.g. a''(0) for the tent map).
class UnsupportedKernel : public Error
{
public:
  using Error::Error;
};

class NonConvergence : public Error
{
public:
  NonConvergence(const std::string &what, double last_residual)
    : Error(what), last_residual_(last_residual)
  {
  }

  double last_residual() const { return last_residual_; }

private:
  double last_residual_;
};

}  // namespace convev

#endif  // CONVEV_ERRORS_HPP
