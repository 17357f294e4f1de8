// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "convev/convolution.hpp"

#include <algorithm>
#include <complex>
#include <fftw3.h>

#include "convev/errors.hpp"

namespace convev
{

namespace
{

// Work (filter * signal) above which FFT beats the direct double loop.
constexpr std::size_t fft_threshold = 1u << 18;

std::size_t fft_size(std::size_t n)
{
  // Smallest 2^a 3^b 5^c >= n; FFTW handles these efficiently.
  std::size_t best = 1;
  while (best < n)
  {
    best <<= 1;
  }
  for (std::size_t p3 = 1; p3 < best; p3 *= 3)
  {
    for (std::size_t p5 = p3; p5 < best; p5 *= 5)
    {
      std::size_t m = p5;
      while (m < n)
      {
        m <<= 1;
      }
      best = std::min(best, m);
    }
  }
  return best;
}

bool want_fft(ConvolutionMethod method, std::size_t a, std::size_t b)
{
  switch (method)
  {
    case ConvolutionMethod::direct:
      return false;
    case ConvolutionMethod::fft:
      return true;
    case ConvolutionMethod::automatic:
      break;
  }
  return std::min(a, b) > 32 && a * b > fft_threshold;
}

void direct_convolve(std::span<const double> x, std::span<const double> y,
                     std::span<double> out)
{
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t q = 0; q < y.size(); q++)
  {
    const double yq = y[q];
    if (yq == 0.0)
    {
      continue;
    }
    double *o = out.data() + q;
    for (std::size_t p = 0; p < x.size(); p++)
    {
      o[p] += x[p] * yq;
    }
  }
}

struct FftwFree
{
  void operator()(void *p) const { fftw_free(p); }
};

struct PlanDestroy
{
  void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
};

using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy>;

RealBuffer alloc_real(std::size_t n)
{
  return RealBuffer(fftw_alloc_real(n));
}

ComplexBuffer alloc_complex(std::size_t n)
{
  return ComplexBuffer(fftw_alloc_complex(n));
}

}  // namespace

struct FixedConvolver::FftState
{
  std::size_t size;
  RealBuffer real;
  ComplexBuffer spectrum;
  std::vector<std::complex<double>> filter_spectrum;
  Plan forward;
  Plan backward;

  FftState(std::span<const double> filter, std::size_t output_length)
    : size(fft_size(output_length)), real(alloc_real(size)),
      spectrum(alloc_complex(size / 2 + 1))
  {
    // FFTW_ESTIMATE plans do not time candidate algorithms, so results are
    // reproducible run to run.
    forward.reset(fftw_plan_dft_r2c_1d(static_cast<int>(size), real.get(), spectrum.get(),
                                       FFTW_ESTIMATE));
    backward.reset(fftw_plan_dft_c2r_1d(static_cast<int>(size), spectrum.get(), real.get(),
                                        FFTW_ESTIMATE));
    if (!forward || !backward)
    {
      throw Error("FFTW plan creation failed");
    }
    std::fill(real.get(), real.get() + size, 0.0);
    std::copy(filter.begin(), filter.end(), real.get());
    fftw_execute(forward.get());
    filter_spectrum.resize(size / 2 + 1);
    const double scale = 1.0 / static_cast<double>(size);
    for (std::size_t k = 0; k < filter_spectrum.size(); k++)
    {
      filter_spectrum[k] = std::complex<double>(spectrum[k][0], spectrum[k][1]) * scale;
    }
  }

  void convolve(std::span<const double> signal, std::span<double> out)
  {
    std::fill(real.get(), real.get() + size, 0.0);
    std::copy(signal.begin(), signal.end(), real.get());
    fftw_execute(forward.get());
    for (std::size_t k = 0; k < filter_spectrum.size(); k++)
    {
      const std::complex<double> z =
          std::complex<double>(spectrum[k][0], spectrum[k][1]) * filter_spectrum[k];
      spectrum[k][0] = z.real();
      spectrum[k][1] = z.imag();
    }
    fftw_execute(backward.get());
    std::copy(real.get(), real.get() + out.size(), out.begin());
  }
};

FixedConvolver::FixedConvolver(std::span<const double> filter, std::size_t signal_length,
                               ConvolutionMethod method)
  : filter_(filter.begin(), filter.end()), signal_length_(signal_length)
{
  if (filter_.empty() || signal_length_ == 0)
  {
    throw InvalidParameter("convolution operands must be non-empty");
  }
  if (want_fft(method, filter_.size(), signal_length_))
  {
    fft_ = std::make_unique<FftState>(filter_, output_length());
  }
}

FixedConvolver::~FixedConvolver() = default;
FixedConvolver::FixedConvolver(FixedConvolver &&) noexcept = default;
FixedConvolver &FixedConvolver::operator=(FixedConvolver &&) noexcept = default;

void FixedConvolver::apply(std::span<const double> signal, std::span<double> out) const
{
  if (signal.size() != signal_length_ || out.size() != output_length())
  {
    throw InvalidParameter("FixedConvolver: operand length mismatch");
  }
  if (fft_)
  {
    fft_->convolve(signal, out);
  }
  else
  {
    direct_convolve(filter_, signal, out);
  }
}

std::vector<double> linear_convolve(std::span<const double> x, std::span<const double> y,
                                    ConvolutionMethod method)
{
  if (x.empty() || y.empty())
  {
    return {};
  }
  std::vector<double> out(x.size() + y.size() - 1);
  FixedConvolver(x, y.size(), method).apply(y, out);
  return out;
}

}  // namespace convev
