// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONVEV_CONVOLUTION_HPP
#define CONVEV_CONVOLUTION_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace convev
{

enum class ConvolutionMethod
{
  automatic,  // direct below a size threshold, FFT above
  direct,
  fft
};

// Full linear convolution of two sequences, out[p] = sum_q x[p - q] y[q], length
// |x| + |y| - 1.
std::vector<double> linear_convolve(std::span<const double> x, std::span<const double> y,
                                    ConvolutionMethod method = ConvolutionMethod::automatic);

// Repeated full linear convolution with a fixed filter and fixed signal length. The FFT
// path keeps its plans and the filter spectrum between calls. Not safe for concurrent
// use of one instance; create one per thread.
class FixedConvolver
{
public:
  FixedConvolver(std::span<const double> filter, std::size_t signal_length,
                 ConvolutionMethod method = ConvolutionMethod::automatic);
  ~FixedConvolver();
  FixedConvolver(FixedConvolver &&) noexcept;
  FixedConvolver &operator=(FixedConvolver &&) noexcept;
  FixedConvolver(const FixedConvolver &) = delete;
  FixedConvolver &operator=(const FixedConvolver &) = delete;

  std::size_t output_length() const { return filter_.size() + signal_length_ - 1; }
  bool uses_fft() const { return static_cast<bool>(fft_); }

  // out.size() must equal output_length().
  void apply(std::span<const double> signal, std::span<double> out) const;

private:
  struct FftState;

  std::vector<double> filter_;
  std::size_t signal_length_;
  std::unique_ptr<FftState> fft_;
};

}  // namespace convev

#endif  // CONVEV_CONVOLUTION_HPP
