#pragma once

#include "quasiphase/phasespace.hpp"
#include "quasiphase/types.hpp"

namespace quasiphase {

/// Discrete convolution of a sampled distribution with a translation-invariant
/// kernel, FFT-based with 2x zero padding so the reported window carries no
/// wraparound. Output axes match the input.
ComplexGrid convolve(const ComplexGrid& f, const KernelSpec& kernel);
RealGrid convolve(const RealGrid& f, const KernelSpec& kernel);

/// Regularized inverse of `convolve` for Gaussian kernels: frequency-domain
/// division with modes zeroed where |kernel transform| < cutoff_eps. sinc^2
/// kernels are rejected (compactly supported transform, no stable inverse).
ComplexGrid deconvolve(const ComplexGrid& f, const KernelSpec& kernel, double cutoff_eps);
RealGrid deconvolve(const RealGrid& f, const KernelSpec& kernel, double cutoff_eps);

}  // namespace quasiphase
