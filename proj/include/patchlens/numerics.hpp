#pragma once

#include <cstddef>

#include "patchlens/tensor.hpp"

namespace patchlens {

// Dense kernels backing the transformer forward pass. All functions are
// pure, deterministic, and safe to call concurrently. Inputs are float32
// and matmul accumulates in float32 to stay comparable with the public
// checkpoint's reference computation.

// [m x k] * [k x n] -> [m x n]. Throws ShapeError on rank or inner-dim
// mismatch.
Tensor matmul(const Tensor& a, const Tensor& b);

// Softmax along `axis` with max-subtraction. Throws NumericError on
// non-finite input, ShapeError on an invalid axis.
Tensor softmax(const Tensor& x, std::size_t axis);

// Per-row normalization over the last dimension, then gamma * x + beta.
// gamma/beta are rank-1 of size d = last dim of x; eps must be > 0.
Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta, float eps);

// Exact GELU, x * Phi(x) via erf (not the tanh approximation).
Tensor gelu(const Tensor& x);

// [r x c] -> [c x r].
Tensor transpose(const Tensor& x);

// x[i] += bias for every row of a rank-2 tensor.
void add_bias_inplace(Tensor& x, const Tensor& bias);

// Dot product of two equal-size rank-1 tensors.
float dot(const Tensor& a, const Tensor& b);

}  // namespace patchlens
