#include "patchlens/numerics.hpp"

#include <cmath>
#include <cstring>
#include <limits>

namespace patchlens {

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2) {
        throw ShapeError("matmul: expected rank-2 operands, got " + a.shape_str() + " and " +
                         b.shape_str());
    }
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    if (b.rows() != k) {
        throw ShapeError("matmul: inner dimensions differ, " + a.shape_str() + " vs " +
                         b.shape_str());
    }
    Tensor out({m, n});
    // k-middle loop with a contiguous axpy over the output row. Each output
    // element accumulates in ascending-k order, so results are identical for
    // any blocking the compiler applies to the inner loop.
    for (std::size_t i = 0; i < m; ++i) {
        const float* arow = a.row(i);
        float* orow = out.row(i);
        for (std::size_t kk = 0; kk < k; ++kk) {
            const float aik = arow[kk];
            const float* brow = b.row(kk);
            for (std::size_t j = 0; j < n; ++j) {
                orow[j] += aik * brow[j];
            }
        }
    }
    return out;
}

Tensor softmax(const Tensor& x, std::size_t axis) {
    if (axis >= x.rank()) {
        throw ShapeError("softmax: axis " + std::to_string(axis) + " invalid for " +
                         x.shape_str());
    }
    const std::size_t axis_len = x.shape[axis];
    std::size_t inner = 1;
    for (std::size_t i = axis + 1; i < x.rank(); ++i) inner *= x.shape[i];
    std::size_t outer = x.numel() / (axis_len * inner);

    Tensor out(x.shape);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < inner; ++in) {
            const std::size_t base = o * axis_len * inner + in;
            float maxv = -std::numeric_limits<float>::infinity();
            for (std::size_t t = 0; t < axis_len; ++t) {
                const float v = x.data[base + t * inner];
                if (std::isnan(v) || v == std::numeric_limits<float>::infinity()) {
                    throw NumericError("softmax: non-finite input");
                }
                if (v > maxv) maxv = v;
            }
            double sum = 0.0;
            for (std::size_t t = 0; t < axis_len; ++t) {
                const float e = std::exp(x.data[base + t * inner] - maxv);
                out.data[base + t * inner] = e;
                sum += e;
            }
            const float inv = static_cast<float>(1.0 / sum);
            for (std::size_t t = 0; t < axis_len; ++t) {
                out.data[base + t * inner] *= inv;
            }
        }
    }
    return out;
}

Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta, float eps) {
    const std::size_t d = x.shape.back();
    if (gamma.rank() != 1 || beta.rank() != 1 || gamma.numel() != d || beta.numel() != d) {
        throw ShapeError("layer_norm: gamma/beta must be rank-1 of size " + std::to_string(d));
    }
    if (!(eps > 0.0f)) {
        throw ShapeError("layer_norm: eps must be positive");
    }
    const std::size_t n_rows = x.numel() / d;
    Tensor out(x.shape);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const float* in = x.data.data() + r * d;
        float* o = out.data.data() + r * d;
        double mean = 0.0;
        for (std::size_t i = 0; i < d; ++i) mean += in[i];
        mean /= static_cast<double>(d);
        double var = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double c = in[i] - mean;
            var += c * c;
        }
        var /= static_cast<double>(d);
        const float inv_std = static_cast<float>(1.0 / std::sqrt(var + eps));
        const float fmean = static_cast<float>(mean);
        for (std::size_t i = 0; i < d; ++i) {
            o[i] = (in[i] - fmean) * inv_std * gamma.data[i] + beta.data[i];
        }
    }
    return out;
}

Tensor gelu(const Tensor& x) {
    Tensor out(x.shape);
    constexpr double inv_sqrt2 = 0.7071067811865475244;
    for (std::size_t i = 0; i < x.numel(); ++i) {
        const double v = x.data[i];
        out.data[i] = static_cast<float>(v * 0.5 * (1.0 + std::erf(v * inv_sqrt2)));
    }
    return out;
}

Tensor transpose(const Tensor& x) {
    if (x.rank() != 2) throw ShapeError("transpose: expected rank-2, got " + x.shape_str());
    const std::size_t r = x.rows(), c = x.cols();
    Tensor out({c, r});
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            out.at(j, i) = x.at(i, j);
        }
    }
    return out;
}

void add_bias_inplace(Tensor& x, const Tensor& bias) {
    if (x.rank() != 2 || bias.rank() != 1 || bias.numel() != x.cols()) {
        throw ShapeError("add_bias: bias " + bias.shape_str() + " does not fit " + x.shape_str());
    }
    for (std::size_t i = 0; i < x.rows(); ++i) {
        float* row = x.row(i);
        for (std::size_t j = 0; j < x.cols(); ++j) row[j] += bias.data[j];
    }
}

float dot(const Tensor& a, const Tensor& b) {
    if (a.rank() != 1 || b.rank() != 1 || a.numel() != b.numel()) {
        throw ShapeError("dot: size mismatch, " + a.shape_str() + " vs " + b.shape_str());
    }
    float s = 0.0f;
    for (std::size_t i = 0; i < a.numel(); ++i) s += a.data[i] * b.data[i];
    return s;
}

}  // namespace patchlens
