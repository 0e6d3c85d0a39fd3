#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "patchlens/errors.hpp"

namespace patchlens {

// Dense row-major float32 buffer. Deliberately minimal: no strides, no
// views, no broadcasting. Shapes are validated once at construction.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<float> data;

    Tensor() = default;

    explicit Tensor(std::vector<std::size_t> s) : shape(std::move(s)) {
        data.assign(checked_numel(shape), 0.0f);
    }

    Tensor(std::vector<std::size_t> s, std::vector<float> values)
        : shape(std::move(s)), data(std::move(values)) {
        if (checked_numel(shape) != data.size()) {
            throw ShapeError("tensor: shape " + shape_str() + " does not match buffer of " +
                             std::to_string(data.size()) + " floats");
        }
    }

    std::size_t numel() const { return data.size(); }
    std::size_t rank() const { return shape.size(); }

    std::size_t dim(std::size_t i) const {
        if (i >= shape.size()) throw ShapeError("tensor: dim index out of range");
        return shape[i];
    }

    // Rank-2 helpers; the model works almost entirely in [rows x cols].
    std::size_t rows() const { return dim(0); }
    std::size_t cols() const { return dim(1); }

    float* row(std::size_t r) { return data.data() + r * cols(); }
    const float* row(std::size_t r) const { return data.data() + r * cols(); }

    float& at(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
    float at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }

    std::string shape_str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < shape.size(); ++i) {
            if (i) s += "x";
            s += std::to_string(shape[i]);
        }
        return s + "]";
    }

    bool same_shape(const Tensor& other) const { return shape == other.shape; }

private:
    static std::size_t checked_numel(const std::vector<std::size_t>& s) {
        if (s.empty()) throw ShapeError("tensor: rank-0 shapes are not supported");
        std::size_t n = 1;
        for (std::size_t d : s) {
            if (d == 0) throw ShapeError("tensor: zero-sized dimension");
            n *= d;
        }
        return n;
    }
};

}  // namespace patchlens
