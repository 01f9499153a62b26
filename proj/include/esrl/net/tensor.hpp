#pragma once

// Dense row-major tensor with a leading batch dimension. Deliberately plain:
// shape bookkeeping plus flat storage, no views or broadcasting.

#include <cmath>
#include <cstddef>
#include <vector>

#include "esrl/common.hpp"

namespace esrl::net {

template <typename T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
        data.assign(numel(), T(0));
    }

    std::size_t numel() const {
        std::size_t n = 1;
        for (int d : shape) n *= static_cast<std::size_t>(d);
        return n;
    }

    // Leading dimension (batch size); 1 for rank-0 edge cases.
    int batch() const { return shape.empty() ? 1 : shape[0]; }

    // Sets the shape and guarantees capacity. Existing element values are
    // NOT cleared when the shape is unchanged — callers overwrite in full.
    void resize(std::vector<int> s) {
        if (shape == s) return;
        shape = std::move(s);
        data.assign(numel(), T(0));
    }

    bool same_shape(const Tensor& other) const { return shape == other.shape; }
};

template <typename T>
bool all_finite(const Tensor<T>& t) {
    for (T v : t.data)
        if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
}

}  // namespace esrl::net
