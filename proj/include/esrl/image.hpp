#pragma once

#include "esrl/common.hpp"

namespace esrl {

// H×W×3 RGB image, row-major, 8-bit channels.
struct Image {
    int height = 0;
    int width = 0;
    Bytes data;

    std::uint8_t* pixel(int row, int col) {
        return data.data() + 3 * (static_cast<std::size_t>(row) * width + col);
    }
    const std::uint8_t* pixel(int row, int col) const {
        return data.data() + 3 * (static_cast<std::size_t>(row) * width + col);
    }
};

// 2-D byte matrix, row-major.
struct ByteMatrix {
    int rows = 0;
    int cols = 0;
    Bytes data;

    std::uint8_t& at(int row, int col) {
        return data[static_cast<std::size_t>(row) * cols + col];
    }
    std::uint8_t at(int row, int col) const {
        return data[static_cast<std::size_t>(row) * cols + col];
    }

    bool operator==(const ByteMatrix&) const = default;
};

}  // namespace esrl
