#include "esrl/pipeline/processing.hpp"

#include <cmath>

namespace esrl::pipeline {

Image resize_to_one_px_per_tile(const Image& image, int size_tiles) {
    if (size_tiles < 1) throw ShapeError("size_tiles must be positive");
    if (image.height != image.width)
        throw ShapeError("expected a square image, got " +
                         std::to_string(image.height) + "x" +
                         std::to_string(image.width));
    if (image.height % size_tiles != 0)
        throw ShapeError("image side " + std::to_string(image.height) +
                         " is not divisible by " + std::to_string(size_tiles) +
                         " tiles");
    const int px = image.height / size_tiles;
    Image out{size_tiles, size_tiles,
              Bytes(static_cast<std::size_t>(size_tiles) * size_tiles * 3)};
    for (int r = 0; r < size_tiles; ++r) {
        for (int c = 0; c < size_tiles; ++c) {
            const std::uint8_t* src = image.pixel(r * px + px / 2, c * px + px / 2);
            std::uint8_t* dst = out.pixel(r, c);
            dst[0] = src[0];
            dst[1] = src[1];
            dst[2] = src[2];
        }
    }
    return out;
}

ByteMatrix greyscale(const Image& image) {
    ByteMatrix out{image.height, image.width,
                   Bytes(static_cast<std::size_t>(image.height) * image.width)};
    for (int r = 0; r < image.height; ++r) {
        for (int c = 0; c < image.width; ++c) {
            const std::uint8_t* p = image.pixel(r, c);
            const double luma = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
            const long v = std::lround(luma);
            out.at(r, c) = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
        }
    }
    return out;
}

ByteMatrix crop_walls(const ByteMatrix& m) {
    if (m.rows < 3 || m.cols < 3)
        throw ShapeError("matrix too small to crop a border: " +
                         std::to_string(m.rows) + "x" + std::to_string(m.cols));
    ByteMatrix out{m.rows - 2, m.cols - 2,
                   Bytes(static_cast<std::size_t>(m.rows - 2) * (m.cols - 2))};
    for (int r = 0; r < out.rows; ++r)
        for (int c = 0; c < out.cols; ++c) out.at(r, c) = m.at(r + 1, c + 1);
    return out;
}

void remap_agent_direction(ByteMatrix& m, int agent_row, int agent_col,
                           env::Direction dir) {
    if (agent_row < 0 || agent_row >= m.rows || agent_col < 0 ||
        agent_col >= m.cols)
        throw ShapeError("agent cell outside matrix");
    m.at(agent_row, agent_col) = kDirectionIntensity[static_cast<int>(dir)];
}

Bytes discretize(const std::array<double, 8>& obs, const DiscretizeRanges& ranges) {
    Bytes out(8);
    for (int i = 0; i < 6; ++i) {
        if (!std::isfinite(obs[i]))
            throw DataError("non-finite observation component " + std::to_string(i));
        const auto [lo, hi] = ranges.continuous[i];
        double x = obs[i] < lo ? lo : (obs[i] > hi ? hi : obs[i]);
        const int bin = static_cast<int>(std::floor((x - lo) / (hi - lo) * 256.0));
        out[i] = static_cast<std::uint8_t>(bin > 255 ? 255 : bin);
    }
    out[6] = obs[6] != 0.0 ? 255 : 0;
    out[7] = obs[7] != 0.0 ? 255 : 0;
    return out;
}

std::vector<double> normalize(const ByteMatrix& m) {
    std::vector<double> out(m.data.size());
    normalize_into(m.data, out.data());
    return out;
}

ProcessedState process_grid_state(const env::GridRoom& room, int px_per_tile) {
    const Image img = room.render(px_per_tile);
    const Image small = resize_to_one_px_per_tile(img, room.size());
    const ByteMatrix grey = greyscale(small);
    ByteMatrix cropped = crop_walls(grey);
    remap_agent_direction(cropped, room.agent_pos().row - 1,
                          room.agent_pos().col - 1, room.agent_dir());
    return ProcessedState{std::move(cropped.data), cropped.rows, cropped.cols};
}

}  // namespace esrl::pipeline
