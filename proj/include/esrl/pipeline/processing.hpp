#pragma once

#include <array>

#include "esrl/common.hpp"
#include "esrl/envcore/gridroom.hpp"
#include "esrl/image.hpp"

namespace esrl::pipeline {

// Plaintext bytes handed to the cipher plus the 2-D layout descriptor used
// to reassemble network input. rows/cols describe the 2-D interpretation of
// the state; after byte-level padding (PKCS#7) the byte count may exceed
// rows*cols, in which case rows/cols keep the pre-padding layout. Vector
// states use rows = 1.
struct ProcessedState {
    Bytes bytes;
    int rows = 0;
    int cols = 0;

    bool operator==(const ProcessedState&) const = default;
};

// The four intensities that re-establish the agent direction lost in the
// one-pixel-per-tile resize, indexed by Direction. Chosen mutually distant
// and distinct from floor (0), goal (150), and pad (255) intensities.
inline constexpr std::array<std::uint8_t, 4> kDirectionIntensity = {60, 120,
                                                                    180, 240};

/// Center-samples each tile block down to one pixel.
Image resize_to_one_px_per_tile(const Image& image, int size_tiles);

/// ITU-R 601 luma: round(0.299 R + 0.587 G + 0.114 B).
ByteMatrix greyscale(const Image& image);

/// Removes the one-pixel wall border.
ByteMatrix crop_walls(const ByteMatrix& m);

/// Overwrites the agent's pixel with the intensity for its direction.
void remap_agent_direction(ByteMatrix& m, int agent_row, int agent_col,
                           env::Direction dir);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    bool operator==(const Interval&) const = default;
};

// Per-dimension ranges for the six continuous lander components, in
// observation order (x, y, vx, vy, angle, angular_velocity).
struct DiscretizeRanges {
    std::array<Interval, 6> continuous{{{-1.5, 1.5},
                                        {-1.5, 1.5},
                                        {-2.0, 2.0},
                                        {-2.0, 2.0},
                                        {-3.14159265358979323846, 3.14159265358979323846},
                                        {-2.0, 2.0}}};
    bool operator==(const DiscretizeRanges&) const = default;
};

/// 256-bin discretization of the continuous components; boolean contact
/// components map to {0, 255}. Throws DataError on non-finite input.
Bytes discretize(const std::array<double, 8>& obs, const DiscretizeRanges& ranges);

/// Byte matrix scaled into [0, 1].
std::vector<double> normalize(const ByteMatrix& m);

template <typename T>
void normalize_into(const Bytes& bytes, T* dst) {
    for (std::size_t i = 0; i < bytes.size(); ++i)
        dst[i] = static_cast<T>(bytes[i]) / T(255);
}

/// Full gridworld processing chain up to (but excluding) padding:
/// render -> resize -> greyscale -> crop walls -> direction remap.
ProcessedState process_grid_state(const env::GridRoom& room, int px_per_tile);

}  // namespace esrl::pipeline
