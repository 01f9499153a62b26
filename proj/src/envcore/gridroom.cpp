#include "esrl/envcore/gridroom.hpp"

#include <cstring>

namespace esrl::env {

namespace {
// Row/col deltas indexed by Direction.
constexpr int kRowDelta[4] = {0, 1, 0, -1};
constexpr int kColDelta[4] = {1, 0, -1, 0};
}  // namespace

GridRoom::GridRoom(int size, StartMode mode) : size_(size), mode_(mode) {
    if (size != 5 && size != 6 && size != 8 && size != 16)
        throw ConfigError("unsupported grid size " + std::to_string(size) +
                          " (expected 5, 6, 8, or 16)");
    goal_ = {size_ - 2, size_ - 2};
    max_steps_ = 4 * size_ * size_;
}

void GridRoom::reset(Rng& rng) {
    step_count_ = 0;
    done_ = false;
    needs_reset_ = false;
    if (mode_ == StartMode::Fixed) {
        agent_ = {1, 1};
        dir_ = Direction::East;
        return;
    }
    // Uniform over inner non-goal cells, uniform direction.
    const int inner = size_ - 2;
    const std::size_t cells = static_cast<std::size_t>(inner) * inner;
    const std::size_t goal_index =
        static_cast<std::size_t>(goal_.row - 1) * inner + (goal_.col - 1);
    std::size_t k = rand_index(rng, cells - 1);
    if (k >= goal_index) ++k;
    agent_ = {1 + static_cast<int>(k / inner), 1 + static_cast<int>(k % inner)};
    dir_ = static_cast<Direction>(rand_index(rng, 4));
}

void GridRoom::set_agent(GridPos pos, Direction dir) {
    if (!is_inner(pos))
        throw UsageError("agent position outside the inner area");
    agent_ = pos;
    dir_ = dir;
    step_count_ = 0;
    done_ = false;
    needs_reset_ = false;
}

StepResult GridRoom::step(GridAction action) {
    if (needs_reset_ || done_)
        throw UsageError("step called on a terminated episode; reset first");

    switch (action) {
        case GridAction::TurnLeft:
            dir_ = static_cast<Direction>((static_cast<int>(dir_) + 3) % 4);
            break;
        case GridAction::TurnRight:
            dir_ = static_cast<Direction>((static_cast<int>(dir_) + 1) % 4);
            break;
        case GridAction::Forward: {
            const GridPos target{agent_.row + kRowDelta[static_cast<int>(dir_)],
                                 agent_.col + kColDelta[static_cast<int>(dir_)]};
            if (is_inner(target)) agent_ = target;
            break;
        }
    }
    ++step_count_;

    StepResult result;
    if (agent_ == goal_) {
        done_ = true;
        result.done = true;
        result.reward =
            1.0 - 0.9 * static_cast<double>(step_count_) / max_steps_;
    } else if (step_count_ >= max_steps_) {
        done_ = true;
        result.done = true;
        result.reward = 0.0;
    }
    return result;
}

Image GridRoom::render(int px_per_tile) const {
    const int hw = size_ * px_per_tile;
    Image img{hw, hw, Bytes(static_cast<std::size_t>(hw) * hw * 3)};
    for (int tr = 0; tr < size_; ++tr) {
        for (int tc = 0; tc < size_; ++tc) {
            const bool wall =
                tr == 0 || tc == 0 || tr == size_ - 1 || tc == size_ - 1;
            const std::uint8_t* color = kFloorColor;
            if (wall)
                color = kWallColor;
            else if (GridPos{tr, tc} == agent_)
                color = kAgentColor;
            else if (GridPos{tr, tc} == goal_)
                color = kGoalColor;
            for (int py = 0; py < px_per_tile; ++py) {
                std::uint8_t* row = img.pixel(tr * px_per_tile + py, tc * px_per_tile);
                for (int px = 0; px < px_per_tile; ++px)
                    std::memcpy(row + 3 * px, color, 3);
            }
        }
    }
    return img;
}

}  // namespace esrl::env
