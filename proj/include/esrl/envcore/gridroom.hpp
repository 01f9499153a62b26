#pragma once

#include "esrl/common.hpp"
#include "esrl/image.hpp"

namespace esrl::env {

// Clockwise order so turn_right is +1 mod 4.
enum class Direction : int { East = 0, South = 1, West = 2, North = 3 };

enum class GridAction : int { TurnLeft = 0, TurnRight = 1, Forward = 2 };

enum class StartMode { Fixed, Random };

struct GridPos {
    int row = 0;
    int col = 0;
    bool operator==(const GridPos&) const = default;
};

struct StepResult {
    double reward = 0.0;
    bool done = false;
};

// Tile colors. Distinctness is what matters downstream; the values are
// fixed so renders are reproducible byte-for-byte.
inline constexpr std::uint8_t kWallColor[3] = {100, 100, 100};
inline constexpr std::uint8_t kFloorColor[3] = {0, 0, 0};
inline constexpr std::uint8_t kGoalColor[3] = {0, 255, 0};
inline constexpr std::uint8_t kAgentColor[3] = {255, 0, 0};

/// Empty square room with a wall ring. The agent turns in place or moves
/// one cell forward; reaching the goal ends the episode with reward
/// 1 - 0.9 * step_count / max_steps, running out of steps ends it with 0.
class GridRoom {
public:
    static constexpr int kActionCount = 3;

    GridRoom(int size, StartMode mode);

    void reset(Rng& rng);
    StepResult step(GridAction action);
    StepResult step_action(int action_index) {
        return step(static_cast<GridAction>(action_index));
    }

    /// Pure render of the current state; one uniform color block per tile.
    Image render(int px_per_tile) const;

    int size() const { return size_; }
    StartMode start_mode() const { return mode_; }
    GridPos agent_pos() const { return agent_; }
    Direction agent_dir() const { return dir_; }
    GridPos goal_pos() const { return goal_; }
    int step_count() const { return step_count_; }
    int max_steps() const { return max_steps_; }
    bool done() const { return done_; }

    /// Places the agent directly; used by oracles and state-enumeration
    /// tooling, not by the training loop.
    void set_agent(GridPos pos, Direction dir);

private:
    bool is_inner(GridPos p) const {
        return p.row >= 1 && p.row <= size_ - 2 && p.col >= 1 &&
               p.col <= size_ - 2;
    }

    int size_;
    StartMode mode_;
    GridPos agent_{1, 1};
    Direction dir_ = Direction::East;
    GridPos goal_;
    int step_count_ = 0;
    int max_steps_;
    bool done_ = false;
    bool needs_reset_ = true;
};

}  // namespace esrl::env
