#pragma once

#include <array>

#include "esrl/common.hpp"
#include "esrl/envcore/gridroom.hpp"

namespace esrl::env {

enum class LanderAction : int {
    Noop = 0,
    LeftThruster = 1,
    MainThruster = 2,
    RightThruster = 3
};

struct LanderConfig {
    double gravity = 0.005;        // per step^2
    double main_thrust = 0.01;     // acceleration along body-up axis
    double side_torque = 0.002;    // angular velocity increment
    double soft_landing_speed = 0.03;
    double soft_landing_tilt = 0.35;  // radians
    double bound_x = 1.5;
    double bound_y = 1.4;
    int max_steps = 1000;

    bool operator==(const LanderConfig&) const = default;
};

/// Point-mass lander over a pad at the origin. Shaping reward is the
/// per-step decrease of a potential combining distance to pad, speed and
/// tilt; +100 on a soft touchdown, -100 on a crash or leaving bounds.
/// The 8-component observation layout is
/// (x, y, vx, vy, angle, angular_velocity, left_contact, right_contact).
class LanderLite {
public:
    static constexpr int kActionCount = 4;

    explicit LanderLite(const LanderConfig& config = {});

    void reset(Rng& rng);
    StepResult step(LanderAction action);
    StepResult step_action(int action_index) {
        return step(static_cast<LanderAction>(action_index));
    }

    std::array<double, 8> observation() const;
    bool done() const { return done_; }
    int step_count() const { return step_count_; }
    const LanderConfig& config() const { return cfg_; }

private:
    double potential() const;

    LanderConfig cfg_;
    double x_ = 0, y_ = 0, vx_ = 0, vy_ = 0;
    double angle_ = 0, angular_velocity_ = 0;
    bool left_contact_ = false, right_contact_ = false;
    double prev_potential_ = 0;
    int step_count_ = 0;
    bool done_ = false;
    bool needs_reset_ = true;
};

}  // namespace esrl::env
