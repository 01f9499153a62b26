#include "esrl/envcore/landerlite.hpp"

#include <cmath>

namespace esrl::env {

LanderLite::LanderLite(const LanderConfig& config) : cfg_(config) {}

double LanderLite::potential() const {
    return -100.0 * std::sqrt(x_ * x_ + y_ * y_) -
           100.0 * std::sqrt(vx_ * vx_ + vy_ * vy_) - 100.0 * std::fabs(angle_);
}

void LanderLite::reset(Rng& rng) {
    x_ = rand_range(rng, -0.1, 0.1);
    y_ = 1.0;
    vx_ = rand_range(rng, -0.02, 0.02);
    vy_ = 0.0;
    angle_ = rand_range(rng, -0.05, 0.05);
    angular_velocity_ = 0.0;
    left_contact_ = right_contact_ = false;
    step_count_ = 0;
    done_ = false;
    needs_reset_ = false;
    prev_potential_ = potential();
}

StepResult LanderLite::step(LanderAction action) {
    if (needs_reset_ || done_)
        throw UsageError("step called on a terminated episode; reset first");

    double ax = 0.0, ay = 0.0;
    switch (action) {
        case LanderAction::Noop:
            break;
        case LanderAction::MainThruster:
            ax = -cfg_.main_thrust * std::sin(angle_);
            ay = cfg_.main_thrust * std::cos(angle_);
            break;
        case LanderAction::LeftThruster:
            angular_velocity_ += cfg_.side_torque;
            break;
        case LanderAction::RightThruster:
            angular_velocity_ -= cfg_.side_torque;
            break;
    }

    // Semi-implicit Euler, one unit timestep.
    vx_ += ax;
    vy_ += ay - cfg_.gravity;
    angle_ += angular_velocity_;
    x_ += vx_;
    y_ += vy_;
    ++step_count_;

    StepResult result;
    const double p = potential();
    result.reward = p - prev_potential_;
    prev_potential_ = p;

    if (y_ <= 0.0) {
        done_ = true;
        result.done = true;
        const bool soft = std::fabs(vy_) <= cfg_.soft_landing_speed &&
                          std::fabs(angle_) <= cfg_.soft_landing_tilt;
        if (soft) {
            left_contact_ = right_contact_ = true;
            result.reward += 100.0;
        } else {
            result.reward -= 100.0;
        }
    } else if (std::fabs(x_) > cfg_.bound_x || y_ > cfg_.bound_y) {
        done_ = true;
        result.done = true;
        result.reward -= 100.0;
    } else if (step_count_ >= cfg_.max_steps) {
        done_ = true;
        result.done = true;
    }
    return result;
}

std::array<double, 8> LanderLite::observation() const {
    return {x_,
            y_,
            vx_,
            vy_,
            angle_,
            angular_velocity_,
            left_contact_ ? 1.0 : 0.0,
            right_contact_ ? 1.0 : 0.0};
}

}  // namespace esrl::env
