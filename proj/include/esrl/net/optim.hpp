#pragma once

// Adam with bias correction, and the Huber loss used for TD errors. Moment
// accumulators are kept in double regardless of the network scalar type.

#include <cmath>
#include <cstddef>
#include <vector>

#include "esrl/common.hpp"
#include "esrl/net/network.hpp"

namespace esrl::net {

template <typename T>
struct HuberResult {
    T loss;
    T grad;  // d loss / d pred
};

template <typename T>
HuberResult<T> huber(T pred, T target, T delta) {
    const T err = pred - target;
    const T abs_err = err < T(0) ? -err : err;
    if (abs_err <= delta) return {err * err / T(2), err};
    return {delta * (abs_err - delta / T(2)), err < T(0) ? -delta : delta};
}

template <typename T>
class Adam {
public:
    explicit Adam(double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
        : beta1_(beta1), beta2_(beta2), eps_(eps) {}

    void step(const std::vector<ParamView<T>>& views, double lr) {
        std::size_t total = 0;
        for (const auto& view : views) total += view.size;
        if (m_.empty()) {
            m_.assign(total, 0.0);
            v_.assign(total, 0.0);
        } else if (m_.size() != total) {
            throw UsageError("optimizer bound to a different parameter count");
        }
        ++t_;
        const double corr1 = 1.0 - std::pow(beta1_, t_);
        const double corr2 = 1.0 - std::pow(beta2_, t_);
        std::size_t off = 0;
        for (const auto& view : views) {
            for (std::size_t i = 0; i < view.size; ++i, ++off) {
                const double g = static_cast<double>(view.grad[i]);
                m_[off] = beta1_ * m_[off] + (1.0 - beta1_) * g;
                v_[off] = beta2_ * v_[off] + (1.0 - beta2_) * g * g;
                const double m_hat = m_[off] / corr1;
                const double v_hat = v_[off] / corr2;
                view.param[i] -=
                    static_cast<T>(lr * m_hat / (std::sqrt(v_hat) + eps_));
            }
        }
    }

    int steps() const { return t_; }

private:
    double beta1_, beta2_, eps_;
    int t_ = 0;
    std::vector<double> m_, v_;
};

}  // namespace esrl::net
