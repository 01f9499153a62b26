#pragma once

// FIFO replay memory over encrypted transitions. By construction nothing in
// here ever holds a plaintext processed state — both endpoints of a
// transition are CipherStates as produced by the encryption primitive.

#include <cstddef>
#include <vector>

#include "esrl/cipher/primitive.hpp"
#include "esrl/common.hpp"

namespace esrl::dqn {

struct Transition {
    cipher::CipherState state;
    int action = 0;
    double reward = 0.0;
    cipher::CipherState next_state;
    bool done = false;
};

class ReplayMemory {
public:
    explicit ReplayMemory(std::size_t capacity) : capacity_(capacity) {
        if (capacity_ < 1) throw ConfigError("replay capacity must be positive");
    }

    void push(Transition t) {
        if (data_.size() < capacity_) {
            data_.push_back(std::move(t));
        } else {
            data_[cursor_] = std::move(t);
        }
        cursor_ = (cursor_ + 1) % capacity_;
    }

    std::size_t size() const { return data_.size(); }
    std::size_t capacity() const { return capacity_; }

    // Insertion-order-agnostic access for audits and tests.
    const Transition& at(std::size_t i) const { return data_.at(i); }

    /// Uniform sample of n distinct indices (Floyd's algorithm), returned as
    /// pointers valid until the next push.
    std::vector<const Transition*> sample(std::size_t n, Rng& rng) const {
        if (n > data_.size())
            throw UsageError("sample size exceeds stored transitions");
        std::vector<std::size_t> picked;
        picked.reserve(n);
        for (std::size_t j = data_.size() - n; j < data_.size(); ++j) {
            std::size_t t = rand_index(rng, j + 1);
            for (std::size_t seen : picked)
                if (seen == t) {
                    t = j;
                    break;
                }
            picked.push_back(t);
        }
        std::vector<const Transition*> out;
        out.reserve(n);
        for (std::size_t idx : picked) out.push_back(&data_[idx]);
        return out;
    }

private:
    std::vector<Transition> data_;
    std::size_t capacity_;
    std::size_t cursor_ = 0;
};

}  // namespace esrl::dqn
