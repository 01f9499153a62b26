#pragma once

// Process-wide count of live training loops. The benchmark harness consults
// it to refuse timing runs that would share the core with training.

#include <atomic>

namespace esrl {

inline std::atomic<int>& training_activity() {
    static std::atomic<int> count{0};
    return count;
}

struct TrainingActivityScope {
    TrainingActivityScope() { training_activity().fetch_add(1); }
    ~TrainingActivityScope() { training_activity().fetch_sub(1); }
    TrainingActivityScope(const TrainingActivityScope&) = delete;
    TrainingActivityScope& operator=(const TrainingActivityScope&) = delete;
};

}  // namespace esrl
