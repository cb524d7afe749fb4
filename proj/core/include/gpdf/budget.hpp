#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>

namespace gpdf {

struct SearchBudget {
    std::uint64_t nodes = std::numeric_limits<std::uint64_t>::max();
    double seconds = std::numeric_limits<double>::infinity();
    int parallel = 1;

    static SearchBudget unlimited() { return {}; }
    static SearchBudget node_limit(std::uint64_t n) { return {n, std::numeric_limits<double>::infinity(), 1}; }
};

// Counts nodes against a budget and polls the clock every few thousand nodes.
class BudgetMeter {
public:
    explicit BudgetMeter(const SearchBudget& b, const std::atomic<bool>* cancel = nullptr)
        : limit_(b.nodes), seconds_(b.seconds), start_(std::chrono::steady_clock::now()), cancel_(cancel) {}

    bool tick() {
        if (++nodes_ > limit_) return false;
        if ((nodes_ & 0xFFF) == 0) {
            if (cancel_ && cancel_->load(std::memory_order_relaxed)) return false;
            if (seconds_ != std::numeric_limits<double>::infinity() && elapsed() > seconds_) return false;
        }
        return true;
    }

    std::uint64_t nodes() const { return nodes_; }
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::uint64_t nodes_ = 0;
    std::uint64_t limit_;
    double seconds_;
    std::chrono::steady_clock::time_point start_;
    const std::atomic<bool>* cancel_;
};

}  // namespace gpdf
