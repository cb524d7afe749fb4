#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpdf/budget.hpp"

namespace gpdf {

// Dancing-links exact cover. Primary items must be covered exactly once,
// secondary items at most once. Item choice is minimum remaining values with
// ties broken by lowest index; options are tried in insertion order.
class ExactCover {
public:
    ExactCover(int primary, int secondary = 0);

    int add_option(std::span<const int> items);
    int option_count() const { return static_cast<int>(option_items_.size()); }
    std::span<const int> option(int id) const { return option_items_[static_cast<std::size_t>(id)]; }

    enum class Status { found, exhausted, budget_exceeded };

    struct Result {
        Status status = Status::exhausted;
        std::vector<int> options;
        std::uint64_t nodes = 0;
    };

    Result solve(const SearchBudget& budget) const;

private:
    int primary_;
    int secondary_;
    std::vector<std::vector<int>> option_items_;
};

}  // namespace gpdf
