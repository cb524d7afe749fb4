#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpdf/core.hpp"

namespace gpdf {

struct WeightSolution {
    std::vector<int> sizes;   // ascending
    std::vector<int> counts;  // counts[i] blocks of size sizes[i]

    int count_of(int k) const;
    std::int64_t total() const;
    friend bool operator==(const WeightSolution&, const WeightSolution&) = default;
};

// Ordered by the count of the largest size ascending, then the next largest, and so on.
std::vector<WeightSolution> weight_solutions(std::int64_t total_diffs, const SizeSet& sizes);

enum class Feasibility { feasible, infeasible, unknown };

struct FeasibilityVerdict {
    Feasibility status = Feasibility::unknown;
    std::string tag;     // weight-equation, profile, theorem-exception, parity, unsupported, open-case
    std::string reason;  // human-readable citation

    bool feasible() const { return status == Feasibility::feasible; }
    bool infeasible() const { return status == Feasibility::infeasible; }
};

FeasibilityVerdict necessary_conditions(int n, int m, const SizeSet& sizes);

// The definite exceptions {1,d} and the possible-exception pairs, as unordered pairs (a <= b).
const std::vector<int>& exceptional_orders();
const std::vector<std::pair<int, int>>& possible_exception_pairs();
bool in_exceptional_orders(int v);

struct BlockProfile {
    std::vector<int> x_counts;  // multiplicity of each column offset 0..t
    std::vector<int> classes;   // pairs per |dx| class 0..t
};

std::vector<BlockProfile> realizable_profiles(int n, int m, int k);

enum class ProfileVerdict { infeasible, inconclusive };

struct ProfileResult {
    ProfileVerdict verdict = ProfileVerdict::inconclusive;
    std::string detail;
};

ProfileResult profile_infeasibility(int n, int m, const SizeSet& sizes);

}  // namespace gpdf
