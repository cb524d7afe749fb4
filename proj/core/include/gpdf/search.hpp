#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "gpdf/budget.hpp"
#include "gpdf/core.hpp"
#include "gpdf/verify.hpp"

namespace gpdf {

enum class SearchStatus { found, exhausted, budget_exceeded };

std::string_view status_name(SearchStatus s);

template <class T>
struct SearchOutcome {
    SearchStatus status = SearchStatus::exhausted;
    std::optional<T> design;
    std::uint64_t nodes = 0;

    bool found() const { return status == SearchStatus::found; }
};

// Every found family verifies with computed leave equal to leave.denoted().
// The returned family is the first one reached in a fixed search order, with
// each block translated so its lexicographically least point is the origin.
SearchOutcome<DiffFamily> search_gen_pdp(const SymmetricSet& n, const SymmetricSet& m, const SizeSet& sizes,
                                         const LeaveSpec& leave, const SearchBudget& budget);

// Last row is fixed to zeros and columns are sorted by first-row value.
SearchOutcome<PDMatrix> search_pdm(int k, int m, const SearchBudget& budget);

// Grid of h groups by k holes with block sizes from block_sizes.
SearchOutcome<MGDDInstance> search_mgdd(const SizeSet& block_sizes, int k, int h, const SearchBudget& budget);

SearchOutcome<LangfordSeq> search_langford(int n, int d, const SearchBudget& budget);

}  // namespace gpdf
