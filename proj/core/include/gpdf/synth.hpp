#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpdf/budget.hpp"
#include "gpdf/core.hpp"

namespace gpdf {

enum class StepOp {
    select,
    empty,
    catalog,
    search_pdp,
    search_pdm,
    search_mgdd,
    search_langford,
    langford_pdp,
    pdm_spgdd,
    spmgdd,
    augment,
    inflate,
    compose,
    transpose,
    expand,
};

std::string_view op_name(StepOp op);

struct StepParams {
    int n = 0;  // first axis [n] (or PDM/Langford order)
    int m = 0;  // second axis [m]; 1 for one-dimensional designs
    int k = 0;  // PDM rows, MGDD holes, SPGDD groups
    int h = 0;  // MGDD groups
    int d = 0;  // Langford defect
    SizeSet sizes;
    std::optional<LeaveSpec> leave;
    int entry = -1;  // index into the embedded catalog
    std::string source;
};

struct PlanStep {
    StepOp op = StepOp::select;
    StepParams params;
    std::string cite;
    int role = 0;  // block size this input serves; 0 for structural inputs
    std::vector<PlanStep> inputs;
};

struct Plan {
    int n = 0;
    int m = 0;
    SizeSet sizes;
    PlanStep root;
};

enum class OutcomeKind { planned, built, infeasible, unknown, external_dependency, budget_exceeded };

std::string_view outcome_name(OutcomeKind k);

struct PlanOutcome {
    OutcomeKind kind = OutcomeKind::unknown;
    std::optional<Plan> plan;
    std::optional<DiffFamily> design;
    std::string reason;
};

PlanOutcome plan(int n, int m, const SizeSet& sizes);

// Runs a planned outcome; any other outcome is returned unchanged.
PlanOutcome execute(const PlanOutcome& planned, const SearchBudget& budget);
PlanOutcome execute(const Plan& p, const SearchBudget& budget);

PlanOutcome synth(int n, int m, const SizeSet& sizes, const SearchBudget& budget);

// One step per line, children indented by two spaces.
std::string format_plan(const Plan& p);
std::string format_step(const PlanStep& s, int indent = 0);

// Every citation string a plan may carry.
const std::vector<std::string>& known_anchors();
std::vector<std::string> plan_citations(const Plan& p);

// Rows of the 5 x m, {9,11} x m and {15,17,21,27} x m tables.
struct TableRow {
    int table = 0;
    std::vector<int> residues;  // m mod 24
    int at_least = 0;           // threshold row when positive
    std::vector<int> values;    // explicit m-values otherwise
    int h = 0;                  // 0: the input design is n x m itself
    int r = 1;

    bool matches(int m) const;
    std::string label() const;
};

const std::vector<TableRow>& table_rows();
const TableRow* find_row(int table, int m);

}  // namespace gpdf
