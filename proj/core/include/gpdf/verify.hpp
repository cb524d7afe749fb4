#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpdf/core.hpp"

namespace gpdf {

struct VerifyReport {
    bool ok = false;
    std::vector<Point> computed_leave;
    std::vector<Point> collisions;
    std::vector<Point> out_of_window;
    std::vector<Point> points_outside;
    std::vector<int> bad_sizes;

    bool leave_equals(const LeaveSpec& leave) const;
    std::string describe() const;
};

VerifyReport verify_gen_pdp(const DiffFamily& f);
bool verify_gen_pdf(const DiffFamily& f);
bool verify_with_leave(const DiffFamily& f, const LeaveSpec& leave);

// Group index in x, window offset in y.
struct SPGDDInstance {
    std::vector<int> group_labels;
    SymmetricSet window;
    std::vector<Block> base_blocks;

    std::size_t groups() const { return group_labels.size(); }
    int m() const { return static_cast<int>(window.size()); }
    SizeSet block_sizes() const;
};

enum class SpgddKind { plain, modified };

SPGDDInstance make_spgdd(int groups, int m, std::vector<Block> blocks);
bool verify_spgdd(const SPGDDInstance& inst, SpgddKind kind);
bool develop_and_check(const SPGDDInstance& inst, SpgddKind kind = SpgddKind::plain);

struct PDMatrix {
    int k = 0;
    int m = 0;
    std::vector<std::vector<int>> rows;
};

bool verify_pdm(const PDMatrix& p);
SPGDDInstance pdm_to_spgdd(const PDMatrix& p);
std::optional<PDMatrix> spgdd_to_pdm(const SPGDDInstance& inst);

// Blocks are sets of (group, hole) cells of the h x k grid.
struct MGDDInstance {
    int h = 0;
    int k = 0;
    std::vector<Block> blocks;
};

bool verify_mgdd(const MGDDInstance& inst);

struct LangfordSeq {
    int n = 0;
    int d = 0;
    std::vector<std::pair<int, int>> pairs;
};

bool langford_conditions(int n, int d);
bool verify_langford(const LangfordSeq& seq);

// (x, y) -> x + y*n over [nm]; requires interval ambients.
DiffFamily tau_map(const DiffFamily& f);

}  // namespace gpdf
