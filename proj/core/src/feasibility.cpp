#include "gpdf/feasibility.hpp"

#include "gpdf/exact_cover.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gpdf {

int WeightSolution::count_of(int k) const {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] == k) return counts[i];
    }
    return 0;
}

std::int64_t WeightSolution::total() const {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) t += counts[i] * ordered_pairs(sizes[i]);
    return t;
}

std::vector<WeightSolution> weight_solutions(std::int64_t total_diffs, const SizeSet& sizes) {
    std::vector<WeightSolution> out;
    if (total_diffs < 0) return out;
    std::vector<int> ks(sizes.begin(), sizes.end());
    std::vector<int> counts(ks.size(), 0);
    std::function<void(int, std::int64_t)> rec = [&](int idx, std::int64_t left) {
        if (idx < 0) {
            if (left == 0) out.push_back({ks, counts});
            return;
        }
        const std::int64_t w = ordered_pairs(ks[static_cast<std::size_t>(idx)]);
        if (w == 0) {
            if (idx == 0 && left == 0) out.push_back({ks, counts});
            else if (idx > 0) rec(idx - 1, left);
            return;
        }
        if (idx == 0) {
            if (left % w == 0) {
                counts[0] = static_cast<int>(left / w);
                out.push_back({ks, counts});
                counts[0] = 0;
            }
            return;
        }
        for (std::int64_t c = 0; c * w <= left; ++c) {
            counts[static_cast<std::size_t>(idx)] = static_cast<int>(c);
            rec(idx - 1, left - c * w);
        }
        counts[static_cast<std::size_t>(idx)] = 0;
    };
    if (!ks.empty()) rec(static_cast<int>(ks.size()) - 1, total_diffs);
    return out;
}

const std::vector<int>& exceptional_orders() {
    static const std::vector<int> d{3, 5, 9, 11, 15, 17, 21, 23, 27, 29, 35, 41, 47, 53};
    return d;
}

bool in_exceptional_orders(int v) { return std::ranges::binary_search(exceptional_orders(), v); }

const std::vector<std::pair<int, int>>& possible_exception_pairs() {
    static const std::vector<std::pair<int, int>> p{
        {5, 13},  {5, 45},  {7, 23},  {7, 29},  {7, 35},  {9, 35},  {11, 19}, {11, 27}, {13, 17},
        {13, 21}, {13, 23}, {13, 27}, {13, 29}, {13, 35}, {15, 17}, {15, 21}, {15, 27}, {17, 21},
        {17, 27}, {21, 21}, {21, 27}, {23, 45}, {27, 27}, {29, 45}, {35, 45},
    };
    return p;
}

namespace {

FeasibilityVerdict verdict(Feasibility s, std::string tag, std::string reason) {
    return {s, std::move(tag), std::move(reason)};
}

}  // namespace

FeasibilityVerdict necessary_conditions(int n, int m, const SizeSet& sizes) {
    if (n < 1 || m < 1) return verdict(Feasibility::infeasible, "parity", "orders must be positive");
    const bool k34 = sizes == SizeSet{3, 4};
    const bool k345 = sizes == SizeSet{3, 4, 5};
    if (k345 && (n % 2 == 0 || m % 2 == 0)) {
        return verdict(Feasibility::infeasible, "parity", "Theorem 1.7 parity");
    }
    if (n % 2 == 0 || m % 2 == 0) {
        return verdict(Feasibility::infeasible, "parity", "windows [n] need odd n");
    }
    const std::int64_t total = static_cast<std::int64_t>(n) * m - 1;
    if (weight_solutions(total, sizes).empty()) {
        return verdict(Feasibility::infeasible, "weight-equation", k34 ? "Theorem 1.6 weight equation" : "weight equation");
    }
    if (k34) return verdict(Feasibility::feasible, "", "Theorem 1.6");
    if (!k345) return verdict(Feasibility::unknown, "unsupported", "no existence table for K={" + format_sizes(sizes) + "}");

    const int a = std::min(n, m);
    const int b = std::max(n, m);
    if (a == 3 || b == 3) return verdict(Feasibility::infeasible, "profile", "Lemma 5.6 profile");
    if (a == 1 && in_exceptional_orders(b)) return verdict(Feasibility::infeasible, "theorem-exception", "Lemma 5.2");
    if (a == 5 && b == 7) return verdict(Feasibility::infeasible, "theorem-exception", "Lemma 5.8");
    if (a == 5 && b == 9) return verdict(Feasibility::infeasible, "profile", "Lemma 5.8 profile");
    if (std::ranges::find(possible_exception_pairs(), std::pair{a, b}) != possible_exception_pairs().end()) {
        return verdict(Feasibility::unknown, "open-case", "Theorem 1.7 possible exception");
    }
    return verdict(Feasibility::feasible, "", "Theorem 1.7");
}

namespace {

struct ShapeSearch {
    int t;
    int s;
    std::vector<int> xs;
    std::vector<int> ys;
    std::vector<char> used;

    std::size_t cell(int dx, int dy) const {
        return static_cast<std::size_t>((dx + 2 * t) * (4 * s + 1) + dy + 2 * s);
    }

    bool place(std::size_t i) {
        if (i == xs.size()) return true;
        int lo = -s;
        if (i > 0 && xs[i - 1] == xs[i]) lo = ys[i - 1] + 1;
        for (int y = (i == 0 ? 0 : lo); y <= (i == 0 ? 0 : s); ++y) {
            bool ok = true;
            std::vector<std::size_t> marked;
            for (std::size_t j = 0; j < i && ok; ++j) {
                const int dx = xs[i] - xs[j];
                const int dy = y - ys[j];
                if (dy < -s || dy > s) {
                    ok = false;
                    break;
                }
                for (auto c : {cell(dx, dy), cell(-dx, -dy)}) {
                    if (used[c]) {
                        ok = false;
                        break;
                    }
                    used[c] = 1;
                    marked.push_back(c);
                }
            }
            if (ok) {
                ys[i] = y;
                if (place(i + 1)) return true;
            }
            for (auto c : marked) used[c] = 0;
        }
        return false;
    }
};

bool realizable(const std::vector<int>& x_counts, int t, int m) {
    ShapeSearch sh{t, (m - 1) / 2, {}, {}, {}};
    for (int i = 0; i <= t; ++i) {
        for (int c = 0; c < x_counts[static_cast<std::size_t>(i)]; ++c) sh.xs.push_back(i);
    }
    sh.ys.assign(sh.xs.size(), 0);
    sh.used.assign(static_cast<std::size_t>((4 * t + 1) * (4 * sh.s + 1)), 0);
    return sh.place(0);
}

}  // namespace

std::vector<BlockProfile> realizable_profiles(int n, int m, int k) {
    const int t = (n - 1) / 2;
    std::vector<BlockProfile> out;
    std::set<std::vector<int>> seen;
    std::vector<int> counts(static_cast<std::size_t>(t + 1), 0);
    std::function<void(int, int)> rec = [&](int col, int left) {
        if (col > t) {
            if (left != 0 || counts[0] == 0) return;
            std::vector<int> classes(static_cast<std::size_t>(t + 1), 0);
            for (int i = 0; i <= t; ++i) {
                const int ci = counts[static_cast<std::size_t>(i)];
                classes[0] += ci * (ci - 1) / 2;
                for (int j = i + 1; j <= t; ++j) classes[static_cast<std::size_t>(j - i)] += ci * counts[static_cast<std::size_t>(j)];
            }
            if (seen.contains(classes) || !realizable(counts, t, m)) return;
            seen.insert(classes);
            out.push_back({counts, classes});
            return;
        }
        for (int c = 0; c <= std::min(left, m); ++c) {
            counts[static_cast<std::size_t>(col)] = c;
            rec(col + 1, left - c);
        }
        counts[static_cast<std::size_t>(col)] = 0;
    };
    rec(0, k);
    return out;
}

namespace {

// Finest refinement: every positive difference is its own class, so a profile
// is a block's positive difference set and an assignment is an exact cover.
ProfileResult difference_class_profiles(int n, int m, const SizeSet& sizes) {
    const int t = (n - 1) / 2;
    const int s = (m - 1) / 2;
    const int width = 2 * s + 1;
    auto positive_index = [&](int dx, int dy) -> int {
        if (dx < 0 || (dx == 0 && dy < 0)) {
            dx = -dx;
            dy = -dy;
        }
        return dx == 0 ? dy - 1 : s + (dx - 1) * width + (dy + s);
    };
    const int items = s + t * width;
    std::vector<Point> cands;
    for (int x = 0; x <= t; ++x) {
        for (int y = -s; y <= s; ++y) {
            if (Point{x, y} > Point{0, 0}) cands.push_back({x, y});
        }
    }
    std::uint64_t shapes_upper = 0;
    for (int k : sizes) {
        std::uint64_t c = 1;
        for (int i = 0; i < k - 1; ++i) c = c * (cands.size() - static_cast<std::size_t>(i)) / static_cast<std::uint64_t>(i + 1);
        shapes_upper += c;
    }
    if (shapes_upper > 5'000'000) return {ProfileVerdict::inconclusive, "column-class profiles admit an assignment; shape count over budget"};

    ExactCover ec(items);
    std::set<std::vector<int>> seen;
    std::vector<Point> pts{{0, 0}};
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        if (left == 0) {
            std::vector<int> diffs;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                for (std::size_t j = i + 1; j < pts.size(); ++j) diffs.push_back(positive_index(pts[j].x - pts[i].x, pts[j].y - pts[i].y));
            }
            std::ranges::sort(diffs);
            if (seen.insert(diffs).second) ec.add_option(diffs);
            return;
        }
        for (std::size_t c = from; c < cands.size(); ++c) {
            const Point p = cands[c];
            bool ok = true;
            for (const auto& q : pts) {
                const Point d = p - q;
                if (d.x < -t || d.x > t || d.y < -s || d.y > s) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            std::vector<int> mine;
            for (std::size_t i = 0; i < pts.size() && ok; ++i) {
                for (std::size_t j = i + 1; j < pts.size() && ok; ++j) {
                    if (positive_index(pts[j].x - pts[i].x, pts[j].y - pts[i].y) == positive_index(p.x - pts[i].x, p.y - pts[i].y)) ok = false;
                }
            }
            for (const auto& q : pts) {
                const int idx = positive_index(p.x - q.x, p.y - q.y);
                if (std::ranges::find(mine, idx) != mine.end()) ok = false;
                mine.push_back(idx);
            }
            if (!ok) continue;
            std::vector<int> old;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                for (std::size_t j = i + 1; j < pts.size(); ++j) old.push_back(positive_index(pts[j].x - pts[i].x, pts[j].y - pts[i].y));
            }
            for (int idx : mine) {
                if (std::ranges::find(old, idx) != old.end()) ok = false;
            }
            if (!ok) continue;
            pts.push_back(p);
            rec(c + 1, left - 1);
            pts.pop_back();
        }
    };
    for (int k : sizes) {
        if (k >= 2) rec(0, k - 1);
    }
    auto res = ec.solve(SearchBudget::node_limit(200'000'000));
    switch (res.status) {
        case ExactCover::Status::exhausted:
            return {ProfileVerdict::infeasible, "column-class profiles admit an assignment; difference-class profiles (" +
                                                    std::to_string(ec.option_count()) + " block shapes) admit none"};
        case ExactCover::Status::found:
            return {ProfileVerdict::inconclusive, "difference-class profiles admit an assignment (a design exists)"};
        case ExactCover::Status::budget_exceeded:
            break;
    }
    return {ProfileVerdict::inconclusive, "difference-class profile search over budget"};
}

}  // namespace

ProfileResult profile_infeasibility(int n, int m, const SizeSet& sizes) {
    if (n < 1 || m < 1 || n % 2 == 0 || m % 2 == 0) return {ProfileVerdict::inconclusive, "orders must be odd"};
    if (n > 9) return {ProfileVerdict::inconclusive, "first window larger than 9"};
    const int t = (n - 1) / 2;
    std::vector<int> target(static_cast<std::size_t>(t + 1), m);
    target[0] = (m - 1) / 2;
    std::vector<std::int64_t> stride(target.size());
    std::int64_t states = 1;
    for (std::size_t j = 0; j < target.size(); ++j) {
        stride[j] = states;
        states *= target[j] + 1;
        if (states > 20'000'000) return {ProfileVerdict::inconclusive, "profile state space over budget"};
    }
    std::vector<std::vector<int>> items;
    for (int k : sizes) {
        for (auto& p : realizable_profiles(n, m, k)) items.push_back(p.classes);
    }
    std::vector<char> reach(static_cast<std::size_t>(states), 0);
    reach[0] = 1;
    std::vector<int> cur(target.size(), 0);
    for (std::int64_t idx = 0; idx < states; ++idx) {
        std::int64_t rem = idx;
        for (std::size_t j = 0; j < target.size(); ++j) {
            cur[j] = static_cast<int>(rem % (target[j] + 1));
            rem /= target[j] + 1;
        }
        if (!reach[static_cast<std::size_t>(idx)]) continue;
        for (const auto& it : items) {
            std::int64_t next = idx;
            bool fits = true;
            for (std::size_t j = 0; j < target.size(); ++j) {
                if (cur[j] + it[j] > target[j]) {
                    fits = false;
                    break;
                }
                next += it[j] * stride[j];
            }
            if (fits && next != idx) reach[static_cast<std::size_t>(next)] = 1;
        }
    }
    if (!reach.back()) {
        return {ProfileVerdict::infeasible, "column-class profiles: no combination of " + std::to_string(items.size()) +
                                                " realizable block profiles meets the class totals"};
    }
    return difference_class_profiles(n, m, sizes);
}

}  // namespace gpdf
