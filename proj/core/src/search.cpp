#include "gpdf/search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "gpdf/exact_cover.hpp"

namespace gpdf {

std::string_view status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::exhausted: return "exhausted";
        case SearchStatus::budget_exceeded: return "budget-exceeded";
    }
    return "?";
}

namespace {

class PdpSearch {
public:
    PdpSearch(const SymmetricSet& n, const SymmetricSet& m, const SizeSet& sizes, const LeaveSpec& leave)
        : x_(n.max_abs()), y_(m.max_abs()), w_(2 * x_ + 1), h_(2 * y_ + 1), sizes_(sizes.begin(), sizes.end()) {
        const int cells = w_ * h_;
        center_ = x_ * h_ + y_;
        blocked_.assign(static_cast<std::size_t>(cells), 0);
        for (int dx = -x_; dx <= x_; ++dx) {
            for (int dy = -y_; dy <= y_; ++dy) {
                if (!n.contains(dx) || !m.contains(dy)) blocked_[idx(dx, dy)] = 1;
            }
        }
        for (const auto& p : leave.denoted()) {
            if (std::abs(p.x) > x_ || std::abs(p.y) > y_) throw InvalidInput("leave is not inside the window");
            blocked_[idx(p.x, p.y)] = 1;
        }
        for (int c = center_ + 1; c < cells; ++c) {
            if (!blocked_[static_cast<std::size_t>(c)]) targets_.push_back(c);
        }
        rank_.assign(static_cast<std::size_t>(cells), 0);
        for (int c : targets_) {
            rank_[static_cast<std::size_t>(c)] = (w_ - std::abs(dx_of(c))) * (h_ - std::abs(dy_of(c)));
        }
        const int total = 2 * static_cast<int>(targets_.size());
        reachable_.assign(static_cast<std::size_t>(total + 1), 0);
        reachable_[0] = 1;
        for (int r = 1; r <= total; ++r) {
            for (int k : sizes_) {
                const int w = k * (k - 1);
                if (w > 0 && w <= r && reachable_[static_cast<std::size_t>(r - w)]) reachable_[static_cast<std::size_t>(r)] = 1;
            }
        }
        allow_pairs_ = sizes.contains(2);
        max_size_ = sizes_.empty() ? 0 : sizes_.back();
        used_.assign(static_cast<std::size_t>(cells), 0);
    }

    bool consistent() const { return reachable_.back() != 0; }

    struct BlockPts {
        std::vector<int> cells;  // block points as cell indices, origin included
    };

    // Top-level options: blocks through the first target, after the negation filter.
    std::vector<BlockPts> root_options() {
        std::vector<BlockPts> out;
        if (targets_.empty()) return out;
        const int d = choose_target(static_cast<int>(targets_.size()));
        if (d < 0) return out;
        enumerate_blocks(d, [&](const std::vector<int>& pts) {
            if (negation_ok(d, pts)) out.push_back({pts});
            return false;
        });
        return out;
    }

    // 1 found, 0 exhausted, -1 budget
    int solve_from(const BlockPts* first, BudgetMeter& meter) {
        std::fill(used_.begin(), used_.end(), 0);
        covered_ = 0;
        chosen_.clear();
        if (first) {
            apply(first->cells);
            chosen_.push_back(first->cells);
        }
        meter_ = &meter;
        aborted_ = false;
        const bool ok = recurse(first == nullptr);
        if (ok) return 1;
        return aborted_ ? -1 : 0;
    }

    DiffFamily result(const SymmetricSet& n, const SymmetricSet& m, const SizeSet& sizes) const {
        std::vector<Block> blocks;
        for (const auto& cells : chosen_) {
            std::vector<Point> pts;
            for (int c : cells) pts.push_back({dx_of(c), dy_of(c)});
            Point least = *std::min_element(pts.begin(), pts.end());
            for (auto& p : pts) p = p - least;
            blocks.emplace_back(std::move(pts));
        }
        return DiffFamily::make(std::move(blocks), n, m, sizes);
    }

private:
    std::size_t idx(int dx, int dy) const { return static_cast<std::size_t>((dx + x_) * h_ + (dy + y_)); }
    int dx_of(int c) const { return c / h_ - x_; }
    int dy_of(int c) const { return c % h_ - y_; }
    int neg(int c) const { return w_ * h_ - 1 - c; }

    // Cell of the difference a - b, or -1 outside the grid.
    int sub(int a, int b) const {
        const int dx = dx_of(a) - dx_of(b);
        const int dy = dy_of(a) - dy_of(b);
        if (dx < -x_ || dx > x_ || dy < -y_ || dy > y_) return -1;
        return static_cast<int>(idx(dx, dy));
    }

    bool free(int c) const {
        return c >= 0 && !blocked_[static_cast<std::size_t>(c)] && !used_[static_cast<std::size_t>(c)];
    }

    int completion_count(int d, int cutoff) const {
        int count = 0;
        const int cells = w_ * h_;
        const int nd = neg(d);
        for (int z = 0; z < cells; ++z) {
            if (z == center_ || z == d || z == nd || !free(z)) continue;
            const int zd = sub(z, d);
            if (!free(zd) || zd == d || zd == nd || zd == z || zd == neg(z)) continue;
            if (++count >= cutoff) return count;
        }
        return count;
    }

    int choose_target(int /*remaining*/) const {
        int best = -1;
        int best_count = std::numeric_limits<int>::max();
        int best_rank = 0;
        for (int d : targets_) {
            if (used_[static_cast<std::size_t>(d)]) continue;
            if (allow_pairs_) {
                const int r = rank_[static_cast<std::size_t>(d)];
                if (best < 0 || r < best_rank) {
                    best = d;
                    best_rank = r;
                }
                continue;
            }
            const int r = rank_[static_cast<std::size_t>(d)];
            const int c = completion_count(d, best_count == std::numeric_limits<int>::max() ? best_count : best_count + 1);
            if (c == 0) return -2;
            if (c < best_count || (c == best_count && r < best_rank)) {
                best = d;
                best_count = c;
                best_rank = r;
            }
        }
        return best;
    }

    bool negation_ok(int d, const std::vector<int>& pts) const {
        std::vector<int> mine;
        std::vector<int> mirrored;
        for (int c : pts) {
            if (c == center_ || c == d) continue;
            mine.push_back(c);
            mirrored.push_back(sub(d, c));
        }
        std::ranges::sort(mine);
        std::ranges::sort(mirrored);
        return mine <= mirrored;
    }

    // Marks all differences of the block; returns false (and leaves state unchanged) on conflict.
    bool apply(const std::vector<int>& pts) {
        std::vector<int> marked;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                const int c = sub(pts[i], pts[j]);
                if (!free(c) || !free(neg(c))) {
                    for (int u : marked) used_[static_cast<std::size_t>(u)] = 0;
                    return false;
                }
                used_[static_cast<std::size_t>(c)] = 1;
                used_[static_cast<std::size_t>(neg(c))] = 1;
                marked.push_back(c);
                marked.push_back(neg(c));
            }
        }
        covered_ += static_cast<int>(pts.size() * (pts.size() - 1) / 2);
        return true;
    }

    void unapply(const std::vector<int>& pts) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                const int c = sub(pts[i], pts[j]);
                used_[static_cast<std::size_t>(c)] = 0;
                used_[static_cast<std::size_t>(neg(c))] = 0;
            }
        }
        covered_ -= static_cast<int>(pts.size() * (pts.size() - 1) / 2);
    }

    // Calls visit(points) for each block {0, d, z...}; stops when visit returns true.
    template <class Visit>
    bool enumerate_blocks(int d, Visit&& visit) {
        std::vector<int> pts{center_, d};
        used_[static_cast<std::size_t>(d)] = 1;
        used_[static_cast<std::size_t>(neg(d))] = 1;
        const bool stop = extend(pts, 0, visit);
        used_[static_cast<std::size_t>(d)] = 0;
        used_[static_cast<std::size_t>(neg(d))] = 0;
        return stop;
    }

    template <class Visit>
    bool extend(std::vector<int>& pts, int start, Visit& visit) {
        const int size = static_cast<int>(pts.size());
        if (std::ranges::binary_search(sizes_, size)) {
            if (visit(pts)) return true;
            if (aborted_) return false;
        }
        if (size >= max_size_) return false;
        const int cells = w_ * h_;
        std::vector<int> marked;
        for (int z = start; z < cells; ++z) {
            if (z == center_ || z == pts[1] || !free(z)) continue;
            if (!free(sub(z, pts[1]))) continue;
            marked.clear();
            bool ok = true;
            for (int p : pts) {
                const int c = sub(z, p);
                if (!free(c) || !free(neg(c)) || c == neg(c)) {
                    ok = false;
                    break;
                }
                used_[static_cast<std::size_t>(c)] = 1;
                used_[static_cast<std::size_t>(neg(c))] = 1;
                marked.push_back(c);
            }
            if (ok) {
                pts.push_back(z);
                const bool stop = extend(pts, z + 1, visit);
                pts.pop_back();
                if (stop) {
                    for (int c : marked) {
                        used_[static_cast<std::size_t>(c)] = 0;
                        used_[static_cast<std::size_t>(neg(c))] = 0;
                    }
                    return true;
                }
            }
            for (int c : marked) {
                used_[static_cast<std::size_t>(c)] = 0;
                used_[static_cast<std::size_t>(neg(c))] = 0;
            }
            if (aborted_) return false;
        }
        return false;
    }

    bool recurse(bool root) {
        const int remaining = 2 * (static_cast<int>(targets_.size()) - covered_);
        if (remaining == 0) return true;
        if (!reachable_[static_cast<std::size_t>(remaining)]) return false;
        const int d = choose_target(remaining);
        if (d < 0) return false;
        return enumerate_blocks(d, [&](const std::vector<int>& pts) {
            if (!meter_->tick()) {
                aborted_ = true;
                return false;
            }
            if (root && !negation_ok(d, pts)) return false;
            // The differences of pts are already marked by extend(); record and descend.
            chosen_.push_back(pts);
            covered_ += static_cast<int>(pts.size() * (pts.size() - 1) / 2);
            const bool ok = recurse(false);
            covered_ -= static_cast<int>(pts.size() * (pts.size() - 1) / 2);
            if (ok) return true;
            chosen_.pop_back();
            return false;
        });
    }

    int x_, y_, w_, h_, center_ = 0;
    std::vector<int> sizes_;
    std::vector<char> blocked_;
    std::vector<char> used_;
    std::vector<int> targets_;
    std::vector<int> rank_;
    std::vector<char> reachable_;
    bool allow_pairs_ = false;
    int max_size_ = 0;
    int covered_ = 0;
    std::vector<std::vector<int>> chosen_;
    BudgetMeter* meter_ = nullptr;
    bool aborted_ = false;
};

template <class T>
void post_check(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("search produced a design that fails verification: ") + what);
}

}  // namespace

SearchOutcome<DiffFamily> search_gen_pdp(const SymmetricSet& n, const SymmetricSet& m, const SizeSet& sizes,
                                         const LeaveSpec& leave, const SearchBudget& budget) {
    PdpSearch base(n, m, sizes, leave);
    SearchOutcome<DiffFamily> out;
    if (!base.consistent()) return out;

    auto finish = [&](PdpSearch& s) {
        out.status = SearchStatus::found;
        out.design = s.result(n, m, sizes);
        post_check<DiffFamily>(verify_with_leave(*out.design, leave), "generalized PDP");
    };

    if (budget.parallel <= 1) {
        BudgetMeter meter(budget);
        const int st = base.solve_from(nullptr, meter);
        out.nodes = meter.nodes();
        if (st == 1) finish(base);
        else out.status = st == 0 ? SearchStatus::exhausted : SearchStatus::budget_exceeded;
        return out;
    }

    const auto roots = base.root_options();
    if (roots.empty()) {
        BudgetMeter meter(budget);
        const int st = base.solve_from(nullptr, meter);
        out.nodes = meter.nodes();
        if (st == 1) finish(base);
        else out.status = st == 0 ? SearchStatus::exhausted : SearchStatus::budget_exceeded;
        return out;
    }
    const int count = static_cast<int>(roots.size());
    std::vector<int> status(static_cast<std::size_t>(count), -1);
    std::vector<std::optional<DiffFamily>> found(static_cast<std::size_t>(count));
    std::vector<std::uint64_t> nodes(static_cast<std::size_t>(count), 0);
    std::atomic<int> next{0};
    std::atomic<int> lowest_found{count};
    auto worker = [&] {
        PdpSearch local = base;
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count) break;
            if (i > lowest_found.load()) {
                status[static_cast<std::size_t>(i)] = -1;
                continue;
            }
            BudgetMeter meter(budget);
            const int st = local.solve_from(&roots[static_cast<std::size_t>(i)], meter);
            nodes[static_cast<std::size_t>(i)] = meter.nodes();
            status[static_cast<std::size_t>(i)] = st;
            if (st == 1) {
                found[static_cast<std::size_t>(i)] = local.result(n, m, sizes);
                int cur = lowest_found.load();
                while (i < cur && !lowest_found.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    const int width = std::min(budget.parallel, count);
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < width; ++t) pool.emplace_back(worker);
    }
    for (int i = 0; i < count; ++i) {
        out.nodes += nodes[static_cast<std::size_t>(i)];
        const int st = status[static_cast<std::size_t>(i)];
        if (st == 0) continue;
        if (st == 1) {
            out.status = SearchStatus::found;
            out.design = std::move(found[static_cast<std::size_t>(i)]);
            post_check<DiffFamily>(verify_with_leave(*out.design, leave), "generalized PDP");
            return out;
        }
        out.status = SearchStatus::budget_exceeded;
        return out;
    }
    out.status = SearchStatus::exhausted;
    return out;
}

namespace {

SearchStatus map_status(ExactCover::Status s) {
    switch (s) {
        case ExactCover::Status::found: return SearchStatus::found;
        case ExactCover::Status::exhausted: return SearchStatus::exhausted;
        case ExactCover::Status::budget_exceeded: return SearchStatus::budget_exceeded;
    }
    return SearchStatus::budget_exceeded;
}

}  // namespace

SearchOutcome<PDMatrix> search_pdm(int k, int m, const SearchBudget& budget) {
    if (m < 1 || m % 2 == 0) throw InvalidParameter("PDM window must be odd");
    if (k < 2) throw InvalidParameter("PDM needs at least two rows");
    const int t = (m - 1) / 2;
    const int free_rows = k - 1;
    // items: (row r vs last row, value) then (row a vs row b, difference) for a < b < k-1
    std::vector<std::pair<int, int>> row_pairs;
    for (int a = 0; a < free_rows; ++a) {
        for (int b = a + 1; b < free_rows; ++b) row_pairs.emplace_back(a, b);
    }
    const int items = (free_rows + static_cast<int>(row_pairs.size())) * m;
    ExactCover ec(items);
    std::vector<std::vector<int>> columns;
    std::vector<int> col(static_cast<std::size_t>(free_rows), -t);
    std::vector<int> opt;
    while (true) {
        bool ok = true;
        opt.clear();
        for (int r = 0; r < free_rows; ++r) opt.push_back(r * m + col[static_cast<std::size_t>(r)] + t);
        for (std::size_t p = 0; p < row_pairs.size() && ok; ++p) {
            const int diff = col[static_cast<std::size_t>(row_pairs[p].first)] - col[static_cast<std::size_t>(row_pairs[p].second)];
            if (diff < -t || diff > t) ok = false;
            else opt.push_back((free_rows + static_cast<int>(p)) * m + diff + t);
        }
        if (ok) {
            ec.add_option(opt);
            columns.push_back(col);
        }
        int r = free_rows - 1;
        while (r >= 0 && col[static_cast<std::size_t>(r)] == t) col[static_cast<std::size_t>(r--)] = -t;
        if (r < 0) break;
        ++col[static_cast<std::size_t>(r)];
    }
    auto res = ec.solve(budget);
    SearchOutcome<PDMatrix> out;
    out.status = map_status(res.status);
    out.nodes = res.nodes;
    if (!out.found()) return out;
    std::vector<std::vector<int>> chosen;
    for (int o : res.options) chosen.push_back(columns[static_cast<std::size_t>(o)]);
    std::ranges::sort(chosen);
    PDMatrix p{k, m, std::vector<std::vector<int>>(static_cast<std::size_t>(k))};
    for (const auto& c : chosen) {
        for (int r = 0; r < free_rows; ++r) p.rows[static_cast<std::size_t>(r)].push_back(c[static_cast<std::size_t>(r)]);
        p.rows[static_cast<std::size_t>(k - 1)].push_back(0);
    }
    post_check<PDMatrix>(verify_pdm(p), "PDM");
    out.design = std::move(p);
    return out;
}

SearchOutcome<MGDDInstance> search_mgdd(const SizeSet& block_sizes, int k, int h, const SearchBudget& budget) {
    if (k < 1 || h < 1) throw InvalidParameter("MGDD needs positive group and hole counts");
    const int cells = h * k;
    auto cell = [k](int g, int x) { return g * k + x; };
    std::map<std::pair<int, int>, int> pair_item;
    for (int a = 0; a < cells; ++a) {
        for (int b = a + 1; b < cells; ++b) {
            if (a / k != b / k && a % k != b % k) {
                const int id = static_cast<int>(pair_item.size());
                pair_item[{a, b}] = id;
            }
        }
    }
    ExactCover ec(static_cast<int>(pair_item.size()));
    std::vector<std::vector<Point>> blocks;
    const int anchor_a = cell(0, 0);
    const int anchor_b = h > 1 && k > 1 ? cell(1, 1) : -1;
    std::vector<Point> cur;
    std::vector<char> hole_used(static_cast<std::size_t>(k), 0);
    auto emit = [&] {
        std::vector<int> opt;
        bool has_anchor = false;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                int a = cell(cur[i].x, cur[i].y);
                int b = cell(cur[j].x, cur[j].y);
                if (a > b) std::swap(a, b);
                if (a == anchor_a && b == anchor_b) has_anchor = true;
                opt.push_back(pair_item.at({a, b}));
            }
        }
        if (has_anchor) {
            for (std::size_t i = 0; i < cur.size(); ++i) {
                if (cur[i].x != static_cast<int>(i) || cur[i].y != static_cast<int>(i)) return;
            }
        }
        ec.add_option(opt);
        blocks.push_back(cur);
    };
    std::function<void(int)> rec = [&](int g) {
        const int size = static_cast<int>(cur.size());
        if (block_sizes.contains(size)) emit();
        if (g >= h || size >= *block_sizes.rbegin()) return;
        for (int gg = g; gg < h; ++gg) {
            for (int x = 0; x < k; ++x) {
                if (hole_used[static_cast<std::size_t>(x)]) continue;
                hole_used[static_cast<std::size_t>(x)] = 1;
                cur.push_back({gg, x});
                rec(gg + 1);
                cur.pop_back();
                hole_used[static_cast<std::size_t>(x)] = 0;
            }
        }
    };
    rec(0);
    auto res = ec.solve(budget);
    SearchOutcome<MGDDInstance> out;
    out.status = map_status(res.status);
    out.nodes = res.nodes;
    if (!out.found()) return out;
    MGDDInstance inst{h, k, {}};
    for (int o : res.options) inst.blocks.emplace_back(blocks[static_cast<std::size_t>(o)]);
    std::ranges::sort(inst.blocks);
    post_check<MGDDInstance>(verify_mgdd(inst), "MGDD");
    out.design = std::move(inst);
    return out;
}

SearchOutcome<LangfordSeq> search_langford(int n, int d, const SearchBudget& budget) {
    SearchOutcome<LangfordSeq> out;
    if (!langford_conditions(n, d)) return out;
    // items: positions 1..2n, then differences d..d+n-1
    ExactCover ec(3 * n);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        const int delta = d + i;
        for (int a = 1; a + delta <= 2 * n; ++a) {
            const int opt[] = {a - 1, a + delta - 1, 2 * n + i};
            ec.add_option(opt);
            pairs.emplace_back(a, a + delta);
        }
    }
    auto res = ec.solve(budget);
    out.status = map_status(res.status);
    out.nodes = res.nodes;
    if (!out.found()) return out;
    LangfordSeq seq{n, d, {}};
    for (int o : res.options) seq.pairs.push_back(pairs[static_cast<std::size_t>(o)]);
    std::ranges::sort(seq.pairs, [](auto a, auto b) { return a.second - a.first < b.second - b.first; });
    post_check<LangfordSeq>(verify_langford(seq), "Langford sequence");
    out.design = std::move(seq);
    return out;
}

}  // namespace gpdf
