#include "gpdf/verify.hpp"

#include <algorithm>
#include <set>

namespace gpdf {

namespace {

std::string join_points(const std::vector<Point>& pts, std::size_t limit = 6) {
    std::string s;
    for (std::size_t i = 0; i < pts.size() && i < limit; ++i) {
        if (i) s += " ";
        s += to_string(pts[i]);
    }
    if (pts.size() > limit) s += " ...";
    return s;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

bool VerifyReport::leave_equals(const LeaveSpec& leave) const { return computed_leave == leave.denoted(); }

std::string VerifyReport::describe() const {
    if (ok) return "ok, leave of size " + std::to_string(computed_leave.size());
    std::string s;
    auto add = [&s](const std::string& part) {
        if (!s.empty()) s += "; ";
        s += part;
    };
    if (!collisions.empty()) add("difference covered twice: " + join_points(collisions));
    if (!out_of_window.empty()) add("difference outside window: " + join_points(out_of_window));
    if (!points_outside.empty()) add("point outside window: " + join_points(points_outside));
    if (!bad_sizes.empty()) {
        std::string sz;
        for (int k : bad_sizes) sz += (sz.empty() ? "" : ",") + std::to_string(k);
        add("block size not allowed: " + sz);
    }
    return s;
}

VerifyReport verify_gen_pdp(const DiffFamily& f) {
    VerifyReport r;
    for (const auto& b : f.blocks) {
        if (!f.sizes.contains(static_cast<int>(b.size()))) r.bad_sizes.push_back(static_cast<int>(b.size()));
        for (const auto& p : b.points()) {
            if (!f.n_set.contains(p.x) || !f.m_set.contains(p.y)) r.points_outside.push_back(p);
        }
    }
    std::ranges::sort(r.bad_sizes);
    r.bad_sizes.erase(std::unique(r.bad_sizes.begin(), r.bad_sizes.end()), r.bad_sizes.end());

    auto delta = delta_family(f);
    r.collisions = std::move(delta.collisions);
    auto& diffs = delta.diffs;
    diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
    for (const auto& d : diffs) {
        if (!f.n_set.contains(d.x) || !f.m_set.contains(d.y)) r.out_of_window.push_back(d);
    }
    for (int x : f.n_set.elements()) {
        for (int y : f.m_set.elements()) {
            if (!std::ranges::binary_search(diffs, Point{x, y})) r.computed_leave.push_back({x, y});
        }
    }
    r.ok = r.collisions.empty() && r.out_of_window.empty() && r.points_outside.empty() && r.bad_sizes.empty();
    return r;
}

bool verify_gen_pdf(const DiffFamily& f) {
    auto r = verify_gen_pdp(f);
    return r.ok && r.computed_leave == std::vector<Point>{{0, 0}};
}

bool verify_with_leave(const DiffFamily& f, const LeaveSpec& leave) {
    auto r = verify_gen_pdp(f);
    return r.ok && r.leave_equals(leave);
}

SizeSet SPGDDInstance::block_sizes() const {
    SizeSet s;
    for (const auto& b : base_blocks) s.insert(static_cast<int>(b.size()));
    return s;
}

SPGDDInstance make_spgdd(int groups, int m, std::vector<Block> blocks) {
    SPGDDInstance inst;
    for (int i = 0; i < groups; ++i) inst.group_labels.push_back(i);
    inst.window = sym_interval(m);
    inst.base_blocks = std::move(blocks);
    std::ranges::sort(inst.base_blocks);
    return inst;
}

namespace {

bool well_formed(const SPGDDInstance& inst) {
    const int g = static_cast<int>(inst.groups());
    for (const auto& b : inst.base_blocks) {
        int prev = -1;
        for (const auto& p : b.points()) {
            if (p.x < 0 || p.x >= g || !inst.window.contains(p.y)) return false;
            if (p.x == prev) return false;
            prev = p.x;
        }
    }
    return true;
}

}  // namespace

bool verify_spgdd(const SPGDDInstance& inst, SpgddKind kind) {
    if (!inst.window.is_interval() || !well_formed(inst)) return false;
    const int g = static_cast<int>(inst.groups());
    const int t = inst.window.max_abs();
    const int span = 4 * t + 1;
    std::vector<int> count(static_cast<std::size_t>(g * g * span), 0);
    for (const auto& b : inst.base_blocks) {
        const auto pts = b.points();
        for (const auto& p : pts) {
            for (const auto& q : pts) {
                if (p.x == q.x) continue;
                ++count[static_cast<std::size_t>((p.x * g + q.x) * span + (p.y - q.y + 2 * t))];
            }
        }
    }
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            if (i == j) continue;
            for (int d = -2 * t; d <= 2 * t; ++d) {
                int want = (d >= -t && d <= t) ? 1 : 0;
                if (d == 0 && kind == SpgddKind::modified) want = 0;
                if (count[static_cast<std::size_t>((i * g + j) * span + d + 2 * t)] != want) return false;
            }
        }
    }
    return true;
}

bool develop_and_check(const SPGDDInstance& inst, SpgddKind kind) {
    if (!inst.window.is_interval() || !well_formed(inst)) {
        throw InvalidInput("develop_and_check needs base blocks inside groups x window without repeated groups");
    }
    const int g = static_cast<int>(inst.groups());
    const int m = inst.m();
    const int pts_total = g * m;
    std::vector<int> count(static_cast<std::size_t>(pts_total * pts_total), 0);
    for (const auto& b : inst.base_blocks) {
        for (int shift = 0; shift < m; ++shift) {
            std::vector<int> ids;
            for (const auto& p : b.points()) ids.push_back(p.x * m + mod(p.y + shift, m));
            for (int a : ids) {
                for (int c : ids) {
                    if (a != c) ++count[static_cast<std::size_t>(a * pts_total + c)];
                }
            }
        }
    }
    for (int a = 0; a < pts_total; ++a) {
        for (int c = 0; c < pts_total; ++c) {
            const bool same_group = a / m == c / m;
            const bool same_hole = a % m == c % m;
            int want = same_group ? 0 : 1;
            if (kind == SpgddKind::modified && same_hole) want = 0;
            if (count[static_cast<std::size_t>(a * pts_total + c)] != want) return false;
        }
    }
    return true;
}

bool verify_pdm(const PDMatrix& p) {
    if (p.m < 1 || p.m % 2 == 0 || p.k < 1 || static_cast<int>(p.rows.size()) != p.k) return false;
    const int t = (p.m - 1) / 2;
    for (const auto& row : p.rows) {
        if (static_cast<int>(row.size()) != p.m) return false;
        for (int v : row) {
            if (v < -t || v > t) return false;
        }
    }
    std::vector<int> seen(static_cast<std::size_t>(4 * t + 1));
    for (int s = 0; s < p.k; ++s) {
        for (int u = s + 1; u < p.k; ++u) {
            std::ranges::fill(seen, 0);
            for (int j = 0; j < p.m; ++j) {
                const int d = p.rows[s][j] - p.rows[u][j];
                if (d < -t || d > t || seen[static_cast<std::size_t>(d + 2 * t)]++) return false;
            }
        }
    }
    return true;
}

SPGDDInstance pdm_to_spgdd(const PDMatrix& p) {
    std::vector<Block> blocks;
    for (int j = 0; j < p.m; ++j) {
        std::vector<Point> pts;
        for (int i = 0; i < p.k; ++i) pts.push_back({i, p.rows[i][j]});
        blocks.emplace_back(std::move(pts));
    }
    return make_spgdd(p.k, p.m, std::move(blocks));
}

std::optional<PDMatrix> spgdd_to_pdm(const SPGDDInstance& inst) {
    const int k = static_cast<int>(inst.groups());
    if (!inst.window.is_interval() || static_cast<int>(inst.base_blocks.size()) != inst.m()) return std::nullopt;
    PDMatrix p{k, inst.m(), std::vector<std::vector<int>>(static_cast<std::size_t>(k))};
    for (const auto& b : inst.base_blocks) {
        if (static_cast<int>(b.size()) != k) return std::nullopt;
        for (const auto& pt : b.points()) {
            if (pt.x < 0 || pt.x >= k) return std::nullopt;
            p.rows[static_cast<std::size_t>(pt.x)].push_back(pt.y);
        }
    }
    for (const auto& row : p.rows) {
        if (static_cast<int>(row.size()) != p.m) return std::nullopt;
    }
    return p;
}

bool verify_mgdd(const MGDDInstance& inst) {
    const int h = inst.h;
    const int k = inst.k;
    if (h < 1 || k < 1) return false;
    const int cells = h * k;
    std::vector<char> covered(static_cast<std::size_t>(cells * cells), 0);
    for (const auto& b : inst.blocks) {
        const auto pts = b.points();
        std::set<int> rows;
        std::set<int> cols;
        for (const auto& p : pts) {
            if (p.x < 0 || p.x >= h || p.y < 0 || p.y >= k) return false;
            if (!rows.insert(p.x).second || !cols.insert(p.y).second) return false;
        }
        for (const auto& p : pts) {
            for (const auto& q : pts) {
                if (p == q) continue;
                auto& c = covered[static_cast<std::size_t>((p.x * k + p.y) * cells + q.x * k + q.y)];
                if (c) return false;
                c = 1;
            }
        }
    }
    for (int a = 0; a < cells; ++a) {
        for (int c = 0; c < cells; ++c) {
            const bool cross = a / k != c / k && a % k != c % k;
            if (cross != static_cast<bool>(covered[static_cast<std::size_t>(a * cells + c)])) return false;
        }
    }
    return true;
}

bool langford_conditions(int n, int d) {
    if (n < 1 || d < 1 || n < 2 * d - 1) return false;
    const int r = n % 4;
    return d % 2 == 1 ? (r == 0 || r == 1) : (r == 0 || r == 3);
}

bool verify_langford(const LangfordSeq& seq) {
    if (!langford_conditions(seq.n, seq.d) || static_cast<int>(seq.pairs.size()) != seq.n) return false;
    std::vector<char> pos(static_cast<std::size_t>(2 * seq.n + 1), 0);
    std::vector<char> diff(static_cast<std::size_t>(seq.n), 0);
    for (auto [a, b] : seq.pairs) {
        if (a < 1 || b > 2 * seq.n || a >= b) return false;
        if (pos[static_cast<std::size_t>(a)]++ || pos[static_cast<std::size_t>(b)]++) return false;
        const int idx = b - a - seq.d;
        if (idx < 0 || idx >= seq.n || diff[static_cast<std::size_t>(idx)]++) return false;
    }
    return true;
}

DiffFamily tau_map(const DiffFamily& f) {
    if (!f.n_set.is_interval() || !f.m_set.is_interval()) {
        throw InvalidInput("tau map needs interval ambients");
    }
    const int n = static_cast<int>(f.n_set.size());
    const int m = static_cast<int>(f.m_set.size());
    std::vector<Block> blocks;
    for (const auto& b : f.blocks) {
        std::vector<Point> pts;
        for (const auto& p : b.points()) pts.push_back({p.x + p.y * n, 0});
        blocks.emplace_back(std::move(pts));
    }
    return DiffFamily::make(std::move(blocks), sym_interval(n * m), SymmetricSet{}, f.sizes);
}

}  // namespace gpdf
