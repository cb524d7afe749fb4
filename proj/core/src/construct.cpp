#include "gpdf/construct.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <stdexcept>

namespace gpdf {

namespace {

std::vector<Point> product(const SymmetricSet& a, const SymmetricSet& b) {
    std::vector<Point> out;
    for (int x : a.elements()) {
        for (int y : b.elements()) out.push_back({x, y});
    }
    return out;
}

VerifyReport require_pdp(const DiffFamily& f, const char* role) {
    auto r = verify_gen_pdp(f);
    if (!r.ok) throw InvalidInput(std::string(role) + " does not verify: " + r.describe());
    return r;
}

void require_leave(const DiffFamily& f, const std::vector<Point>& expected, const char* what) {
    auto r = verify_gen_pdp(f);
    if (!r.ok || r.computed_leave != expected) {
        throw std::logic_error(std::string(what) + " output fails verification: " + r.describe());
    }
}

int scale_factor(const std::vector<Point>& leave, const SymmetricSet& axis, bool first) {
    int top = 0;
    for (const auto& p : leave) top = std::max(top, std::abs(first ? p.x : p.y));
    if (axis.max_abs() == 0) return 1;
    if (top % axis.max_abs() != 0) return 0;
    return top / axis.max_abs();
}

std::vector<int> xs_of(const Block& b) {
    std::vector<int> xs;
    for (const auto& p : b.points()) xs.push_back(p.x);
    return xs;
}

}  // namespace

DiffFamily compose_fill(const DiffFamily& outer, const DiffFamily& inner) {
    const auto ro = require_pdp(outer, "outer family");
    const auto ri = require_pdp(inner, "inner family");
    const auto& leave = ro.computed_leave;
    const int rx = scale_factor(leave, inner.n_set, true);
    const int ry = scale_factor(leave, inner.m_set, false);
    std::vector<Point> expected;
    if (rx > 0 && ry > 0) {
        expected = product(inner.n_set.scaled(rx), inner.m_set.scaled(ry));
        std::ranges::sort(expected);
    }
    if (expected != leave) {
        std::vector<Point> diff;
        std::ranges::set_symmetric_difference(leave, expected, std::back_inserter(diff));
        const std::string where = diff.empty() ? std::string("scale") : to_string(diff.front());
        throw InvalidInput("outer leave does not match the inner ambient at " + where);
    }
    std::vector<Block> blocks = outer.blocks;
    for (const auto& b : inner.blocks) blocks.push_back(b.scaled(rx, ry));
    SizeSet sizes = outer.sizes;
    sizes.insert(inner.sizes.begin(), inner.sizes.end());
    auto out = DiffFamily::make(std::move(blocks), outer.n_set, outer.m_set, std::move(sizes));
    std::vector<Point> predicted;
    for (const auto& p : ri.computed_leave) predicted.push_back({p.x * rx, p.y * ry});
    std::ranges::sort(predicted);
    require_leave(out, predicted, "compose_fill");
    return out;
}

DiffFamily inflate_by_spgdd(const DiffFamily& pdp_1d, const IngredientMap& ingredients) {
    if (!pdp_1d.is_one_dimensional()) throw InvalidInput("inflate_by_spgdd needs a one-dimensional family");
    const auto r = require_pdp(pdp_1d, "one-dimensional family");
    std::optional<SymmetricSet> window;
    for (const auto& [k, inst] : ingredients) {
        if (static_cast<int>(inst.groups()) != k) throw InvalidInput("ingredient for size " + std::to_string(k) + " has the wrong group count");
        if (!verify_spgdd(inst, SpgddKind::plain)) throw InvalidInput("ingredient for size " + std::to_string(k) + " is not a plain SPGDD");
        if (window && *window != inst.window) throw InvalidInput("ingredients use different windows");
        window = inst.window;
    }
    std::vector<Block> blocks;
    SizeSet sizes;
    for (const auto& a : pdp_1d.blocks) {
        const int k = static_cast<int>(a.size());
        auto it = ingredients.find(k);
        if (it == ingredients.end()) throw InvalidInput("no ingredient SPGDD for block size " + std::to_string(k));
        const auto xs = xs_of(a);
        for (const auto& b : it->second.base_blocks) {
            std::vector<Point> pts;
            for (const auto& p : b.points()) pts.push_back({xs[static_cast<std::size_t>(p.x)], p.y});
            sizes.insert(static_cast<int>(pts.size()));
            blocks.emplace_back(std::move(pts));
        }
    }
    const SymmetricSet w = window.value_or(SymmetricSet{});
    auto out = DiffFamily::make(std::move(blocks), pdp_1d.n_set, w, sizes.empty() ? pdp_1d.sizes : sizes);
    std::vector<Point> leave_x;
    for (const auto& p : r.computed_leave) leave_x.push_back(p);
    std::vector<Point> predicted;
    for (const auto& p : leave_x) {
        for (int y : w.elements()) predicted.push_back({p.x, y});
    }
    std::ranges::sort(predicted);
    require_leave(out, predicted, "inflate_by_spgdd");
    return out;
}

SPGDDInstance spmgdd_from_pdf(const DiffFamily& pdf_1d, const MgddMap& mgdds) {
    if (!pdf_1d.is_one_dimensional() || !verify_gen_pdf(pdf_1d)) throw InvalidInput("spmgdd_from_pdf needs a one-dimensional PDF");
    std::optional<int> groups;
    for (const auto& [k, g] : mgdds) {
        if (g.k != k) throw InvalidInput("MGDD for size " + std::to_string(k) + " has the wrong hole count");
        if (!verify_mgdd(g)) throw InvalidInput("MGDD for size " + std::to_string(k) + " does not verify");
        if (groups && *groups != g.h) throw InvalidInput("MGDDs disagree on the group count");
        groups = g.h;
    }
    std::vector<Block> blocks;
    for (const auto& a : pdf_1d.blocks) {
        const int k = static_cast<int>(a.size());
        auto it = mgdds.find(k);
        if (it == mgdds.end()) throw InvalidInput("no MGDD for block size " + std::to_string(k));
        const auto xs = xs_of(a);
        for (const auto& b : it->second.blocks) {
            std::vector<Point> pts;
            for (const auto& c : b.points()) pts.push_back({c.x, xs[static_cast<std::size_t>(c.y)]});
            blocks.emplace_back(std::move(pts));
        }
    }
    auto out = make_spgdd(groups.value_or(0), static_cast<int>(pdf_1d.n_set.size()), std::move(blocks));
    if (!verify_spgdd(out, SpgddKind::modified)) throw std::logic_error("spmgdd_from_pdf output fails verification");
    return out;
}

SPGDDInstance spgdd_from_spmgdd(const SPGDDInstance& modified) {
    if (!verify_spgdd(modified, SpgddKind::modified)) throw InvalidInput("input is not a modified SPGDD");
    SPGDDInstance out = modified;
    std::vector<Point> row;
    for (std::size_t g = 0; g < modified.groups(); ++g) row.push_back({static_cast<int>(g), 0});
    out.base_blocks.emplace_back(std::move(row));
    if (!verify_spgdd(out, SpgddKind::plain)) throw std::logic_error("spgdd_from_spmgdd output fails verification");
    return out;
}

DiffFamily expand_second(const DiffFamily& genpdf, const IngredientMap& ingredients, const DiffFamily& pdf_v) {
    if (!verify_gen_pdf(genpdf)) throw InvalidInput("expand_second needs a generalized PDF");
    if (!genpdf.m_set.is_interval()) throw InvalidInput("expand_second needs an interval second axis");
    if (!pdf_v.is_one_dimensional() || !verify_gen_pdf(pdf_v)) throw InvalidInput("expand_second needs a one-dimensional PDF over [v]");
    const int v = static_cast<int>(pdf_v.n_set.size());
    const int m = static_cast<int>(genpdf.m_set.size());
    for (const auto& [k, inst] : ingredients) {
        if (static_cast<int>(inst.groups()) != k || inst.m() != v || !verify_spgdd(inst, SpgddKind::plain)) {
            throw InvalidInput("ingredient for size " + std::to_string(k) + " is not a plain SPGDD of type " + std::to_string(v) + "^" + std::to_string(k));
        }
    }
    std::vector<Block> blocks;
    SizeSet sizes = pdf_v.sizes;
    for (const auto& a : genpdf.blocks) {
        const int k = static_cast<int>(a.size());
        auto it = ingredients.find(k);
        if (it == ingredients.end()) throw InvalidInput("no ingredient SPGDD for block size " + std::to_string(k));
        const auto pts_a = a.points();
        for (const auto& b : it->second.base_blocks) {
            std::vector<Point> pts;
            for (const auto& p : b.points()) {
                const Point base = pts_a[static_cast<std::size_t>(p.x)];
                pts.push_back({base.x, base.y + m * p.y});
            }
            sizes.insert(static_cast<int>(pts.size()));
            blocks.emplace_back(std::move(pts));
        }
    }
    for (const auto& d : pdf_v.blocks) {
        std::vector<Point> pts;
        for (const auto& p : d.points()) pts.push_back({0, m * p.x});
        blocks.emplace_back(std::move(pts));
    }
    auto out = DiffFamily::make(std::move(blocks), genpdf.n_set, sym_interval(m * v), std::move(sizes));
    require_leave(out, {{0, 0}}, "expand_second");
    return out;
}

DiffFamily langford_to_pdp(const LangfordSeq& seq) {
    if (!verify_langford(seq)) throw InvalidInput("not a Langford sequence");
    const int n = seq.n;
    const int d = seq.d;
    std::vector<Block> blocks;
    for (const auto& [a, b] : seq.pairs) blocks.push_back(Block::line({0, b - a, b + n + d - 1}));
    auto out = DiffFamily::make(std::move(blocks), sym_interval(6 * n + 2 * d - 1), SymmetricSet{}, {3});
    std::vector<Point> predicted;
    const auto leave = sym_interval(2 * d - 1);
    for (int x : leave.elements()) predicted.push_back({x, 0});
    require_leave(out, predicted, "langford_to_pdp");
    return out;
}

DiffFamily as_column(const DiffFamily& f_1d) {
    if (!f_1d.is_one_dimensional()) throw InvalidInput("as_column needs a one-dimensional family");
    return transpose(f_1d);
}

}  // namespace gpdf
