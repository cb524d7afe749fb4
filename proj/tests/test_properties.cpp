#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "gpdf/gpdf.hpp"

using namespace gpdf;

namespace {

// Seeded generator with the handful of shapes the properties need.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    int odd_between(int lo, int hi) { return 2 * between((lo + 1) / 2, (hi - 1) / 2) + 1; }
    bool coin() { return between(0, 1) == 1; }

    Block block(int k, int tx, int ty) {
        std::vector<Point> pts;
        while (static_cast<int>(pts.size()) < k) {
            Point p{between(-tx, tx), between(-ty, ty)};
            if (std::ranges::find(pts, p) == pts.end()) pts.push_back(p);
        }
        return Block(std::move(pts));
    }

    SizeSet sizes() {
        static const std::vector<SizeSet> pool{{3}, {4}, {3, 4}, {3, 4, 5}, {3, 5}};
        return pool[static_cast<std::size_t>(between(0, static_cast<int>(pool.size()) - 1))];
    }

private:
    std::mt19937_64 rng_;
};

constexpr int kCases = 300;

std::vector<const CatalogEntry*> families() {
    std::vector<const CatalogEntry*> out;
    for (const auto& e : embedded_catalog().entries()) {
        if (e.kind == Kind::gen_pdf || e.kind == Kind::gen_pdp) out.push_back(&e);
    }
    return out;
}

SPGDDInstance pdm_spgdd(int k, int m) {
    static std::map<std::pair<int, int>, SPGDDInstance> cache;
    auto it = cache.find({k, m});
    if (it == cache.end()) it = cache.emplace(std::pair{k, m}, pdm_to_spgdd(*search_pdm(k, m, {}).design)).first;
    return it->second;
}

}  // namespace

TEST(DeltaProperties, SymmetryAndCountOnRandomBlocks) {
    Gen g(0xD1FF);
    for (int i = 0; i < kCases; ++i) {
        const int k = g.between(1, 7);
        const auto b = g.block(k, g.between(3, 9), g.between(0, 9));
        const auto d = delta_block(b);
        ASSERT_EQ(static_cast<std::int64_t>(d.size()), ordered_pairs(k));
        std::map<Point, int> mult;
        for (const auto& p : d) ++mult[p];
        for (const auto& [p, c] : mult) EXPECT_EQ(mult[-p], c) << b.to_string();
        EXPECT_EQ(mult.count({0, 0}), 0u);
    }
}

TEST(DeltaProperties, FamilyCountIsSumOfBlocks) {
    Gen g(0xFA41);
    for (int i = 0; i < kCases; ++i) {
        std::vector<Block> blocks;
        std::int64_t want = 0;
        for (int j = g.between(0, 5); j > 0; --j) {
            const int k = g.between(2, 5);
            blocks.push_back(g.block(k, 6, 6));
            want += ordered_pairs(k);
        }
        const auto f = DiffFamily::make(blocks, sym_interval(13), sym_interval(13), {2, 3, 4, 5});
        EXPECT_EQ(static_cast<std::int64_t>(delta_family(f).diffs.size()), want);
    }
}

TEST(DeltaProperties, CatalogCountsMatchWeightEquation) {
    for (const auto* e : families()) {
        const auto& f = e->family();
        const auto r = verify_gen_pdp(f);
        ASSERT_TRUE(r.ok) << e->label();
        const auto total = static_cast<std::int64_t>(f.n_set.size() * f.m_set.size());
        EXPECT_EQ(static_cast<std::int64_t>(delta_family(f).diffs.size()),
                  total - static_cast<std::int64_t>(r.computed_leave.size()))
            << e->label();
    }
}

TEST(SetProperties, ScalingComposes) {
    Gen g(0x5CA1);
    for (int i = 0; i < kCases; ++i) {
        const auto s = sym_interval(g.odd_between(1, 21));
        const int a = g.between(1, 9);
        const int b = g.between(1, 9);
        EXPECT_EQ(scale_set(scale_set(s, a), b), scale_set(s, a * b));
    }
}

TEST(TauProperties, EveryIntervalCatalogFamily) {
    int checked = 0;
    for (const auto* e : families()) {
        const auto& f = e->family();
        if (!f.n_set.is_interval() || !f.m_set.is_interval()) continue;
        const auto r = verify_gen_pdp(f);
        const auto t = tau_map(f);
        const auto rt = verify_gen_pdp(t);
        EXPECT_TRUE(rt.ok) << e->label();
        EXPECT_EQ(t.blocks.size(), f.blocks.size()) << e->label();
        EXPECT_EQ(t.n_set.size(), f.n_set.size() * f.m_set.size()) << e->label();
        if (r.computed_leave.size() == 1) EXPECT_TRUE(verify_gen_pdf(t)) << e->label();
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(TauProperties, SynthesizedDesigns) {
    for (auto [n, m, k] : std::vector<std::tuple<int, int, SizeSet>>{
             {7, 7, {3, 4}}, {5, 31, {3, 4, 5}}, {23, 5, {3, 4, 5}}, {13, 19, {3, 4}}}) {
        const auto o = synth(n, m, k, {});
        ASSERT_EQ(o.kind, OutcomeKind::built) << n << "x" << m;
        EXPECT_TRUE(verify_gen_pdf(tau_map(*o.design))) << n << "x" << m;
    }
}

TEST(SpgddProperties, EveryVerifiedSpgddDevelops) {
    std::vector<SPGDDInstance> pool;
    for (const auto& e : embedded_catalog().entries()) {
        if (e.kind == Kind::spgdd) pool.push_back(e.spgdd());
    }
    for (int m = 1; m <= 21; m += 2) pool.push_back(pdm_spgdd(3, m));
    for (int m : {5, 7, 13}) pool.push_back(pdm_spgdd(4, m));
    pool.push_back(pdm_spgdd(5, 5));
    const auto pdf7 = DiffFamily::make({Block::line({0, 1, 3})}, sym_interval(7), sym_interval(1), {3});
    const auto pdf13 = DiffFamily::make({Block::line({0, 2, 5, 6})}, sym_interval(13), sym_interval(1), {4});
    for (int h : {3, 4, 5}) {
        pool.push_back(spgdd_from_spmgdd(spmgdd_from_pdf(pdf7, {{3, *search_mgdd({3}, 3, h, {}).design}})));
    }
    pool.push_back(spgdd_from_spmgdd(spmgdd_from_pdf(pdf13, {{4, *search_mgdd({4}, 4, 4, {}).design}})));
    for (const auto& inst : pool) {
        ASSERT_TRUE(verify_spgdd(inst, SpgddKind::plain));
        EXPECT_TRUE(develop_and_check(inst, SpgddKind::plain)) << inst.groups() << " groups over " << inst.m();
    }
}

TEST(SpgddProperties, ModifiedSpgddsDevelopAsModified) {
    const auto pdf7 = DiffFamily::make({Block::line({0, 1, 3})}, sym_interval(7), sym_interval(1), {3});
    for (int h : {3, 4, 5}) {
        const auto inst = spmgdd_from_pdf(pdf7, {{3, *search_mgdd({3}, 3, h, {}).design}});
        ASSERT_TRUE(verify_spgdd(inst, SpgddKind::modified));
        EXPECT_TRUE(develop_and_check(inst, SpgddKind::modified));
        EXPECT_FALSE(develop_and_check(inst, SpgddKind::plain));
    }
}

TEST(SpgddProperties, PdmRoundTrip) {
    for (int m = 1; m <= 15; m += 2) {
        const auto p = *search_pdm(3, m, {}).design;
        const auto back = spgdd_to_pdm(pdm_to_spgdd(p));
        ASSERT_TRUE(back);
        EXPECT_EQ(verify_pdm(*back), verify_pdm(p));
        EXPECT_EQ(pdm_to_spgdd(*back).base_blocks, pdm_to_spgdd(p).base_blocks);
    }
}

TEST(SpgddProperties, RandomBlockSetsAgreeWithDevelopment) {
    Gen g(0x69DD);
    int positives = 0;
    for (int i = 0; i < kCases; ++i) {
        const int groups = g.between(3, 4);
        const int m = g.odd_between(1, 5);
        const int t = (m - 1) / 2;
        std::vector<Block> blocks;
        for (int j = g.between(1, 5); j > 0; --j) {
            std::vector<Point> pts;
            for (int gr = 0; gr < groups; ++gr) {
                if (g.coin() || pts.size() < 2) pts.push_back({gr, g.between(-t, t)});
            }
            blocks.emplace_back(std::move(pts));
        }
        const auto inst = make_spgdd(groups, m, blocks);
        const bool spgdd = verify_spgdd(inst, SpgddKind::plain);
        if (spgdd) {
            ++positives;
            EXPECT_TRUE(develop_and_check(inst));
        }
    }
    SUCCEED() << positives << " random SPGDDs";
}

TEST(SearchProperties, FoundResultsVerifyOnFuzzedParameters) {
    Gen g(0x5EA7);
    int found = 0;
    for (int i = 0; i < 60; ++i) {
        const int n = g.odd_between(1, 9);
        const int m = g.odd_between(1, 9);
        const auto sizes = g.sizes();
        LeaveSpec leave = LeaveSpec::trivial();
        if (g.coin()) {
            const int h = g.odd_between(1, std::min(n, 5));
            const int r = g.between(1, std::max(1, (n - 1) / std::max(1, h - 1)));
            leave = LeaveSpec{sym_interval(h), r, sym_interval(1), 1};
        }
        const auto res = search_gen_pdp(sym_interval(n), sym_interval(m), sizes, leave, SearchBudget::node_limit(200000));
        if (res.found()) {
            ++found;
            EXPECT_TRUE(verify_with_leave(*res.design, leave)) << n << "x" << m << " " << leave.to_string();
            EXPECT_TRUE(std::ranges::includes(sizes, res.design->actual_sizes()));
        }
        if (res.status != SearchStatus::found) EXPECT_FALSE(res.design);
    }
    EXPECT_GT(found, 0);
}

TEST(SearchProperties, PdmAndLangfordVerifyOnFuzzedParameters) {
    Gen g(0x1A46);
    for (int i = 0; i < 40; ++i) {
        const int m = g.odd_between(1, 31);
        const auto p = search_pdm(3, m, SearchBudget::node_limit(1000000));
        ASSERT_TRUE(p.found()) << m;
        EXPECT_TRUE(verify_pdm(*p.design));

        const int n = g.between(1, 16);
        const int d = g.between(1, 4);
        const auto l = search_langford(n, d, SearchBudget::node_limit(1000000));
        if (!langford_conditions(n, d)) {
            EXPECT_EQ(l.status, SearchStatus::exhausted);
        } else if (l.found()) {
            EXPECT_TRUE(verify_langford(*l.design)) << n << "," << d;
        }
    }
}

TEST(SearchProperties, MgddVerifiesOnFuzzedParameters) {
    Gen g(0x36DD);
    for (int i = 0; i < 12; ++i) {
        const int h = g.between(3, 6);
        const auto r = search_mgdd({3}, 3, h, SearchBudget::node_limit(2000000));
        if (r.found()) EXPECT_TRUE(verify_mgdd(*r.design)) << h;
    }
}

TEST(ConstructProperties, InflationPredictsLeaveForCatalogPackings) {
    int checked = 0;
    for (const auto* e : families()) {
        const auto& f = e->family();
        if (!f.is_one_dimensional() || !f.n_set.is_interval()) continue;
        if (!std::ranges::includes(SizeSet{3, 4, 5}, f.actual_sizes())) continue;
        for (int m : {3, 5}) {
            IngredientMap ing;
            bool ok = true;
            for (int k : f.actual_sizes()) {
                auto p = search_pdm(k, m, SearchBudget::node_limit(2000000));
                if (!p.found()) {
                    ok = false;
                    break;
                }
                ing.emplace(k, pdm_to_spgdd(*p.design));
            }
            if (!ok) continue;
            const auto out = inflate_by_spgdd(f, ing);
            const auto leave = verify_gen_pdp(f).computed_leave;
            std::vector<Point> want;
            for (const auto& p : leave) {
                for (int y : sym_interval(m).elements()) want.push_back({p.x, y});
            }
            std::ranges::sort(want);
            EXPECT_EQ(verify_gen_pdp(out).computed_leave, want) << e->label() << " x [" << m << "]";
            ++checked;
        }
    }
    EXPECT_GT(checked, 80);
}

TEST(ConstructProperties, CompositionFillsAppendixCLeaves) {
    int checked = 0;
    for (const auto& e : embedded_catalog().entries()) {
        if (e.params.source.rfind("Appendix C", 0) != 0) continue;
        const auto& leave = *e.params.leave;
        const int h = static_cast<int>(leave.h1.size());
        const auto sizes = e.params.sizes.value_or(SizeSet{3});
        SearchBudget b;
        b.seconds = 5;
        const auto inner = search_gen_pdp(sym_interval(h), sym_interval(1), sizes, LeaveSpec::trivial(), b);
        if (!inner.found()) continue;
        const auto out = compose_fill(e.family(), *inner.design);
        EXPECT_TRUE(verify_gen_pdf(out)) << e.label();
        ++checked;
    }
    EXPECT_GT(checked, 10);
}

TEST(ConstructProperties, LangfordLeavesOverManyOrders) {
    int checked = 0;
    for (int d = 1; d <= 4; ++d) {
        for (int n = 2 * d - 1; n <= 16; ++n) {
            if (!langford_conditions(n, d)) continue;
            const auto s = search_langford(n, d, SearchBudget::node_limit(5000000));
            if (!s.found()) continue;
            const auto f = langford_to_pdp(*s.design);
            EXPECT_TRUE(verify_with_leave(f, LeaveSpec::one_dim(sym_interval(2 * d - 1), 1))) << n << "," << d;
            std::vector<int> pos;
            for (const auto& p : delta_family(f).diffs) {
                if (p.x > 0) pos.push_back(p.x);
            }
            std::vector<int> want(static_cast<std::size_t>(3 * n));
            std::iota(want.begin(), want.end(), d);
            EXPECT_EQ(pos, want) << n << "," << d;
            ++checked;
        }
    }
    EXPECT_GT(checked, 15);
}

TEST(ConstructProperties, SymbolicFamiliesAlwaysVerifyOrThrow) {
    Gen g(0xE11);
    int built = 0;
    for (int i = 0; i < kCases; ++i) {
        const int a = g.between(1, 12);
        const int b = g.between(1, 12);
        const int x = g.between(1, 12);
        const int y = g.between(1, 12);
        try {
            const auto f = instantiate_symbolic(a, b, x, y);
            EXPECT_TRUE(verify_gen_pdf(f));
            ++built;
        } catch (const InvalidParameter&) {
            EXPECT_TRUE(a == b || x == y);
        } catch (const InvalidInput&) {
        }
    }
    EXPECT_GT(built, 0);
}

TEST(GocProperties, CatalogAndSynthesizedPdfsConvert) {
    std::vector<DiffFamily> pdfs;
    for (const auto* e : families()) {
        const auto& f = e->family();
        if (e->kind == Kind::gen_pdf && f.n_set.is_interval() && f.m_set.is_interval()) pdfs.push_back(f);
    }
    for (auto [n, m] : std::vector<std::pair<int, int>>{{7, 7}, {7, 13}, {13, 13}}) pdfs.push_back(*synth(n, m, {3, 4}, {}).design);
    for (const auto& f : pdfs) {
        const auto c = pdf_to_goc(f);
        EXPECT_TRUE(verify_goc(c).ok);
        EXPECT_TRUE(weight_census_ok(c));
        EXPECT_EQ(delta_family(goc_to_pdf(c)).diffs, delta_family(f).diffs);
    }
}

TEST(GocProperties, RandomCodebooksAgreeWithDifferenceCheck) {
    Gen g(0x60C);
    for (int i = 0; i < kCases; ++i) {
        GocCodebook c;
        c.n = g.between(1, 4);
        c.m = g.between(1, 4);
        for (int j = g.between(0, 3); j > 0; --j) {
            const int k = g.between(1, std::min(3, c.n * c.m));
            const auto b = g.block(k, c.n - 1, c.m - 1);
            std::vector<Point> pts;
            for (const auto& p : b.points()) pts.push_back({std::abs(p.x), std::abs(p.y)});
            std::ranges::sort(pts);
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            c.codewords.emplace_back(std::move(pts));
        }
        const auto f = DiffFamily::make(c.codewords, sym_interval(2 * c.n - 1), sym_interval(2 * c.m - 1), {1, 2, 3});
        const bool packing = delta_family(f).collisions.empty();
        EXPECT_EQ(verify_goc(c).ok, packing) << i;
    }
}
