#include <gtest/gtest.h>

#include "gpdf/catalog.hpp"
#include "gpdf/verify.hpp"

using namespace gpdf;

namespace {

DiffFamily example_1_2() {
    return DiffFamily::make({Block{{0, 0}, {0, 2}, {2, 0}}, Block{{0, 0}, {1, 2}, {2, 1}, {2, 2}},
                             Block{{0, 1}, {1, 2}, {2, 0}}},
                            sym_interval(5), sym_interval(5), {3, 4});
}

DiffFamily lemma55_23() {
    return embedded_catalog()
        .lookup({.kind = Kind::gen_pdp,
                 .n = sym_interval(23),
                 .m = sym_interval(1),
                 .sizes = SizeSet{3},
                 .leave = LeaveSpec::one_dim(sym_interval(5), 4)})
        ->family();
}

const SPGDDInstance& example_2_1() {
    static const auto e = embedded_catalog().lookup(
        {.kind = Kind::spgdd, .sizes = SizeSet{3, 4}, .type_window = 9, .type_groups = 4});
    return e->spgdd();
}

MGDDInstance diagonal_mgdd() {
    return {3, 3,
            {Block{{0, 0}, {1, 1}, {2, 2}}, Block{{0, 1}, {1, 2}, {2, 0}}, Block{{0, 2}, {1, 0}, {2, 1}},
             Block{{0, 0}, {1, 2}, {2, 1}}, Block{{0, 1}, {1, 0}, {2, 2}}, Block{{0, 2}, {1, 1}, {2, 0}}}};
}

}  // namespace

TEST(VerifyPdp, ExampleIsPdf) {
    const auto r = verify_gen_pdp(example_1_2());
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.computed_leave, (std::vector<Point>{{0, 0}}));
    EXPECT_TRUE(verify_gen_pdf(example_1_2()));
}

TEST(VerifyPdp, PackingWithScaledLeave) {
    const auto f = lemma55_23();
    const auto r = verify_gen_pdp(f);
    ASSERT_TRUE(r.ok);
    EXPECT_EQ(r.computed_leave, (std::vector<Point>{{-8, 0}, {-4, 0}, {0, 0}, {4, 0}, {8, 0}}));
    EXPECT_TRUE(verify_with_leave(f, LeaveSpec::one_dim(sym_interval(5), 4)));
    EXPECT_FALSE(verify_gen_pdf(f));
}

TEST(VerifyPdp, RepeatedBlockCollides) {
    const Block b = Block::line({0, 1, 3});
    const auto r = verify_gen_pdp(DiffFamily::make({b, b}, sym_interval(7), sym_interval(1), {3}));
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.collisions.size(), 6u);
}

TEST(VerifyPdp, DifferencesOutsideWindowFail) {
    const auto r = verify_gen_pdp(DiffFamily::make({Block::line({0, 1, 4})}, sym_interval(7), sym_interval(1), {3}));
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.out_of_window, (std::vector<Point>{{-4, 0}, {4, 0}}));
    EXPECT_TRUE(r.collisions.empty());
}

TEST(VerifyPdp, BlockSizeOutsideK) {
    const auto r = verify_gen_pdp(DiffFamily::make({Block::line({0, 1, 3})}, sym_interval(7), sym_interval(1), {4}));
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.bad_sizes, (std::vector<int>{3}));
}

TEST(VerifyPdp, EmptyFamilyOverSinglePointIsPdf) {
    EXPECT_TRUE(verify_gen_pdf(DiffFamily::make({}, sym_interval(1), sym_interval(1), {3})));
}

TEST(VerifyPdp, AppendixAFirstItem) {
    const auto e = embedded_catalog().lookup(
        {.kind = Kind::gen_pdf, .n = sym_interval(5), .m = sym_interval(15), .sizes = SizeSet{3, 4, 5}});
    ASSERT_TRUE(e);
    EXPECT_EQ(e->params.source, "Appendix A item 1");
    EXPECT_TRUE(verify_gen_pdf(e->family()));
}

TEST(VerifySpgdd, Examples) {
    EXPECT_TRUE(verify_spgdd(example_2_1(), SpgddKind::plain));
    EXPECT_EQ(example_2_1().base_blocks.size(), 15u);
    const auto e22 = embedded_catalog().lookup(
        {.kind = Kind::spgdd, .sizes = SizeSet{3, 4}, .type_window = 11, .type_groups = 4});
    ASSERT_TRUE(e22);
    EXPECT_TRUE(verify_spgdd(e22->spgdd(), SpgddKind::plain));
    EXPECT_FALSE(verify_spgdd(example_2_1(), SpgddKind::modified));
}

TEST(VerifySpgdd, RemovingAnyBlockBreaksIt) {
    const auto& base = example_2_1();
    for (std::size_t i = 0; i < base.base_blocks.size(); ++i) {
        auto inst = base;
        inst.base_blocks.erase(inst.base_blocks.begin() + static_cast<std::ptrdiff_t>(i));
        EXPECT_FALSE(verify_spgdd(inst, SpgddKind::plain)) << "without block " << i;
    }
}

TEST(VerifySpgdd, RepeatedGroupInBlockRejected) {
    const auto inst = make_spgdd(3, 3, {Block{{0, 0}, {0, 1}, {1, 0}}});
    EXPECT_FALSE(verify_spgdd(inst, SpgddKind::plain));
}

TEST(DevelopAndCheck, ExamplesDevelopToGdds) {
    EXPECT_TRUE(develop_and_check(example_2_1()));
    const auto e22 = embedded_catalog().lookup(
        {.kind = Kind::spgdd, .sizes = SizeSet{3, 4}, .type_window = 11, .type_groups = 4});
    EXPECT_TRUE(develop_and_check(e22->spgdd()));
}

TEST(DevelopAndCheck, NonSpgddFails) {
    auto inst = example_2_1();
    inst.base_blocks.pop_back();
    EXPECT_FALSE(develop_and_check(inst));
}

TEST(DevelopAndCheck, MalformedInputThrows) {
    auto inst = make_spgdd(3, 3, {Block{{0, 0}, {0, 1}, {1, 0}}});
    EXPECT_THROW(develop_and_check(inst), InvalidInput);
}

TEST(VerifyPdm, SmallCases) {
    EXPECT_TRUE(verify_pdm({3, 3, {{-1, 0, 1}, {0, -1, 1}, {0, 0, 0}}}));
    EXPECT_FALSE(verify_pdm({3, 3, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}}));
    EXPECT_FALSE(verify_pdm({3, 3, {{-1, 0, 2}, {0, -1, 1}, {0, 0, 0}}}));
}

TEST(VerifyPdm, SpgddEquivalenceRoundTrip) {
    const PDMatrix p{3, 3, {{-1, 0, 1}, {0, -1, 1}, {0, 0, 0}}};
    const auto inst = pdm_to_spgdd(p);
    EXPECT_TRUE(verify_spgdd(inst, SpgddKind::plain));
    const auto back = spgdd_to_pdm(inst);
    ASSERT_TRUE(back);
    EXPECT_TRUE(verify_pdm(*back));
    EXPECT_EQ(pdm_to_spgdd(*back).base_blocks, inst.base_blocks);
}

TEST(VerifyMgdd, DiagonalTriples) {
    EXPECT_TRUE(verify_mgdd(diagonal_mgdd()));
    auto fewer = diagonal_mgdd();
    fewer.blocks.pop_back();
    EXPECT_FALSE(verify_mgdd(fewer));
}

TEST(VerifyMgdd, BlockRepeatingAGroupRejected) {
    auto g = diagonal_mgdd();
    g.blocks.push_back(Block{{0, 0}, {0, 1}});
    EXPECT_FALSE(verify_mgdd(g));
}

TEST(VerifyLangford, Examples) {
    EXPECT_TRUE(verify_langford({4, 1, {{7, 8}, {2, 4}, {3, 6}, {1, 5}}}));
    EXPECT_FALSE(langford_conditions(2, 2));
    EXPECT_FALSE(verify_langford({2, 2, {{1, 3}, {2, 4}}}));
    EXPECT_FALSE(verify_langford({4, 1, {{7, 8}, {2, 4}, {2, 6}, {1, 5}}}));
}

TEST(VerifyLangford, Conditions) {
    EXPECT_TRUE(langford_conditions(4, 1));
    EXPECT_TRUE(langford_conditions(4, 2));
    EXPECT_FALSE(langford_conditions(5, 2));
    EXPECT_TRUE(langford_conditions(12, 3));
    EXPECT_FALSE(langford_conditions(6, 1));
}

TEST(TauMap, ExampleBecomesOneDimensionalPdf) {
    const auto t = tau_map(example_1_2());
    EXPECT_TRUE(t.is_one_dimensional());
    EXPECT_EQ(t.n_set, sym_interval(25));
    EXPECT_EQ(t.blocks.size(), 3u);
    EXPECT_TRUE(verify_gen_pdf(t));
}

TEST(TauMap, RequiresIntervalAmbients) {
    const auto m = SymmetricSet::from_elements({0, 1, -1, 7, -7, 8, -8});
    EXPECT_THROW(tau_map(DiffFamily::make({}, sym_interval(5), m, {3})), InvalidInput);
}
