#include <gtest/gtest.h>

#include <algorithm>

#include "gpdf/feasibility.hpp"
#include "gpdf/synth.hpp"
#include "gpdf/verify.hpp"

using namespace gpdf;

namespace {

SearchBudget seconds(double s) {
    SearchBudget b;
    b.seconds = s;
    return b;
}

bool cites(const Plan& p, std::string_view needle) {
    const auto all = plan_citations(p);
    return std::ranges::any_of(all, [&](const std::string& c) { return c.find(needle) != std::string::npos; });
}

bool has_op(const PlanStep& s, StepOp op) {
    if (s.op == op) return true;
    return std::ranges::any_of(s.inputs, [&](const PlanStep& c) { return has_op(c, op); });
}

}  // namespace

TEST(Plan, FiveByThirtyOneFollowsTableOne) {
    const auto o = plan(5, 31, {3, 4, 5});
    ASSERT_EQ(o.kind, OutcomeKind::planned);
    ASSERT_TRUE(o.plan);
    EXPECT_TRUE(cites(*o.plan, "Table 1 row"));
    EXPECT_TRUE(cites(*o.plan, "m in {31,49,55}"));
    EXPECT_TRUE(cites(*o.plan, "Appendix D item 1"));
    EXPECT_TRUE(has_op(o.plan->root, StepOp::inflate));
    EXPECT_TRUE(has_op(o.plan->root, StepOp::compose));
}

TEST(Plan, ProfileInfeasible) {
    const auto o = plan(3, 9, {3, 4, 5});
    EXPECT_EQ(o.kind, OutcomeKind::infeasible);
    EXPECT_NE(o.reason.find("Lemma 5.6"), std::string::npos);
    EXPECT_FALSE(o.plan);
}

TEST(Plan, ElevenByElevenUsesCatalog) {
    const auto o = plan(11, 11, {3, 4});
    ASSERT_EQ(o.kind, OutcomeKind::planned);
    EXPECT_TRUE(cites(*o.plan, "Appendix A item"));
    EXPECT_TRUE(has_op(o.plan->root, StepOp::catalog));
}

TEST(Plan, LargeFiveModSixNeedsLiteratureData) {
    const auto o = plan(17, 29, {3, 4});
    EXPECT_EQ(o.kind, OutcomeKind::external_dependency);
    EXPECT_NE(o.reason.find("Lemma"), std::string::npos);
}

TEST(Plan, TheoremOneSixGrid) {
    for (int n = 1; n <= 49; n += 2) {
        for (int m = 1; m <= 49; m += 2) {
            const auto o = plan(n, m, {3, 4});
            EXPECT_EQ(o.kind != OutcomeKind::infeasible, (n * m) % 6 == 1) << n << "x" << m;
        }
    }
}

TEST(Plan, TheoremOneSevenExceptions) {
    for (int a = 1; a <= 59; a += 2) {
        for (int b = a; b <= 59; b += 2) {
            const auto v = necessary_conditions(a, b, {3, 4, 5});
            const auto o = plan(a, b, {3, 4, 5});
            EXPECT_EQ(o.kind == OutcomeKind::infeasible, v.infeasible()) << a << "x" << b;
            EXPECT_EQ(o.kind == OutcomeKind::unknown && o.reason.find("open-case") != std::string::npos,
                      v.status == Feasibility::unknown)
                << a << "x" << b;
        }
    }
}

TEST(Plan, CitationsAreKnownAnchors) {
    const auto& anchors = known_anchors();
    for (int n = 1; n <= 31; n += 2) {
        for (int m = 1; m <= 31; m += 2) {
            for (const SizeSet& k : {SizeSet{3, 4}, SizeSet{3, 4, 5}}) {
                const auto o = plan(n, m, k);
                if (!o.plan) continue;
                for (const auto& c : plan_citations(*o.plan)) {
                    EXPECT_TRUE(std::ranges::binary_search(anchors, c)) << n << "x" << m << ": " << c;
                }
            }
        }
    }
}

TEST(Plan, FormatIsIndentedOneStepPerLine) {
    const auto o = plan(5, 31, {3, 4, 5});
    const auto text = format_plan(*o.plan);
    EXPECT_TRUE(text.starts_with("plan n=5 m=31 K=3,4,5\n  step "));
    EXPECT_NE(text.find("\n    step "), std::string::npos);
    EXPECT_NE(text.find("cite=\""), std::string::npos);
    EXPECT_EQ(text, format_plan(*plan(5, 31, {3, 4, 5}).plan));
}

TEST(Plan, EmptyGrid) {
    const auto o = synth(1, 1, {3, 4}, {});
    ASSERT_EQ(o.kind, OutcomeKind::built);
    EXPECT_TRUE(o.design->blocks.empty());
}

TEST(Execute, FiveByThirtyOne) {
    const auto o = synth(5, 31, {3, 4, 5}, seconds(60));
    ASSERT_EQ(o.kind, OutcomeKind::built) << o.reason;
    EXPECT_TRUE(verify_gen_pdf(*o.design));
    EXPECT_EQ(o.design->n_set, sym_interval(5));
    EXPECT_EQ(o.design->m_set, sym_interval(31));
    EXPECT_EQ(o.design->sizes, (SizeSet{3, 4, 5}));
}

TEST(Execute, SevenBySevenViaLemmaFourThree) {
    const auto o = synth(7, 7, {3, 4}, seconds(60));
    ASSERT_EQ(o.kind, OutcomeKind::built) << o.reason;
    EXPECT_TRUE(cites(*o.plan, "Lemma 4.3"));
    EXPECT_TRUE(verify_gen_pdf(*o.design));
}

TEST(Execute, TwentyThreeByFiveViaLemmaFiveTwelve) {
    const auto o = synth(23, 5, {3, 4, 5}, seconds(60));
    ASSERT_EQ(o.kind, OutcomeKind::built) << o.reason;
    EXPECT_TRUE(cites(*o.plan, "Lemma 5.12"));
    EXPECT_TRUE(cites(*o.plan, "Lemma 5.5"));
    EXPECT_TRUE(verify_gen_pdf(*o.design));
}

TEST(Execute, NineByTwentySevenTwoPart) {
    const auto o = synth(9, 27, {3, 4, 5}, seconds(60));
    ASSERT_EQ(o.kind, OutcomeKind::built) << o.reason;
    EXPECT_TRUE(cites(*o.plan, "Lemma 5.10"));
    EXPECT_TRUE(verify_gen_pdf(*o.design));
}

TEST(Execute, OneDimensional) {
    for (auto [v, k] : std::vector<std::pair<int, SizeSet>>{{25, {3, 4}}, {37, {3, 4}}, {59, {3, 4, 5}}}) {
        const auto o = synth(1, v, k, seconds(60));
        ASSERT_EQ(o.kind, OutcomeKind::built) << v << ": " << o.reason;
        EXPECT_TRUE(verify_gen_pdf(*o.design));
    }
}

TEST(Execute, UnsupportedSizeSet) {
    const auto o = synth(1, 25, {3}, {});
    EXPECT_EQ(o.kind, OutcomeKind::unknown);
    EXPECT_NE(o.reason.find("unsupported"), std::string::npos);
}

TEST(Execute, TinyBudgetReportsStuckStep) {
    const auto o = synth(43, 43, {3, 4}, SearchBudget::node_limit(10));
    EXPECT_EQ(o.kind, OutcomeKind::budget_exceeded);
    EXPECT_NE(o.reason.find("step"), std::string::npos);
}

TEST(Execute, NonPlannedOutcomePassesThrough) {
    const auto o = execute(plan(3, 9, {3, 4, 5}), {});
    EXPECT_EQ(o.kind, OutcomeKind::infeasible);
}

TEST(Execute, Deterministic) {
    const auto a = synth(13, 19, {3, 4}, seconds(60));
    const auto b = synth(13, 19, {3, 4}, seconds(60));
    ASSERT_EQ(a.kind, OutcomeKind::built) << a.reason;
    EXPECT_EQ(a.design->blocks, b.design->blocks);
}

TEST(Tables, RowsMatchResidues) {
    const auto* r31 = find_row(1, 31);
    ASSERT_NE(r31, nullptr);
    EXPECT_EQ(r31->label(), "Table 1 row m = 1,7 (mod 24), m in {31,49,55}, leave [5]^4");
    for (const auto& row : table_rows()) {
        for (int m = 1; m < 200; m += 2) {
            if (row.matches(m)) EXPECT_TRUE(std::ranges::find(row.residues, m % 24) != row.residues.end());
        }
    }
}

TEST(Tables, TableOneCoversAcceptanceValues) {
    for (int m : {15, 19, 21, 25, 27, 31, 33, 37, 39, 43}) EXPECT_NE(find_row(1, m), nullptr) << m;
}

TEST(Outcome, Names) {
    EXPECT_EQ(outcome_name(OutcomeKind::built), "built");
    EXPECT_EQ(outcome_name(OutcomeKind::external_dependency), "external-dependency");
    EXPECT_EQ(op_name(StepOp::search_pdm), "search-pdm");
}
