#include <gtest/gtest.h>

#include "gpdf/catalog.hpp"
#include "gpdf/feasibility.hpp"
#include "gpdf/goc.hpp"

using namespace gpdf;

namespace {

DiffFamily example_1_2() {
    return DiffFamily::make({Block{{0, 0}, {0, 2}, {2, 0}}, Block{{0, 0}, {1, 2}, {2, 1}, {2, 2}},
                             Block{{0, 1}, {1, 2}, {2, 0}}},
                            sym_interval(5), sym_interval(5), {3, 4});
}

std::vector<Point> delta_of(const DiffFamily& f) { return delta_family(f).diffs; }

}  // namespace

TEST(Goc, ExampleConvertsToPerfectCodebook) {
    const auto c = pdf_to_goc(example_1_2());
    EXPECT_EQ(c.n, 3);
    EXPECT_EQ(c.m, 3);
    EXPECT_EQ(c.codewords.size(), 3u);
    EXPECT_TRUE(verify_goc(c).ok);
    EXPECT_TRUE(weight_census_ok(c));
    EXPECT_EQ(goc_existence(3, 3, {3, 4}), GocExistence::exists);
}

TEST(Goc, NormalizedBlocksUnchanged) {
    const auto f = DiffFamily::make({Block::line({0, 1, 3})}, sym_interval(7), sym_interval(1), {3});
    const auto c = pdf_to_goc(f);
    EXPECT_EQ(c.codewords, f.blocks);
    EXPECT_EQ(c.n, 4);
    EXPECT_EQ(c.m, 1);
}

TEST(Goc, SymbolicSevenBySeven) {
    const auto c = pdf_to_goc(instantiate_symbolic(1, 2, 1, 2));
    EXPECT_EQ(c.n, 4);
    EXPECT_EQ(c.m, 4);
    EXPECT_TRUE(verify_goc(c).ok);
}

TEST(Goc, NonPdfRejected) {
    const auto& pdp = embedded_catalog().find([](const CatalogEntry& e) { return e.kind == Kind::gen_pdp; })->family();
    EXPECT_THROW(pdf_to_goc(pdp), InvalidInput);
    const auto& b1 = embedded_catalog().find([](const CatalogEntry& e) {
        return e.params.source == "Appendix B item 1";
    })->family();
    EXPECT_THROW(pdf_to_goc(b1), InvalidInput);
}

TEST(Goc, RoundTripPreservesDelta) {
    const auto back = goc_to_pdf(pdf_to_goc(example_1_2()));
    EXPECT_TRUE(verify_gen_pdf(back));
    EXPECT_EQ(delta_of(back), delta_of(example_1_2()));

    const auto hit = embedded_catalog().lookup(
        {.kind = Kind::gen_pdf, .n = sym_interval(9), .m = sym_interval(15), .sizes = SizeSet{3, 4, 5}});
    ASSERT_TRUE(hit);
    const auto& a915 = hit->family();
    EXPECT_EQ(delta_of(goc_to_pdf(pdf_to_goc(a915))), delta_of(a915));
}

TEST(Goc, DuplicateCodewordFails) {
    GocCodebook c{3, 3, {Block{{0, 0}, {0, 2}, {2, 0}}, Block{{0, 0}, {0, 2}, {2, 0}}}};
    const auto r = verify_goc(c);
    EXPECT_FALSE(r.ok);
    ASSERT_TRUE(r.shift);
    EXPECT_EQ(*r.shift, (Point{0, 0}));
    EXPECT_EQ(r.first, 0);
    EXPECT_EQ(r.second, 1);
    try {
        goc_to_pdf(c);
        FAIL() << "expected NotPerfect";
    } catch (const NotPerfect& e) {
        EXPECT_EQ(e.report().shift, (Point{0, 0}));
    }
}

TEST(Goc, AutoCorrelationViolation) {
    GocCodebook c{3, 3, {Block{{0, 0}, {0, 1}, {0, 2}}}};
    const auto r = verify_goc(c);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.second, -1);
    EXPECT_NE(r.violation.find("auto-correlation"), std::string::npos);
}

TEST(Goc, SinglePointCodeword) {
    GocCodebook c{1, 1, {Block{{0, 0}}}};
    c.lambda_a = 0;
    c.lambda_c = 0;
    EXPECT_TRUE(verify_goc(c).ok);
}

TEST(Goc, OutOfGridPoint) {
    GocCodebook c{2, 2, {Block{{0, 0}, {2, 0}}}};
    EXPECT_FALSE(verify_goc(c).ok);
}

TEST(Goc, PerfectCorrelationButIncompleteRejected) {
    GocCodebook c{3, 3, {Block{{0, 0}, {0, 2}, {2, 0}}}};
    EXPECT_TRUE(verify_goc(c).ok);
    EXPECT_FALSE(weight_census_ok(c));
    EXPECT_THROW(goc_to_pdf(c), NotPerfect);
}

TEST(Goc, ExportGrid) {
    GocCodebook c{3, 3, {Block{{0, 0}, {0, 2}, {2, 0}}}};
    EXPECT_EQ(export_goc(c, ExportFormat::grid), "#.#\n...\n#..\n");
    EXPECT_EQ(export_goc(GocCodebook{3, 3, {}}, ExportFormat::grid), "");
    EXPECT_EQ(export_goc(GocCodebook{3, 3, {}}, ExportFormat::list), "");
}

TEST(Goc, ExportListLexicographic) {
    const auto text = export_goc(pdf_to_goc(example_1_2()), ExportFormat::list);
    EXPECT_EQ(text, "(0,0) (0,2) (2,0)\n(0,0) (1,2) (2,1) (2,2)\n(0,1) (1,2) (2,0)\n");
}

TEST(Goc, ExistenceTheoremSixTwo) {
    EXPECT_EQ(goc_existence(3, 6, {3, 4}), GocExistence::exists);
    EXPECT_EQ(goc_existence(4, 7, {3, 4}), GocExistence::exists);
    EXPECT_EQ(goc_existence(3, 4, {3, 4}), GocExistence::impossible);
    EXPECT_EQ(goc_existence(2, 2, {3, 4}), GocExistence::impossible);
}

TEST(Goc, ExistenceTheoremSixThree) {
    EXPECT_EQ(goc_existence(2, 9, {3, 4, 5}), GocExistence::impossible);
    EXPECT_EQ(goc_existence(1, 27, {3, 4, 5}), GocExistence::impossible);
    EXPECT_EQ(goc_existence(1, 30, {3, 4, 5}), GocExistence::exists);
    EXPECT_EQ(goc_existence(4, 3, {3, 4, 5}), GocExistence::impossible);
    EXPECT_EQ(goc_existence(5, 3, {3, 4, 5}), GocExistence::impossible);
    EXPECT_EQ(goc_existence(3, 7, {3, 4, 5}), GocExistence::possible_exception);
    EXPECT_EQ(goc_existence(3, 16, {3, 4, 5}), GocExistence::exists);
    EXPECT_THROW(goc_existence(3, 3, {3, 5}), InvalidParameter);
}

TEST(Goc, ExistenceAgreesWithDoubledGrid) {
    // A perfect n x m code is a PDF on [2n-1] x [2m-1].
    for (int n = 1; n <= 30; ++n) {
        for (int m = 1; m <= 30; ++m) {
            const auto pdf = necessary_conditions(2 * n - 1, 2 * m - 1, {3, 4, 5});
            const auto goc = goc_existence(n, m, {3, 4, 5});
            EXPECT_EQ(pdf.feasible(), goc == GocExistence::exists) << n << "x" << m;
            EXPECT_EQ(pdf.infeasible(), goc == GocExistence::impossible) << n << "x" << m;
        }
    }
}

TEST(Goc, CatalogPdfsAllConvert) {
    for (const auto& e : embedded_catalog().entries()) {
        if (e.kind != Kind::gen_pdf || !e.family().n_set.is_interval() || !e.family().m_set.is_interval()) continue;
        const auto c = pdf_to_goc(e.family());
        EXPECT_TRUE(verify_goc(c).ok) << e.label();
        EXPECT_TRUE(weight_census_ok(c)) << e.label();
        EXPECT_EQ(delta_of(goc_to_pdf(c)), delta_of(e.family())) << e.label();
    }
}
