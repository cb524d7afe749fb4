#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "gpdf/catalog.hpp"
#include "gpdf/search.hpp"

using namespace gpdf;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct OracleLine {
    std::string source;
    std::string status;
};

std::vector<OracleLine> frozen(const std::string& name) {
    std::vector<OracleLine> out;
    std::istringstream in(slurp(std::string(GPDF_ORACLE_DIR) + "/frozen/" + name + ".txt"));
    std::string line;
    while (std::getline(in, line)) {
        const auto close = line.find('"', 1);
        std::istringstream rest(line.substr(close + 1));
        OracleLine o{line.substr(1, close - 1), {}};
        rest >> o.status;
        out.push_back(o);
    }
    return out;
}

void compare_with_oracle(const std::string& name, const std::string& path) {
    const auto entries = parse_catalog(slurp(path));
    const auto want = frozen(name);
    ASSERT_EQ(entries.size(), want.size()) << name;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        EXPECT_EQ(entries[i].params.source, want[i].source) << name << " entry " << i;
        if (want[i].status == "skip") continue;
        const bool ok = check_entry(entries[i]).empty();
        EXPECT_EQ(ok ? "ok" : "fail", want[i].status) << name << " " << want[i].source;
    }
}

}  // namespace

class CatalogOracle : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogOracle, VerdictsMatchFrozenReference) {
    compare_with_oracle(GetParam(), std::string(GPDF_CATALOG_DIR) + "/" + GetParam() + ".cat");
}

INSTANTIATE_TEST_SUITE_P(EmbeddedFiles, CatalogOracle,
                         ::testing::Values("appendix_a", "appendix_b", "appendix_c", "appendix_d", "inline", "spgdd"));

TEST(CatalogOracleTypos, PrintedDataFailsBothCheckers) {
    compare_with_oracle("printed_with_typos", std::string(GPDF_TEST_DATA) + "/printed_with_typos.cat");
}

TEST(ExistenceOracle, SearchAgreesWithBruteForce) {
    std::istringstream in(slurp(std::string(GPDF_ORACLE_DIR) + "/frozen/pdfexist.txt"));
    int v = 0;
    std::string sizes;
    std::string verdict;
    int rows = 0;
    while (in >> v >> sizes >> verdict) {
        SearchBudget b;
        b.seconds = 30;
        const auto r = search_gen_pdp(sym_interval(v), sym_interval(1), parse_sizes(sizes), LeaveSpec::trivial(), b);
        ASSERT_NE(r.status, SearchStatus::budget_exceeded) << v << " " << sizes;
        EXPECT_EQ(r.found() ? "exists" : "none", verdict) << v << " " << sizes;
        ++rows;
    }
    EXPECT_EQ(rows, 39);
}
