#include "gpdf/goc.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "gpdf/verify.hpp"

namespace gpdf {

NotPerfect::NotPerfect(const GocReport& r) : InvalidInput("codebook is not perfect: " + r.violation), report_(r) {}

GocCodebook pdf_to_goc(const DiffFamily& f) {
    if (!f.n_set.is_interval() || !f.m_set.is_interval()) throw InvalidInput("pdf_to_goc needs interval ambients");
    if (!verify_gen_pdf(f)) throw InvalidInput("pdf_to_goc needs a generalized PDF");
    GocCodebook c;
    c.n = (static_cast<int>(f.n_set.size()) + 1) / 2;
    c.m = (static_cast<int>(f.m_set.size()) + 1) / 2;
    for (const auto& b : f.blocks) {
        int mx = b.points().front().x;
        int my = b.points().front().y;
        for (const auto& p : b.points()) {
            mx = std::min(mx, p.x);
            my = std::min(my, p.y);
        }
        c.codewords.push_back(b.translated({-mx, -my}));
    }
    std::ranges::sort(c.codewords);
    return c;
}

DiffFamily goc_to_pdf(const GocCodebook& c) {
    const auto report = verify_goc(c);
    if (!report.ok) throw NotPerfect(report);
    SizeSet sizes;
    for (const auto& w : c.codewords) sizes.insert(static_cast<int>(w.size()));
    auto f = DiffFamily::make(c.codewords, sym_interval(2 * c.n - 1), sym_interval(2 * c.m - 1), sizes);
    if (!verify_gen_pdf(f)) {
        GocReport r;
        r.ok = false;
        r.violation = "codebook leaves shifts uncovered, so it is not perfect";
        throw NotPerfect(r);
    }
    return f;
}

GocReport verify_goc(const GocCodebook& c) {
    GocReport r;
    const int w = 2 * c.m - 1;
    const int cells = (2 * c.n - 1) * w;
    auto slot = [&](Point s) { return (s.x + c.n - 1) * w + (s.y + c.m - 1); };
    for (std::size_t i = 0; i < c.codewords.size(); ++i) {
        for (const auto& p : c.codewords[i].points()) {
            if (p.x < 0 || p.x >= c.n || p.y < 0 || p.y >= c.m) {
                r.ok = false;
                r.first = static_cast<int>(i);
                r.violation = "codeword " + std::to_string(i) + " has point " + to_string(p) + " outside the grid";
                return r;
            }
        }
    }
    std::vector<int> overlap(static_cast<std::size_t>(cells));
    for (std::size_t i = 0; i < c.codewords.size(); ++i) {
        for (std::size_t j = 0; j < c.codewords.size(); ++j) {
            std::ranges::fill(overlap, 0);
            // |A ∩ (B + s)| counts pairs a in A, b in B with a = b + s.
            for (const auto& a : c.codewords[i].points()) {
                for (const auto& b : c.codewords[j].points()) ++overlap[static_cast<std::size_t>(slot(a - b))];
            }
            const bool self = i == j;
            const int bound = self ? c.lambda_a : c.lambda_c;
            for (int sx = -(c.n - 1); sx < c.n; ++sx) {
                for (int sy = -(c.m - 1); sy < c.m; ++sy) {
                    if (self && sx == 0 && sy == 0) continue;
                    const int v = overlap[static_cast<std::size_t>(slot({sx, sy}))];
                    if (v > bound) {
                        r.ok = false;
                        r.shift = Point{sx, sy};
                        r.first = static_cast<int>(i);
                        r.second = self ? -1 : static_cast<int>(j);
                        r.violation = (self ? "auto-correlation of codeword " + std::to_string(i)
                                            : "cross-correlation of codewords " + std::to_string(i) + " and " +
                                                  std::to_string(j)) +
                                      " is " + std::to_string(v) + " at shift " + to_string({sx, sy});
                        return r;
                    }
                }
            }
        }
    }
    return r;
}

bool weight_census_ok(const GocCodebook& c) {
    std::int64_t total = 0;
    for (const auto& w : c.codewords) total += ordered_pairs(static_cast<int>(w.size()));
    return total == static_cast<std::int64_t>(2 * c.n - 1) * (2 * c.m - 1) - 1;
}

GocExistence goc_existence(int n, int m, const SizeSet& sizes) {
    const int a = std::min(n, m);
    const int b = std::max(n, m);
    if (sizes == SizeSet{3, 4}) {
        const bool ok = (a % 3 == 0 && b % 3 == 0) || (a % 3 == 1 && b % 3 == 1);
        return ok ? GocExistence::exists : GocExistence::impossible;
    }
    if (sizes != SizeSet{3, 4, 5}) throw InvalidParameter("goc_existence covers K={3,4} and K={3,4,5}");
    static const std::vector<int> ones{3, 5, 6, 8, 9, 11, 12, 14, 15, 18, 21, 24, 27};
    static const std::vector<std::pair<int, int>> possible{
        {3, 7},  {3, 23}, {4, 12}, {4, 15}, {4, 18},  {5, 18},  {6, 10},  {6, 14},  {7, 9},
        {7, 11}, {7, 12}, {7, 14}, {7, 15}, {7, 18},  {8, 9},   {8, 11},  {8, 14},  {9, 11},
        {9, 14}, {11, 11}, {11, 14}, {12, 23}, {14, 14}, {15, 23}, {18, 23},
    };
    if (a == 2 || b == 2) return GocExistence::impossible;
    if (a == 1 && std::ranges::find(ones, b) != ones.end()) return GocExistence::impossible;
    if (a == 3 && (b == 4 || b == 5)) return GocExistence::impossible;
    if (std::ranges::find(possible, std::pair{a, b}) != possible.end()) return GocExistence::possible_exception;
    return GocExistence::exists;
}

std::string export_goc(const GocCodebook& c, ExportFormat format) {
    auto words = c.codewords;
    std::ranges::sort(words);
    std::ostringstream os;
    if (format == ExportFormat::list) {
        for (const auto& w : words) {
            bool first = true;
            for (const auto& p : w.points()) {
                os << (first ? "" : " ") << to_string(p);
                first = false;
            }
            os << '\n';
        }
        return os.str();
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) os << '\n';
        for (int x = 0; x < c.n; ++x) {
            for (int y = 0; y < c.m; ++y) os << (words[i].contains({x, y}) ? '#' : '.');
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace gpdf
