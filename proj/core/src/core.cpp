#include "gpdf/core.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gpdf {

std::string to_string(Point p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

SymmetricSet SymmetricSet::interval(int n) {
    if (n < 1 || n % 2 == 0) {
        throw InvalidParameter("interval size must be odd and positive, got " + std::to_string(n));
    }
    const int t = (n - 1) / 2;
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i = -t; i <= t; ++i) v.push_back(i);
    return SymmetricSet(std::move(v));
}

SymmetricSet SymmetricSet::from_elements(std::vector<int> elems) {
    std::ranges::sort(elems);
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (!std::ranges::binary_search(elems, 0)) throw InvalidParameter("symmetric set must contain 0");
    for (int v : elems) {
        if (!std::ranges::binary_search(elems, -v)) {
            throw InvalidParameter("symmetric set is not closed under negation at " + std::to_string(v));
        }
    }
    return SymmetricSet(std::move(elems));
}

SymmetricSet SymmetricSet::scaled(int r) const {
    if (r <= 0) throw InvalidParameter("scale factor must be positive, got " + std::to_string(r));
    std::vector<int> v(elems_);
    for (int& e : v) e *= r;
    return SymmetricSet(std::move(v));
}

bool SymmetricSet::contains(int v) const { return std::ranges::binary_search(elems_, v); }

int SymmetricSet::max_abs() const { return elems_.back(); }

std::string SymmetricSet::to_string() const {
    if (is_interval()) return "[" + std::to_string(elems_.size()) + "]";
    std::string s = "{0";
    for (int v : elems_) {
        if (v > 0) s += "," + std::to_string(v) + "," + std::to_string(-v);
    }
    return s + "}";
}

SymmetricSet sym_interval(int n) { return SymmetricSet::interval(n); }

SymmetricSet scale_set(const SymmetricSet& s, int r) { return s.scaled(r); }

SizeSet parse_sizes(const std::string& text) {
    SizeSet out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw InvalidParameter("bad block size '" + tok + "'");
        }
        if (used != tok.size() || v < 2) throw InvalidParameter("bad block size '" + tok + "'");
        out.insert(v);
    }
    if (out.empty()) throw InvalidParameter("empty block size set");
    return out;
}

std::string format_sizes(const SizeSet& sizes) {
    std::string s;
    for (int k : sizes) {
        if (!s.empty()) s += ",";
        s += std::to_string(k);
    }
    return s;
}

Block::Block(std::initializer_list<Point> pts) : Block(std::vector<Point>(pts)) {}

Block::Block(std::vector<Point> pts) : pts_(std::move(pts)) {
    std::ranges::sort(pts_);
    if (std::adjacent_find(pts_.begin(), pts_.end()) != pts_.end()) {
        throw InvalidInput("block has a repeated point");
    }
}

Block Block::line(std::initializer_list<int> xs) {
    std::vector<Point> v;
    for (int x : xs) v.push_back({x, 0});
    return Block(std::move(v));
}

bool Block::contains(Point p) const { return std::ranges::binary_search(pts_, p); }

Block Block::translated(Point t) const {
    std::vector<Point> v(pts_);
    for (auto& p : v) p = p + t;
    return Block(std::move(v));
}

Block Block::negated() const {
    std::vector<Point> v(pts_);
    for (auto& p : v) p = -p;
    return Block(std::move(v));
}

Block Block::transposed() const {
    std::vector<Point> v(pts_);
    for (auto& p : v) p = {p.y, p.x};
    return Block(std::move(v));
}

Block Block::scaled(int rx, int ry) const {
    std::vector<Point> v(pts_);
    for (auto& p : v) p = {p.x * rx, p.y * ry};
    return Block(std::move(v));
}

std::string Block::to_string() const {
    std::string s;
    for (const auto& p : pts_) {
        if (!s.empty()) s += " ";
        s += gpdf::to_string(p);
    }
    return s;
}

DiffFamily DiffFamily::make(std::vector<Block> blocks, SymmetricSet n, SymmetricSet m, SizeSet sizes) {
    DiffFamily f{std::move(blocks), std::move(n), std::move(m), std::move(sizes)};
    f.canonicalize();
    return f;
}

SizeSet DiffFamily::actual_sizes() const {
    SizeSet s;
    for (const auto& b : blocks) s.insert(static_cast<int>(b.size()));
    return s;
}

void DiffFamily::canonicalize() { std::ranges::sort(blocks); }

std::vector<Point> LeaveSpec::denoted() const {
    std::vector<Point> out;
    for (int u : h1.elements()) {
        for (int v : h2.elements()) out.push_back({r1 * u, r2 * v});
    }
    std::ranges::sort(out);
    return out;
}

std::string LeaveSpec::to_string() const {
    auto factor = [](const SymmetricSet& h, int r) {
        std::string s = h.to_string();
        if (r != 1) s += "^" + std::to_string(r);
        return s;
    };
    std::string s = factor(h1, r1);
    if (h2.size() > 1 || r2 != 1) s += "x" + factor(h2, r2);
    return s;
}

DiffList delta_block(const Block& b) {
    DiffList out;
    const auto pts = b.points();
    out.reserve(pts.size() * (pts.size() - (pts.empty() ? 0 : 1)));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i != j) out.push_back(pts[i] - pts[j]);
        }
    }
    std::ranges::sort(out);
    return out;
}

FamilyDelta delta_family(const DiffFamily& f) {
    FamilyDelta r;
    for (const auto& b : f.blocks) {
        auto d = delta_block(b);
        r.diffs.insert(r.diffs.end(), d.begin(), d.end());
    }
    std::ranges::sort(r.diffs);
    for (std::size_t i = 0; i + 1 < r.diffs.size(); ++i) {
        if (r.diffs[i] == r.diffs[i + 1] && (r.collisions.empty() || r.collisions.back() != r.diffs[i])) {
            r.collisions.push_back(r.diffs[i]);
        }
    }
    return r;
}

DiffFamily transpose(const DiffFamily& f) {
    std::vector<Block> blocks;
    blocks.reserve(f.blocks.size());
    for (const auto& b : f.blocks) blocks.push_back(b.transposed());
    return DiffFamily::make(std::move(blocks), f.m_set, f.n_set, f.sizes);
}

std::int64_t ordered_pairs(int k) { return static_cast<std::int64_t>(k) * (k - 1); }

}  // namespace gpdf
