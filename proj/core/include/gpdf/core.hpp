#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpdf {

class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Point {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const Point&, const Point&) = default;
    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
};

std::string to_string(Point p);

// A finite set of integers that contains 0 and is closed under negation.
class SymmetricSet {
public:
    SymmetricSet() : elems_{0} {}

    static SymmetricSet interval(int n);
    static SymmetricSet from_elements(std::vector<int> elems);

    SymmetricSet scaled(int r) const;

    bool contains(int v) const;
    std::span<const int> elements() const& { return elems_; }
    std::vector<int> elements() const&& { return elems_; }
    std::size_t size() const { return elems_.size(); }
    int max_abs() const;
    bool is_interval() const { return static_cast<int>(elems_.size()) == 2 * max_abs() + 1; }

    // "[n]" for intervals, "{0,1,-1,...}" otherwise.
    std::string to_string() const;

    friend bool operator==(const SymmetricSet&, const SymmetricSet&) = default;

private:
    explicit SymmetricSet(std::vector<int> sorted) : elems_(std::move(sorted)) {}
    std::vector<int> elems_;
};

SymmetricSet sym_interval(int n);
SymmetricSet scale_set(const SymmetricSet& s, int r);

using SizeSet = std::set<int>;

SizeSet parse_sizes(const std::string& text);
std::string format_sizes(const SizeSet& sizes);

class Block {
public:
    Block() = default;
    Block(std::initializer_list<Point> pts);
    explicit Block(std::vector<Point> pts);

    static Block line(std::initializer_list<int> xs);

    std::span<const Point> points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }
    bool contains(Point p) const;

    Block translated(Point t) const;
    Block negated() const;
    Block transposed() const;
    Block scaled(int rx, int ry) const;

    std::string to_string() const;

    friend auto operator<=>(const Block&, const Block&) = default;

private:
    std::vector<Point> pts_;
};

// Multiset of ordered differences, kept sorted.
using DiffList = std::vector<Point>;

struct DiffFamily {
    std::vector<Block> blocks;
    SymmetricSet n_set;
    SymmetricSet m_set;
    SizeSet sizes;

    static DiffFamily make(std::vector<Block> blocks, SymmetricSet n, SymmetricSet m, SizeSet sizes);

    SizeSet actual_sizes() const;
    void canonicalize();
    bool is_one_dimensional() const { return m_set.size() == 1; }
};

// {(r1*u, r2*v) : u in h1, v in h2}
struct LeaveSpec {
    SymmetricSet h1;
    int r1 = 1;
    SymmetricSet h2;
    int r2 = 1;

    static LeaveSpec trivial() { return {}; }
    static LeaveSpec one_dim(SymmetricSet h, int r) { return {std::move(h), r, SymmetricSet{}, 1}; }

    std::vector<Point> denoted() const;
    std::string to_string() const;

    friend bool operator==(const LeaveSpec&, const LeaveSpec&) = default;
};

DiffList delta_block(const Block& b);

struct FamilyDelta {
    DiffList diffs;
    std::vector<Point> collisions;
};

FamilyDelta delta_family(const DiffFamily& f);

DiffFamily transpose(const DiffFamily& f);

std::int64_t ordered_pairs(int k);

}  // namespace gpdf
