#pragma once

// The graded poset [t]^n: points, comparability, rank levels, exact level
// sizes, and the good/normal vertex predicates used by the flow and container
// machinery.

#include "hypergrid/bigint.hpp"

#include <string>
#include <vector>

namespace hypergrid {

struct GridShape {
    int t = 2;  // coordinates range over {0, ..., t-1}
    int n = 1;  // number of coordinates

    long max_rank() const { return (long)(t - 1) * n; }
    long mid() const { return max_rank() / 2; }  // m = floor((t-1)n/2)
    long level_count() const { return max_rank() + 1; }
    Int element_count() const { return ipow(t, n); }
    bool operator==(const GridShape& o) const { return t == o.t && n == o.n; }
};

inline void validate(const GridShape& s) {
    require(s.t >= 2 && s.n >= 1, "grid shape requires t >= 2, n >= 1");
}

inline std::string shape_str(const GridShape& s) {
    return "[" + std::to_string(s.t) + "]^" + std::to_string(s.n);
}

// x(i) is stored at index i-1.
using Point = std::vector<int>;

long rank_of(const Point& x);
bool in_shape(const GridShape& s, const Point& x);
bool leq(const Point& x, const Point& y);
bool comparable(const Point& x, const Point& y);
std::vector<Point> covers_up(const GridShape& s, const Point& x);
std::string point_str(const Point& x);             // "x1,x2,...,xn"
Point parse_point(const GridShape& s, const std::string& text);

// Dense enumeration in lexicographic order, x(1) most significant.
long long point_index(const GridShape& s, const Point& x);
Point point_at(const GridShape& s, long long index);
bool next_point(const GridShape& s, Point& x);     // lex successor; false at end

long long enum_guard();                            // HYPERGRID_MAX_ENUM, default 10^6
std::vector<Point> all_points(const GridShape& s);
std::vector<Point> level_points(const GridShape& s, long r);

// Exact rank sequence N(0..(t-1)n), via iterated convolution of ones(t).
struct LevelProfile {
    GridShape shape;
    std::vector<Int> sizes;

    const Int& at(long r) const;  // N(r); fixed zero outside [0, max_rank]
    Int total() const;
    Int width() const { return at(shape.mid()); }
    long argmax() const;
    bool is_symmetric() const;
    std::string to_json() const;  // array of decimal strings
};

LevelProfile level_sizes(const GridShape& s);
bool is_log_concave(const std::vector<Int>& sizes);
Int width(const GridShape& s);

struct VertexSet {
    GridShape shape;
    std::vector<Point> members;

    std::vector<long long> per_level_counts() const;
};

VertexSet make_vertex_set(const GridShape& s, std::vector<Point> members);

// w(A) = sum over x in A of 1/N(|x|), exact.
Rat lym_weight(const GridShape& s, const std::vector<Point>& a);

// Good levels: |i - (t-1)n/2| <= t * n^exponent, clamped to [0, max_rank].
struct LevelRange {
    long lo = 0;
    long hi = -1;
    double threshold = 0.0;

    bool contains(long r) const { return lo <= r && r <= hi; }
    bool all_of(const GridShape& s) const { return lo == 0 && hi == s.max_rank(); }
};

LevelRange good_levels(const GridShape& s, double exponent = 0.6);
bool is_good_rank(const GridShape& s, long r, double exponent = 0.6);

// ||x restricted to first m0 coords| - (t-1)m0/2| <= constant * t * m0^exponent.
bool is_normal_prefix(const GridShape& s, const Point& x, int m0,
                      double constant = 2.0, double exponent = 0.6);

// N(m - r) against t^{n-1} e^{-r^2/(2 t^2 (n-1))}; when (t-1)n is odd the
// check runs at both integer offsets around the real middle.
struct TailCheckResult {
    long r = 0;
    std::vector<long> levels;
    std::vector<Int> exact;
    double bound = 0.0;
    bool holds = false;
};

TailCheckResult level_tail_check(const GridShape& s, long r);

// Exhaustive normalized matching check between levels i and i+1 (N(i) <= 20).
bool normalized_matching_bruteforce(const GridShape& s, long i);

}  // namespace hypergrid
