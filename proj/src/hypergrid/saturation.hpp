#pragma once

// Supersaturation toolbox: comparability degrees, minimum chain covers with
// a verified length bound, rectangle partitions of [t]^n, antichain counts in
// rectangles, and the weak/strong/rectangle saturation checks.

#include "hypergrid/grid.hpp"

#include <string>
#include <vector>

namespace hypergrid {

// Max over x in A of the number of other members comparable with x.
long long comp_max_degree(const GridShape& s, const std::vector<Point>& a);
bool is_antichain(const GridShape& s, const std::vector<Point>& a);

struct ChainPartition {
    GridShape shape;
    std::vector<std::vector<Point>> chains;  // rank-sorted, not necessarily skipless
    Rat min_length_bound;                    // |P| / (2 width) - 1/2
    bool bound_met = false;
    std::string to_json() const;
};

// Minimum chain cover (exactly width(s) chains) via maximum bipartite
// matching, then endpoint rebalancing until every chain has length at least
// |P|/(2 width) - 1/2; bound_met reports whether that succeeded.
ChainPartition uniform_chain_partition(const GridShape& s);

struct Rectangle {
    std::vector<Point> row_chain;  // piece of the chain partition of [t]^{n1}
    std::vector<Point> col_chain;  // piece of the chain partition of [t]^{n2}

    long a() const { return (long)row_chain.size(); }
    long b() const { return (long)col_chain.size(); }
    Point combined(long i, long j) const;  // concatenated coordinates
};

struct RectanglePartition {
    GridShape shape;
    int n1 = 1, n2 = 1;
    std::vector<Rectangle> rectangles;
    long u = 0;  // 3 * max side length
    std::string to_json() const;
};

RectanglePartition rectangle_partition(const GridShape& s, int n1_override = 0);

// Antichains of the grid [a] x [b]: binomial(a+b, a).
Int rectangle_antichain_count(long a, long b);

struct RectangleBoundReport {
    long a = 0, b = 0, u = 0;
    double beta = 0.0;
    Int count;        // all antichains
    Int four_u;       // 4^u
    bool count_ok = false;
    long size = 0;    // floor(beta u)
    Int size_count;   // antichains of exactly that size
    double size_bound = 0.0;  // exp2(4 log2(1/beta) beta u)
    bool size_ok = false;
    bool pass = false;
};

RectangleBoundReport rectangle_bound_check(long a, long b, long u, double beta);

struct RectSatResult {
    long long delta = 0;        // direct max comparability degree
    bool proof_chain = false;   // |A| >= 16t branch taken
    long k = 0, s = 0;
    long best_class = 0;        // diagonal offset of the heaviest class
    long long class_size = 0;
    long long witness_external = 0;  // degree certified by the witness block
    bool pass = false;
};

// The pigeonhole argument for subsets of [t]^2 with |A| > t.
RectSatResult check_rectangle_saturation(int t, const std::vector<Point>& a);

struct StrongSatResult {
    bool holds = false;
    long long delta = 0;
    Rat bound;   // delta_weight * W^{-k} / (k! (k + delta_weight))
    Rat weight;  // lym weight of A
};

StrongSatResult check_strong_saturation(const GridShape& s, const std::vector<Point>& a, long k,
                                        const Rat& delta_weight, const Rat& w,
                                        double good_exponent = 0.6);

struct WeakSatResult {
    long long delta = 0;
    Rat ratio;   // |A| / width
    Rat scaled;  // delta * (width/|A|)^2, recorded for sweeps
};

WeakSatResult check_weak_saturation(const GridShape& s, const std::vector<Point>& a);

}  // namespace hypergrid
