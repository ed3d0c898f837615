#pragma once

// Exact antichain counting (DFS and transfer-matrix engines), closed forms
// for n = 2 and n = 3, size-bounded counts, the two-level lower-bound
// construction, and bound-comparison reports.

#include "hypergrid/grid.hpp"

#include <cstdint>
#include <string>

namespace hypergrid {

// DFS cell guard, HYPERGRID_MAX_COUNT (default 36, hard cap 64).
long max_count_cells();

Int count_antichains_exact(const GridShape& s);     // dispatch on engines
Int count_antichains_dfs(const GridShape& s);       // t^n within cell guard
Int count_antichains_transfer(const GridShape& s);  // n <= 3 (t <= 6 when n = 3)

Int count_grid2(long t);     // binomial(2t, t)
Int count_macmahon(long t);  // box product, equals A(t,3)

Int count_antichains_upto(const GridShape& s, long max_size);

struct LowerBoundConstruction {
    GridShape shape;
    Int k;                  // floor(N(m+1) / 2^(2n))
    bool vacuous = true;    // k == 0
    bool feasible = false;  // k small enough to evaluate
    double log2_value = 0.0;
    bool value_set = false;  // exact value materialized (exponent small enough)
    Int value;               // binom(N(m+1), k) * 2^(N(m) - k n)
    bool independence_checked = false;
    std::string to_json() const;
};

// samples > 0 additionally draws random A u B sets from the top two middle
// levels and verifies they are antichains (needs an enumerable shape).
LowerBoundConstruction lower_bound_construction(const GridShape& s, long long samples = 0,
                                                std::uint64_t seed = 0);

struct BoundReport {
    GridShape shape;
    Int alpha;
    bool exact_available = false;
    Int exact_count;
    double log2_count = 0.0;
    double ratio = 0.0;     // log2_count / alpha
    double main_rhs = 0.0;  // (1 + c (ln n)^3 / n) * alpha
    double trivial_lb = 0.0;
    double construction_log2 = 0.0;  // two-level construction, when feasible
    bool construction_feasible = false;
    Int ramsey;  // A(t,n) + 1, when exact
    std::string to_json() const;
    std::string to_csv_row() const;
    static std::string csv_header();
};

BoundReport bound_report(const GridShape& s, const Rat& c);

struct SmallAntichainReport {
    GridShape shape;
    long k = 1;
    Int alpha;
    long max_size = 0;  // floor(alpha / k)
    Int count;          // antichains of size <= max_size
    double log2_count = 0.0;
    double implied_constant = 0.0;  // log2_count * k / (log2(k) * alpha), k >= 2
    std::string to_json() const;
};

SmallAntichainReport small_antichain_bound_sweep(const GridShape& s, long k);

}  // namespace hypergrid
