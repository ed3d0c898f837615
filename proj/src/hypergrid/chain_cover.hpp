#pragma once

// The regular chain cover induced by a flow: a maximal chain sampled from
// all-zeros by following edge weights visits each level uniformly. Interval
// masses phi([x,y]) are computed by forward dynamic programming over the
// order-interval box, and pair probabilities are checked against the
// k! W^k / N(i) bound.

#include "hypergrid/flow.hpp"
#include "hypergrid/rng.hpp"

#include <map>
#include <string>
#include <vector>

namespace hypergrid {

enum class FlowSource { structured, averaged };

// Uniform access to f or f*; averaged weights are memoized by the
// permutation-orbit signature of the edge. Not safe for concurrent use of a
// single instance in averaged mode (the memo mutates).
class FlowOracle {
  public:
    FlowOracle(const GridShape& s, FlowSource src);

    const GridShape& shape() const { return ctx_.shape(); }
    FlowSource source() const { return src_; }
    const FlowContext& context() const { return ctx_; }
    Rat weight(const CoverEdge& e) const;
    std::vector<Rat> out_weights(const Point& x) const;

  private:
    FlowContext ctx_;
    FlowSource src_;
    mutable std::map<std::vector<int>, Rat> memo_;
};

struct Chain {
    std::vector<Point> points;
    std::string to_json() const;  // [[x1,...,xn], ...]
};

void validate_chain(const GridShape& s, const Chain& c);  // skipless cover chain

Rat chain_mass(const FlowOracle& fl, const Chain& c);
Rat chain_mass(const GridShape& s, const Chain& c, FlowSource src = FlowSource::structured);

Rat interval_mass(const FlowOracle& fl, const Point& x, const Point& y);
Rat interval_mass(const GridShape& s, const Point& x, const Point& y,
                  FlowSource src = FlowSource::structured);

Chain sample_chain(const FlowOracle& fl, Rng& rng);
Chain sample_chain(const GridShape& s, std::uint64_t seed,
                   FlowSource src = FlowSource::structured);

// P(x, y in C) = phi([x,y]) / N(rank(x)) for x <= y.
Rat pair_probability(const FlowOracle& fl, const Point& x, const Point& y);
Rat pair_probability(const GridShape& s, const Point& x, const Point& y,
                     FlowSource src = FlowSource::structured);

struct PairBoundReport {
    GridShape shape;
    long k = 1;
    Rat w;
    long long pairs_checked = 0;
    bool pass = false;
    Rat max_ratio;  // max over pairs of phi([x,y]) / (k! W^k)
    std::vector<std::string> violations;
    std::string to_json() const;
};

// Sweeps all pairs x <= y with both ranks good and rank gap >= k, using the
// averaged flow, and asserts P(x,y in C) <= k! W^k / N(rank(x)) exactly.
PairBoundReport pair_bound_check(const GridShape& s, long k, const Rat& w,
                                 double good_exponent = 0.6);

long long pair_guard();  // HYPERGRID_MAX_PAIRS, default 4*10^6

}  // namespace hypergrid
