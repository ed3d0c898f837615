#pragma once

// The scaled normalized matching flow (SNMF) on [t]^n, built by the product
// recursion over coordinates: every cover edge gets an exact rational weight
// such that out-sums are 1 and in-sums are N(i)/N(i+1). Also the
// permutation-averaged flow f* and the exact window quantities (Lambda,
// N_min) bounding last-coordinate weights.

#include "hypergrid/grid.hpp"

#include <string>
#include <vector>

namespace hypergrid {

// The edge from x to x + e_coord; coord is 1-based.
struct CoverEdge {
    Point base;
    int coord = 1;
};

void validate_edge(const GridShape& s, const CoverEdge& e);
CoverEdge parse_edge(const GridShape& s, const std::string& text);  // "x1,...,xn:m"
std::string edge_str(const CoverEdge& e);
long long cover_edge_count(const GridShape& s);  // n (t-1) t^{n-1}
long long edge_guard();                          // HYPERGRID_MAX_EDGES, default 10^6

// Flow between consecutive levels k, k+1 of R = P x [t], collapsed by the
// value of the last coordinate: class a_i = L_R(k) with last coordinate i,
// b_i = L_R(k+1) likewise. diag[i] = g(a_i b_i), off[i] = g(a_i b_{i+1}).
struct CollapsedFlow {
    int t = 2;
    long k = 0;
    std::vector<Rat> sigma_a, sigma_b;  // size t
    std::vector<Rat> diag;              // size t
    std::vector<Rat> off;               // size t-1
};

CollapsedFlow collapsed_flow(const std::vector<Int>& profile_p, long k, int t);

// Profiles of the prefix grids [t]^0..[t]^n; all edge-weight queries run in
// O(n t) exact rational operations on top of these.
class FlowContext {
  public:
    explicit FlowContext(const GridShape& s);

    const GridShape& shape() const { return shape_; }
    const std::vector<Int>& prefix_profile(int j) const;  // rank sequence of [t]^j
    const Int& prefix_level(int j, long r) const;         // N_{[t]^j}(r), 0 outside

    // g terms of the collapsed flow at dimension j (P = [t]^{j-1}), level k.
    Rat g_diag(int j, long k, int i) const;
    Rat g_off(int j, long k, int i) const;
    // Same, divided by the class size N_{[t]^{j-1}}(k-i).
    Rat diag_ratio(int j, long k, int i) const;
    Rat off_ratio(int j, long k, int i) const;

    Rat edge_weight(const CoverEdge& e) const;

    // Weights of all out-edges of x, indexed by 0-based coordinate
    // (coordinates at value t-1 get weight 0); O(n t) for the whole vector.
    std::vector<Rat> out_weights(const Point& x) const;

  private:
    GridShape shape_;
    std::vector<std::vector<Int>> profiles_;
};

Rat edge_weight(const GridShape& s, const CoverEdge& e);

struct ConservationReport {
    GridShape shape;
    long long vertices = 0;
    long long edges = 0;
    bool pass = false;
    std::vector<std::string> violations;        // empty when pass
    std::vector<Rat> level_out_residual;        // max |out-sum - 1| per level
    std::vector<Rat> level_in_residual;         // max |in-sum - N(i)/N(i+1)|

    std::string to_json() const;
};

ConservationReport verify_conservation(const GridShape& s);

struct AveragedWeight {
    bool exact = true;
    Rat value;               // exact mode
    double estimate = 0.0;   // Monte Carlo mode
    double std_error = 0.0;
    long long samples = 0;
};

AveragedWeight averaged_edge_weight(const GridShape& s, const CoverEdge& e);  // n <= 8
AveragedWeight averaged_edge_weight_mc(const GridShape& s, const CoverEdge& e,
                                       long long samples, std::uint64_t seed);

// Exact f*(e) over an existing context (brute force over n! permutations).
Rat averaged_weight(const FlowContext& ctx, const CoverEdge& e);

struct MaxGoodWeight {
    bool exact = true;
    Rat value;                    // W
    CoverEdge argmax;
    double estimate = 0.0;        // Monte Carlo mode: max of per-edge means
    double upper_confidence = 0.0;  // max of (mean + 3 se)
    long long edges_considered = 0;
    double scaled_sup = 0.0;      // max over good edges of f* n / ln n (n >= 2)
};

MaxGoodWeight max_good_weight(const GridShape& s, double good_exponent = 0.6);
MaxGoodWeight max_good_weight_mc(const GridShape& s, long long samples_per_edge,
                                 std::uint64_t seed, double good_exponent = 0.6);

struct NormalEdgeReport {
    GridShape shape;
    long long edges_total = 0;
    long long normal_edges = 0;
    Rat max_m_f;         // max over normal edges of coord * weight
    CoverEdge argmax;
    std::string to_json() const;
};

NormalEdgeReport normal_edge_weight_check(const GridShape& s, double constant = 2.0,
                                          double exponent = 0.6);

// Exact window quantities over z in [k-t+1, k+1] of a rank profile:
// Lambda = max N(z1)N(z2) - N(z3)N(z4) subject to z1+z2 = z3+z4,
// N_min = min N(z); vacuous when N_min = 0 (ratio meaningless).
struct LambdaWindow {
    Int lambda;
    Int n_min;
    bool vacuous = true;
    Rat ratio;  // Lambda / N_min^2 when not vacuous
};

LambdaWindow lambda_window(const std::vector<Int>& profile, long k, int t);

}  // namespace hypergrid
