#pragma once

// Fingerprint/container algorithm: peel maximum-degree vertices of the
// comparability graph on the good levels, recording Case 1 (vertex in the
// input antichain, goes to the fingerprint S) vs Case 2 (vertex discarded),
// until the residual set is small; the residual is the container body psi(S).

#include "hypergrid/grid.hpp"
#include "hypergrid/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hypergrid {

enum class PointOrder { lex, rank_lex };

struct ContainerStep {
    long long index = 0;   // 1-based
    Point vertex;
    bool increment = false;  // Case 1
    long long degree = 0;    // degree of vertex within A_{i-1}
    long long residual = 0;  // |A_i| after the step
};

struct ContainerResult {
    GridShape shape;
    std::vector<Point> fingerprint;  // S, in insertion order
    std::vector<Point> body;         // psi(S), in scan order
    std::vector<ContainerStep> trace;
    long long initial_size = 0;  // |A_0| = |T|
    Rat stop_threshold;          // stop_factor * width
    std::string trace_jsonl() const;
};

ContainerResult run_container(const GridShape& s, const std::vector<Point>& independent,
                              const Rat& stop_factor, PointOrder order = PointOrder::lex,
                              double good_exponent = 0.6);

// Default stop factor 1 + 1/n.
ContainerResult run_container(const GridShape& s, const std::vector<Point>& independent,
                              PointOrder order = PointOrder::lex, double good_exponent = 0.6);

struct ContainerPropertyReport {
    GridShape shape;
    long long samples = 0;
    bool containment = false;            // S subset I subset S u psi(S)
    bool body_bound = false;             // |psi(S)| <= stop_factor * width
    bool fingerprint_antichain = false;  // S an antichain
    bool well_defined = false;           // equal S implies equal psi(S)
    long long max_fingerprint = 0;
    double scaling = 0.0;  // max |S| / (width (log n)^2 / n), 0 when n < 2
    bool pass = false;
    std::string to_json() const;
};

ContainerPropertyReport verify_container_properties(const GridShape& s, long long sample_count,
                                                    std::uint64_t seed,
                                                    const Rat& stop_factor,
                                                    PointOrder order = PointOrder::lex,
                                                    double good_exponent = 0.6);

ContainerPropertyReport verify_container_properties(const GridShape& s, long long sample_count,
                                                    std::uint64_t seed);

// Steps binned by the size of the set they acted on: phase 0 has
// |A| > n*width, phase 1 has |A| > 3*width, phase 2 the rest; bands hold
// increment counts keyed by floor(log2(|A|/width)).
struct PhaseStats {
    long long steps[3] = {0, 0, 0};
    long long increments[3] = {0, 0, 0};
    std::vector<std::pair<int, long long>> bands;
    long long total_increments = 0;
    std::string to_json() const;
};

PhaseStats phase_trace(const ContainerResult& res, const GridShape& s);

}  // namespace hypergrid
