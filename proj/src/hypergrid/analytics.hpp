#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hypergrid/bigint.hpp"
#include "hypergrid/grid.hpp"

namespace hypergrid {

inline constexpr double kPi = 3.14159265358979323846;

// Tilted coordinate law: a single coordinate takes value j in {0,...,t-1}
// with probability p^j / alpha_p, so the rank of a product point is a sum of
// n iid tilted coordinates. solve_tilt picks p with mean k/n, centering the
// sum at level k.
struct TiltedModel {
    GridShape shape;
    long k = 0;
    Rat q;             // (t-1)n/2 - k, signed distance of k from the middle
    double p = 0;      // tilt parameter
    double alpha_p = 1;  // sum_{j<t} p^j
    double mu_p = 0;   // mean of one tilted coordinate
};

// Bisection bracket plus safeguarded Newton polish; residual |mu_p - k/n| is
// checked below 1e-12. k = 0 maps to p = 0, a central k to p = 1 exactly,
// and k = (t-1)n is out of solver range.
TiltedModel solve_tilt(const GridShape& s, long k);

// Characteristic function of one centered tilted coordinate:
// phi(y) = (1/alpha_p) sum_{j<t} p^j exp(i y (j - k/n)).
std::complex<double> char_fn(const TiltedModel& m, double y);

// Fourier inversion of phi^n on [-pi, pi]:
//   f^(order)(x) = (1/2pi) int (-iy)^order e^{-ixy} phi(y)^n dy
// for order 0, 1, 2, by adaptive Simpson refinement to absolute tolerance
// tol. The imaginary residue must stay below 1e-10.
struct DensityEval {
    double x = 0;
    int order = 0;
    double value = 0;
    double abs_error = 0;
};

DensityEval density(const TiltedModel& m, double x, int order = 0, double tol = 1e-12);

// Lattice bridge identity, checked in 500-bit floats: the integrand at
// integer offset x = s - k is a trigonometric polynomial of degree below
// (t-1)n + 1, so the uniform rule on (t-1)n + 1 nodes integrates it exactly
// and f(s - k) must equal alpha_p^{-n} p^s N(s) for every rank s; the values
// must also sum to 1.
struct BridgeReport {
    GridShape shape;
    long k = 0;
    double p = 0;
    long levels = 0;
    double max_rel_err = 0;  // worst relative error over ranks with positive mass
    double max_abs_err = 0;  // worst absolute error where the exact mass is zero
    double sum_err = 0;      // |sum_s f(s-k) - 1|
    bool pass = false;
    std::string to_json() const;
};

BridgeReport density_bridge_check(const GridShape& s, long k, double rel_tol = 1e-9);

// Window quantities for the local-limit comparison at level k. The window
// [k-t+1, k+1] is read off the rank profile of the factor grid [t]^(n-1)
// (or of [t]^n itself), clamped to the valid rank range when it overhangs;
// Lambda = max N(z1)N(z2) - N(z3)N(z4) over equal-sum pairs in the window,
// N_min = min N(z), ratio = Lambda / N_min^2, all exact.
enum class ProfileChoice { factor, full };

struct LambdaRatioResult {
    GridShape shape;
    long k = 0;
    ProfileChoice which = ProfileChoice::factor;
    long lo = 0, hi = 0;  // clamped window bounds
    bool clamped = false;
    Int lambda;
    Int n_min;
    Rat ratio;
    std::string to_json() const;
};

LambdaRatioResult lambda_ratio(const GridShape& s, long k,
                               ProfileChoice which = ProfileChoice::factor);

// Grid checks of the three characteristic-function bounds used downstream:
//   decay:    |phi(y)| <= 1 - y^2 t^2 / 48000          on [0, 2.26/t]
//   cosine:   1 + p^2 - 2p cos y >= (4(1+p^2)/pi^2) y^2 on [0, pi/2]
//   mid_tail: |phi(y)| <= 2.25 / (y t)                  on (0, pi/2]
//   far_tail: |phi(y)| <= 1.5 / t                       on [pi/2, pi]
// |phi| is even in y, so scanning y >= 0 covers the symmetric ranges. These
// are reports, not assertions: each claim records its worst violation and
// where it occurred.
struct ClaimCheck {
    bool holds = true;
    long points = 0;
    double worst_gap = 0;  // min over the grid of (bound - quantity); >= 0 when holds
    double worst_y = 0;
};

struct AppendixReport {
    int t = 0;
    double p = 0;
    ClaimCheck decay, cosine, mid_tail, far_tail;
    bool pass = false;
    std::string to_json() const;
};

AppendixReport appendix_inequality_checks(const TiltedModel& m, double grid_step = 1e-4 * kPi);

// Sup norms of f' and f'' for the centered model (q = 0, p = 1) over a grid
// on [-2t, 2t] with step t/100 plus a coarse tail scan out to 10t, reported
// alongside the scalings t^2 n |f'| and t^3 n^{3/2} |f''|.
struct DerivativeRow {
    int t = 0;
    long n = 0;
    double norm1 = 0, norm2 = 0;
    double scaled1 = 0, scaled2 = 0;
};

struct DerivativeSweep {
    std::vector<DerivativeRow> rows;
    std::string to_csv() const;
};

DerivativeSweep derivative_norm_sweep(const std::vector<int>& ts, const std::vector<long>& ns,
                                      double tol = 1e-10);

}  // namespace hypergrid
