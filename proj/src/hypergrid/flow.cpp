#include "hypergrid/flow.hpp"

#include "hypergrid/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace hypergrid {

void validate_edge(const GridShape& s, const CoverEdge& e) {
    require(in_shape(s, e.base), "edge base outside shape");
    require(1 <= e.coord && e.coord <= s.n, "edge coordinate out of range");
    require(e.base[e.coord - 1] <= s.t - 2, "edge leaves the shape at its coordinate");
}

CoverEdge parse_edge(const GridShape& s, const std::string& text) {
    std::size_t colon = text.rfind(':');
    require(colon != std::string::npos, "edge syntax is x1,...,xn:m");
    CoverEdge e;
    e.base = parse_point(s, text.substr(0, colon));
    std::string mtext = text.substr(colon + 1);
    std::size_t pos = 0;
    try {
        e.coord = std::stoi(mtext, &pos);
    } catch (const std::exception&) {
        require(false, "bad edge coordinate '" + mtext + "'");
    }
    require(pos == mtext.size(), "bad edge coordinate '" + mtext + "'");
    validate_edge(s, e);
    return e;
}

std::string edge_str(const CoverEdge& e) {
    return point_str(e.base) + ":" + std::to_string(e.coord);
}

long long cover_edge_count(const GridShape& s) {
    validate(s);
    Int c = Int(s.n) * Int(s.t - 1) * ipow(s.t, s.n - 1);
    require(c.fits_slong_p(), "edge count overflows");
    return c.get_si();
}

long long edge_guard() { return env_guard("HYPERGRID_MAX_EDGES", 1000000); }

namespace {

const Int& profile_at(const std::vector<Int>& p, long z) {
    static const Int zero(0);
    if (z < 0 || z >= (long)p.size()) return zero;
    return p[z];
}

// Integer ingredients of the collapsed flow at level k over profile P:
// SA(i) = sum_{z<=i} N_P(k-z), SB(i) = sum_{z<=i} N_P(k+1-z),
// N_R(k) = SA(t-1), N_R(k+1) = SB(t-1).
struct Collapsed {
    Int nr_k, nr_k1;
    const std::vector<Int>* p;
    long k;

    Collapsed(const std::vector<Int>& prof, long kk, int t) : p(&prof), k(kk) {
        nr_k = 0;
        nr_k1 = 0;
        for (int z = 0; z < t; ++z) {
            nr_k += profile_at(prof, k - z);
            nr_k1 += profile_at(prof, k + 1 - z);
        }
        require(nr_k > 0 && nr_k1 > 0, "collapsed flow needs two nonempty levels");
    }

    Int sa(int i) const {  // sum_{z=0..i} N_P(k-z); sa(-1) = 0
        Int s = 0;
        for (int z = 0; z <= i; ++z) s += profile_at(*p, k - z);
        return s;
    }
    Int sb(int i) const {
        Int s = 0;
        for (int z = 0; z <= i; ++z) s += profile_at(*p, k + 1 - z);
        return s;
    }
    Rat diag(int i) const {  // g(a_i b_i) = ratio*SB(i) - SA(i-1)
        Rat g = make_rat(nr_k * sb(i) - nr_k1 * sa(i - 1), nr_k1);
        check(g >= 0, "negative collapsed flow entry (profile not log-concave?)");
        return g;
    }
    Rat off(int i) const {  // g(a_i b_{i+1}) = SA(i) - ratio*SB(i)
        Rat g = make_rat(nr_k1 * sa(i) - nr_k * sb(i), nr_k1);
        check(g >= 0, "negative collapsed flow entry (profile not log-concave?)");
        return g;
    }
};

}  // namespace

CollapsedFlow collapsed_flow(const std::vector<Int>& profile_p, long k, int t) {
    require(t >= 2, "collapsed flow needs t >= 2");
    Collapsed c(profile_p, k, t);
    CollapsedFlow out;
    out.t = t;
    out.k = k;
    Rat ratio = make_rat(c.nr_k, c.nr_k1);
    for (int i = 0; i < t; ++i) {
        out.sigma_a.push_back(Rat(profile_at(profile_p, k - i)));
        out.sigma_b.push_back(ratio * Rat(profile_at(profile_p, k + 1 - i)));
        out.diag.push_back(c.diag(i));
        if (i < t - 1) out.off.push_back(c.off(i));
    }
    check(out.diag[t - 1] == out.sigma_a[t - 1], "collapsed flow fails the closing identity");
    return out;
}

FlowContext::FlowContext(const GridShape& s) : shape_(s) {
    validate(s);
    profiles_.resize(s.n + 1);
    profiles_[0] = {Int(1)};
    for (int j = 1; j <= s.n; ++j) {
        std::vector<Int> nxt(profiles_[j - 1].size() + s.t - 1, Int(0));
        for (std::size_t i = 0; i < profiles_[j - 1].size(); ++i)
            for (int v = 0; v < s.t; ++v) nxt[i + v] += profiles_[j - 1][i];
        profiles_[j] = std::move(nxt);
    }
}

const std::vector<Int>& FlowContext::prefix_profile(int j) const {
    require(0 <= j && j <= shape_.n, "prefix dimension out of range");
    return profiles_[j];
}

const Int& FlowContext::prefix_level(int j, long r) const {
    require(0 <= j && j <= shape_.n, "prefix dimension out of range");
    return profile_at(profiles_[j], r);
}

Rat FlowContext::g_diag(int j, long k, int i) const {
    require(1 <= j && j <= shape_.n && 0 <= i && i < shape_.t, "bad collapsed index");
    return Collapsed(profiles_[j - 1], k, shape_.t).diag(i);
}

Rat FlowContext::g_off(int j, long k, int i) const {
    require(1 <= j && j <= shape_.n && 0 <= i && i <= shape_.t - 2, "bad collapsed index");
    return Collapsed(profiles_[j - 1], k, shape_.t).off(i);
}

Rat FlowContext::diag_ratio(int j, long k, int i) const {
    const Int& cls = prefix_level(j - 1, k - i);
    require(cls > 0, "empty class in collapsed flow");
    return g_diag(j, k, i) / Rat(cls);
}

Rat FlowContext::off_ratio(int j, long k, int i) const {
    const Int& cls = prefix_level(j - 1, k - i);
    require(cls > 0, "empty class in collapsed flow");
    return g_off(j, k, i) / Rat(cls);
}

Rat FlowContext::edge_weight(const CoverEdge& e) const {
    validate_edge(shape_, e);
    int m = e.coord;
    long km = 0;
    for (int i = 0; i < m; ++i) km += e.base[i];
    Rat f = off_ratio(m, km, e.base[m - 1]);
    long kj = km;
    for (int j = m + 1; j <= shape_.n; ++j) {
        kj += e.base[j - 1];
        f *= diag_ratio(j, kj, e.base[j - 1]);
    }
    check(f >= 0 && f <= 1, "edge weight outside [0,1]");
    return f;
}

std::vector<Rat> FlowContext::out_weights(const Point& x) const {
    require(in_shape(shape_, x), "point outside shape");
    int n = shape_.n, t = shape_.t;
    std::vector<long> k(n + 1, 0);
    for (int j = 1; j <= n; ++j) k[j] = k[j - 1] + x[j - 1];

    std::vector<Rat> out(n, Rat(0));
    Rat suffix(1);
    bool valid = true;
    for (int m = n; m >= 1; --m) {
        if (x[m - 1] <= t - 2) {
            check(valid, "missing diagonal factor for an existing edge");
            out[m - 1] = off_ratio(m, k[m], x[m - 1]) * suffix;
            check(out[m - 1] >= 0 && out[m - 1] <= 1, "edge weight outside [0,1]");
        }
        if (m >= 2) {
            if (k[m] + 1 > (long)(t - 1) * m)
                valid = false;
            else if (valid)
                suffix *= diag_ratio(m, k[m], x[m - 1]);
        }
    }
    return out;
}

Rat edge_weight(const GridShape& s, const CoverEdge& e) {
    return FlowContext(s).edge_weight(e);
}

ConservationReport verify_conservation(const GridShape& s) {
    validate(s);
    long long edges = cover_edge_count(s);
    require(edges <= edge_guard(), "too many edges to verify (raise HYPERGRID_MAX_EDGES)");
    FlowContext ctx(s);
    LevelProfile prof = level_sizes(s);

    ConservationReport rep;
    rep.shape = s;
    rep.edges = edges;
    rep.vertices = s.element_count().get_si();
    rep.level_out_residual.assign(s.level_count(), Rat(0));
    rep.level_in_residual.assign(s.level_count(), Rat(0));

    std::vector<long long> stride(s.n + 1, 1);
    for (int m = s.n - 1; m >= 1; --m) stride[m] = stride[m + 1] * s.t;

    std::vector<Rat> in_acc((std::size_t)rep.vertices, Rat(0));
    Point x(s.n, 0);
    long long idx = 0;
    do {
        long r = rank_of(x);
        std::vector<Rat> out = ctx.out_weights(x);
        if (r < s.max_rank()) {
            Rat total(0);
            for (int m = 1; m <= s.n; ++m) {
                if (x[m - 1] <= s.t - 2) {
                    total += out[m - 1];
                    in_acc[(std::size_t)(idx + stride[m])] += out[m - 1];
                }
            }
            Rat resid = abs(total - 1);
            rep.level_out_residual[r] = std::max(rep.level_out_residual[r], resid);
            if (resid != 0)
                rep.violations.push_back("out-sum at " + point_str(x) + " = " + rat_str(total));
        }
        ++idx;
    } while (next_point(s, x));

    std::fill(x.begin(), x.end(), 0);
    idx = 0;
    do {
        long r = rank_of(x);
        if (r >= 1) {
            Rat want = make_rat(prof.at(r - 1), prof.at(r));
            Rat resid = abs(in_acc[(std::size_t)idx] - want);
            rep.level_in_residual[r] = std::max(rep.level_in_residual[r], resid);
            if (resid != 0)
                rep.violations.push_back("in-sum at " + point_str(x) + " = " +
                                         rat_str(in_acc[(std::size_t)idx]));
        }
        ++idx;
    } while (next_point(s, x));

    rep.pass = rep.violations.empty();
    return rep;
}

std::string ConservationReport::to_json() const {
    std::ostringstream os;
    auto rat_array = [&os](const std::vector<Rat>& v) {
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ',';
            os << '"' << rat_str(v[i]) << '"';
        }
        os << ']';
    };
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"vertices\":" << vertices
       << ",\"edges\":" << edges << ",\"pass\":" << (pass ? "true" : "false")
       << ",\"violations\":[";
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << ',';
        os << '"' << violations[i] << '"';
    }
    os << "],\"level_out_residual\":";
    rat_array(level_out_residual);
    os << ",\"level_in_residual\":";
    rat_array(level_in_residual);
    os << '}';
    return os.str();
}

namespace {

// f under the coordinate permutation perm (0-based): the image edge has
// base[i] = x[perm[i]] and coordinate perm^{-1}(m).
Rat permuted_weight(const FlowContext& ctx, const CoverEdge& e, const std::vector<int>& perm) {
    int n = ctx.shape().n;
    CoverEdge img;
    img.base.resize(n);
    for (int i = 0; i < n; ++i) {
        img.base[i] = e.base[perm[i]];
        if (perm[i] == e.coord - 1) img.coord = i + 1;
    }
    return ctx.edge_weight(img);
}

}  // namespace

Rat averaged_weight(const FlowContext& ctx, const CoverEdge& e) {
    const GridShape& s = ctx.shape();
    validate_edge(s, e);
    require(s.n <= 8, "exact f* averaging is guarded at n <= 8");
    std::vector<int> perm(s.n);
    for (int i = 0; i < s.n; ++i) perm[i] = i;
    Rat total(0);
    long count = 0;
    do {
        total += permuted_weight(ctx, e, perm);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / Rat(Int(count));
}

AveragedWeight averaged_edge_weight(const GridShape& s, const CoverEdge& e) {
    FlowContext ctx(s);
    AveragedWeight w;
    w.exact = true;
    w.value = averaged_weight(ctx, e);
    w.samples = factorial(s.n).get_si();
    return w;
}

AveragedWeight averaged_edge_weight_mc(const GridShape& s, const CoverEdge& e, long long samples,
                                       std::uint64_t seed) {
    validate_edge(s, e);
    require(samples >= 2, "monte carlo needs at least 2 samples");
    FlowContext ctx(s);
    Rng rng(seed);
    std::vector<int> perm(s.n);
    double mean = 0.0, m2 = 0.0;
    for (long long i = 0; i < samples; ++i) {
        for (int j = 0; j < s.n; ++j) perm[j] = j;
        rng.shuffle(perm);
        double v = permuted_weight(ctx, e, perm).get_d();
        double d = v - mean;
        mean += d / double(i + 1);
        m2 += d * (v - mean);
    }
    AveragedWeight w;
    w.exact = false;
    w.estimate = mean;
    w.std_error = std::sqrt(m2 / (double(samples) * double(samples - 1)));
    w.samples = samples;
    return w;
}

namespace {

// f* depends on an edge only through the value at the marked coordinate and
// the multiset of the other coordinates; sweeps deduplicate on that key.
std::vector<int> edge_signature(const CoverEdge& e) {
    std::vector<int> key;
    key.push_back(e.base[e.coord - 1]);
    for (std::size_t i = 0; i < e.base.size(); ++i)
        if ((int)i != e.coord - 1) key.push_back(e.base[i]);
    std::sort(key.begin() + 1, key.end());
    return key;
}

template <class PerSignature>
long long sweep_good_edges(const GridShape& s, double good_exponent, PerSignature&& fn) {
    LevelRange good = good_levels(s, good_exponent);
    std::map<std::vector<int>, int> seen;
    long long considered = 0;
    Point x(s.n, 0);
    do {
        long r = rank_of(x);
        if (!good.contains(r)) continue;
        for (int m = 1; m <= s.n; ++m) {
            if (x[m - 1] > s.t - 2) continue;
            ++considered;
            CoverEdge e{x, m};
            auto ins = seen.emplace(edge_signature(e), (int)seen.size());
            if (ins.second) fn(e, ins.first->second);
        }
    } while (next_point(s, x));
    return considered;
}

}  // namespace

MaxGoodWeight max_good_weight(const GridShape& s, double good_exponent) {
    validate(s);
    require(s.n <= 8, "exact f* averaging is guarded at n <= 8");
    require(cover_edge_count(s) <= edge_guard(),
            "too many edges to sweep (raise HYPERGRID_MAX_EDGES)");
    MaxGoodWeight res;
    res.exact = true;
    res.value = Rat(-1);
    FlowContext ctx(s);
    res.edges_considered =
        sweep_good_edges(s, good_exponent, [&](const CoverEdge& e, int) {
            Rat v = averaged_weight(ctx, e);
            if (v > res.value) {
                res.value = v;
                res.argmax = e;
            }
        });
    check(res.value >= 0, "no good-based edges found");
    res.estimate = res.value.get_d();
    if (s.n >= 2) res.scaled_sup = res.estimate * s.n / std::log((double)s.n);
    return res;
}

MaxGoodWeight max_good_weight_mc(const GridShape& s, long long samples_per_edge,
                                 std::uint64_t seed, double good_exponent) {
    validate(s);
    require(cover_edge_count(s) <= edge_guard(),
            "too many edges to sweep (raise HYPERGRID_MAX_EDGES)");
    MaxGoodWeight res;
    res.exact = false;
    res.estimate = -1.0;
    res.edges_considered =
        sweep_good_edges(s, good_exponent, [&](const CoverEdge& e, int sig_index) {
            AveragedWeight w =
                averaged_edge_weight_mc(s, e, samples_per_edge, splitmix64_mix(seed) + sig_index);
            if (w.estimate > res.estimate) {
                res.estimate = w.estimate;
                res.argmax = e;
            }
            res.upper_confidence =
                std::max(res.upper_confidence, w.estimate + 3.0 * w.std_error);
        });
    check(res.estimate >= 0, "no good-based edges found");
    if (s.n >= 2) res.scaled_sup = res.estimate * s.n / std::log((double)s.n);
    return res;
}

NormalEdgeReport normal_edge_weight_check(const GridShape& s, double constant, double exponent) {
    validate(s);
    require(cover_edge_count(s) <= edge_guard(),
            "too many edges to sweep (raise HYPERGRID_MAX_EDGES)");
    FlowContext ctx(s);
    NormalEdgeReport rep;
    rep.shape = s;
    rep.max_m_f = Rat(0);
    rep.argmax.base.assign(s.n, 0);
    Point x(s.n, 0);
    do {
        std::vector<Rat> out = ctx.out_weights(x);
        for (int m = 1; m <= s.n; ++m) {
            if (x[m - 1] > s.t - 2) continue;
            ++rep.edges_total;
            if (!is_normal_prefix(s, x, m, constant, exponent)) continue;
            ++rep.normal_edges;
            Rat mf = Rat((long)m) * out[m - 1];
            if (mf > rep.max_m_f) {
                rep.max_m_f = mf;
                rep.argmax = CoverEdge{x, m};
            }
        }
    } while (next_point(s, x));
    return rep;
}

std::string NormalEdgeReport::to_json() const {
    std::ostringstream os;
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"edges_total\":" << edges_total
       << ",\"normal_edges\":" << normal_edges << ",\"max_m_f\":\"" << rat_str(max_m_f)
       << "\",\"max_m_f_float\":" << max_m_f.get_d() << ",\"argmax\":\"" << edge_str(argmax)
       << "\"}";
    return os.str();
}

LambdaWindow lambda_window(const std::vector<Int>& profile, long k, int t) {
    require(t >= 2, "lambda window needs t >= 2");
    std::vector<Int> vals;
    for (long z = k - t + 1; z <= k + 1; ++z) vals.push_back(profile_at(profile, z));

    LambdaWindow w;
    w.n_min = vals[0];
    for (const Int& v : vals) w.n_min = std::min(w.n_min, v);

    std::map<long, std::pair<Int, Int>> by_sum;  // sum -> (max product, min product)
    for (std::size_t i = 0; i < vals.size(); ++i) {
        for (std::size_t j = i; j < vals.size(); ++j) {
            Int prod = vals[i] * vals[j];
            long sum = (long)(i + j);
            auto it = by_sum.find(sum);
            if (it == by_sum.end())
                by_sum.emplace(sum, std::make_pair(prod, prod));
            else {
                it->second.first = std::max(it->second.first, prod);
                it->second.second = std::min(it->second.second, prod);
            }
        }
    }
    w.lambda = 0;
    for (const auto& [sum, mm] : by_sum) w.lambda = std::max(w.lambda, Int(mm.first - mm.second));
    w.vacuous = (w.n_min == 0);
    if (!w.vacuous) w.ratio = make_rat(w.lambda, w.n_min * w.n_min);
    return w;
}

}  // namespace hypergrid
