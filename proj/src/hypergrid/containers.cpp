#include "hypergrid/containers.hpp"

#include "hypergrid/saturation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace hypergrid {

namespace {

struct Arena {
    std::vector<Point> pts;             // good-level points in scan order
    std::vector<std::vector<int>> adj;  // comparability lists
};

Arena build_arena(const GridShape& s, PointOrder order, double good_exponent) {
    Arena ar;
    auto good = good_levels(s, good_exponent);
    for (auto& p : all_points(s))
        if (good.contains(rank_of(p))) ar.pts.push_back(p);
    if (order == PointOrder::rank_lex)
        std::stable_sort(ar.pts.begin(), ar.pts.end(), [](const Point& a, const Point& b) {
            return rank_of(a) < rank_of(b);
        });
    int np = (int)ar.pts.size();
    ar.adj.assign(np, {});
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j)
            if (comparable(ar.pts[i], ar.pts[j])) {
                ar.adj[i].push_back(j);
                ar.adj[j].push_back(i);
            }
    return ar;
}

ContainerResult run_on_arena(const Arena& ar, const GridShape& s,
                             const std::vector<Point>& independent, const Rat& stop_factor) {
    require(stop_factor > 0, "run_container: stop_factor must be positive");
    require(is_antichain(s, independent), "run_container: input not an antichain");

    int np = (int)ar.pts.size();
    std::map<Point, int> index;
    for (int i = 0; i < np; ++i) index[ar.pts[i]] = i;
    std::vector<char> in_i(np, 0);
    for (auto& p : independent) {
        auto it = index.find(p);
        require(it != index.end(), "run_container: input not within the good levels");
        in_i[it->second] = 1;
    }

    std::vector<char> alive(np, 1);
    std::vector<long long> deg(np);
    for (int i = 0; i < np; ++i) deg[i] = (long long)ar.adj[i].size();
    long long alive_count = np;
    auto kill = [&](int x) {
        alive[x] = 0;
        --alive_count;
        for (int w : ar.adj[x])
            if (alive[w]) --deg[w];
    };

    ContainerResult res;
    res.shape = s;
    res.initial_size = np;
    res.stop_threshold = stop_factor * Rat(width(s));

    while (Rat((long)alive_count) > res.stop_threshold) {
        int v = -1;
        for (int i = 0; i < np; ++i)
            if (alive[i] && (v < 0 || deg[i] > deg[v])) v = i;
        ContainerStep step;
        step.index = (long long)res.trace.size() + 1;
        step.vertex = ar.pts[v];
        step.degree = deg[v];
        step.increment = in_i[v];
        if (in_i[v]) {
            res.fingerprint.push_back(ar.pts[v]);
            std::vector<int> doomed = {v};
            for (int u : ar.adj[v])
                if (alive[u]) doomed.push_back(u);
            for (int x : doomed) kill(x);
        } else {
            kill(v);
        }
        step.residual = alive_count;
        res.trace.push_back(std::move(step));
    }
    for (int i = 0; i < np; ++i)
        if (alive[i]) res.body.push_back(ar.pts[i]);
    return res;
}

}  // namespace

ContainerResult run_container(const GridShape& s, const std::vector<Point>& independent,
                              const Rat& stop_factor, PointOrder order, double good_exponent) {
    validate(s);
    auto ar = build_arena(s, order, good_exponent);
    return run_on_arena(ar, s, independent, stop_factor);
}

ContainerResult run_container(const GridShape& s, const std::vector<Point>& independent,
                              PointOrder order, double good_exponent) {
    return run_container(s, independent, make_rat((long)s.n + 1, (long)s.n), order,
                         good_exponent);
}

std::string ContainerResult::trace_jsonl() const {
    std::ostringstream os;
    for (auto& st : trace)
        os << "{\"step\":" << st.index << ",\"vertex\":\"" << point_str(st.vertex)
           << "\",\"increment\":" << (st.increment ? "true" : "false")
           << ",\"degree\":" << st.degree << ",\"residual\":" << st.residual << "}\n";
    return os.str();
}

ContainerPropertyReport verify_container_properties(const GridShape& s, long long sample_count,
                                                    std::uint64_t seed, const Rat& stop_factor,
                                                    PointOrder order, double good_exponent) {
    validate(s);
    require(sample_count >= 1, "verify_container_properties: need samples >= 1");
    auto ar = build_arena(s, order, good_exponent);
    Rng rng(seed, 0);

    ContainerPropertyReport rep;
    rep.shape = s;
    rep.samples = sample_count;
    rep.containment = rep.body_bound = rep.fingerprint_antichain = rep.well_defined = true;

    std::map<std::vector<Point>, std::vector<Point>> body_of;
    for (long long trial = 0; trial < sample_count; ++trial) {
        // Random antichain: greedy maximal over a shuffled order, then thinned.
        auto pool = ar.pts;
        rng.shuffle(pool);
        std::vector<Point> anti;
        for (auto& p : pool) {
            bool ok = true;
            for (auto& q : anti)
                if (comparable(p, q)) {
                    ok = false;
                    break;
                }
            if (ok) anti.push_back(p);
        }
        std::vector<Point> thinned;
        for (auto& p : anti)
            if (rng.next() & 1) thinned.push_back(p);

        auto res = run_on_arena(ar, s, thinned, stop_factor);
        std::vector<Point> in_sorted = thinned, s_sorted = res.fingerprint,
                           body_sorted = res.body;
        std::sort(in_sorted.begin(), in_sorted.end());
        std::sort(s_sorted.begin(), s_sorted.end());
        std::sort(body_sorted.begin(), body_sorted.end());

        if (!std::includes(in_sorted.begin(), in_sorted.end(), s_sorted.begin(), s_sorted.end()))
            rep.containment = false;
        std::vector<Point> uni = s_sorted;
        uni.insert(uni.end(), body_sorted.begin(), body_sorted.end());
        std::sort(uni.begin(), uni.end());
        if (!std::includes(uni.begin(), uni.end(), in_sorted.begin(), in_sorted.end()))
            rep.containment = false;
        if (Rat((long)res.body.size()) > res.stop_threshold) rep.body_bound = false;
        if (!is_antichain(s, res.fingerprint)) rep.fingerprint_antichain = false;

        auto [it, fresh] = body_of.try_emplace(s_sorted, body_sorted);
        if (!fresh && it->second != body_sorted) rep.well_defined = false;

        rep.max_fingerprint = std::max(rep.max_fingerprint, (long long)res.fingerprint.size());
    }
    if (s.n >= 2) {
        double ln = std::log((double)s.n);
        rep.scaling = (double)rep.max_fingerprint / (width(s).get_d() * ln * ln / (double)s.n);
    }
    rep.pass = rep.containment && rep.body_bound && rep.fingerprint_antichain && rep.well_defined;
    return rep;
}

ContainerPropertyReport verify_container_properties(const GridShape& s, long long sample_count,
                                                    std::uint64_t seed) {
    return verify_container_properties(s, sample_count, seed,
                                       make_rat((long)s.n + 1, (long)s.n));
}

std::string ContainerPropertyReport::to_json() const {
    std::ostringstream os;
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"samples\":" << samples
       << ",\"containment\":" << (containment ? "true" : "false")
       << ",\"body_bound\":" << (body_bound ? "true" : "false")
       << ",\"fingerprint_antichain\":" << (fingerprint_antichain ? "true" : "false")
       << ",\"well_defined\":" << (well_defined ? "true" : "false")
       << ",\"max_fingerprint\":" << max_fingerprint << ",\"scaling\":" << scaling
       << ",\"pass\":" << (pass ? "true" : "false") << "}";
    return os.str();
}

PhaseStats phase_trace(const ContainerResult& res, const GridShape& s) {
    PhaseStats st;
    Rat alpha = Rat(width(s));
    Rat t1 = Rat((long)s.n) * alpha, t2 = Rat(3) * alpha;
    double alpha_d = width(s).get_d();
    std::map<int, long long> bands;
    long long prev = res.initial_size;
    for (auto& step : res.trace) {
        Rat size((long)prev);
        int phase = size > t1 ? 0 : (size > t2 ? 1 : 2);
        ++st.steps[phase];
        if (step.increment) {
            ++st.increments[phase];
            ++st.total_increments;
            bands[(int)std::floor(std::log2((double)prev / alpha_d))] += 1;
        }
        prev = step.residual;
    }
    st.bands.assign(bands.begin(), bands.end());
    return st;
}

std::string PhaseStats::to_json() const {
    std::ostringstream os;
    os << "{\"steps\":[" << steps[0] << "," << steps[1] << "," << steps[2]
       << "],\"increments\":[" << increments[0] << "," << increments[1] << ","
       << increments[2] << "],\"total_increments\":" << total_increments << ",\"bands\":{";
    for (size_t i = 0; i < bands.size(); ++i)
        os << (i ? "," : "") << "\"" << bands[i].first << "\":" << bands[i].second;
    os << "}}";
    return os.str();
}

}  // namespace hypergrid
