#include "hypergrid/cli.hpp"

#include <cstdint>
#include <functional>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypergrid/analytics.hpp"
#include "hypergrid/chain_cover.hpp"
#include "hypergrid/containers.hpp"
#include "hypergrid/counting.hpp"
#include "hypergrid/flow.hpp"
#include "hypergrid/grid.hpp"
#include "hypergrid/saturation.hpp"

namespace hypergrid {

namespace {

Rat parse_rat(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rat(Int(text));
        return make_rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

PointOrder parse_order(const std::string& text) {
    if (text == "lex") return PointOrder::lex;
    if (text == "rank-lex") return PointOrder::rank_lex;
    throw std::invalid_argument("order must be lex or rank-lex");
}

std::string profile_json(const LevelProfile& prof) {
    std::string out = "[";
    for (std::size_t i = 0; i < prof.sizes.size(); ++i) {
        if (i) out += ",";
        out += int_str(prof.sizes[i]);
    }
    return out + "]";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact antichain toolkit for the hypergrid [t]^n"};
    app.require_subcommand(1);

    int t = 2, n = 1;
    long k = 0;
    long max_size = 1;
    long long samples = 0;
    std::uint64_t seed = 0;
    int half_split = 0;
    double x = 0.0;
    int order = 0;
    double grid_step = 1e-4 * kPi;
    std::string edge_text, order_text = "lex", stop_text, c_text = "1", format = "csv";
    std::string profile_text = "factor", mode = "chains", source_text = "structured";
    std::string out_path;

    app.add_option("--output", out_path, "write the report to this file instead of stdout");

    // every leaf stores its report here; exit code 1 marks a failed check
    std::string report;
    int code = 0;

    auto add_shape = [&](CLI::App* cmd) {
        cmd->add_option("--t", t, "coordinate range")->required();
        cmd->add_option("--n", n, "number of coordinates")->required();
    };

    CLI::App* levels = app.add_subcommand("levels", "rank sequence of [t]^n");
    add_shape(levels);
    levels->callback([&] { report = profile_json(level_sizes({t, n})); });

    CLI::App* width_cmd = app.add_subcommand("width", "largest level size");
    add_shape(width_cmd);
    width_cmd->callback([&] {
        GridShape s{t, n};
        report = "{\"shape\":\"" + shape_str(s) + "\",\"alpha\":\"" + int_str(width(s)) + "\"}";
    });

    CLI::App* flow = app.add_subcommand("flow", "scaled normalized matching flow");
    flow->require_subcommand(1);

    CLI::App* flow_verify = flow->add_subcommand("verify", "check conservation identities");
    add_shape(flow_verify);
    flow_verify->callback([&] {
        ConservationReport rep = verify_conservation({t, n});
        report = rep.to_json();
        if (!rep.pass) code = 1;
    });

    CLI::App* flow_weight = flow->add_subcommand("weight", "structured weight of one edge");
    add_shape(flow_weight);
    flow_weight->add_option("--edge", edge_text, "cover edge as x1,...,xn:m")->required();
    flow_weight->callback([&] {
        GridShape s{t, n};
        CoverEdge e = parse_edge(s, edge_text);
        report = "{\"edge\":\"" + edge_str(e) + "\",\"weight\":\"" + rat_str(edge_weight(s, e)) +
                 "\"}";
    });

    CLI::App* flow_avg = flow->add_subcommand("avg", "permutation-averaged weight of one edge");
    add_shape(flow_avg);
    flow_avg->add_option("--edge", edge_text, "cover edge as x1,...,xn:m")->required();
    flow_avg->add_option("--samples", samples, "Monte Carlo sample count (0 = exact)");
    flow_avg->add_option("--seed", seed, "random seed");
    flow_avg->callback([&] {
        GridShape s{t, n};
        CoverEdge e = parse_edge(s, edge_text);
        std::ostringstream os;
        os << std::setprecision(17);
        if (samples == 0) {
            AveragedWeight w = averaged_edge_weight(s, e);
            os << "{\"edge\":\"" << edge_str(e) << "\",\"exact\":true,\"value\":\""
               << rat_str(w.value) << "\"}";
        } else {
            AveragedWeight w = averaged_edge_weight_mc(s, e, samples, seed);
            os << "{\"edge\":\"" << edge_str(e) << "\",\"exact\":false,\"estimate\":" << w.estimate
               << ",\"std_error\":" << w.std_error << ",\"samples\":" << w.samples
               << ",\"seed\":" << seed << "}";
        }
        report = os.str();
    });

    CLI::App* chains = app.add_subcommand("chains", "regular chain cover");
    chains->require_subcommand(1);

    CLI::App* chains_sample = chains->add_subcommand("sample", "sample maximal chains");
    add_shape(chains_sample);
    chains_sample->add_option("--samples", samples, "number of chains")->required();
    chains_sample->add_option("--seed", seed, "random seed");
    chains_sample->add_option("--source", source_text, "structured or averaged flow");
    chains_sample->callback([&] {
        GridShape s{t, n};
        FlowSource src = source_text == "averaged" ? FlowSource::averaged : FlowSource::structured;
        if (source_text != "structured" && source_text != "averaged")
            throw std::invalid_argument("source must be structured or averaged");
        FlowOracle fl(s, src);
        Rng rng(seed, 0);
        std::string body = "[";
        for (long long i = 0; i < samples; ++i) {
            if (i) body += ",";
            body += sample_chain(fl, rng).to_json();
        }
        report = "{\"shape\":\"" + shape_str(s) + "\",\"seed\":" + std::to_string(seed) +
                 ",\"source\":\"" + source_text + "\",\"chains\":" + body + "]}";
    });

    CLI::App* chains_pair = chains->add_subcommand("pair", "pair-probability bound sweep");
    add_shape(chains_pair);
    chains_pair->add_option("--k", k, "minimum rank gap (default 1)");
    std::string w_text;
    chains_pair->add_option("--w", w_text, "override W (default: exact max good f*)");
    chains_pair->callback([&] {
        GridShape s{t, n};
        long gap = k >= 1 ? k : 1;
        Rat w = w_text.empty() ? max_good_weight(s).value : parse_rat(w_text);
        PairBoundReport rep = pair_bound_check(s, gap, w);
        report = rep.to_json();
        if (!rep.pass) code = 1;
    });

    CLI::App* saturate = app.add_subcommand("saturate", "chain partitions for saturation");
    add_shape(saturate);
    saturate->add_option("--mode", mode, "chains or rectangles");
    saturate->add_option("--half-split", half_split, "override n1 for the rectangle split");
    saturate->callback([&] {
        GridShape s{t, n};
        if (mode == "chains")
            report = uniform_chain_partition(s).to_json();
        else if (mode == "rectangles")
            report = rectangle_partition(s, half_split).to_json();
        else
            throw std::invalid_argument("mode must be chains or rectangles");
    });

    CLI::App* containers = app.add_subcommand("containers", "fingerprint/container algorithm");
    containers->require_subcommand(1);

    CLI::App* containers_run = containers->add_subcommand("run", "trace one container run");
    add_shape(containers_run);
    containers_run->add_option("--stop-factor", stop_text, "stop threshold multiplier p/q");
    containers_run->add_option("--order", order_text, "vertex order: lex or rank-lex");
    containers_run->callback([&] {
        GridShape s{t, n};
        std::vector<Point> input = level_points(s, s.mid());
        PointOrder ord = parse_order(order_text);
        ContainerResult res = stop_text.empty()
                                  ? run_container(s, input, ord)
                                  : run_container(s, input, parse_rat(stop_text), ord);
        std::ostringstream os;
        os << "{\"shape\":\"" << shape_str(s) << "\",\"initial_size\":" << res.initial_size
           << ",\"stop_threshold\":\"" << rat_str(res.stop_threshold)
           << "\",\"fingerprint_size\":" << res.fingerprint.size()
           << ",\"body_size\":" << res.body.size() << ",\"steps\":" << res.trace.size() << "}\n"
           << res.trace_jsonl();
        report = os.str();
    });

    CLI::App* containers_verify = containers->add_subcommand("verify", "container properties");
    add_shape(containers_verify);
    containers_verify->add_option("--samples", samples, "random antichains to test")->required();
    containers_verify->add_option("--seed", seed, "random seed");
    containers_verify->add_option("--stop-factor", stop_text, "stop threshold multiplier p/q");
    containers_verify->add_option("--order", order_text, "vertex order: lex or rank-lex");
    containers_verify->callback([&] {
        GridShape s{t, n};
        PointOrder ord = parse_order(order_text);
        ContainerPropertyReport rep =
            stop_text.empty()
                ? verify_container_properties(s, samples, seed)
                : verify_container_properties(s, samples, seed, parse_rat(stop_text), ord);
        report = rep.to_json();
        if (!rep.pass) code = 1;
    });

    CLI::App* count = app.add_subcommand("count", "antichain counting");
    count->require_subcommand(1);

    CLI::App* count_exact = count->add_subcommand("exact", "exact antichain count");
    add_shape(count_exact);
    count_exact->callback([&] {
        GridShape s{t, n};
        report = "{\"shape\":\"" + shape_str(s) + "\",\"count\":\"" +
                 int_str(count_antichains_exact(s)) + "\"}";
    });

    CLI::App* count_upto = count->add_subcommand("upto", "antichains of bounded size");
    add_shape(count_upto);
    count_upto->add_option("--max-size", max_size, "largest antichain size counted")->required();
    count_upto->callback([&] {
        GridShape s{t, n};
        report = "{\"shape\":\"" + shape_str(s) + "\",\"max_size\":" + std::to_string(max_size) +
                 ",\"count\":\"" + int_str(count_antichains_upto(s, max_size)) + "\"}";
    });

    CLI::App* count_bounds = count->add_subcommand("bounds", "bound comparison report");
    add_shape(count_bounds);
    count_bounds->add_option("--c", c_text, "constant in the (1 + c (ln n)^3 / n) alpha bound");
    count_bounds->add_option("--format", format, "csv or json");
    count_bounds->callback([&] {
        BoundReport rep = bound_report({t, n}, parse_rat(c_text));
        if (format == "csv")
            report = BoundReport::csv_header() + "\n" + rep.to_csv_row();
        else if (format == "json")
            report = rep.to_json();
        else
            throw std::invalid_argument("format must be csv or json");
    });

    CLI::App* analytics = app.add_subcommand("analytics", "tilted-distribution analytics");
    analytics->require_subcommand(1);

    CLI::App* an_tilt = analytics->add_subcommand("tilt", "solve the tilt parameter");
    add_shape(an_tilt);
    an_tilt->add_option("--k", k, "target level")->required();
    an_tilt->callback([&] {
        TiltedModel m = solve_tilt({t, n}, k);
        std::ostringstream os;
        os << std::setprecision(17);
        os << "{\"shape\":\"" << shape_str(m.shape) << "\",\"k\":" << m.k << ",\"q\":\""
           << rat_str(m.q) << "\",\"p\":" << m.p << ",\"alpha_p\":" << m.alpha_p
           << ",\"mu_p\":" << m.mu_p << "}";
        report = os.str();
    });

    CLI::App* an_density = analytics->add_subcommand("density", "Fourier inversion value");
    add_shape(an_density);
    an_density->add_option("--k", k, "target level")->required();
    an_density->add_option("--x", x, "evaluation point (offset from k)");
    an_density->add_option("--order", order, "derivative order 0, 1, or 2");
    an_density->callback([&] {
        TiltedModel m = solve_tilt({t, n}, k);
        DensityEval ev = density(m, x, order);
        std::ostringstream os;
        os << std::setprecision(17);
        os << "{\"x\":" << ev.x << ",\"order\":" << ev.order << ",\"value\":" << ev.value
           << ",\"abs_error\":" << ev.abs_error << "}";
        report = os.str();
    });

    CLI::App* an_lambda = analytics->add_subcommand("lambda", "window ratio Lambda / N_min^2");
    add_shape(an_lambda);
    an_lambda->add_option("--k", k, "window center level")->required();
    an_lambda->add_option("--profile", profile_text, "factor ([t]^(n-1)) or full ([t]^n)");
    an_lambda->callback([&] {
        ProfileChoice which;
        if (profile_text == "factor")
            which = ProfileChoice::factor;
        else if (profile_text == "full")
            which = ProfileChoice::full;
        else
            throw std::invalid_argument("profile must be factor or full");
        report = lambda_ratio({t, n}, k, which).to_json();
    });

    CLI::App* an_claims = analytics->add_subcommand("claims", "characteristic-function bounds");
    add_shape(an_claims);
    an_claims->add_option("--k", k, "target level")->required();
    an_claims->add_option("--grid-step", grid_step, "scan step");
    an_claims->callback(
        [&] { report = appendix_inequality_checks(solve_tilt({t, n}, k), grid_step).to_json(); });

    CLI::App* an_derivs = analytics->add_subcommand("derivs", "derivative norm sweep");
    add_shape(an_derivs);
    an_derivs->callback([&] {
        DerivativeSweep sw = derivative_norm_sweep({t}, {(long)n});
        report = sw.to_csv();
    });

    // let app-level options like --output appear after subcommand flags
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands([](CLI::App*) { return true; })) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hypergrid");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help and friends
            app.exit(e, out, err);
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "invariant failure: " << e.what() << "\n";
        return 1;
    }

    if (!report.empty() && report.back() != '\n') report += '\n';
    if (out_path.empty()) {
        out << report;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "usage error: cannot open output file " << out_path << "\n";
            return 2;
        }
        file << report;
    }
    return code;
}

}  // namespace hypergrid
