#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hypergrid/cli.hpp"
#include "hypergrid/flow.hpp"

using namespace hypergrid;

namespace {

struct RunOut {
    int code = 0;
    std::string out, err;
};

RunOut run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunOut r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("levels and width") {
        RunOut r = run({"levels", "--t", "3", "--n", "2"});
        CHECK(r.code == 0);
        CHECK(r.out == "[1,2,3,2,1]\n");

        RunOut w = run({"width", "--t", "2", "--n", "4"});
        CHECK(w.code == 0);
        CHECK(w.out == "{\"shape\":\"[2]^4\",\"alpha\":\"6\"}\n");
    }

    TEST_CASE("flow subcommands") {
        RunOut v = run({"flow", "verify", "--t", "4", "--n", "2"});
        CHECK(v.code == 0);
        CHECK(v.out.find("\"pass\":true") != std::string::npos);

        RunOut w = run({"flow", "weight", "--t", "4", "--n", "2", "--edge", "2,1:1"});
        CHECK(w.code == 0);
        GridShape s{4, 2};
        Rat expect = edge_weight(s, parse_edge(s, "2,1:1"));
        CHECK(w.out.find("\"weight\":\"" + rat_str(expect) + "\"") != std::string::npos);

        RunOut a = run({"flow", "avg", "--t", "2", "--n", "3", "--edge", "0,0,0:1"});
        CHECK(a.code == 0);
        CHECK(a.out.find("\"exact\":true") != std::string::npos);
        CHECK(a.out.find("\"value\":\"1/3\"") != std::string::npos);

        // Monte Carlo output is a pure function of the seed
        std::vector<std::string> mc = {"flow", "avg",       "--t",  "3",    "--n",
                                       "2",    "--edge",    "1,0:2", "--samples", "2000",
                                       "--seed", "7"};
        RunOut m1 = run(mc);
        RunOut m2 = run(mc);
        CHECK(m1.code == 0);
        CHECK(m1.out == m2.out);
        mc.back() = "8";
        CHECK(run(mc).out != m1.out);
    }

    TEST_CASE("chain subcommands") {
        std::vector<std::string> args = {"chains", "sample", "--t", "3",  "--n",
                                         "2",      "--samples", "3", "--seed", "11"};
        RunOut c1 = run(args);
        RunOut c2 = run(args);
        CHECK(c1.code == 0);
        CHECK(c1.out == c2.out);
        CHECK(c1.out.find("\"seed\":11") != std::string::npos);
        CHECK(c1.out.find("[[0,0],") != std::string::npos);  // chains start at the bottom

        RunOut p = run({"chains", "pair", "--t", "2", "--n", "4", "--k", "1"});
        CHECK(p.code == 0);
        CHECK(p.out.find("\"pass\":true") != std::string::npos);

        // an implausibly small W makes the asserted bound fail: exit 1
        RunOut bad = run({"chains", "pair", "--t", "2", "--n", "4", "--k", "1", "--w", "1/1000"});
        CHECK(bad.code == 1);
        CHECK(bad.out.find("\"pass\":false") != std::string::npos);
    }

    TEST_CASE("saturation subcommands") {
        RunOut c = run({"saturate", "--t", "2", "--n", "3"});
        CHECK(c.code == 0);
        CHECK(c.out.find("\"chains\"") != std::string::npos);

        RunOut r = run({"saturate", "--t", "3", "--n", "4", "--mode", "rectangles",
                        "--half-split", "2"});
        CHECK(r.code == 0);
        CHECK(r.out.find("\"sides\"") != std::string::npos);
        CHECK(r.out.find("\"u\":9") != std::string::npos);

        RunOut bad = run({"saturate", "--t", "2", "--n", "3", "--mode", "rectangles",
                          "--half-split", "3"});
        CHECK(bad.code == 2);
        CHECK(!bad.err.empty());
    }

    TEST_CASE("container subcommands") {
        RunOut r = run({"containers", "run", "--t", "2", "--n", "4"});
        CHECK(r.code == 0);
        CHECK(r.out.find("\"initial_size\":16") != std::string::npos);
        CHECK(r.out.find("\"step\":1,") != std::string::npos);

        RunOut v = run({"containers", "verify", "--t", "2", "--n", "4", "--samples", "50",
                        "--seed", "3"});
        CHECK(v.code == 0);
        CHECK(v.out.find("\"pass\":true") != std::string::npos);

        RunOut bad = run({"containers", "run", "--t", "2", "--n", "4", "--order", "sideways"});
        CHECK(bad.code == 2);
    }

    TEST_CASE("count subcommands") {
        RunOut e = run({"count", "exact", "--t", "2", "--n", "4"});
        CHECK(e.code == 0);
        CHECK(e.out == "{\"shape\":\"[2]^4\",\"count\":\"168\"}\n");

        RunOut u = run({"count", "upto", "--t", "2", "--n", "4", "--max-size", "2"});
        CHECK(u.code == 0);
        CHECK(u.out.find("\"count\":\"72\"") != std::string::npos);

        RunOut b = run({"count", "bounds", "--t", "3", "--n", "3"});
        CHECK(b.code == 0);
        CHECK(b.out.rfind("t,n,alpha,log2A,ratio,main_rhs,lower_bound\n3,3,7,", 0) == 0);

        RunOut bj = run({"count", "bounds", "--t", "3", "--n", "3", "--format", "json"});
        CHECK(bj.code == 0);
        CHECK(bj.out.find("\"count\":\"980\"") != std::string::npos);
    }

    TEST_CASE("analytics subcommands") {
        RunOut t = run({"analytics", "tilt", "--t", "2", "--n", "10", "--k", "4"});
        CHECK(t.code == 0);
        CHECK(t.out.find("\"q\":\"1/1\"") != std::string::npos);
        CHECK(t.out.find("\"p\":0.66666666666666") != std::string::npos);

        RunOut d = run({"analytics", "density", "--t", "2", "--n", "10", "--k", "5", "--x", "0"});
        CHECK(d.code == 0);
        auto pos = d.out.find("\"value\":");
        REQUIRE(pos != std::string::npos);
        double val = std::stod(d.out.substr(pos + 8));
        CHECK(val == doctest::Approx(252.0 / 1024.0).epsilon(1e-9));

        RunOut l = run({"analytics", "lambda", "--t", "2", "--n", "4", "--k", "2",
                        "--profile", "full"});
        CHECK(l.code == 0);
        CHECK(l.out.find("\"ratio\":\"5/4\"") != std::string::npos);

        RunOut c = run({"analytics", "claims", "--t", "2", "--n", "100", "--k", "50",
                        "--grid-step", "0.01"});
        CHECK(c.code == 0);
        CHECK(c.out.find("\"pass\":true") != std::string::npos);

        RunOut dv = run({"analytics", "derivs", "--t", "2", "--n", "10"});
        CHECK(dv.code == 0);
        CHECK(dv.out.rfind("t,n,norm1,norm2,scaled1,scaled2\n2,10,", 0) == 0);
    }

    TEST_CASE("usage errors and help") {
        CHECK(run({}).code == 2);
        CHECK(run({"no-such-command"}).code == 2);
        CHECK(run({"levels", "--t", "3"}).code == 2);              // missing --n
        CHECK(run({"levels", "--t", "1", "--n", "2"}).code == 2);  // invalid shape
        CHECK(run({"count", "exact", "--t", "4", "--n", "4"}).code == 2);  // over the guard
        CHECK(run({"analytics", "tilt", "--t", "2", "--n", "4", "--k", "4"}).code == 2);

        RunOut h = run({"--help"});
        CHECK(h.code == 0);
        CHECK(h.out.find("levels") != std::string::npos);
    }

    TEST_CASE("output file matches stdout") {
        std::string path = "cli_test_output.json";
        RunOut direct = run({"levels", "--t", "2", "--n", "5"});
        RunOut filed = run({"levels", "--t", "2", "--n", "5", "--output", path});
        CHECK(filed.code == 0);
        CHECK(filed.out.empty());
        std::ifstream in(path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == direct.out);
        in.close();
        std::remove(path.c_str());
    }
}
