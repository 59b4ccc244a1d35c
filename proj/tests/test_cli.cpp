#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "cer/format.hpp"
#include "cli.hpp"

using cer::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("gen writes a canonical edge list") {
    const auto r = call({"gen", "gnp", "--n", "2", "--p", "0.9", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "2 1\n1 2\n");
    CHECK(r.err.empty());
}

TEST_CASE("gen is deterministic given a seed") {
    const auto a = call({"gen", "gnp", "--n", "200", "--c", "3", "--seed", "5"});
    const auto b = call({"gen", "gnp", "--n", "200", "--c", "3", "--seed", "5"});
    const auto c = call({"gen", "gnp", "--n", "200", "--c", "3", "--seed", "6"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    std::istringstream in(a.out);
    const auto g = cer::read_edgelist(in);
    CHECK(g.vertex_count() == 200);
    CHECK(cer::is_connected(g));
}

TEST_CASE("gen gnm in every format") {
    const auto el = call({"gen", "gnm", "--n", "30", "--m", "40", "--seed", "2"});
    REQUIRE(el.code == 0);
    std::istringstream in(el.out);
    const auto g = cer::read_edgelist(in);
    CHECK(g.edge_count() == 40);

    const auto js = call({"gen", "gnm", "--n", "30", "--m", "40", "--seed", "2", "--format", "json"});
    REQUIRE(js.code == 0);
    std::istringstream jin(js.out);
    cer::Provenance prov;
    CHECK(cer::read_json(jin, &prov) == g);
    CHECK(prov.model == "gnm");
    CHECK(prov.seed == 2u);

    const auto dot = call({"gen", "gnm", "--n", "5", "--m", "4", "--seed", "2", "--format", "dot"});
    CHECK(dot.out.rfind("graph {\n", 0) == 0);
}

TEST_CASE("missing seed is drawn and reported") {
    const auto r = call({"gen", "gnp", "--n", "10", "--p", "0.5"});
    CHECK(r.code == 0);
    REQUIRE(r.err.rfind("seed: ", 0) == 0);
    const std::string seed = r.err.substr(6, r.err.size() - 7);
    const auto again = call({"gen", "gnp", "--n", "10", "--p", "0.5", "--seed", seed});
    CHECK(again.out == r.out);
}

TEST_CASE("--out writes a file") {
    const std::string path = "cli_test_out.txt";
    const auto r = call({"gen", "gnp", "--n", "2", "--p", "0.5", "--seed", "1", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream body;
    body << f.rdbuf();
    CHECK(body.str() == "2 1\n1 2\n");
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit with 2") {
    CHECK(call({}).code == 2);
    CHECK(call({"gen", "gnp", "--n", "10"}).code == 2);
    CHECK(call({"gen", "gnp", "--n", "10", "--p", "0.5", "--c", "2"}).code == 2);
    CHECK(call({"gen", "gnp", "--n", "10", "--p", "1.5"}).code == 2);
    CHECK(call({"gen", "gnm", "--n", "10", "--m", "3"}).code == 2);
    CHECK(call({"gen", "gnp", "--n", "10", "--p", "0.5", "--format", "xml"}).code == 2);
    CHECK(call({"verify", "nonsense", "--n", "4", "--p", "0.5"}).code == 2);
    CHECK(call({"stats", "nonsense", "--n", "4"}).code == 2);
    CHECK(call({"bench", "--sizes", "100,10"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"verify", "gnp-exact", "--n", "9", "--p", "0.5", "--samples", "10"}).code == 2);
    const auto help = call({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("verify suites report CSV and pass on correct samplers") {
    const auto lemma = call({"verify", "lemma1", "--n", "40", "--p", "0.1"});
    CHECK(lemma.code == 0);
    CHECK(lemma.out.rfind("metric,observed,expected,tolerance,pass\n", 0) == 0);

    const auto exact =
        call({"verify", "gnp-exact", "--n", "4", "--p", "0.5", "--samples", "200000", "--seed", "3"});
    CHECK(exact.code == 0);
    CHECK(exact.out.find(",false") == std::string::npos);

    const auto sharded = call({"verify", "gnm-uniform", "--n", "4", "--m", "4", "--samples", "100000",
                               "--seed", "3", "--jobs", "3"});
    CHECK(sharded.code == 0);
    const auto again = call({"verify", "gnm-uniform", "--n", "4", "--m", "4", "--samples", "100000",
                             "--seed", "3", "--jobs", "3"});
    CHECK(again.out == sharded.out);

    const auto accept =
        call({"verify", "acceptance", "--n", "1000", "--c", "3", "--trials", "3000", "--seed", "4"});
    CHECK(accept.code == 0);
}

TEST_CASE("verify failure exits with 1") {
    // the limiting degree law is far from the truth at n = 6
    const auto r = call({"verify", "degree", "--n", "6", "--c", "3", "--samples", "100000", "--seed", "1"});
    CHECK(r.code == 1);
    CHECK(r.out.find(",false") != std::string::npos);
}

TEST_CASE("stats and bench emit CSV") {
    const auto walk = call({"stats", "walk", "--n", "20", "--c", "2", "--traces", "3", "--seed", "1"});
    CHECK(walk.code == 0);
    CHECK(walk.out.rfind("k,expected,trace_1,trace_2,trace_3\n", 0) == 0);
    const auto deg = call({"stats", "degree", "--n", "50", "--c", "2", "--samples", "2000", "--seed", "1"});
    CHECK(deg.code == 0);
    CHECK(deg.out.rfind("k,empirical,std_error,theoretical\n", 0) == 0);
    const auto curve = call({"stats", "degree", "--n", "50", "--c-grid", "1,2", "--samples", "500", "--seed", "1"});
    CHECK(curve.code == 0);
    CHECK(curve.out.rfind("c,empirical_mean,std_error,zeta\n", 0) == 0);
    const auto edges = call({"stats", "edges", "--n", "50", "--m", "70", "--samples", "500", "--seed", "1"});
    CHECK(edges.code == 0);
    CHECK(edges.out.rfind("edges,step0,naive\n", 0) == 0);
    const auto bench = call({"bench", "--sizes", "100,1000", "--reps", "2", "--seed", "1"});
    CHECK(bench.code == 0);
    CHECK(bench.out.rfind("n,mean_ms,restarts_mean,edges_mean\n100,", 0) == 0);
}
