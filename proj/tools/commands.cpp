#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cer/analytic.hpp"
#include "cer/assembler.hpp"
#include "cer/format.hpp"
#include "cer/trajectory.hpp"
#include "cli.hpp"

namespace cer::cli {
namespace {

struct Options {
    // gen / verify / stats
    std::uint32_t n = 0;
    std::optional<double> p;
    std::optional<double> c;
    std::optional<std::uint64_t> m;
    std::optional<std::uint64_t> seed;
    std::string format = "edgelist";
    std::string out_path;
    std::uint64_t samples = 0;
    std::uint64_t trials = 0;
    std::uint64_t traces = 5;
    std::uint32_t max_k = 10;
    unsigned jobs = 1;
    std::string suite;
    std::string kind;
    std::vector<double> c_grid;
    // bench
    std::vector<std::uint32_t> sizes;
    std::uint64_t reps = 10;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const Options& o, std::ostream& err) {
    if (o.seed) return *o.seed;
    std::random_device device;
    const std::uint64_t seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
    err << "seed: " << seed << '\n';
    return seed;
}

double resolve_p(const Options& o) {
    if (o.p.has_value() == o.c.has_value()) throw UsageError("give exactly one of --p or --c");
    if (o.n == 0) throw UsageError("--n must be at least 1");
    const double p = o.p ? *o.p : *o.c / static_cast<double>(o.n);
    if (!(p > 0.0 && p <= 1.0)) throw UsageError("edge probability must lie in (0,1]");
    return p;
}

double resolve_c(const Options& o) {
    if (o.p.has_value() == o.c.has_value()) throw UsageError("give exactly one of --p or --c");
    return o.c ? *o.c : *o.p * static_cast<double>(o.n);
}

std::uint64_t require(const std::optional<std::uint64_t>& v, const char* flag) {
    if (!v) throw UsageError(std::string("missing ") + flag);
    return *v;
}

// Writes to --out when given, otherwise to `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

int cmd_gen_gnp(const Options& o, std::ostream& out, std::ostream& err) {
    const double p = resolve_p(o);
    const OutputFormat format = parse_output_format(o.format);
    const std::uint64_t seed = resolve_seed(o, err);
    RngStream stream(seed);
    const Graph g = generate_connected_gnp(stream, o.n, p);
    Provenance prov{"gnp", {{"n", static_cast<double>(o.n)}, {"p", p}}, seed};
    if (o.c) prov.params.emplace_back("c", *o.c);
    Sink sink(o.out_path, out);
    write_graph(sink.get(), g, format, prov);
    return kExitOk;
}

int cmd_gen_gnm(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.n == 0) throw UsageError("--n must be at least 1");
    const std::uint64_t edges = require(o.m, "--m");
    const std::uint64_t nn = o.n;
    if (edges + 1 < nn || edges > nn * (nn - 1) / 2) {
        throw UsageError("--m must lie in [n-1, n(n-1)/2]");
    }
    const OutputFormat format = parse_output_format(o.format);
    const std::uint64_t seed = resolve_seed(o, err);
    RngStream stream(seed);
    const Graph g = generate_connected_gnm(stream, o.n, edges);
    Provenance prov{"gnm", {{"n", static_cast<double>(o.n)}, {"M", static_cast<double>(edges)}},
                    seed};
    Sink sink(o.out_path, out);
    write_graph(sink.get(), g, format, prov);
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    SuiteReport report;
    auto sharding = [&] { return Sharding{resolve_seed(o, err), o.jobs}; };
    const std::uint32_t n = o.n;
    if (o.suite == "lemma1") {
        report = verify_lemma1(n, resolve_p(o));
    } else if (o.suite == "gnp-exact") {
        report = verify_gnp_exact(n, resolve_p(o), o.samples ? o.samples : 1000000, sharding());
    } else if (o.suite == "gnm-uniform") {
        report = verify_gnm_uniform(n, require(o.m, "--m"), o.samples ? o.samples : 1000000,
                                    sharding());
    } else if (o.suite == "degree") {
        report = verify_degree(n, resolve_c(o), o.samples ? o.samples : 100000, o.max_k,
                               sharding());
    } else if (o.suite == "acceptance") {
        report = verify_acceptance(n, resolve_c(o), o.trials ? o.trials : 10000, sharding());
    } else {
        throw UsageError("unknown verify suite '" + o.suite + "'");
    }
    Sink sink(o.out_path, out);
    write_csv(sink.get(), report);
    return report.passed() ? kExitOk : kExitVerificationFailed;
}

int cmd_stats(const Options& o, std::ostream& out, std::ostream& err) {
    const Sharding sh{resolve_seed(o, err), o.jobs};
    Sink sink(o.out_path, out);
    std::ostream& csv = sink.get();
    csv.precision(10);
    if (o.kind == "degree" && !o.c_grid.empty()) {
        csv << "c,empirical_mean,std_error,zeta\n";
        for (double c : o.c_grid) {
            const auto pt = mean_degree(o.n, c, o.samples ? o.samples : 10000, sh);
            csv << pt.c << ',' << pt.empirical << ',' << pt.std_error << ',' << pt.theoretical
                << '\n';
        }
    } else if (o.kind == "degree") {
        const auto bins = degree_histogram(o.n, resolve_c(o), o.samples ? o.samples : 100000, sh);
        csv << "k,empirical,std_error,theoretical\n";
        for (const auto& b : bins) {
            csv << b.k << ',' << b.empirical << ',' << b.std_error << ',' << b.theoretical << '\n';
        }
    } else if (o.kind == "walk") {
        const double p = resolve_p(o);
        const IntensityVector intensities = compute_intensities(o.n, p);
        RngStream stream = RngStream(sh.seed).substream("walk");
        std::vector<Trajectory> traces;
        for (std::uint64_t i = 0; i < o.traces; ++i) {
            traces.push_back(sample_trajectory_gnp(stream, intensities).trajectory);
        }
        csv << "k,expected";
        for (std::uint64_t i = 0; i < o.traces; ++i) csv << ",trace_" << (i + 1);
        csv << '\n';
        // Mean of the unconditioned multinomial walk.
        double cumulative = 0.0;
        const double share = static_cast<double>(o.n - 1) / static_cast<double>(o.n);
        for (std::uint32_t k = 0; k <= o.n; ++k) {
            if (k > 0) cumulative += share * intensities.lambdas[k - 1];
            csv << k << ',' << cumulative - static_cast<double>(k);
            for (const auto& t : traces) csv << ',' << t.walk[k];
            csv << '\n';
        }
    } else if (o.kind == "edges") {
        const auto hist =
            edge_count_histogram(o.n, require(o.m, "--m"), o.samples ? o.samples : 50000, sh);
        csv << "edges,step0,naive\n";
        for (std::size_t i = 0; i < hist.step0.size(); ++i) {
            csv << hist.min_edges + i << ',' << hist.step0[i] << ',' << hist.naive[i] << '\n';
        }
        err << "step0 c = " << hist.step0_c << ", naive c = " << hist.naive_c << '\n';
    } else {
        throw UsageError("unknown stats kind '" + o.kind + "'");
    }
    return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.sizes.empty()) throw UsageError("--sizes is required");
    if (!std::is_sorted(o.sizes.begin(), o.sizes.end())) throw UsageError("--sizes must ascend");
    const double c = o.c.value_or(3.0);
    if (!(c > 0.0)) throw UsageError("--c must be positive");
    const Sharding sh{resolve_seed(o, err), o.jobs};
    Sink sink(o.out_path, out);
    std::ostream& csv = sink.get();
    csv.precision(10);
    csv << "n,mean_ms,restarts_mean,edges_mean\n";
    for (std::uint32_t n : o.sizes) {
        const auto row = bench_gnp(n, c, o.reps, sh);
        csv << row.n << ',' << row.mean_ms << ',' << row.restarts_mean << ',' << row.edges_mean
            << '\n';
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact samplers for connected Erdos-Renyi random graphs", "cer"};
    app.require_subcommand(1);
    Options o;

    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", o.seed, "Random seed (drawn from entropy and printed if omitted)");
        cmd->add_option("--out", o.out_path, "Write to this file instead of stdout");
    };
    auto add_jobs = [&](CLI::App* cmd) {
        cmd->add_option("--jobs", o.jobs, "Independent sample shards (threads)")
            ->check(CLI::Range(1u, 256u));
    };

    auto* gen = app.add_subcommand("gen", "Generate one connected graph");
    gen->require_subcommand(1);
    auto* gnp = gen->add_subcommand("gnp", "Connected G(n,p)");
    auto* gnm = gen->add_subcommand("gnm", "Connected G(n,M)");
    for (auto* cmd : {gnp, gnm}) {
        cmd->add_option("--n", o.n, "Number of vertices")->required();
        cmd->add_option("--format", o.format, "edgelist | dot | json")
            ->check(CLI::IsMember({"edgelist", "dot", "json"}));
        add_seed(cmd);
    }
    gnp->add_option("--p", o.p, "Edge probability");
    gnp->add_option("--c", o.c, "Scaled edge probability, p = c/n");
    gnm->add_option("--m", o.m, "Number of edges")->required();

    auto* verify = app.add_subcommand("verify", "Run a verification suite, CSV report");
    verify->add_option("suite", o.suite, "gnp-exact | gnm-uniform | lemma1 | degree | acceptance")
        ->required();
    verify->add_option("--n", o.n, "Number of vertices")->required();
    verify->add_option("--p", o.p, "Edge probability");
    verify->add_option("--c", o.c, "Scaled edge probability, p = c/n");
    verify->add_option("--m", o.m, "Number of edges (gnm-uniform)");
    verify->add_option("--samples", o.samples, "Sample count");
    verify->add_option("--trials", o.trials, "Trajectory draws (acceptance)");
    verify->add_option("--max-k", o.max_k, "Largest degree bin checked (degree)");
    add_seed(verify);
    add_jobs(verify);

    auto* stats = app.add_subcommand("stats", "Emit plot-ready CSV");
    stats->add_option("kind", o.kind, "degree | walk | edges")->required();
    stats->add_option("--n", o.n, "Number of vertices")->required();
    stats->add_option("--p", o.p, "Edge probability");
    stats->add_option("--c", o.c, "Scaled edge probability, p = c/n");
    stats->add_option("--c-grid", o.c_grid, "Mean-degree curve over these c values (degree)")
        ->delimiter(',');
    stats->add_option("--m", o.m, "Target edge count (edges)");
    stats->add_option("--samples", o.samples, "Sample count");
    stats->add_option("--traces", o.traces, "Number of walk traces (walk)");
    add_seed(stats);
    add_jobs(stats);

    auto* bench = app.add_subcommand("bench", "Time connected G(n, c/n) generation");
    bench->add_option("--sizes", o.sizes, "Ascending vertex counts")->delimiter(',')->required();
    bench->add_option("--c", o.c, "Scaled edge probability (default 3)");
    bench->add_option("--reps", o.reps, "Generations per size");
    add_seed(bench);
    add_jobs(bench);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (gnp->parsed()) return cmd_gen_gnp(o, out, err);
        if (gnm->parsed()) return cmd_gen_gnm(o, out, err);
        if (verify->parsed()) return cmd_verify(o, out, err);
        if (stats->parsed()) return cmd_stats(o, out, err);
        if (bench->parsed()) return cmd_bench(o, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    err << "error: no command\n";
    return kExitUsage;
}

}  // namespace cer::cli
