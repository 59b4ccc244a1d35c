#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "cer/analytic.hpp"
#include "cer/assembler.hpp"
#include "cer/trajectory.hpp"
#include "cer/verify.hpp"
#include "cli.hpp"

namespace cer::cli {
namespace {

// Runs work(stream, count, accumulator) for each shard, one thread per shard.
template <typename Acc, typename Work>
std::vector<Acc> run_shards(const Sharding& sh, std::string_view label, std::uint64_t total,
                            Work work) {
    const auto sizes = shard_sizes(total, sh.jobs);
    std::vector<Acc> acc(sizes.size());
    const RngStream root(sh.seed);
    std::vector<std::exception_ptr> errors(sizes.size());
    auto body = [&](std::size_t i) {
        try {
            RngStream stream = root.substream(label, i);
            work(stream, sizes[i], acc[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (sizes.size() == 1) {
        body(0);
    } else {
        std::vector<std::thread> threads;
        for (std::size_t i = 0; i < sizes.size(); ++i) threads.emplace_back(body, i);
        for (auto& t : threads) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return acc;
}

std::string fixed_name(const char* prefix, std::uint64_t k) { return prefix + std::to_string(k); }

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

void SuiteReport::add(std::string metric, double observed, double expected, double tolerance,
                      bool pass) {
    rows.push_back({std::move(metric), observed, expected, tolerance, pass});
}

void SuiteReport::add_abs(std::string metric, double observed, double expected, double tolerance) {
    add(std::move(metric), observed, expected, tolerance,
        std::fabs(observed - expected) <= tolerance);
}

void write_csv(std::ostream& out, const SuiteReport& report) {
    out << "metric,observed,expected,tolerance,pass\n";
    const auto old_precision = out.precision(12);
    for (const auto& r : report.rows) {
        out << r.metric << ',' << r.observed << ',' << r.expected << ',' << r.tolerance << ','
            << (r.pass ? "true" : "false") << '\n';
    }
    out.precision(old_precision);
}

std::vector<std::uint64_t> shard_sizes(std::uint64_t total, unsigned jobs) {
    const unsigned shards = std::max(1u, jobs);
    std::vector<std::uint64_t> sizes(shards, total / shards);
    for (std::uint64_t i = 0; i < total % shards; ++i) ++sizes[i];
    return sizes;
}

SuiteReport verify_lemma1(std::uint32_t n, double p) {
    const double positivity = positivity_probability_exact(compute_intensities(n, p));
    const double nd = static_cast<double>(n);
    const double factor = std::pow(-std::expm1(nd * std::log1p(-p)), nd - 1.0);
    const double lhs = factor * positivity;
    const double rhs = connectivity_probability_exact(n, p);
    SuiteReport report;
    report.add("walk_identity", lhs, rhs, 1e-10 * rhs, std::fabs(lhs - rhs) <= 1e-10 * rhs);
    report.add("relative_residual", std::fabs(lhs - rhs) / rhs, 0.0, 1e-10,
               std::fabs(lhs - rhs) <= 1e-10 * rhs);
    return report;
}

SuiteReport verify_gnp_exact(std::uint32_t n, double p, std::uint64_t samples, const Sharding& sh) {
    const DistributionTable exact = exact_conditional_gnp_distribution(n, p);
    struct Acc {
        EmpiricalDistribution dist;
        std::uint64_t disconnected = 0;
    };
    const auto shards = run_shards<Acc>(sh, "verify-gnp-exact", samples,
                                        [&](RngStream& s, std::uint64_t count, Acc& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
            Graph g = generate_connected_gnp(s, n, p);
            if (!is_connected(g)) ++acc.disconnected;
            acc.dist.add(g);
        }
    });
    EmpiricalDistribution merged;
    std::uint64_t disconnected = 0;
    for (const auto& acc : shards) {
        merged.merge(acc.dist);
        disconnected += acc.disconnected;
    }
    std::uint64_t outside = 0;
    for (const auto& [key, count] : merged.counts()) {
        if (exact.entries.find(key) == exact.entries.end()) outside += count;
    }

    SuiteReport report;
    report.add_abs("normalizer", exact.total, connectivity_probability_exact(n, p), 1e-12);
    report.add_abs("support_size", static_cast<double>(exact.entries.size()),
                   static_cast<double>(enumerate_connected_graphs(n).size()), 0.0);
    report.add_abs("disconnected_samples", static_cast<double>(disconnected), 0.0, 0.0);
    report.add_abs("samples_outside_support", static_cast<double>(outside), 0.0, 0.0);
    const double noise = expected_tvd_noise(exact, samples);
    const double tvd = total_variation(merged.table(), exact);
    report.add("tvd", tvd, noise, 3.0 * noise, tvd <= 3.0 * noise);
    return report;
}

SuiteReport verify_gnm_uniform(std::uint32_t n, std::uint64_t edges, std::uint64_t samples,
                               const Sharding& sh) {
    const auto support = enumerate_connected_graphs(n, edges);
    std::map<CanonicalKey, std::size_t> index;
    for (std::size_t i = 0; i < support.size(); ++i) index.emplace(support[i], i);
    struct Acc {
        std::vector<std::uint64_t> counts;
        std::uint64_t outside = 0;
        std::uint64_t wrong_size = 0;
        std::uint64_t disconnected = 0;
    };
    const auto shards = run_shards<Acc>(sh, "verify-gnm-uniform", samples,
                                        [&](RngStream& s, std::uint64_t count, Acc& acc) {
        acc.counts.assign(support.size(), 0);
        for (std::uint64_t i = 0; i < count; ++i) {
            Graph g = generate_connected_gnm(s, n, edges);
            if (g.edge_count() != edges) ++acc.wrong_size;
            if (!is_connected(g)) ++acc.disconnected;
            auto it = index.find(CanonicalKey(g));
            if (it == index.end()) {
                ++acc.outside;
            } else {
                ++acc.counts[it->second];
            }
        }
    });
    std::vector<std::uint64_t> counts(support.size(), 0);
    std::uint64_t outside = 0, wrong_size = 0, disconnected = 0;
    for (const auto& acc : shards) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += acc.counts[i];
        outside += acc.outside;
        wrong_size += acc.wrong_size;
        disconnected += acc.disconnected;
    }

    SuiteReport report;
    report.add("support_size", static_cast<double>(support.size()),
               static_cast<double>(support.size()), 0.0, !support.empty());
    report.add_abs("wrong_edge_count_samples", static_cast<double>(wrong_size), 0.0, 0.0);
    report.add_abs("disconnected_samples", static_cast<double>(disconnected), 0.0, 0.0);
    report.add_abs("samples_outside_support", static_cast<double>(outside), 0.0, 0.0);
    if (support.size() >= 2) {
        const auto chi = chi_square_uniformity(counts);
        report.add("chi_square_p_value", chi.p_value, 1e-3, 0.0, chi.p_value >= 1e-3);
    }
    return report;
}

std::vector<DegreeBin> degree_histogram(std::uint32_t n, double c, std::uint64_t samples,
                                        const Sharding& sh) {
    const double p = c / static_cast<double>(n);
    using Acc = std::vector<std::uint64_t>;
    const auto shards = run_shards<Acc>(sh, "degree", samples,
                                        [&](RngStream& s, std::uint64_t count, Acc& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
            const Graph g = generate_connected_gnp(s, n, p);
            std::uint32_t degree = 0;
            for (const Edge& e : g.edges()) {
                if (e.u != 1) break;
                ++degree;
            }
            if (acc.size() <= degree) acc.resize(degree + 1, 0);
            ++acc[degree];
        }
    });
    std::vector<std::uint64_t> counts;
    for (const auto& acc : shards) {
        if (counts.size() < acc.size()) counts.resize(acc.size(), 0);
        for (std::size_t k = 0; k < acc.size(); ++k) counts[k] += acc[k];
    }
    const DegreeLaw law(c);
    const std::size_t bins = std::max<std::size_t>(counts.size(), 11);
    std::vector<DegreeBin> out;
    const double total = static_cast<double>(samples);
    for (std::uint32_t k = 0; k < bins; ++k) {
        const double theo = degree_pmf(law, k);
        const double emp = k < counts.size() ? static_cast<double>(counts[k]) / total : 0.0;
        out.push_back({k, emp, std::sqrt(theo * (1.0 - theo) / total), theo});
    }
    return out;
}

SuiteReport verify_degree(std::uint32_t n, double c, std::uint64_t samples, std::uint32_t max_k,
                          const Sharding& sh) {
    const auto bins = degree_histogram(n, c, samples, sh);
    SuiteReport report;
    const DegreeLaw law(c);
    double mass = 0.0;
    for (std::uint32_t k = 0; k <= law.truncation(); ++k) mass += degree_pmf(law, k);
    report.add_abs("theoretical_pmf_mass", mass, 1.0, 1e-12);
    for (const auto& bin : bins) {
        if (bin.k < 1 || bin.k > max_k) continue;
        report.add_abs(fixed_name("pmf_k", bin.k), bin.empirical, bin.theoretical,
                       3.0 * bin.std_error);
    }
    return report;
}

SuiteReport verify_acceptance(std::uint32_t n, double c, std::uint64_t trials, const Sharding& sh) {
    const IntensityVector intensities = compute_intensities(n, c / static_cast<double>(n));
    using Acc = std::uint64_t;
    const auto shards = run_shards<Acc>(sh, "acceptance", trials,
                                        [&](RngStream& s, std::uint64_t count, Acc& restarts) {
        for (std::uint64_t i = 0; i < count; ++i) {
            restarts += sample_trajectory_gnp(s, intensities).restarts;
        }
    });
    std::uint64_t restarts = 0;
    for (auto r : shards) restarts += r;
    const double rate = static_cast<double>(trials) / static_cast<double>(trials + restarts);
    SuiteReport report;
    report.add_abs("acceptance_rate", rate, acceptance_probability_asymptotic(c), 0.02);
    report.add("acceptance_above_1_over_n", rate, 1.0 / n, 0.0, rate >= 1.0 / n);
    return report;
}

MeanDegreePoint mean_degree(std::uint32_t n, double c, std::uint64_t samples, const Sharding& sh) {
    struct Acc {
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    const double p = c / static_cast<double>(n);
    const auto shards = run_shards<Acc>(sh, "mean-degree", samples,
                                        [&](RngStream& s, std::uint64_t count, Acc& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
            const Graph g = generate_connected_gnp(s, n, p);
            const double d = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
            acc.sum += d;
            acc.sum_sq += d * d;
        }
    });
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& acc : shards) {
        sum += acc.sum;
        sum_sq += acc.sum_sq;
    }
    const double count = static_cast<double>(samples);
    const double mean = sum / count;
    const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
    return {c, mean, std::sqrt(var / count), zeta(c)};
}

EdgeHistogram edge_count_histogram(std::uint32_t n, std::uint64_t edges, std::uint64_t samples,
                                   const Sharding& sh) {
    if (n < 3) throw std::invalid_argument("stats edges: n must be at least 3");
    const double target = 2.0 * static_cast<double>(edges) / static_cast<double>(n - 1);
    EdgeHistogram out;
    out.step0_c = solve_c_for_mean_degree(target);
    out.naive_c = target;

    auto collect = [&](double c, std::string_view label) {
        const double p = std::min(1.0, c / static_cast<double>(n));
        const IntensityVector intensities = compute_intensities(n, p);
        using Acc = std::map<std::uint64_t, std::uint64_t>;
        const auto shards =
            run_shards<Acc>(sh, label, samples, [&](RngStream& s, std::uint64_t count, Acc& acc) {
                for (std::uint64_t i = 0; i < count; ++i) {
                    const auto sample = sample_trajectory_gnp(s, intensities);
                    const std::uint64_t extra = binomial(s, pset_size(sample.trajectory), p);
                    ++acc[n - 1 + extra];
                }
            });
        Acc merged;
        for (const auto& acc : shards) {
            for (const auto& [m, count] : acc) merged[m] += count;
        }
        return merged;
    };
    const auto step0 = collect(out.step0_c, "edges-step0");
    const auto naive = collect(out.naive_c, "edges-naive");
    std::uint64_t lo = std::min(step0.begin()->first, naive.begin()->first);
    std::uint64_t hi = std::max(step0.rbegin()->first, naive.rbegin()->first);
    out.min_edges = lo;
    out.step0.assign(hi - lo + 1, 0);
    out.naive.assign(hi - lo + 1, 0);
    for (const auto& [m, count] : step0) out.step0[m - lo] = count;
    for (const auto& [m, count] : naive) out.naive[m - lo] = count;
    return out;
}

BenchRow bench_gnp(std::uint32_t n, double c, std::uint64_t reps, const Sharding& sh) {
    struct Acc {
        double ms = 0.0;
        std::uint64_t restarts = 0;
        std::uint64_t edges = 0;
    };
    const double p = std::min(1.0, c / static_cast<double>(n));
    const auto shards = run_shards<Acc>(sh, fixed_name("bench-", n), reps,
                                        [&](RngStream& s, std::uint64_t count, Acc& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
            GenerationStats stats;
            const auto start = std::chrono::steady_clock::now();
            const Graph g = generate_connected_gnp(s, n, p, &stats);
            const auto stop = std::chrono::steady_clock::now();
            acc.ms += std::chrono::duration<double, std::milli>(stop - start).count();
            acc.restarts += stats.restarts;
            acc.edges += g.edge_count();
        }
    });
    Acc total;
    for (const auto& acc : shards) {
        total.ms += acc.ms;
        total.restarts += acc.restarts;
        total.edges += acc.edges;
    }
    const double r = static_cast<double>(reps);
    return {n, total.ms / r, static_cast<double>(total.restarts) / r,
            static_cast<double>(total.edges) / r};
}

}  // namespace cer::cli
