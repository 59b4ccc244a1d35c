#include "cer/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace cer {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": probability must lie in [0,1], got " +
                                    std::to_string(p));
    }
}

// log(k!) - (k + 1/2) log(k + 1) + (k + 1) - log(sqrt(2 pi))
double stirling_correction(std::uint64_t k) {
    static const double kTable[10] = {
        0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
        0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
        0.01189670994589177, 0.01041126526197209, 0.009255462182712733,
        0.008330563433362871,
    };
    if (k < 10) return kTable[k];
    const double inv = 1.0 / (static_cast<double>(k) + 1.0);
    const double inv2 = inv * inv;
    return (1.0 / 12.0 - (1.0 / 360.0 - inv2 / 1260.0) * inv2) * inv;
}

// p <= 1/2 and trials * p < 30.
std::uint64_t binomial_inversion(RngStream& stream, std::uint64_t trials, double p) {
    const double n = static_cast<double>(trials);
    const double s = p / (1.0 - p);
    const double a = (n + 1.0) * s;
    const double p0 = std::exp(n * std::log1p(-p));
    for (;;) {
        double u = uniform01(stream);
        double pr = p0;
        std::uint64_t x = 0;
        bool overflow = false;
        while (u > pr) {
            u -= pr;
            ++x;
            if (x > trials || pr <= 0.0) {
                overflow = true;
                break;
            }
            pr *= a / static_cast<double>(x) - s;
        }
        if (!overflow) return x;
    }
}

// Hormann (1993), BTRD. p <= 1/2 and trials * p >= 10.
std::uint64_t binomial_btrd(RngStream& stream, std::uint64_t trials, double p) {
    const double n = static_cast<double>(trials);
    const double m = std::floor((n + 1.0) * p);
    const double r = p / (1.0 - p);
    const double nr = (n + 1.0) * r;
    const double npq = n * p * (1.0 - p);
    const double sqrt_npq = std::sqrt(npq);
    const double b = 1.15 + 2.53 * sqrt_npq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = n * p + 0.5;
    const double alpha = (2.83 + 5.1 / b) * sqrt_npq;
    const double v_r = 0.92 - 4.2 / b;
    const double u_rv_r = 0.86 * v_r;

    for (;;) {
        double v = uniform01(stream);
        double u;
        if (v <= u_rv_r) {
            u = v / v_r - 0.43;
            const double k = std::floor((2.0 * a / (0.5 - std::fabs(u)) + b) * u + c);
            if (k >= 0.0 && k <= n) return static_cast<std::uint64_t>(k);
            continue;
        }
        if (v >= v_r) {
            u = uniform01(stream) - 0.5;
        } else {
            u = v / v_r - 0.93;
            u = (u < 0.0 ? -0.5 : 0.5) - u;
            v = uniform01(stream) * v_r;
        }

        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + c);
        if (k < 0.0 || k > n) continue;
        v = v * alpha / (a / (us * us) + b);
        const double km = std::fabs(k - m);

        if (km <= 15.0) {
            // Explicit ratio f(k)/f(m) by recursion.
            double f = 1.0;
            if (m < k) {
                for (double i = m + 1.0; i <= k; i += 1.0) f *= nr / i - r;
            } else if (m > k) {
                for (double i = k + 1.0; i <= m; i += 1.0) v *= nr / i - r;
            }
            if (v <= f) return static_cast<std::uint64_t>(k);
            continue;
        }

        // Squeeze, then the exact log-ratio test.
        v = std::log(v);
        const double rho = (km / npq) * (((km / 3.0 + 0.625) * km + 1.0 / 6.0) / npq + 0.5);
        const double t = -km * km / (2.0 * npq);
        if (v < t - rho) return static_cast<std::uint64_t>(k);
        if (v > t + rho) continue;

        const double nm = n - m + 1.0;
        const double h = (m + 0.5) * std::log((m + 1.0) / (r * nm)) +
                         stirling_correction(static_cast<std::uint64_t>(m)) +
                         stirling_correction(static_cast<std::uint64_t>(n - m));
        const double nk = n - k + 1.0;
        if (v <= h + (n + 1.0) * std::log(nm / nk) + (k + 0.5) * std::log(nk * r / (k + 1.0)) -
                     stirling_correction(static_cast<std::uint64_t>(k)) -
                     stirling_correction(static_cast<std::uint64_t>(n - k))) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
        x += kGolden;
        word = splitmix64_mix(x);
    }
}

RngStream::result_type RngStream::operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

RngStream RngStream::substream(std::string_view label, std::uint64_t index) const {
    const std::uint64_t derived =
        splitmix64_mix(splitmix64_mix(seed_) ^ fnv1a64(label) ^ splitmix64_mix(index + kGolden));
    return RngStream(derived);
}

double uniform01(RngStream& stream) { return static_cast<double>(stream() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_below(RngStream& stream, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    unsigned __int128 product = static_cast<unsigned __int128>(stream()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<unsigned __int128>(stream()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

std::uint64_t binomial(RngStream& stream, std::uint64_t trials, double p) {
    check_probability(p, "binomial");
    if (trials == 0 || p == 0.0) return 0;
    if (p == 1.0) return trials;
    const bool flip = p > 0.5;
    const double q = flip ? 1.0 - p : p;
    const std::uint64_t k = static_cast<double>(trials) * q < 30.0
                                ? binomial_inversion(stream, trials, q)
                                : binomial_btrd(stream, trials, q);
    return flip ? trials - k : k;
}

std::vector<std::uint64_t> multinomial(RngStream& stream, std::uint64_t trials,
                                       std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("multinomial: weights must be finite and nonnegative");
        }
        total += w;
    }
    std::vector<std::uint64_t> counts(weights.size(), 0);
    if (trials == 0) return counts;
    if (weights.empty() || std::fabs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("multinomial: weights must sum to 1");
    }

    // Suffix sums from the small end keep the conditional probabilities accurate
    // when the weights decay.
    std::vector<double> suffix(weights.size() + 1, 0.0);
    for (std::size_t i = weights.size(); i-- > 0;) suffix[i] = suffix[i + 1] + weights[i];

    std::uint64_t remaining = trials;
    for (std::size_t i = 0; i < weights.size() && remaining > 0; ++i) {
        if (weights[i] == 0.0) continue;
        const double share = weights[i] / suffix[i];
        if (share >= 1.0 || suffix[i + 1] == 0.0) {
            counts[i] = remaining;
            remaining = 0;
            break;
        }
        counts[i] = binomial(stream, remaining, share);
        remaining -= counts[i];
    }
    return counts;
}

std::vector<std::uint32_t> random_permutation(RngStream& stream, std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("random_permutation: n must be positive");
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 1u);
    for (std::uint32_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::uint32_t>(uniform_below(stream, std::uint64_t{i} + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

std::vector<std::uint64_t> sample_without_replacement(RngStream& stream, std::uint64_t m,
                                                      std::uint64_t N) {
    if (m > N) {
        throw std::invalid_argument("sample_without_replacement: m = " + std::to_string(m) +
                                    " exceeds N = " + std::to_string(N));
    }
    std::vector<std::uint64_t> out;
    out.reserve(m);
    if (m == N) {
        for (std::uint64_t i = 1; i <= N; ++i) out.push_back(i);
        return out;
    }
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(2 * m);
    for (std::uint64_t j = N - m + 1; j <= N; ++j) {
        const std::uint64_t t = 1 + uniform_below(stream, j);
        const std::uint64_t pick = chosen.insert(t).second ? t : j;
        if (pick == j) chosen.insert(j);
        out.push_back(pick);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t geometric_skip(RngStream& stream, double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("geometric_skip: p must lie in (0,1], got " + std::to_string(p));
    }
    if (p == 1.0) return 0;
    const double u = 1.0 - uniform01(stream);  // (0, 1]
    const double g = std::floor(std::log(u) / std::log1p(-p));
    if (!(g < 18446744073709549568.0)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(g);
}

}  // namespace cer
