#include "exmort/rng.hpp"

#include <cmath>
#include <numbers>

namespace exmort {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed;
    std::uint64_t mixed = splitmix64(state);
    state = mixed ^ (index * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL);
    return splitmix64(state);
}

double NormalSampler::uniform() {
    // 53-bit mantissa, offset by half an ulp so the result is never 0 or 1.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalSampler::operator()() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

std::int64_t PoissonSampler::operator()(double mean) {
    if (mean <= 0.0) return 0;
    if (mean <= 700.0) {
        const double limit = std::exp(-mean);
        std::int64_t k = 0;
        double p = 1.0;
        for (;;) {
            p *= normal_.uniform();
            if (p <= limit) return k;
            ++k;
        }
    }
    const double v = mean + std::sqrt(mean) * normal_();
    return v <= 0.0 ? 0 : static_cast<std::int64_t>(std::llround(v));
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = static_cast<double>(n - 1) * q;
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

} // namespace exmort
