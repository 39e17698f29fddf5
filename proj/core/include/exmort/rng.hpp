#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace exmort {

/// splitmix64 step; used to derive independent substream seeds so that
/// partitioned Monte Carlo work is schedule-independent.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for substream `index` of a run keyed by `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Standard-normal sampler with a fully specified mapping from the mt19937_64
/// bit stream (Box-Muller), so identical seeds give identical draws on every
/// platform. std::normal_distribution leaves the algorithm unspecified.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    double operator()();

    /// Uniform in (0, 1).
    double uniform();

  private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Poisson sampler on the same engine discipline. Exact sequential search up
/// to mean 700, normal approximation above (means that large never occur in
/// the intended count ranges).
class PoissonSampler {
  public:
    explicit PoissonSampler(std::uint64_t seed) : normal_(seed) {}

    std::int64_t operator()(double mean);

  private:
    NormalSampler normal_;
};

/// Empirical quantile with linear interpolation between order statistics
/// (the common "type 7" rule). `sorted` must be ascending and non-empty.
double quantile_sorted(const std::vector<double>& sorted, double q);

} // namespace exmort
