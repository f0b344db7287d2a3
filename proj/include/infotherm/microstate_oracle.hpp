/// @file microstate_oracle.hpp
/// @brief Exact lattice-gas counting used as ground truth for the closed-form
///        entropy identities.
///
/// Particles occupy M cells with unlimited occupancy, so the multiplicity of
/// N particles confined to m cells is m^N (labelled) or m^N / N! (Boltzmann
/// corrected). Log-factorials are exact cumulative sums, never Stirling.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace infotherm {

enum class Counting { Distinguishable, BoltzmannCorrected };

struct LatticeModel {
    std::uint64_t cells = 1;
    std::uint64_t particles = 0;
    Counting counting = Counting::Distinguishable;
};

/// Particles restricted to a contiguous block of the first `allowed_cells`.
struct RegionConstraint {
    std::uint64_t allowed_cells = 1;
};

/// Raised when an exact enumeration or integer count would be too large.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// ln(n!) by compensated summation of ln k.
double log_factorial(std::uint64_t n);

double log_multiplicity(const LatticeModel& model, std::optional<RegionConstraint> constraint = std::nullopt);

/// m^N as an exact integer; SizeError on overflow.
std::uint64_t multiplicity_closed_form(const LatticeModel& model,
                                       std::optional<RegionConstraint> constraint = std::nullopt);

struct EnumerationCount {
    std::uint64_t total = 0;
    std::uint64_t satisfying = 0;
};

inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

/// Visits every labelled assignment of particles to cells. Requires
/// M^N <= kEnumerationLimit.
EnumerationCount enumerate_and_count(const LatticeModel& model,
                                     std::optional<RegionConstraint> constraint = std::nullopt);

/// ln((1/lambda)^(lambda N)): all lambda N particles in one of lambda equal regions.
double localization_log_probability(int lambda, double n);

struct LocalizationEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    double expected_hits = 0.0;
    bool low_hit_warning = false; ///< fewer than 10 hits expected
};

/// Samples per block; each block owns the stream derive_seed(seed, block).
inline constexpr std::uint64_t kMcBlockSize = 1 << 16;

/// Monte Carlo estimate of the localization probability. Deterministic in
/// (lambda, n, samples, seed) and independent of the worker count.
LocalizationEstimate sample_localization_mc(int lambda, std::uint64_t n, std::uint64_t samples,
                                            std::uint64_t seed, unsigned workers = 1);

/// |(lambda ln N! - ln (lambda N)!) + lambda N ln lambda|: the gap between
/// exact Boltzmann counting and the Stirling-exact scaling law.
double stirling_gap(int lambda, std::uint64_t n);

} // namespace infotherm
