#include "infotherm/microstate_oracle.hpp"

#include "infotherm/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

namespace infotherm {

namespace {

constexpr std::size_t kTableSize = 1 << 16;

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

const std::vector<double>& log_factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kTableSize);
        KahanSum acc;
        t[0] = 0.0;
        for (std::size_t k = 1; k < kTableSize; ++k) {
            acc.add(std::log(static_cast<double>(k)));
            t[k] = acc.sum;
        }
        return t;
    }();
    return table;
}

std::uint64_t allowed_cells(const LatticeModel& model, std::optional<RegionConstraint> constraint) {
    if (model.cells < 1) throw std::domain_error("lattice: at least one cell required");
    if (!constraint) return model.cells;
    const std::uint64_t m = constraint->allowed_cells;
    if (m > model.cells) throw std::domain_error("lattice: constraint exceeds cell count");
    if (m == 0 && model.particles > 0) throw std::domain_error("lattice: no allowed cells for particles");
    return m;
}

bool checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit, std::uint64_t& out) {
    out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && out > limit / base) return false;
        out *= base;
    }
    return true;
}

} // namespace

double log_factorial(std::uint64_t n) {
    const auto& table = log_factorial_table();
    if (n < kTableSize) return table[n];
    KahanSum acc{table.back(), 0.0};
    for (std::uint64_t k = kTableSize; k <= n; ++k) acc.add(std::log(static_cast<double>(k)));
    return acc.sum;
}

double log_multiplicity(const LatticeModel& model, std::optional<RegionConstraint> constraint) {
    const std::uint64_t m = allowed_cells(model, constraint);
    if (model.particles == 0) return 0.0;
    const double labelled = static_cast<double>(model.particles) * std::log(static_cast<double>(m));
    if (model.counting == Counting::Distinguishable) return labelled;
    return labelled - log_factorial(model.particles);
}

std::uint64_t multiplicity_closed_form(const LatticeModel& model, std::optional<RegionConstraint> constraint) {
    const std::uint64_t m = allowed_cells(model, constraint);
    std::uint64_t w = 0;
    if (!checked_pow(m, model.particles, std::numeric_limits<std::uint64_t>::max(), w)) {
        throw SizeError("multiplicity overflows 64 bits");
    }
    return w;
}

EnumerationCount enumerate_and_count(const LatticeModel& model, std::optional<RegionConstraint> constraint) {
    const std::uint64_t m = allowed_cells(model, constraint);
    std::uint64_t states = 0;
    if (!checked_pow(model.cells, model.particles, kEnumerationLimit, states)) {
        throw SizeError("enumeration guard: M^N exceeds 1e7");
    }

    // Odometer over cell indices, one digit per labelled particle. `outside`
    // tracks how many digits currently sit beyond the allowed block.
    std::vector<std::uint64_t> cell(model.particles, 0);
    std::size_t outside = 0;
    EnumerationCount count;
    while (true) {
        ++count.total;
        count.satisfying += outside == 0 ? 1 : 0;
        std::size_t d = 0;
        while (d < cell.size()) {
            if (++cell[d] < model.cells) {
                outside += cell[d] == m ? 1 : 0;
                break;
            }
            outside -= m < model.cells ? 1 : 0;
            cell[d++] = 0;
        }
        if (d == cell.size()) break;
    }
    return count;
}

double localization_log_probability(int lambda, double n) {
    if (lambda < 2) throw std::domain_error("localization: lambda must be >= 2");
    if (!(n >= 0.0)) throw std::domain_error("localization: N must be non-negative");
    return -(lambda * n) * std::log(static_cast<double>(lambda));
}

LocalizationEstimate sample_localization_mc(int lambda, std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                                            unsigned workers) {
    if (lambda < 2) throw std::domain_error("localization MC: lambda must be >= 2");
    if (samples == 0) throw std::domain_error("localization MC: samples must be positive");
    workers = std::max(1u, workers);

    const std::uint64_t particles = static_cast<std::uint64_t>(lambda) * n;
    const std::uint64_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;

    const auto run_block = [&](std::uint64_t block) {
        Rng rng(seed, block);
        const std::uint64_t begin = block * kMcBlockSize;
        const std::uint64_t end = std::min(samples, begin + kMcBlockSize);
        std::uint64_t hits = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
            bool localized = true;
            for (std::uint64_t j = 0; j < particles; ++j) {
                if (rng.below(static_cast<std::uint64_t>(lambda)) != 0) {
                    localized = false;
                    break;
                }
            }
            hits += localized ? 1 : 0;
        }
        return hits;
    };

    std::vector<std::uint64_t> shard_hits(workers, 0);
    if (workers == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) shard_hits[0] += run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t b = w; b < blocks; b += workers) shard_hits[w] += run_block(b);
            });
        }
        for (auto& t : pool) t.join();
    }

    LocalizationEstimate est;
    est.samples = samples;
    for (auto h : shard_hits) est.hits += h;
    est.p_hat = static_cast<double>(est.hits) / static_cast<double>(samples);
    est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
    est.expected_hits = n == 0 ? static_cast<double>(samples)
                               : static_cast<double>(samples) * std::exp(localization_log_probability(lambda, double(n)));
    est.low_hit_warning = est.expected_hits < 10.0;
    return est;
}

double stirling_gap(int lambda, std::uint64_t n) {
    if (lambda < 2) throw std::domain_error("stirling_gap: lambda must be >= 2");
    if (n < 1) throw std::domain_error("stirling_gap: N must be >= 1");
    const double exact = lambda * log_factorial(n) - log_factorial(static_cast<std::uint64_t>(lambda) * n);
    const double scaling = localization_log_probability(lambda, static_cast<double>(n));
    return std::abs(exact - scaling);
}

} // namespace infotherm
