#include "infotherm/process_engine.hpp"

#include "infotherm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace infotherm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// One species inside a region: its count and the density that fixes its
// intensive state even when the region has zero extent.
struct Part {
    const Species* species;
    double count;
    double density;
};

struct Region {
    PhaseLabel label;
    std::string name;
    double volume;
    std::vector<Part> parts;
};

double potential_from_density(const Species& s, double density, double temperature, const Constants& c) {
    const double lambda = thermal_wavelength(s, temperature, c);
    return c.boltzmann_k * temperature * std::log(density * lambda * lambda * lambda);
}

Snapshot make_snapshot(double progress, const std::vector<Region>& regions, double temperature,
                       const Constants& c) {
    Snapshot snap;
    snap.progress = progress;
    for (const auto& r : regions) {
        double p = 0.0;
        for (const auto& part : r.parts) {
            p += part.density * c.boltzmann_k * temperature;
            snap.potentials.push_back(
                {r.name, part.species->id, potential_from_density(*part.species, part.density, temperature, c)});
        }
        snap.pressures.push_back({r.name, p});
        if (r.volume > 0.0) {
            std::vector<GasState> contents;
            for (const auto& part : r.parts) {
                contents.push_back({*part.species, part.count, r.volume, temperature});
            }
            snap.phases.push_back(make_phase(r.label, std::move(contents), r.name));
        }
    }
    return snap;
}

// Quasi-static driver. `layout(xi)` returns the regions at progress xi (same
// order and parts at every xi); `heat(xi0, xi1)` is the reversible heat
// absorbed over the step.
template <class Layout, class Heat>
ProcessTrace run_quasi_static(ProcessKind kind, int steps, const ProcessOptions& options, Layout layout,
                              Heat heat) {
    validate(kind);
    if (steps < 2) throw std::domain_error("process: steps must be >= 2");
    const Constants& c = options.constants;
    const double temperature = kind_temperature(kind);

    ProcessTrace trace{std::move(kind), c, options.distinguishable, {}, {}};
    trace.snapshots.reserve(static_cast<std::size_t>(steps) + 1);

    auto regions = layout(0.0);
    trace.snapshots.push_back(make_snapshot(0.0, regions, temperature, c));

    double dS_th = 0.0;
    double material = 0.0;
    double q_total = 0.0;
    for (int i = 1; i <= steps; ++i) {
        const double xi0 = static_cast<double>(i - 1) / steps;
        const double xi1 = i == steps ? 1.0 : static_cast<double>(i) / steps;
        auto next = layout(xi1);

        double sum_mu_dn = 0.0;
        for (std::size_t r = 0; r < regions.size(); ++r) {
            for (std::size_t k = 0; k < regions[r].parts.size(); ++k) {
                const auto& before = regions[r].parts[k];
                const auto& after = next[r].parts[k];
                const double mu0 = potential_from_density(*before.species, before.density, temperature, c);
                const double mu1 = potential_from_density(*after.species, after.density, temperature, c);
                sum_mu_dn += 0.5 * (mu0 + mu1) * (after.count - before.count);
            }
        }
        const double q = heat(xi0, xi1);
        q_total += q;
        dS_th += q / temperature;
        if (!options.distinguishable) material += -sum_mu_dn / temperature;

        auto snap = make_snapshot(xi1, next, temperature, c);
        snap.heat = q_total;
        snap.ledger = EntropyLedger::from_parts(dS_th, material, c);
        trace.snapshots.push_back(std::move(snap));
        regions = std::move(next);
    }
    trace.final_ledger = trace.snapshots.back().ledger;
    return trace;
}

double no_heat(double, double) { return 0.0; }

} // namespace

std::string kind_name(const ProcessKind& kind) {
    return std::visit(Overloaded{
                          [](const MixDistinct&) { return std::string("mix"); },
                          [](const PartitionIdentical&) { return std::string("partition"); },
                          [](const RelocateIGM&) { return std::string("relocate"); },
                          [](const IsothermalExpansion&) { return std::string("expand"); },
                      },
                      kind);
}

double kind_temperature(const ProcessKind& kind) {
    return std::visit([](const auto& k) { return k.temperature; }, kind);
}

void validate(const ProcessKind& kind) {
    const auto positive = [](double x, const char* what) {
        if (!(x > 0.0)) throw std::domain_error(std::string(what) + " must be positive");
    };
    std::visit(Overloaded{
                   [&](const MixDistinct& k) {
                       positive(k.n_a, "N_A");
                       positive(k.n_b, "N_B");
                       positive(k.volume, "volume");
                       positive(k.temperature, "temperature");
                   },
                   [&](const PartitionIdentical& k) {
                       positive(k.n_total, "N_total");
                       if (std::floor(k.n_total) != k.n_total || std::fmod(k.n_total, 2.0) != 0.0) {
                           throw std::domain_error("N_total must be an even integer");
                       }
                       positive(k.volume, "volume");
                       positive(k.temperature, "temperature");
                   },
                   [&](const RelocateIGM& k) {
                       if (k.lambda < 2) throw std::domain_error("lambda must be >= 2");
                       positive(k.n_a, "N_A");
                       positive(k.volume, "volume");
                       positive(k.temperature, "temperature");
                   },
                   [&](const IsothermalExpansion& k) {
                       positive(k.n, "N");
                       positive(k.v1, "V1");
                       positive(k.temperature, "temperature");
                       if (!(k.v2 > k.v1)) throw std::domain_error("expansion requires V2 > V1");
                   },
               },
               kind);
}

EntropyLedger EntropyLedger::from_parts(double dS_th, double material_term, const Constants& c) {
    EntropyLedger l;
    l.dS_th = dS_th;
    l.material_term = material_term;
    l.dS_st = dS_th + material_term;
    l.info_delta_bits = -l.dS_st / (c.boltzmann_k * std::numbers::ln2);
    return l;
}

EntropyLedger EntropyLedger::plus(const EntropyLedger& other, const Constants& c) const {
    return from_parts(dS_th + other.dS_th, material_term + other.material_term, c);
}

double Snapshot::pressure_of(const std::string& phase) const {
    for (const auto& p : pressures) {
        if (p.phase == phase) return p.value;
    }
    throw std::out_of_range("snapshot: no phase named " + phase);
}

double Snapshot::potential_of(const std::string& phase, const std::string& species_id) const {
    for (const auto& p : potentials) {
        if (p.phase == phase && p.species_id == species_id) return p.mu;
    }
    throw std::out_of_range("snapshot: no potential for " + species_id + " in " + phase);
}

double Snapshot::count_of(const std::string& phase, const std::string& species_id) const {
    for (const auto& p : phases) {
        if (p.name == phase) return p.count(species_id);
    }
    return 0.0;
}

ProcessTrace run_mix_distinct(double n_a, double n_b, double volume, double temperature, int steps,
                              const ProcessOptions& options) {
    const Species* a = &options.species_a;
    const Species* b = &options.species_b;
    if (a->id == b->id) throw std::domain_error("mix: species ids must differ");
    const double rho_a = n_a / volume;
    const double rho_b = n_b / volume;
    auto layout = [=](double xi) {
        return std::vector<Region>{
            {PhaseLabel::Alpha, "alpha", xi * volume, {{a, xi * n_a, rho_a}}},
            {PhaseLabel::Beta, "beta", (1.0 - xi) * volume, {{a, (1.0 - xi) * n_a, rho_a}, {b, (1.0 - xi) * n_b, rho_b}}},
            {PhaseLabel::Gamma, "gamma", xi * volume, {{b, xi * n_b, rho_b}}},
        };
    };
    return run_quasi_static(MixDistinct{n_a, n_b, volume, temperature}, steps, options, layout, no_heat);
}

ProcessTrace run_partition_identical(double n_total, double volume, double temperature, int steps,
                                     const ProcessOptions& options) {
    const Species* a = &options.species_a;
    const double n_a = 0.5 * n_total;
    const double rho_side = n_a / volume;
    const double rho_mid = n_total / volume;
    auto layout = [=](double xi) {
        return std::vector<Region>{
            {PhaseLabel::Alpha, "alpha", xi * volume, {{a, xi * n_a, rho_side}}},
            {PhaseLabel::Beta, "beta", (1.0 - xi) * volume, {{a, (1.0 - xi) * n_total, rho_mid}}},
            {PhaseLabel::Gamma, "gamma", xi * volume, {{a, xi * n_a, rho_side}}},
        };
    };
    return run_quasi_static(PartitionIdentical{n_total, volume, temperature}, steps, options, layout, no_heat);
}

ProcessTrace run_relocate_igm(int lambda, double n_a, double volume, double temperature, int steps,
                              const ProcessOptions& options) {
    const Species* a = &options.species_a;
    const double rho_source = n_a / volume;
    const double rho_target = lambda * n_a / volume;
    auto layout = [=](double xi) {
        std::vector<Region> regions;
        for (int s = 0; s < lambda; ++s) {
            PhaseLabel label = PhaseLabel::Custom;
            std::string name = "source" + std::to_string(s + 1);
            if (s == 0) {
                label = PhaseLabel::Alpha;
                name = "alpha";
            } else if (s == 1) {
                label = PhaseLabel::Gamma;
                name = "gamma";
            }
            regions.push_back({label, std::move(name), (1.0 - xi) * volume, {{a, (1.0 - xi) * n_a, rho_source}}});
        }
        regions.push_back({PhaseLabel::Beta, "beta", xi * volume, {{a, xi * lambda * n_a, rho_target}}});
        return regions;
    };
    return run_quasi_static(RelocateIGM{lambda, n_a, volume, temperature}, steps, options, layout, no_heat);
}

ProcessTrace trace_isothermal_expansion(double n, double v1, double v2, double temperature, int steps,
                                        const ProcessOptions& options) {
    const Species* a = &options.species_a;
    const double k = options.constants.boltzmann_k;
    const auto volume_at = [=](double xi) { return xi == 1.0 ? v2 : v1 + xi * (v2 - v1); };
    auto layout = [=](double xi) {
        const double v = volume_at(xi);
        return std::vector<Region>{{PhaseLabel::Custom, "gas", v, {{a, n, n / v}}}};
    };
    auto heat = [=](double xi0, double xi1) {
        return n * k * temperature * std::log(volume_at(xi1) / volume_at(xi0));
    };
    return run_quasi_static(IsothermalExpansion{n, v1, v2, temperature}, steps, options, layout, heat);
}

EntropyLedger run_isothermal_expansion(double n, double v1, double v2, double temperature, const Constants& c) {
    validate(ProcessKind{IsothermalExpansion{n, v1, v2, temperature}});
    const double q_rev = n * c.boltzmann_k * temperature * std::log(v2 / v1);
    return EntropyLedger::from_parts(q_rev / temperature, 0.0, c);
}

double material_term_quadrature(double n_a, int intervals, double temperature, const Constants& c, int points) {
    if (intervals < 16) throw std::domain_error("material_term_quadrature: intervals must be >= 16");
    if (!(n_a > 0.0)) throw std::domain_error("material_term_quadrature: N_A must be positive");
    if (!(temperature > 0.0)) throw std::domain_error("material_term_quadrature: temperature must be positive");
    const double total = 2.0 * n_a;
    const auto integrand = [total](double n_left) { return std::log(n_left / (total - n_left)); };
    const double integral = quadrature::integrate_open(integrand, n_a, total, intervals, points);
    return c.boltzmann_k * temperature * integral;
}

CompositeResult gibbs_mixing_composite(double n_a, double volume, double temperature, int steps,
                                       const ProcessOptions& options) {
    const Constants& c = options.constants;
    const auto expansion = trace_isothermal_expansion(n_a, volume, 2.0 * volume, temperature, steps, options);
    CompositeResult result;
    result.distinguishable = options.distinguishable;
    result.process_a = expansion.final_ledger.plus(expansion.final_ledger, c);
    result.process_b = run_relocate_igm(2, n_a, 2.0 * volume, temperature, steps, options).final_ledger;
    result.total = result.process_a.plus(result.process_b, c);
    return result;
}

SecondLawVerdict check_generalized_second_law(const ProcessTrace& trace) {
    const auto& snaps = trace.snapshots;
    if (snaps.size() < 2) throw std::domain_error("second-law check: trace needs at least 2 snapshots");
    if (snaps.front().progress != 0.0 || snaps.back().progress != 1.0) {
        throw std::domain_error("second-law check: progress must run from 0 to 1");
    }
    const double temperature = kind_temperature(trace.kind);
    if (!(temperature > 0.0)) throw std::domain_error("second-law check: non-positive temperature");

    SecondLawVerdict verdict;
    for (std::size_t i = 0; i + 1 < snaps.size(); ++i) {
        const Snapshot& s0 = snaps[i];
        const Snapshot& s1 = snaps[i + 1];
        if (s1.progress < s0.progress) throw std::domain_error("second-law check: progress decreases");

        // (phase, species) -> potentials at both ends
        std::map<std::pair<std::string, std::string>, std::pair<double, double>> mus;
        for (const auto& p : s0.potentials) mus[{p.phase, p.species_id}] = {p.mu, p.mu};
        for (const auto& p : s1.potentials) {
            auto [it, inserted] = mus.try_emplace({p.phase, p.species_id}, p.mu, p.mu);
            if (!inserted) it->second.second = p.mu;
        }
        double sum_mu_dn = 0.0;
        for (const auto& [key, mu] : mus) {
            const double dn = s1.count_of(key.first, key.second) - s0.count_of(key.first, key.second);
            sum_mu_dn += 0.5 * (mu.first + mu.second) * dn;
        }

        StepVerdict v;
        v.step = i;
        v.dS_st = s1.ledger.dS_st - s0.ledger.dS_st;
        v.dS_th = s1.ledger.dS_th - s0.ledger.dS_th;
        v.heat_over_t = (s1.heat - s0.heat) / temperature;
        v.sum_mu_dn = sum_mu_dn;
        v.generalized_rhs = v.heat_over_t - sum_mu_dn / temperature;

        const double scale = std::max({std::abs(v.dS_st), std::abs(v.generalized_rhs), std::abs(v.heat_over_t),
                                       std::abs(sum_mu_dn / temperature)});
        const double tol = 1e-10 * scale;
        v.generalized_holds = v.dS_st >= v.generalized_rhs - tol;
        v.generalized_equality = std::abs(v.dS_st - v.generalized_rhs) <= tol;
        v.classical_holds = v.dS_th >= v.heat_over_t - tol;
        v.isolated_nonnegative = v.dS_st >= -tol;

        if (!v.generalized_holds) verdict.generalized_violations.push_back(i);
        if (!v.classical_holds) verdict.classical_violations.push_back(i);
        verdict.cumulative_rhs += v.generalized_rhs;
        verdict.cumulative_dS_st += v.dS_st;
        verdict.steps.push_back(v);
    }
    return verdict;
}

} // namespace infotherm
