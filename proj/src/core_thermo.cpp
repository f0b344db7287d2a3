#include "infotherm/core_thermo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace infotherm {

const char* to_string(UnitMode mode) {
    return mode == UnitMode::SI ? "si" : "reduced";
}

const char* to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::Alpha: return "alpha";
        case PhaseLabel::Beta: return "beta";
        case PhaseLabel::Gamma: return "gamma";
        case PhaseLabel::Custom: return "custom";
    }
    return "custom";
}

Species unit_wavelength_species(std::string id) {
    Species s;
    s.label = id;
    s.id = std::move(id);
    s.mass = 1.0 / (2.0 * std::numbers::pi);
    return s;
}

void validate(const GasState& state) {
    if (!(state.volume > 0.0)) throw std::domain_error("gas state: volume must be positive");
    if (!(state.temperature > 0.0)) throw std::domain_error("gas state: temperature must be positive");
    if (!(state.n_particles >= 0.0)) throw std::domain_error("gas state: particle count must be non-negative");
    if (!(state.species.mass > 0.0)) throw std::domain_error("gas state: species mass must be positive");
}

double Phase::volume() const {
    return contents.empty() ? 0.0 : contents.front().volume;
}

double Phase::temperature() const {
    return contents.empty() ? 0.0 : contents.front().temperature;
}

double Phase::count(const std::string& species_id) const {
    double n = 0.0;
    for (const auto& g : contents) {
        if (g.species.id == species_id) n += g.n_particles;
    }
    return n;
}

Phase make_phase(PhaseLabel label, std::vector<GasState> contents, std::string name) {
    if (contents.empty()) throw std::domain_error("phase: no contents");
    for (const auto& g : contents) {
        validate(g);
        if (g.volume != contents.front().volume || g.temperature != contents.front().temperature) {
            throw std::domain_error("phase: contents disagree on volume or temperature");
        }
    }
    if (name.empty()) name = to_string(label);
    return Phase{label, std::move(name), std::move(contents)};
}

double thermal_wavelength(const Species& species, double temperature, const Constants& c) {
    if (!(temperature > 0.0)) throw std::domain_error("thermal_wavelength: temperature must be positive");
    if (!(species.mass > 0.0)) throw std::domain_error("thermal_wavelength: mass must be positive");
    return c.planck_h / std::sqrt(2.0 * std::numbers::pi * species.mass * c.boltzmann_k * temperature);
}

double single_particle_partition_function(const GasState& state, const Constants& c) {
    validate(state);
    const double lambda = thermal_wavelength(state.species, state.temperature, c);
    return state.volume / (lambda * lambda * lambda);
}

double entropy(const GasState& state, const Constants& c) {
    validate(state);
    if (state.n_particles == 0.0) return 0.0;
    const double z = single_particle_partition_function(state, c);
    return state.n_particles * c.boltzmann_k * (std::log(z / state.n_particles) + 2.5);
}

double internal_energy(const GasState& state, const Constants& c) {
    validate(state);
    return 1.5 * state.n_particles * c.boltzmann_k * state.temperature;
}

double pressure(const GasState& state, const Constants& c) {
    validate(state);
    return state.n_particles * c.boltzmann_k * state.temperature / state.volume;
}

double pressure(const Phase& phase, const Constants& c) {
    double p = 0.0;
    for (const auto& g : phase.contents) p += pressure(g, c);
    return p;
}

double entropy(const Phase& phase, const Constants& c) {
    double s = 0.0;
    for (const auto& g : phase.contents) s += entropy(g, c);
    return s;
}

double chemical_potential_statistical(const GasState& state, const Constants& c) {
    validate(state);
    if (state.n_particles == 0.0) {
        throw std::domain_error("chemical potential diverges for an empty state");
    }
    const double z = single_particle_partition_function(state, c);
    return -c.boltzmann_k * state.temperature * std::log(z / state.n_particles);
}

double standard_chemical_potential(const Species& species, double temperature, double p0,
                                   const Constants& c) {
    if (!(p0 > 0.0)) throw std::domain_error("standard pressure must be positive");
    const double lambda = thermal_wavelength(species, temperature, c);
    const double kt = c.boltzmann_k * temperature;
    return kt * std::log(p0 * lambda * lambda * lambda / kt);
}

double chemical_potential_pressure_form(const GasState& state, double p0, const Constants& c) {
    validate(state);
    if (!(p0 > 0.0)) throw std::domain_error("standard pressure must be positive");
    if (state.n_particles == 0.0) {
        throw std::domain_error("chemical potential diverges for an empty state");
    }
    const double mu0 = standard_chemical_potential(state.species, state.temperature, p0, c);
    return mu0 + c.boltzmann_k * state.temperature * std::log(pressure(state, c) / p0);
}

double scaled_entropy_delta(double n_particles, int lambda, const Constants& c) {
    if (lambda < 1) throw std::domain_error("scaled_entropy_delta: lambda must be >= 1");
    if (!(n_particles > 0.0)) throw std::domain_error("scaled_entropy_delta: N must be positive");
    return c.boltzmann_k * (-(lambda * n_particles) * std::log(static_cast<double>(lambda)));
}

} // namespace infotherm
