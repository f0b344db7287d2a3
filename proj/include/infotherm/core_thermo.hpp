/// @file core_thermo.hpp
/// @brief Closed-form monoatomic ideal-gas thermodynamics.
///
/// Entropy is the Sackur-Tetrode form S = N k [ln(V / (N Lambda^3)) + 5/2],
/// which obeys the number-scaling law
///
///     S(lambda N, V, T) = lambda S(N, V, T) - lambda k N ln(lambda)
///
/// exactly. All functions are pure and safe to call concurrently.

#pragma once

#include <string>
#include <vector>

namespace infotherm {

enum class UnitMode { SI, Reduced };

/// Physical constants in the active unit system.
struct Constants {
    double boltzmann_k = 1.0;
    double planck_h = 1.0;
    UnitMode unit_mode = UnitMode::Reduced;

    /// k = h = 1.
    static Constants reduced() { return {}; }
    /// CODATA 2018 exact values (J/K, J s).
    static Constants si() { return {1.380649e-23, 6.62607015e-34, UnitMode::SI}; }
};

const char* to_string(UnitMode mode);

struct Species {
    std::string id;
    double mass = 1.0;
    std::string label;
};

/// Reduced-unit species whose thermal wavelength is exactly 1 at T = 1.
Species unit_wavelength_species(std::string id);

/// Macrostate (N, V, T) of one species. N is real-valued.
struct GasState {
    Species species;
    double n_particles = 0.0;
    double volume = 1.0;
    double temperature = 1.0;
};

/// Throws std::domain_error unless V > 0, T > 0, N >= 0 and mass > 0.
void validate(const GasState& state);

enum class PhaseLabel { Alpha, Beta, Gamma, Custom };

const char* to_string(PhaseLabel label);

/// A homogeneous region; every content shares one volume and temperature.
struct Phase {
    PhaseLabel label = PhaseLabel::Custom;
    std::string name; ///< unique within a process; the label text for alpha/beta/gamma
    std::vector<GasState> contents;

    double volume() const;
    double temperature() const;
    /// Particle count of one species, 0 when absent.
    double count(const std::string& species_id) const;
};

/// Builds a phase, checking that all contents agree on V and T. An empty
/// name defaults to the label text.
Phase make_phase(PhaseLabel label, std::vector<GasState> contents, std::string name = {});

double thermal_wavelength(const Species& species, double temperature, const Constants& c);

/// z = V / Lambda^3.
double single_particle_partition_function(const GasState& state, const Constants& c);

/// Sackur-Tetrode entropy; defined as 0 for an empty state.
double entropy(const GasState& state, const Constants& c);

double internal_energy(const GasState& state, const Constants& c);

double pressure(const GasState& state, const Constants& c);

/// Dalton's law: sum of the partial pressures.
double pressure(const Phase& phase, const Constants& c);

/// Gibbs' theorem: mixture entropy is the sum of pure-gas entropies at (V, T).
double entropy(const Phase& phase, const Constants& c);

/// mu = -k T ln(z / N).
double chemical_potential_statistical(const GasState& state, const Constants& c);

/// mu0(T) = k T ln(P0 Lambda^3 / (k T)), fixed so both potential forms agree.
double standard_chemical_potential(const Species& species, double temperature, double p0,
                                   const Constants& c);

/// mu = mu0(T) + k T ln(P / P0).
double chemical_potential_pressure_form(const GasState& state, double p0, const Constants& c);

/// Entropy change when lambda identical samples of N particles are combined
/// at fixed V and T: -lambda k N ln(lambda).
double scaled_entropy_delta(double n_particles, int lambda, const Constants& c);

} // namespace infotherm
