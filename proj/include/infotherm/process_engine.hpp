/// @file process_engine.hpp
/// @brief Quasi-static steppers for mixing, partitioning, relocation and
///        expansion of ideal gases, with a two-part entropy ledger.
///
/// Every process is parameterized by piston progress xi in [0, 1]. Particle
/// transfer is linear in xi and each phase keeps a constant density, so the
/// chemical potential of every (phase, species) pair is constant along a
/// trace and the per-step material term is evaluated exactly.
///
/// The ledger splits the statistical entropy change into
///
///     dS_st = dS_th + material_term,   material_term = -(1/T) sum_j mu_j dN_j
///
/// where dS_th accumulates dq_rev / T.

#pragma once

#include "infotherm/core_thermo.hpp"

#include <string>
#include <variant>
#include <vector>

namespace infotherm {

struct MixDistinct {
    double n_a = 0.0;
    double n_b = 0.0;
    double volume = 1.0;
    double temperature = 1.0;
};

struct PartitionIdentical {
    double n_total = 0.0;
    double volume = 1.0;
    double temperature = 1.0;
};

struct RelocateIGM {
    int lambda = 2;
    double n_a = 0.0;
    double volume = 1.0;
    double temperature = 1.0;
};

struct IsothermalExpansion {
    double n = 0.0;
    double v1 = 1.0;
    double v2 = 2.0;
    double temperature = 1.0;
};

using ProcessKind = std::variant<MixDistinct, PartitionIdentical, RelocateIGM, IsothermalExpansion>;

std::string kind_name(const ProcessKind& kind);
double kind_temperature(const ProcessKind& kind);

/// Throws std::domain_error when the kind's parameters are out of range.
void validate(const ProcessKind& kind);

struct EntropyLedger {
    double dS_th = 0.0;
    double material_term = 0.0;
    double dS_st = 0.0;
    double info_delta_bits = 0.0;

    /// Closes the ledger: dS_st = dS_th + material, bits = -dS_st / (k ln 2).
    static EntropyLedger from_parts(double dS_th, double material_term, const Constants& c);

    EntropyLedger plus(const EntropyLedger& other, const Constants& c) const;
};

struct PhasePressure {
    std::string phase;
    double value;
};

struct PhasePotential {
    std::string phase;
    std::string species_id;
    double mu;
};

/// One quasi-static state. `phases` holds regions of positive volume only;
/// `pressures` and `potentials` also cover phases of zero extent at the
/// trace endpoints, using the density that phase has along the trace.
struct Snapshot {
    double progress = 0.0;
    std::vector<Phase> phases;
    std::vector<PhasePressure> pressures;
    std::vector<PhasePotential> potentials;
    double heat = 0.0; ///< cumulative heat absorbed from the bath
    EntropyLedger ledger;

    /// Throws std::out_of_range for an unknown phase name.
    double pressure_of(const std::string& phase) const;
    double potential_of(const std::string& phase, const std::string& species_id) const;
    /// Count of a species in a phase; 0 for a phase of zero extent.
    double count_of(const std::string& phase, const std::string& species_id) const;
};

struct ProcessTrace {
    ProcessKind kind;
    Constants constants;
    bool distinguishable = false;
    std::vector<Snapshot> snapshots;
    EntropyLedger final_ledger;
};

struct ProcessOptions {
    Constants constants = Constants::reduced();
    Species species_a = unit_wavelength_species("A");
    Species species_b = unit_wavelength_species("B");
    /// Diagnostic mode: ignore indistinguishability by forcing the material
    /// term to zero. Exhibits the Gibbs paradox; not a physical ledger.
    bool distinguishable = false;
};

/// Separation of a binary mixture through semi-permeable membranes
/// (alpha: A only, beta: mixture, gamma: B only). Reversed, it is mixing.
ProcessTrace run_mix_distinct(double n_a, double n_b, double volume, double temperature, int steps,
                              const ProcessOptions& options = {});

/// Partition of 2 N_A identical particles in V into two phases of N_A in V.
ProcessTrace run_partition_identical(double n_total, double volume, double temperature, int steps,
                                     const ProcessOptions& options = {});

/// Combination of lambda samples (N_A, V, T) into one (lambda N_A, V, T).
ProcessTrace run_relocate_igm(int lambda, double n_a, double volume, double temperature, int steps,
                              const ProcessOptions& options = {});

/// Reversible isothermal expansion, traced with volume linear in progress.
ProcessTrace trace_isothermal_expansion(double n, double v1, double v2, double temperature, int steps,
                                        const ProcessOptions& options = {});

/// Closed-form ledger of a reversible isothermal expansion.
EntropyLedger run_isothermal_expansion(double n, double v1, double v2, double temperature,
                                       const Constants& c = Constants::reduced());

/// k T * integral_{N_A}^{2 N_A} ln(N_L / (2 N_A - N_L)) dN_L by a composite
/// open Gauss-Legendre rule. The integrand diverges logarithmically at the
/// upper limit, which an open rule never samples.
double material_term_quadrature(double n_a, int intervals, double temperature,
                                const Constants& c = Constants::reduced(), int points = 1);

struct CompositeResult {
    EntropyLedger process_a; ///< two isothermal expansions V -> 2V
    EntropyLedger process_b; ///< relocation of both samples into one 2V volume
    EntropyLedger total;
    bool distinguishable = false;
};

CompositeResult gibbs_mixing_composite(double n_a, double volume, double temperature, int steps,
                                       const ProcessOptions& options = {});

struct StepVerdict {
    std::size_t step = 0; ///< transition snapshots[step] -> snapshots[step + 1]
    double dS_st = 0.0;
    double dS_th = 0.0;
    double heat_over_t = 0.0;
    double sum_mu_dn = 0.0;
    double generalized_rhs = 0.0; ///< dq/T - (1/T) sum mu dN
    bool generalized_holds = false;
    bool generalized_equality = false;
    bool classical_holds = false; ///< dS_th >= dq/T
    bool isolated_nonnegative = false; ///< dS_st >= 0
};

struct SecondLawVerdict {
    std::vector<StepVerdict> steps;
    std::vector<std::size_t> generalized_violations;
    std::vector<std::size_t> classical_violations;
    double cumulative_rhs = 0.0;
    double cumulative_dS_st = 0.0;

    bool generalized_all_hold() const { return generalized_violations.empty(); }
    bool classical_all_hold() const { return classical_violations.empty(); }
};

/// Evaluates dS_st >= dq/T - (1/T) sum_j mu_j dN_j per step, recomputing the
/// material sum from the recorded potentials and phase counts.
SecondLawVerdict check_generalized_second_law(const ProcessTrace& trace);

} // namespace infotherm
