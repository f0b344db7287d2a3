/// @file demon_sim.hpp
/// @brief Event-driven two-chamber ideal gas with a demon-operated gate, and
///        a single-molecule Szilard engine.
///
/// The gas is 2D and non-interacting, so every trajectory is a sequence of
/// straight flights between specular reflections. The next event of each
/// particle is solved analytically. The gate is massless: it is set open or
/// closed at the instant a particle reaches the aperture and never exchanges
/// momentum, so the demon does zero work.
///
/// Per-chamber entropy uses the 2D Sackur-Tetrode form
/// S = N k [ln(A / (N Lambda^2)) + 2] with the chamber's kinetic temperature.

#pragma once

#include "infotherm/core_thermo.hpp"

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace infotherm {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

enum class Side { Left, Right };

const char* to_string(Side side);

struct Box {
    double width = 1.0;
    double height = 1.0;
};

struct Gate {
    double center = 0.5;
    double half_width = 0.1;
    bool open = false;
};

struct KineticParticle {
    Vec2 position;
    Vec2 velocity;
    Side side = Side::Left;
};

struct KineticGas {
    Box box;
    double partition_x = 0.5;
    Gate gate;
    double mass = 1.0;
    double time = 0.0;
    std::vector<KineticParticle> particles;

    std::size_t count(Side side) const;
    double kinetic_energy() const;
    double kinetic_energy(Side side) const;
    double chamber_area(Side side) const;
};

struct AlwaysOpen {};
struct AlwaysClosed {};
enum class Direction { ToRight, ToLeft };
/// One-way valve: passes particles travelling in `direction`.
struct PressureDemon {
    Direction direction = Direction::ToRight;
};
/// Fast particles (speed > threshold) go right, slow ones go left.
struct TemperatureDemon {
    double speed_threshold = 1.0;
};

using GatePolicy = std::variant<AlwaysOpen, AlwaysClosed, PressureDemon, TemperatureDemon>;

std::string policy_name(const GatePolicy& policy);

/// Whether the policy measures the approaching particle (one bit per
/// measurement). Fixed gates do not measure.
bool policy_measures(const GatePolicy& policy);

enum class EventKind { Wall, GatePass, GateReject };

const char* to_string(EventKind kind);

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::Wall;
    std::size_t particle = 0;
    Side side_before = Side::Left; ///< chamber of the particle before the event
    bool bit_recorded = false;
    std::size_t n_left = 0; ///< chamber counts after the event
    std::size_t n_right = 0;
};

class StallError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws std::domain_error if a particle lies outside its chamber or the
/// geometry is inconsistent.
void validate(const KineticGas& gas);

/// Advances `gas` in place to its earliest wall reflection or partition-plane
/// crossing and applies it. Throws StallError when no particle moves.
Event advance_in_place(KineticGas& gas, const GatePolicy& policy);

/// Value form of advance_in_place.
std::pair<Event, KineticGas> advance_to_next_event(KineticGas gas, const GatePolicy& policy);

struct DemonLedger {
    double time = 0.0;
    std::size_t n_left = 0;
    std::size_t n_right = 0;
    double kinetic_energy = 0.0;
    std::uint64_t bits_recorded = 0;
    std::uint64_t bits_erased = 0;
    std::uint64_t memory_occupancy = 0;
    std::uint64_t gate_passes = 0;
    double landauer_heat = 0.0;    ///< bits_erased k T0 ln 2
    double dS_sides = 0.0;         ///< chamber entropy change since t = 0
    double dS_th_part = 0.0;       ///< heat exchanged / T: zero for the isolated box
    double material_term = 0.0;    ///< -sum (mu_j / T) dN_j over gate transfers
    double dS_st = 0.0;      ///< dS_th_part + material_term
    double brillouin_balance = 0.0; ///< dS_sides + bits_recorded k ln 2
};

struct DemonConfig {
    std::size_t n_particles = 200;
    Box box;
    double partition_x = 0.5;
    double gate_half_width = 0.1;
    double temperature = 1.0; ///< initial Maxwell-Boltzmann temperature, also the bath for erasure
    double mass = 1.0;
    GatePolicy policy = AlwaysOpen{};
    double duration = 50.0;
    double sample_interval = 0.5;
    /// Memory size in bits; the oldest bit is erased when a new one arrives
    /// at a full memory. 0 means unbounded.
    std::uint64_t memory_capacity = 64;
    bool record_wall_events = true;
    std::uint64_t seed = 0;
    Constants constants = Constants::reduced();
};

struct DemonTrace {
    DemonConfig config;
    std::vector<Event> events;
    std::vector<DemonLedger> ledger_series;
    double initial_energy = 0.0;
};

/// 2D Sackur-Tetrode entropy of one chamber; 0 when empty.
double chamber_entropy(std::size_t n, double area, double kinetic_energy, double mass, const Constants& c);

/// Uniform positions and Maxwell-Boltzmann velocities drawn from `seed`.
KineticGas make_kinetic_gas(const DemonConfig& config);

/// Runs to `duration`, sampling the ledger every `sample_interval`.
DemonTrace run_demon(const DemonConfig& config);

struct AccountingRow {
    double time = 0.0;
    // Szilard: measurement entropy against the chamber entropy change.
    double szilard_measurement_entropy = 0.0;
    double szilard_net = 0.0;
    // Brillouin: Delta(Entropy) - Delta(Information).
    double brillouin_balance = 0.0;
    // Landauer-Bennett: erasure entropy against the chamber entropy change.
    double landauer_erasure_entropy = 0.0;
    double landauer_net = 0.0;
    // Statistical ledger with the material term from gate transfers.
    double ledger_dS_st = 0.0;
    double ledger_rhs = 0.0; ///< dq/T - (1/T) sum mu dN, recomputed from the event log
    bool generalized_holds = false;
    double dS_sides = 0.0;
};

struct AccountingReport {
    std::vector<AccountingRow> rows;
    double max_energy_drift = 0.0; ///< relative
    bool brillouin_nonnegative = true;
    bool generalized_all_hold = true;
};

/// Side-by-side accountings for every ledger sample. Descriptive only.
AccountingReport accounting_report(const DemonTrace& trace);

struct SzilardCycle {
    double work_extracted = 0.0;
    double heat_from_bath = 0.0;
    std::uint64_t bits_recorded = 0;
    std::uint64_t bits_erased = 0;
    std::uint64_t memory_occupancy = 0; ///< after the cycle
    double erasure_heat = 0.0;
    double szilard_net = 0.0;  ///< k ln 2 measurement entropy - W / T
    double landauer_net = 0.0; ///< (erasure heat - W) / T, entropy delivered to the bath
    double ledger_dS_th = 0.0;  ///< gas entropy gained by the expansion
    double ledger_material = 0.0; ///< localization by the measurement, k ln(1/2)
    double ledger_dS_st = 0.0;
    double ledger_rhs = 0.0;    ///< W/T + material
    bool generalized_holds = false;
};

/// One cycle: measure the side (1 bit), expand isothermally V/2 -> V in
/// `expansion_steps` piston moves, then optionally erase the bit.
SzilardCycle szilard_cycle(double temperature, int expansion_steps, const Constants& c, bool erase = true,
                           std::uint64_t memory_before = 0);

std::vector<SzilardCycle> run_szilard(double temperature, int expansion_steps, int cycles, bool erase,
                                      const Constants& c);

} // namespace infotherm
