#include "infotherm/demon_sim.hpp"

#include "infotherm/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace infotherm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Axis { X, Y };

struct NextEvent {
    double dt = kInf;
    std::size_t index = 0;
    Axis axis = Axis::X;
};

double chamber_min_x(const KineticGas& gas, Side side) { return side == Side::Left ? 0.0 : gas.partition_x; }
double chamber_max_x(const KineticGas& gas, Side side) { return side == Side::Left ? gas.partition_x : gas.box.width; }

double time_to(double from, double to, double v) {
    if (v == 0.0) return kInf;
    return std::max(0.0, (to - from) / v);
}

NextEvent find_next_event(const KineticGas& gas) {
    NextEvent best;
    for (std::size_t i = 0; i < gas.particles.size(); ++i) {
        const auto& p = gas.particles[i];
        const double x_target = p.velocity.x > 0.0 ? chamber_max_x(gas, p.side) : chamber_min_x(gas, p.side);
        const double y_target = p.velocity.y > 0.0 ? gas.box.height : 0.0;
        const double tx = time_to(p.position.x, x_target, p.velocity.x);
        const double ty = time_to(p.position.y, y_target, p.velocity.y);
        if (tx < best.dt) best = {tx, i, Axis::X};
        if (ty < best.dt) best = {ty, i, Axis::Y};
    }
    return best;
}

bool decide(const GatePolicy& policy, const KineticParticle& p) {
    return std::visit(
        [&](const auto& pol) -> bool {
            using T = std::decay_t<decltype(pol)>;
            if constexpr (std::is_same_v<T, AlwaysOpen>) {
                return true;
            } else if constexpr (std::is_same_v<T, AlwaysClosed>) {
                return false;
            } else if constexpr (std::is_same_v<T, PressureDemon>) {
                return pol.direction == Direction::ToRight ? p.side == Side::Left : p.side == Side::Right;
            } else {
                const double speed = std::hypot(p.velocity.x, p.velocity.y);
                return p.side == Side::Left ? speed > pol.speed_threshold : speed <= pol.speed_threshold;
            }
        },
        policy);
}

// Single-particle partition function of a chamber at the bath temperature.
double chamber_z(double area, double mass, double temperature, const Constants& c) {
    Species s{"gas", mass, "gas"};
    const double lambda = thermal_wavelength(s, temperature, c);
    return area / (lambda * lambda);
}

// -(1/T) sum_j mu_j dN_j for one particle moved between chambers, with the
// exact discrete potentials of Boltzmann counting (removal at N_s, insertion
// at N_d + 1).
double transfer_material(std::size_t n_source_before, std::size_t n_dest_before, double z_source, double z_dest,
                         const Constants& c) {
    return c.boltzmann_k * (std::log(z_dest / static_cast<double>(n_dest_before + 1)) -
                            std::log(z_source / static_cast<double>(n_source_before)));
}

} // namespace

const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Wall: return "wall";
        case EventKind::GatePass: return "gate-pass";
        case EventKind::GateReject: return "gate-reject";
    }
    return "wall";
}

std::string policy_name(const GatePolicy& policy) {
    return std::visit(
        [](const auto& pol) -> std::string {
            using T = std::decay_t<decltype(pol)>;
            if constexpr (std::is_same_v<T, AlwaysOpen>) return "always_open";
            else if constexpr (std::is_same_v<T, AlwaysClosed>) return "always_closed";
            else if constexpr (std::is_same_v<T, PressureDemon>) return "pressure_demon";
            else return "temperature_demon";
        },
        policy);
}

bool policy_measures(const GatePolicy& policy) {
    return std::holds_alternative<PressureDemon>(policy) || std::holds_alternative<TemperatureDemon>(policy);
}

std::size_t KineticGas::count(Side side) const {
    return static_cast<std::size_t>(
        std::count_if(particles.begin(), particles.end(), [side](const auto& p) { return p.side == side; }));
}

double KineticGas::kinetic_energy() const {
    double e = 0.0;
    for (const auto& p : particles) e += 0.5 * mass * (p.velocity.x * p.velocity.x + p.velocity.y * p.velocity.y);
    return e;
}

double KineticGas::kinetic_energy(Side side) const {
    double e = 0.0;
    for (const auto& p : particles) {
        if (p.side == side) e += 0.5 * mass * (p.velocity.x * p.velocity.x + p.velocity.y * p.velocity.y);
    }
    return e;
}

double KineticGas::chamber_area(Side side) const {
    return (chamber_max_x(*this, side) - chamber_min_x(*this, side)) * box.height;
}

void validate(const KineticGas& gas) {
    if (!(gas.box.width > 0.0 && gas.box.height > 0.0)) throw std::domain_error("kinetic gas: box must be positive");
    if (!(gas.partition_x > 0.0 && gas.partition_x < gas.box.width)) {
        throw std::domain_error("kinetic gas: partition must lie inside the box");
    }
    if (!(gas.gate.half_width >= 0.0)) throw std::domain_error("kinetic gas: negative gate half-width");
    if (!(gas.mass > 0.0)) throw std::domain_error("kinetic gas: mass must be positive");
    for (const auto& p : gas.particles) {
        if (p.position.x < chamber_min_x(gas, p.side) || p.position.x > chamber_max_x(gas, p.side) ||
            p.position.y < 0.0 || p.position.y > gas.box.height) {
            throw std::domain_error("kinetic gas: particle outside its chamber");
        }
    }
}

Event advance_in_place(KineticGas& gas, const GatePolicy& policy) {
    const NextEvent next = find_next_event(gas);
    if (next.dt == kInf) throw StallError("kinetic gas: no particle has a pending event");

    gas.time += next.dt;
    for (auto& p : gas.particles) {
        p.position.x = std::clamp(p.position.x + p.velocity.x * next.dt, chamber_min_x(gas, p.side),
                                  chamber_max_x(gas, p.side));
        p.position.y = std::clamp(p.position.y + p.velocity.y * next.dt, 0.0, gas.box.height);
    }

    auto& p = gas.particles[next.index];
    Event ev;
    ev.time = gas.time;
    ev.particle = next.index;
    ev.side_before = p.side;
    ev.kind = EventKind::Wall;

    if (next.axis == Axis::Y) {
        p.position.y = p.velocity.y > 0.0 ? gas.box.height : 0.0;
        p.velocity.y = -p.velocity.y;
    } else {
        const bool at_partition = (p.side == Side::Left) == (p.velocity.x > 0.0);
        p.position.x = p.velocity.x > 0.0 ? chamber_max_x(gas, p.side) : chamber_min_x(gas, p.side);
        const bool in_aperture = std::abs(p.position.y - gas.gate.center) <= gas.gate.half_width;
        if (at_partition && in_aperture) {
            const bool pass = decide(policy, p);
            ev.bit_recorded = policy_measures(policy);
            gas.gate.open = pass;
            if (pass) {
                p.side = p.side == Side::Left ? Side::Right : Side::Left;
                p.position.x = gas.partition_x;
                ev.kind = EventKind::GatePass;
            } else {
                p.velocity.x = -p.velocity.x;
                ev.kind = EventKind::GateReject;
            }
        } else {
            p.velocity.x = -p.velocity.x;
        }
    }
    ev.n_left = gas.count(Side::Left);
    ev.n_right = gas.particles.size() - ev.n_left;
    return ev;
}

std::pair<Event, KineticGas> advance_to_next_event(KineticGas gas, const GatePolicy& policy) {
    validate(gas);
    Event ev = advance_in_place(gas, policy);
    return {ev, std::move(gas)};
}

double chamber_entropy(std::size_t n, double area, double kinetic_energy, double mass, const Constants& c) {
    if (n == 0) return 0.0;
    const double nd = static_cast<double>(n);
    const double t_kin = kinetic_energy / (nd * c.boltzmann_k); // two degrees of freedom
    if (!(t_kin > 0.0)) throw std::domain_error("chamber entropy: non-positive kinetic temperature");
    Species s{"gas", mass, "gas"};
    const double lambda = thermal_wavelength(s, t_kin, c);
    return nd * c.boltzmann_k * (std::log(area / (nd * lambda * lambda)) + 2.0);
}

KineticGas make_kinetic_gas(const DemonConfig& config) {
    if (config.n_particles < 1) throw std::domain_error("demon: at least one particle required");
    if (!(config.temperature > 0.0)) throw std::domain_error("demon: temperature must be positive");
    KineticGas gas;
    gas.box = config.box;
    gas.partition_x = config.partition_x;
    gas.gate = {0.5 * config.box.height, config.gate_half_width, false};
    gas.mass = config.mass;

    Rng rng(config.seed);
    const double sigma = std::sqrt(config.constants.boltzmann_k * config.temperature / config.mass);
    gas.particles.reserve(config.n_particles);
    for (std::size_t i = 0; i < config.n_particles; ++i) {
        KineticParticle p;
        p.position.x = rng.uniform01() * config.box.width;
        p.position.y = rng.uniform01() * config.box.height;
        p.velocity.x = sigma * rng.normal();
        p.velocity.y = sigma * rng.normal();
        p.side = p.position.x < config.partition_x ? Side::Left : Side::Right;
        gas.particles.push_back(p);
    }
    validate(gas);
    return gas;
}

DemonTrace run_demon(const DemonConfig& config) {
    if (!(config.duration > 0.0)) throw std::domain_error("demon: duration must be positive");
    if (!(config.sample_interval > 0.0)) throw std::domain_error("demon: sample interval must be positive");
    const Constants& c = config.constants;
    const double t0 = config.temperature;

    KineticGas gas = make_kinetic_gas(config);
    DemonTrace trace;
    trace.config = config;
    trace.initial_energy = gas.kinetic_energy();

    const double area_left = gas.chamber_area(Side::Left);
    const double area_right = gas.chamber_area(Side::Right);
    const double z_left = chamber_z(area_left, config.mass, t0, c);
    const double z_right = chamber_z(area_right, config.mass, t0, c);

    const auto sides_entropy = [&] {
        return chamber_entropy(gas.count(Side::Left), area_left, gas.kinetic_energy(Side::Left), config.mass, c) +
               chamber_entropy(gas.count(Side::Right), area_right, gas.kinetic_energy(Side::Right), config.mass, c);
    };
    const double s_initial = sides_entropy();

    DemonLedger ledger;
    std::deque<bool> memory;
    double material = 0.0;

    const auto record_sample = [&](double t) {
        ledger.time = t;
        ledger.n_left = gas.count(Side::Left);
        ledger.n_right = gas.particles.size() - ledger.n_left;
        ledger.kinetic_energy = gas.kinetic_energy();
        ledger.memory_occupancy = memory.size();
        ledger.landauer_heat = static_cast<double>(ledger.bits_erased) * c.boltzmann_k * t0 * std::numbers::ln2;
        ledger.dS_sides = sides_entropy() - s_initial;
        ledger.dS_th_part = 0.0;
        ledger.material_term = material;
        ledger.dS_st = ledger.dS_th_part + ledger.material_term;
        ledger.brillouin_balance =
            ledger.dS_sides + static_cast<double>(ledger.bits_recorded) * c.boltzmann_k * std::numbers::ln2;
        trace.ledger_series.push_back(ledger);
    };

    const auto sample_count = static_cast<std::size_t>(std::floor(config.duration / config.sample_interval + 1e-9));
    record_sample(0.0);
    for (std::size_t s = 1; s <= sample_count; ++s) {
        const double t_sample = static_cast<double>(s) * config.sample_interval;
        while (gas.time + find_next_event(gas).dt <= t_sample) {
            const std::size_t n_left_before = gas.count(Side::Left);
            const std::size_t n_right_before = gas.particles.size() - n_left_before;
            const Event ev = advance_in_place(gas, config.policy);

            if (ev.bit_recorded) {
                if (config.memory_capacity > 0 && memory.size() == config.memory_capacity) {
                    memory.pop_front();
                    ++ledger.bits_erased;
                }
                memory.push_back(ev.kind == EventKind::GatePass);
                ++ledger.bits_recorded;
            }
            if (ev.kind == EventKind::GatePass) {
                ++ledger.gate_passes;
                const bool to_right = ev.n_left < n_left_before;
                material += to_right ? transfer_material(n_left_before, n_right_before, z_left, z_right, c)
                                     : transfer_material(n_right_before, n_left_before, z_right, z_left, c);
            }
            if (ev.kind != EventKind::Wall || config.record_wall_events) trace.events.push_back(ev);
        }
        record_sample(t_sample);
    }
    return trace;
}

AccountingReport accounting_report(const DemonTrace& trace) {
    if (trace.ledger_series.empty()) throw std::domain_error("accounting report: empty trace");
    const auto& cfg = trace.config;
    const Constants& c = cfg.constants;
    const double t0 = cfg.temperature;
    const double k_ln2 = c.boltzmann_k * std::numbers::ln2;

    const double z_left = chamber_z(cfg.partition_x * cfg.box.height, cfg.mass, t0, c);
    const double z_right = chamber_z((cfg.box.width - cfg.partition_x) * cfg.box.height, cfg.mass, t0, c);

    AccountingReport report;
    std::size_t next_event = 0;
    double replayed_material = 0.0;
    for (const auto& l : trace.ledger_series) {
        while (next_event < trace.events.size() && trace.events[next_event].time <= l.time) {
            const Event& ev = trace.events[next_event++];
            if (ev.kind != EventKind::GatePass) continue;
            if (ev.side_before == Side::Left) {
                replayed_material += transfer_material(ev.n_left + 1, ev.n_right - 1, z_left, z_right, c);
            } else {
                replayed_material += transfer_material(ev.n_right + 1, ev.n_left - 1, z_right, z_left, c);
            }
        }

        AccountingRow row;
        row.time = l.time;
        row.dS_sides = l.dS_sides;
        row.szilard_measurement_entropy = static_cast<double>(l.bits_recorded) * k_ln2;
        row.szilard_net = l.dS_sides + row.szilard_measurement_entropy;
        row.brillouin_balance = l.brillouin_balance;
        row.landauer_erasure_entropy = l.landauer_heat / t0;
        row.landauer_net = l.dS_sides + row.landauer_erasure_entropy;
        row.ledger_dS_st = l.dS_st;
        row.ledger_rhs = l.dS_th_part + replayed_material;
        const double tol = 1e-10 * std::max({std::abs(row.ledger_dS_st), std::abs(row.ledger_rhs), c.boltzmann_k});
        row.generalized_holds = row.ledger_dS_st >= row.ledger_rhs - tol;

        report.brillouin_nonnegative = report.brillouin_nonnegative && row.brillouin_balance >= 0.0;
        report.generalized_all_hold = report.generalized_all_hold && row.generalized_holds;
        if (trace.initial_energy > 0.0) {
            report.max_energy_drift = std::max(report.max_energy_drift,
                                               std::abs(l.kinetic_energy - trace.initial_energy) / trace.initial_energy);
        }
        report.rows.push_back(row);
    }
    return report;
}

SzilardCycle szilard_cycle(double temperature, int expansion_steps, const Constants& c, bool erase,
                           std::uint64_t memory_before) {
    if (expansion_steps < 1) throw std::domain_error("szilard: expansion_steps must be >= 1");
    if (!(temperature > 0.0)) throw std::domain_error("szilard: temperature must be positive");
    const double kt = c.boltzmann_k * temperature;
    const double k_ln2 = c.boltzmann_k * std::numbers::ln2;

    // Piston moved in equal jumps; the molecule then pushes at the pressure
    // of the enlarged volume, P = kT / V. Converges to kT ln 2 from below.
    const double v_start = 0.5;
    const double v_end = 1.0;
    const double dv = (v_end - v_start) / expansion_steps;
    double work = 0.0;
    for (int i = 1; i <= expansion_steps; ++i) {
        const double v = i == expansion_steps ? v_end : v_start + i * dv;
        work += kt / v * dv;
    }

    SzilardCycle cycle;
    cycle.work_extracted = work;
    cycle.heat_from_bath = work;
    cycle.bits_recorded = 1;
    cycle.bits_erased = erase ? 1 : 0;
    cycle.memory_occupancy = memory_before + cycle.bits_recorded - cycle.bits_erased;
    cycle.erasure_heat = static_cast<double>(cycle.bits_erased) * kt * std::numbers::ln2;
    cycle.szilard_net = k_ln2 - work / temperature;
    cycle.landauer_net = (cycle.erasure_heat - cycle.heat_from_bath) / temperature;
    cycle.ledger_dS_th = k_ln2;
    cycle.ledger_material = c.boltzmann_k * std::log(0.5);
    cycle.ledger_dS_st = cycle.ledger_dS_th + cycle.ledger_material;
    cycle.ledger_rhs = work / temperature + cycle.ledger_material;
    cycle.generalized_holds = cycle.ledger_dS_st >= cycle.ledger_rhs - 1e-12 * k_ln2;
    return cycle;
}

std::vector<SzilardCycle> run_szilard(double temperature, int expansion_steps, int cycles, bool erase,
                                      const Constants& c) {
    if (cycles < 1) throw std::domain_error("szilard: cycles must be >= 1");
    std::vector<SzilardCycle> out;
    std::uint64_t memory = 0;
    for (int i = 0; i < cycles; ++i) {
        out.push_back(szilard_cycle(temperature, expansion_steps, c, erase, memory));
        memory = out.back().memory_occupancy;
    }
    return out;
}

} // namespace infotherm
