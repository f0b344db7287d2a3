#include "doctest.h"

#include "infotherm/demon_sim.hpp"

#include <cmath>
#include <stdexcept>
#include <numbers>

using namespace infotherm;

namespace {

KineticGas single(Vec2 pos, Vec2 vel, Side side) {
    KineticGas gas;
    gas.particles.push_back({pos, vel, side});
    return gas;
}

} // namespace

TEST_CASE("specular reflection from a solid wall") {
    auto gas = single({0.9, 0.5}, {2.0, 0.0}, Side::Right);
    const auto [ev, next] = advance_to_next_event(gas, AlwaysClosed{});
    CHECK(ev.kind == EventKind::Wall);
    CHECK(ev.time == doctest::Approx(0.05));
    CHECK(next.particles[0].velocity.x == -2.0);
    CHECK(next.particles[0].position.x == 1.0);
    CHECK(next.kinetic_energy() == gas.kinetic_energy());
}

TEST_CASE("closed gate turns a particle back without a measurement") {
    auto gas = single({0.25, 0.5}, {1.0, 0.0}, Side::Left);
    const auto [ev, next] = advance_to_next_event(gas, AlwaysClosed{});
    CHECK(ev.kind == EventKind::GateReject);
    CHECK_FALSE(ev.bit_recorded);
    CHECK(next.particles[0].side == Side::Left);
    CHECK(next.particles[0].velocity.x == -1.0);
}

TEST_CASE("open gate lets a particle through") {
    auto gas = single({0.25, 0.5}, {1.0, 0.0}, Side::Left);
    const auto [ev, next] = advance_to_next_event(gas, AlwaysOpen{});
    CHECK(ev.kind == EventKind::GatePass);
    CHECK(ev.side_before == Side::Left);
    CHECK(ev.n_left == 0);
    CHECK(ev.n_right == 1);
    CHECK_FALSE(ev.bit_recorded);
    CHECK(next.particles[0].side == Side::Right);
    CHECK(next.particles[0].velocity.x == 1.0);
}

TEST_CASE("demons measure and decide") {
    auto toward_left = single({0.75, 0.5}, {-1.0, 0.0}, Side::Right);
    const auto [rej, g1] = advance_to_next_event(toward_left, PressureDemon{Direction::ToRight});
    CHECK(rej.kind == EventKind::GateReject);
    CHECK(rej.bit_recorded);
    CHECK(g1.particles[0].side == Side::Right);

    auto fast = single({0.25, 0.5}, {3.0, 0.0}, Side::Left);
    CHECK(advance_to_next_event(fast, TemperatureDemon{1.0}).first.kind == EventKind::GatePass);
    auto slow = single({0.25, 0.5}, {0.5, 0.0}, Side::Left);
    CHECK(advance_to_next_event(slow, TemperatureDemon{1.0}).first.kind == EventKind::GateReject);

    // Outside the aperture the partition is solid whatever the policy says.
    auto off = single({0.25, 0.9}, {1.0, 0.0}, Side::Left);
    const auto [ev, g2] = advance_to_next_event(off, AlwaysOpen{});
    CHECK(ev.kind == EventKind::Wall);
    CHECK(g2.particles[0].side == Side::Left);
}

TEST_CASE("stalled gas raises") {
    auto gas = single({0.25, 0.5}, {0.0, 0.0}, Side::Left);
    CHECK_THROWS_AS(advance_to_next_event(gas, AlwaysOpen{}), StallError);
    auto outside = single({0.75, 0.5}, {1.0, 0.0}, Side::Left);
    CHECK_THROWS_AS(validate(outside), std::domain_error);
}

TEST_CASE("closed box keeps counts and energy") {
    DemonConfig cfg;
    cfg.n_particles = 100;
    cfg.policy = AlwaysClosed{};
    cfg.duration = 40.0;
    cfg.seed = 5;
    const auto tr = run_demon(cfg);
    const auto first = tr.ledger_series.front();
    double last_time = 0.0;
    for (const auto& e : tr.events) {
        CHECK(e.kind != EventKind::GatePass);
        CHECK_FALSE(e.bit_recorded);
        CHECK(e.time >= last_time);
        last_time = e.time;
        CHECK(e.n_left == first.n_left);
    }
    const auto rep = accounting_report(tr);
    for (const auto& r : rep.rows) {
        CHECK(r.dS_sides == 0.0);
        CHECK(r.szilard_net == 0.0);
        CHECK(r.brillouin_balance == 0.0);
        CHECK(r.landauer_net == 0.0);
        CHECK(r.ledger_dS_st == 0.0);
    }
    CHECK(rep.max_energy_drift <= 1e-12);
}

TEST_CASE("pressure demon run") {
    DemonConfig cfg;
    cfg.policy = PressureDemon{Direction::ToRight};
    cfg.duration = 40.0;
    cfg.seed = 3;
    cfg.memory_capacity = 16;
    const auto tr = run_demon(cfg);
    const auto rep = accounting_report(tr);
    const double k_ln2 = cfg.constants.boltzmann_k * std::numbers::ln2;

    CHECK(double(tr.ledger_series.back().n_right) / double(cfg.n_particles) >= 0.9);
    CHECK(rep.max_energy_drift <= 1e-9);
    CHECK(rep.brillouin_nonnegative);
    CHECK(rep.generalized_all_hold);
    for (const auto& l : tr.ledger_series) {
        CHECK(l.n_left + l.n_right == cfg.n_particles);
        CHECK(l.bits_erased <= l.bits_recorded);
        CHECK(l.bits_recorded >= l.gate_passes);
        CHECK(l.memory_occupancy <= cfg.memory_capacity);
        CHECK(l.landauer_heat == double(l.bits_erased) * cfg.constants.boltzmann_k * cfg.temperature * std::numbers::ln2);
        CHECK(std::abs(l.dS_st - (l.dS_th_part + l.material_term)) <= 1e-12);
        CHECK(l.brillouin_balance == doctest::Approx(l.dS_sides + double(l.bits_recorded) * k_ln2));
    }
    // Entropy of the chambers trends down: compare quarter averages.
    const auto& s = tr.ledger_series;
    const std::size_t q = s.size() / 4;
    double early = 0.0, late = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        early += s[i].dS_sides;
        late += s[s.size() - q + i].dS_sides;
    }
    CHECK(late < early);
    CHECK(s.back().dS_st < 0.0);
}

TEST_CASE("runs are deterministic in the seed") {
    DemonConfig cfg;
    cfg.n_particles = 50;
    cfg.policy = TemperatureDemon{1.0};
    cfg.duration = 10.0;
    cfg.seed = 99;
    const auto a = run_demon(cfg);
    const auto b = run_demon(cfg);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].time == b.events[i].time);
        CHECK(a.events[i].particle == b.events[i].particle);
    }
    CHECK(a.ledger_series.back().dS_sides == b.ledger_series.back().dS_sides);
}

TEST_CASE("open gate equilibrates") {
    DemonConfig cfg;
    cfg.policy = AlwaysOpen{};
    cfg.duration = 100.0;
    cfg.record_wall_events = false;
    cfg.seed = 8;
    const auto tr = run_demon(cfg);
    double sum = 0.0;
    int count = 0;
    for (const auto& l : tr.ledger_series) {
        if (l.time < 50.0) continue;
        sum += std::abs(double(l.n_left) - double(l.n_right));
        ++count;
    }
    CHECK(sum / count <= 3.0 * std::sqrt(200.0));
    CHECK(tr.ledger_series.back().bits_recorded == 0);
}

TEST_CASE("Szilard engine") {
    const auto c = szilard_cycle(1.0, 10000, Constants::reduced());
    CHECK(c.work_extracted == doctest::Approx(std::numbers::ln2).epsilon(1e-3));
    CHECK(c.work_extracted < std::numbers::ln2);
    CHECK(c.generalized_holds);
    CHECK(c.landauer_net >= 0.0);
    const auto si = szilard_cycle(300.0, 10000, Constants::si());
    CHECK(si.work_extracted == doctest::Approx(2.87e-21).epsilon(2e-3));

    const auto kept = run_szilard(1.0, 100, 5, false, Constants::reduced());
    for (std::size_t i = 0; i < kept.size(); ++i) CHECK(kept[i].memory_occupancy == i + 1);
    const auto erased = run_szilard(1.0, 100, 5, true, Constants::reduced());
    for (const auto& cy : erased) {
        CHECK(cy.memory_occupancy == 0);
        CHECK(cy.landauer_net >= 0.0);
    }
    CHECK_THROWS_AS(szilard_cycle(1.0, 0, Constants::reduced()), std::domain_error);
}

TEST_CASE("empty trace is rejected") {
    DemonTrace empty;
    CHECK_THROWS_AS(accounting_report(empty), std::domain_error);
}
