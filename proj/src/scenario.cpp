#include "infotherm/scenario.hpp"

#include "infotherm/demon_sim.hpp"
#include "infotherm/io.hpp"
#include "infotherm/microstate_oracle.hpp"
#include "infotherm/process_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <variant>

namespace infotherm::cli {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kArgonMass = 6.6335209e-26; // kg

const std::set<std::string> kCommonKeys{"schema_version", "experiment", "seed", "units", "output_dir", "formats"};

std::string describe(const json& v) { return v.dump(); }

// Reads experiment parameters, records the normalized values and rejects
// anything it was not asked for.
class ParamReader {
public:
    ParamReader(std::string experiment, const json& params) : experiment_(std::move(experiment)), params_(params) {}

    double real(const std::string& name, std::optional<double> def, double min, bool min_exclusive = true) {
        const json* v = fetch(name, def.has_value());
        double x = def.value_or(0.0);
        if (v) {
            if (!v->is_number()) fail(name, "expected a number, got " + describe(*v));
            x = v->get<double>();
        }
        const bool ok = std::isfinite(x) && (min_exclusive ? x > min : x >= min);
        if (!ok) fail(name, std::string("must be ") + (min_exclusive ? "> " : ">= ") + io::format_number(min));
        normalized_[name] = x;
        return x;
    }

    std::int64_t integer(const std::string& name, std::optional<std::int64_t> def, std::int64_t min,
                         std::int64_t max = std::numeric_limits<std::int64_t>::max()) {
        const json* v = fetch(name, def.has_value());
        std::int64_t x = def.value_or(0);
        if (v) {
            if (!v->is_number_integer()) fail(name, "expected an integer, got " + describe(*v));
            if (v->is_number_unsigned() && v->get<std::uint64_t>() > std::uint64_t(max)) fail(name, "too large");
            x = v->get<std::int64_t>();
        }
        if (x < min || x > max) {
            fail(name, "must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
        }
        normalized_[name] = x;
        return x;
    }

    bool flag(const std::string& name, bool def) {
        const json* v = fetch(name, true);
        bool x = def;
        if (v) {
            if (!v->is_boolean()) fail(name, "expected true or false, got " + describe(*v));
            x = v->get<bool>();
        }
        normalized_[name] = x;
        return x;
    }

    std::string choice(const std::string& name, const std::string& def, const std::vector<std::string>& choices) {
        const json* v = fetch(name, true);
        std::string x = def;
        if (v) {
            if (!v->is_string()) fail(name, "expected a string, got " + describe(*v));
            x = v->get<std::string>();
        }
        if (std::find(choices.begin(), choices.end(), x) == choices.end()) {
            std::string list;
            for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
            fail(name, "must be one of {" + list + "}, got \"" + x + "\"");
        }
        normalized_[name] = x;
        return x;
    }

    /// Rejects unknown keys and returns the normalized parameter set.
    json finish() const {
        for (auto it = params_.begin(); it != params_.end(); ++it) {
            if (!normalized_.contains(it.key())) {
                throw UsageError("parameter '" + it.key() + "': not accepted by experiment '" + experiment_ + "'");
            }
        }
        return normalized_;
    }

    [[noreturn]] void fail(const std::string& name, const std::string& why) const {
        throw UsageError("parameter '" + name + "': " + why);
    }

private:
    const json* fetch(const std::string& name, bool optional) const {
        const auto it = params_.find(name);
        if (it == params_.end()) {
            if (!optional) throw UsageError("parameter '" + name + "': required by experiment '" + experiment_ + "'");
            return nullptr;
        }
        return &*it;
    }

    std::string experiment_;
    const json& params_;
    json normalized_ = json::object();
};

struct ProcessPlan {
    ProcessKind kind;
    int steps = 100;
    ProcessOptions options;
};

struct CompositePlan {
    double n_a = 0.0;
    double volume = 1.0;
    double temperature = 1.0;
    int steps = 100;
    ProcessOptions options;
};

struct OraclePlan {
    std::uint64_t cells = 1;
    std::uint64_t particles = 0;
    std::uint64_t region = 1;
    int lambda = 2;
    bool enumerate = true;
};

struct McPlan {
    int lambda = 2;
    std::uint64_t n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

struct SzilardPlan {
    double temperature = 1.0;
    int steps = 10000;
    int cycles = 10;
    bool erase = true;
};

using Plan = std::variant<ProcessPlan, CompositePlan, OraclePlan, McPlan, DemonConfig, SzilardPlan>;

struct Defaults {
    double temperature;
    double volume;
    double mass;
};

Defaults defaults_for(UnitMode units) {
    if (units == UnitMode::SI) return {300.0, 1e-3, kArgonMass};
    return {1.0, 1.0, 1.0 / (2.0 * std::numbers::pi)};
}

Constants constants_for(UnitMode units) { return units == UnitMode::SI ? Constants::si() : Constants::reduced(); }

ProcessOptions process_options(ParamReader& r, const ScenarioConfig& cfg, const Defaults& d, bool allow_dist = true) {
    ProcessOptions opts;
    opts.constants = constants_for(cfg.units);
    const double mass = r.real("mass", d.mass, 0.0);
    opts.species_a = Species{"A", mass, "A"};
    opts.species_b = Species{"B", mass, "B"};
    if (allow_dist) opts.distinguishable = r.flag("distinguishable", false);
    return opts;
}

int read_steps(ParamReader& r, int def) { return static_cast<int>(r.integer("steps", def, 2, 10'000'000)); }

Plan build_plan(const ScenarioConfig& cfg, ParamReader& r) {
    const Defaults d = defaults_for(cfg.units);
    const std::string& e = cfg.experiment;

    const auto checked = [&](ProcessKind kind) {
        try {
            validate(kind);
        } catch (const std::domain_error& ex) {
            throw UsageError(std::string("invalid parameters: ") + ex.what());
        }
        return kind;
    };

    if (e == "mix") {
        ProcessPlan p;
        MixDistinct k;
        k.n_a = r.real("N_A", std::nullopt, 0.0);
        k.n_b = r.real("N_B", std::nullopt, 0.0);
        k.volume = r.real("V", d.volume, 0.0);
        k.temperature = r.real("T", d.temperature, 0.0);
        p.steps = read_steps(r, 100);
        p.options = process_options(r, cfg, d);
        p.kind = checked(k);
        return p;
    }
    if (e == "partition") {
        ProcessPlan p;
        PartitionIdentical k;
        k.n_total = r.real("N_total", std::nullopt, 0.0);
        k.volume = r.real("V", d.volume, 0.0);
        k.temperature = r.real("T", d.temperature, 0.0);
        p.steps = read_steps(r, 100);
        p.options = process_options(r, cfg, d);
        p.kind = checked(k);
        return p;
    }
    if (e == "relocate") {
        ProcessPlan p;
        RelocateIGM k;
        k.lambda = static_cast<int>(r.integer("lambda", 2, 2, 1000));
        k.n_a = r.real("N_A", std::nullopt, 0.0);
        k.volume = r.real("V", d.volume, 0.0);
        k.temperature = r.real("T", d.temperature, 0.0);
        p.steps = read_steps(r, 100);
        p.options = process_options(r, cfg, d);
        p.kind = checked(k);
        return p;
    }
    if (e == "expand") {
        ProcessPlan p;
        IsothermalExpansion k;
        k.n = r.real("N", std::nullopt, 0.0);
        k.v1 = r.real("V1", d.volume, 0.0);
        k.v2 = r.real("V2", std::nullopt, 0.0);
        k.temperature = r.real("T", d.temperature, 0.0);
        p.steps = read_steps(r, 100);
        p.options = process_options(r, cfg, d, false);
        p.kind = checked(k);
        return p;
    }
    if (e == "composite") {
        CompositePlan p;
        p.n_a = r.real("N_A", std::nullopt, 0.0);
        p.volume = r.real("V", d.volume, 0.0);
        p.temperature = r.real("T", d.temperature, 0.0);
        p.steps = read_steps(r, 100);
        p.options = process_options(r, cfg, d);
        return p;
    }
    if (e == "oracle") {
        OraclePlan p;
        p.cells = static_cast<std::uint64_t>(r.integer("M", std::nullopt, 1));
        p.particles = static_cast<std::uint64_t>(r.integer("N", std::nullopt, 0, 100'000'000));
        p.region = static_cast<std::uint64_t>(r.integer("region", static_cast<std::int64_t>(p.cells), 0));
        if (p.region > p.cells) r.fail("region", "must not exceed M");
        if (p.region == 0 && p.particles > 0) r.fail("region", "must be >= 1 when N > 0");
        p.lambda = static_cast<int>(r.integer("lambda", 2, 2, 1000));
        p.enumerate = r.flag("enumerate", true);
        return p;
    }
    if (e == "mc") {
        McPlan p;
        p.lambda = static_cast<int>(r.integer("lambda", 2, 2, 1000));
        p.n = static_cast<std::uint64_t>(r.integer("N", std::nullopt, 0, 1'000'000));
        p.samples = static_cast<std::uint64_t>(r.integer("samples", 1'000'000, 1));
        p.workers = static_cast<unsigned>(r.integer("workers", 1, 1, 256));
        p.seed = cfg.seed;
        return p;
    }
    if (e == "demon") {
        DemonConfig c;
        const bool si = cfg.units == UnitMode::SI;
        c.constants = constants_for(cfg.units);
        c.seed = cfg.seed;
        c.n_particles = static_cast<std::size_t>(r.integer("N", 200, 1, 1'000'000));
        c.box.width = r.real("box_width", 1.0, 0.0);
        c.box.height = r.real("box_height", 1.0, 0.0);
        c.partition_x = r.real("partition_x", 0.5 * c.box.width, 0.0);
        if (c.partition_x >= c.box.width) r.fail("partition_x", "must lie strictly inside the box");
        c.gate_half_width = r.real("gate_half_width", 0.1 * c.box.height, 0.0);
        c.temperature = r.real("T", d.temperature, 0.0);
        c.mass = r.real("mass", si ? kArgonMass : 1.0, 0.0);
        c.duration = r.real("duration", si ? 0.15 : 50.0, 0.0);
        c.sample_interval = r.real("sample_interval", c.duration / 100.0, 0.0);
        if (c.sample_interval > c.duration) r.fail("sample_interval", "must not exceed duration");
        c.memory_capacity = static_cast<std::uint64_t>(r.integer("memory_capacity", 64, 0));
        c.record_wall_events = r.flag("record_wall_events", true);
        const std::string policy =
            r.choice("policy", "pressure-right", {"open", "closed", "pressure-right", "pressure-left", "temperature"});
        // Median speed of the 2D Maxwell-Boltzmann distribution.
        const double median_speed =
            std::sqrt(2.0 * std::numbers::ln2 * c.constants.boltzmann_k * c.temperature / c.mass);
        const double threshold = r.real("speed_threshold", median_speed, 0.0);
        if (policy == "open") {
            c.policy = AlwaysOpen{};
        } else if (policy == "closed") {
            c.policy = AlwaysClosed{};
        } else if (policy == "pressure-right") {
            c.policy = PressureDemon{Direction::ToRight};
        } else if (policy == "pressure-left") {
            c.policy = PressureDemon{Direction::ToLeft};
        } else {
            c.policy = TemperatureDemon{threshold};
        }
        return c;
    }
    if (e == "szilard") {
        SzilardPlan p;
        p.temperature = r.real("T", d.temperature, 0.0);
        p.steps = static_cast<int>(r.integer("steps", 10000, 1, 100'000'000));
        p.cycles = static_cast<int>(r.integer("cycles", 10, 1, 1'000'000));
        p.erase = r.flag("erase", true);
        return p;
    }
    throw UsageError("experiment: unknown value '" + e + "'");
}

std::string units_header(const ScenarioConfig& cfg) {
    const Constants c = constants_for(cfg.units);
    std::ostringstream out;
    out << "units=" << to_string(cfg.units) << " k=" << io::format_number(c.boltzmann_k)
        << " h=" << io::format_number(c.planck_h) << " experiment=" << cfg.experiment << " seed=" << cfg.seed;
    if (cfg.units == UnitMode::SI) out << " (SI: J, m^3, K, J/K)";
    return out.str();
}

std::vector<double> column(const std::vector<Snapshot>& snaps, double (*get)(const Snapshot&)) {
    std::vector<double> out;
    out.reserve(snaps.size());
    for (const auto& s : snaps) out.push_back(get(s));
    return out;
}

struct Rendered {
    json results;
    std::string csv;
    std::string svg;
};

Rendered render_trace(const ScenarioConfig& cfg, const ProcessTrace& trace) {
    const double k = trace.constants.boltzmann_k;
    const auto verdict = check_generalized_second_law(trace);
    Rendered r;
    r.results = io::trace_summary(trace, verdict);
    r.results["final_dS_st_over_k"] = trace.final_ledger.dS_st / k;
    r.results["final_dS_th_over_k"] = trace.final_ledger.dS_th / k;
    r.csv = io::trace_csv(trace, units_header(cfg));

    const auto x = column(trace.snapshots, [](const Snapshot& s) { return s.progress; });
    std::vector<io::Series> series{
        {"dS_th / k", column(trace.snapshots, [](const Snapshot& s) { return s.ledger.dS_th; })},
        {"material / k", column(trace.snapshots, [](const Snapshot& s) { return s.ledger.material_term; })},
        {"dS_st / k", column(trace.snapshots, [](const Snapshot& s) { return s.ledger.dS_st; })},
    };
    for (auto& s : series) {
        for (auto& v : s.values) v /= k;
    }
    r.svg = io::svg_line_chart(kind_name(trace.kind) + ": entropy ledger", "progress", x, series);
    return r;
}

Rendered run_plan(const ScenarioConfig& cfg, const Plan& plan) {
    return std::visit(
        [&](const auto& p) -> Rendered {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ProcessPlan>) {
                ProcessTrace trace = std::visit(
                    [&](const auto& k) -> ProcessTrace {
                        using K = std::decay_t<decltype(k)>;
                        if constexpr (std::is_same_v<K, MixDistinct>) {
                            return run_mix_distinct(k.n_a, k.n_b, k.volume, k.temperature, p.steps, p.options);
                        } else if constexpr (std::is_same_v<K, PartitionIdentical>) {
                            return run_partition_identical(k.n_total, k.volume, k.temperature, p.steps, p.options);
                        } else if constexpr (std::is_same_v<K, RelocateIGM>) {
                            return run_relocate_igm(k.lambda, k.n_a, k.volume, k.temperature, p.steps, p.options);
                        } else {
                            return trace_isothermal_expansion(k.n, k.v1, k.v2, k.temperature, p.steps, p.options);
                        }
                    },
                    p.kind);
                return render_trace(cfg, trace);
            } else if constexpr (std::is_same_v<P, CompositePlan>) {
                const auto result = gibbs_mixing_composite(p.n_a, p.volume, p.temperature, p.steps, p.options);
                // The trace artifact is process b, the only part with a material term.
                Rendered r = render_trace(
                    cfg, run_relocate_igm(2, p.n_a, 2.0 * p.volume, p.temperature, p.steps, p.options));
                const double k = p.options.constants.boltzmann_k;
                r.results = io::to_json(result);
                r.results["total_dS_st_over_k"] = result.total.dS_st / k;
                r.results["process_b_trace"] = "relocation of two samples of N_A into one volume 2V";
                return r;
            } else if constexpr (std::is_same_v<P, OraclePlan>) {
                Rendered r;
                const LatticeModel dist{p.cells, p.particles, Counting::Distinguishable};
                const LatticeModel boltz{p.cells, p.particles, Counting::BoltzmannCorrected};
                const RegionConstraint region{p.region};
                json lattice{{"M", p.cells},
                             {"N", p.particles},
                             {"region", p.region},
                             {"ln_W_distinguishable", log_multiplicity(dist)},
                             {"ln_W_boltzmann", log_multiplicity(boltz)},
                             {"ln_W_region_distinguishable", log_multiplicity(dist, region)},
                             {"ln_W_region_boltzmann", log_multiplicity(boltz, region)}};
                lattice["ln_ratio_distinguishable"] =
                    lattice["ln_W_region_distinguishable"].get<double>() - lattice["ln_W_distinguishable"].get<double>();
                lattice["ln_ratio_boltzmann"] =
                    lattice["ln_W_region_boltzmann"].get<double>() - lattice["ln_W_boltzmann"].get<double>();
                try {
                    lattice["W_region"] = multiplicity_closed_form(dist, region);
                } catch (const SizeError&) {
                    lattice["W_region"] = nullptr;
                }
                json enumeration = nullptr;
                if (p.enumerate) {
                    try {
                        const auto count = enumerate_and_count(dist, region);
                        enumeration = {{"total", count.total}, {"satisfying", count.satisfying}};
                    } catch (const SizeError&) {
                        enumeration = "skipped: M^N exceeds the enumeration limit";
                    }
                }
                lattice["enumeration"] = enumeration;
                r.results["lattice"] = lattice;
                if (p.particles >= 1) {
                    const Constants c = constants_for(cfg.units);
                    const double ln_p = localization_log_probability(p.lambda, double(p.particles));
                    const double gap = stirling_gap(p.lambda, p.particles);
                    r.results["localization"] = {
                        {"lambda", p.lambda},
                        {"N_per_sample", p.particles},
                        {"ln_p", ln_p},
                        {"k_ln_p", c.boltzmann_k * ln_p},
                        {"scaled_entropy_delta", scaled_entropy_delta(double(p.particles), p.lambda, c)},
                        {"stirling_gap", gap},
                        {"relative_stirling_gap", gap / -ln_p}};
                }

                // ln W against the allowed block size.
                std::ostringstream csv;
                csv << "# " << units_header(cfg) << '\n' << "region,ln_W_distinguishable,ln_W_boltzmann\n";
                std::vector<double> x, ld, lb;
                const std::uint64_t rows = std::min<std::uint64_t>(p.cells, 256);
                for (std::uint64_t i = 1; i <= rows; ++i) {
                    const std::uint64_t m = rows == p.cells ? i : std::max<std::uint64_t>(1, i * p.cells / rows);
                    const double a = log_multiplicity(dist, RegionConstraint{m});
                    const double b = log_multiplicity(boltz, RegionConstraint{m});
                    csv << m << ',' << io::format_number(a) << ',' << io::format_number(b) << '\n';
                    x.push_back(double(m));
                    ld.push_back(a);
                    lb.push_back(b);
                }
                r.csv = csv.str();
                r.svg = io::svg_line_chart("lattice multiplicity", "allowed cells", x,
                                           {{"ln W (labelled)", ld}, {"ln W (Boltzmann)", lb}});
                return r;
            } else if constexpr (std::is_same_v<P, McPlan>) {
                Rendered r;
                const auto est = sample_localization_mc(p.lambda, p.n, p.samples, p.seed, p.workers);
                const double exact = p.n == 0 ? 1.0 : std::exp(localization_log_probability(p.lambda, double(p.n)));
                r.results = io::to_json(est);
                r.results["lambda"] = p.lambda;
                r.results["N_per_sample"] = p.n;
                r.results["p_exact"] = exact;
                r.results["z_score"] = est.std_err > 0.0 ? (est.p_hat - exact) / est.std_err : 0.0;
                std::ostringstream csv;
                csv << "# " << units_header(cfg) << '\n'
                    << "lambda,N,samples,hits,p_hat,std_err,p_exact\n"
                    << p.lambda << ',' << p.n << ',' << est.samples << ',' << est.hits << ','
                    << io::format_number(est.p_hat) << ',' << io::format_number(est.std_err) << ','
                    << io::format_number(exact) << '\n';
                r.csv = csv.str();
                return r;
            } else if constexpr (std::is_same_v<P, DemonConfig>) {
                Rendered r;
                const auto trace = run_demon(p);
                const auto report = accounting_report(trace);
                r.results = io::demon_summary(trace, report);
                r.csv = io::demon_events_csv(trace, units_header(cfg));
                const double k = p.constants.boltzmann_k;
                std::vector<double> t;
                io::Series sides{"dS_sides / k", {}}, st{"dS_st / k", {}}, bal{"Brillouin balance / k", {}};
                for (const auto& l : trace.ledger_series) {
                    t.push_back(l.time);
                    sides.values.push_back(l.dS_sides / k);
                    st.values.push_back(l.dS_st / k);
                    bal.values.push_back(l.brillouin_balance / k);
                }
                r.svg = io::svg_line_chart("demon (" + policy_name(p.policy) + "): entropy accountings", "time", t,
                                           {sides, st, bal});
                return r;
            } else {
                Rendered r;
                const Constants c = constants_for(cfg.units);
                const auto cycles = run_szilard(p.temperature, p.steps, p.cycles, p.erase, c);
                json rows = json::array();
                bool landauer_ok = true;
                for (const auto& cy : cycles) {
                    rows.push_back(io::to_json(cy));
                    landauer_ok = landauer_ok && cy.landauer_net >= 0.0;
                }
                const double kt_ln2 = c.boltzmann_k * p.temperature * std::numbers::ln2;
                r.results = {{"cycles", rows},
                             {"kT_ln2", kt_ln2},
                             {"work_relative_error", std::abs(cycles.front().work_extracted - kt_ln2) / kt_ln2},
                             {"final_memory_occupancy", cycles.back().memory_occupancy},
                             {"landauer_net_nonnegative", landauer_ok}};
                r.csv = io::szilard_csv(cycles, units_header(cfg));
                std::vector<double> x;
                io::Series work{"work / kT", {}}, land{"Landauer net / k", {}}, mem{"memory bits", {}};
                const double kt = c.boltzmann_k * p.temperature;
                for (std::size_t i = 0; i < cycles.size(); ++i) {
                    x.push_back(double(i + 1));
                    work.values.push_back(cycles[i].work_extracted / kt);
                    land.values.push_back(cycles[i].landauer_net / c.boltzmann_k);
                    mem.values.push_back(double(cycles[i].memory_occupancy));
                }
                r.svg = io::svg_line_chart("Szilard engine", "cycle", x, {work, land, mem});
                return r;
            }
        },
        plan);
}

std::string artifact_stem(const std::string& experiment) { return experiment; }

std::string csv_name(const std::string& experiment) {
    if (experiment == "demon") return "demon_events.csv";
    if (experiment == "szilard") return "szilard_cycles.csv";
    if (experiment == "oracle") return "oracle_multiplicity.csv";
    if (experiment == "mc") return "mc_estimate.csv";
    return artifact_stem(experiment) + "_trace.csv";
}

json config_echo(const ScenarioConfig& cfg, const json& normalized) {
    json formats = json::array();
    for (Format f : cfg.formats) formats.push_back(to_string(f));
    json echo{{"schema_version", kConfigSchemaVersion},
              {"experiment", cfg.experiment},
              {"seed", cfg.seed},
              {"units", to_string(cfg.units)},
              {"formats", formats}};
    for (auto it = normalized.begin(); it != normalized.end(); ++it) echo[it.key()] = it.value();
    return echo;
}

} // namespace

const char* to_string(Format format) {
    switch (format) {
        case Format::Csv: return "csv";
        case Format::Json: return "json";
        case Format::Svg: return "svg";
    }
    return "?";
}

std::set<Format> parse_formats(const std::string& list) {
    std::set<Format> out;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty() || item == "none") continue;
        if (item == "csv") {
            out.insert(Format::Csv);
        } else if (item == "json") {
            out.insert(Format::Json);
        } else if (item == "svg") {
            out.insert(Format::Svg);
        } else {
            throw UsageError("formats: unknown format '" + item + "' (expected csv, json, svg)");
        }
    }
    return out;
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"mix",       "partition", "relocate", "expand", "composite",
                                                "oracle",    "mc",        "demon",    "szilard"};
    return names;
}

ScenarioConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw UsageError("config: expected a JSON object");
    ScenarioConfig cfg;

    if (doc.contains("schema_version")) {
        const auto& v = doc["schema_version"];
        if (!v.is_number_integer() || v.get<std::int64_t>() != kConfigSchemaVersion) {
            throw UsageError("schema_version: unsupported value " + v.dump() + " (expected " +
                             std::to_string(kConfigSchemaVersion) + ")");
        }
    }
    if (!doc.contains("experiment")) throw UsageError("experiment: required");
    if (!doc["experiment"].is_string()) throw UsageError("experiment: expected a string");
    cfg.experiment = doc["experiment"].get<std::string>();
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), cfg.experiment) == names.end()) {
        throw UsageError("experiment: unknown value '" + cfg.experiment + "'");
    }
    if (doc.contains("seed")) {
        const auto& v = doc["seed"];
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
            throw UsageError("seed: expected a non-negative 64-bit integer");
        }
        cfg.seed = v.get<std::uint64_t>();
    }
    if (doc.contains("units")) {
        const auto& v = doc["units"];
        const std::string u = v.is_string() ? v.get<std::string>() : "";
        if (u == "si" || u == "SI") {
            cfg.units = UnitMode::SI;
        } else if (u == "reduced") {
            cfg.units = UnitMode::Reduced;
        } else {
            throw UsageError("units: expected \"si\" or \"reduced\", got " + v.dump());
        }
    }
    if (doc.contains("output_dir")) {
        if (!doc["output_dir"].is_string()) throw UsageError("output_dir: expected a string");
        cfg.output_dir = doc["output_dir"].get<std::string>();
    }
    if (doc.contains("formats")) {
        const auto& v = doc["formats"];
        if (v.is_string()) {
            cfg.formats = parse_formats(v.get<std::string>());
        } else if (v.is_array()) {
            std::string joined;
            for (const auto& f : v) {
                if (!f.is_string()) throw UsageError("formats: expected strings");
                joined += f.get<std::string>() + ",";
            }
            cfg.formats = parse_formats(joined);
        } else {
            throw UsageError("formats: expected an array or a comma-separated string");
        }
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!kCommonKeys.count(it.key())) cfg.parameters[it.key()] = it.value();
    }
    validate_config(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot read '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config: malformed JSON in '" + path + "': " + e.what());
    }
    return parse_config(doc);
}

json validate_config(const ScenarioConfig& config) {
    if (!config.parameters.is_object()) throw UsageError("parameters: expected an object");
    ParamReader reader(config.experiment, config.parameters);
    build_plan(config, reader);
    return reader.finish();
}

json RunSummary::to_json(bool include_wall_time) const {
    json doc{{"schema_version", io::kSummarySchemaVersion},
             {"tool", "infotherm"},
             {"version", version},
             {"config", config_echo},
             {"results", results},
             {"artifacts", artifacts}};
    if (include_wall_time) doc["wall_seconds"] = wall_seconds;
    return doc;
}

ScenarioRun run_scenario(const ScenarioConfig& config) {
    ParamReader reader(config.experiment, config.parameters);
    const Plan plan = build_plan(config, reader);
    const json normalized = reader.finish();

    const auto t0 = std::chrono::steady_clock::now();
    const Rendered rendered = run_plan(config, plan);

    ScenarioRun run;
    run.summary.version = kVersion;
    run.summary.config_echo = config_echo(config, normalized);
    run.summary.results = rendered.results;

    const std::string stem = artifact_stem(config.experiment);
    if (config.formats.count(Format::Csv) && !rendered.csv.empty()) {
        run.artifacts.push_back({csv_name(config.experiment), Format::Csv, rendered.csv});
    }
    if (config.formats.count(Format::Svg) && !rendered.svg.empty()) {
        run.artifacts.push_back({stem + "_ledger.svg", Format::Svg, rendered.svg});
    }
    if (config.formats.count(Format::Json)) {
        run.artifacts.push_back({stem + "_summary.json", Format::Json, {}});
    }
    for (const auto& a : run.artifacts) run.summary.artifacts.push_back(a.file_name);
    std::sort(run.summary.artifacts.begin(), run.summary.artifacts.end());
    for (auto& a : run.artifacts) {
        if (a.format == Format::Json) a.content = run.summary.to_json(false).dump(2) + "\n";
    }
    run.summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

std::vector<std::string> emit_outputs(const ScenarioRun& run, const std::string& output_dir) {
    std::vector<std::string> written;
    if (run.artifacts.empty()) return written;
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + output_dir + "': " + ec.message());
    for (const auto& a : run.artifacts) {
        const fs::path path = fs::path(output_dir) / a.file_name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
        out << a.content;
        if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
        written.push_back(path.string());
    }
    return written;
}

const char* version() { return kVersion; }

} // namespace infotherm::cli
