#include "infotherm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace infotherm::io {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json kind_json(const ProcessKind& kind) {
    return std::visit(Overloaded{
                          [](const MixDistinct& k) {
                              return json{{"N_A", k.n_a}, {"N_B", k.n_b}, {"V", k.volume}, {"T", k.temperature}};
                          },
                          [](const PartitionIdentical& k) {
                              return json{{"N_total", k.n_total}, {"V", k.volume}, {"T", k.temperature}};
                          },
                          [](const RelocateIGM& k) {
                              return json{{"lambda", k.lambda}, {"N_A", k.n_a}, {"V", k.volume}, {"T", k.temperature}};
                          },
                          [](const IsothermalExpansion& k) {
                              return json{{"N", k.n}, {"V1", k.v1}, {"V2", k.v2}, {"T", k.temperature}};
                          },
                      },
                      kind);
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

} // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0"; // also folds -0
    // Shortest of 15..17 significant digits that reads back to the same double.
    char buf[32];
    for (int digits = 15; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

std::string trace_csv(const ProcessTrace& trace, const std::string& header_comment) {
    std::ostringstream out;
    out << "# " << header_comment << '\n';
    out << "progress";
    if (trace.snapshots.empty()) {
        out << ",dS_th,material_term,dS_st,info_bits\n";
        return out.str();
    }
    const Snapshot& first = trace.snapshots.front();
    for (const auto& p : first.pressures) out << ",P_" << p.phase;
    for (const auto& m : first.potentials) out << ",mu_" << m.phase << '_' << m.species_id;
    out << ",dS_th,material_term,dS_st,info_bits\n";
    for (const auto& s : trace.snapshots) {
        out << format_number(s.progress);
        for (const auto& p : s.pressures) out << ',' << format_number(p.value);
        for (const auto& m : s.potentials) out << ',' << format_number(m.mu);
        out << ',' << format_number(s.ledger.dS_th) << ',' << format_number(s.ledger.material_term) << ','
            << format_number(s.ledger.dS_st) << ',' << format_number(s.ledger.info_delta_bits) << '\n';
    }
    return out.str();
}

json to_json(const EntropyLedger& l) {
    return {{"dS_th", l.dS_th}, {"material_term", l.material_term}, {"dS_st", l.dS_st},
            {"info_delta_bits", l.info_delta_bits}};
}

json to_json(const SecondLawVerdict& v) {
    std::size_t equalities = 0;
    std::size_t negative_st = 0;
    for (const auto& s : v.steps) {
        equalities += s.generalized_equality ? 1 : 0;
        negative_st += s.isolated_nonnegative ? 0 : 1;
    }
    return {{"steps", v.steps.size()},
            {"generalized_all_hold", v.generalized_all_hold()},
            {"generalized_violations", v.generalized_violations},
            {"classical_all_hold", v.classical_all_hold()},
            {"classical_violations", v.classical_violations},
            {"equality_steps", equalities},
            {"steps_with_negative_dS_st", negative_st},
            {"cumulative_rhs", v.cumulative_rhs},
            {"cumulative_dS_st", v.cumulative_dS_st}};
}

json to_json(const CompositeResult& r) {
    return {{"process_a", to_json(r.process_a)},
            {"process_b", to_json(r.process_b)},
            {"total", to_json(r.total)},
            {"distinguishable_mode", r.distinguishable}};
}

json to_json(const LocalizationEstimate& e) {
    return {{"p_hat", e.p_hat},     {"std_err", e.std_err},
            {"hits", e.hits},       {"samples", e.samples},
            {"expected_hits", e.expected_hits}, {"low_hit_warning", e.low_hit_warning}};
}

json to_json(const SzilardCycle& c) {
    return {{"work_extracted", c.work_extracted},
            {"heat_from_bath", c.heat_from_bath},
            {"bits_recorded", c.bits_recorded},
            {"bits_erased", c.bits_erased},
            {"memory_occupancy", c.memory_occupancy},
            {"erasure_heat", c.erasure_heat},
            {"szilard_net", c.szilard_net},
            {"landauer_net", c.landauer_net},
            {"ledger_dS_th", c.ledger_dS_th},
            {"ledger_material", c.ledger_material},
            {"ledger_dS_st", c.ledger_dS_st},
            {"ledger_rhs", c.ledger_rhs},
            {"generalized_holds", c.generalized_holds}};
}

json to_json(const DemonLedger& l) {
    return {{"time", l.time},
            {"n_left", l.n_left},
            {"n_right", l.n_right},
            {"kinetic_energy", l.kinetic_energy},
            {"bits_recorded", l.bits_recorded},
            {"bits_erased", l.bits_erased},
            {"memory_occupancy", l.memory_occupancy},
            {"gate_passes", l.gate_passes},
            {"landauer_heat", l.landauer_heat},
            {"dS_sides", l.dS_sides},
            {"dS_th_part", l.dS_th_part},
            {"material_term", l.material_term},
            {"dS_st", l.dS_st},
            {"brillouin_balance", l.brillouin_balance}};
}

json to_json(const AccountingRow& r) {
    return {{"time", r.time},
            {"dS_sides", r.dS_sides},
            {"szilard", {{"measurement_entropy", r.szilard_measurement_entropy}, {"net", r.szilard_net}}},
            {"brillouin", {{"balance", r.brillouin_balance}}},
            {"landauer_bennett", {{"erasure_entropy", r.landauer_erasure_entropy}, {"net", r.landauer_net}}},
            {"statistical",
             {{"dS_st", r.ledger_dS_st}, {"rhs", r.ledger_rhs}, {"generalized_holds", r.generalized_holds}}}};
}

json trace_summary(const ProcessTrace& trace, const SecondLawVerdict& verdict) {
    return {{"process", kind_name(trace.kind)},
            {"parameters", kind_json(trace.kind)},
            {"snapshots", trace.snapshots.size()},
            {"distinguishable_mode", trace.distinguishable},
            {"final_ledger", to_json(trace.final_ledger)},
            {"second_law", to_json(verdict)}};
}

std::string demon_events_csv(const DemonTrace& trace, const std::string& header_comment) {
    std::ostringstream out;
    out << "# " << header_comment << '\n';
    out << "time,kind,particle,side_before,bit_recorded,n_left,n_right\n";
    for (const auto& e : trace.events) {
        out << format_number(e.time) << ',' << to_string(e.kind) << ',' << e.particle << ','
            << to_string(e.side_before) << ',' << (e.bit_recorded ? 1 : 0) << ',' << e.n_left << ',' << e.n_right
            << '\n';
    }
    return out.str();
}

json demon_summary(const DemonTrace& trace, const AccountingReport& report) {
    json series = json::array();
    for (const auto& l : trace.ledger_series) series.push_back(to_json(l));
    json rows = json::array();
    for (const auto& r : report.rows) rows.push_back(to_json(r));
    const auto& last = trace.ledger_series.back();
    return {{"policy", policy_name(trace.config.policy)},
            {"events", trace.events.size()},
            {"initial_energy", trace.initial_energy},
            {"max_energy_drift", report.max_energy_drift},
            {"brillouin_nonnegative", report.brillouin_nonnegative},
            {"generalized_all_hold", report.generalized_all_hold},
            {"final", to_json(last)},
            {"ledger_series", series},
            {"accountings", rows}};
}

std::string szilard_csv(const std::vector<SzilardCycle>& cycles, const std::string& header_comment) {
    std::ostringstream out;
    out << "# " << header_comment << '\n';
    out << "cycle,work_extracted,heat_from_bath,bits_recorded,bits_erased,memory_occupancy,erasure_heat,"
           "szilard_net,landauer_net,ledger_dS_st,ledger_rhs\n";
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        const auto& c = cycles[i];
        out << i << ',' << format_number(c.work_extracted) << ',' << format_number(c.heat_from_bath) << ','
            << c.bits_recorded << ',' << c.bits_erased << ',' << c.memory_occupancy << ','
            << format_number(c.erasure_heat) << ',' << format_number(c.szilard_net) << ','
            << format_number(c.landauer_net) << ',' << format_number(c.ledger_dS_st) << ','
            << format_number(c.ledger_rhs) << '\n';
    }
    return out.str();
}

std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                           const std::vector<Series>& series) {
    constexpr double kWidth = 780, kHeight = 440, kLeft = 70, kRight = 200, kTop = 40, kBottom = 50;
    static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (double v : x) {
        x_min = std::min(x_min, v);
        x_max = std::max(x_max, v);
    }
    for (const auto& s : series) {
        for (double v : s.values) {
            if (!std::isfinite(v)) continue;
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    if (!(x_max > x_min)) x_max = x_min + 1.0;
    if (!std::isfinite(y_min)) y_min = 0.0, y_max = 1.0;
    if (!(y_max > y_min)) {
        y_min -= 0.5;
        y_max += 0.5;
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto px = [&](double v) { return kLeft + (v - x_min) / (x_max - x_min) * plot_w; };
    const auto py = [&](double v) { return kTop + (y_max - v) / (y_max - y_min) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape_xml(title)
        << "</text>\n";
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double yv = y_min + (y_max - y_min) * i / 4.0;
        const double xv = x_min + (x_max - x_min) * i / 4.0;
        char label[32];
        std::snprintf(label, sizeof label, "%.4g", yv);
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << label
            << "</text>\n";
        std::snprintf(label, sizeof label, "%.4g", xv);
        out << "<text x=\"" << px(xv) << "\" y=\"" << kTop + plot_h + 16 << "\" text-anchor=\"middle\">" << label
            << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
        << escape_xml(x_label) << "</text>\n";
    if (y_min < 0.0 && y_max > 0.0) {
        out << "<line x1=\"" << kLeft << "\" y1=\"" << py(0.0) << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
            << py(0.0) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kColors[k % std::size(kColors)];
        // Alternate series are dashed so coincident curves stay visible.
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
            << (k % 2 == 1 ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        const std::size_t n = std::min(x.size(), series[k].values.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(series[k].values[i])) continue;
            char pt[64];
            std::snprintf(pt, sizeof pt, "%.2f,%.2f ", px(x[i]), py(series[k].values[i]));
            out << pt;
        }
        out << "\"/>\n";
        const double ly = kTop + 14 + 18.0 * static_cast<double>(k);
        out << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kWidth - kRight + 32
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << ly << "\">" << escape_xml(series[k].name)
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace infotherm::io
