/// @file io.hpp
/// @brief CSV, JSON and SVG renderings of traces and ledgers.
///
/// All output is a pure function of its input: numbers are printed with the
/// fewest digits (15 to 17) that round-trip and nothing time-dependent is
/// embedded.

#pragma once

#include "infotherm/demon_sim.hpp"
#include "infotherm/microstate_oracle.hpp"
#include "infotherm/process_engine.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace infotherm::io {

inline constexpr int kSummarySchemaVersion = 1;

/// Round-trip decimal text; "0" for both signed zeros.
std::string format_number(double x);

/// One row per snapshot: progress, P_<phase>..., mu_<phase>_<species>...,
/// dS_th, material_term, dS_st, info_bits. Preceded by one `#` comment line.
std::string trace_csv(const ProcessTrace& trace, const std::string& header_comment);

nlohmann::json to_json(const EntropyLedger& ledger);
nlohmann::json to_json(const SecondLawVerdict& verdict);
nlohmann::json to_json(const CompositeResult& result);
nlohmann::json to_json(const LocalizationEstimate& estimate);
nlohmann::json to_json(const SzilardCycle& cycle);
nlohmann::json to_json(const DemonLedger& ledger);
nlohmann::json to_json(const AccountingRow& row);

/// Final ledger, kind parameters and second-law verdict.
nlohmann::json trace_summary(const ProcessTrace& trace, const SecondLawVerdict& verdict);

/// Event log: time, kind, particle, side_before, bit_recorded, n_left, n_right.
std::string demon_events_csv(const DemonTrace& trace, const std::string& header_comment);

/// Ledger series plus the side-by-side accountings.
nlohmann::json demon_summary(const DemonTrace& trace, const AccountingReport& report);

/// One row per cycle.
std::string szilard_csv(const std::vector<SzilardCycle>& cycles, const std::string& header_comment);

struct Series {
    std::string name;
    std::vector<double> values;
};

/// Self-contained SVG line chart of several series against one x axis.
std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                           const std::vector<Series>& series);

} // namespace infotherm::io
