#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "hamqm/driver.hpp"
#include "hamqm/pade.hpp"
#include "hamqm/perturbation.hpp"

namespace hamqm {

/// Column-headed table of already formatted cells.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    bool operator==(const Table&) const = default;
};

/// Self-describing result of one CLI run. Numeric cells are produced by
/// format_scalar at the configured digits.
struct SolveReport {
    std::string command;
    std::map<std::string, std::string> config;   // echo of the effective options
    Table table;                                 // order,e_hat,residual for solve/iterate/perturb
    Table pade;                                  // m,value,degenerate (solve --pade only)
    std::string final_e_hat;
    double wallclock_seconds = 0.0;
    std::map<std::string, std::string> flags;    // residual_mode and similar switches
    std::map<std::string, std::string> summary;  // e.g. best c0 of a sweep

    bool operator==(const SolveReport&) const = default;
};

enum class ReportFormat { csv, json };

Table ham_table(const HamState& state, int digits);
Table pade_table(const std::vector<PadeResult>& results, int digits);
Table perturb_table(const PerturbState& state, const BasisSpec& spec, ApplyMode mode, int digits);
Table sweep_table(const SweepResult& result, int digits);
Table iteration_table(const IterationResult& result, int digits);
Table continuation_table(const std::vector<ContinuationRow>& rows, int digits);
Table oracle_table(const std::vector<Real>& eigenvalues, int digits);

nlohmann::json to_json(const SolveReport& report);
SolveReport report_from_json(const nlohmann::json& j);

void write_csv(std::ostream& os, const Table& table);

/// Writes to `path`, or stdout when path is empty or "-". CSV carries the main
/// table; a non-empty Pade table goes to the sidecar "<path>.pade.csv" (or
/// follows a blank line on stdout). Throws IoError on an unwritable target.
void emit_report(const SolveReport& report, ReportFormat format, const std::string& path);

}  // namespace hamqm
