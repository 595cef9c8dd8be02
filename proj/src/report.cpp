#include "hamqm/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace hamqm {

Table ham_table(const HamState& state, int digits)
{
    Table t{{"order", "e_hat", "residual"}, {}};
    for (std::size_t k = 0; k < state.e_hat_history.size(); ++k)
        t.rows.push_back({std::to_string(k), format_scalar(state.e_hat_history[k], digits),
                          format_scalar(state.residual_history[k], digits)});
    return t;
}

Table pade_table(const std::vector<PadeResult>& results, int digits)
{
    Table t{{"m", "value", "degenerate"}, {}};
    for (const auto& r : results)
        t.rows.push_back({std::to_string(r.m), format_scalar(r.value, digits), r.degenerate ? "1" : "0"});
    return t;
}

Table perturb_table(const PerturbState& state, const BasisSpec& spec, ApplyMode mode, int digits)
{
    Table t{{"order", "e_hat", "residual"}, {}};
    for (int m = 0; m <= state.order(); ++m)
        t.rows.push_back({std::to_string(m), format_scalar(state.e_partial[static_cast<std::size_t>(m)], digits),
                          format_scalar(perturbative_residual(state, m, spec, mode), digits)});
    return t;
}

Table sweep_table(const SweepResult& result, int digits)
{
    Table t{{"c0", "order", "residual", "e_hat"}, {}};
    for (const auto& r : result.rows)
        t.rows.push_back({format_scalar(r.c0, digits), std::to_string(r.order), format_scalar(r.residual, digits),
                          format_scalar(r.e_hat, digits)});
    return t;
}

Table iteration_table(const IterationResult& result, int digits)
{
    Table t{{"pass", "e_hat", "residual"}, {}};
    for (std::size_t i = 0; i < result.pass_residuals.size(); ++i)
        t.rows.push_back({std::to_string(i + 1), format_scalar(result.pass_energies[i], digits),
                          format_scalar(result.pass_residuals[i], digits)});
    return t;
}

Table continuation_table(const std::vector<ContinuationRow>& rows, int digits)
{
    Table t{{"beta", "e_hat", "c0", "n_s", "residual", "passes"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({format_scalar(r.beta, digits), format_scalar(r.e_hat, digits), format_scalar(r.c0, digits),
                          std::to_string(r.n_s), format_scalar(r.residual, digits), std::to_string(r.passes_used)});
    return t;
}

Table oracle_table(const std::vector<Real>& eigenvalues, int digits)
{
    Table t{{"index", "eigenvalue"}, {}};
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        t.rows.push_back({std::to_string(i), format_scalar(eigenvalues[i], digits)});
    return t;
}

namespace {

nlohmann::json table_json(const Table& t)
{
    return {{"columns", t.columns}, {"rows", t.rows}};
}

Table table_from(const nlohmann::json& j)
{
    Table t;
    j.at("columns").get_to(t.columns);
    j.at("rows").get_to(t.rows);
    return t;
}

}  // namespace

nlohmann::json to_json(const SolveReport& r)
{
    nlohmann::json j;
    j["command"] = r.command;
    j["config"] = r.config;
    j["table"] = table_json(r.table);
    j["pade"] = table_json(r.pade);
    j["final_e_hat"] = r.final_e_hat;
    j["wallclock_seconds"] = r.wallclock_seconds;
    j["flags"] = r.flags;
    j["summary"] = r.summary;
    return j;
}

SolveReport report_from_json(const nlohmann::json& j)
{
    SolveReport r;
    j.at("command").get_to(r.command);
    j.at("config").get_to(r.config);
    r.table = table_from(j.at("table"));
    r.pade = table_from(j.at("pade"));
    j.at("final_e_hat").get_to(r.final_e_hat);
    j.at("wallclock_seconds").get_to(r.wallclock_seconds);
    j.at("flags").get_to(r.flags);
    j.at("summary").get_to(r.summary);
    return r;
}

void write_csv(std::ostream& os, const Table& table)
{
    auto line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    line(table.columns);
    for (const auto& row : table.rows) line(row);
}

namespace {

void write_to(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace

void emit_report(const SolveReport& report, ReportFormat format, const std::string& path)
{
    const bool to_stdout = path.empty() || path == "-";

    if (format == ReportFormat::json) {
        const std::string text = to_json(report).dump(2) + "\n";
        if (to_stdout)
            std::cout << text;
        else
            write_to(path, text);
        return;
    }

    std::ostringstream main;
    write_csv(main, report.table);
    std::ostringstream pade;
    if (!report.pade.rows.empty()) write_csv(pade, report.pade);

    if (to_stdout) {
        std::cout << main.str();
        if (!report.pade.rows.empty()) std::cout << '\n' << pade.str();
        std::cout.flush();
        return;
    }
    write_to(path, main.str());
    if (!report.pade.rows.empty()) write_to(path + ".pade.csv", pade.str());
}

}  // namespace hamqm
