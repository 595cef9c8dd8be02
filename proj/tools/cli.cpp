#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hamqm/driver.hpp"
#include "hamqm/oracle.hpp"
#include "hamqm/pade.hpp"
#include "hamqm/perturbation.hpp"
#include "hamqm/report.hpp"

namespace hamqm::cli {

namespace {

using nlohmann::json;

// Reads a flat JSON object of option values. Keys use the long option names
// ("c0-start" or "c0_start"); a nested object keyed by a subcommand name
// scopes its keys to that subcommand. Flat keys go to whichever subcommand
// was selected on the command line.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(const CLI::App* root) : root_(root) {}

    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override
    {
        json doc;
        try {
            doc = json::parse(input);
        } catch (const json::parse_error& e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw CLI::ConversionError("config file must hold a JSON object");

        const CLI::App* selected = nullptr;
        if (auto subs = root_->get_subcommands(); !subs.empty()) selected = subs.front();

        std::vector<CLI::ConfigItem> items;
        for (const auto& [raw_key, value] : doc.items()) {
            const std::string key = option_name(raw_key);
            if (value.is_object()) {
                if (selected && key == selected->get_name()) collect(items, value, {key});
                continue;
            }
            CLI::ConfigItem item;
            if (selected && selected->get_option_no_throw("--" + key))
                item.parents = {selected->get_name()};
            else if (belongs_elsewhere(key, selected))
                continue;  // a shared config file may carry keys for other subcommands
            item.name = key;
            item.inputs = inputs(value);
            items.push_back(std::move(item));
        }
        return items;
    }

private:
    bool belongs_elsewhere(const std::string& key, const CLI::App* selected) const
    {
        for (const auto* sub : root_->get_subcommands([](const CLI::App*) { return true; }))
            if (sub != selected && sub->get_option_no_throw("--" + key)) return true;
        return false;
    }

    static std::string option_name(std::string key)
    {
        for (auto& c : key)
            if (c == '_') c = '-';
        return key;
    }

    static std::string scalar_text(const json& v)
    {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number()) {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
            return std::string(buf, res.ptr);
        }
        throw CLI::ConversionError("unsupported config value: " + v.dump());
    }

    static std::vector<std::string> inputs(const json& v)
    {
        if (!v.is_array()) return {scalar_text(v)};
        std::vector<std::string> out;
        for (const auto& e : v) out.push_back(scalar_text(e));
        return out;
    }

    static void collect(std::vector<CLI::ConfigItem>& items, const json& obj, const std::vector<std::string>& parents)
    {
        for (const auto& [raw_key, value] : obj.items()) {
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = option_name(raw_key);
            item.inputs = inputs(value);
            items.push_back(std::move(item));
        }
    }

    const CLI::App* root_;
};

struct Common {
    int digits = kDefaultDigits;
    std::string out;
    std::string format = "csv";
    std::string residual_mode = "truncated";
};

void add_common(CLI::App* sub, Common& c, bool with_mode = true)
{
    sub->add_option("--digits", c.digits, "Significant decimal digits of all arithmetic")
        ->capture_default_str()
        ->check(CLI::Range(kMinDigits, 100000));
    sub->add_option("--out", c.out, "Output file (default: stdout)");
    sub->add_option("--format", c.format, "Report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_mode)
        sub->add_option("--residual-mode", c.residual_mode, "Residual evaluation: truncated span or with leakage")
            ->capture_default_str()
            ->check(CLI::IsMember({"truncated", "extended"}));
}

ApplyMode mode_of(const Common& c)
{
    return c.residual_mode == "extended" ? ApplyMode::extended : ApplyMode::truncated;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolveReport base_report(const std::string& command, const Common& c)
{
    SolveReport r;
    r.command = command;
    r.config["digits"] = std::to_string(c.digits);
    r.config["format"] = c.format;
    if (!c.out.empty()) r.config["out"] = c.out;
    r.flags["residual_mode"] = c.residual_mode;
    return r;
}

void emit(const SolveReport& r, const Common& c)
{
    emit_report(r, c.format == "json" ? ReportFormat::json : ReportFormat::csv, c.out);
}

}  // namespace

int run(int argc, const char* const* argv)
{
    CLI::App app{"High-precision homotopy-analysis eigensolver for the quartic oscillator"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "", "JSON file supplying any option; command-line flags win");
    app.allow_config_extras(CLI::config_extras_mode::error);

    Common common;
    std::function<int()> action;

    // solve
    struct {
        int n = 0, order = 0, ns = 0, pade_max = -1;
        std::string beta, c0;
        bool pade = false;
    } so;
    auto* solve = app.add_subcommand("solve", "One HAM run from the basis state; CSV columns order,e_hat,residual");
    solve->add_option("--n", so.n, "Target eigenstate index")->required();
    solve->add_option("--beta", so.beta, "Quartic coupling (decimal or fraction)")->required();
    solve->add_option("--c0", so.c0, "Convergence-control parameter (nonzero)")->required();
    solve->add_option("--order", so.order, "HAM order M")->required();
    solve->add_option("--ns", so.ns, "Basis truncation N_s")->required();
    solve->add_flag("--pade", so.pade, "Also report [m,m] homotopy-Pade values (m,value,degenerate)");
    solve->add_option("--pade-max", so.pade_max, "Largest Pade half-order (default order/2)");
    add_common(solve, common);
    solve->callback([&] {
        action = [&] {
            const auto ctx = make_context(common.digits);
            PrecisionScope scope(ctx);
            const auto t0 = std::chrono::steady_clock::now();

            HamConfig cfg;
            cfg.state_index = so.n;
            cfg.c0 = parse_scalar(so.c0);
            cfg.order = so.order;
            cfg.spec = BasisSpec{so.ns, parse_scalar(so.beta)};
            cfg.residual_mode = mode_of(common);
            cfg.validate();
            const auto state = run_ham(cfg, WaveVector::unit(static_cast<std::size_t>(cfg.spec.dim()),
                                                             static_cast<std::size_t>(so.n)));

            SolveReport r = base_report("solve", common);
            r.config.insert({{"n", std::to_string(so.n)}, {"beta", so.beta}, {"c0", so.c0},
                             {"order", std::to_string(so.order)}, {"ns", std::to_string(so.ns)}});
            r.table = ham_table(state, common.digits);
            r.final_e_hat = format_scalar(state.e_hat, common.digits);
            r.flags["pade"] = so.pade ? "true" : "false";
            if (so.pade) {
                const int max_m = so.pade_max >= 0 ? so.pade_max : so.order / 2;
                const auto table = homotopy_pade_table(state.e_terms, max_m);
                r.pade = pade_table(table, common.digits);
                if (!table.empty()) r.summary["pade_value"] = format_scalar(table.back().value, common.digits);
            }
            r.wallclock_seconds = seconds_since(t0);
            emit(r, common);
            return kExitOk;
        };
    });

    // sweep
    struct {
        int n = 0, ns = 0;
        std::string beta, start, end, step;
        std::vector<int> orders{1, 2, 3, 4, 5};
    } sw;
    auto* sweep = app.add_subcommand("sweep", "Residual versus c0; CSV columns c0,order,residual,e_hat");
    sweep->add_option("--n", sw.n, "Target eigenstate index")->required();
    sweep->add_option("--beta", sw.beta, "Quartic coupling")->required();
    sweep->add_option("--ns", sw.ns, "Basis truncation N_s")->required();
    sweep->add_option("--c0-start", sw.start, "First grid point")->required();
    sweep->add_option("--c0-end", sw.end, "Last grid point (inclusive)")->required();
    sweep->add_option("--c0-step", sw.step, "Grid spacing")->required();
    sweep->add_option("--orders", sw.orders, "Orders to sample, comma separated")->delimiter(',')->capture_default_str();
    add_common(sweep, common);
    sweep->callback([&] {
        action = [&] {
            const auto ctx = make_context(common.digits);
            PrecisionScope scope(ctx);
            const auto t0 = std::chrono::steady_clock::now();

            HamConfig cfg;
            cfg.state_index = sw.n;
            cfg.spec = BasisSpec{sw.ns, parse_scalar(sw.beta)};
            cfg.residual_mode = mode_of(common);
            SweepGrid grid{parse_scalar(sw.start), parse_scalar(sw.end), parse_scalar(sw.step), sw.orders};
            const auto result = sweep_c0(cfg, grid,
                                         WaveVector::unit(static_cast<std::size_t>(cfg.spec.dim()),
                                                          static_cast<std::size_t>(sw.n)));

            SolveReport r = base_report("sweep", common);
            std::string orders;
            for (int o : sw.orders) orders += (orders.empty() ? "" : ",") + std::to_string(o);
            r.config.insert({{"n", std::to_string(sw.n)}, {"beta", sw.beta}, {"ns", std::to_string(sw.ns)},
                             {"c0_start", sw.start}, {"c0_end", sw.end}, {"c0_step", sw.step}, {"orders", orders}});
            r.table = sweep_table(result, common.digits);
            r.summary["best_c0"] = format_scalar(result.best_c0, common.digits);
            r.summary["best_residual"] = format_scalar(result.best_residual, common.digits);
            r.summary["best_order"] = std::to_string(result.best_order);
            r.wallclock_seconds = seconds_since(t0);
            emit(r, common);
            return kExitOk;
        };
    });

    // iterate
    struct {
        int n = 0, ns = 0, m = 0, passes = 0;
        std::string beta, c0;
    } it;
    auto* iter = app.add_subcommand("iterate", "M-th order HAM restarts; CSV columns pass,e_hat,residual");
    iter->add_option("--n", it.n, "Target eigenstate index")->required();
    iter->add_option("--beta", it.beta, "Quartic coupling")->required();
    iter->add_option("--c0", it.c0, "Convergence-control parameter")->required();
    iter->add_option("--ns", it.ns, "Basis truncation N_s")->required();
    iter->add_option("--m", it.m, "HAM order per pass")->required();
    iter->add_option("--passes", it.passes, "Number of passes T")->required();
    add_common(iter, common);
    iter->callback([&] {
        action = [&] {
            const auto ctx = make_context(common.digits);
            PrecisionScope scope(ctx);
            const auto t0 = std::chrono::steady_clock::now();

            HamConfig cfg;
            cfg.state_index = it.n;
            cfg.c0 = parse_scalar(it.c0);
            cfg.spec = BasisSpec{it.ns, parse_scalar(it.beta)};
            cfg.residual_mode = mode_of(common);
            cfg.order = it.m;
            cfg.validate();
            const auto result = iterate(cfg, it.m, it.passes,
                                        WaveVector::unit(static_cast<std::size_t>(cfg.spec.dim()),
                                                         static_cast<std::size_t>(it.n)));

            SolveReport r = base_report("iterate", common);
            r.config.insert({{"n", std::to_string(it.n)}, {"beta", it.beta}, {"c0", it.c0},
                             {"ns", std::to_string(it.ns)}, {"m", std::to_string(it.m)},
                             {"passes", std::to_string(it.passes)}});
            r.table = iteration_table(result, common.digits);
            r.final_e_hat = format_scalar(result.last.e_hat, common.digits);
            r.wallclock_seconds = seconds_since(t0);
            emit(r, common);
            return kExitOk;
        };
    });

    // continue
    struct {
        int n = 0, digits_wanted = 10;
        std::string plan;
    } co;
    auto* cont = app.add_subcommand("continue", "Continuation in beta; CSV columns beta,e_hat,c0,n_s,residual,passes");
    cont->add_option("--n", co.n, "Target eigenstate index")->required();
    cont->add_option("--plan", co.plan, "JSON plan: [{beta,c0,ns,order,passes[,digits_wanted]},...]")
        ->required()
        ->check(CLI::ExistingFile);
    cont->add_option("--digits-wanted", co.digits_wanted, "Stage target: residual < 10^(-2 digits_wanted)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_common(cont, common);
    cont->callback([&] {
        action = [&] {
            const auto ctx = make_context(common.digits);
            PrecisionScope scope(ctx);
            const auto t0 = std::chrono::steady_clock::now();

            std::ifstream in(co.plan);
            std::stringstream text;
            text << in.rdbuf();
            ContinuationPlan plan = parse_plan(text.str());
            if (cont->get_option("--digits-wanted")->count() > 0) plan.digits_wanted = co.digits_wanted;

            SolveReport r = base_report("continue", common);
            r.config.insert({{"n", std::to_string(co.n)}, {"plan", co.plan},
                             {"digits_wanted", std::to_string(plan.digits_wanted)}});
            try {
                const auto result = continuation(plan, co.n, mode_of(common));
                r.table = continuation_table(result.rows, common.digits);
                r.final_e_hat = format_scalar(result.rows.back().e_hat, common.digits);
            } catch (const StageFailure& e) {
                r.table = continuation_table(e.partial(), common.digits);
                r.summary["failure"] = e.what();
                r.wallclock_seconds = seconds_since(t0);
                emit(r, common);
                throw;
            }
            r.wallclock_seconds = seconds_since(t0);
            emit(r, common);
            return kExitOk;
        };
    });

    // perturb
    struct {
        int n = 0, order = 0, ns = 0;
        std::string beta;
    } pe;
    auto* pert = app.add_subcommand("perturb", "Perturbation series partial sums; CSV columns order,e_hat,residual");
    pert->add_option("--n", pe.n, "Target eigenstate index")->required();
    pert->add_option("--beta", pe.beta, "Quartic coupling")->required();
    pert->add_option("--order", pe.order, "Perturbation order M")->required();
    pert->add_option("--ns", pe.ns, "Basis truncation N_s")->required();
    add_common(pert, common);
    pert->callback([&] {
        action = [&] {
            const auto ctx = make_context(common.digits);
            PrecisionScope scope(ctx);
            const auto t0 = std::chrono::steady_clock::now();

            const BasisSpec spec{pe.ns, parse_scalar(pe.beta)};
            const auto state = perturb_solve(pe.n, spec.beta, pe.order, pe.ns);

            SolveReport r = base_report("perturb", common);
            r.config.insert({{"n", std::to_string(pe.n)}, {"beta", pe.beta}, {"order", std::to_string(pe.order)},
                             {"ns", std::to_string(pe.ns)}});
            r.table = perturb_table(state, spec, mode_of(common), common.digits);
            r.final_e_hat = format_scalar(state.e_partial.back(), common.digits);
            r.wallclock_seconds = seconds_since(t0);
            emit(r, common);
            return kExitOk;
        };
    });

    // oracle
    struct {
        int ns = 0, count = 1;
        std::string beta;
    } orc;
    auto* orac = app.add_subcommand("oracle", "Lowest eigenvalues of the truncated matrix; CSV columns index,eigenvalue");
    orac->add_option("--beta", orc.beta, "Quartic coupling")->required();
    orac->add_option("--ns", orc.ns, "Basis truncation N_s")->required();
    orac->add_option("--count", orc.count, "How many eigenvalues")->capture_default_str();
    add_common(orac, common, false);
    orac->callback([&] {
        action = [&] {
            const auto ctx = make_context(common.digits);
            PrecisionScope scope(ctx);
            const auto t0 = std::chrono::steady_clock::now();

            const auto values = diagonalize_oracle(BasisSpec{orc.ns, parse_scalar(orc.beta)}, orc.count);

            SolveReport r = base_report("oracle", common);
            r.flags.clear();
            r.config.insert({{"beta", orc.beta}, {"ns", std::to_string(orc.ns)}, {"count", std::to_string(orc.count)}});
            r.table = oracle_table(values, common.digits);
            if (!values.empty()) r.final_e_hat = format_scalar(values.front(), common.digits);
            r.wallclock_seconds = seconds_since(t0);
            emit(r, common);
            return kExitOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        return action ? action() : kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitNumerical;
    } catch (const hamqm::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace hamqm::cli
