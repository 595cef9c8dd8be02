#include "hamqm/driver.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "json.hpp"

namespace hamqm {

std::vector<Real> SweepGrid::points() const
{
    if (step <= 0) throw ConfigError("c0 grid step must be positive");
    if (end < start) throw ConfigError("c0 grid end must not precede start");
    if (orders.empty()) throw ConfigError("sweep needs at least one order");
    for (int o : orders)
        if (o < 1) throw ConfigError("sweep orders must be positive");

    // Tolerate the rounding of (end - start) / step for decimal grids.
    const Real slack = step * Real("1e-9");
    std::vector<Real> pts;
    for (Real c = start; c <= end + slack; c += step) {
        if (abs(c) <= slack) throw ConfigError("c0 grid contains 0");
        pts.push_back(c);
    }
    return pts;
}

SweepResult sweep_c0(const HamConfig& base, const SweepGrid& grid, const WaveVector& guess)
{
    const auto pts = grid.points();
    const int top = *std::max_element(grid.orders.begin(), grid.orders.end());

    HamConfig cfg = base;
    cfg.order = top;
    cfg.c0 = pts.front();
    cfg.validate();
    const BandedOperator H = build_hamiltonian(cfg.spec);

    SweepResult out;
    bool have_best = false;
    for (const Real& c0 : pts) {
        cfg.c0 = c0;
        const HamState st = run_ham(cfg, guess, H);
        for (int o : grid.orders) {
            const auto k = static_cast<std::size_t>(o);
            out.rows.push_back({c0, o, st.residual_history[k], st.e_hat_history[k]});
        }
        const Real& r = st.residual_history[static_cast<std::size_t>(top)];
        if (!have_best || r < out.best_residual) {
            out.best_c0 = c0;
            out.best_residual = r;
            have_best = true;
        }
    }
    out.best_order = top;
    std::sort(out.rows.begin(), out.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.c0 != b.c0) return a.c0 < b.c0;
        return a.order < b.order;
    });
    return out;
}

IterationResult iterate(const HamConfig& base, int M, int passes, const WaveVector& guess,
                        const std::optional<Real>& target)
{
    if (M < 1) throw ConfigError("order per pass must be >= 1");
    if (passes < 1) throw ConfigError("number of passes must be >= 1");

    HamConfig cfg = base;
    cfg.order = M;
    cfg.validate();
    const BandedOperator H = build_hamiltonian(cfg.spec);
    const auto nn = static_cast<std::size_t>(cfg.state_index);

    IterationResult out;
    out.guess = guess;
    for (int pass = 1; pass <= passes; ++pass) {
        out.last = run_ham(cfg, out.guess, H);
        const Real overlap = out.last.psi_hat[nn];
        if (abs(overlap) < active_context().epsilon())
            throw NumericalError(NumericalFailure::lost_state,
                                 "restart lost basis state " + std::to_string(cfg.state_index) + " after pass " +
                                     std::to_string(pass));
        out.guess = out.last.psi_hat;
        out.guess *= Real(1) / overlap;
        out.pass_residuals.push_back(out.last.residual_history.back());
        out.pass_energies.push_back(out.last.e_hat);
        out.passes = pass;
        if (target && out.pass_residuals.back() < *target) break;
    }
    return out;
}

void ContinuationPlan::validate() const
{
    if (stages.empty()) throw ConfigError("continuation plan has no stages");
    if (digits_wanted < 1) throw ConfigError("digits_wanted must be positive");
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto& s = stages[i];
        if (s.order < 1 || s.passes < 1) throw ConfigError("stage order and passes must be positive");
        if (s.digits_wanted && *s.digits_wanted < 1) throw ConfigError("digits_wanted must be positive");
        if (i == 0) continue;
        if (s.beta <= stages[i - 1].beta) throw ConfigError("continuation betas must increase strictly");
        if (s.n_s < stages[i - 1].n_s) throw ConfigError("continuation n_s must not shrink");
    }
}

ContinuationResult continuation(const ContinuationPlan& plan, int n, ApplyMode mode)
{
    plan.validate();
    ContinuationResult out;
    WaveVector guess;
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
        const auto& s = plan.stages[i];
        HamConfig cfg;
        cfg.state_index = n;
        cfg.c0 = s.c0;
        cfg.order = s.order;
        cfg.spec = BasisSpec{s.n_s, s.beta};
        cfg.residual_mode = mode;
        cfg.validate();

        const auto dim = static_cast<std::size_t>(cfg.spec.dim());
        guess = i == 0 ? WaveVector::unit(dim, static_cast<std::size_t>(n)) : guess.padded(dim);

        const int wanted = s.digits_wanted.value_or(plan.digits_wanted);
        const Real target = pow(Real(10), -2 * wanted);
        const IterationResult it = iterate(cfg, s.order, s.passes, guess, target);

        ContinuationRow row{s.beta, it.last.e_hat, s.c0, s.n_s, it.pass_residuals.back(), it.passes};
        out.rows.push_back(row);
        if (!(row.residual < target)) {
            throw StageFailure("stage " + std::to_string(i + 1) + " (beta = " + format_scalar(s.beta, 6) +
                                   ") ended with residual " + format_scalar(row.residual, 3) + " >= target " +
                                   format_scalar(target, 1) + " after " + std::to_string(it.passes) + " passes",
                               out.rows);
        }
        guess = it.guess;
    }
    out.final_guess = guess;
    return out;
}

namespace {

Real json_scalar(const nlohmann::json& v, const char* key)
{
    if (v.is_string()) return parse_scalar(v.get<std::string>());
    if (v.is_number_integer()) return Real(v.get<long long>());
    if (v.is_number()) {
        // Shortest round-trip text recovers the decimal literal of the file.
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
        return parse_scalar(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    }
    throw ConfigError(std::string("plan field '") + key + "' must be a number or numeric string");
}

int json_int(const nlohmann::json& stage, const char* key, std::optional<int> fallback = std::nullopt)
{
    if (!stage.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(std::string("plan stage is missing '") + key + "'");
    }
    const auto& v = stage.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("plan field '") + key + "' must be an integer");
    return v.get<int>();
}

}  // namespace

ContinuationPlan parse_plan(const std::string& json_text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("plan is not valid JSON: ") + e.what());
    }

    ContinuationPlan plan;
    const nlohmann::json* stages = &doc;
    if (doc.is_object()) {
        if (doc.contains("digits_wanted")) plan.digits_wanted = json_int(doc, "digits_wanted");
        if (!doc.contains("stages")) throw ConfigError("plan object needs a 'stages' array");
        stages = &doc.at("stages");
    }
    if (!stages->is_array()) throw ConfigError("plan must be a JSON array of stages");

    for (const auto& st : *stages) {
        if (!st.is_object()) throw ConfigError("plan stage must be an object");
        for (const char* key : {"beta", "c0"})
            if (!st.contains(key)) throw ConfigError(std::string("plan stage is missing '") + key + "'");
        ContinuationStage s;
        s.beta = json_scalar(st.at("beta"), "beta");
        s.c0 = json_scalar(st.at("c0"), "c0");
        s.n_s = json_int(st, "ns");
        s.order = json_int(st, "order");
        s.passes = json_int(st, "passes", 1);
        if (st.contains("digits_wanted")) s.digits_wanted = json_int(st, "digits_wanted");
        plan.stages.push_back(std::move(s));
    }
    plan.validate();
    return plan;
}

}  // namespace hamqm
