#pragma once

// Experiment orchestration on top of the HAM solver: convergence-control
// sweeps, M-th order restarts and continuation in the coupling beta.

#include <optional>
#include <string>
#include <vector>

#include "hamqm/errors.hpp"
#include "hamqm/ham.hpp"

namespace hamqm {

struct SweepGrid {
    Real start = Real(-2);
    Real end = Real("-0.05");
    Real step = Real("0.05");
    std::vector<int> orders{1, 2, 3, 4, 5};

    /// Grid points start, start + step, ... <= end. Throws ConfigError on a
    /// nonpositive step, an empty grid, empty orders, or a point at c0 = 0.
    std::vector<Real> points() const;
};

struct SweepRow {
    Real c0;
    int order;
    Real residual;
    Real e_hat;
};

struct SweepResult {
    std::vector<SweepRow> rows;   // sorted by (c0, order)
    Real best_c0;                 // argmin of the residual at the highest order
    Real best_residual;
    int best_order = 0;
};

SweepResult sweep_c0(const HamConfig& base, const SweepGrid& grid, const WaveVector& guess);

struct IterationResult {
    HamState last;                       // state of the final pass
    std::vector<Real> pass_residuals;    // residual after each pass
    std::vector<Real> pass_energies;     // e_hat after each pass
    WaveVector guess;                    // rescaled psi_hat of the final pass
    int passes = 0;
};

/// Runs `passes` HAM solves of order M, each restarted from the previous
/// psi_hat rescaled to unit overlap with e_n. Stops early once the residual
/// drops below `target` when one is given. Throws NumericalError (lost_state)
/// when the overlap underflows.
IterationResult iterate(const HamConfig& base, int M, int passes, const WaveVector& guess,
                        const std::optional<Real>& target = std::nullopt);

struct ContinuationStage {
    Real beta;
    Real c0;
    int n_s = 40;
    int order = 10;
    int passes = 1;
    std::optional<int> digits_wanted;   // overrides the plan-wide value
};

struct ContinuationPlan {
    std::vector<ContinuationStage> stages;
    int digits_wanted = 10;             // stage target: residual < 10^(-2 digits_wanted)

    /// Throws ConfigError unless betas strictly increase and n_s never shrinks.
    void validate() const;
};

struct ContinuationRow {
    Real beta;
    Real e_hat;
    Real c0;
    int n_s;
    Real residual;
    int passes_used;
};

struct ContinuationResult {
    std::vector<ContinuationRow> rows;
    WaveVector final_guess;
};

/// Thrown when a stage misses its residual target; carries the rows of the
/// stages that finished, plus the failing stage's best effort.
class StageFailure : public NumericalError {
public:
    StageFailure(const std::string& what, std::vector<ContinuationRow> partial)
        : NumericalError(NumericalFailure::stage_failure, what), partial_(std::move(partial))
    {
    }
    const std::vector<ContinuationRow>& partial() const noexcept { return partial_; }

private:
    std::vector<ContinuationRow> partial_;
};

ContinuationResult continuation(const ContinuationPlan& plan, int n, ApplyMode mode = ApplyMode::truncated);

/// Reads a plan: a JSON array of {beta, c0, ns, order, passes[, digits_wanted]}.
/// beta and c0 may be numbers or decimal/fraction strings.
ContinuationPlan parse_plan(const std::string& json_text);

}  // namespace hamqm
