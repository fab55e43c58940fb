#pragma once

#include <cstdint>
#include <vector>

#include "bootperc/bounds.hpp"
#include "bootperc/dynamics.hpp"
#include "bootperc/lattice.hpp"

namespace bootperc {

struct TrialPlan {
    Rule rule;
    Region region;
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
};

// Point estimate with a 95% interval: Wilson for proportions, Student-t for
// means. Deterministic in its inputs regardless of worker count.
struct Estimate {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct ScalingPoint {
    std::uint64_t L = 0;
    double p_half = 0.0;
    double scaled = 0.0;          // p_half * L (d=1), * log L (d=2), * log log L (d=3)
    double width = 0.0;           // p at highest alpha level minus p at lowest
    std::vector<double> p_levels; // per requested alpha level, ascending alpha
};

struct ProbeRecord {
    double p = 0.0;
    std::uint64_t trials = 0;
    double point = 0.0;
    double dec_low = 0.0;   // decision interval (wider than 95%)
    double dec_high = 0.0;
};

struct BisectDiagnostics {
    std::vector<ProbeRecord> probes;
    std::uint64_t total_trials = 0;
    bool capped = false;  // accepted a probe at the trial-doubling cap
};

struct BoundReport {
    int d = 0;
    int m = 0;
    int n = 0;
    int ell = 0;
    double p = 0.0;
    Estimate F_hat;
    Estimate chi_hat;
    Estimate f_hat;
    BoundValue bound;               // evaluated at the point estimates
    BoundValue bound_conservative;  // evaluated at the upper confidence limits
    bool vacuous = false;           // bound divergent or clamped to 1
    bool holds = false;             // f_hat upper CI <= bound
    bool holds_conservative = false;
};

// Trials run on this many workers; results are identical for any setting.
void set_worker_count(int workers);
int worker_count();

Estimate estimate_I(const TrialPlan& plan);
Estimate estimate_f(const TrialPlan& plan, const std::vector<std::int64_t>& x,
                    const std::vector<std::int64_t>& y);
Estimate estimate_chi(const Rule& rule, int delta, std::uint64_t n, double p,
                      std::uint64_t trials, std::uint64_t seed);
Estimate estimate_F(const Rule& rule, int delta, std::uint64_t m, std::uint64_t n,
                    double p, std::uint64_t trials, std::uint64_t seed);

double bisect_p_alpha(const Rule& rule, const Region& region, double alpha, double tol,
                      std::uint64_t trials_per_probe, std::uint64_t seed,
                      BisectDiagnostics* diag = nullptr);

std::vector<ScalingPoint> sweep_scaling(const Rule& rule, int d,
                                        const std::vector<std::uint64_t>& L_list,
                                        const std::vector<double>& alpha_levels,
                                        std::uint64_t trials, std::uint64_t seed);

BoundReport bound_vs_estimate(RuleFamily family, int d, int m, int n, double p,
                              const std::vector<std::int64_t>& x,
                              const std::vector<std::int64_t>& y,
                              std::uint64_t trials, std::uint64_t seed);

}  // namespace bootperc
