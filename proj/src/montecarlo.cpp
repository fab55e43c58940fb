#include "bootperc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bootperc/structure.hpp"

namespace bootperc {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::atomic<int> g_workers{1};

struct Accum {
    std::uint64_t sum = 0;
    unsigned __int128 sq = 0;
};

// Runs fn(trial) for every trial index and accumulates the integer results.
// Workers take contiguous index ranges; integer sums make the reduction exact,
// so the outcome is identical for any worker count.
template <class Fn>
Accum run_trials(std::uint64_t trials, bool second_moment, Fn&& fn) {
    int workers = g_workers.load(std::memory_order_relaxed);
    if (workers < 1) workers = 1;
    if (static_cast<std::uint64_t>(workers) > trials)
        workers = static_cast<int>(trials);

    if (workers <= 1) {
        Accum a;
        for (std::uint64_t i = 0; i < trials; ++i) {
            const std::uint64_t v = fn(i);
            a.sum += v;
            if (second_moment) a.sq += static_cast<unsigned __int128>(v) * v;
        }
        return a;
    }

    std::vector<Accum> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            const std::uint64_t lo = chunk * t;
            const std::uint64_t hi = std::min(trials, lo + chunk);
            try {
                Accum a;
                for (std::uint64_t i = lo; i < hi; ++i) {
                    const std::uint64_t v = fn(i);
                    a.sum += v;
                    if (second_moment) a.sq += static_cast<unsigned __int128>(v) * v;
                }
                parts[t] = a;
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    Accum total;
    for (const auto& a : parts) {
        total.sum += a.sum;
        total.sq += a.sq;
    }
    return total;
}

Estimate wilson(std::uint64_t hits, std::uint64_t n, std::uint64_t seed, double z) {
    const double nn = static_cast<double>(n);
    const double ph = static_cast<double>(hits) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (ph + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
    Estimate e;
    e.point = ph;
    e.ci_low = std::min(ph, std::max(0.0, center - half));
    e.ci_high = std::max(ph, std::min(1.0, center + half));
    e.trials = n;
    e.seed = seed;
    return e;
}

double t_quantile_975(std::uint64_t df) {
    static constexpr double table[] = {
        12.70620474, 4.30265273, 3.18244631, 2.77644511, 2.57058184,
        2.44691185,  2.36462425, 2.30600414, 2.26215716, 2.22813885,
        2.20098516,  2.17881283, 2.16036866, 2.14478669, 2.13144955,
        2.11990530,  2.10981558, 2.10092204, 2.09302405, 2.08596345,
        2.07961384,  2.07387307, 2.06865761, 2.06389856, 2.05953855,
        2.05552944,  2.05183052, 2.04840714, 2.04522964, 2.04227246,
    };
    if (df == 0) return std::numeric_limits<double>::infinity();
    if (df <= 30) return table[df - 1];
    const double z = kZ95, z3 = z * z * z, z5 = z3 * z * z;
    const double n = static_cast<double>(df);
    return z + (z3 + z) / (4.0 * n) + (5.0 * z5 + 16.0 * z3 + 3.0 * z) / (96.0 * n * n);
}

Estimate t_interval(const Accum& acc, std::uint64_t n, std::uint64_t seed) {
    Estimate e;
    e.trials = n;
    e.seed = seed;
    const double mean = static_cast<double>(acc.sum) / static_cast<double>(n);
    e.point = mean;
    if (n < 2) {
        e.ci_low = e.ci_high = mean;
        return e;
    }
    // n*sq - sum^2 is exact in 128-bit arithmetic and nonnegative.
    const unsigned __int128 s1 = acc.sum;
    const unsigned __int128 numer = acc.sq * n - s1 * s1;
    const long double var =
        static_cast<long double>(numer) / (static_cast<long double>(n) * (n - 1));
    const double half = t_quantile_975(n - 1) *
                        std::sqrt(static_cast<double>(var) / static_cast<double>(n));
    e.ci_low = std::max(0.0, mean - half);
    e.ci_high = mean + half;
    return e;
}

void validate_plan(const TrialPlan& plan) {
    if (plan.trials == 0) throw std::invalid_argument("trials must be >= 1");
    if (!(plan.p >= 0.0 && plan.p <= 1.0))
        throw std::invalid_argument("p must lie in [0,1]");
    if (plan.region.volume() == 0) throw std::invalid_argument("region is empty");
}

std::uint64_t hits_of(const Estimate& e) {
    return static_cast<std::uint64_t>(std::llround(e.point * static_cast<double>(e.trials)));
}

}  // namespace

void set_worker_count(int workers) {
    g_workers.store(std::clamp(workers, 1, 256), std::memory_order_relaxed);
}

int worker_count() { return g_workers.load(std::memory_order_relaxed); }

Estimate estimate_I(const TrialPlan& plan) {
    validate_plan(plan);
    const Accum acc = run_trials(plan.trials, false, [&](std::uint64_t i) -> std::uint64_t {
        const Configuration w = random_fill(plan.region, plan.p, RngStream(plan.master_seed, i));
        return is_internally_spanned(plan.rule, w) ? 1u : 0u;
    });
    return wilson(acc.sum, plan.trials, plan.master_seed, kZ95);
}

Estimate estimate_f(const TrialPlan& plan, const std::vector<std::int64_t>& x,
                    const std::vector<std::int64_t>& y) {
    validate_plan(plan);
    if (!plan.region.contains(x) || !plan.region.contains(y))
        throw std::invalid_argument("estimate_f: site out of region");
    const Accum acc = run_trials(plan.trials, false, [&](std::uint64_t i) -> std::uint64_t {
        const Configuration w = random_fill(plan.region, plan.p, RngStream(plan.master_seed, i));
        return crossing_in_closure(plan.rule, w, x, y) ? 1u : 0u;
    });
    return wilson(acc.sum, plan.trials, plan.master_seed, kZ95);
}

Estimate estimate_chi(const Rule& rule, int delta, std::uint64_t n, double p,
                      std::uint64_t trials, std::uint64_t seed) {
    const Region region = Region::cube(delta, delta, static_cast<std::int64_t>(2 * n + 1));
    TrialPlan plan{rule, region, p, trials, seed};
    validate_plan(plan);
    const Accum acc = run_trials(trials, true, [&](std::uint64_t i) -> std::uint64_t {
        const Configuration w = random_fill(region, p, RngStream(seed, i));
        return center_component_volume(rule, w);
    });
    return t_interval(acc, trials, seed);
}

Estimate estimate_F(const Rule& rule, int delta, std::uint64_t m, std::uint64_t n,
                    double p, std::uint64_t trials, std::uint64_t seed) {
    if (n > m) throw std::invalid_argument("estimate_F: n must be <= m");
    const Region region = Region::cube(delta, delta, static_cast<std::int64_t>(m));
    TrialPlan plan{rule, region, p, trials, seed};
    validate_plan(plan);
    const auto diam = static_cast<std::int64_t>(n);
    const Accum acc = run_trials(trials, false, [&](std::uint64_t i) -> std::uint64_t {
        const Configuration w = random_fill(region, p, RngStream(seed, i));
        return has_component_of_diameter(rule, w, diam) ? 1u : 0u;
    });
    return wilson(acc.sum, trials, seed, kZ95);
}

double bisect_p_alpha(const Rule& rule, const Region& region, double alpha, double tol,
                      std::uint64_t trials_per_probe, std::uint64_t seed,
                      BisectDiagnostics* diag) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("bisect_p_alpha: alpha must lie in (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("bisect_p_alpha: tol must be > 0");
    if (trials_per_probe == 0)
        throw std::invalid_argument("bisect_p_alpha: trials_per_probe must be >= 1");

    // Probe decisions use a 3-sigma interval so a bracketing move is made only
    // on strong evidence; a straddling probe doubles its trials instead, and
    // hitting the doubling cap accepts the midpoint as indistinguishable.
    constexpr double kDecisionZ = 3.0;
    constexpr std::uint64_t kCapMultiplier = 8;
    constexpr int kMaxIters = 200;

    BisectDiagnostics local;
    BisectDiagnostics& dg = diag ? *diag : local;
    dg = BisectDiagnostics{};

    double lo = 0.0, hi = 1.0;
    std::uint64_t probe_no = 0;
    for (int iter = 0; iter < kMaxIters; ++iter) {
        if (hi - lo <= tol) return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        std::uint64_t t = trials_per_probe;
        for (;;) {
            TrialPlan plan{rule, region, mid, t, RngStream::derive_seed(seed, probe_no++)};
            const Estimate est = estimate_I(plan);
            const Estimate dec = wilson(hits_of(est), t, plan.master_seed, kDecisionZ);
            dg.probes.push_back({mid, t, est.point, dec.ci_low, dec.ci_high});
            dg.total_trials += t;
            if (dec.ci_high < alpha) {
                lo = mid;
                break;
            }
            if (dec.ci_low > alpha) {
                hi = mid;
                break;
            }
            if (t >= trials_per_probe * kCapMultiplier) {
                dg.capped = true;
                return mid;
            }
            t *= 2;
        }
    }
    std::ostringstream msg;
    msg << "bisect_p_alpha: no convergence after " << kMaxIters << " iterations; interval ["
        << lo << ", " << hi << "], probes=" << dg.probes.size()
        << ", trials=" << dg.total_trials;
    throw std::runtime_error(msg.str());
}

std::vector<ScalingPoint> sweep_scaling(const Rule& rule, int d,
                                        const std::vector<std::uint64_t>& L_list,
                                        const std::vector<double>& alpha_levels,
                                        std::uint64_t trials, std::uint64_t seed) {
    if (d < 1 || d > 3) throw std::invalid_argument("sweep_scaling: d must be 1, 2, or 3");
    if (trials == 0) throw std::invalid_argument("sweep_scaling: trials must be >= 1");
    for (double a : alpha_levels)
        if (!(a > 0.0 && a < 1.0))
            throw std::invalid_argument("sweep_scaling: alpha levels must lie in (0,1)");
    const std::uint64_t volume_cap = (d == 3) ? (std::uint64_t(1) << 30) : (std::uint64_t(1) << 31);
    for (std::uint64_t L : L_list) {
        if (L < 2) throw std::invalid_argument("sweep_scaling: L must be >= 2");
        unsigned __int128 vol = 1;
        for (int i = 0; i < d; ++i) vol *= L;
        if (vol > volume_cap)
            throw std::invalid_argument("sweep_scaling: L exceeds the volume cap");
    }

    std::vector<double> levels(alpha_levels);
    std::sort(levels.begin(), levels.end());

    constexpr double kTol = 1e-3;
    std::vector<ScalingPoint> out;
    out.reserve(L_list.size());
    for (std::size_t idx = 0; idx < L_list.size(); ++idx) {
        const std::uint64_t L = L_list[idx];
        const Region region = Region::cube(d, d, static_cast<std::int64_t>(L));
        const std::uint64_t purpose = static_cast<std::uint64_t>(idx) * 16;

        ScalingPoint pt;
        pt.L = L;
        pt.p_half = bisect_p_alpha(rule, region, 0.5, kTol, trials,
                                   RngStream::derive_seed(seed, purpose));
        pt.p_levels.reserve(levels.size());
        for (std::size_t j = 0; j < levels.size(); ++j)
            pt.p_levels.push_back(bisect_p_alpha(rule, region, levels[j], kTol, trials,
                                                 RngStream::derive_seed(seed, purpose + 1 + j)));
        pt.width = levels.size() >= 2 ? pt.p_levels.back() - pt.p_levels.front() : 0.0;
        const double Ld = static_cast<double>(L);
        pt.scaled = (d == 1)   ? pt.p_half * Ld
                    : (d == 2) ? pt.p_half * std::log(Ld)
                               : pt.p_half * std::log(std::log(Ld));
        out.push_back(std::move(pt));
    }
    return out;
}

BoundReport bound_vs_estimate(RuleFamily family, int d, int m, int n, double p,
                              const std::vector<std::int64_t>& x,
                              const std::vector<std::int64_t>& y,
                              std::uint64_t trials, std::uint64_t seed) {
    if (family != RuleFamily::Modified)
        throw std::invalid_argument("bound_vs_estimate: modified rule only");
    if (d < 3) throw std::invalid_argument("bound_vs_estimate: d must be >= 3");
    if (m < 1) throw std::invalid_argument("bound_vs_estimate: m must be >= 1");
    if (n < 0 || n > m) throw std::invalid_argument("bound_vs_estimate: n must lie in [0,m]");

    const Region region = Region::cube(d, d, m);
    if (!region.contains(x) || !region.contains(y))
        throw std::invalid_argument("bound_vs_estimate: site out of region");
    int ell = 0;
    for (int i = 0; i < d; ++i)
        ell = std::max(ell, static_cast<int>(std::llabs(x[i] - y[i])));

    BoundReport r;
    r.d = d;
    r.m = m;
    r.n = n;
    r.ell = ell;
    r.p = p;
    const Rule slice_rule{family, d - 1};
    r.F_hat = estimate_F(slice_rule, d - 1, static_cast<std::uint64_t>(m),
                         static_cast<std::uint64_t>(n), p, trials,
                         RngStream::derive_seed(seed, 1));
    r.chi_hat = estimate_chi(slice_rule, d - 1, static_cast<std::uint64_t>(n), p, trials,
                             RngStream::derive_seed(seed, 2));
    TrialPlan plan{Rule{family, d}, region, p, trials, RngStream::derive_seed(seed, 3)};
    r.f_hat = estimate_f(plan, x, y);

    BoundInputs bi;
    bi.ell = ell;
    bi.m = m;
    bi.d = d;
    bi.F_hat = std::clamp(r.F_hat.point, 0.0, 1.0);
    bi.chi_hat = std::max(0.0, r.chi_hat.point);
    r.bound = lemma6_bound(bi, true);
    bi.F_hat = std::clamp(r.F_hat.ci_high, 0.0, 1.0);
    bi.chi_hat = std::max(0.0, r.chi_hat.ci_high);
    r.bound_conservative = lemma6_bound(bi, true);

    r.vacuous = r.bound.divergent || r.bound.value >= 1.0;
    r.holds = r.f_hat.ci_high <= r.bound.value;
    r.holds_conservative = r.f_hat.ci_high <= r.bound_conservative.value;
    return r;
}

}  // namespace bootperc
