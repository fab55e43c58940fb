#include "bootperc.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "bootperc/bounds.hpp"
#include "bootperc/dynamics.hpp"
#include "bootperc/lattice.hpp"
#include "bootperc/montecarlo.hpp"
#include "bootperc/structure.hpp"

struct bp_region {
    bootperc::Region r;
};
struct bp_config {
    bootperc::Configuration c;
};

namespace {

thread_local std::string tls_error;

template <class Fn>
bp_status wrap(Fn&& fn) {
    try {
        fn();
        return BP_OK;
    } catch (const std::invalid_argument& e) {
        tls_error = e.what();
        return BP_EINVAL;
    } catch (const std::bad_alloc&) {
        tls_error = "out of memory";
        return BP_ENOMEM;
    } catch (const std::logic_error& e) {
        tls_error = e.what();
        return BP_ESTATE;
    } catch (const std::runtime_error& e) {
        tls_error = e.what();
        return BP_ERUNTIME;
    } catch (const std::exception& e) {
        tls_error = e.what();
        return BP_EUNKNOWN;
    } catch (...) {
        tls_error = "unknown error";
        return BP_EUNKNOWN;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

bootperc::Rule to_rule(bp_rule rule) {
    require(rule.family == BP_MODIFIED || rule.family == BP_STANDARD,
            "rule family must be BP_MODIFIED or BP_STANDARD");
    bootperc::Rule r;
    r.family = rule.family == BP_MODIFIED ? bootperc::RuleFamily::Modified
                                          : bootperc::RuleFamily::Standard;
    r.delta = rule.delta;
    return r;
}

bootperc::RuleFamily to_family(int family) {
    require(family == BP_MODIFIED || family == BP_STANDARD,
            "rule family must be BP_MODIFIED or BP_STANDARD");
    return family == BP_MODIFIED ? bootperc::RuleFamily::Modified
                                 : bootperc::RuleFamily::Standard;
}

std::vector<std::int64_t> to_coords(const int64_t* v, int d, const char* what) {
    require(v != nullptr, what);
    return std::vector<std::int64_t>(v, v + d);
}

bp_estimate to_c(const bootperc::Estimate& e) {
    return {e.point, e.ci_low, e.ci_high, e.trials, e.seed};
}

bp_bound_value to_c(const bootperc::BoundValue& b) {
    return {b.divergent ? 1 : 0, b.value};
}

}  // namespace

extern "C" {

const char* bp_version(void) { return "1.0.0"; }

const char* bp_last_error(void) { return tls_error.c_str(); }

void bp_set_worker_count(int workers) { bootperc::set_worker_count(workers); }

int bp_worker_count(void) { return bootperc::worker_count(); }

bp_status bp_region_cube(int d, int delta, int64_t side, const int64_t* origin_or_null,
                         bp_region** out) {
    return wrap([&] {
        require(out != nullptr, "out must not be NULL");
        std::vector<std::int64_t> origin;
        if (origin_or_null) origin.assign(origin_or_null, origin_or_null + d);
        *out = new bp_region{bootperc::Region::cube(d, delta, side, origin)};
    });
}

bp_status bp_region_face(int d, int64_t side, const int* axes, int n_axes, bp_region** out) {
    return wrap([&] {
        require(out != nullptr, "out must not be NULL");
        require(n_axes >= 0, "n_axes must be >= 0");
        require(axes != nullptr || n_axes == 0, "axes must not be NULL");
        *out = new bp_region{bootperc::Region::face(d, side, std::vector<int>(axes, axes + n_axes))};
    });
}

void bp_region_free(bp_region* r) { delete r; }

bp_status bp_region_volume(const bp_region* r, uint64_t* out) {
    return wrap([&] {
        require(r && out, "arguments must not be NULL");
        *out = r->r.volume();
    });
}

bp_status bp_region_dim(const bp_region* r, int* ambient, int* effective) {
    return wrap([&] {
        require(r != nullptr, "region must not be NULL");
        if (ambient) *ambient = r->r.ambient_dim();
        if (effective) *effective = r->r.effective_dim();
    });
}

bp_status bp_config_new(const bp_region* r, bp_config** out) {
    return wrap([&] {
        require(r && out, "arguments must not be NULL");
        *out = new bp_config{bootperc::Configuration(r->r)};
    });
}

bp_status bp_config_full(const bp_region* r, bp_config** out) {
    return wrap([&] {
        require(r && out, "arguments must not be NULL");
        *out = new bp_config{bootperc::Configuration::full(r->r)};
    });
}

bp_status bp_config_random_fill(const bp_region* r, double p, uint64_t master_seed,
                                uint64_t stream_index, bp_config** out) {
    return wrap([&] {
        require(r && out, "arguments must not be NULL");
        *out = new bp_config{
            bootperc::random_fill(r->r, p, bootperc::RngStream(master_seed, stream_index))};
    });
}

void bp_config_free(bp_config* c) { delete c; }

bp_status bp_config_volume(const bp_config* c, uint64_t* out) {
    return wrap([&] {
        require(c && out, "arguments must not be NULL");
        *out = c->c.volume();
    });
}

bp_status bp_config_count(const bp_config* c, uint64_t* out) {
    return wrap([&] {
        require(c && out, "arguments must not be NULL");
        *out = c->c.count();
    });
}

bp_status bp_config_test(const bp_config* c, uint64_t index, int* out) {
    return wrap([&] {
        require(c && out, "arguments must not be NULL");
        require(index < c->c.volume(), "site index out of range");
        *out = c->c.test(index) ? 1 : 0;
    });
}

bp_status bp_config_set(bp_config* c, uint64_t index) {
    return wrap([&] {
        require(c != nullptr, "config must not be NULL");
        require(index < c->c.volume(), "site index out of range");
        c->c.set(index);
    });
}

bp_status bp_step(bp_rule rule, const bp_config* w, bp_config** out) {
    return wrap([&] {
        require(w && out, "arguments must not be NULL");
        *out = new bp_config{bootperc::step(to_rule(rule), w->c)};
    });
}

bp_status bp_close(bp_rule rule, const bp_config* w, bp_config** out_closure,
                   uint64_t* rounds_or_null, uint64_t* sites_touched_or_null) {
    return wrap([&] {
        require(w && out_closure, "arguments must not be NULL");
        bootperc::ClosureResult res = bootperc::close(to_rule(rule), w->c);
        if (rounds_or_null) *rounds_or_null = res.rounds;
        if (sites_touched_or_null) *sites_touched_or_null = res.sites_touched;
        *out_closure = new bp_config{std::move(res.final_set)};
    });
}

bp_status bp_is_internally_spanned(bp_rule rule, const bp_config* w, int* out) {
    return wrap([&] {
        require(w && out, "arguments must not be NULL");
        *out = bootperc::is_internally_spanned(to_rule(rule), w->c) ? 1 : 0;
    });
}

bp_status bp_exact_spanning_probability(bp_rule rule, const bp_region* r, double p,
                                        double* out) {
    return wrap([&] {
        require(r && out, "arguments must not be NULL");
        *out = bootperc::exact_spanning_probability(to_rule(rule), r->r, p);
    });
}

bp_status bp_decompose(bp_rule rule, const bp_config* w, int64_t a, uint64_t* diameter,
                       uint64_t* volume, uint64_t* merges) {
    return wrap([&] {
        require(w != nullptr, "config must not be NULL");
        bootperc::DecomposeResult res =
            bootperc::aizenman_lebowitz_decompose(to_rule(rule), w->c, a);
        if (diameter) *diameter = static_cast<uint64_t>(res.diameter);
        if (volume) *volume = res.volume;
        if (merges) *merges = res.merges;
    });
}

bp_status bp_slice_report(bp_rule rule, const bp_config* w, int axis, int64_t n,
                          int force_standard, int* dominated, int* full_flags,
                          uint64_t* slice_volumes_or_null, size_t cap, size_t* n_slices) {
    return wrap([&] {
        require(w && dominated && full_flags && n_slices, "arguments must not be NULL");
        const bootperc::Rule crule = to_rule(rule);
        bootperc::SliceDecomposition dec =
            bootperc::slice_construct(crule, w->c, axis, n, force_standard != 0);
        require(dec.slices.size() <= cap, "slice buffer too small");
        *n_slices = dec.slices.size();
        for (size_t j = 0; j < dec.slices.size(); ++j) {
            full_flags[j] = dec.full_flags[j] ? 1 : 0;
            if (slice_volumes_or_null) slice_volumes_or_null[j] = dec.slices[j].count();
        }
        const bootperc::Configuration closure = bootperc::close(crule, w->c).final_set;
        *dominated = bootperc::check_domination(dec, closure) ? 1 : 0;
    });
}

bp_status bp_H(double chi, int r, bp_bound_value* out) {
    return wrap([&] {
        require(out != nullptr, "out must not be NULL");
        bootperc::HValue h = bootperc::H(chi, r);
        out->divergent = h.divergent ? 1 : 0;
        out->value = h.value;
    });
}

bp_status bp_lemma6_bound(int ell, int m, int d, double F_hat, double chi_hat,
                          bp_bound_value* out, double* terms_or_null, size_t terms_cap,
                          size_t* terms_written_or_null) {
    return wrap([&] {
        require(out != nullptr, "out must not be NULL");
        bootperc::BoundInputs in;
        in.ell = ell;
        in.m = m;
        in.d = d;
        in.F_hat = F_hat;
        in.chi_hat = chi_hat;
        bootperc::BoundValue b = bootperc::lemma6_bound(in, terms_or_null != nullptr);
        *out = to_c(b);
        if (terms_or_null) {
            require(b.terms_by_k.size() <= terms_cap, "terms buffer too small");
            std::memcpy(terms_or_null, b.terms_by_k.data(),
                        b.terms_by_k.size() * sizeof(double));
            if (terms_written_or_null) *terms_written_or_null = b.terms_by_k.size();
        } else if (terms_written_or_null) {
            *terms_written_or_null = 0;
        }
    });
}

bp_status bp_exact_I1(uint64_t L, double p, double* out) {
    return wrap([&] {
        require(out != nullptr, "out must not be NULL");
        *out = bootperc::exact_I1(L, p);
    });
}

bp_status bp_iter_exp(int n, double x, bp_iter_exp_result* out) {
    return wrap([&] {
        require(out != nullptr, "out must not be NULL");
        bootperc::IterExp r = bootperc::iter_exp(n, x);
        out->saturated = r.saturated ? 1 : 0;
        out->value = r.value;
        out->log2_value = r.log2_value;
        out->layers_above = r.layers_above;
    });
}

double bp_threshold_constant(void) { return bootperc::threshold_constant(); }

bp_status bp_estimate_I(bp_rule rule, const bp_region* r, double p, uint64_t trials,
                        uint64_t seed, bp_estimate* out) {
    return wrap([&] {
        require(r && out, "arguments must not be NULL");
        bootperc::TrialPlan plan{to_rule(rule), r->r, p, trials, seed};
        *out = to_c(bootperc::estimate_I(plan));
    });
}

bp_status bp_estimate_f(bp_rule rule, const bp_region* r, double p, uint64_t trials,
                        uint64_t seed, const int64_t* x, const int64_t* y, bp_estimate* out) {
    return wrap([&] {
        require(r && out, "arguments must not be NULL");
        const int d = r->r.ambient_dim();
        bootperc::TrialPlan plan{to_rule(rule), r->r, p, trials, seed};
        *out = to_c(bootperc::estimate_f(plan, to_coords(x, d, "x must not be NULL"),
                                         to_coords(y, d, "y must not be NULL")));
    });
}

bp_status bp_estimate_chi(bp_rule rule, int delta, uint64_t n, double p, uint64_t trials,
                          uint64_t seed, bp_estimate* out) {
    return wrap([&] {
        require(out != nullptr, "out must not be NULL");
        *out = to_c(bootperc::estimate_chi(to_rule(rule), delta, n, p, trials, seed));
    });
}

bp_status bp_estimate_F(bp_rule rule, int delta, uint64_t m, uint64_t n, double p,
                        uint64_t trials, uint64_t seed, bp_estimate* out) {
    return wrap([&] {
        require(out != nullptr, "out must not be NULL");
        *out = to_c(bootperc::estimate_F(to_rule(rule), delta, m, n, p, trials, seed));
    });
}

bp_status bp_bisect_p_alpha(bp_rule rule, const bp_region* r, double alpha, double tol,
                            uint64_t trials_per_probe, uint64_t seed, double* out_p,
                            bp_bisect_stats* stats_or_null) {
    return wrap([&] {
        require(r && out_p, "arguments must not be NULL");
        bootperc::BisectDiagnostics diag;
        *out_p = bootperc::bisect_p_alpha(to_rule(rule), r->r, alpha, tol, trials_per_probe,
                                          seed, &diag);
        if (stats_or_null) {
            stats_or_null->probes = diag.probes.size();
            stats_or_null->total_trials = diag.total_trials;
            stats_or_null->capped = diag.capped ? 1 : 0;
        }
    });
}

bp_status bp_sweep_scaling(bp_rule rule, int d, const uint64_t* L_list, size_t n_L,
                           const double* alphas, size_t n_alpha, uint64_t trials,
                           uint64_t seed, bp_scaling_point* out_rows,
                           double* out_levels_or_null) {
    return wrap([&] {
        require(out_rows != nullptr, "out_rows must not be NULL");
        require(L_list != nullptr || n_L == 0, "L_list must not be NULL");
        require(alphas != nullptr || n_alpha == 0, "alphas must not be NULL");
        std::vector<std::uint64_t> Ls(L_list, L_list + n_L);
        std::vector<double> levels(alphas, alphas + n_alpha);
        std::vector<bootperc::ScalingPoint> rows =
            bootperc::sweep_scaling(to_rule(rule), d, Ls, levels, trials, seed);
        for (size_t i = 0; i < rows.size(); ++i) {
            out_rows[i] = {rows[i].L, rows[i].p_half, rows[i].scaled, rows[i].width};
            if (out_levels_or_null)
                for (size_t j = 0; j < rows[i].p_levels.size(); ++j)
                    out_levels_or_null[i * n_alpha + j] = rows[i].p_levels[j];
        }
    });
}

bp_status bp_bound_vs_estimate(int family, int d, int m, int n, double p, const int64_t* x,
                               const int64_t* y, uint64_t trials, uint64_t seed,
                               bp_bound_report* out) {
    return wrap([&] {
        require(out != nullptr, "out must not be NULL");
        bootperc::BoundReport rep = bootperc::bound_vs_estimate(
            to_family(family), d, m, n, p, to_coords(x, d, "x must not be NULL"),
            to_coords(y, d, "y must not be NULL"), trials, seed);
        out->d = rep.d;
        out->m = rep.m;
        out->n = rep.n;
        out->ell = rep.ell;
        out->p = rep.p;
        out->F_hat = to_c(rep.F_hat);
        out->chi_hat = to_c(rep.chi_hat);
        out->f_hat = to_c(rep.f_hat);
        out->bound = to_c(rep.bound);
        out->bound_conservative = to_c(rep.bound_conservative);
        out->vacuous = rep.vacuous ? 1 : 0;
        out->holds = rep.holds ? 1 : 0;
        out->holds_conservative = rep.holds_conservative ? 1 : 0;
    });
}

}  // extern "C"
