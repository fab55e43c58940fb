// Command-line front end. Links only the C interface; every subcommand wraps
// one library entry point and emits JSON (single results) or CSV (sweeps).
#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bootperc.h"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

int fail_status(bp_status st) {
    std::cerr << "error: " << bp_last_error() << "\n";
    return st == BP_EINVAL ? 2 : 1;
}

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int emit(const json& doc, const std::string& output) {
    const std::string text = doc.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << output << "\n";
        return 1;
    }
    f << text;
    return 0;
}

int emit_text(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << output << "\n";
        return 1;
    }
    f << text;
    return 0;
}

json estimate_json(const bp_estimate& e) {
    return json{{"point", e.point},
                {"ci_low", e.ci_low},
                {"ci_high", e.ci_high},
                {"trials", e.trials}};
}

json bound_json(const bp_bound_value& b) {
    return json{{"divergent", b.divergent != 0}, {"value", b.value}};
}

struct RegionGuard {
    bp_region* r = nullptr;
    ~RegionGuard() { bp_region_free(r); }
};

struct ConfigGuard {
    bp_config* c = nullptr;
    ~ConfigGuard() { bp_config_free(c); }
};

// Shared flags. Every subcommand gets its own copy; seed defaults from
// entropy at run time when the flag is absent and is always echoed back.
struct Common {
    std::string rule = "modified";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 1;
    std::string output;

    void attach(CLI::App* cmd) {
        cmd->add_option("--rule", rule, "update rule: modified or standard")
            ->check(CLI::IsMember({"modified", "standard"}))
            ->capture_default_str();
        cmd->add_option("--seed", seed, "master seed (default: from entropy)")
            ->each([this](const std::string&) { seed_given = true; });
        cmd->add_option("--threads", threads, "worker count (never affects results)")
            ->check(CLI::Range(1, 256))
            ->capture_default_str();
        cmd->add_option("-o,--output", output, "write output to this path instead of stdout");
    }

    bp_rule make_rule(int delta) const {
        return {rule == "standard" ? BP_STANDARD : BP_MODIFIED, delta};
    }

    std::uint64_t resolve_seed() {
        if (!seed_given) seed = entropy_seed();
        return seed;
    }
};

json params_head(const Common& c) {
    return json{{"rule", c.rule}};
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"bootstrap percolation laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read option defaults from an INI file");
    app.set_version_flag("--version", std::string(bp_version()));

    // simulate
    auto* c_sim = app.add_subcommand("simulate", "estimate the spanning probability of Q^d(L)");
    Common o_sim;
    int sim_d = 2, sim_delta = -1;
    std::int64_t sim_L = 8;
    double sim_p = 0.1;
    std::uint64_t sim_trials = 10000;
    o_sim.attach(c_sim);
    c_sim->add_option("-d,--dim", sim_d, "ambient dimension")->capture_default_str();
    c_sim->add_option("--delta", sim_delta, "constrained axes (default: d)");
    c_sim->add_option("-L,--side", sim_L, "cube side")->capture_default_str();
    c_sim->add_option("-p,--prob", sim_p, "occupation probability")->capture_default_str();
    c_sim->add_option("--trials", sim_trials, "trial count")->capture_default_str();

    // crossing
    auto* c_cross = app.add_subcommand("crossing", "estimate the two-site connection probability");
    Common o_cross;
    int cross_d = 2;
    std::int64_t cross_L = 8;
    double cross_p = 0.1;
    std::uint64_t cross_trials = 10000;
    std::vector<std::int64_t> cross_x, cross_y;
    o_cross.attach(c_cross);
    c_cross->add_option("-d,--dim", cross_d, "ambient dimension")->capture_default_str();
    c_cross->add_option("-L,--side", cross_L, "cube side")->capture_default_str();
    c_cross->add_option("-p,--prob", cross_p, "occupation probability")->capture_default_str();
    c_cross->add_option("--trials", cross_trials, "trial count")->capture_default_str();
    c_cross->add_option("--x", cross_x, "first site (default: all-ones corner)");
    c_cross->add_option("--y", cross_y, "second site (default: opposite corner)");

    // chi
    auto* c_chi = app.add_subcommand("chi", "estimate the mean center component volume on Q^delta(2n+1)");
    Common o_chi;
    int chi_delta = 2;
    std::uint64_t chi_n = 4, chi_trials = 10000;
    double chi_p = 0.1;
    o_chi.attach(c_chi);
    c_chi->add_option("--delta", chi_delta, "dimension of the cube")->capture_default_str();
    c_chi->add_option("-n,--radius", chi_n, "cube radius (side 2n+1)")->capture_default_str();
    c_chi->add_option("-p,--prob", chi_p, "occupation probability")->capture_default_str();
    c_chi->add_option("--trials", chi_trials, "trial count")->capture_default_str();

    // bigcomp
    auto* c_big = app.add_subcommand("bigcomp", "estimate the probability of a closure component of diameter >= n");
    Common o_big;
    int big_delta = 2;
    std::uint64_t big_m = 8, big_n = 4, big_trials = 10000;
    double big_p = 0.1;
    o_big.attach(c_big);
    c_big->add_option("--delta", big_delta, "dimension of the cube")->capture_default_str();
    c_big->add_option("-m,--side", big_m, "cube side")->capture_default_str();
    c_big->add_option("-n,--diameter", big_n, "diameter threshold")->capture_default_str();
    c_big->add_option("-p,--prob", big_p, "occupation probability")->capture_default_str();
    c_big->add_option("--trials", big_trials, "trial count")->capture_default_str();

    // threshold
    auto* c_thr = app.add_subcommand("threshold", "bisect for p with spanning probability alpha");
    Common o_thr;
    int thr_d = 2, thr_delta = -1;
    std::int64_t thr_L = 32;
    double thr_alpha = 0.5, thr_tol = 1e-3;
    std::uint64_t thr_trials = 200;
    o_thr.attach(c_thr);
    c_thr->add_option("-d,--dim", thr_d, "ambient dimension")->capture_default_str();
    c_thr->add_option("--delta", thr_delta, "constrained axes (default: d)");
    c_thr->add_option("-L,--side", thr_L, "cube side")->capture_default_str();
    c_thr->add_option("--alpha", thr_alpha, "target spanning probability")->capture_default_str();
    c_thr->add_option("--tol", thr_tol, "interval width tolerance")->capture_default_str();
    c_thr->add_option("--trials", thr_trials, "trials per probe")->capture_default_str();

    // sweep
    auto* c_swp = app.add_subcommand("sweep", "finite-size scaling sweep (CSV output)");
    Common o_swp;
    int swp_d = 2;
    std::vector<std::uint64_t> swp_L{64, 128, 256};
    std::vector<double> swp_alphas{0.1, 0.9};
    std::uint64_t swp_trials = 200;
    o_swp.attach(c_swp);
    c_swp->add_option("-d,--dim", swp_d, "ambient dimension")->capture_default_str();
    c_swp->add_option("-L,--sides", swp_L, "cube sides to sweep")->capture_default_str();
    c_swp->add_option("--alphas", swp_alphas, "extra alpha levels for the width column")
        ->capture_default_str();
    c_swp->add_option("--trials", swp_trials, "trials per bisection probe")->capture_default_str();

    // bound
    auto* c_bnd = app.add_subcommand("bound", "compare the composition-sum bound against a crossing estimate");
    Common o_bnd;
    int bnd_d = 3, bnd_m = 6, bnd_n = 2;
    double bnd_p = 0.05;
    std::uint64_t bnd_trials = 100000;
    std::vector<std::int64_t> bnd_x, bnd_y;
    o_bnd.attach(c_bnd);
    c_bnd->add_option("-d,--dim", bnd_d, "ambient dimension (>= 3)")->capture_default_str();
    c_bnd->add_option("-m,--side", bnd_m, "cube side")->capture_default_str();
    c_bnd->add_option("-n,--diameter", bnd_n, "slice diameter threshold")->capture_default_str();
    c_bnd->add_option("-p,--prob", bnd_p, "occupation probability")->capture_default_str();
    c_bnd->add_option("--trials", bnd_trials, "trial count per estimator")->capture_default_str();
    c_bnd->add_option("--x", bnd_x, "first site (default: all-ones corner)");
    c_bnd->add_option("--y", bnd_y, "second site (default: (m,1,...,1))");

    // decompose
    auto* c_dec = app.add_subcommand("decompose", "extract an internally spanned subset with diameter in [a,2a]");
    Common o_dec;
    int dec_d = 2, dec_delta = -1;
    std::int64_t dec_L = 16, dec_a = 4;
    double dec_p = 0.2;
    std::uint64_t dec_stream = 0;
    o_dec.attach(c_dec);
    c_dec->add_option("-d,--dim", dec_d, "ambient dimension")->capture_default_str();
    c_dec->add_option("--delta", dec_delta, "constrained axes (default: d)");
    c_dec->add_option("-L,--side", dec_L, "cube side")->capture_default_str();
    c_dec->add_option("-p,--prob", dec_p, "occupation probability")->capture_default_str();
    c_dec->add_option("-a,--target", dec_a, "diameter target")->capture_default_str();
    c_dec->add_option("--stream", dec_stream, "stream index of the sampled configuration")
        ->capture_default_str();

    // slices
    auto* c_slc = app.add_subcommand("slices", "thickness-1 slice decomposition and domination check");
    Common o_slc;
    int slc_d = 3, slc_axis = 0;
    std::int64_t slc_L = 6, slc_n = 2;
    double slc_p = 0.2;
    std::uint64_t slc_stream = 0;
    bool slc_force = false;
    o_slc.attach(c_slc);
    c_slc->add_option("-d,--dim", slc_d, "ambient dimension")->capture_default_str();
    c_slc->add_option("-L,--side", slc_L, "cube side")->capture_default_str();
    c_slc->add_option("--axis", slc_axis, "slicing axis (0-based)")->capture_default_str();
    c_slc->add_option("-n,--diameter", slc_n, "fullness diameter threshold")->capture_default_str();
    c_slc->add_option("-p,--prob", slc_p, "occupation probability")->capture_default_str();
    c_slc->add_option("--stream", slc_stream, "stream index of the sampled configuration")
        ->capture_default_str();
    c_slc->add_flag("--force-standard", slc_force,
                    "run under the standard rule even though domination is not claimed");

    // oracle
    auto* c_orc = app.add_subcommand("oracle", "exact spanning probability by enumeration (closed form for d=1)");
    Common o_orc;
    int orc_d = 2, orc_delta = -1;
    std::int64_t orc_L = 2;
    double orc_p = 0.5;
    o_orc.attach(c_orc);
    c_orc->add_option("-d,--dim", orc_d, "ambient dimension")->capture_default_str();
    c_orc->add_option("--delta", orc_delta, "constrained axes (default: d)");
    c_orc->add_option("-L,--side", orc_L, "cube side")->capture_default_str();
    c_orc->add_option("-p,--prob", orc_p, "occupation probability")->capture_default_str();

    // consts
    auto* c_cst = app.add_subcommand("consts", "threshold constant and nominal length scales");
    Common o_cst;
    double cst_p = 0.1;
    o_cst.attach(c_cst);
    c_cst->add_option("-p,--prob", cst_p, "occupation probability for the scale table")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    bp_status st = BP_OK;

    if (c_sim->parsed()) {
        if (sim_delta < 0) sim_delta = sim_d;
        bp_set_worker_count(o_sim.threads);
        const std::uint64_t seed = o_sim.resolve_seed();
        RegionGuard region;
        if ((st = bp_region_cube(sim_d, sim_delta, sim_L, nullptr, &region.r)) != BP_OK)
            return fail_status(st);
        bp_estimate est{};
        if ((st = bp_estimate_I(o_sim.make_rule(sim_delta), region.r, sim_p, sim_trials, seed,
                                &est)) != BP_OK)
            return fail_status(st);
        json params = params_head(o_sim);
        params["d"] = sim_d;
        params["delta"] = sim_delta;
        params["L"] = sim_L;
        params["p"] = sim_p;
        params["trials"] = sim_trials;
        params["seed"] = seed;
        json doc{{"command", "simulate"},
                 {"version", bp_version()},
                 {"params", params},
                 {"result", estimate_json(est)}};
        return emit(doc, o_sim.output);
    }

    if (c_cross->parsed()) {
        bp_set_worker_count(o_cross.threads);
        const std::uint64_t seed = o_cross.resolve_seed();
        if (cross_x.empty()) cross_x.assign(cross_d, 1);
        if (cross_y.empty()) cross_y.assign(cross_d, cross_L);
        if (static_cast<int>(cross_x.size()) != cross_d ||
            static_cast<int>(cross_y.size()) != cross_d)
            return fail_usage("--x and --y need exactly d coordinates");
        RegionGuard region;
        if ((st = bp_region_cube(cross_d, cross_d, cross_L, nullptr, &region.r)) != BP_OK)
            return fail_status(st);
        bp_estimate est{};
        if ((st = bp_estimate_f(o_cross.make_rule(cross_d), region.r, cross_p, cross_trials,
                                seed, cross_x.data(), cross_y.data(), &est)) != BP_OK)
            return fail_status(st);
        json params = params_head(o_cross);
        params["d"] = cross_d;
        params["L"] = cross_L;
        params["p"] = cross_p;
        params["x"] = cross_x;
        params["y"] = cross_y;
        params["trials"] = cross_trials;
        params["seed"] = seed;
        json doc{{"command", "crossing"},
                 {"version", bp_version()},
                 {"params", params},
                 {"result", estimate_json(est)}};
        return emit(doc, o_cross.output);
    }

    if (c_chi->parsed()) {
        bp_set_worker_count(o_chi.threads);
        const std::uint64_t seed = o_chi.resolve_seed();
        bp_estimate est{};
        if ((st = bp_estimate_chi(o_chi.make_rule(chi_delta), chi_delta, chi_n, chi_p,
                                  chi_trials, seed, &est)) != BP_OK)
            return fail_status(st);
        json params = params_head(o_chi);
        params["delta"] = chi_delta;
        params["n"] = chi_n;
        params["side"] = 2 * chi_n + 1;
        params["p"] = chi_p;
        params["trials"] = chi_trials;
        params["seed"] = seed;
        json doc{{"command", "chi"},
                 {"version", bp_version()},
                 {"params", params},
                 {"result", estimate_json(est)}};
        return emit(doc, o_chi.output);
    }

    if (c_big->parsed()) {
        bp_set_worker_count(o_big.threads);
        const std::uint64_t seed = o_big.resolve_seed();
        bp_estimate est{};
        if ((st = bp_estimate_F(o_big.make_rule(big_delta), big_delta, big_m, big_n, big_p,
                                big_trials, seed, &est)) != BP_OK)
            return fail_status(st);
        json params = params_head(o_big);
        params["delta"] = big_delta;
        params["m"] = big_m;
        params["n"] = big_n;
        params["p"] = big_p;
        params["trials"] = big_trials;
        params["seed"] = seed;
        json doc{{"command", "bigcomp"},
                 {"version", bp_version()},
                 {"params", params},
                 {"result", estimate_json(est)}};
        return emit(doc, o_big.output);
    }

    if (c_thr->parsed()) {
        if (thr_delta < 0) thr_delta = thr_d;
        bp_set_worker_count(o_thr.threads);
        const std::uint64_t seed = o_thr.resolve_seed();
        RegionGuard region;
        if ((st = bp_region_cube(thr_d, thr_delta, thr_L, nullptr, &region.r)) != BP_OK)
            return fail_status(st);
        double p_alpha = 0.0;
        bp_bisect_stats stats{};
        if ((st = bp_bisect_p_alpha(o_thr.make_rule(thr_delta), region.r, thr_alpha, thr_tol,
                                    thr_trials, seed, &p_alpha, &stats)) != BP_OK)
            return fail_status(st);
        json params = params_head(o_thr);
        params["d"] = thr_d;
        params["delta"] = thr_delta;
        params["L"] = thr_L;
        params["alpha"] = thr_alpha;
        params["tol"] = thr_tol;
        params["trials_per_probe"] = thr_trials;
        params["seed"] = seed;
        json doc{{"command", "threshold"},
                 {"version", bp_version()},
                 {"params", params},
                 {"result",
                  json{{"p_alpha", p_alpha},
                       {"probes", stats.probes},
                       {"total_trials", stats.total_trials},
                       {"capped", stats.capped != 0}}}};
        return emit(doc, o_thr.output);
    }

    if (c_swp->parsed()) {
        bp_set_worker_count(o_swp.threads);
        const std::uint64_t seed = o_swp.resolve_seed();
        std::vector<double> levels(swp_alphas);
        std::sort(levels.begin(), levels.end());
        std::vector<bp_scaling_point> rows(swp_L.size());
        std::vector<double> level_values(swp_L.size() * levels.size());
        if ((st = bp_sweep_scaling(o_swp.make_rule(swp_d), swp_d, swp_L.data(), swp_L.size(),
                                   levels.data(), levels.size(), swp_trials, seed, rows.data(),
                                   level_values.data())) != BP_OK)
            return fail_status(st);
        std::string text;
        text += "# command=sweep\n";
        text += std::string("# version=") + bp_version() + "\n";
        text += "# rule=" + o_swp.rule + " d=" + std::to_string(swp_d) +
                " trials=" + std::to_string(swp_trials) + " seed=" + std::to_string(seed) + "\n";
        text += "# alphas=";
        for (std::size_t j = 0; j < levels.size(); ++j) {
            char lvl[32];
            std::snprintf(lvl, sizeof lvl, "%s%g", j ? "," : "", levels[j]);
            text += lvl;
        }
        text += "\n";
        text += "L,p_half,scaled,width";
        for (double a : levels) {
            char name[48];
            std::snprintf(name, sizeof name, ",p_alpha_%g", a);
            text += name;
        }
        text += "\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            char head[96];
            std::snprintf(head, sizeof head, "%" PRIu64, rows[i].L);
            text += head;
            text += "," + fmt(rows[i].p_half) + "," + fmt(rows[i].scaled) + "," +
                    fmt(rows[i].width);
            for (std::size_t j = 0; j < levels.size(); ++j)
                text += "," + fmt(level_values[i * levels.size() + j]);
            text += "\n";
        }
        return emit_text(text, o_swp.output);
    }

    if (c_bnd->parsed()) {
        bp_set_worker_count(o_bnd.threads);
        const std::uint64_t seed = o_bnd.resolve_seed();
        if (bnd_x.empty()) bnd_x.assign(bnd_d, 1);
        if (bnd_y.empty()) {
            bnd_y.assign(bnd_d, 1);
            bnd_y[0] = bnd_m;
        }
        if (static_cast<int>(bnd_x.size()) != bnd_d ||
            static_cast<int>(bnd_y.size()) != bnd_d)
            return fail_usage("--x and --y need exactly d coordinates");
        const int family = o_bnd.rule == "standard" ? BP_STANDARD : BP_MODIFIED;
        bp_bound_report rep{};
        if ((st = bp_bound_vs_estimate(family, bnd_d, bnd_m, bnd_n, bnd_p, bnd_x.data(),
                                       bnd_y.data(), bnd_trials, seed, &rep)) != BP_OK)
            return fail_status(st);
        std::vector<double> terms(static_cast<std::size_t>(rep.ell) + 1);
        size_t terms_written = 0;
        bp_bound_value ignored{};
        if ((st = bp_lemma6_bound(rep.ell, rep.m, rep.d, rep.F_hat.point, rep.chi_hat.point,
                                  &ignored, terms.data(), terms.size(), &terms_written)) != BP_OK)
            return fail_status(st);
        terms.resize(terms_written);
        json params = params_head(o_bnd);
        params["d"] = bnd_d;
        params["m"] = bnd_m;
        params["n"] = bnd_n;
        params["p"] = bnd_p;
        params["x"] = bnd_x;
        params["y"] = bnd_y;
        params["trials"] = bnd_trials;
        params["seed"] = seed;
        json result{{"ell", rep.ell},
                    {"F_hat", estimate_json(rep.F_hat)},
                    {"chi_hat", estimate_json(rep.chi_hat)},
                    {"f_hat", estimate_json(rep.f_hat)},
                    {"bound", bound_json(rep.bound)},
                    {"bound_conservative", bound_json(rep.bound_conservative)},
                    {"terms_by_k", terms},
                    {"vacuous", rep.vacuous != 0},
                    {"holds", rep.holds != 0},
                    {"holds_conservative", rep.holds_conservative != 0}};
        json doc{{"command", "bound"},
                 {"version", bp_version()},
                 {"params", params},
                 {"result", result}};
        return emit(doc, o_bnd.output);
    }

    if (c_dec->parsed()) {
        if (dec_delta < 0) dec_delta = dec_d;
        bp_set_worker_count(o_dec.threads);
        const std::uint64_t seed = o_dec.resolve_seed();
        RegionGuard region;
        if ((st = bp_region_cube(dec_d, dec_delta, dec_L, nullptr, &region.r)) != BP_OK)
            return fail_status(st);
        ConfigGuard cfg;
        if ((st = bp_config_random_fill(region.r, dec_p, seed, dec_stream, &cfg.c)) != BP_OK)
            return fail_status(st);
        uint64_t occupied = 0;
        bp_config_count(cfg.c, &occupied);
        uint64_t diameter = 0, volume = 0, merges = 0;
        if ((st = bp_decompose(o_dec.make_rule(dec_delta), cfg.c, dec_a, &diameter, &volume,
                               &merges)) != BP_OK)
            return fail_status(st);
        json params = params_head(o_dec);
        params["d"] = dec_d;
        params["delta"] = dec_delta;
        params["L"] = dec_L;
        params["p"] = dec_p;
        params["a"] = dec_a;
        params["seed"] = seed;
        params["stream"] = dec_stream;
        json doc{{"command", "decompose"},
                 {"version", bp_version()},
                 {"params", params},
                 {"result",
                  json{{"occupied", occupied},
                       {"diameter", diameter},
                       {"volume", volume},
                       {"merges", merges}}}};
        return emit(doc, o_dec.output);
    }

    if (c_slc->parsed()) {
        bp_set_worker_count(o_slc.threads);
        const std::uint64_t seed = o_slc.resolve_seed();
        RegionGuard region;
        if ((st = bp_region_cube(slc_d, slc_d, slc_L, nullptr, &region.r)) != BP_OK)
            return fail_status(st);
        ConfigGuard cfg;
        if ((st = bp_config_random_fill(region.r, slc_p, seed, slc_stream, &cfg.c)) != BP_OK)
            return fail_status(st);
        std::vector<int> full(static_cast<std::size_t>(slc_L), 0);
        std::vector<uint64_t> volumes(static_cast<std::size_t>(slc_L), 0);
        int dominated = 0;
        size_t n_slices = 0;
        if ((st = bp_slice_report(o_slc.make_rule(slc_d), cfg.c, slc_axis, slc_n,
                                  slc_force ? 1 : 0, &dominated, full.data(), volumes.data(),
                                  full.size(), &n_slices)) != BP_OK)
            return fail_status(st);
        json slices = json::array();
        for (size_t j = 0; j < n_slices; ++j)
            slices.push_back(json{{"full", full[j] != 0}, {"volume", volumes[j]}});
        json params = params_head(o_slc);
        params["d"] = slc_d;
        params["L"] = slc_L;
        params["axis"] = slc_axis;
        params["n"] = slc_n;
        params["p"] = slc_p;
        params["seed"] = seed;
        params["stream"] = slc_stream;
        params["force_standard"] = slc_force;
        json doc{{"command", "slices"},
                 {"version", bp_version()},
                 {"params", params},
                 {"result", json{{"slices", slices}, {"dominated", dominated != 0}}}};
        return emit(doc, o_slc.output);
    }

    if (c_orc->parsed()) {
        if (orc_delta < 0) orc_delta = orc_d;
        double prob = 0.0;
        std::string method;
        if (orc_d == 1 && orc_delta == 1) {
            if ((st = bp_exact_I1(static_cast<uint64_t>(orc_L), orc_p, &prob)) != BP_OK)
                return fail_status(st);
            method = "closed_form";
        } else {
            RegionGuard region;
            if ((st = bp_region_cube(orc_d, orc_delta, orc_L, nullptr, &region.r)) != BP_OK)
                return fail_status(st);
            if ((st = bp_exact_spanning_probability(o_orc.make_rule(orc_delta), region.r, orc_p,
                                                    &prob)) != BP_OK)
                return fail_status(st);
            method = "enumeration";
        }
        json params = params_head(o_orc);
        params["d"] = orc_d;
        params["delta"] = orc_delta;
        params["L"] = orc_L;
        params["p"] = orc_p;
        json doc{{"command", "oracle"},
                 {"version", bp_version()},
                 {"params", params},
                 {"result", json{{"probability", prob}, {"method", method}}}};
        return emit(doc, o_orc.output);
    }

    if (c_cst->parsed()) {
        const double lambda = bp_threshold_constant();
        json scales = json::array();
        for (int d = 2; d <= 4; ++d) {
            bp_iter_exp_result r{};
            if ((st = bp_iter_exp(d - 1, lambda / cst_p, &r)) != BP_OK) return fail_status(st);
            json row{{"d", d}, {"iterations", d - 1}, {"saturated", r.saturated != 0}};
            if (r.saturated) {
                row["log2_value"] = r.log2_value;
                row["layers_above"] = r.layers_above;
            } else {
                row["value"] = r.value;
            }
            scales.push_back(row);
        }
        json params = params_head(o_cst);
        params["p"] = cst_p;
        json doc{{"command", "consts"},
                 {"version", bp_version()},
                 {"params", params},
                 {"result", json{{"lambda", lambda}, {"scales", scales}}}};
        return emit(doc, o_cst.output);
    }

    std::cerr << "error: no subcommand\n";
    return 2;
}

int main(int argc, char** argv) { return run(argc, argv); }
