#include "doctest.h"

#include "bootperc.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <vector>

namespace {

const bp_rule kMod1{BP_MODIFIED, 1};
const bp_rule kMod2{BP_MODIFIED, 2};
const bp_rule kMod3{BP_MODIFIED, 3};

struct RegionGuard {
    bp_region* r = nullptr;
    ~RegionGuard() { bp_region_free(r); }
};

struct ConfigGuard {
    bp_config* c = nullptr;
    ~ConfigGuard() { bp_config_free(c); }
};

}  // namespace

TEST_CASE("version and error reporting") {
    REQUIRE(bp_version() != nullptr);
    CHECK(std::strlen(bp_version()) >= 5);

    uint64_t sentinel = 777;
    CHECK(bp_region_volume(nullptr, &sentinel) == BP_EINVAL);
    CHECK(sentinel == 777);
    REQUIRE(bp_last_error() != nullptr);
    CHECK(std::strlen(bp_last_error()) > 0);

    bp_region_free(nullptr);
    bp_config_free(nullptr);
}

TEST_CASE("region lifecycle") {
    RegionGuard cube;
    REQUIRE(bp_region_cube(2, 2, 3, nullptr, &cube.r) == BP_OK);
    uint64_t vol = 0;
    REQUIRE(bp_region_volume(cube.r, &vol) == BP_OK);
    CHECK(vol == 9);
    int ambient = 0, effective = 0;
    REQUIRE(bp_region_dim(cube.r, &ambient, &effective) == BP_OK);
    CHECK(ambient == 2);
    CHECK(effective == 2);

    const int axes[] = {0, 2};
    RegionGuard face;
    REQUIRE(bp_region_face(3, 3, axes, 2, &face.r) == BP_OK);
    REQUIRE(bp_region_volume(face.r, &vol) == BP_OK);
    CHECK(vol == 9);
    REQUIRE(bp_region_dim(face.r, &ambient, &effective) == BP_OK);
    CHECK(ambient == 3);
    CHECK(effective == 2);

    bp_region* out = nullptr;
    CHECK(bp_region_cube(0, 0, 3, nullptr, &out) == BP_EINVAL);
    CHECK(out == nullptr);
    CHECK(bp_region_cube(2, 2, 0, nullptr, &out) == BP_EINVAL);
    CHECK(out == nullptr);
    CHECK(bp_region_cube(2, 2, 3, nullptr, nullptr) == BP_EINVAL);
    CHECK(bp_region_face(3, 3, nullptr, 2, &out) == BP_EINVAL);
}

TEST_CASE("config lifecycle and bit access") {
    RegionGuard cube;
    REQUIRE(bp_region_cube(2, 2, 3, nullptr, &cube.r) == BP_OK);

    ConfigGuard empty;
    REQUIRE(bp_config_new(cube.r, &empty.c) == BP_OK);
    uint64_t n = 99;
    REQUIRE(bp_config_count(empty.c, &n) == BP_OK);
    CHECK(n == 0);
    REQUIRE(bp_config_volume(empty.c, &n) == BP_OK);
    CHECK(n == 9);

    ConfigGuard full;
    REQUIRE(bp_config_full(cube.r, &full.c) == BP_OK);
    REQUIRE(bp_config_count(full.c, &n) == BP_OK);
    CHECK(n == 9);
    int bit = -1;
    REQUIRE(bp_config_test(full.c, 8, &bit) == BP_OK);
    CHECK(bit == 1);

    REQUIRE(bp_config_set(empty.c, 4) == BP_OK);
    REQUIRE(bp_config_test(empty.c, 4, &bit) == BP_OK);
    CHECK(bit == 1);
    REQUIRE(bp_config_count(empty.c, &n) == BP_OK);
    CHECK(n == 1);

    CHECK(bp_config_test(empty.c, 9, &bit) == BP_EINVAL);
    CHECK(bp_config_set(empty.c, 9) == BP_EINVAL);
    CHECK(bp_config_test(nullptr, 0, &bit) == BP_EINVAL);

    bp_config* out = nullptr;
    CHECK(bp_config_random_fill(cube.r, 1.5, 1, 0, &out) == BP_EINVAL);
    CHECK(out == nullptr);
}

TEST_CASE("random fill is seed deterministic") {
    RegionGuard line;
    REQUIRE(bp_region_cube(1, 1, 32, nullptr, &line.r) == BP_OK);
    ConfigGuard a, b, c;
    REQUIRE(bp_config_random_fill(line.r, 0.5, 7, 3, &a.c) == BP_OK);
    REQUIRE(bp_config_random_fill(line.r, 0.5, 7, 3, &b.c) == BP_OK);
    REQUIRE(bp_config_random_fill(line.r, 0.5, 7, 4, &c.c) == BP_OK);

    bool same_ab = true, same_ac = true;
    for (uint64_t i = 0; i < 32; ++i) {
        int x = 0, y = 0, z = 0;
        REQUIRE(bp_config_test(a.c, i, &x) == BP_OK);
        REQUIRE(bp_config_test(b.c, i, &y) == BP_OK);
        REQUIRE(bp_config_test(c.c, i, &z) == BP_OK);
        same_ab = same_ab && x == y;
        same_ac = same_ac && x == z;
    }
    CHECK(same_ab);
    CHECK_FALSE(same_ac);
}

TEST_CASE("dynamics through the C interface") {
    RegionGuard q2;
    REQUIRE(bp_region_cube(2, 2, 2, nullptr, &q2.r) == BP_OK);
    ConfigGuard diag;
    REQUIRE(bp_config_new(q2.r, &diag.c) == BP_OK);
    REQUIRE(bp_config_set(diag.c, 0) == BP_OK);  // (1,1)
    REQUIRE(bp_config_set(diag.c, 3) == BP_OK);  // (2,2)

    bp_config* stepped = nullptr;
    REQUIRE(bp_step(kMod2, diag.c, &stepped) == BP_OK);
    ConfigGuard sg{stepped};
    uint64_t n = 0;
    REQUIRE(bp_config_count(stepped, &n) == BP_OK);
    CHECK(n == 4);

    bp_config* closure = nullptr;
    uint64_t rounds = 0, touched = 0;
    REQUIRE(bp_close(kMod2, diag.c, &closure, &rounds, &touched) == BP_OK);
    ConfigGuard cg{closure};
    REQUIRE(bp_config_count(closure, &n) == BP_OK);
    CHECK(n == 4);
    CHECK(rounds >= 1);
    CHECK(touched > 0);

    int spanned = 0;
    REQUIRE(bp_is_internally_spanned(kMod2, diag.c, &spanned) == BP_OK);
    CHECK(spanned == 1);

    double prob = 0.0;
    REQUIRE(bp_exact_spanning_probability(kMod2, q2.r, 0.5, &prob) == BP_OK);
    CHECK(prob == doctest::Approx(0.4375).epsilon(1e-15));

    // Spanning probability is translation invariant.
    const int64_t origin[] = {10, -4};
    RegionGuard shifted;
    REQUIRE(bp_region_cube(2, 2, 2, origin, &shifted.r) == BP_OK);
    double prob2 = 0.0;
    REQUIRE(bp_exact_spanning_probability(kMod2, shifted.r, 0.5, &prob2) == BP_OK);
    CHECK(prob2 == prob);

    CHECK(bp_close(kMod2, nullptr, &closure, nullptr, nullptr) == BP_EINVAL);
    CHECK(bp_close(bp_rule{9, 2}, diag.c, &closure, nullptr, nullptr) == BP_EINVAL);
    CHECK(bp_close(bp_rule{BP_MODIFIED, 0}, diag.c, &closure, nullptr, nullptr) ==
          BP_EINVAL);
    CHECK(bp_is_internally_spanned(kMod2, diag.c, nullptr) == BP_EINVAL);
}

TEST_CASE("estimators through the C interface") {
    RegionGuard line;
    REQUIRE(bp_region_cube(1, 1, 4, nullptr, &line.r) == BP_OK);
    bp_estimate e{};
    REQUIRE(bp_estimate_I(kMod1, line.r, 0.5, 100000, 0xA11CE, &e) == BP_OK);
    CHECK(std::abs(e.point - 0.9375) <= 3.0 * std::sqrt(0.9375 * 0.0625 / 1e5));
    CHECK(e.ci_low <= e.point);
    CHECK(e.point <= e.ci_high);
    CHECK(e.trials == 100000);
    CHECK(e.seed == 0xA11CE);

    RegionGuard q2;
    REQUIRE(bp_region_cube(2, 2, 2, nullptr, &q2.r) == BP_OK);
    const int64_t x[] = {1, 1};
    bp_estimate f{};
    REQUIRE(bp_estimate_f(kMod2, q2.r, 0.0, 200, 3, x, x, &f) == BP_OK);
    CHECK(f.point == 0.0);
    const int64_t bad[] = {0, 1};
    CHECK(bp_estimate_f(kMod2, q2.r, 0.3, 200, 3, bad, x, &f) == BP_EINVAL);

    bp_estimate chi{};
    REQUIRE(bp_estimate_chi(kMod2, 2, 1, 1.0, 200, 4, &chi) == BP_OK);
    CHECK(chi.point == 9.0);
    CHECK(chi.ci_low == 9.0);
    CHECK(chi.ci_high == 9.0);

    bp_estimate F{};
    REQUIRE(bp_estimate_F(kMod2, 2, 3, 3, 0.9, 500, 5, &F) == BP_OK);
    CHECK(F.point == 0.0);
    CHECK(F.ci_high > 0.0);
    CHECK(bp_estimate_F(kMod2, 2, 3, 4, 0.5, 100, 5, &F) == BP_EINVAL);

    CHECK(bp_estimate_I(kMod1, line.r, 0.5, 0, 1, &e) == BP_EINVAL);
    CHECK(bp_estimate_I(kMod1, line.r, 1.5, 10, 1, &e) == BP_EINVAL);
    CHECK(bp_estimate_I(kMod1, nullptr, 0.5, 10, 1, &e) == BP_EINVAL);
    CHECK(bp_estimate_I(kMod1, line.r, 0.5, 10, 1, nullptr) == BP_EINVAL);
}

TEST_CASE("worker count setting does not change results") {
    RegionGuard q;
    REQUIRE(bp_region_cube(2, 2, 4, nullptr, &q.r) == BP_OK);

    bp_set_worker_count(1);
    CHECK(bp_worker_count() == 1);
    bp_estimate a{};
    REQUIRE(bp_estimate_I(kMod2, q.r, 0.3, 2000, 42, &a) == BP_OK);

    bp_set_worker_count(4);
    CHECK(bp_worker_count() == 4);
    bp_estimate b{};
    REQUIRE(bp_estimate_I(kMod2, q.r, 0.3, 2000, 42, &b) == BP_OK);
    bp_set_worker_count(1);

    CHECK(a.point == b.point);
    CHECK(a.ci_low == b.ci_low);
    CHECK(a.ci_high == b.ci_high);

    bp_set_worker_count(0);
    CHECK(bp_worker_count() == 1);
    bp_set_worker_count(10000);
    CHECK(bp_worker_count() == 256);
    bp_set_worker_count(1);
}

TEST_CASE("bisect through the C interface") {
    RegionGuard line;
    REQUIRE(bp_region_cube(1, 1, 10, nullptr, &line.r) == BP_OK);
    double p = 0.0;
    bp_bisect_stats stats{};
    REQUIRE(bp_bisect_p_alpha(kMod1, line.r, 0.5, 1e-3, 400, 0x31, &p, &stats) ==
            BP_OK);
    CHECK(std::abs(p - (1.0 - std::pow(2.0, -0.1))) <= 0.01);
    CHECK(stats.probes >= 1);
    CHECK(stats.total_trials >= stats.probes * 400);

    CHECK(bp_bisect_p_alpha(kMod1, line.r, 0.0, 1e-3, 100, 1, &p, nullptr) ==
          BP_EINVAL);
    CHECK(bp_bisect_p_alpha(kMod1, line.r, 0.5, 1e-3, 100, 1, nullptr, nullptr) ==
          BP_EINVAL);
}

TEST_CASE("sweep through the C interface") {
    const uint64_t Ls[] = {16, 32};
    const double alphas[] = {0.9, 0.1};
    bp_scaling_point rows[2]{};
    double levels[4]{};
    REQUIRE(bp_sweep_scaling(kMod1, 1, Ls, 2, alphas, 2, 300, 0x41, rows,
                             levels) == BP_OK);
    for (int i = 0; i < 2; ++i) {
        CHECK(rows[i].L == Ls[i]);
        const double back = 1.0 - std::pow(1.0 - rows[i].p_half, double(Ls[i]));
        CHECK(std::abs(back - 0.5) <= 0.06);
        CHECK(rows[i].scaled ==
              doctest::Approx(rows[i].p_half * double(Ls[i])).epsilon(1e-15));
        CHECK(levels[2 * i] < levels[2 * i + 1]);  // columns sorted by alpha
        CHECK(rows[i].width ==
              doctest::Approx(levels[2 * i + 1] - levels[2 * i]).epsilon(1e-15));
    }

    CHECK(bp_sweep_scaling(kMod1, 1, Ls, 2, alphas, 2, 300, 0x41, nullptr,
                           nullptr) == BP_EINVAL);
    CHECK(bp_sweep_scaling(kMod1, 1, nullptr, 2, alphas, 2, 300, 1, rows,
                           nullptr) == BP_EINVAL);
    CHECK(bp_sweep_scaling(kMod1, 5, Ls, 2, alphas, 2, 300, 1, rows, nullptr) ==
          BP_EINVAL);
}

TEST_CASE("analytic bounds through the C interface") {
    bp_bound_value h{};
    REQUIRE(bp_H(0.25, 2, &h) == BP_OK);
    CHECK(h.divergent == 0);
    CHECK(h.value == doctest::Approx(0.5).epsilon(1e-15));
    REQUIRE(bp_H(0.6, 1, &h) == BP_OK);
    CHECK(h.divergent == 1);
    CHECK(bp_H(0.25, 0, &h) == BP_EINVAL);

    bp_bound_value b{};
    double terms[2]{};
    size_t written = 0;
    REQUIRE(bp_lemma6_bound(1, 2, 3, 0.1, 0.1, &b, terms, 2, &written) == BP_OK);
    CHECK(b.divergent == 0);
    CHECK(b.value == doctest::Approx(0.1155).epsilon(1e-12));
    REQUIRE(written == 2);
    CHECK(terms[0] == doctest::Approx(0.087).epsilon(1e-12));
    CHECK(terms[1] == doctest::Approx(0.0285).epsilon(1e-12));

    CHECK(bp_lemma6_bound(1, 2, 3, 0.1, 0.1, &b, terms, 1, &written) ==
          BP_EINVAL);
    REQUIRE(bp_lemma6_bound(1, 2, 3, 0.1, 0.1, &b, nullptr, 0, &written) ==
            BP_OK);
    CHECK(written == 0);
    CHECK(bp_lemma6_bound(3, 2, 3, 0.1, 0.1, &b, nullptr, 0, nullptr) ==
          BP_EINVAL);

    double i1 = 0.0;
    REQUIRE(bp_exact_I1(4, 0.5, &i1) == BP_OK);
    CHECK(i1 == doctest::Approx(0.9375).epsilon(1e-15));
    CHECK(bp_exact_I1(0, 0.5, &i1) == BP_EINVAL);

    bp_iter_exp_result ie{};
    REQUIRE(bp_iter_exp(2, 0.0, &ie) == BP_OK);
    CHECK(ie.saturated == 0);
    CHECK(ie.value == doctest::Approx(2.718281828459045).epsilon(1e-15));
    REQUIRE(bp_iter_exp(5, 100.0, &ie) == BP_OK);
    CHECK(ie.saturated == 1);
    CHECK(ie.layers_above == 4);
    CHECK(ie.log2_value == doctest::Approx(144.26950408889634).epsilon(1e-12));
    CHECK(bp_iter_exp(-1, 1.0, &ie) == BP_EINVAL);

    CHECK(bp_threshold_constant() ==
          doctest::Approx(1.6449340668482264).epsilon(1e-15));
}

TEST_CASE("decompose through the C interface") {
    RegionGuard q4;
    REQUIRE(bp_region_cube(2, 2, 4, nullptr, &q4.r) == BP_OK);
    ConfigGuard full;
    REQUIRE(bp_config_full(q4.r, &full.c) == BP_OK);

    uint64_t diameter = 0, volume = 0, merges = 0;
    REQUIRE(bp_decompose(kMod2, full.c, 2, &diameter, &volume, &merges) == BP_OK);
    CHECK(diameter >= 2);
    CHECK(diameter <= 4);
    CHECK(volume >= 3);

    CHECK(bp_decompose(kMod2, full.c, 0, &diameter, &volume, &merges) ==
          BP_EINVAL);
    ConfigGuard empty;
    REQUIRE(bp_config_new(q4.r, &empty.c) == BP_OK);
    CHECK(bp_decompose(kMod2, empty.c, 1, &diameter, &volume, &merges) ==
          BP_ERUNTIME);
    CHECK(bp_decompose(kMod2, nullptr, 1, &diameter, &volume, &merges) ==
          BP_EINVAL);
}

TEST_CASE("slice report through the C interface") {
    RegionGuard q3;
    REQUIRE(bp_region_cube(3, 3, 3, nullptr, &q3.r) == BP_OK);
    ConfigGuard w;
    REQUIRE(bp_config_new(q3.r, &w.c) == BP_OK);
    REQUIRE(bp_config_set(w.c, 11) == BP_OK);  // (2,1,3)

    int dominated = -1;
    int flags[3] = {-1, -1, -1};
    uint64_t slice_vols[3] = {0, 0, 0};
    size_t n_slices = 0;
    REQUIRE(bp_slice_report(kMod3, w.c, 0, 0, 0, &dominated, flags, slice_vols,
                            3, &n_slices) == BP_OK);
    CHECK(n_slices == 3);
    CHECK(dominated == 1);
    CHECK(flags[0] == 0);
    CHECK(flags[1] == 1);
    CHECK(flags[2] == 0);
    CHECK(slice_vols[0] == 0);
    CHECK(slice_vols[1] == 1);
    CHECK(slice_vols[2] == 0);

    CHECK(bp_slice_report(kMod3, w.c, 0, 0, 0, &dominated, flags, nullptr, 2,
                          &n_slices) == BP_EINVAL);
    CHECK(bp_slice_report(bp_rule{BP_STANDARD, 3}, w.c, 0, 0, 0, &dominated,
                          flags, nullptr, 3, &n_slices) == BP_EINVAL);
    REQUIRE(bp_slice_report(bp_rule{BP_STANDARD, 3}, w.c, 0, 0, 1, &dominated,
                            flags, nullptr, 3, &n_slices) == BP_OK);
    CHECK(bp_slice_report(kMod3, nullptr, 0, 0, 0, &dominated, flags, nullptr, 3,
                          &n_slices) == BP_EINVAL);
}

TEST_CASE("bound report through the C interface") {
    const int64_t x[] = {1, 1, 1};
    const int64_t y[] = {4, 1, 1};
    bp_bound_report rep{};
    REQUIRE(bp_bound_vs_estimate(BP_MODIFIED, 3, 4, 1, 0.04, x, y, 5000, 0x51,
                                 &rep) == BP_OK);
    CHECK(rep.d == 3);
    CHECK(rep.m == 4);
    CHECK(rep.n == 1);
    CHECK(rep.ell == 3);
    CHECK(rep.p == 0.04);
    CHECK(rep.F_hat.trials == 5000);
    CHECK((rep.holds == 0 || rep.holds == 1));
    CHECK(rep.holds == (rep.f_hat.ci_high <= rep.bound.value ? 1 : 0));
    CHECK(rep.bound_conservative.value >= rep.bound.value);

    CHECK(bp_bound_vs_estimate(BP_STANDARD, 3, 4, 1, 0.04, x, y, 100, 1, &rep) ==
          BP_EINVAL);
    CHECK(bp_bound_vs_estimate(7, 3, 4, 1, 0.04, x, y, 100, 1, &rep) ==
          BP_EINVAL);
    CHECK(bp_bound_vs_estimate(BP_MODIFIED, 3, 4, 1, 0.04, nullptr, y, 100, 1,
                               &rep) == BP_EINVAL);
}
