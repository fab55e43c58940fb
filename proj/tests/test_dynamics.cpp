#include "bootperc/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

using namespace bootperc;

namespace {

Configuration from_sites(const Region& r, const std::vector<std::vector<std::int64_t>>& sites) {
    Configuration w(r);
    for (const auto& s : sites) w.set(r.index_of(s));
    return w;
}

}  // namespace

TEST_CASE("step hand examples") {
    const Region q3 = Region::cube(2, 2, 3);
    const Configuration w = from_sites(q3, {{1, 2}, {3, 2}});

    const Configuration modified = step(Rule{RuleFamily::Modified, 2}, w);
    CHECK(modified == w);  // (2,2) lacks a neighbor along the second axis

    const Configuration standard = step(Rule{RuleFamily::Standard, 2}, w);
    Configuration expect = w;
    expect.set(q3.index_of({2, 2}));
    CHECK(standard == expect);

    const Region q2 = Region::cube(2, 2, 2);
    const Configuration diag = from_sites(q2, {{1, 1}, {2, 2}});
    CHECK(step(Rule{RuleFamily::Modified, 2}, diag).all());
}

TEST_CASE("step matches the one-site-at-a-time rule transcription") {
    for (const Rule rule : {Rule{RuleFamily::Modified, 2}, Rule{RuleFamily::Standard, 2},
                            Rule{RuleFamily::Modified, 3}, Rule{RuleFamily::Standard, 3}}) {
        const int d = rule.delta;
        const Region q = Region::cube(d, d, d == 2 ? 5 : 3);
        for (int t = 0; t < 50; ++t) {
            const Configuration w = random_fill(q, 0.3, RngStream(100 + t, t));
            CHECK(step(rule, w) == oracle::naive_step(rule, w));
        }
    }
}

TEST_CASE("closure equals naive fixed point on every Q^2(3) configuration") {
    const Region q = Region::cube(2, 2, 3);
    for (const RuleFamily family : {RuleFamily::Modified, RuleFamily::Standard}) {
        const Rule rule{family, 2};
        for (std::uint64_t mask = 0; mask < 512; ++mask) {
            Configuration w(q);
            for (int i = 0; i < 9; ++i)
                if ((mask >> i) & 1) w.set(i);
            const ClosureResult got = close(rule, w);
            const oracle::NaiveClosure want = oracle::naive_close(rule, w);
            CHECK(got.final_set == want.final_set);
            CHECK(got.rounds == want.rounds);
        }
    }
}

TEST_CASE("closure hand examples") {
    const Rule rule{RuleFamily::Modified, 2};
    const Region q4 = Region::cube(2, 2, 4);

    Configuration empty(q4);
    const ClosureResult e = close(rule, empty);
    CHECK(e.final_set.none());
    CHECK(e.rounds == 0);

    const ClosureResult f = close(rule, Configuration::full(q4));
    CHECK(f.final_set.all());
    CHECK(f.rounds == 0);

    Configuration diag(q4);
    for (std::int64_t i = 1; i <= 4; ++i) diag.set(q4.index_of({i, i}));
    CHECK(close(rule, diag).final_set.all());
}

TEST_CASE("closure reports synchronous rounds and records generations") {
    const Rule rule{RuleFamily::Modified, 2};
    const Region q = Region::cube(2, 2, 4);
    Configuration diag(q);
    for (std::int64_t i = 1; i <= 4; ++i) diag.set(q.index_of({i, i}));

    CloseOptions opts;
    opts.record_generations = true;
    const ClosureResult r = close(rule, diag, opts);
    CHECK(r.rounds == oracle::naive_close(rule, diag).rounds);
    REQUIRE(r.generations.has_value());
    const auto& gen = *r.generations;

    // Generation g sites are exactly the new sites of the g-th naive step.
    Configuration cur = diag;
    std::uint64_t g = 0;
    for (std::uint64_t i = 0; i < q.volume(); ++i)
        if (cur.test(i)) CHECK(gen[i] == 0);
    for (;;) {
        const Configuration next = oracle::naive_step(rule, cur);
        if (next == cur) break;
        ++g;
        for (std::uint64_t i = 0; i < q.volume(); ++i)
            if (next.test(i) && !cur.test(i)) CHECK(gen[i] == g);
        cur = next;
    }
    for (std::uint64_t i = 0; i < q.volume(); ++i)
        if (!cur.test(i)) CHECK(gen[i] == ClosureResult::kNeverActive);
}

TEST_CASE("closure is monotone and idempotent, modified within standard") {
    for (int d : {1, 2, 3}) {
        const Region q = Region::cube(d, d, d == 1 ? 16 : (d == 2 ? 6 : 4));
        const Rule modified{RuleFamily::Modified, d};
        const Rule standard{RuleFamily::Standard, d};
        for (int t = 0; t < 200; ++t) {
            const double p = 0.1 + 0.08 * (t % 10);
            const Configuration w = random_fill(q, p, RngStream(7 * d, t));

            const Configuration cm = close(modified, w).final_set;
            const Configuration cs = close(standard, w).final_set;
            CHECK(w.is_subset_of(cm));
            CHECK(cm.is_subset_of(cs));

            Configuration larger = w;
            larger.set(RngStream(11, t).bits(0) % q.volume());
            CHECK(cm.is_subset_of(close(modified, larger).final_set));

            const ClosureResult again = close(modified, cm);
            CHECK(again.final_set == cm);
            CHECK(again.rounds == 0);
        }
    }
}

TEST_CASE("closure touches at most 2 * delta * volume sites") {
    const Region q = Region::cube(2, 2, 32);
    for (int t = 0; t < 20; ++t) {
        const Configuration w = random_fill(q, 0.05 * (t + 1) / 4.0, RngStream(5, t));
        const ClosureResult r = close(Rule{RuleFamily::Modified, 2}, w);
        CHECK(r.sites_touched <= 4 * q.volume());
        CHECK(r.rounds <= q.volume());
    }
}

TEST_CASE("lower-dimensional rule on an embedded slice") {
    // A face of a 3-cube runs the 2-dimensional dynamics in its own plane.
    const Region f = Region::face(3, 3, {0, 2});
    const Rule rule{RuleFamily::Modified, 2};
    Configuration w(f);
    w.set(f.index_of({1, 4, 1}));
    w.set(f.index_of({2, 4, 2}));
    w.set(f.index_of({3, 4, 3}));
    CHECK(close(rule, w).final_set.all());
}

TEST_CASE("internal spanning") {
    const Rule rule{RuleFamily::Modified, 2};
    const Region q2 = Region::cube(2, 2, 2);

    CHECK(is_internally_spanned(rule, Configuration::full(q2)));
    CHECK(!is_internally_spanned(rule, from_sites(q2, {{1, 1}, {1, 2}})));
    CHECK(is_internally_spanned(rule, from_sites(q2, {{1, 1}, {2, 2}})));

    const Region line = Region::cube(1, 1, 12);
    for (std::uint64_t i = 0; i < line.volume(); ++i) {
        Configuration w(line);
        w.set(i);
        CHECK(is_internally_spanned(Rule{RuleFamily::Modified, 1}, w));
    }
}

TEST_CASE("exact spanning probability") {
    const Rule rule{RuleFamily::Modified, 2};
    CHECK(exact_spanning_probability(Rule{RuleFamily::Modified, 1}, Region::cube(1, 1, 4), 0.5) ==
          doctest::Approx(0.9375).epsilon(1e-12));
    CHECK(exact_spanning_probability(rule, Region::cube(2, 2, 2), 0.5) ==
          doctest::Approx(0.4375).epsilon(1e-12));
    CHECK(exact_spanning_probability(rule, Region::cube(2, 2, 2), 1.0) == 1.0);
    CHECK(exact_spanning_probability(rule, Region::cube(2, 2, 2), 0.0) == 0.0);

    for (const RuleFamily family : {RuleFamily::Modified, RuleFamily::Standard}) {
        for (double p : {0.2, 0.5, 0.8}) {
            const Rule r{family, 2};
            const Region q = Region::cube(2, 2, 3);
            CHECK(exact_spanning_probability(r, q, p) ==
                  doctest::Approx(oracle::enum_spanning(r, q, p)).epsilon(1e-12));
        }
    }

    CHECK_THROWS_AS(exact_spanning_probability(rule, Region::cube(2, 2, 6), 0.5),
                    std::invalid_argument);
}

TEST_CASE("rule validation") {
    const Region q = Region::cube(2, 2, 3);
    const Configuration w(q);
    CHECK_THROWS_AS(close(Rule{RuleFamily::Modified, 0}, w), std::invalid_argument);
    CHECK_THROWS_AS(close(Rule{RuleFamily::Modified, 3}, w), std::invalid_argument);
}
