#include "bootperc/dynamics.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace bootperc {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_rule(const Rule& rule, const Region& region) {
    require(rule.delta >= 1, "rule: delta must be >= 1");
    require(rule.delta <= region.effective_dim(),
            "rule: delta exceeds the region's free-axis count");
    require(rule.delta <= 200, "rule: delta too large");
}

}  // namespace

Configuration step(const Rule& rule, const Configuration& w) {
    check_rule(rule, w.region());
    const Region& region = w.region();
    const int delta = rule.delta;
    const std::uint64_t v = region.volume();

    std::vector<std::uint64_t> strides(delta);
    std::vector<std::uint64_t> sides(delta);
    for (int j = 0; j < delta; ++j) {
        strides[j] = region.stride(j);
        sides[j] = static_cast<std::uint64_t>(region.side(j));
    }

    Configuration out = w;
    for (std::uint64_t i = 0; i < v; ++i) {
        if (w.test(i)) continue;
        if (rule.family == RuleFamily::Modified) {
            bool all_axes = true;
            for (int j = 0; j < delta; ++j) {
                const std::uint64_t t = (i / strides[j]) % sides[j];
                const bool covered = (t > 0 && w.test(i - strides[j])) ||
                                     (t + 1 < sides[j] && w.test(i + strides[j]));
                if (!covered) { all_axes = false; break; }
            }
            if (all_axes) out.set(i);
        } else {
            int active = 0;
            for (int j = 0; j < delta; ++j) {
                const std::uint64_t t = (i / strides[j]) % sides[j];
                if (t > 0 && w.test(i - strides[j])) ++active;
                if (t + 1 < sides[j] && w.test(i + strides[j])) ++active;
            }
            if (active >= delta) out.set(i);
        }
    }
    return out;
}

ClosureResult close(const Rule& rule, const Configuration& w, const CloseOptions& opts) {
    check_rule(rule, w.region());
    const Region& region = w.region();
    const int delta = rule.delta;
    const std::uint64_t v = region.volume();
    require(v <= ~std::uint32_t(0), "close: volume exceeds the 2^32-1 site limit");

    std::vector<std::uint64_t> strides(delta);
    std::vector<std::uint64_t> sides(delta);
    for (int j = 0; j < delta; ++j) {
        strides[j] = region.stride(j);
        sides[j] = static_cast<std::uint64_t>(region.side(j));
    }

    ClosureResult result;
    result.final_set = w;
    Configuration& bits = result.final_set;

    // Uncovered-axis count (Modified) or missing-neighbor count (Standard).
    // Value kPopped marks an already-processed active site; the first-processed
    // of two opposite neighbors claims the axis, so each axis counts once.
    constexpr std::uint8_t kPopped = 0xff;
    std::vector<std::uint8_t> remaining(v, static_cast<std::uint8_t>(delta));

    std::vector<std::uint32_t> queue;
    queue.reserve(static_cast<size_t>(v));
    for (std::uint64_t i = 0; i < v; ++i)
        if (bits.test(i)) queue.push_back(static_cast<std::uint32_t>(i));

    if (opts.record_generations) {
        result.generations.emplace(v, ClosureResult::kNeverActive);
        for (std::uint32_t i : queue) (*result.generations)[i] = 0;
    }

    const bool modified = rule.family == RuleFamily::Modified;
    size_t head = 0;
    size_t level_end = queue.size();
    std::uint32_t level = 0;

    while (head < queue.size()) {
        if (head == level_end) {
            ++level;
            level_end = queue.size();
        }
        const std::uint64_t x = queue[head++];
        remaining[x] = kPopped;

        for (int j = 0; j < delta; ++j) {
            const std::uint64_t s = strides[j];
            const std::uint64_t t = (x / s) % sides[j];
            for (int dir = 0; dir < 2; ++dir) {
                std::uint64_t y;
                bool mirror_popped = false;
                if (dir == 0) {
                    if (t == 0) continue;
                    y = x - s;
                    if (t >= 2) mirror_popped = remaining[y - s] == kPopped;
                } else {
                    if (t + 1 >= sides[j]) continue;
                    y = x + s;
                    if (t + 2 < sides[j]) mirror_popped = remaining[y + s] == kPopped;
                }
                ++result.sites_touched;
                if (bits.test(y)) continue;
                // Modified rule: skip when the opposite neighbor, processed
                // earlier, already claimed this axis for y.
                if (modified && mirror_popped) continue;
                if (--remaining[y] == 0) {
                    bits.set(y);
                    queue.push_back(static_cast<std::uint32_t>(y));
                    if (result.generations) (*result.generations)[y] = level + 1;
                }
            }
        }
    }

    result.rounds = level;
    return result;
}

bool is_internally_spanned(const Rule& rule, const Configuration& w) {
    if (w.all()) return true;
    return close(rule, w).final_set.count() == w.volume();
}

double exact_spanning_probability(const Rule& rule, const Region& region, double p) {
    check_rule(rule, region);
    require(p >= 0.0 && p <= 1.0, "exact_spanning_probability: p must lie in [0,1]");
    const std::uint64_t v = region.volume();
    require(v <= 25, "exact_spanning_probability: volume capped at 25 (2^volume subsets)");

    std::vector<double> weight(v + 1);
    for (std::uint64_t k = 0; k <= v; ++k)
        weight[k] = std::pow(p, static_cast<double>(k)) *
                    std::pow(1.0 - p, static_cast<double>(v - k));

    double total = 0.0;
    Configuration cfg(region);
    const std::uint64_t subsets = std::uint64_t(1) << v;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        cfg.words()[0] = mask;
        if (is_internally_spanned(rule, cfg))
            total += weight[static_cast<std::uint64_t>(std::popcount(mask))];
    }
    return total;
}

}  // namespace bootperc
