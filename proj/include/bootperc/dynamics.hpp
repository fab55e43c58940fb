// Bootstrap update rules, frontier-queue closure, spanning predicates,
// and the exhaustive spanning-probability oracle for tiny regions.
#pragma once

#include <optional>

#include "bootperc/lattice.hpp"

namespace bootperc {

enum class RuleFamily { Modified, Standard };

// Neighborhood rule over the first `delta` free axes of a region.
// Modified: a site activates when every participating axis has an active
// neighbor (either direction). Standard: a site activates when its total
// active-neighbor count over those axes reaches delta.
struct Rule {
    RuleFamily family = RuleFamily::Modified;
    int delta = 2;
};

struct CloseOptions {
    bool record_generations = false;  // doubles memory; diagnostics only
};

struct ClosureResult {
    Configuration final_set;
    std::uint64_t rounds = 0;         // synchronous sweeps until the fixed point
    std::uint64_t sites_touched = 0;  // neighbor examinations (complexity probe)
    // Activation round per site; 0 = initially occupied, kNeverActive = never.
    std::optional<std::vector<std::uint32_t>> generations;

    static constexpr std::uint32_t kNeverActive = ~std::uint32_t(0);
};

// One synchronous application of the rule, intersected with the region.
Configuration step(const Rule& rule, const Configuration& w);

// Fixed point of step, computed with a work queue that re-examines a site
// only when one of its neighbors activates. O(volume * d) work.
ClosureResult close(const Rule& rule, const Configuration& w,
                    const CloseOptions& opts = {});

// True iff the closure of the occupied sites fills the whole region.
bool is_internally_spanned(const Rule& rule, const Configuration& w);

// Exact spanning probability by enumerating all 2^volume occupancy subsets.
// Reference oracle for the Monte Carlo estimators; volume capped at 25.
double exact_spanning_probability(const Rule& rule, const Region& region, double p);

}  // namespace bootperc
