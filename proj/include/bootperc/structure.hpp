// Structural analysis of configurations: connected components and diameters,
// crossing events, spanned-subset decomposition, the thickness-1 slice
// construction with its domination check, and deterministic event implications.
#pragma once

#include "bootperc/dynamics.hpp"

namespace bootperc {

// Maximal nearest-neighbor-connected subsets of a site set.
struct ComponentSet {
    std::vector<std::int32_t> labels;     // per site index; -1 for absent sites
    std::vector<std::uint64_t> volumes;   // per component
    std::vector<std::int64_t> diameters;  // l-infinity diameter per component

    std::int32_t count() const { return static_cast<std::int32_t>(volumes.size()); }
    std::int64_t max_diameter() const;  // -1 when there are no components
};

ComponentSet components(const Configuration& w);

// True iff x and y lie in one component of the closure. With x = y this is
// membership of x in the closure.
bool crossing_in_closure(const Rule& rule, const Configuration& w,
                         const std::vector<std::int64_t>& x,
                         const std::vector<std::int64_t>& y);

// Indicator of "the closure has a component of diameter >= n".
bool has_component_of_diameter(const Rule& rule, const Configuration& w,
                               std::int64_t n);

// Volume of the closure component containing the center site of an odd cube
// Q^delta(2n+1); 0 when the center is inactive.
std::uint64_t center_component_volume(const Rule& rule, const Configuration& w);

// Connected, internally spanned subset T with diameter in [a, 2a], produced
// by merging disjoint internally spanned sets until one first reaches
// diameter >= a.
struct DecomposeResult {
    Configuration subset;
    std::int64_t diameter = 0;
    std::uint64_t volume = 0;
    std::uint64_t merges = 0;
};

DecomposeResult aizenman_lebowitz_decompose(const Rule& rule, const Configuration& w,
                                            std::int64_t a);

// Thickness-1 slices of a cube along one axis: per-slice lower-dimensional
// closures Y_j, fullness flags, and the union set Z that dominates the
// d-dimensional closure under the modified rule.
struct SliceDecomposition {
    int axis = 0;
    std::int64_t n = 0;
    std::vector<Configuration> slices;  // Y_j on the slice regions
    std::vector<bool> full_flags;       // Y_j has a component of diameter >= n
    Configuration z;                    // union of (full ? whole slice : Y_j)
    bool domination_claimed = true;     // false when forced under the standard rule
};

SliceDecomposition slice_construct(const Rule& rule, const Configuration& w,
                                   int axis, std::int64_t n,
                                   bool force_standard = false);

// Z contains the d-dimensional closure sitewise.
bool check_domination(const SliceDecomposition& dec, const Configuration& closure);

// Deterministic events on Q^3(L): arms_occupied (every site with two
// coordinates in [1,k] is occupied) and every_segment_hit (every axis-aligned
// length-k segment contains an occupied site). Their conjunction forces
// internal spanning under the modified rule.
struct ScaffoldEvents {
    bool arms_occupied = false;
    bool every_segment_hit = false;
};

ScaffoldEvents scaffold_events(const Configuration& w, std::int64_t k);

enum class Implication { Vacuous, Confirmed, Violated };

// On Q^d(L+1): if Q^d(L) is internally spanned and every proper face of side
// L is internally spanned in its own dimension, then Q^d(L+1) must be
// internally spanned. Evaluates hypothesis and conclusion on one configuration.
Implication face_growth_check(RuleFamily family, const Configuration& w);

}  // namespace bootperc
