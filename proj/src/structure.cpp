#include "bootperc/structure.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bootperc {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

struct AxisView {
    std::vector<std::uint64_t> strides;
    std::vector<std::uint64_t> sides;

    explicit AxisView(const Region& region) {
        const int dim = region.effective_dim();
        strides.resize(dim);
        sides.resize(dim);
        for (int j = 0; j < dim; ++j) {
            strides[j] = region.stride(j);
            sides[j] = static_cast<std::uint64_t>(region.side(j));
        }
    }

    int dim() const { return static_cast<int>(strides.size()); }
    std::uint64_t pos(std::uint64_t index, int j) const {
        return (index / strides[j]) % sides[j];
    }
};

}  // namespace

std::int64_t ComponentSet::max_diameter() const {
    std::int64_t best = -1;
    for (std::int64_t dia : diameters) best = std::max(best, dia);
    return best;
}

ComponentSet components(const Configuration& w) {
    const Region& region = w.region();
    const std::uint64_t v = region.volume();
    const AxisView ax(region);
    const int dim = ax.dim();

    ComponentSet out;
    out.labels.assign(v, -1);

    std::vector<std::uint64_t> stack;
    for (std::uint64_t seed = 0; seed < v; ++seed) {
        if (!w.test(seed) || out.labels[seed] != -1) continue;
        const std::int32_t id = out.count();
        std::uint64_t vol = 0;
        std::vector<std::uint64_t> lo(dim), hi(dim);
        for (int j = 0; j < dim; ++j) lo[j] = hi[j] = ax.pos(seed, j);

        stack.assign(1, seed);
        out.labels[seed] = id;
        while (!stack.empty()) {
            const std::uint64_t x = stack.back();
            stack.pop_back();
            ++vol;
            for (int j = 0; j < dim; ++j) {
                const std::uint64_t t = ax.pos(x, j);
                lo[j] = std::min(lo[j], t);
                hi[j] = std::max(hi[j], t);
                if (t > 0) {
                    const std::uint64_t y = x - ax.strides[j];
                    if (w.test(y) && out.labels[y] == -1) {
                        out.labels[y] = id;
                        stack.push_back(y);
                    }
                }
                if (t + 1 < ax.sides[j]) {
                    const std::uint64_t y = x + ax.strides[j];
                    if (w.test(y) && out.labels[y] == -1) {
                        out.labels[y] = id;
                        stack.push_back(y);
                    }
                }
            }
        }

        std::int64_t dia = 0;
        for (int j = 0; j < dim; ++j)
            dia = std::max(dia, static_cast<std::int64_t>(hi[j] - lo[j]));
        out.volumes.push_back(vol);
        out.diameters.push_back(dia);
    }
    return out;
}

bool crossing_in_closure(const Rule& rule, const Configuration& w,
                         const std::vector<std::int64_t>& x,
                         const std::vector<std::int64_t>& y) {
    const Region& region = w.region();
    require(region.contains(x), "crossing_in_closure: x outside region");
    require(region.contains(y), "crossing_in_closure: y outside region");
    const std::uint64_t ix = region.index_of(x);
    const std::uint64_t iy = region.index_of(y);

    const Configuration closed = close(rule, w).final_set;
    if (!closed.test(ix) || !closed.test(iy)) return false;
    if (ix == iy) return true;
    const ComponentSet comp = components(closed);
    return comp.labels[ix] == comp.labels[iy];
}

bool has_component_of_diameter(const Rule& rule, const Configuration& w,
                               std::int64_t n) {
    require(n >= 0, "has_component_of_diameter: n must be >= 0");
    const Configuration closed = close(rule, w).final_set;
    if (n == 0) return closed.count() > 0;
    return components(closed).max_diameter() >= n;
}

std::uint64_t center_component_volume(const Rule& rule, const Configuration& w) {
    const Region& region = w.region();
    require(region.is_cube() && region.side(0) % 2 == 1,
            "center_component_volume: region must be an odd cube");
    std::uint64_t center = 0;
    for (int j = 0; j < region.effective_dim(); ++j)
        center += static_cast<std::uint64_t>((region.side(j) - 1) / 2) * region.stride(j);

    const Configuration closed = close(rule, w).final_set;
    if (!closed.test(center)) return 0;
    const ComponentSet comp = components(closed);
    return comp.volumes[comp.labels[center]];
}

namespace {

// One disjoint internally spanned set tracked by the decomposition.
struct SpanSet {
    Configuration bits;
    std::vector<std::uint64_t> lo, hi;  // per-free-axis coordinate range
    std::uint64_t size = 0;
    bool alive = true;

    std::int64_t diameter() const {
        std::int64_t dia = 0;
        for (size_t j = 0; j < lo.size(); ++j)
            dia = std::max(dia, static_cast<std::int64_t>(hi[j] - lo[j]));
        return dia;
    }
};

SpanSet make_span_set(Configuration bits, const AxisView& ax) {
    SpanSet s{std::move(bits), {}, {}, 0, true};
    const int dim = ax.dim();
    s.lo.assign(dim, 0);
    s.hi.assign(dim, 0);
    bool first = true;
    const std::uint64_t v = s.bits.volume();
    for (std::uint64_t i = 0; i < v; ++i) {
        if (!s.bits.test(i)) continue;
        ++s.size;
        for (int j = 0; j < dim; ++j) {
            const std::uint64_t t = ax.pos(i, j);
            if (first) {
                s.lo[j] = s.hi[j] = t;
            } else {
                s.lo[j] = std::min(s.lo[j], t);
                s.hi[j] = std::max(s.hi[j], t);
            }
        }
        first = false;
    }
    return s;
}

std::uint64_t first_new_site(const Configuration& grown, const Configuration& base) {
    const auto& gw = grown.words();
    const auto& bw = base.words();
    for (size_t w = 0; w < gw.size(); ++w) {
        const std::uint64_t fresh = gw[w] & ~bw[w];
        if (fresh) return (static_cast<std::uint64_t>(w) << 6) +
                          static_cast<std::uint64_t>(std::countr_zero(fresh));
    }
    return ~std::uint64_t(0);
}

bool sets_intersect(const Configuration& a, const Configuration& b) {
    const auto& aw = a.words();
    const auto& bw = b.words();
    for (size_t w = 0; w < aw.size(); ++w)
        if (aw[w] & bw[w]) return true;
    return false;
}

}  // namespace

DecomposeResult aizenman_lebowitz_decompose(const Rule& rule, const Configuration& w,
                                            std::int64_t a) {
    const Region& region = w.region();
    require(rule.delta >= 2,
            "decompose: needs delta >= 2 (on a line no proper subset is internally spanned)");
    require(a >= 1, "decompose: a must be a positive integer");

    const Configuration closure = close(rule, w).final_set;
    if (components(closure).max_diameter() < a)
        throw std::runtime_error(
            "decompose: no spanned connected set of diameter >= a exists");

    const AxisView ax(region);
    const std::uint64_t v = region.volume();

    std::vector<SpanSet> sets;
    std::vector<std::int32_t> owner(v, -1);
    for (std::uint64_t i = 0; i < v; ++i) {
        if (!w.test(i)) continue;
        Configuration one(region);
        one.set(i);
        owner[i] = static_cast<std::int32_t>(sets.size());
        sets.push_back(make_span_set(std::move(one), ax));
    }

    DecomposeResult result;
    result.subset = Configuration(region);

    auto finish = [&](SpanSet&& s) {
        result.diameter = s.diameter();
        result.volume = s.size;
        result.subset = std::move(s.bits);
    };

    // Merge the listed sets (plus optional extra site), close, and absorb any
    // overlapped set; after every closure, a set reaching diameter >= a wins.
    auto merge_and_commit = [&](std::vector<std::int32_t> ids,
                                std::uint64_t extra_site,
                                bool has_extra) -> bool {
        Configuration cur(region);
        for (std::int32_t id : ids) cur |= sets[id].bits;
        if (has_extra) cur.set(extra_site);
        SpanSet merged = make_span_set(close(rule, cur).final_set, ax);
        ++result.merges;
        if (merged.diameter() >= a) { finish(std::move(merged)); return true; }

        for (bool changed = true; changed;) {
            changed = false;
            for (std::int32_t k = 0; k < static_cast<std::int32_t>(sets.size()); ++k) {
                if (!sets[k].alive ||
                    std::find(ids.begin(), ids.end(), k) != ids.end())
                    continue;
                if (!sets_intersect(merged.bits, sets[k].bits)) continue;
                ids.push_back(k);
                Configuration joined = merged.bits;
                joined |= sets[k].bits;
                merged = make_span_set(close(rule, joined).final_set, ax);
                ++result.merges;
                if (merged.diameter() >= a) { finish(std::move(merged)); return true; }
                changed = true;
                break;
            }
        }

        for (std::int32_t id : ids) sets[id].alive = false;
        const std::int32_t fresh = static_cast<std::int32_t>(sets.size());
        for (std::uint64_t i = 0; i < v; ++i)
            if (merged.bits.test(i)) owner[i] = fresh;
        sets.push_back(std::move(merged));
        return false;
    };

    while (true) {
        Configuration unions(region);
        for (const SpanSet& s : sets)
            if (s.alive) unions |= s.bits;

        const Configuration grown = step(rule, unions);
        const std::uint64_t u = first_new_site(grown, unions);

        if (u != ~std::uint64_t(0)) {
            // Unite u with the sets supplying its activation witnesses.
            std::vector<std::int32_t> ids;
            auto add_owner = [&](std::uint64_t site) {
                const std::int32_t id = owner[site];
                if (id < 0 || !sets[id].alive)
                    throw std::logic_error("decompose: witness site has no live owner");
                if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
            };
            if (rule.family == RuleFamily::Modified) {
                // One witness per axis; activation guarantees each axis has one.
                for (int j = 0; j < rule.delta; ++j) {
                    const std::uint64_t t = ax.pos(u, j);
                    if (t > 0 && unions.test(u - ax.strides[j])) {
                        add_owner(u - ax.strides[j]);
                    } else if (t + 1 < ax.sides[j] && unions.test(u + ax.strides[j])) {
                        add_owner(u + ax.strides[j]);
                    } else {
                        throw std::logic_error("decompose: activated site lacks an axis witness");
                    }
                }
            } else {
                int needed = rule.delta;
                for (int j = 0; j < rule.delta && needed > 0; ++j) {
                    const std::uint64_t t = ax.pos(u, j);
                    if (t > 0 && unions.test(u - ax.strides[j])) {
                        add_owner(u - ax.strides[j]);
                        --needed;
                    }
                    if (needed > 0 && t + 1 < ax.sides[j] && unions.test(u + ax.strides[j])) {
                        add_owner(u + ax.strides[j]);
                        --needed;
                    }
                }
                if (needed > 0)
                    throw std::logic_error("decompose: activated site lacks enough witnesses");
            }
            if (merge_and_commit(std::move(ids), u, true)) return result;
            continue;
        }

        // No activatable site: the union is closed. Merge one adjacent pair.
        bool merged_pair = false;
        for (std::uint64_t i = 0; i < v && !merged_pair; ++i) {
            if (owner[i] < 0 || !sets[owner[i]].alive) continue;
            for (int j = 0; j < ax.dim() && !merged_pair; ++j) {
                if (ax.pos(i, j) + 1 >= ax.sides[j]) continue;
                const std::uint64_t y = i + ax.strides[j];
                if (owner[y] < 0 || !sets[owner[y]].alive || owner[y] == owner[i]) continue;
                if (merge_and_commit({owner[i], owner[y]}, 0, false)) return result;
                merged_pair = true;
            }
        }
        if (!merged_pair)
            throw std::logic_error("decompose: merging stalled before reaching diameter a");
    }
}

SliceDecomposition slice_construct(const Rule& rule, const Configuration& w,
                                   int axis, std::int64_t n, bool force_standard) {
    const Region& region = w.region();
    const int d = region.ambient_dim();
    require(region.is_cube() && d >= 2, "slice_construct: region must be a cube, d >= 2");
    require(axis >= 0 && axis < d, "slice_construct: axis out of range");
    require(n >= 0, "slice_construct: n must be >= 0");
    require(rule.delta == d, "slice_construct: rule dimension must match the cube");
    if (rule.family == RuleFamily::Standard)
        require(force_standard,
                "slice_construct: domination is claimed for the modified rule only "
                "(pass the force flag to build it anyway)");

    const std::int64_t m = region.side(0);
    const Rule slice_rule{rule.family, d - 1};

    SliceDecomposition dec;
    dec.axis = axis;
    dec.n = n;
    dec.z = Configuration(region);
    dec.domination_claimed = rule.family == RuleFamily::Modified;

    std::vector<int> slice_axes;
    for (int i = 0; i < d; ++i)
        if (i != axis) slice_axes.push_back(i);

    for (std::int64_t j = 0; j < m; ++j) {
        std::vector<std::int64_t> base = region.base();
        base[axis] += j;
        const Region slice = Region::box(d, slice_axes,
                                         std::vector<std::int64_t>(d - 1, m), base);
        Configuration y = close(slice_rule, restrict_to(w, slice)).final_set;
        const bool full = n == 0 ? y.count() > 0
                                 : components(y).max_diameter() >= n;
        dec.full_flags.push_back(full);
        const std::uint64_t sv = slice.volume();
        for (std::uint64_t i = 0; i < sv; ++i) {
            if (full || y.test(i))
                dec.z.set(region.index_of(slice.coords_of(i)));
        }
        dec.slices.push_back(std::move(y));
    }
    return dec;
}

bool check_domination(const SliceDecomposition& dec, const Configuration& closure) {
    require(dec.z.region() == closure.region(), "check_domination: region mismatch");
    return closure.is_subset_of(dec.z);
}

ScaffoldEvents scaffold_events(const Configuration& w, std::int64_t k) {
    const Region& region = w.region();
    require(region.ambient_dim() == 3 && region.is_cube(),
            "scaffold_events: region must be a cube in d=3");
    const std::int64_t L = region.side(0);
    require(k >= 1 && k <= L, "scaffold_events: need 1 <= k <= L");
    const AxisView ax(region);

    ScaffoldEvents ev;
    ev.arms_occupied = true;
    const std::uint64_t v = region.volume();
    for (std::uint64_t i = 0; i < v && ev.arms_occupied; ++i) {
        int small = 0;
        for (int j = 0; j < 3; ++j)
            if (ax.pos(i, j) < static_cast<std::uint64_t>(k)) ++small;
        if (small >= 2 && !w.test(i)) ev.arms_occupied = false;
    }

    ev.every_segment_hit = true;
    for (int j = 0; j < 3 && ev.every_segment_hit; ++j) {
        const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        for (std::uint64_t a = 0; a < ax.sides[j1] && ev.every_segment_hit; ++a) {
            for (std::uint64_t b = 0; b < ax.sides[j2] && ev.every_segment_hit; ++b) {
                const std::uint64_t line = a * ax.strides[j1] + b * ax.strides[j2];
                std::int64_t run = 0;
                for (std::uint64_t t = 0; t < ax.sides[j]; ++t) {
                    run = w.test(line + t * ax.strides[j]) ? 0 : run + 1;
                    if (run >= k) { ev.every_segment_hit = false; break; }
                }
            }
        }
    }
    return ev;
}

Implication face_growth_check(RuleFamily family, const Configuration& w) {
    const Region& region = w.region();
    const int d = region.ambient_dim();
    require(region.is_cube() && d >= 2, "face_growth_check: region must be a cube, d >= 2");
    const std::int64_t L = region.side(0) - 1;
    require(L >= 1, "face_growth_check: cube side must be at least 2");

    std::vector<int> all_axes(d);
    for (int i = 0; i < d; ++i) all_axes[i] = i;

    const Region inner = Region::box(d, all_axes,
                                     std::vector<std::int64_t>(d, L), region.base());
    bool hypothesis =
        is_internally_spanned(Rule{family, d}, restrict_to(w, inner));

    for (std::uint32_t mask = 1; hypothesis && mask + 1 < (1u << d); ++mask) {
        std::vector<int> axes;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) axes.push_back(i);
        std::vector<std::int64_t> base = region.base();
        for (int i = 0; i < d; ++i)
            if (!(mask & (1u << i))) base[i] += L;
        const Region face = Region::box(d, axes,
                                        std::vector<std::int64_t>(axes.size(), L), base);
        hypothesis = is_internally_spanned(
            Rule{family, static_cast<int>(axes.size())}, restrict_to(w, face));
    }

    if (!hypothesis) return Implication::Vacuous;
    return is_internally_spanned(Rule{family, d}, w) ? Implication::Confirmed
                                                     : Implication::Violated;
}

}  // namespace bootperc
