#include "bootperc/lattice.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace bootperc {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Region Region::box(int d, std::vector<int> free_axes,
                   std::vector<std::int64_t> sides,
                   std::vector<std::int64_t> base) {
    require(d >= 1, "region: ambient dimension must be >= 1");
    require(!free_axes.empty() && free_axes.size() <= static_cast<size_t>(d),
            "region: need 1 <= effective dimension <= ambient dimension");
    require(std::is_sorted(free_axes.begin(), free_axes.end()) &&
                std::adjacent_find(free_axes.begin(), free_axes.end()) == free_axes.end(),
            "region: free axes must be strictly increasing");
    require(free_axes.front() >= 0 && free_axes.back() < d,
            "region: free axis out of range");
    require(sides.size() == free_axes.size(), "region: one side per free axis");
    require(base.size() == static_cast<size_t>(d), "region: base must have d coordinates");

    Region r;
    r.d_ = d;
    r.free_ = std::move(free_axes);
    r.sides_ = std::move(sides);
    r.base_ = std::move(base);

    unsigned __int128 vol = 1;
    for (std::int64_t s : r.sides_) {
        require(s >= 1, "region: sides must be positive");
        vol *= static_cast<unsigned __int128>(s);
        require(vol <= ~std::uint64_t(0), "region: volume exceeds 64-bit range");
    }
    r.volume_ = static_cast<std::uint64_t>(vol);

    r.strides_.assign(r.sides_.size(), 1);
    for (int j = static_cast<int>(r.sides_.size()) - 2; j >= 0; --j)
        r.strides_[j] = r.strides_[j + 1] * static_cast<std::uint64_t>(r.sides_[j + 1]);
    return r;
}

Region Region::cube(int d, int delta, std::int64_t side,
                    const std::vector<std::int64_t>& origin) {
    require(d >= 1 && delta >= 1 && delta <= d,
            "cube: need 1 <= delta <= d");
    require(origin.empty() || origin.size() == static_cast<size_t>(d),
            "cube: origin must have d coordinates");
    std::vector<std::int64_t> base(d, 1);
    if (!origin.empty())
        for (int i = 0; i < d; ++i) base[i] = origin[i] + 1;
    std::vector<int> free_axes(delta);
    for (int j = 0; j < delta; ++j) free_axes[j] = j;
    return box(d, std::move(free_axes),
               std::vector<std::int64_t>(delta, side), std::move(base));
}

Region Region::face(int d, std::int64_t side, const std::vector<int>& axes,
                    const std::vector<std::int64_t>& origin) {
    require(axes.size() < static_cast<size_t>(d),
            "face: axis set must be a proper subset of the axes");
    require(origin.empty() || origin.size() == static_cast<size_t>(d),
            "face: origin must have d coordinates");
    std::vector<bool> is_free(d, false);
    for (int a : axes) {
        require(a >= 0 && a < d, "face: axis out of range");
        require(!is_free[a], "face: duplicate axis");
        is_free[a] = true;
    }
    std::vector<std::int64_t> base(d);
    for (int i = 0; i < d; ++i) {
        base[i] = is_free[i] ? 1 : side + 1;
        if (!origin.empty()) base[i] += origin[i];
    }
    if (axes.empty()) {
        // Single corner site: represent as a one-site box on axis 0.
        std::vector<int> free_axes{0};
        return box(d, std::move(free_axes), {1}, std::move(base));
    }
    std::vector<int> free_axes = axes;
    std::sort(free_axes.begin(), free_axes.end());
    return box(d, std::move(free_axes),
               std::vector<std::int64_t>(axes.size(), side), std::move(base));
}

bool Region::is_cube() const {
    if (effective_dim() != d_) return false;
    for (std::int64_t s : sides_)
        if (s != sides_[0]) return false;
    return true;
}

bool Region::contains(const std::vector<std::int64_t>& coords) const {
    if (coords.size() != static_cast<size_t>(d_)) return false;
    size_t j = 0;
    for (int i = 0; i < d_; ++i) {
        if (j < free_.size() && free_[j] == i) {
            std::int64_t t = coords[i] - base_[i];
            if (t < 0 || t >= sides_[j]) return false;
            ++j;
        } else if (coords[i] != base_[i]) {
            return false;
        }
    }
    return true;
}

std::uint64_t Region::index_of(const std::vector<std::int64_t>& coords) const {
    require(contains(coords), "index_of: site outside region");
    std::uint64_t idx = 0;
    for (size_t j = 0; j < free_.size(); ++j)
        idx += static_cast<std::uint64_t>(coords[free_[j]] - base_[free_[j]]) * strides_[j];
    return idx;
}

std::vector<std::int64_t> Region::coords_of(std::uint64_t index) const {
    require(index < volume_, "coords_of: index out of range");
    std::vector<std::int64_t> coords = base_;
    for (size_t j = 0; j < free_.size(); ++j)
        coords[free_[j]] += static_cast<std::int64_t>((index / strides_[j]) %
                                                      static_cast<std::uint64_t>(sides_[j]));
    return coords;
}

Configuration::Configuration(Region region) : region_(std::move(region)) {
    words_.assign((region_.volume() + 63) / 64, 0);
}

Configuration Configuration::full(Region region) {
    Configuration c(std::move(region));
    std::uint64_t v = c.volume();
    for (std::uint64_t w = 0; w < v / 64; ++w) c.words_[w] = ~std::uint64_t(0);
    if (v % 64) c.words_[v / 64] = (std::uint64_t(1) << (v % 64)) - 1;
    return c;
}

std::uint64_t Configuration::count() const {
    std::uint64_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

bool Configuration::is_subset_of(const Configuration& other) const {
    require(region_ == other.region_, "is_subset_of: region mismatch");
    for (size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w]) return false;
    return true;
}

Configuration& Configuration::operator|=(const Configuration& other) {
    require(region_ == other.region_, "configuration union: region mismatch");
    for (size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
}

std::uint64_t RngStream::mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : key_(mix(master_seed ^ mix(stream_index + kGamma))) {}

std::uint64_t RngStream::derive_seed(std::uint64_t master_seed, std::uint64_t purpose) {
    return mix(master_seed + kGamma * (purpose + 1));
}

Configuration random_fill(const Region& region, double p, const RngStream& stream) {
    require(p >= 0.0 && p <= 1.0, "random_fill: p must lie in [0,1]");
    Configuration c(region);
    const std::uint64_t v = region.volume();
    for (std::uint64_t i = 0; i < v; ++i)
        if (stream.uniform01(i) < p) c.set(i);
    return c;
}

Configuration restrict_to(const Configuration& whole, const Region& sub) {
    Configuration out(sub);
    const std::uint64_t v = sub.volume();
    for (std::uint64_t i = 0; i < v; ++i) {
        auto coords = sub.coords_of(i);
        if (!whole.region().contains(coords))
            throw std::invalid_argument("restrict_to: sub region not inside configuration region");
        if (whole.test(whole.region().index_of(coords))) out.set(i);
    }
    return out;
}

}  // namespace bootperc
