// Lattice geometry: axis-aligned boxes in Z^d, bit-packed site sets,
// and counter-based random streams for reproducible trials.
#pragma once

#include <cstdint>
#include <vector>

namespace bootperc {

// Axis-aligned box of lattice sites embedded in Z^d. Coordinates vary on the
// free axes only; every other axis is pinned to one coordinate. Sites are
// enumerated row-major over the free axes (last free axis fastest).
class Region {
public:
    Region() = default;

    // The box {1..side}^delta x {1}^(d-delta), shifted by origin.
    static Region cube(int d, int delta, std::int64_t side,
                       const std::vector<std::int64_t>& origin = {});

    // Face of the (side+1)-cube: coordinates in [1,side] on the listed axes
    // (0-based, strictly increasing, proper subset), side+1 on the rest.
    static Region face(int d, std::int64_t side, const std::vector<int>& axes,
                       const std::vector<std::int64_t>& origin = {});

    // General form; base is the coordinate vector of the site with all local
    // indices zero (fixed axes read their pinned coordinate from it).
    static Region box(int d, std::vector<int> free_axes,
                      std::vector<std::int64_t> sides,
                      std::vector<std::int64_t> base);

    int ambient_dim() const { return d_; }
    int effective_dim() const { return static_cast<int>(free_.size()); }
    const std::vector<int>& free_axes() const { return free_; }
    const std::vector<std::int64_t>& sides() const { return sides_; }
    std::int64_t side(int j) const { return sides_[j]; }
    std::uint64_t volume() const { return volume_; }
    std::uint64_t stride(int j) const { return strides_[j]; }
    const std::vector<std::int64_t>& base() const { return base_; }

    bool is_cube() const;  // all axes free and all sides equal

    bool contains(const std::vector<std::int64_t>& coords) const;
    std::uint64_t index_of(const std::vector<std::int64_t>& coords) const;
    std::vector<std::int64_t> coords_of(std::uint64_t index) const;

    bool operator==(const Region&) const = default;

private:
    int d_ = 0;
    std::vector<int> free_;
    std::vector<std::int64_t> sides_;
    std::vector<std::int64_t> base_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t volume_ = 0;
};

// Occupancy of a region, one bit per site index. Bits past the last site of
// the final word stay zero, so whole-word comparisons are valid.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(Region region);
    static Configuration full(Region region);

    const Region& region() const { return region_; }
    std::uint64_t volume() const { return region_.volume(); }

    bool test(std::uint64_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::uint64_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void assign(std::uint64_t i, bool v) { v ? set(i) : reset(i); }

    std::uint64_t count() const;
    bool none() const { return count() == 0; }
    bool all() const { return count() == volume(); }

    bool is_subset_of(const Configuration& other) const;
    Configuration& operator|=(const Configuration& other);

    bool operator==(const Configuration&) const = default;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

private:
    Region region_;
    std::vector<std::uint64_t> words_;
};

// Pure counter-based random stream: every draw is a function of
// (master_seed, stream_index, counter), independent of call order, so
// parallel trials reproduce bit-for-bit in any schedule.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t bits(std::uint64_t counter) const { return mix(key_ + counter * kGamma); }
    double uniform01(std::uint64_t counter) const {  // in [0,1)
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    static std::uint64_t mix(std::uint64_t z);
    // Decorrelated sub-seed for a composite procedure (probe index, estimator tag).
    static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t purpose);

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
    std::uint64_t key_;
};

// Each site occupied independently with probability p; deterministic in
// (region, p, stream).
Configuration random_fill(const Region& region, double p, const RngStream& stream);

// Copy of `whole` restricted to the sites of `sub` (a subset of whole's sites),
// re-indexed on sub.
Configuration restrict_to(const Configuration& whole, const Region& sub);

}  // namespace bootperc
