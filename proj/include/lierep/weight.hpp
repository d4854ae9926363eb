#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>

#include "errors.hpp"

namespace lierep {

// A point of the weight lattice in fundamental-weight coordinates.
// Storage is inline with a fixed capacity; unused slots stay zero so that
// equality, ordering and hashing can look at the whole array.
class Weight {
  public:
    static constexpr std::size_t max_rank = 12;
    using value_type = std::int32_t;

    Weight() = default;
    explicit Weight(std::size_t rank) : rank_(checked_rank(rank)) {}
    Weight(std::initializer_list<int> coords) : rank_(checked_rank(coords.size())) {
        std::size_t i = 0;
        for (int v : coords)
            c_[i++] = v;
    }
    explicit Weight(std::span<const int> coords) : rank_(checked_rank(coords.size())) {
        for (std::size_t i = 0; i < coords.size(); ++i)
            c_[i] = coords[i];
    }

    std::size_t size() const noexcept { return rank_; }
    value_type operator[](std::size_t i) const noexcept { return c_[i]; }
    value_type &operator[](std::size_t i) noexcept { return c_[i]; }
    const value_type *begin() const noexcept { return c_.data(); }
    const value_type *end() const noexcept { return c_.data() + rank_; }
    value_type *begin() noexcept { return c_.data(); }
    value_type *end() noexcept { return c_.data() + rank_; }

    Weight &operator+=(const Weight &o) noexcept {
        for (std::size_t i = 0; i < rank_; ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    Weight &operator-=(const Weight &o) noexcept {
        for (std::size_t i = 0; i < rank_; ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight &b) noexcept { return a += b; }
    friend Weight operator-(Weight a, const Weight &b) noexcept { return a -= b; }
    friend Weight operator*(int k, Weight a) noexcept {
        for (std::size_t i = 0; i < a.rank_; ++i)
            a.c_[i] *= k;
        return a;
    }
    Weight operator-() const noexcept { return -1 * *this; }

    bool is_zero() const noexcept {
        for (std::size_t i = 0; i < rank_; ++i)
            if (c_[i] != 0)
                return false;
        return true;
    }
    bool is_dominant() const noexcept {
        for (std::size_t i = 0; i < rank_; ++i)
            if (c_[i] < 0)
                return false;
        return true;
    }
    // Maximum coordinate; 0 for the empty weight.
    value_type height() const noexcept {
        value_type h = 0;
        for (std::size_t i = 0; i < rank_; ++i)
            h = c_[i] > h ? c_[i] : h;
        return h;
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 0x9E3779B97F4A7C15ull ^ rank_;
        for (std::size_t i = 0; i < rank_; ++i) {
            h ^= static_cast<std::uint32_t>(c_[i]);
            h *= 0xBF58476D1CE4E5B9ull;
            h ^= h >> 31;
        }
        return static_cast<std::size_t>(h);
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rank_; ++i) {
            if (i)
                s += ',';
            s += std::to_string(c_[i]);
        }
        return s + "]";
    }

    auto operator<=>(const Weight &) const = default;
    bool operator==(const Weight &) const = default;

  private:
    static std::uint8_t checked_rank(std::size_t r) {
        if (r > max_rank)
            throw InvalidArgument("rank " + std::to_string(r) + " exceeds the supported maximum " +
                                  std::to_string(max_rank));
        return static_cast<std::uint8_t>(r);
    }

    std::array<value_type, max_rank> c_{};
    std::uint8_t rank_ = 0;
};

struct WeightHash {
    std::size_t operator()(const Weight &w) const noexcept { return w.hash(); }
};

// Highest weight of an irreducible representation: all coordinates >= 0.
class DominantWeight {
  public:
    DominantWeight() = default;
    explicit DominantWeight(const Weight &w) : w_(w) {
        if (!w.is_dominant())
            throw InvalidArgument("weight " + w.to_string() + " has a negative coordinate");
    }
    DominantWeight(std::initializer_list<int> coords) : DominantWeight(Weight(coords)) {}

    static DominantWeight zero(std::size_t rank) { return DominantWeight(Weight(rank)); }

    const Weight &weight() const noexcept { return w_; }
    operator const Weight &() const noexcept { return w_; }
    std::size_t size() const noexcept { return w_.size(); }
    Weight::value_type operator[](std::size_t i) const noexcept { return w_[i]; }
    const Weight::value_type *begin() const noexcept { return w_.begin(); }
    const Weight::value_type *end() const noexcept { return w_.end(); }
    Weight::value_type height() const noexcept { return w_.height(); }
    bool is_zero() const noexcept { return w_.is_zero(); }
    std::string to_string() const { return w_.to_string(); }
    std::size_t hash() const noexcept { return w_.hash(); }

    auto operator<=>(const DominantWeight &) const = default;
    bool operator==(const DominantWeight &) const = default;

  private:
    Weight w_;
};

struct DominantWeightHash {
    std::size_t operator()(const DominantWeight &w) const noexcept { return w.hash(); }
};

inline std::ostream &operator<<(std::ostream &os, const Weight &w) { return os << w.to_string(); }
inline std::ostream &operator<<(std::ostream &os, const DominantWeight &w) { return os << w.to_string(); }

} // namespace lierep
