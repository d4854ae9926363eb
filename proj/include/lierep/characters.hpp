#pragma once

#include <algorithm>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "checked.hpp"
#include "errors.hpp"
#include "rootdata.hpp"
#include "weight.hpp"

namespace lierep {

using BigInt = boost::multiprecision::cpp_int;

// Weight multiplicities of one irreducible representation. entries keeps a
// deterministic order; index answers point queries (absent means 0).
struct WeightTable {
    DominantWeight highest;
    std::vector<std::pair<Weight, Mult>> entries;
    std::unordered_map<Weight, Mult, WeightHash> index;

    Mult at(const Weight &w) const {
        auto it = index.find(w);
        return it == index.end() ? 0 : it->second;
    }
    std::size_t size() const noexcept { return entries.size(); }
    Mult total() const {
        Mult s = 0;
        for (const auto &[w, m] : entries)
            s = checked_add(s, m);
        return s;
    }
};

// prod_{alpha > 0} (hw + rho, alpha) / (rho, alpha)
inline BigInt weyl_dimension(const RootDatum &datum, const DominantWeight &hw) {
    datum.check_rank(hw);
    const auto &d = datum.form_diag();
    BigInt num = 1, den = 1;
    for (const auto &k : datum.positive_roots_simple()) {
        std::int64_t a = 0, b = 0;
        for (std::size_t i = 0; i < datum.rank(); ++i) {
            // (varpi_i, alpha) = k_i d_i; 2 d_i is an integer.
            const std::int64_t two_d = boost::rational_cast<std::int64_t>(d[i] * 2);
            a += (static_cast<std::int64_t>(hw[i]) + 1) * k[i] * two_d;
            b += k[i] * two_d;
        }
        num *= a;
        den *= b;
    }
    return num / den;
}

// All weights in the Weyl orbit of a dominant weight, in discovery order
// (starting from dw itself).
inline std::vector<Weight> weyl_orbit(const RootDatum &datum, const DominantWeight &dw) {
    datum.check_rank(dw);
    std::vector<Weight> out{dw.weight()};
    std::unordered_set<Weight, WeightHash> seen{dw.weight()};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (std::size_t i = 0; i < datum.rank(); ++i) {
            if (out[head][i] <= 0)
                continue;
            Weight next = datum.simple_reflection(i, out[head]);
            if (seen.insert(next).second)
                out.push_back(next);
        }
    }
    return out;
}

namespace detail {

struct LevelledWeight {
    Weight w;
    int level;
};

// Dominant weights mu <= hw. Adjacent dominant weights of a saturated set
// differ by a positive root, so a search that subtracts positive roots and
// stays in the dominant chamber reaches all of them.
inline std::vector<LevelledWeight> dominant_weights_below(const RootDatum &datum,
                                                          const DominantWeight &hw) {
    std::vector<int> root_height;
    for (const auto &k : datum.positive_roots_simple()) {
        int h = 0;
        for (int c : k)
            h += c;
        root_height.push_back(h);
    }
    std::vector<LevelledWeight> out{{hw.weight(), 0}};
    std::unordered_set<Weight, WeightHash> seen{hw.weight()};
    const auto &roots = datum.positive_roots();
    for (std::size_t head = 0; head < out.size(); ++head) {
        const Weight mu = out[head].w;
        const int level = out[head].level;
        for (std::size_t a = 0; a < roots.size(); ++a) {
            Weight nu = mu - roots[a];
            if (!nu.is_dominant())
                continue;
            if (seen.insert(nu).second)
                out.push_back({nu, level + root_height[a]});
        }
    }
    // Level order; the recursion only looks at strictly lower levels.
    std::sort(out.begin(), out.end(), [](const LevelledWeight &x, const LevelledWeight &y) {
        if (x.level != y.level)
            return x.level < y.level;
        return x.w < y.w;
    });
    return out;
}

} // namespace detail

// Freudenthal's recursion restricted to dominant weights:
//   m(mu) = 2 sum_{alpha>0} sum_{k>=1} m(mu + k alpha) (mu + k alpha, alpha)
//           / (|hw + rho|^2 - |mu + rho|^2)
// evaluated in the integer-scaled form.
inline WeightTable dominant_weight_multiplicities(const RootDatum &datum, const DominantWeight &hw) {
    datum.check_rank(hw);
    const auto order = detail::dominant_weights_below(datum, hw);
    const auto &roots = datum.positive_roots();
    const Weight &rho = datum.rho();
    const Weight top = hw.weight() + rho;
    const std::int64_t top_norm = datum.scaled_inner_product(top, top);

    WeightTable table{hw, {}, {}};
    table.entries.reserve(order.size());
    table.index.reserve(order.size() * 2);
    table.entries.emplace_back(hw.weight(), 1);
    table.index.emplace(hw.weight(), 1);

    for (std::size_t idx = 1; idx < order.size(); ++idx) {
        const Weight &mu = order[idx].w;
        Mult numer = 0;
        for (const Weight &alpha : roots) {
            Weight nu = mu + alpha;
            for (;;) {
                auto it = table.index.find(datum.dominant_representative(nu));
                if (it == table.index.end())
                    break;
                numer = checked_add(numer,
                                    checked_mul(it->second, datum.scaled_inner_product(nu, alpha)));
                nu += alpha;
            }
        }
        const Weight shifted = mu + rho;
        const std::int64_t denom = top_norm - datum.scaled_inner_product(shifted, shifted);
        numer = checked_mul(numer, 2);
        if (denom <= 0 || numer % denom != 0)
            throw InternalError("Freudenthal recursion produced a non-integer multiplicity at " +
                                mu.to_string());
        const Mult m = numer / denom;
        table.entries.emplace_back(mu, m);
        table.index.emplace(mu, m);
    }
    return table;
}

// Every weight of the representation, obtained by spreading the dominant
// multiplicities over Weyl orbits.
inline WeightTable expand_orbits(const RootDatum &datum, const WeightTable &dominant) {
    WeightTable full{dominant.highest, {}, {}};
    for (const auto &[mu, m] : dominant.entries)
        for (const Weight &w : weyl_orbit(datum, DominantWeight(mu)))
            full.entries.emplace_back(w, m);
    full.index.reserve(full.entries.size() * 2);
    for (const auto &[w, m] : full.entries)
        full.index.emplace(w, m);
    return full;
}

inline WeightTable full_weight_system(const RootDatum &datum, const DominantWeight &hw) {
    return expand_orbits(datum, dominant_weight_multiplicities(datum, hw));
}

// Dominant weight table of one irreducible representation. The full weight
// system is never stored: callers walk it orbit by orbit.
struct Character {
    WeightTable dominant;
};

// Calls fn(weight, multiplicity) once for every weight of the character.
template <class Fn>
void for_each_weight(const RootDatum &datum, const Character &chr, Fn &&fn) {
    for (const auto &[mu, m] : chr.dominant.entries)
        for (const Weight &w : weyl_orbit(datum, DominantWeight(mu)))
            fn(w, m);
}

struct CacheStats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t evictions = 0;
};

// Bounded LRU of characters keyed by (family, highest weight). Entries are
// immutable once published; concurrent callers may compute the same entry
// twice but always observe a complete table.
class CharacterCache {
  public:
    static constexpr std::size_t default_capacity = 4096;

    explicit CharacterCache(std::size_t capacity = default_capacity) : capacity_(capacity) {}

    std::shared_ptr<const Character> get(const RootDatum &datum, const DominantWeight &hw) {
        const Key key{datum.family(), hw};
        {
            std::lock_guard lock(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) {
                ++stats_.hits;
                lru_.splice(lru_.begin(), lru_, it->second.second);
                return it->second.first;
            }
            ++stats_.misses;
        }
        auto value = std::make_shared<const Character>(Character{dominant_weight_multiplicities(datum, hw)});
        std::lock_guard lock(mu_);
        auto it = map_.find(key);
        if (it != map_.end())
            return it->second.first;
        if (capacity_ == 0)
            return value;
        lru_.push_front(key);
        map_.emplace(key, std::make_pair(value, lru_.begin()));
        while (map_.size() > capacity_) {
            map_.erase(lru_.back());
            lru_.pop_back();
            ++stats_.evictions;
        }
        return value;
    }

    void set_capacity(std::size_t capacity) {
        std::lock_guard lock(mu_);
        capacity_ = capacity;
        while (map_.size() > capacity_) {
            map_.erase(lru_.back());
            lru_.pop_back();
            ++stats_.evictions;
        }
    }
    std::size_t capacity() const {
        std::lock_guard lock(mu_);
        return capacity_;
    }
    std::size_t size() const {
        std::lock_guard lock(mu_);
        return map_.size();
    }
    CacheStats stats() const {
        std::lock_guard lock(mu_);
        return stats_;
    }
    void clear() {
        std::lock_guard lock(mu_);
        map_.clear();
        lru_.clear();
    }

  private:
    struct Key {
        Family family;
        DominantWeight hw;
        bool operator==(const Key &) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const noexcept {
            return k.hw.hash() * 31 + static_cast<std::size_t>(k.family.letter()) * 7 +
                   static_cast<std::size_t>(k.family.rank());
        }
    };

    mutable std::mutex mu_;
    std::size_t capacity_;
    std::list<Key> lru_;
    std::unordered_map<Key, std::pair<std::shared_ptr<const Character>, std::list<Key>::iterator>, KeyHash>
        map_;
    CacheStats stats_;
};

inline CharacterCache &default_character_cache() {
    static CharacterCache cache;
    return cache;
}

inline std::shared_ptr<const Character> character(const RootDatum &datum, const DominantWeight &hw,
                                                  CharacterCache &cache = default_character_cache()) {
    return cache.get(datum, hw);
}

} // namespace lierep
