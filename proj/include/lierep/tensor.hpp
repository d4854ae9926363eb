#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "characters.hpp"
#include "checked.hpp"
#include "errors.hpp"
#include "rootdata.hpp"
#include "weight.hpp"

namespace lierep {

// Irreducible constituents of a tensor product with their multiplicities.
// Terms are ordered from the top of the dominance order down (by height,
// then lexicographically descending); zero multiplicities never appear.
struct Decomposition {
    std::vector<std::pair<DominantWeight, Mult>> terms;

    std::size_t size() const noexcept { return terms.size(); }
    bool empty() const noexcept { return terms.empty(); }
    Mult at(const Weight &w) const {
        for (const auto &[nu, m] : terms)
            if (nu.weight() == w)
                return m;
        return 0;
    }
    bool contains(const Weight &w) const { return at(w) != 0; }
    bool operator==(const Decomposition &) const = default;
};

namespace detail {

// Sorts accumulated signed coefficients into a Decomposition. A negative net
// coefficient means the engine is broken, not that the input is bad.
template <class Map>
Decomposition finalize_terms(const RootDatum &datum, const Map &acc) {
    Decomposition out;
    out.terms.reserve(acc.size());
    for (const auto &[w, m] : acc) {
        if (m < 0)
            throw InternalError("negative multiplicity " + std::to_string(m) + " for " + w.to_string());
        if (m > 0)
            out.terms.emplace_back(DominantWeight(w), m);
    }
    std::sort(out.terms.begin(), out.terms.end(), [&](const auto &x, const auto &y) {
        const auto hx = datum.scaled_height(x.first), hy = datum.scaled_height(y.first);
        if (hx != hy)
            return hx > hy;
        return y.first < x.first;
    });
    return out;
}

} // namespace detail

// Inline consistency checks on every decomposition (dimension
// multiplicativity, and central-character conservation in type A).
inline std::atomic<bool> &inline_checks_flag() {
    static std::atomic<bool> flag{false};
    return flag;
}
inline void set_inline_checks(bool on) { inline_checks_flag().store(on); }
inline std::atomic<std::uint64_t> &inline_checks_counter() {
    static std::atomic<std::uint64_t> n{0};
    return n;
}

// Sum of i * a_i modulo r + 1: the class of a type A weight in the centre.
inline int type_a_center_class(const Weight &w) {
    const int mod = static_cast<int>(w.size()) + 1;
    long long s = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        s += static_cast<long long>(i + 1) * w[i];
    return static_cast<int>(((s % mod) + mod) % mod);
}

inline void check_decomposition(const RootDatum &datum, const DominantWeight &lambda,
                                const DominantWeight &mu, const Decomposition &d) {
    BigInt total = 0;
    for (const auto &[nu, m] : d.terms)
        total += weyl_dimension(datum, nu) * m;
    if (total != weyl_dimension(datum, lambda) * weyl_dimension(datum, mu))
        throw InternalError("dimension check failed for " + lambda.to_string() + " x " + mu.to_string());
    if (datum.family().letter() == Letter::A) {
        const int mod = static_cast<int>(datum.rank()) + 1;
        const int expect = (type_a_center_class(lambda) + type_a_center_class(mu)) % mod;
        for (const auto &[nu, m] : d.terms)
            if (type_a_center_class(nu) != expect)
                throw InternalError("central character not conserved in " + lambda.to_string() + " x " +
                                    mu.to_string());
    }
    inline_checks_counter().fetch_add(1);
}

// Brauer-Klimyk: sum over the weights nu of the smaller factor of
// sign(w) [w(other + nu + rho) - rho].
inline Decomposition tensor_decompose(const RootDatum &datum, const DominantWeight &lambda,
                                      const DominantWeight &mu,
                                      CharacterCache &cache = default_character_cache()) {
    datum.check_rank(lambda);
    datum.check_rank(mu);
    const bool iterate_lambda = weyl_dimension(datum, lambda) < weyl_dimension(datum, mu);
    const DominantWeight &iterated = iterate_lambda ? lambda : mu;
    const DominantWeight &other = iterate_lambda ? mu : lambda;
    const auto chr = cache.get(datum, iterated);

    const Weight base = other.weight() + datum.rho();
    std::unordered_map<Weight, Mult, WeightHash> acc;
    for_each_weight(datum, *chr, [&](const Weight &nu, Mult m) {
        Weight x = base + nu;
        int sign = 1;
        if (!datum.shifted_dominant_in_place(x, sign))
            return;
        Mult &slot = acc[x];
        slot = sign > 0 ? checked_add(slot, m) : checked_sub(slot, m);
    });
    Decomposition out = detail::finalize_terms(datum, acc);
    if (inline_checks_flag().load(std::memory_order_relaxed))
        check_decomposition(datum, lambda, mu, out);
    return out;
}

// Multiplicity of one target in lambda x mu without building the rest.
inline Mult tensor_coefficient(const RootDatum &datum, const DominantWeight &lambda,
                               const DominantWeight &mu, const DominantWeight &target,
                               CharacterCache &cache = default_character_cache()) {
    datum.check_rank(lambda);
    datum.check_rank(mu);
    datum.check_rank(target);
    const bool iterate_lambda = weyl_dimension(datum, lambda) < weyl_dimension(datum, mu);
    const DominantWeight &iterated = iterate_lambda ? lambda : mu;
    const DominantWeight &other = iterate_lambda ? mu : lambda;
    // Only weights nu with other + nu in the Weyl orbit of target + rho - rho
    // can contribute; the cheap prefilter is |other + nu + rho| = |target + rho|.
    const Weight goal = target.weight() + datum.rho();
    const std::int64_t goal_norm = datum.scaled_inner_product(goal, goal);
    const auto chr = cache.get(datum, iterated);
    const Weight base = other.weight() + datum.rho();
    Mult acc = 0;
    for_each_weight(datum, *chr, [&](const Weight &nu, Mult m) {
        Weight x = base + nu;
        if (datum.scaled_inner_product(x, x) != goal_norm)
            return;
        int sign = 1;
        if (!datum.shifted_dominant_in_place(x, sign) || x != target.weight())
            return;
        acc = sign > 0 ? checked_add(acc, m) : checked_sub(acc, m);
    });
    if (acc < 0)
        throw InternalError("negative tensor coefficient for " + target.to_string());
    return acc;
}

// Independent route: convolve both full characters, then peel off the
// highest remaining dominant weight's irreducible character until nothing
// is left. Intended for small inputs only.
inline Decomposition tensor_decompose_oracle(const RootDatum &datum, const DominantWeight &lambda,
                                             const DominantWeight &mu,
                                             CharacterCache &cache = default_character_cache()) {
    datum.check_rank(lambda);
    datum.check_rank(mu);
    const auto a = full_weight_system(datum, lambda);
    const auto b = full_weight_system(datum, mu);
    std::unordered_map<Weight, Mult, WeightHash> product;
    for (const auto &[wa, ma] : a.entries)
        for (const auto &[wb, mb] : b.entries) {
            Mult &slot = product[wa + wb];
            slot = checked_add(slot, checked_mul(ma, mb));
        }

    std::unordered_map<Weight, Mult, WeightHash> result;
    while (!product.empty()) {
        const Weight *best = nullptr;
        std::int64_t best_h = 0;
        for (const auto &[w, m] : product) {
            if (!w.is_dominant())
                continue;
            const auto h = datum.scaled_height(w);
            if (!best || h > best_h || (h == best_h && *best < w)) {
                best = &w;
                best_h = h;
            }
        }
        if (!best)
            throw InternalError("oracle peel left only non-dominant weights");
        const Weight top = *best;
        const Mult coeff = product.at(top);
        if (coeff < 0)
            throw InternalError("oracle peel found negative coefficient at " + top.to_string());
        result[top] = coeff;
        const auto irr = cache.get(datum, DominantWeight(top));
        for_each_weight(datum, *irr, [&](const Weight &w, Mult m) {
            auto it = product.find(w);
            const Mult prev = it == product.end() ? 0 : it->second;
            const Mult next = checked_sub(prev, checked_mul(coeff, m));
            if (next == 0) {
                if (it != product.end())
                    product.erase(it);
            } else if (it == product.end()) {
                product.emplace(w, next);
            } else {
                it->second = next;
            }
        });
    }
    Decomposition out = detail::finalize_terms(datum, result);
    if (inline_checks_flag().load(std::memory_order_relaxed))
        check_decomposition(datum, lambda, mu, out);
    return out;
}

// Highest weight of the dual: -w_0 reverses the diagram in type A and is
// the identity in types B and C.
inline DominantWeight dual_weight(const RootDatum &datum, const DominantWeight &lambda) {
    datum.check_rank(lambda);
    if (datum.family().letter() != Letter::A)
        return lambda;
    Weight w = lambda.weight();
    std::reverse(w.begin(), w.end());
    return DominantWeight(w);
}

// Dimension of the invariants in lambda_1 x ... x lambda_k, k >= 2.
inline Mult multiplicity_of_trivial(const RootDatum &datum, std::span<const DominantWeight> factors,
                                    CharacterCache &cache = default_character_cache()) {
    if (factors.size() < 2)
        throw InvalidArgument("multiplicity_of_trivial needs at least two factors");
    for (const auto &f : factors)
        datum.check_rank(f);
    const DominantWeight target = dual_weight(datum, factors.back());
    if (factors.size() == 2)
        return factors[0] == target ? 1 : 0;
    if (factors.size() == 3)
        return tensor_coefficient(datum, factors[0], factors[1], target, cache);

    // Left-to-right product of all but the last two factors, then one
    // restricted coefficient per term.
    std::unordered_map<Weight, Mult, WeightHash> current{{factors[0].weight(), 1}};
    for (std::size_t i = 1; i + 2 < factors.size(); ++i) {
        std::unordered_map<Weight, Mult, WeightHash> next;
        for (const auto &[nu, m] : current)
            for (const auto &[t, c] : tensor_decompose(datum, DominantWeight(nu), factors[i], cache).terms) {
                Mult &slot = next[t.weight()];
                slot = checked_add(slot, checked_mul(m, c));
            }
        current = std::move(next);
    }
    const DominantWeight &penult = factors[factors.size() - 2];
    std::vector<std::pair<Weight, Mult>> ordered(current.begin(), current.end());
    std::sort(ordered.begin(), ordered.end());
    Mult total = 0;
    for (const auto &[nu, m] : ordered)
        total = checked_add(total,
                            checked_mul(m, tensor_coefficient(datum, DominantWeight(nu), penult, target, cache)));
    return total;
}

inline Mult multiplicity_of_trivial(const RootDatum &datum, std::initializer_list<DominantWeight> factors,
                                    CharacterCache &cache = default_character_cache()) {
    return multiplicity_of_trivial(datum, std::span<const DominantWeight>(factors.begin(), factors.size()),
                                   cache);
}

} // namespace lierep
