#include <gtest/gtest.h>

#include <lierep/characters.hpp>

#include "oracles.hpp"

using namespace lierep;

namespace {

struct Case {
    Letter letter;
    int rank;
    int bound;
};

} // namespace

TEST(WeylDimension, KnownValues) {
    EXPECT_EQ(weyl_dimension(root_datum(Letter::A, 2), {1, 1}), 8);
    EXPECT_EQ(weyl_dimension(root_datum(Letter::A, 3), {0, 1, 0}), 6);
    EXPECT_EQ(weyl_dimension(root_datum(Letter::B, 2), {0, 1}), 4);
    EXPECT_EQ(weyl_dimension(root_datum(Letter::B, 2), {1, 0}), 5);
    EXPECT_EQ(weyl_dimension(root_datum(Letter::C, 2), {1, 0}), 4);
    EXPECT_EQ(weyl_dimension(root_datum(Letter::C, 2), {0, 1}), 5);
    EXPECT_EQ(weyl_dimension(root_datum(Letter::B, 3), {0, 0, 1}), 8);
    EXPECT_EQ(weyl_dimension(root_datum(Letter::B, 3), {0, 1, 0}), 21);
    EXPECT_EQ(weyl_dimension(root_datum(Letter::A, 1), {7}), 8);
    EXPECT_EQ(weyl_dimension(root_datum(Letter::B, 6), {0, 0, 0, 0, 0, 1}), 64);
    EXPECT_EQ(weyl_dimension(root_datum(Letter::A, 4), {0, 0, 0, 0}), 1);
}

TEST(WeylDimension, ExceedsMachineIntegers) {
    const BigInt d = weyl_dimension(root_datum(Letter::A, 12), {40, 40, 40, 40, 40, 40, 40, 40, 40, 40, 40, 40});
    EXPECT_GT(d, BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST(WeylOrbit, Sizes) {
    EXPECT_EQ(weyl_orbit(root_datum(Letter::A, 2), {1, 0}).size(), 3u);
    EXPECT_EQ(weyl_orbit(root_datum(Letter::A, 2), {1, 1}).size(), 6u);
    EXPECT_EQ(weyl_orbit(root_datum(Letter::B, 2), {1, 1}).size(), 8u);
    EXPECT_EQ(weyl_orbit(root_datum(Letter::B, 3), {1, 1, 1}).size(), 48u);
    EXPECT_EQ(weyl_orbit(root_datum(Letter::C, 3), {0, 0, 0}).size(), 1u);
    EXPECT_EQ(weyl_orbit(root_datum(Letter::A, 3), {0, 1, 0}).size(), 6u);
}

TEST(WeylOrbit, MatchesOracleGroupAction) {
    for (const auto &c : {Case{Letter::A, 3, 1}, Case{Letter::B, 3, 1}, Case{Letter::C, 3, 1}}) {
        oracle::Model m(c.letter, c.rank);
        const auto group = oracle::weyl_group(m);
        for (const auto &w : oracle::box(c.rank, c.bound)) {
            std::set<Weight> expected;
            for (const auto &e : group)
                expected.insert(oracle::apply(m, e, w));
            const auto orbit = weyl_orbit(root_datum(c.letter, c.rank), DominantWeight(w));
            EXPECT_EQ(std::set<Weight>(orbit.begin(), orbit.end()), expected);
            EXPECT_EQ(orbit.size(), expected.size());
        }
    }
}

TEST(Freudenthal, MatchesKostantAlternatingSum) {
    const std::vector<Case> cases{{Letter::A, 1, 3}, {Letter::A, 2, 3}, {Letter::A, 3, 2}, {Letter::B, 2, 3},
                                  {Letter::C, 2, 3}, {Letter::B, 3, 1}, {Letter::C, 3, 1}};
    for (const auto &c : cases) {
        oracle::Model m(c.letter, c.rank);
        oracle::Kostant kostant(m);
        const auto &d = root_datum(c.letter, c.rank);
        for (const auto &hw : oracle::box(c.rank, c.bound)) {
            const auto table = dominant_weight_multiplicities(d, DominantWeight(hw));
            for (const auto &[mu, mult] : table.entries)
                EXPECT_EQ(mult, kostant.multiplicity(hw, mu))
                    << d.family().to_string() << " " << hw.to_string() << " at " << mu.to_string();
            // Dominant weights outside the table have multiplicity zero.
            for (const auto &mu : oracle::box(c.rank, c.bound))
                if (table.at(mu) == 0)
                    EXPECT_EQ(kostant.multiplicity(hw, mu), 0);
        }
    }
}

TEST(Freudenthal, KnownMultiplicities) {
    // Zero weight of the adjoint representation has multiplicity = rank.
    EXPECT_EQ(dominant_weight_multiplicities(root_datum(Letter::A, 2), {1, 1}).at(Weight{0, 0}), 2);
    EXPECT_EQ(dominant_weight_multiplicities(root_datum(Letter::B, 3), {0, 1, 0}).at(Weight{0, 0, 0}), 3);
    EXPECT_EQ(dominant_weight_multiplicities(root_datum(Letter::C, 3), {2, 0, 0}).at(Weight{0, 0, 0}), 3);
    EXPECT_EQ(dominant_weight_multiplicities(root_datum(Letter::B, 2), {1, 0}).at(Weight{0, 0}), 1);
}

TEST(Characters, FullWeightSystemSumsToDimension) {
    for (Letter l : {Letter::A, Letter::B, Letter::C})
        for (int r = (l == Letter::A ? 1 : 2); r <= 4; ++r) {
            const auto &d = root_datum(l, r);
            for (const auto &hw : oracle::box(r, 1)) {
                const auto full = full_weight_system(d, DominantWeight(hw));
                EXPECT_EQ(BigInt(full.total()), weyl_dimension(d, DominantWeight(hw)))
                    << d.family().to_string() << " " << hw.to_string();
            }
        }
}

TEST(Characters, FullWeightSystemIsWeylInvariant) {
    const auto &d = root_datum(Letter::C, 3);
    const auto full = full_weight_system(d, {1, 1, 1});
    for (const auto &[w, m] : full.entries)
        for (std::size_t i = 0; i < d.rank(); ++i)
            EXPECT_EQ(full.at(d.simple_reflection(i, w)), m);
}

TEST(Characters, ForEachWeightVisitsTheFullSystem) {
    const auto &d = root_datum(Letter::B, 3);
    CharacterCache cache;
    const auto chr = cache.get(d, {1, 0, 1});
    std::map<Weight, Mult> seen;
    for_each_weight(d, *chr, [&](const Weight &w, Mult m) { seen[w] += m; });
    const auto full = full_weight_system(d, {1, 0, 1});
    EXPECT_EQ(seen.size(), full.size());
    for (const auto &[w, m] : full.entries)
        EXPECT_EQ(seen[w], m);
}

TEST(CharacterCache, LruEviction) {
    CharacterCache cache(2);
    const auto &d = root_datum(Letter::A, 2);
    cache.get(d, {1, 0});
    cache.get(d, {0, 1});
    cache.get(d, {1, 0});
    cache.get(d, {1, 1});
    EXPECT_EQ(cache.size(), 2u);
    EXPECT_EQ(cache.stats().hits, 1u);
    EXPECT_EQ(cache.stats().misses, 3u);
    EXPECT_EQ(cache.stats().evictions, 1u);
    cache.get(d, {1, 0}); // survived as most recently used
    EXPECT_EQ(cache.stats().hits, 2u);
}

TEST(CharacterCache, ZeroCapacityStillComputes) {
    CharacterCache cache(0);
    EXPECT_EQ(cache.get(root_datum(Letter::A, 1), {3})->dominant.size(), 2u);
    EXPECT_EQ(cache.size(), 0u);
}
