#include <gtest/gtest.h>

#include <lierep/rootdata.hpp>

#include "oracles.hpp"

using namespace lierep;

namespace {

std::vector<Family> small_families(int max_rank) {
    std::vector<Family> out;
    for (int r = 1; r <= max_rank; ++r) {
        out.emplace_back(Letter::A, r);
        if (r >= 2) {
            out.emplace_back(Letter::B, r);
            out.emplace_back(Letter::C, r);
        }
    }
    return out;
}

double to_double(const Rational &q) { return static_cast<double>(q.numerator()) / q.denominator(); }

} // namespace

TEST(Family, RejectsBadRanks) {
    EXPECT_THROW(Family(Letter::A, 0), InvalidArgument);
    EXPECT_THROW(Family(Letter::B, 1), InvalidArgument);
    EXPECT_THROW(Family(Letter::C, 1), InvalidArgument);
    EXPECT_THROW(Family(Letter::A, 13), InvalidArgument);
    EXPECT_NO_THROW(Family(Letter::A, 12));
    EXPECT_EQ(Family(Letter::B, 3).to_string(), "B3");
    EXPECT_EQ(parse_letter("C"), Letter::C);
    EXPECT_THROW(parse_letter("D"), InvalidArgument);
}

TEST(RootDatum, CartanMatricesRankTwo) {
    EXPECT_EQ(root_datum(Letter::B, 2).cartan(), (std::vector<std::vector<int>>{{2, -1}, {-2, 2}}));
    EXPECT_EQ(root_datum(Letter::C, 2).cartan(), (std::vector<std::vector<int>>{{2, -2}, {-1, 2}}));
    EXPECT_EQ(root_datum(Letter::A, 2).cartan(), (std::vector<std::vector<int>>{{2, -1}, {-1, 2}}));
}

TEST(RootDatum, CartanMatchesOrthogonalModel) {
    for (const auto &f : small_families(8)) {
        oracle::Model m(f.letter(), f.rank());
        EXPECT_EQ(root_datum(f).cartan(), m.cartan()) << f.to_string();
    }
}

TEST(RootDatum, SimpleRootsInFundamentalCoordinates) {
    const auto &b2 = root_datum(Letter::B, 2);
    EXPECT_EQ(b2.simple_root(0), (Weight{2, -2}));
    EXPECT_EQ(b2.simple_root(1), (Weight{-1, 2}));
    for (const auto &f : small_families(6)) {
        oracle::Model m(f.letter(), f.rank());
        for (int i = 0; i < f.rank(); ++i)
            EXPECT_EQ(root_datum(f).simple_root(i), m.from_orth(m.simple[i])) << f.to_string();
    }
}

TEST(RootDatum, GramMatchesOrthogonalModel) {
    for (const auto &f : small_families(6)) {
        const auto &d = root_datum(f);
        oracle::Model m(f.letter(), f.rank());
        for (int i = 0; i < f.rank(); ++i)
            for (int j = 0; j < f.rank(); ++j)
                EXPECT_NEAR(to_double(d.gram()[i][j]), m.ip(m.fund[i], m.fund[j]), 1e-12) << f.to_string();
    }
}

TEST(RootDatum, LongRootsHaveLengthTwo) {
    for (const auto &f : small_families(6)) {
        const auto &d = root_datum(f);
        Rational longest(0);
        for (const auto &a : d.positive_roots())
            longest = std::max(longest, d.inner_product(a, a));
        EXPECT_EQ(longest, Rational(2)) << f.to_string();
    }
}

TEST(RootDatum, FormDiagonalSymmetrizesCartan) {
    for (const auto &f : small_families(8)) {
        const auto &d = root_datum(f);
        for (std::size_t i = 0; i < d.rank(); ++i)
            for (std::size_t j = 0; j < d.rank(); ++j)
                EXPECT_EQ(d.form_diag()[i] * d.cartan()[i][j], d.form_diag()[j] * d.cartan()[j][i])
                    << f.to_string();
    }
}

TEST(RootDatum, PositiveRootCounts) {
    for (int r = 1; r <= 8; ++r) {
        EXPECT_EQ(root_datum(Letter::A, r).positive_roots().size(), static_cast<std::size_t>(r * (r + 1) / 2));
        if (r >= 2) {
            EXPECT_EQ(root_datum(Letter::B, r).positive_roots().size(), static_cast<std::size_t>(r * r));
            EXPECT_EQ(root_datum(Letter::C, r).positive_roots().size(), static_cast<std::size_t>(r * r));
        }
    }
}

TEST(RootDatum, PositiveRootsMatchOrthogonalModel) {
    for (const auto &f : small_families(6)) {
        oracle::Model m(f.letter(), f.rank());
        std::set<Weight> ours(root_datum(f).positive_roots().begin(), root_datum(f).positive_roots().end());
        std::set<Weight> theirs;
        for (const auto &p : m.positive)
            theirs.insert(m.from_orth(p));
        EXPECT_EQ(ours, theirs) << f.to_string();
    }
}

TEST(RootDatum, RhoIsHalfSumOfPositiveRoots) {
    for (const auto &f : small_families(8)) {
        const auto &d = root_datum(f);
        Weight sum(d.rank());
        for (const auto &a : d.positive_roots())
            sum += a;
        EXPECT_EQ(sum, 2 * d.rho()) << f.to_string();
    }
}

TEST(RootDatum, ReflectionExamples) {
    const auto &b2 = root_datum(Letter::B, 2);
    EXPECT_EQ(b2.simple_reflection(1, Weight{0, 1}), (Weight{1, -1}));
    EXPECT_EQ(b2.simple_reflection(0, Weight{1, 0}), (Weight{-1, 2}));
}

TEST(RootDatum, ReflectionsMatchOrthogonalModelAndAreInvolutions) {
    for (const auto &f : small_families(4)) {
        const auto &d = root_datum(f);
        oracle::Model m(f.letter(), f.rank());
        for (auto w : oracle::box(f.rank(), 2)) {
            w[0] -= 1; // include non-dominant inputs
            for (int i = 0; i < f.rank(); ++i) {
                const Weight s = d.simple_reflection(i, w);
                EXPECT_EQ(s, m.reflect(i, w)) << f.to_string() << " " << w.to_string();
                EXPECT_EQ(d.simple_reflection(i, s), w);
            }
        }
    }
}

TEST(RootDatum, InnerProductIsWeylInvariant) {
    for (const auto &f : small_families(4)) {
        const auto &d = root_datum(f);
        const auto ws = oracle::box(f.rank(), 1);
        for (const auto &v : ws)
            for (const auto &w : ws)
                for (std::size_t i = 0; i < d.rank(); ++i)
                    EXPECT_EQ(d.inner_product(d.simple_reflection(i, v), d.simple_reflection(i, w)),
                              d.inner_product(v, w));
    }
}

TEST(RootDatum, InnerProductAgainstOrthogonalModel) {
    const auto &b2 = root_datum(Letter::B, 2);
    EXPECT_EQ(b2.inner_product(Weight{0, 1}, Weight{0, 1}), Rational(1, 2));
    EXPECT_EQ(b2.inner_product(Weight{1, 0}, Weight{1, 0}), Rational(1));
    EXPECT_EQ(b2.inner_product(Weight{1, 0}, Weight{0, 1}), Rational(1, 2));
    for (const auto &f : small_families(4)) {
        const auto &d = root_datum(f);
        oracle::Model m(f.letter(), f.rank());
        const auto ws = oracle::box(f.rank(), 2);
        for (std::size_t a = 0; a < ws.size(); a += 3)
            for (std::size_t b = 0; b < ws.size(); b += 5)
                EXPECT_NEAR(to_double(d.inner_product(ws[a], ws[b])), m.ip(m.to_orth(ws[a]), m.to_orth(ws[b])),
                            1e-9);
    }
}

TEST(RootDatum, MakeDominantShiftedExample) {
    const auto r = root_datum(Letter::A, 2).make_dominant_shifted(Weight{-3, 2});
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->first, (DominantWeight{1, 0}));
    EXPECT_EQ(r->second, -1);
    EXPECT_FALSE(root_datum(Letter::A, 2).make_dominant_shifted(Weight{-1, 0}).has_value());
}

TEST(RootDatum, MakeDominantShiftedMatchesWeylGroupSearch) {
    for (const auto &f : small_families(3)) {
        const auto &d = root_datum(f);
        oracle::Model m(f.letter(), f.rank());
        const auto group = oracle::weyl_group(m);
        for (auto w : oracle::box(f.rank(), 4)) {
            for (auto &c : w)
                c -= 2;
            const auto ours = d.make_dominant_shifted(w);
            const auto theirs = oracle::shifted_dominant(m, group, w);
            ASSERT_EQ(ours.has_value(), theirs.has_value()) << f.to_string() << " " << w.to_string();
            if (ours) {
                EXPECT_EQ(ours->first.weight(), theirs->first) << f.to_string() << " " << w.to_string();
                EXPECT_EQ(ours->second, theirs->second) << f.to_string() << " " << w.to_string();
            }
        }
    }
}

TEST(RootDatum, DominantRepresentativeLiesInOrbit) {
    const auto &d = root_datum(Letter::B, 3);
    oracle::Model m(Letter::B, 3);
    for (const auto &e : oracle::weyl_group(m)) {
        const Weight w = oracle::apply(m, e, Weight{1, 0, 2});
        EXPECT_EQ(d.dominant_representative(w), (Weight{1, 0, 2}));
    }
}

TEST(RootDatum, ScaledHeightIsMonotoneOnRoots) {
    for (const auto &f : small_families(5)) {
        const auto &d = root_datum(f);
        for (std::size_t i = 0; i < d.rank(); ++i)
            EXPECT_EQ(d.scaled_height(d.simple_root(i)), d.height_scale()) << f.to_string();
        for (const auto &a : d.positive_roots())
            EXPECT_GT(d.scaled_height(a), 0);
    }
}

TEST(RootDatum, RankMismatchIsRejected) {
    EXPECT_THROW(root_datum(Letter::A, 3).check_rank(Weight{1, 0}), InvalidArgument);
    EXPECT_THROW((void)root_datum(Letter::B, 2).inner_product(Weight{1, 0, 0}, Weight{1, 0}), InvalidArgument);
}

TEST(Weight, DominantWeightRejectsNegativeCoordinates) {
    EXPECT_THROW(DominantWeight(Weight{1, -1}), InvalidArgument);
    EXPECT_EQ(DominantWeight({2, 0, 1}).to_string(), "[2,0,1]");
    EXPECT_EQ(DominantWeight({2, 0, 5}).height(), 5);
    EXPECT_THROW(Weight(std::size_t{13}), InvalidArgument);
}
