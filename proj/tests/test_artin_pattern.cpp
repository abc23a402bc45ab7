#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "capit/artin_pattern.hpp"
#include "oracles.hpp"

using namespace capit;

namespace {

Tkt uu(const char* s) { return Tkt::parse(s, 3, SylowCase::UU); }

std::vector<Tkt> all_uu_tkts() {
    std::vector<Tkt> out;
    for (int code = 0; code < 625; ++code) {
        Tkt t{3, std::vector<int>(4), SylowCase::UU};
        int c = code;
        for (int i = 3; i >= 0; --i) {
            t.entries[static_cast<std::size_t>(i)] = c % 5;
            c /= 5;
        }
        out.push_back(t);
    }
    return out;
}

std::string labels(const Tkt& t) { return to_string(taussky_weak_tkt(t)); }

}  // namespace

TEST(PType, ParseAndFormat) {
    EXPECT_EQ(parse_ptype("21"), (PType{2, 1}));
    EXPECT_EQ(parse_ptype("1^3"), (PType{1, 1, 1}));
    EXPECT_EQ(parse_ptype("111"), (PType{1, 1, 1}));
    EXPECT_EQ(parse_ptype("12"), (PType{2, 1}));
    EXPECT_EQ(format_ptype({1, 1, 1}), "1^3");
    EXPECT_EQ(format_ptype({2, 2}), "2^2");
    EXPECT_EQ(format_ptype({3, 2}), "32");
    EXPECT_EQ(format_ptype({1}), "1");
    EXPECT_EQ(format_ptype({}), "0");
    EXPECT_THROW(parse_ptype("2x"), ParseError);
    EXPECT_THROW(parse_ptype("1^"), ParseError);
    EXPECT_TRUE(ptype_precedes({2, 2}, {1, 1}));
    EXPECT_TRUE(ptype_precedes({3, 1}, {2, 2}));
}

TEST(Ttt, ParsesTableNotation) {
    auto t = Ttt::parse("2^2,(1^2)^3");
    ASSERT_EQ(t.entries.size(), 4u);
    EXPECT_EQ(t.to_string(), "2^2;1^2;1^2;1^2");
    EXPECT_EQ(Ttt::parse("21;21;1^3;21").to_string(), "21;21;1^3;21");
    EXPECT_EQ(Ttt::parse("(21)^4").entries.size(), 4u);
    EXPECT_THROW(Ttt::parse("21;;1"), ParseError);
}

TEST(Tkt, ParseValidate) {
    EXPECT_EQ(uu("2241").entries, (std::vector<int>{2, 2, 4, 1}));
    EXPECT_EQ(uu("2241").to_string(), "2241");
    EXPECT_THROW(uu("2245"), DomainError);
    EXPECT_THROW(uu("224"), DomainError);
    EXPECT_THROW(uu("22a1"), ParseError);
    EXPECT_EQ(Tkt::parse("0,0,0,0,0,0", 5).entries.size(), 6u);
}

TEST(CapitulationDimension, Examples) {
    EXPECT_EQ(capitulation_dimension(3, 3, 1), 1);
    EXPECT_EQ(capitulation_dimension(3, 3, 3), 2);
    EXPECT_EQ(capitulation_dimension(5, 5, 1), 1);
    EXPECT_THROW(capitulation_dimension(3, 3, 2), DomainError);
    EXPECT_THROW(capitulation_dimension(3, 1, 1), DomainError);
    EXPECT_THROW(capitulation_dimension(3, 3, 9, 2), DomainError);
    EXPECT_EQ(quadratic_capitulation_case(3, false), 1);
    EXPECT_EQ(quadratic_capitulation_case(3, true, ExtensionType::Delta), 1);
    EXPECT_EQ(quadratic_capitulation_case(3, true, ExtensionType::Alpha), 2);
    EXPECT_THROW(quadratic_capitulation_case(2, false), DomainError);
}

TEST(Taussky, Examples) {
    EXPECT_EQ(labels(uu("2241")), "BABB");
    EXPECT_EQ(labels(uu("0000")), "AAAA");
    EXPECT_EQ(labels(Tkt::parse("2241", 3, SylowCase::VV)), "AAAA");
    EXPECT_THROW(taussky_weak_tkt(Tkt::parse("2241", 3, SylowCase::Other)), DomainError);
}

TEST(Taussky, UsesNaturalOrderingInCaseUV) {
    auto ord = natural_ordering(AbelianGroup::parse("9,3"), 3);
    Tkt t{3, {2, 2, 2, 2}, SylowCase::UV};
    // Kernel <w> (identifier cyc) in a cyclic subgroup gives A; the
    // non-cyclic position is A regardless.
    EXPECT_EQ(to_string(taussky_weak_tkt(ord, t)), "AAAA");
    Tkt u{3, {1, 1, 1, 1}, SylowCase::UV};
    auto l = taussky_weak_tkt(ord, u);
    for (int i = 1; i <= 4; ++i)
        EXPECT_EQ(l[static_cast<std::size_t>(i - 1)], i == ord.non_cyc ? Taussky::A : Taussky::B);
}

TEST(OrbitCanonical, MatchesBreadthFirstOrbitUU) {
    std::map<std::vector<int>, std::vector<int>> canon;
    for (const auto& t : all_uu_tkts()) canon[t.entries] = tkt_orbit_canonical(t).entries;
    std::size_t covered = 0;
    std::set<std::vector<int>> reps;
    for (const auto& t : all_uu_tkts()) {
        auto orbit = oracle::tkt_orbit(t.entries, SylowCase::UU);
        for (const auto& m : orbit) ASSERT_EQ(canon[m], canon[t.entries]);
        EXPECT_EQ(canon[t.entries], *orbit.begin());
        EXPECT_EQ(24 % orbit.size(), 0u);
        if (reps.insert(canon[t.entries]).second) covered += orbit.size();
    }
    EXPECT_EQ(covered, 625u);
}

TEST(OrbitCanonical, Examples) {
    EXPECT_EQ(tkt_orbit_canonical(uu("0000")).to_string(), "0000");
    EXPECT_NE(tkt_orbit_canonical(uu("1000")), tkt_orbit_canonical(uu("2000")));
    EXPECT_TRUE(tkt_equivalent(uu("1000"), uu("0200")));
    EXPECT_FALSE(tkt_equivalent(uu("1000"), uu("2000")));
    EXPECT_TRUE(tkt_equivalent(uu("2241"), uu("2241")));
    EXPECT_THROW(tkt_equivalent(uu("1000"), Tkt::parse("1000", 3, SylowCase::VV)), DomainError);
    EXPECT_THROW(tkt_orbit_canonical(Tkt::parse("1000", 3, SylowCase::Other)), DomainError);
}

TEST(OrbitCanonical, MatchesBreadthFirstOrbitUVAndVV) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> digit(0, 4);
    for (auto c : {SylowCase::UV, SylowCase::VV}) {
        for (int trial = 0; trial < 150; ++trial) {
            Tkt t{3, {digit(rng), digit(rng), digit(rng), digit(rng)}, c};
            auto orbit = oracle::tkt_orbit(t.entries, c);
            EXPECT_EQ(tkt_orbit_canonical(t).entries, *orbit.begin());
            for (const auto& m : orbit) EXPECT_TRUE(tkt_equivalent(t, Tkt{3, m, c}));
        }
    }
}

TEST(OrbitCanonical, EquivalenceIsTransitiveOnSamples) {
    std::mt19937 rng(11);
    auto tkts = all_uu_tkts();
    std::uniform_int_distribution<std::size_t> pick(0, tkts.size() - 1);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto &a = tkts[pick(rng)], &b = tkts[pick(rng)], &c = tkts[pick(rng)];
        EXPECT_EQ(tkt_equivalent(a, b), tkt_equivalent(b, a));
        if (tkt_equivalent(a, b) && tkt_equivalent(b, c)) EXPECT_TRUE(tkt_equivalent(a, c));
    }
}

TEST(OrbitCanonical, TausskyMultisetIsInvariantUU) {
    for (const auto& t : all_uu_tkts()) {
        auto base = labels(t);
        std::sort(base.begin(), base.end());
        for (const auto& m : oracle::tkt_orbit(t.entries, SylowCase::UU)) {
            auto l = labels(Tkt{3, m, SylowCase::UU});
            std::sort(l.begin(), l.end());
            ASSERT_EQ(l, base);
        }
    }
}

TEST(ApCanonical, AllZeroKernelSortsTargets) {
    ArtinPattern ap{Ttt::parse("1^2;1^2;2^2;1^2"), uu("0000"), std::nullopt};
    EXPECT_EQ(ap_canonical(ap).ttt.to_string(), "2^2;1^2;1^2;1^2");
}

TEST(ApCanonical, InvariantUnderJointRenumeration) {
    ArtinPattern ap{Ttt::parse("21;21;1^3;21"), uu("2241"), std::nullopt};
    const auto expect = ap_canonical(ap);
    std::vector<int> sigma{1, 2, 3, 4};
    do {
        ArtinPattern q;
        q.tkt = Tkt{3, detail::renumber(ap.tkt.entries, sigma, {0, sigma[0], sigma[1], sigma[2], sigma[3]}),
                    SylowCase::UU};
        q.ttt.p = 3;
        for (int i = 0; i < 4; ++i) q.ttt.entries.push_back(ap.ttt.entries[static_cast<std::size_t>(sigma[i] - 1)]);
        auto c = ap_canonical(q);
        EXPECT_EQ(c.tkt, expect.tkt);
        EXPECT_EQ(c.ttt, expect.ttt);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST(StandardizeUV, MovesDistinguishedIndicesLast) {
    auto ord = natural_ordering(AbelianGroup::parse("9,3"), 3);
    ArtinPattern ap{Ttt{3, {{1, 1}, {2}, {2}, {2}}}, Tkt{3, {0, 0, 0, 0}, SylowCase::UV}, std::nullopt};
    // Put the bicyclic target at the non-cyclic position first.
    std::swap(ap.ttt.entries[0], ap.ttt.entries[static_cast<std::size_t>(ord.non_cyc - 1)]);
    ap.tkt.entries[static_cast<std::size_t>(ord.non_cyc - 1)] = ord.cyc;
    auto s = standardize_uv(ord, ap);
    EXPECT_EQ(s.ttt.entries[3], (PType{1, 1}));
    EXPECT_EQ(s.tkt.entries[3], 4);
}
