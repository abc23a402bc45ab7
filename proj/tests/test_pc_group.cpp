#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "capit/catalog.hpp"
#include "capit/pc_group.hpp"
#include "oracles.hpp"

using namespace capit;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(CAPIT_DATA_DIR) + "/groups/" + name + ".pc");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PcGroup fixture(const std::string& name) { return PcGroup::parse(read_fixture(name)); }

const char* const kFixtures[] = {"elementary_3_3",       "cyclic_9",          "cyclic_27",         "abelian_9_3",
                                 "extraspecial_27_exp3", "extraspecial_27_exp9", "elementary_5_5",  "order81_type_a2",
                                 "order81_type_a3",      "order81_type_a3star",  "order243_type_D10", "order243_type_G19",
                                 "order243_type_H4"};

}  // namespace

TEST(Presentation, ParseErrors) {
    EXPECT_THROW(PcPresentation::parse("p 4\ngens 2\n"), ParseError);
    EXPECT_THROW(PcPresentation::parse("p 3\n"), ParseError);
    EXPECT_THROW(PcPresentation::parse("p 3\ngens 2\npow 1 : g1\n"), ParseError);
    EXPECT_THROW(PcPresentation::parse("p 3\ngens 2\nconj 1 2 : g2\n"), ParseError);
    EXPECT_THROW(PcPresentation::parse("p 3\ngens 2\nrelorders 3 6\n"), ParseError);
    EXPECT_THROW(PcPresentation::parse("p 3\ngens 2\nfoo\n"), ParseError);
    try {
        PcPresentation::parse("p 3\ngens 2\n\npow 3 : g2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(Presentation, RoundTrip) {
    auto pr = PcPresentation::parse(read_fixture("extraspecial_27_exp9"));
    auto again = PcPresentation::parse(pr.to_string());
    EXPECT_EQ(again.to_string(), pr.to_string());
    EXPECT_EQ(PcGroup(again).order(), 27u);
}

TEST(Presentation, InconsistentIsRejected) {
    // g2^g1 = g2^2 with g1 of order 3 would need an automorphism of order 2.
    EXPECT_THROW(PcGroup::parse("p 3\ngens 2\nconj 2 1 : g2^2\n"), DomainError);
}

TEST(PcGroup, FixtureOrders) {
    EXPECT_EQ(fixture("elementary_3_3").order(), 9u);
    EXPECT_EQ(fixture("cyclic_9").order(), 9u);
    EXPECT_EQ(fixture("extraspecial_27_exp3").order(), 27u);
    for (auto name : kFixtures) EXPECT_TRUE(fixture(name).consistency_checked()) << name;
}

TEST(PcGroup, Multiplication) {
    auto c9 = fixture("cyclic_9");
    auto g1 = c9.generator(0);
    EXPECT_EQ(c9.multiply(c9.multiply(g1, g1), g1), c9.generator(1));
    EXPECT_EQ(c9.element_order(g1), 9);
    EXPECT_EQ(c9.multiply(c9.identity(), g1), g1);

    auto h = fixture("extraspecial_27_exp3");
    auto a = h.generator(0), b = h.generator(1);
    auto ab = h.multiply(a, b), ba = h.multiply(b, a);
    EXPECT_NE(ab, ba);
    auto c = h.multiply(ba, h.inverse(ab));
    for (ElementId x = 0; x < h.order(); ++x) EXPECT_EQ(h.multiply(c, x), h.multiply(x, c));
    for (ElementId x = 0; x < h.order(); ++x) {
        EXPECT_EQ(h.multiply(x, h.inverse(x)), h.identity());
        EXPECT_LE(h.element_order(x), 3);
    }
    auto h9 = fixture("extraspecial_27_exp9");
    EXPECT_EQ(h9.element_order(h9.generator(0)), 9);
}

TEST(PcGroup, AssociativeByBruteForce) {
    // Cubic in |G|; larger fixtures rely on the built-in consistency check.
    for (auto name : kFixtures) {
        auto g = fixture(name);
        if (g.order() > 81) continue;
        for (ElementId x = 0; x < g.order(); ++x)
            for (ElementId y = 0; y < g.order(); ++y)
                for (ElementId z = 0; z < g.order(); ++z)
                    ASSERT_EQ(g.multiply(g.multiply(x, y), z), g.multiply(x, g.multiply(y, z))) << name;
    }
}

TEST(PcGroup, RelativeOrdersLine) {
    auto g = PcGroup::parse("p 3\ngens 2\nrelorders 9 3\n");
    EXPECT_EQ(g.order(), 27u);
    EXPECT_EQ(g.element_order(g.generator(0)), 9);
    EXPECT_EQ(abelianization(g).group.to_string(), "3,9");
}

TEST(Abelianization, Examples) {
    EXPECT_TRUE(isomorphic(abelianization(fixture("elementary_3_3")).group, AbelianGroup::parse("3,3")));
    EXPECT_TRUE(isomorphic(abelianization(fixture("extraspecial_27_exp3")).group, AbelianGroup::parse("3,3")));
    EXPECT_TRUE(isomorphic(abelianization(fixture("extraspecial_27_exp9")).group, AbelianGroup::parse("3,3")));
    EXPECT_TRUE(isomorphic(abelianization(fixture("cyclic_9")).group, AbelianGroup::parse("9")));
    EXPECT_TRUE(isomorphic(abelianization(fixture("abelian_9_3")).group, AbelianGroup::parse("9,3")));
    auto h = fixture("extraspecial_27_exp3");
    EXPECT_EQ(abelianization(h).derived.order(), 3u);
}

TEST(Abelianization, ProjectionIsHomomorphism) {
    for (auto name : kFixtures) {
        auto g = fixture(name);
        auto ab = abelianization(g);
        for (ElementId x = 0; x < g.order(); ++x) {
            EXPECT_EQ(ab.image(ab.lift(ab.image(x))), ab.image(x));
            for (ElementId y = 0; y < g.order(); ++y)
                ASSERT_EQ(ab.image(g.multiply(x, y)), ab.group.add(ab.image(x), ab.image(y))) << name;
        }
    }
}

TEST(ClassAndCoclass, Examples) {
    EXPECT_EQ(class_and_coclass(fixture("elementary_3_3")), std::make_pair(1, 1));
    EXPECT_EQ(class_and_coclass(fixture("extraspecial_27_exp3")), std::make_pair(2, 1));
    EXPECT_EQ(class_and_coclass(fixture("cyclic_27")), std::make_pair(1, 2));
    for (auto name : kFixtures) {
        auto g = fixture(name);
        auto [c, r] = class_and_coclass(g);
        EXPECT_EQ(c + r, g.log_order());
        EXPECT_GE(c, 1);
    }
}

TEST(MaximalSubgroups, Examples) {
    auto e = maximal_subgroups(fixture("elementary_3_3"));
    ASSERT_EQ(e.size(), 4u);
    for (const auto& m : e) EXPECT_EQ(m.order(), 3u);

    auto h = fixture("extraspecial_27_exp3");
    auto ms = maximal_subgroups(h);
    ASSERT_EQ(ms.size(), 4u);
    for (const auto& m : ms) {
        EXPECT_EQ(m.order(), 9u);
        auto mab = abelianize(h, m);
        EXPECT_EQ(mab.group.p_exponents(3), (std::vector<int>{1, 1}));
    }

    auto a = fixture("abelian_9_3");
    auto am = maximal_subgroups(a);
    int bicyclic = 0;
    for (const auto& m : am)
        if (abelianize(a, m).group.p_exponents(3) == std::vector<int>{1, 1}) ++bicyclic;
    EXPECT_EQ(bicyclic, 1);
    EXPECT_THROW(maximal_subgroups(fixture("cyclic_9")), RankMismatch);
}

TEST(Transfer, MatchesCosetFormula) {
    std::mt19937 rng(2024);
    for (auto name : kFixtures) {
        auto g = fixture(name);
        auto gab = abelianization(g);
        auto subs = gab.group.p_rank(g.p()) == 2 ? maximal_subgroups(g) : std::vector<PcSubgroup>{};
        if (subs.empty())
            subs.push_back(PcSubgroup(g, {g.power(g.generator(0), g.p())}));
        for (const auto& h : subs) {
            auto hab = abelianize(g, h);
            auto m = transfer(g, gab, h, hab);
            for (int trial = 0; trial < 5; ++trial)
                EXPECT_EQ(oracle::transfer_by_cosets(g, h, gab, hab, rng), m.basis_images) << name;
        }
    }
}

TEST(Transfer, AbelianIsPthPower) {
    for (auto name : {"elementary_3_3", "abelian_9_3", "elementary_5_5"}) {
        auto g = fixture(name);
        auto gab = abelianization(g);
        for (const auto& h : maximal_subgroups(g)) {
            auto hab = abelianize(g, h);
            auto m = transfer(g, gab, h, hab);
            for (ElementId x = 0; x < g.order(); ++x)
                EXPECT_EQ(m.apply(gab.image(x)), hab.image(g.power(x, g.p())));
        }
    }
    auto e = fixture("elementary_3_3");
    for (const auto& h : maximal_subgroups(e)) EXPECT_EQ(transfer(e, h).kernel().order(), 9);
}

TEST(Transfer, CyclicNine) {
    auto g = fixture("cyclic_9");
    PcSubgroup h(g, {g.generator(1)});
    EXPECT_EQ(transfer_element(g, h, g.generator(0), g.generator(0)), g.power(g.generator(0), 3));
    EXPECT_EQ(transfer(g, h).kernel().order(), 3);
    EXPECT_THROW(transfer(g, PcSubgroup(g, {})), DomainError);
}

TEST(ArtinPattern, ElementaryAndExtraspecial) {
    auto e = artin_pattern(fixture("elementary_3_3"));
    EXPECT_EQ(e.tkt.to_string(), "0000");
    EXPECT_EQ(e.ttt.to_string(), "1;1;1;1");

    auto r = analyze(fixture("extraspecial_27_exp3"));
    EXPECT_EQ(r.pattern.ttt.to_string(), "1^2;1^2;1^2;1^2");
    EXPECT_EQ(r.pattern.tkt.to_string(), "0000");
    EXPECT_EQ(r.nilpotency_class, 2);
    for (const auto& m : r.transfers) EXPECT_GT(m.kernel().order(), 1);

    auto r9 = analyze(fixture("extraspecial_27_exp9"));
    // Every kernel is the centre-like M_j sitting in the one bicyclic maximal subgroup.
    EXPECT_EQ(r9.pattern.ttt.to_string(), "1^2;2;2;2");
    EXPECT_EQ(r9.pattern.tkt.to_string(), "1111");
}

TEST(ArtinPattern, UVFixtureFlagsNonCyclicPosition) {
    auto r = analyze(fixture("abelian_9_3"));
    EXPECT_EQ(r.ordering.shape.case_tag, SylowCase::UV);
    ASSERT_GT(r.ordering.non_cyc, 0);
    EXPECT_EQ(r.pattern.ttt.entries[static_cast<std::size_t>(r.ordering.non_cyc - 1)], (PType{1, 1}));
    for (const auto& m : r.transfers) EXPECT_GT(m.kernel().order(), 1);
}

TEST(ArtinPattern, InvariantUnderGeneratorChange) {
    // Same group as extraspecial_27_exp9 with the roles of g1 and g2 swapped.
    auto a = analyze(fixture("extraspecial_27_exp9")).pattern;
    auto b = analyze(PcGroup::parse("p 3\ngens 3\npow 2 : g3\nconj 2 1 : g2 g3^2\n")).pattern;
    EXPECT_TRUE(tkt_equivalent(a.tkt, b.tkt));
    auto sa = a.ttt.entries, sb = b.ttt.entries;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    EXPECT_EQ(sa, sb);
}

TEST(ArtinPattern, LargerFixturesIdentify) {
    const auto cat = Catalog::bundled();
    const std::pair<const char*, const char*> cases[] = {{"order81_type_a2", "a.2"},     {"order81_type_a3", "a.3"},
                                                         {"order81_type_a3star", "a.3*"}, {"order243_type_D10", "D.10"},
                                                         {"order243_type_G19", "G.19*"}, {"order243_type_H4", "H.4*"}};
    for (const auto& [file, type] : cases) {
        auto g = fixture(file);
        auto r = analyze(g);
        auto hits = cat.identify(r.pattern);
        ASSERT_EQ(hits.size(), 1u) << file;
        EXPECT_EQ(hits[0]->type_name, type);
        EXPECT_EQ(r.coclass, std::string(type)[0] == 'a' ? 1 : 2) << file;
        for (const auto& m : r.transfers) EXPECT_GT(m.kernel().order(), 1) << file;
    }
}
