#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "capit/catalog.hpp"

using namespace capit;

namespace {

const Catalog& bundled() {
    static const Catalog c = Catalog::bundled();
    return c;
}

const std::string kHeader =
    "table_id\ttype_name\tkappa\ttau\taf\trf_percent\tmd\tgroup_labels\taut_order\td2\tcoclass\ttower_fact\n";

std::string row(const std::string& name, const std::string& kappa = "1000", const std::string& extra = "") {
    return "1\t" + name + "\t" + kappa + "\t21,(1^2)^3\t5\t1.0\t100\t<3^4,10>\t2\t3\t1\tExactly2" + extra + "\n";
}

std::size_t error_line(const std::string& text) {
    try {
        Catalog::parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

// Joint renumeration for case UU written out directly: a permutation s of
// {1..4} moves position s(i) to i and relabels every nonzero kernel k by
// s^-1(k).
ArtinPattern relabel(const ArtinPattern& ap, const std::vector<int>& s) {
    std::vector<int> inv(5, 0);
    for (int i = 0; i < 4; ++i) inv[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])] = i + 1;
    ArtinPattern q;
    q.tkt = Tkt{3, std::vector<int>(4), SylowCase::UU};
    q.ttt.p = 3;
    for (std::size_t i = 0; i < 4; ++i) {
        const int k = ap.tkt.entries[static_cast<std::size_t>(s[i] - 1)];
        q.tkt.entries[i] = k == 0 ? 0 : inv[static_cast<std::size_t>(k)];
        q.ttt.entries.push_back(ap.ttt.entries[static_cast<std::size_t>(s[i] - 1)]);
    }
    return q;
}

}  // namespace

TEST(Catalog, BundledShape) {
    const auto& c = bundled();
    EXPECT_EQ(c.entries().size(), 46u);
    std::map<int, std::int64_t> af;
    for (const auto& e : c.entries()) af[e.table_id] += e.af;
    EXPECT_EQ(af[1], 31088);
    EXPECT_EQ(af[2], 3328);
    EXPECT_EQ(af[3], 190);
    EXPECT_EQ(af[4], 25);
    EXPECT_EQ(c.table(1).size(), 11u);
    ASSERT_NE(c.find("a.3"), nullptr);
    EXPECT_EQ(c.find("a.3")->md, 32009);
    EXPECT_EQ(c.find("a.3")->rf_precision(), 2);
    EXPECT_EQ(c.find("nope"), nullptr);
}

TEST(Catalog, ParseErrorsCarryLineNumbers) {
    EXPECT_THROW(Catalog::parse(""), ParseError);
    EXPECT_THROW(Catalog::parse("# only a comment\n"), ParseError);
    EXPECT_EQ(error_line("# c\nbad header\n"), 2u);
    EXPECT_EQ(error_line(kHeader + row("a.2") + row("a.2")), 3u);
    EXPECT_EQ(error_line(kHeader + row("a.2", "10x0")), 2u);
    EXPECT_EQ(error_line(kHeader + row("a.2", "1005")), 2u);
    EXPECT_EQ(error_line(kHeader + "# skip\n" + row("a.2", "1000", "\textra")), 3u);
    // A coclass 1 row cannot claim an unknown tower length.
    std::string wrong = row("a.2");
    wrong.replace(wrong.find("Exactly2"), 8, "Unknown");
    EXPECT_EQ(error_line(kHeader + wrong), 2u);
    auto ok = Catalog::parse(kHeader + row("a.2"));
    EXPECT_EQ(ok.entries().size(), 1u);
    EXPECT_EQ(ok.entries()[0].line, 2u);
}

TEST(Catalog, IdentifiesEveryRowUnderRenumeration) {
    const auto& c = bundled();
    for (const auto& e : c.entries()) {
        std::vector<int> s{1, 2, 3, 4};
        do {
            auto hits = c.identify(relabel(e.pattern(), s));
            ASSERT_EQ(hits.size(), 1u) << e.type_name;
            EXPECT_EQ(hits[0], &e);
        } while (std::next_permutation(s.begin(), s.end()));
    }
}

TEST(Catalog, IdentifyRejectsOtherCases) {
    auto ap = bundled().find("a.1")->pattern();
    ap.tkt.case_tag = SylowCase::VV;
    EXPECT_TRUE(bundled().identify(ap).empty());
    ArtinPattern unknown{Ttt::parse("(1^2)^4"), Tkt::parse("1234", 3, SylowCase::UU), std::nullopt};
    EXPECT_TRUE(bundled().identify(unknown).empty());
}

TEST(TowerFact, Rules) {
    const auto& c = bundled();
    EXPECT_EQ(tower_length_fact(*c.find("a.1")).kind, TowerFactKind::Exactly2);
    EXPECT_EQ(tower_length_fact(*c.find("D.5")).kind, TowerFactKind::Exactly2);
    EXPECT_EQ(tower_length_fact(*c.find("D.10")).kind, TowerFactKind::Exactly2);
    EXPECT_EQ(tower_length_fact(*c.find("c.18")).kind, TowerFactKind::Exactly3);
    EXPECT_EQ(tower_length_fact(*c.find("c.21")).kind, TowerFactKind::Exactly3);
    EXPECT_EQ(tower_length_fact(*c.find("E.9")).kind, TowerFactKind::TwoOrThree);
    EXPECT_EQ(tower_length_fact(*c.find("G.19*")).kind, TowerFactKind::Unknown);
    for (const auto& e : c.entries()) EXPECT_FALSE(tower_length_fact(e).provenance.empty());
    std::map<TowerFactKind, int> counts;
    for (const auto& e : c.entries()) ++counts[e.tower_fact];
    EXPECT_EQ(counts[TowerFactKind::Exactly2], 13);
    EXPECT_EQ(counts[TowerFactKind::Exactly3], 4);
    EXPECT_EQ(counts[TowerFactKind::TwoOrThree], 8);
}

TEST(Proportions, Report) {
    auto rep = proportion_report(bundled());
    ASSERT_EQ(rep.size(), 5u);
    EXPECT_TRUE(rep[0].comparable);
    EXPECT_EQ(rep[0].observed, (std::vector<std::int64_t>{10244, 10514, 7104}));
    // 27862 split 3:3:2 gives 10448.25 and 6965.5.
    EXPECT_NEAR(rep[0].deviation[0], (10448.25 - 10244) / 10448.25, 1e-12);
    EXPECT_NEAR(rep[0].deviation[2], (7104 - 6965.5) / 6965.5, 1e-12);
    EXPECT_LT(rep[0].max_deviation(), 0.05);
    EXPECT_TRUE(rep[1].comparable);
    EXPECT_EQ(rep[1].observed, (std::vector<std::int64_t>{713, 242}));
    EXPECT_LT(rep[1].max_deviation(), 0.05);
    for (std::size_t i = 2; i < rep.size(); ++i) {
        EXPECT_FALSE(rep[i].comparable);
        EXPECT_NE(rep[i].note.find("not comparable"), std::string::npos);
    }
}

TEST(Proportions, InsufficientData) {
    auto rep = proportion_report(Catalog::parse(kHeader + row("a.2")));
    for (const auto& c : rep) EXPECT_FALSE(c.comparable);
    EXPECT_NE(rep[0].note.find("insufficient data"), std::string::npos);
}
