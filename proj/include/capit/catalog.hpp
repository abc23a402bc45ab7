#pragma once

// Catalog of 3-capitulation types for real quadratic fields with 3-class
// group (3,3): one row per type with its Artin pattern, frequencies, the
// candidate second 3-class groups and what is known about the tower length.
//
// File format: UTF-8, tab separated, '#' comment lines, then a header
//   table_id type_name kappa tau af rf_percent md group_labels aut_order d2 coclass tower_fact
// group_labels is '|' separated; labels prefixed "G:" are candidates for the
// tower group rather than the second 3-class group. aut_order and d2 carry
// one value per printed table line separated by '/'. An empty rf_percent
// means the printed cell was blank.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "capit/artin_pattern.hpp"
#include "capit/error.hpp"

namespace capit {

enum class TowerFactKind { Exactly2, Exactly3, TwoOrThree, Unknown };

inline std::string_view to_string(TowerFactKind k) {
    switch (k) {
        case TowerFactKind::Exactly2: return "Exactly2";
        case TowerFactKind::Exactly3: return "Exactly3";
        case TowerFactKind::TwoOrThree: return "TwoOrThree";
        case TowerFactKind::Unknown: break;
    }
    return "Unknown";
}

inline std::optional<TowerFactKind> parse_tower_fact(std::string_view s) {
    for (auto k : {TowerFactKind::Exactly2, TowerFactKind::Exactly3, TowerFactKind::TwoOrThree, TowerFactKind::Unknown})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

struct TowerFact {
    TowerFactKind kind = TowerFactKind::Unknown;
    std::string provenance;
};

struct CatalogEntry {
    int table_id = 0;
    std::string type_name;
    std::string kappa_text, tau_text;
    Tkt kappa;
    Ttt tau;
    std::int64_t af = 0;
    std::optional<std::string> rf_percent;  ///< as printed, without '%'
    std::int64_t md = 0;
    std::vector<std::string> group_labels;
    std::string aut_order;
    std::string d2;
    int coclass = 0;
    TowerFactKind tower_fact = TowerFactKind::Unknown;
    std::size_t line = 0;

    ArtinPattern pattern() const { return ArtinPattern{tau, kappa, std::nullopt}; }

    /// Labels of the second 3-class group.
    std::vector<std::string> second_groups() const {
        std::vector<std::string> out;
        for (const auto& l : group_labels)
            if (l.rfind("G:", 0) != 0) out.push_back(l);
        return out;
    }

    /// Labels listed as candidates for the tower group.
    std::vector<std::string> tower_group_candidates() const {
        std::vector<std::string> out;
        for (const auto& l : group_labels)
            if (l.rfind("G:", 0) == 0) out.push_back(l.substr(2));
        return out;
    }

    /// Decimal places of the printed relative frequency.
    int rf_precision() const {
        if (!rf_percent) return -1;
        auto dot = rf_percent->find('.');
        return dot == std::string::npos ? 0 : static_cast<int>(rf_percent->size() - dot - 1);
    }
};

namespace detail {

inline const std::set<std::string>& schur_sigma_groups() {
    static const std::set<std::string> s{"<3^5,5>", "<3^5,7>"};
    return s;
}

// Groups with a three-stage tower. The printed list repeats
// <3^7,285>(-#1;1)^3; the second copy is read as the 303 branch.
inline const std::set<std::string>& three_stage_groups() {
    static const std::set<std::string> s{"<3^6,49>",
                                         "<3^6,54>",
                                         "<3^7,285>-#1;1",
                                         "<3^7,303>-#1;1",
                                         "<3^7,285>-#1;1-#1;1-#1;1",
                                         "<3^7,303>-#1;1-#1;1-#1;1"};
    return s;
}

inline const std::set<std::string>& two_or_three_stage_groups() {
    static const std::set<std::string> s{
        "<3^7,288>",           "<3^7,289>",           "<3^7,290>",           "<3^7,302>",
        "<3^7,304>",           "<3^7,306>",           "<3^7,285>-#1;1-#1;4", "<3^7,285>-#1;1-#1;5",
        "<3^7,285>-#1;1-#1;6", "<3^7,303>-#1;1-#1;2", "<3^7,303>-#1;1-#1;4", "<3^7,303>-#1;1-#1;6"};
    return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto end = s.find(sep, start);
        out.emplace_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) return out;
        start = end + 1;
    }
}

inline std::int64_t parse_count(const std::string& s, const char* what, std::size_t line) {
    std::size_t used = 0;
    std::int64_t v = -1;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size() || v < 0)
        throw ParseError(std::string("bad ") + what + " '" + s + "'", line);
    return v;
}

}  // namespace detail

/// Tower length implied by the known theorems for the entry's second
/// 3-class group(s).
inline TowerFact tower_length_fact(const CatalogEntry& e) {
    if (e.coclass == 1)
        return {TowerFactKind::Exactly2, "second 3-class group of maximal class: the tower stops at stage 2"};
    const auto groups = e.second_groups();
    auto all_in = [&](const std::set<std::string>& s) {
        return !groups.empty() && std::all_of(groups.begin(), groups.end(), [&](const auto& g) { return s.count(g); });
    };
    if (all_in(detail::schur_sigma_groups()))
        return {TowerFactKind::Exactly2, "Schur sigma-group <3^5,5> or <3^5,7>: its cover is a singleton"};
    if (all_in(detail::three_stage_groups()))
        return {TowerFactKind::Exactly3, "one of the six groups of types c.18 and c.21 with a three-stage tower"};
    if (all_in(detail::two_or_three_stage_groups()))
        return {TowerFactKind::TwoOrThree, "one of the twelve groups of types E.6, E.8, E.9, E.14: two or three stages"};
    return {TowerFactKind::Unknown, "no criterion known for this second 3-class group"};
}

class Catalog {
public:
    static Catalog parse(std::string_view text) {
        Catalog cat;
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t lineno = 0;
        bool header = false;
        std::set<std::string> names;
        static const std::vector<std::string> kColumns{"table_id", "type_name", "kappa", "tau",
                                                       "af",       "rf_percent", "md",  "group_labels",
                                                       "aut_order", "d2",       "coclass", "tower_fact"};
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            auto cols = detail::split(line, '\t');
            if (!header) {
                if (cols != kColumns) throw ParseError("catalog header does not list the expected columns", lineno);
                header = true;
                continue;
            }
            if (cols.size() != kColumns.size())
                throw ParseError("expected " + std::to_string(kColumns.size()) + " columns, got " +
                                     std::to_string(cols.size()),
                                 lineno);
            CatalogEntry e;
            e.line = lineno;
            e.table_id = static_cast<int>(detail::parse_count(cols[0], "table_id", lineno));
            e.type_name = cols[1];
            if (e.type_name.empty()) throw ParseError("empty type name", lineno);
            if (!names.insert(e.type_name).second)
                throw ParseError("duplicate type name '" + e.type_name + "'", lineno);
            e.kappa_text = cols[2];
            e.tau_text = cols[3];
            try {
                e.kappa = Tkt::parse(cols[2], 3, SylowCase::UU);
                e.tau = Ttt::parse(cols[3], 3);
                e.pattern().validate();
            } catch (const Error& err) {
                throw ParseError(err.what(), lineno);
            }
            e.af = detail::parse_count(cols[4], "af", lineno);
            if (!cols[5].empty()) {
                std::size_t used = 0;
                try {
                    (void)std::stod(cols[5], &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != cols[5].size()) throw ParseError("bad rf_percent '" + cols[5] + "'", lineno);
                e.rf_percent = cols[5];
            }
            e.md = detail::parse_count(cols[6], "md", lineno);
            if (cols[7].empty()) throw ParseError("missing group labels", lineno);
            e.group_labels = detail::split(cols[7], '|');
            e.aut_order = cols[8];
            e.d2 = cols[9];
            e.coclass = static_cast<int>(detail::parse_count(cols[10], "coclass", lineno));
            if (e.coclass < 1) throw ParseError("coclass must be positive", lineno);
            auto fact = parse_tower_fact(cols[11]);
            if (!fact) throw ParseError("unknown tower fact '" + cols[11] + "'", lineno);
            e.tower_fact = *fact;
            if (tower_length_fact(e).kind != e.tower_fact)
                throw ParseError("tower fact " + cols[11] + " contradicts the known criteria (" +
                                     std::string(to_string(tower_length_fact(e).kind)) + ")",
                                 lineno);
            cat.entries_.push_back(std::move(e));
        }
        if (!header) throw ParseError("catalog is empty");
        for (const auto& e : cat.entries_) cat.canonical_.push_back(ap_canonical(e.pattern()));
        return cat;
    }

    static Catalog load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open catalog " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }

    /// The catalog shipped with the library.
    static Catalog bundled() {
#ifdef CAPIT_DATA_DIR
        return load(std::string(CAPIT_DATA_DIR) + "/tables.tsv");
#else
        throw Error("no bundled catalog in this build");
#endif
    }

    const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }

    const CatalogEntry* find(std::string_view type_name) const {
        for (const auto& e : entries_)
            if (e.type_name == type_name) return &e;
        return nullptr;
    }

    std::vector<const CatalogEntry*> table(int id) const {
        std::vector<const CatalogEntry*> out;
        for (const auto& e : entries_)
            if (e.table_id == id) out.push_back(&e);
        return out;
    }

    /// Entries whose Artin pattern equals `ap` up to joint renumeration.
    std::vector<const CatalogEntry*> identify(const ArtinPattern& ap) const {
        std::vector<const CatalogEntry*> out;
        if (ap.tkt.p != 3 || ap.tkt.case_tag != SylowCase::UU) return out;
        const auto key = ap_canonical(ap);
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (canonical_[i].tkt == key.tkt && canonical_[i].ttt == key.ttt) out.push_back(&entries_[i]);
        return out;
    }

private:
    std::vector<CatalogEntry> entries_;
    std::vector<ArtinPattern> canonical_;
};

struct ProportionCheck {
    std::string name;
    std::vector<std::string> types;   ///< catalog rows, one per slot
    std::vector<double> expected;     ///< the conjectured proportion
    std::vector<std::int64_t> observed;
    std::vector<double> deviation;    ///< |observed share / expected share - 1| per slot
    bool comparable = false;
    std::string note;

    double max_deviation() const {
        return deviation.empty() ? 0.0 : *std::max_element(deviation.begin(), deviation.end());
    }
};

namespace detail {

inline ProportionCheck proportion_check(const Catalog& cat, std::string name, std::vector<std::string> types,
                                        std::vector<double> expected, std::string note) {
    ProportionCheck c{std::move(name), std::move(types), std::move(expected), {}, {}, false, std::move(note)};
    for (const auto& t : c.types) {
        const auto* e = cat.find(t);
        if (!e) {
            c.observed.clear();
            c.note = "insufficient data: type " + t + " is not in the catalog";
            return c;
        }
        c.observed.push_back(e->af);
    }
    const double total = static_cast<double>(std::accumulate(c.observed.begin(), c.observed.end(), std::int64_t{0}));
    const double weight = std::accumulate(c.expected.begin(), c.expected.end(), 0.0);
    if (total <= 0) {
        c.note = "insufficient data: no occurrences";
        return c;
    }
    for (std::size_t i = 0; i < c.observed.size(); ++i) {
        const double want = total * c.expected[i] / weight;
        c.deviation.push_back(std::fabs(static_cast<double>(c.observed[i]) - want) / want);
    }
    c.comparable = true;
    return c;
}

}  // namespace detail

/// Checks of the conjectured frequency proportions against the catalog.
///
/// Proportions whose groups share one catalog row cannot be tested from
/// the tables and are reported as not comparable.
inline std::vector<ProportionCheck> proportion_report(const Catalog& cat) {
    std::vector<ProportionCheck> out;
    out.push_back(detail::proportion_check(cat, "3:3:2 ground states <3^4,7>, <3^4,8>, <3^4,10>",
                                           {"a.3*", "a.3", "a.2"}, {3, 3, 2}, "reciprocal automorphism group orders"));
    out.push_back(detail::proportion_check(
        cat, "3:3:2 first excited states <3^6,97|98> : <3^6,96>, cumulated 3:1", {"a.3↑", "a.2↑"}, {3, 1},
        "<3^6,97> and <3^6,98> share type a.3↑, so their slots are cumulated"));

    ProportionCheck c18{"1:2 for <3^7,284> : <3^7,291>", {"c.18"}, {1, 2}, {}, {}, false,
                        "not comparable: both groups realize type c.18 and the tables give one frequency"};
    if (const auto* e = cat.find("c.18")) c18.observed.push_back(e->af);
    out.push_back(std::move(c18));
    ProportionCheck c21{"1:2 for <3^7,307> : <3^7,308>", {"c.21"}, {1, 2}, {}, {}, false,
                        "not comparable: no invariants distinguish these groups; one frequency for type c.21"};
    if (const auto* e = cat.find("c.21")) c21.observed.push_back(e->af);
    out.push_back(std::move(c21));
    ProportionCheck h4{"3:1:2:6 (cumulated 1:1:2) for <3^7,270..273>", {"H.4*"}, {3, 1, 2, 6}, {}, {}, false,
                       "not comparable: all four groups realize type H.4* and the tables give one frequency"};
    if (const auto* e = cat.find("H.4*")) h4.observed.push_back(e->af);
    out.push_back(std::move(h4));
    return out;
}

}  // namespace capit
