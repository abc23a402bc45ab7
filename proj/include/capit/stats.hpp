#pragma once

// Per-field records and the frequency statistics (AF, RF, MD per
// capitulation type, grouped by coclass) derived from them.
//
// CSV input: header "d,kappa,tau" or "d,kappa,tau,source". tau uses ';'
// between the four targets, e.g. 32009,2000,21;11;11;11.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "capit/catalog.hpp"
#include "capit/quadratic_forms.hpp"

namespace capit {

struct FieldRecord {
    std::int64_t d = 0;
    std::string kappa;
    std::string tau;
    std::string source;
    std::size_t line = 0;

    ArtinPattern pattern() const {
        return ArtinPattern{Ttt::parse(tau, 3), Tkt::parse(kappa, 3, SylowCase::UU), std::nullopt};
    }
};

/// Parses CSV text. Every error is a ParseError naming its line.
inline std::vector<FieldRecord> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool with_source = false, header = false;
    std::vector<FieldRecord> out;
    std::map<std::int64_t, std::size_t> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cols = detail::split(line, ',');
        if (!header) {
            if (cols == std::vector<std::string>{"d", "kappa", "tau", "source"})
                with_source = true;
            else if (cols != std::vector<std::string>{"d", "kappa", "tau"})
                throw ParseError("expected header d,kappa,tau[,source]", lineno);
            header = true;
            continue;
        }
        if (cols.size() != (with_source ? 4u : 3u))
            throw ParseError("expected " + std::to_string(with_source ? 4 : 3) + " fields, got " +
                                 std::to_string(cols.size()),
                             lineno);
        FieldRecord r;
        r.line = lineno;
        r.d = detail::parse_count(cols[0], "discriminant", lineno);
        if (!is_fundamental(r.d))
            throw ParseError(cols[0] + " is not a fundamental discriminant", lineno);
        r.kappa = cols[1];
        r.tau = cols[2];
        if (with_source) r.source = cols[3];
        try {
            auto ap = r.pattern();
            if (ap.ttt.entries.size() != 4)
                throw ParseError("tau needs 4 components, got " + std::to_string(ap.ttt.entries.size()), lineno);
            ap.validate();
        } catch (const ParseError& e) {
            if (e.line() != 0) throw;
            throw ParseError(e.what(), lineno);
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno);
        }
        auto [it, fresh] = seen.emplace(r.d, lineno);
        if (!fresh)
            throw ParseError("duplicate discriminant " + cols[0] + " on lines " + std::to_string(it->second) +
                                 " and " + std::to_string(lineno),
                             lineno);
        out.push_back(std::move(r));
    }
    if (!header) throw ParseError("empty record file");
    return out;
}

inline std::vector<FieldRecord> ingest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

struct StatRow {
    std::string type_name;
    int table_id = 0;
    int coclass = 0;
    std::int64_t af = 0;
    std::optional<std::string> rf;  ///< percent without '%', blank when the catalog cell is blank
    std::int64_t md = 0;
};

struct CoclassTotal {
    int coclass = 0;
    std::int64_t af = 0;
};

struct StatReport {
    std::vector<StatRow> rows;  ///< catalog order, types that occur at least once
    std::vector<CoclassTotal> totals;
    std::int64_t total = 0;
    std::vector<std::int64_t> unclassified;  ///< discriminants without exactly one catalog match
};

/// 100·num/den rounded half up to `decimals` places, exactly.
inline std::string percent_half_up(std::int64_t num, std::int64_t den, int decimals) {
    if (den <= 0 || num < 0) throw DomainError("percentage of a non-positive total");
    std::int64_t scale = 100;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const auto wide = static_cast<__int128>(num) * scale;
    auto q = static_cast<std::int64_t>(wide / den);
    if (2 * (wide % den) >= den) ++q;
    std::string s = std::to_string(q);
    if (decimals == 0) return s;
    if (s.size() <= static_cast<std::size_t>(decimals)) s.insert(0, static_cast<std::size_t>(decimals) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(decimals), ".");
    return s;
}

/// AF, MD and RF per catalog type. RF is relative to the coclass total and
/// printed at the precision of the catalog's own RF cell.
inline StatReport aggregate(const std::vector<FieldRecord>& records, const Catalog& cat) {
    std::map<std::pair<std::string, std::string>, const CatalogEntry*> memo;
    std::map<const CatalogEntry*, StatRow> acc;
    StatReport rep;
    for (const auto& r : records) {
        auto key = std::make_pair(r.kappa, r.tau);
        auto it = memo.find(key);
        if (it == memo.end()) {
            auto hits = cat.identify(r.pattern());
            it = memo.emplace(key, hits.size() == 1 ? hits[0] : nullptr).first;
        }
        if (!it->second) {
            rep.unclassified.push_back(r.d);
            continue;
        }
        auto& row = acc[it->second];
        if (row.af == 0 || r.d < row.md) row.md = r.d;
        ++row.af;
    }
    std::sort(rep.unclassified.begin(), rep.unclassified.end());

    std::map<int, std::int64_t> by_coclass;
    for (const auto& [e, row] : acc) by_coclass[e->coclass] += row.af;
    for (const auto& [c, n] : by_coclass) {
        rep.totals.push_back({c, n});
        rep.total += n;
    }
    for (const auto& e : cat.entries()) {
        auto it = acc.find(&e);
        if (it == acc.end()) continue;
        StatRow row = it->second;
        row.type_name = e.type_name;
        row.table_id = e.table_id;
        row.coclass = e.coclass;
        if (e.rf_percent) row.rf = percent_half_up(row.af, by_coclass[e.coclass], e.rf_precision());
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

/// Plain text rendering, one block per coclass with a total line.
inline std::string render(const StatReport& rep, const Catalog& cat) {
    std::ostringstream os;
    for (const auto& t : rep.totals) {
        os << "coclass " << t.coclass << "\n";
        os << "type\tkappa\ttau\tAF\tRF\tMD\n";
        for (const auto& r : rep.rows) {
            if (r.coclass != t.coclass) continue;
            const auto* e = cat.find(r.type_name);
            os << r.type_name << '\t' << e->kappa_text << '\t' << e->tau_text << '\t' << r.af << '\t'
               << (r.rf ? *r.rf + "%" : "") << '\t' << r.md << '\n';
        }
        os << "Total\t\t\t" << t.af << "\t100%\t\n\n";
    }
    if (!rep.unclassified.empty()) os << "unclassified\t" << rep.unclassified.size() << '\n';
    os << "grand total\t" << rep.total << '\n';
    return os.str();
}

}  // namespace capit
