#pragma once

// Command-line front end. cli_dispatch takes the arguments after the
// program name and returns the exit code: 0 success, 1 domain error,
// 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "capit/catalog.hpp"
#include "capit/pc_group.hpp"
#include "capit/quadratic_forms.hpp"
#include "capit/stats.hpp"

namespace capit {

namespace detail {

using nlohmann::json;

inline std::string element_string(const Element& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

inline std::vector<std::string> generator_strings(const std::vector<Element>& gens) {
    std::vector<std::string> out;
    for (const auto& x : gens)
        if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v != 0; })) out.push_back(element_string(x));
    return out;
}

inline std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json entry_json(const CatalogEntry& e) {
    auto fact = tower_length_fact(e);
    return {{"type", e.type_name},         {"table", e.table_id},
            {"kappa", e.kappa_text},       {"tau", e.tau_text},
            {"coclass", e.coclass},        {"second_group", e.second_groups()},
            {"tower_group_candidates", e.tower_group_candidates()},
            {"af", e.af},                  {"md", e.md},
            {"tower_length", to_string(fact.kind)},
            {"provenance", fact.provenance}};
}

inline void print_entries(std::ostream& out, const std::vector<const CatalogEntry*>& hits, bool as_json) {
    if (as_json) {
        json arr = json::array();
        for (const auto* e : hits) arr.push_back(entry_json(*e));
        out << arr.dump(2) << '\n';
        return;
    }
    if (hits.empty()) out << "no matching type\n";
    for (const auto* e : hits) {
        auto fact = tower_length_fact(*e);
        out << e->type_name << "\tcoclass " << e->coclass << '\t' << join(e->second_groups(), " ");
        if (auto g = e->tower_group_candidates(); !g.empty()) out << "\tG in {" << join(g, ", ") << '}';
        out << '\t' << to_string(fact.kind) << " (" << fact.provenance << ")\n";
    }
}

}  // namespace detail

inline int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using detail::json;
    CLI::App app{"Capitulation types, class groups and Artin transfers", "capit"};
    app.require_subcommand(1);
    std::string format = "text";
    std::string catalog_path;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--catalog", catalog_path, "catalog file instead of the bundled tables");

    std::int64_t d = 0;
    auto* classgroup = app.add_subcommand("classgroup", "narrow class group of a real quadratic field");
    classgroup->add_option("d", d, "fundamental discriminant")->required();

    std::int64_t from = 0, to = 0, block = 10000;
    unsigned jobs = 1;
    std::string checkpoint;
    auto* scan = app.add_subcommand("scan", "discriminants from < d < to with 3-class group (3,3)");
    scan->add_option("--from", from, "exclusive lower bound")->required();
    scan->add_option("--to", to, "exclusive upper bound")->required();
    scan->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
    scan->add_option("--block", block, "discriminants per work unit")->check(CLI::PositiveNumber);
    scan->add_option("--checkpoint", checkpoint, "progress file; an existing one resumes the scan");

    std::string invariants;
    std::int64_t prime = 3;
    auto* subgroups = app.add_subcommand("subgroups", "order-p and index-p subgroups in natural order");
    subgroups->add_option("invariants", invariants, "abelian type, e.g. 9,3")->required();
    subgroups->add_option("--prime", prime, "the prime p");

    std::string kappa, tau, case_name = "UU";
    int tkt_prime = 3;
    auto* canon = app.add_subcommand("tkt-canon", "orbit-canonical transfer kernel type");
    canon->add_option("kappa", kappa, "kernel identifiers, e.g. 2241")->required();
    canon->add_option("--case", case_name, "UU, UV or VV")->check(CLI::IsMember({"UU", "UV", "VV"}));
    canon->add_option("--prime", tkt_prime, "the prime p");

    auto* taussky = app.add_subcommand("taussky", "Taussky conditions A/B of a transfer kernel type");
    taussky->add_option("kappa", kappa, "kernel identifiers")->required();
    taussky->add_option("--case", case_name, "UU, UV or VV")->check(CLI::IsMember({"UU", "UV", "VV"}));
    taussky->add_option("--prime", tkt_prime, "the prime p");

    std::string pc_file;
    auto* transfer_cmd = app.add_subcommand("transfer", "Artin pattern of a p-group given by a pc presentation");
    transfer_cmd->add_option("file", pc_file, "presentation file")->required();

    auto* identify = app.add_subcommand("identify", "catalog types matching an Artin pattern");
    identify->add_option("kappa", kappa, "kernel identifiers, e.g. 2241")->required();
    identify->add_option("tau", tau, "targets, e.g. \"21;21;1^3;21\"")->required();

    std::string csv;
    auto* stats = app.add_subcommand("stats", "AF, RF and MD per type from field records");
    stats->add_option("csv", csv, "records with header d,kappa,tau[,source]")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code == 0) return 0;
        err << app.help();
        return 2;
    }

    const bool as_json = format == "json";
    auto catalog = [&] { return catalog_path.empty() ? Catalog::bundled() : Catalog::load(catalog_path); };

    try {
        if (*classgroup) {
            auto r = narrow_class_group(d);
            if (as_json) {
                json gens = json::array();
                for (const auto& f : r.generator_forms) gens.push_back(f.to_string());
                out << json{{"d", r.d},
                            {"class_number", r.class_number},
                            {"invariants", r.narrow.invariants()},
                            {"sylow3", format_ptype(r.sylow3)},
                            {"generators", gens}}
                           .dump(2)
                    << '\n';
            } else {
                out << r.narrow.to_string() << '\n';
            }
        } else if (*scan) {
            ScanOptions opt;
            opt.jobs = jobs;
            opt.block = block;
            if (!checkpoint.empty()) opt.checkpoint = checkpoint;
            if (!as_json) opt.on_hit = [&](std::int64_t x) { out << x << '\n' << std::flush; };
            auto hits = scan_range(from, to, opt);
            if (as_json) out << json{{"from", from}, {"to", to}, {"hits", hits}}.dump(2) << '\n';
        } else if (*subgroups) {
            auto a = AbelianGroup::parse(invariants);
            auto ord = natural_ordering(a, prime);
            auto low = subgroups_order_p(a, prime);
            if (as_json) {
                json j{{"case", to_string(ord.shape.case_tag)}, {"seq_i", ord.seq_i},
                       {"non_cyc", ord.non_cyc}, {"cyc", ord.cyc}};
                for (const auto& s : low) {
                    json g = json::array();
                    for (const auto& x : s.generators()) g.push_back(x);
                    j["order_p"].push_back(g);
                }
                for (std::size_t i = 0; i < ord.subgroups.size(); ++i) {
                    json g = json::array();
                    for (const auto& x : ord.subgroups[i].generators()) g.push_back(x);
                    j["index_p"].push_back({{"generators", g},
                                            {"type", format_ptype(ord.subgroups[i].p_exponents(prime))},
                                            {"contains", ord.pools[i]}});
                }
                out << j.dump(2) << '\n';
            } else {
                out << "case " << to_string(ord.shape.case_tag) << '\n';
                for (std::size_t i = 0; i < low.size(); ++i) {
                    auto g = detail::generator_strings(low[i].generators());
                    out << "order " << prime << " #" << i + 1 << "\t<" << detail::join(g, ", ") << ">\n";
                }
                for (std::size_t i = 0; i < ord.subgroups.size(); ++i) {
                    auto g = detail::generator_strings(ord.subgroups[i].generators());
                    std::vector<std::string> pool;
                    for (int k : ord.pools[i]) pool.push_back(std::to_string(k));
                    out << "index " << prime << " #" << i + 1 << "\t<" << detail::join(g, ", ") << ">\ttype "
                        << format_ptype(ord.subgroups[i].p_exponents(prime)) << "\tcontains "
                        << detail::join(pool, ",") << '\n';
                }
            }
        } else if (*canon || *taussky) {
            auto t = Tkt::parse(kappa, tkt_prime, parse_sylow_case(case_name));
            const std::string result =
                *canon ? tkt_orbit_canonical(t).to_string() : to_string(taussky_weak_tkt(t));
            if (as_json)
                out << json{{"kappa", t.to_string()}, {"case", case_name}, {*canon ? "canonical" : "taussky", result}}
                           .dump(2)
                    << '\n';
            else
                out << result << '\n';
        } else if (*transfer_cmd) {
            auto g = PcGroup::parse(detail::read_file(pc_file));
            auto r = analyze(g);
            std::vector<const CatalogEntry*> hits;
            Catalog cat;
            if (g.p() == 3 && r.pattern.tkt.case_tag == SylowCase::UU) {
                cat = catalog();
                hits = cat.identify(r.pattern);
            }
            if (as_json) {
                json maxes = json::array();
                for (std::size_t i = 0; i < r.transfers.size(); ++i)
                    maxes.push_back({{"order", r.maximal[i].order()},
                                     {"target", format_ptype(r.pattern.ttt.entries[i])},
                                     {"kernel", r.pattern.tkt.entries[i]},
                                     {"kernel_order", r.transfers[i].kernel().order()}});
                json types = json::array();
                for (const auto* e : hits) types.push_back(detail::entry_json(*e));
                out << json{{"order", r.order},
                            {"class", r.nilpotency_class},
                            {"coclass", r.coclass},
                            {"abelianization", r.abelianization.invariants()},
                            {"case", to_string(r.pattern.tkt.case_tag)},
                            {"maximal", maxes},
                            {"kappa", r.pattern.tkt.to_string()},
                            {"tau", r.pattern.ttt.to_string()},
                            {"taussky", r.pattern.weak_tkt ? to_string(*r.pattern.weak_tkt) : ""},
                            {"types", types}}
                           .dump(2)
                    << '\n';
            } else {
                out << "order " << r.order << "  class " << r.nilpotency_class << "  coclass " << r.coclass
                    << "  abelianization " << r.abelianization.to_string() << '\n';
                for (std::size_t i = 0; i < r.transfers.size(); ++i)
                    out << "M" << i + 1 << "\ttarget " << format_ptype(r.pattern.ttt.entries[i]) << "\tkernel "
                        << r.pattern.tkt.entries[i] << " (order " << r.transfers[i].kernel().order() << ")\n";
                out << "kappa " << r.pattern.tkt.to_string() << "\ntau " << r.pattern.ttt.to_string() << '\n';
                if (r.pattern.weak_tkt) out << "taussky " << to_string(*r.pattern.weak_tkt) << '\n';
                if (!hits.empty()) detail::print_entries(out, hits, false);
            }
        } else if (*identify) {
            ArtinPattern ap{Ttt::parse(tau, 3), Tkt::parse(kappa, 3, SylowCase::UU), std::nullopt};
            ap.validate();
            auto cat = catalog();
            detail::print_entries(out, cat.identify(ap), as_json);
        } else if (*stats) {
            auto cat = catalog();
            auto rep = aggregate(ingest_csv(csv), cat);
            if (as_json) {
                json rows = json::array();
                for (const auto& r : rep.rows)
                    rows.push_back({{"type", r.type_name},
                                    {"coclass", r.coclass},
                                    {"af", r.af},
                                    {"rf", r.rf ? json(*r.rf) : json(nullptr)},
                                    {"md", r.md}});
                json totals = json::array();
                for (const auto& t : rep.totals) totals.push_back({{"coclass", t.coclass}, {"af", t.af}});
                out << json{{"rows", rows}, {"totals", totals}, {"total", rep.total},
                            {"unclassified", rep.unclassified}}
                           .dump(2)
                    << '\n';
            } else {
                out << render(rep, cat);
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace capit
