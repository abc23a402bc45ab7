// Writes the field-record fixture that reproduces the catalog's AF and MD
// columns: per type one record at its minimal discriminant (source=table)
// and AF-1 placeholder records with distinct fundamental discriminants
// above 10^8 (source=fixture). Placeholder patterns are randomly renumbered
// so ingestion has to identify them up to equivalence.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>

#include "capit/catalog.hpp"
#include "capit/quadratic_forms.hpp"

using namespace capit;

namespace {

ArtinPattern scramble(const ArtinPattern& ap, std::mt19937& rng) {
    std::vector<int> s(4);
    std::iota(s.begin(), s.end(), 1);
    std::shuffle(s.begin(), s.end(), rng);
    std::vector<int> inv(5, 0);
    for (int i = 0; i < 4; ++i) inv[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])] = i + 1;
    ArtinPattern q{Ttt{3, {}}, Tkt{3, std::vector<int>(4), SylowCase::UU}, std::nullopt};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto from = static_cast<std::size_t>(s[i] - 1);
        const int k = ap.tkt.entries[from];
        q.tkt.entries[i] = k == 0 ? 0 : inv[static_cast<std::size_t>(k)];
        q.ttt.entries.push_back(ap.ttt.entries[from]);
    }
    return q;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate the field-record fixture from the catalog"};
    std::string catalog_path = std::string(CAPIT_DATA_DIR) + "/tables.tsv";
    std::string output = std::string(CAPIT_DATA_DIR) + "/fixture_fields.csv";
    unsigned seed = 20161;
    app.add_option("--catalog", catalog_path, "catalog file")->check(CLI::ExistingFile);
    app.add_option("-o,--output", output, "CSV to write");
    app.add_option("--seed", seed, "seed for the placeholder renumerations");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto cat = Catalog::load(catalog_path);
        std::mt19937 rng(seed);
        std::ofstream out(output);
        if (!out) throw Error("cannot write " + output);
        out << "d,kappa,tau,source\n";
        std::int64_t next = 100000000;
        std::size_t written = 0;
        for (const auto& e : cat.entries()) {
            const auto ap = e.pattern();
            out << e.md << ',' << ap.tkt.to_string() << ',' << ap.ttt.to_string() << ",table\n";
            for (std::int64_t k = 1; k < e.af; ++k) {
                do ++next;
                while (!is_fundamental(next));
                const auto q = scramble(ap, rng);
                out << next << ',' << q.tkt.to_string() << ',' << q.ttt.to_string() << ",fixture\n";
            }
            written += static_cast<std::size_t>(e.af);
        }
        std::cerr << "wrote " << written << " records to " << output << '\n';
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
