#pragma once

// Finite p-groups given by polycyclic presentations.
//
// Presentation text:
//
//     p 3
//     gens 3
//     pow 1 : g3
//     conj 2 1 : g2 g3
//
// `pow i : w` says g_i^(relative order) = w, `conj j i : w` (j > i) says
// g_j^(g_i) = g_i^-1 g_j g_i = w, and w may only use generators after g_i.
// Omitted relations are trivial. Relative orders default to p and may be
// overridden with `relorders o_1 ... o_n` (each a power of p).
//
// Multiplication is table driven: for every generator g_k the map
// x -> x * g_k is tabulated by collecting in the subgroup <g_{k+1}, ...>,
// whose tables are built first. Products of arbitrary elements then cost
// one lookup per letter of the right factor's normal word.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capit/abelian.hpp"
#include "capit/artin_pattern.hpp"
#include "capit/detail/smith.hpp"
#include "capit/error.hpp"

namespace capit {

using ElementId = std::uint32_t;

/// Word in the pc generators: (0-based generator, exponent) factors.
using PcWord = std::vector<std::pair<int, std::int64_t>>;

struct PcPresentation {
    int p = 0;
    int ngens = 0;
    std::vector<std::int64_t> relative_orders;
    std::vector<PcWord> power_relations;                     ///< per generator
    std::map<std::pair<int, int>, PcWord> conjugate_relations;  ///< (j, i), j > i, 0-based

    static PcPresentation parse(std::string_view text) {
        PcPresentation pr;
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t lineno = 0;
        bool have_gens = false;

        auto parse_int = [&](const std::string& tok) -> std::int64_t {
            std::size_t used = 0;
            std::int64_t v = 0;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("expected an integer, got '" + tok + "'", lineno);
            }
            if (used != tok.size()) throw ParseError("expected an integer, got '" + tok + "'", lineno);
            return v;
        };
        auto gen_index = [&](const std::string& tok) {
            if (!have_gens) throw ParseError("'gens' must precede relations", lineno);
            auto v = parse_int(tok);
            if (v < 1 || v > pr.ngens) throw ParseError("generator index " + tok + " out of range", lineno);
            return static_cast<int>(v - 1);
        };
        auto parse_word = [&](std::istringstream& rest, int after) {
            PcWord w;
            std::string tok;
            while (rest >> tok) {
                if (tok == "1") continue;
                if (tok.size() < 2 || tok[0] != 'g') throw ParseError("malformed word factor '" + tok + "'", lineno);
                auto caret = tok.find('^');
                int g = gen_index(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
                std::int64_t e = caret == std::string::npos ? 1 : parse_int(tok.substr(caret + 1));
                if (g <= after)
                    throw ParseError("relation word may only use generators after g" + std::to_string(after + 1),
                                     lineno);
                if (e < 0) throw ParseError("negative exponents are not supported in words", lineno);
                w.emplace_back(g, e);
            }
            return w;
        };

        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string key;
            if (!(ls >> key)) continue;
            if (key == "p") {
                std::string tok;
                ls >> tok;
                pr.p = static_cast<int>(parse_int(tok));
                if (!is_prime(pr.p)) throw ParseError("p = " + tok + " is not prime", lineno);
            } else if (key == "gens") {
                std::string tok;
                ls >> tok;
                pr.ngens = static_cast<int>(parse_int(tok));
                if (pr.ngens < 1) throw ParseError("need at least one generator", lineno);
                if (pr.p == 0) throw ParseError("'p' must precede 'gens'", lineno);
                have_gens = true;
                pr.relative_orders.assign(static_cast<std::size_t>(pr.ngens), pr.p);
                pr.power_relations.assign(static_cast<std::size_t>(pr.ngens), {});
            } else if (key == "relorders") {
                if (!have_gens) throw ParseError("'gens' must precede 'relorders'", lineno);
                for (int i = 0; i < pr.ngens; ++i) {
                    std::string tok;
                    if (!(ls >> tok)) throw ParseError("relorders needs one entry per generator", lineno);
                    auto o = parse_int(tok);
                    std::int64_t v = o;
                    while (v > 1 && v % pr.p == 0) v /= pr.p;
                    if (o < pr.p || v != 1)
                        throw ParseError("relative order " + tok + " is not a power of " + std::to_string(pr.p),
                                         lineno);
                    pr.relative_orders[static_cast<std::size_t>(i)] = o;
                }
            } else if (key == "pow") {
                std::string tok, colon;
                ls >> tok >> colon;
                int i = gen_index(tok);
                if (colon != ":") throw ParseError("expected ':' in pow relation", lineno);
                pr.power_relations[static_cast<std::size_t>(i)] = parse_word(ls, i);
            } else if (key == "conj") {
                std::string tj, ti, colon;
                ls >> tj >> ti >> colon;
                int j = gen_index(tj), i = gen_index(ti);
                if (j <= i) throw ParseError("conj j i needs j > i", lineno);
                if (colon != ":") throw ParseError("expected ':' in conj relation", lineno);
                pr.conjugate_relations[{j, i}] = parse_word(ls, i);
            } else {
                throw ParseError("unknown directive '" + key + "'", lineno);
            }
        }
        if (!have_gens) throw ParseError("missing 'gens' line");
        return pr;
    }

    std::string to_string() const {
        std::ostringstream out;
        auto word = [](const PcWord& w) {
            std::string s;
            for (auto [g, e] : w) {
                if (!s.empty()) s += ' ';
                s += "g" + std::to_string(g + 1);
                if (e != 1) s += "^" + std::to_string(e);
            }
            return s.empty() ? std::string("1") : s;
        };
        out << "p " << p << "\ngens " << ngens << "\n";
        if (std::any_of(relative_orders.begin(), relative_orders.end(), [&](auto o) { return o != p; })) {
            out << "relorders";
            for (auto o : relative_orders) out << ' ' << o;
            out << "\n";
        }
        for (int i = 0; i < ngens; ++i)
            if (!power_relations[static_cast<std::size_t>(i)].empty())
                out << "pow " << i + 1 << " : " << word(power_relations[static_cast<std::size_t>(i)]) << "\n";
        for (const auto& [key, w] : conjugate_relations)
            out << "conj " << key.first + 1 << ' ' << key.second + 1 << " : " << word(w) << "\n";
        return out.str();
    }
};

class PcGroup {
public:
    /// Groups up to this order get the full associativity check.
    static constexpr std::size_t kConsistencyCheckLimit = 729;
    static constexpr std::size_t kMaxOrder = std::size_t{1} << 22;

    explicit PcGroup(PcPresentation pres) : pres_(std::move(pres)) {
        const auto n = static_cast<std::size_t>(pres_.ngens);
        if (n == 0 || pres_.relative_orders.size() != n || pres_.power_relations.size() != n)
            throw DomainError("presentation is incomplete");
        long double size = 1;
        for (auto o : pres_.relative_orders) size *= static_cast<long double>(o);
        if (size > static_cast<long double>(kMaxOrder)) throw DomainError("group order exceeds supported size");
        order_ = 1;
        stride_.assign(n, 1);
        for (std::size_t k = n; k-- > 0;) {
            stride_[k] = order_;
            order_ *= static_cast<std::size_t>(pres_.relative_orders[k]);
        }
        build_tables();
        if (order_ <= kConsistencyCheckLimit) {
            check_consistency();
            checked_ = true;
        }
    }

    static PcGroup parse(std::string_view text) { return PcGroup(PcPresentation::parse(text)); }

    const PcPresentation& presentation() const noexcept { return pres_; }
    int p() const noexcept { return pres_.p; }
    int ngens() const noexcept { return pres_.ngens; }
    std::size_t order() const noexcept { return order_; }

    /// log_p |G|.
    int log_order() const { return valuation(static_cast<std::int64_t>(order_), pres_.p); }

    /// False when the group was too large for the associativity check.
    bool consistency_checked() const noexcept { return checked_; }

    ElementId identity() const noexcept { return 0; }
    ElementId generator(int k) const { return static_cast<ElementId>(stride_.at(static_cast<std::size_t>(k))); }

    std::vector<std::int64_t> exponents(ElementId x) const {
        std::vector<std::int64_t> e(stride_.size());
        for (std::size_t k = 0; k < stride_.size(); ++k)
            e[k] = static_cast<std::int64_t>((x / stride_[k]) % static_cast<std::size_t>(pres_.relative_orders[k]));
        return e;
    }

    ElementId from_exponents(const std::vector<std::int64_t>& e) const {
        if (e.size() != stride_.size()) throw DomainError("exponent vector has wrong length");
        std::size_t x = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] < 0 || e[k] >= pres_.relative_orders[k]) throw DomainError("exponent out of normal-form range");
            x += static_cast<std::size_t>(e[k]) * stride_[k];
        }
        return static_cast<ElementId>(x);
    }

    ElementId multiply(ElementId a, ElementId b) const {
        ElementId x = a;
        for (std::size_t k = 0; k < stride_.size(); ++k) {
            auto e = (b / stride_[k]) % static_cast<std::size_t>(pres_.relative_orders[k]);
            const auto& t = table_[k];
            for (std::size_t r = 0; r < e; ++r) x = t[x];
        }
        return x;
    }

    /// Normal-form product of exponent vectors.
    std::vector<std::int64_t> multiply(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
        return exponents(multiply(from_exponents(a), from_exponents(b)));
    }

    ElementId inverse(ElementId x) const {
        // Clear the leading exponents one generator at a time.
        ElementId cur = x, inv = identity();
        for (std::size_t k = 0; k < stride_.size(); ++k) {
            const auto ro = static_cast<std::size_t>(pres_.relative_orders[k]);
            auto e = (cur / stride_[k]) % ro;
            if (e == 0) continue;
            for (std::size_t r = 0; r < ro - e; ++r) {
                cur = table_[k][cur];
                inv = table_[k][inv];
            }
        }
        return inv;
    }

    ElementId power(ElementId x, std::int64_t m) const {
        if (m < 0) {
            x = inverse(x);
            m = -m;
        }
        ElementId r = identity();
        while (m > 0) {
            if (m & 1) r = multiply(r, x);
            x = multiply(x, x);
            m >>= 1;
        }
        return r;
    }

    /// g^-1 x g.
    ElementId conjugate(ElementId x, ElementId g) const { return multiply(multiply(inverse(g), x), g); }

    /// a^-1 b^-1 a b.
    ElementId commutator(ElementId a, ElementId b) const {
        return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
    }

    std::int64_t element_order(ElementId x) const {
        std::int64_t o = 1;
        ElementId y = x;
        while (y != identity()) {
            y = multiply(y, x);
            ++o;
        }
        return o;
    }

    ElementId evaluate(const PcWord& w) const {
        ElementId x = identity();
        for (auto [g, e] : w)
            for (std::int64_t r = 0; r < e; ++r) x = table_[static_cast<std::size_t>(g)][x];
        return x;
    }

private:
    void build_tables() {
        const std::size_t n = stride_.size();
        table_.assign(n, std::vector<ElementId>(order_, 0));
        for (std::size_t k = n; k-- > 0;) {
            // Everything evaluated here lives in <g_{k+1}, ...>, whose tables exist.
            const ElementId pow_k = evaluate(pres_.power_relations[k]);
            std::vector<ElementId> conj(n, 0);
            for (std::size_t j = k + 1; j < n; ++j) {
                auto it = pres_.conjugate_relations.find({static_cast<int>(j), static_cast<int>(k)});
                conj[j] = it == pres_.conjugate_relations.end() ? generator(static_cast<int>(j)) : evaluate(it->second);
            }
            // T^(g_k) for every tail T in <g_{k+1}, ...>; tails are the ids below stride_[k].
            std::vector<ElementId> tail_conj(stride_[k], 0);
            for (std::size_t t = 0; t < stride_[k]; ++t) {
                ElementId acc = identity();
                for (std::size_t j = k + 1; j < n; ++j) {
                    auto e = (t / stride_[j]) % static_cast<std::size_t>(pres_.relative_orders[j]);
                    for (std::size_t r = 0; r < e; ++r) acc = multiply(acc, conj[j]);
                }
                tail_conj[t] = static_cast<ElementId>(acc);
            }
            const auto ro = static_cast<std::size_t>(pres_.relative_orders[k]);
            for (std::size_t x = 0; x < order_; ++x) {
                const std::size_t prefix = x - x % (stride_[k] * ro);
                const std::size_t ek = (x / stride_[k]) % ro;
                const ElementId h = tail_conj[x % stride_[k]];
                if (ek + 1 < ro)
                    table_[k][x] = static_cast<ElementId>(prefix + (ek + 1) * stride_[k] + h);
                else
                    table_[k][x] = static_cast<ElementId>(prefix + multiply(pow_k, h));
            }
        }
    }

    void check_consistency() const {
        for (std::size_t x = 0; x < order_; ++x)
            for (std::size_t y = 0; y < order_; ++y) {
                const ElementId xy = multiply(static_cast<ElementId>(x), static_cast<ElementId>(y));
                for (std::size_t k = 0; k < stride_.size(); ++k)
                    if (table_[k][xy] != multiply(static_cast<ElementId>(x), table_[k][y]))
                        throw DomainError("inconsistent presentation: collected multiplication is not associative "
                                          "(the group order would differ from the product of relative orders)");
            }
    }

    PcPresentation pres_;
    std::size_t order_ = 1;
    std::vector<std::size_t> stride_;
    std::vector<std::vector<ElementId>> table_;
    bool checked_ = false;
};

/// Subgroup of a PcGroup as an explicit element set.
class PcSubgroup {
public:
    PcSubgroup() = default;

    /// Closure of `generators` under multiplication.
    PcSubgroup(const PcGroup& g, std::vector<ElementId> generators) : gens_(std::move(generators)) {
        close(g);
    }

    /// Subgroup given by a membership predicate; generators are chosen greedily.
    template <class Pred>
    static PcSubgroup from_predicate(const PcGroup& g, Pred&& in) {
        std::vector<char> want(g.order(), 0);
        for (std::size_t x = 0; x < g.order(); ++x) want[x] = in(static_cast<ElementId>(x)) ? 1 : 0;
        PcSubgroup s(g, {});
        for (std::size_t x = 0; x < g.order(); ++x) {
            if (!want[x] || s.member_[x]) continue;
            s.gens_.push_back(static_cast<ElementId>(x));
            s.close(g);
        }
        if (s.member_ != want) throw DomainError("predicate does not describe a subgroup");
        return s;
    }

    std::size_t order() const noexcept { return elements_.size(); }
    bool contains(ElementId x) const { return x < member_.size() && member_[x]; }
    const std::vector<ElementId>& elements() const noexcept { return elements_; }
    const std::vector<ElementId>& generators() const noexcept { return gens_; }

    friend bool operator==(const PcSubgroup& a, const PcSubgroup& b) { return a.member_ == b.member_; }

private:
    void close(const PcGroup& g) {
        member_.assign(g.order(), 0);
        elements_.clear();
        member_[g.identity()] = 1;
        elements_.push_back(g.identity());
        for (std::size_t i = 0; i < elements_.size(); ++i)
            for (auto s : gens_) {
                auto y = g.multiply(elements_[i], s);
                if (!member_[y]) {
                    member_[y] = 1;
                    elements_.push_back(y);
                }
            }
        std::sort(elements_.begin(), elements_.end());
    }

    std::vector<ElementId> gens_;
    std::vector<char> member_;
    std::vector<ElementId> elements_;
};

inline PcSubgroup whole_group(const PcGroup& g) {
    std::vector<ElementId> gens;
    for (int k = 0; k < g.ngens(); ++k) gens.push_back(g.generator(k));
    return PcSubgroup(g, std::move(gens));
}

/// Smallest subgroup containing `gens` and closed under conjugation by `by`.
inline PcSubgroup normal_closure(const PcGroup& g, std::vector<ElementId> gens, const std::vector<ElementId>& by) {
    for (;;) {
        PcSubgroup s(g, gens);
        bool grew = false;
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (auto b : by) {
                auto c = g.conjugate(gens[i], b);
                if (!s.contains(c)) {
                    gens.push_back(c);
                    grew = true;
                }
            }
        if (!grew) return s;
    }
}

/// [H, H] for a subgroup H.
inline PcSubgroup derived_subgroup(const PcGroup& g, const PcSubgroup& h) {
    const auto& hg = h.generators();
    std::vector<ElementId> comms;
    for (std::size_t i = 0; i < hg.size(); ++i)
        for (std::size_t j = i + 1; j < hg.size(); ++j) comms.push_back(g.commutator(hg[i], hg[j]));
    return normal_closure(g, std::move(comms), hg);
}

/// gamma_1 = G, gamma_{i+1} = [gamma_i, G], down to the trivial group.
inline std::vector<PcSubgroup> lower_central_series(const PcGroup& g) {
    std::vector<PcSubgroup> series{whole_group(g)};
    const auto ggens = series.front().generators();
    while (series.back().order() > 1) {
        std::vector<ElementId> comms;
        for (auto x : series.back().generators())
            for (auto y : ggens) comms.push_back(g.commutator(x, y));
        auto next = normal_closure(g, std::move(comms), ggens);
        if (next.order() == series.back().order()) throw DomainError("group is not nilpotent");
        series.push_back(std::move(next));
    }
    return series;
}

/// Nilpotency class c and coclass log_p|G| - c.
inline std::pair<int, int> class_and_coclass(const PcGroup& g) {
    const int c = static_cast<int>(lower_central_series(g).size()) - 1;
    return {c, g.log_order() - c};
}

/// H/H' as an AbelianGroup together with the projection H -> H/H'.
struct Abelianization {
    AbelianGroup group;
    PcSubgroup derived;
    std::vector<int> coset;               ///< per ElementId, -1 outside H
    std::vector<Element> coset_image;     ///< per coset
    std::vector<ElementId> representative;  ///< per index in `group`

    Element image(ElementId x) const {
        if (x >= coset.size() || coset[x] < 0) throw DomainError("element is outside the subgroup");
        return coset_image[static_cast<std::size_t>(coset[x])];
    }

    /// Some element of H mapping to `a`.
    ElementId lift(const Element& a) const {
        return representative[static_cast<std::size_t>(group.index_of(group.normalize(a)))];
    }
};

inline Abelianization abelianize(const PcGroup& g, const PcSubgroup& h) {
    Abelianization ab;
    ab.derived = derived_subgroup(g, h);
    ab.coset.assign(g.order(), -1);
    std::vector<ElementId> reps;
    for (auto x : h.elements()) {
        if (ab.coset[x] >= 0) continue;
        const int c = static_cast<int>(reps.size());
        reps.push_back(x);
        for (auto k : ab.derived.elements()) ab.coset[g.multiply(x, k)] = c;
    }
    auto st = detail::abelian_structure(reps.size(), static_cast<std::size_t>(ab.coset[g.identity()]),
                                        [&](std::size_t a, std::size_t b) {
                                            return static_cast<std::size_t>(ab.coset[g.multiply(reps[a], reps[b])]);
                                        });
    ab.group = AbelianGroup(st.invariants);
    ab.coset_image = std::move(st.coords);
    ab.representative.assign(static_cast<std::size_t>(ab.group.order()), 0);
    for (std::size_t c = 0; c < reps.size(); ++c)
        ab.representative[static_cast<std::size_t>(ab.group.index_of(ab.coset_image[c]))] = reps[c];
    return ab;
}

inline Abelianization abelianization(const PcGroup& g) { return abelianize(g, whole_group(g)); }

/// Maximal subgroups: preimages of the index-p subgroups of G/G', in the
/// natural ordering of G/G'.
inline std::vector<PcSubgroup> maximal_subgroups(const PcGroup& g, const Abelianization& gab,
                                                 const NaturalOrdering& ord) {
    std::vector<PcSubgroup> out;
    for (const auto& s : ord.subgroups)
        out.push_back(PcSubgroup::from_predicate(g, [&](ElementId x) { return s.contains(gab.image(x)); }));
    return out;
}

inline std::vector<PcSubgroup> maximal_subgroups(const PcGroup& g) {
    auto gab = abelianization(g);
    return maximal_subgroups(g, gab, natural_ordering(gab.group, g.p()));
}

/// The Artin transfer G/G' -> H/H' as a matrix on the basis of G/G'.
struct TransferMap {
    AbelianGroup source, target;
    std::vector<Element> basis_images;

    Element apply(const Element& x) const {
        Element r = target.zero();
        for (std::size_t i = 0; i < basis_images.size(); ++i) r = target.add(r, target.scale(basis_images[i], x[i]));
        return r;
    }

    Subgroup kernel() const {
        std::vector<Element> gens;
        const auto zero = target.zero();
        for (std::int64_t i = 0; i < source.order(); ++i) {
            auto x = source.element_at(i);
            if (apply(x) == zero) gens.push_back(std::move(x));
        }
        return Subgroup(source, std::move(gens));
    }
};

/// Ver(x) in H for a normal subgroup H of index p, computed with the
/// transversal {1, t, ..., t^(p-1)}: writing x = h t^k,
/// Ver(x) = prod_i t^i h t^-i * (t^p)^k modulo H'.
inline ElementId transfer_element(const PcGroup& g, const PcSubgroup& h, ElementId t, ElementId x) {
    const int p = g.p();
    const ElementId tinv = g.inverse(t);
    ElementId hx = x;
    int k = 0;
    while (!h.contains(hx)) {
        hx = g.multiply(hx, tinv);
        if (++k >= p) throw DomainError("transfer: subgroup does not have index p");
    }
    ElementId prod = g.identity(), ti = g.identity(), tiinv = g.identity();
    for (int i = 0; i < p; ++i) {
        prod = g.multiply(prod, g.multiply(g.multiply(ti, hx), tiinv));
        ti = g.multiply(ti, t);
        tiinv = g.multiply(tiinv, tinv);
    }
    return g.multiply(prod, g.power(g.power(t, p), k));
}

inline TransferMap transfer(const PcGroup& g, const Abelianization& gab, const PcSubgroup& h,
                            const Abelianization& hab) {
    if (h.order() * static_cast<std::size_t>(g.p()) != g.order())
        throw DomainError("transfer target must have index " + std::to_string(g.p()));
    ElementId t = g.identity();
    for (int k = 0; k < g.ngens(); ++k)
        if (!h.contains(g.generator(k))) {
            t = g.generator(k);
            break;
        }
    if (t == g.identity()) throw DomainError("transfer target must be a proper subgroup");
    TransferMap m{gab.group, hab.group, {}};
    for (std::size_t i = 0; i < gab.group.rank(); ++i)
        m.basis_images.push_back(hab.image(transfer_element(g, h, t, gab.lift(gab.group.basis(i)))));
    return m;
}

inline TransferMap transfer(const PcGroup& g, const PcSubgroup& h) {
    return transfer(g, abelianization(g), h, abelianize(g, h));
}

struct PGroupReport {
    std::size_t order = 0;
    int nilpotency_class = 0;
    int coclass = 0;
    AbelianGroup abelianization;
    NaturalOrdering ordering;
    std::vector<PcSubgroup> maximal;
    std::vector<Abelianization> maximal_abelianizations;
    std::vector<TransferMap> transfers;
    ArtinPattern pattern;
};

/// Artin pattern of G: targets are the abelianizations of the maximal
/// subgroups, kernels are encoded by which M_j they contain (0 once two are
/// hit), mapped through seq_i as kernel identifiers are on the field side.
inline PGroupReport analyze(const PcGroup& g) {
    PGroupReport r;
    r.order = g.order();
    std::tie(r.nilpotency_class, r.coclass) = class_and_coclass(g);
    auto gab = abelianization(g);
    r.abelianization = gab.group;
    r.ordering = natural_ordering(gab.group, g.p());
    r.maximal = maximal_subgroups(g, gab, r.ordering);

    const auto& A = gab.group;
    const auto& ord = r.ordering;
    r.pattern.tkt = Tkt{g.p(), {}, ord.shape.case_tag};
    r.pattern.ttt = Ttt{g.p(), {}};
    for (const auto& h : r.maximal) {
        auto hab = abelianize(g, h);
        auto m = transfer(g, gab, h, hab);
        auto ker = m.kernel();
        std::vector<int> collector;
        if (ker.contains(ord.z)) collector.push_back(ord.seq_i[0]);
        for (std::int64_t e = 0; e < g.p(); ++e)
            if (ker.contains(A.add(ord.w, A.scale(ord.z, e))))
                collector.push_back(ord.seq_i[static_cast<std::size_t>(e + 1)]);
        if (collector.empty()) throw DomainError("transfer kernel misses the p-elementary subgroup");
        r.pattern.tkt.entries.push_back(collector.size() >= 2 ? 0 : collector.front());
        r.pattern.ttt.entries.push_back(hab.group.p_exponents(g.p()));
        r.maximal_abelianizations.push_back(std::move(hab));
        r.transfers.push_back(std::move(m));
    }
    r.pattern.weak_tkt = taussky_weak_tkt(ord, r.pattern.tkt);
    return r;
}

inline ArtinPattern artin_pattern(const PcGroup& g) { return analyze(g).pattern; }

}  // namespace capit
