#pragma once

// Finite abelian groups on exponent vectors, their subgroups of index p and
// order p, and the natural ordering that aligns the two families when the
// p-rank is two.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capit/detail/smith.hpp"
#include "capit/error.hpp"

namespace capit {

using Element = std::vector<std::int64_t>;

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

/// Prime factorization as ascending (prime, exponent) pairs.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % q != 0) continue;
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// Exponent of p in n (n > 0).
inline int valuation(std::int64_t n, std::int64_t p) {
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

/// Order of x^m for an element x of order e: e / gcd(m mod e, e).
inline std::int64_t order_of_power(std::int64_t e, std::int64_t m) {
    if (e <= 0) throw DomainError("element order must be positive, got " + std::to_string(e));
    std::int64_t r = m % e;
    if (r < 0) r += e;
    return e / std::gcd(r, e);
}

/// Direct product of cyclic groups Z/a_1 x ... x Z/a_n, kept in the order
/// the caller supplied. Elements are exponent vectors over that basis.
class AbelianGroup {
public:
    AbelianGroup() = default;

    explicit AbelianGroup(std::vector<std::int64_t> invariants) : inv_(std::move(invariants)) {
        for (auto a : inv_)
            if (a < 2) throw DomainError("abelian invariants must be >= 2, got " + std::to_string(a));
    }

    /// Comma-separated invariants, e.g. "9,3". "1" or "" is the trivial group.
    static AbelianGroup parse(std::string_view text) {
        std::vector<std::int64_t> inv;
        std::string token;
        std::istringstream in{std::string(text)};
        while (std::getline(in, token, ',')) {
            token.erase(0, token.find_first_not_of(" \t"));
            token.erase(token.find_last_not_of(" \t") + 1);
            if (token.empty()) continue;
            std::size_t used = 0;
            std::int64_t v = 0;
            try {
                v = std::stoll(token, &used);
            } catch (const std::exception&) {
                throw ParseError("bad abelian invariant '" + token + "'");
            }
            if (used != token.size()) throw ParseError("bad abelian invariant '" + token + "'");
            if (v == 1 && text.find(',') == std::string_view::npos) return AbelianGroup{};
            inv.push_back(v);
        }
        return AbelianGroup(std::move(inv));
    }

    const std::vector<std::int64_t>& invariants() const noexcept { return inv_; }
    std::size_t rank() const noexcept { return inv_.size(); }

    std::int64_t order() const {
        return std::accumulate(inv_.begin(), inv_.end(), std::int64_t{1}, std::multiplies<>());
    }

    Element zero() const { return Element(inv_.size(), 0); }

    Element basis(std::size_t i) const {
        Element e = zero();
        e.at(i) = 1 % inv_.at(i);
        return e;
    }

    Element normalize(Element x) const {
        check_arity(x);
        for (std::size_t i = 0; i < inv_.size(); ++i) {
            x[i] %= inv_[i];
            if (x[i] < 0) x[i] += inv_[i];
        }
        return x;
    }

    bool is_element(const Element& x) const {
        if (x.size() != inv_.size()) return false;
        for (std::size_t i = 0; i < inv_.size(); ++i)
            if (x[i] < 0 || x[i] >= inv_[i]) return false;
        return true;
    }

    Element add(const Element& x, const Element& y) const {
        check_arity(x);
        check_arity(y);
        Element r(inv_.size());
        for (std::size_t i = 0; i < inv_.size(); ++i) r[i] = (x[i] + y[i]) % inv_[i];
        return r;
    }

    Element negate(const Element& x) const {
        check_arity(x);
        Element r(inv_.size());
        for (std::size_t i = 0; i < inv_.size(); ++i) r[i] = (inv_[i] - x[i]) % inv_[i];
        return r;
    }

    Element scale(const Element& x, std::int64_t m) const {
        check_arity(x);
        Element r(inv_.size());
        for (std::size_t i = 0; i < inv_.size(); ++i) {
            __int128 v = static_cast<__int128>(x[i]) * m % inv_[i];
            r[i] = static_cast<std::int64_t>(v < 0 ? v + inv_[i] : v);
        }
        return r;
    }

    std::int64_t element_order(const Element& x) const {
        check_arity(x);
        std::int64_t o = 1;
        for (std::size_t i = 0; i < inv_.size(); ++i) o = std::lcm(o, order_of_power(inv_[i], x[i]));
        return o;
    }

    /// Mixed-radix index in [0, order()), first coordinate most significant.
    std::int64_t index_of(const Element& x) const {
        std::int64_t idx = 0;
        for (std::size_t i = 0; i < inv_.size(); ++i) idx = idx * inv_[i] + x[i];
        return idx;
    }

    Element element_at(std::int64_t idx) const {
        Element x(inv_.size());
        for (std::size_t i = inv_.size(); i-- > 0;) {
            x[i] = idx % inv_[i];
            idx /= inv_[i];
        }
        return x;
    }

    /// Number of cyclic factors whose order p divides.
    int p_rank(std::int64_t p) const {
        return static_cast<int>(std::count_if(inv_.begin(), inv_.end(), [p](auto a) { return a % p == 0; }));
    }

    /// Logarithmic p-type of the Sylow p-subgroup, descending ("21" = {2,1}).
    std::vector<int> p_exponents(std::int64_t p) const {
        std::vector<int> e;
        for (auto a : inv_)
            if (a % p == 0) e.push_back(valuation(a, p));
        std::sort(e.rbegin(), e.rend());
        return e;
    }

    /// Primary decomposition as prime powers, sorted by (prime, exponent).
    std::vector<std::int64_t> primary_invariants() const {
        std::vector<std::pair<std::int64_t, int>> parts;
        for (auto a : inv_)
            for (auto [q, e] : factorize(a)) parts.emplace_back(q, e);
        std::sort(parts.begin(), parts.end());
        std::vector<std::int64_t> out;
        for (auto [q, e] : parts) {
            std::int64_t v = 1;
            for (int i = 0; i < e; ++i) v *= q;
            out.push_back(v);
        }
        return out;
    }

    std::string to_string() const {
        if (inv_.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < inv_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(inv_[i]);
        }
        return s;
    }

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

private:
    void check_arity(const Element& x) const {
        if (x.size() != inv_.size())
            throw DomainError("element has " + std::to_string(x.size()) + " coordinates, group has " +
                              std::to_string(inv_.size()));
    }

    std::vector<std::int64_t> inv_;
};

inline bool isomorphic(const AbelianGroup& a, const AbelianGroup& b) {
    return a.primary_invariants() == b.primary_invariants();
}

/// Subgroup of an AbelianGroup spanned by generators. Membership is
/// materialized as a bitmap over the parent, which is fine for the group
/// sizes this library works with.
class Subgroup {
public:
    Subgroup(AbelianGroup parent, std::vector<Element> generators)
        : parent_(std::move(parent)), gens_(std::move(generators)) {
        for (auto& g : gens_) {
            if (!parent_.is_element(g)) g = parent_.normalize(g);
        }
        const auto n = parent_.order();
        member_.assign(static_cast<std::size_t>(n), 0);
        std::vector<std::int64_t> stack{0};
        member_[0] = 1;
        while (!stack.empty()) {
            Element x = parent_.element_at(stack.back());
            stack.pop_back();
            for (const auto& g : gens_) {
                auto idx = parent_.index_of(parent_.add(x, g));
                if (!member_[static_cast<std::size_t>(idx)]) {
                    member_[static_cast<std::size_t>(idx)] = 1;
                    stack.push_back(idx);
                }
            }
        }
        order_ = std::count(member_.begin(), member_.end(), char{1});
    }

    const AbelianGroup& parent() const noexcept { return parent_; }
    const std::vector<Element>& generators() const noexcept { return gens_; }
    std::int64_t order() const noexcept { return order_; }

    bool contains(const Element& x) const {
        return member_[static_cast<std::size_t>(parent_.index_of(parent_.normalize(x)))] != 0;
    }

    std::vector<Element> elements() const {
        std::vector<Element> out;
        out.reserve(static_cast<std::size_t>(order_));
        for (std::size_t i = 0; i < member_.size(); ++i)
            if (member_[i]) out.push_back(parent_.element_at(static_cast<std::int64_t>(i)));
        return out;
    }

    bool is_subgroup_of(const Subgroup& other) const {
        for (std::size_t i = 0; i < member_.size(); ++i)
            if (member_[i] && !other.member_[i]) return false;
        return true;
    }

    /// Logarithmic p-type of this subgroup, from counts of p^k-torsion.
    std::vector<int> p_exponents(std::int64_t p) const {
        std::vector<std::int64_t> orders;
        for (std::size_t i = 0; i < member_.size(); ++i)
            if (member_[i]) orders.push_back(parent_.element_order(parent_.element_at(static_cast<std::int64_t>(i))));
        return type_from_torsion_counts(orders, p);
    }

    /// True when the Sylow p-part of this subgroup is cyclic.
    bool p_cyclic(std::int64_t p) const { return p_exponents(p).size() <= 1; }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.parent_ == b.parent_ && a.member_ == b.member_;
    }

    /// |A[p^k]| = p^{sum min(k, e_i)} determines the exponents e_i.
    static std::vector<int> type_from_torsion_counts(const std::vector<std::int64_t>& element_orders,
                                                     std::int64_t p) {
        std::vector<int> torsion_log;  // torsion_log[k] = log_p |A[p^k]|
        for (int k = 0;; ++k) {
            std::int64_t pk = 1;
            for (int i = 0; i < k; ++i) pk *= p;
            std::int64_t cnt = 0;
            for (auto o : element_orders) {
                std::int64_t pp = 1;
                while (o % p == 0) {
                    o /= p;
                    pp *= p;
                }
                if (pk % pp == 0) ++cnt;
            }
            torsion_log.push_back(valuation(cnt, p));
            if (k > 0 && torsion_log[k] == torsion_log[k - 1]) break;
        }
        // Number of factors with exponent >= k is torsion_log[k] - torsion_log[k-1].
        std::vector<int> exps;
        for (std::size_t k = 1; k < torsion_log.size(); ++k) {
            int at_least_k = torsion_log[k] - torsion_log[k - 1];
            int at_least_next = k + 1 < torsion_log.size() ? torsion_log[k + 1] - torsion_log[k] : 0;
            for (int i = 0; i < at_least_k - at_least_next; ++i) exps.push_back(static_cast<int>(k));
        }
        std::sort(exps.rbegin(), exps.rend());
        return exps;
    }

private:
    AbelianGroup parent_;
    std::vector<Element> gens_;
    std::vector<char> member_;
    std::int64_t order_ = 0;
};

enum class SylowCase { UU, UV, VV, Other };

inline std::string_view to_string(SylowCase c) {
    switch (c) {
        case SylowCase::UU: return "UU";
        case SylowCase::UV: return "UV";
        case SylowCase::VV: return "VV";
        default: return "OTHER";
    }
}

inline SylowCase parse_sylow_case(std::string_view s) {
    if (s == "UU") return SylowCase::UU;
    if (s == "UV") return SylowCase::UV;
    if (s == "VV") return SylowCase::VV;
    if (s == "OTHER") return SylowCase::Other;
    throw ParseError("unknown case tag '" + std::string(s) + "' (expected UU, UV, VV or OTHER)");
}

struct SylowShape {
    std::int64_t p = 0;
    std::vector<int> exponents;  ///< descending; (u, v) in p-rank two
    SylowCase case_tag = SylowCase::Other;
};

inline SylowShape classify_case(const AbelianGroup& a, std::int64_t p) {
    SylowShape s{p, a.p_exponents(p), SylowCase::Other};
    if (s.exponents.size() == 2) {
        const int u = s.exponents[0], v = s.exponents[1];
        if (u == 1 && v == 1)
            s.case_tag = SylowCase::UU;
        else if (v == 1)
            s.case_tag = SylowCase::UV;
        else
            s.case_tag = SylowCase::VV;
    }
    return s;
}

namespace detail {

inline void require_prime(std::int64_t p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not a prime");
}

inline void require_rank_two(const AbelianGroup& a, std::int64_t p) {
    require_prime(p);
    if (a.p_rank(p) != 2)
        throw RankMismatch("group (" + a.to_string() + ") has " + std::to_string(p) + "-rank " +
                           std::to_string(a.p_rank(p)) + ", expected 2");
}

}  // namespace detail

/// Generators (w, z) of order p spanning the p-elementary subgroup.
///
/// w is taken from the basis generator with the larger p-part (the earlier
/// one on ties) and z from the other, so that in case UV the cyclic maximal
/// subgroups meet the p-elementary subgroup in <w>.
inline std::pair<Element, Element> p_elementary_generators(const AbelianGroup& a, std::int64_t p) {
    detail::require_rank_two(a, p);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < a.rank(); ++i)
        if (a.invariants()[i] % p == 0) idx.push_back(i);
    std::size_t hi = idx[0], lo = idx[1];
    if (valuation(a.invariants()[lo], p) > valuation(a.invariants()[hi], p)) std::swap(hi, lo);
    Element w = a.zero(), z = a.zero();
    w[hi] = a.invariants()[hi] / p;
    z[lo] = a.invariants()[lo] / p;
    return {w, z};
}

/// [<z>, <w>, <wz>, ..., <wz^{p-1}>]: the p+1 subgroups of order p.
inline std::vector<Subgroup> subgroups_order_p(const AbelianGroup& a, std::int64_t p) {
    auto [w, z] = p_elementary_generators(a, p);
    std::vector<Subgroup> out;
    out.emplace_back(a, std::vector<Element>{z});
    for (std::int64_t e = 0; e < p; ++e) out.emplace_back(a, std::vector<Element>{a.add(w, a.scale(z, e))});
    return out;
}

/// All subgroups of index p, as kernels of the characters A -> Z/p.
///
/// A character is a vector c over the coordinates whose order p divides,
/// acting by x -> sum c_i x_i mod p. Characters are normalized so the first
/// nonzero entry is 1 and enumerated in lexicographic order, which fixes the
/// order of the result.
inline std::vector<Subgroup> subgroups_index_p(const AbelianGroup& a, std::int64_t p) {
    detail::require_prime(p);
    if (a.order() % p != 0)
        throw DomainError(std::to_string(p) + " does not divide the order of (" + a.to_string() + ")");
    std::vector<std::size_t> pcoords, others;
    for (std::size_t i = 0; i < a.rank(); ++i)
        (a.invariants()[i] % p == 0 ? pcoords : others).push_back(i);
    const std::size_t r = pcoords.size();

    std::vector<Subgroup> out;
    std::vector<std::int64_t> c(r, 0);
    // Odometer over Z/p^r, keeping only normalized nonzero characters.
    for (;;) {
        std::size_t k = r;
        while (k > 0) {
            --k;
            if (++c[k] < p) break;
            c[k] = 0;
            if (k == 0) return out;
        }
        auto first = std::find_if(c.begin(), c.end(), [](auto v) { return v != 0; });
        if (first == c.end() || *first != 1) continue;
        const std::size_t pivot = static_cast<std::size_t>(first - c.begin());

        std::vector<Element> gens;
        for (auto i : others) gens.push_back(a.basis(i));
        const std::size_t j = pcoords[pivot];
        Element pj = a.zero();
        pj[j] = p % a.invariants()[j];
        gens.push_back(pj);
        for (std::size_t s = 0; s < r; ++s) {
            if (s == pivot) continue;
            Element g = a.basis(pcoords[s]);
            g[j] = detail::mod_floor(-c[s], a.invariants()[j]);
            gens.push_back(g);
        }
        out.emplace_back(a, std::move(gens));
    }
}

/// Alignment of index-p subgroups with the order-p subgroups M_1..M_{p+1}.
///
/// `seq_i[j-1]` is the 1-based position (in `subgroups`) of the index-p
/// subgroup containing M_j. `non_cyc` is the 1-based position of a maximal
/// subgroup whose Sylow p-part is not cyclic (the last such one, 0 if none);
/// `cyc` is the identifier of the order-p subgroup contained in cyclic ones.
/// Whenever a non-cyclic maximal subgroup exists, `seq_i` is the identity.
struct NaturalOrdering {
    std::int64_t p = 0;
    SylowShape shape;
    Element w, z;
    std::vector<Subgroup> subgroups;
    std::vector<std::vector<int>> pools;
    std::vector<int> seq_i;
    int non_cyc = 0;
    int cyc = 0;
};

inline NaturalOrdering natural_ordering(const AbelianGroup& a, std::int64_t p) {
    detail::require_rank_two(a, p);
    NaturalOrdering ord;
    ord.p = p;
    ord.shape = classify_case(a, p);
    std::tie(ord.w, ord.z) = p_elementary_generators(a, p);
    ord.subgroups = subgroups_index_p(a, p);
    ord.seq_i.assign(static_cast<std::size_t>(p + 1), 0);

    int i = 0;
    for (const auto& s : ord.subgroups) {
        ++i;
        std::vector<int> pool;
        if (s.contains(ord.z)) {
            pool.push_back(1);
            ord.seq_i[0] = i;
        }
        for (std::int64_t e = 0; e < p; ++e) {
            if (s.contains(a.add(ord.w, a.scale(ord.z, e)))) {
                pool.push_back(static_cast<int>(e + 2));
                ord.seq_i[static_cast<std::size_t>(e + 1)] = i;
            }
        }
        // A subgroup holding two or more of the M_j is the non-cyclic one.
        if (pool.size() >= 2)
            ord.non_cyc = i;
        else if (!pool.empty())
            ord.cyc = pool.front();
        ord.pools.push_back(std::move(pool));
    }
    if (ord.non_cyc > 0)
        for (std::size_t k = 0; k < ord.seq_i.size(); ++k) ord.seq_i[k] = static_cast<int>(k + 1);
    return ord;
}

}  // namespace capit
