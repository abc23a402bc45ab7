#pragma once

// Transfer kernel types, transfer target types, Taussky's A/B conditions and
// the normal forms that make kernel types independent of renumeration.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capit/abelian.hpp"
#include "capit/error.hpp"

namespace capit {

/// Abelian p-group type in logarithmic notation, exponents descending.
/// {2,1} is (p^2, p); the empty vector is the trivial group.
using PType = std::vector<int>;

inline PType parse_ptype(std::string_view s) {
    PType out;
    if (s == "0") return out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '0')
            throw ParseError("bad abelian type '" + std::string(s) + "'");
        int e = s[i] - '0';
        ++i;
        int reps = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (start == i) throw ParseError("missing repeat count in '" + std::string(s) + "'");
            reps = std::stoi(std::string(s.substr(start, i - start)));
            if (reps < 1) throw ParseError("bad repeat count in '" + std::string(s) + "'");
        }
        out.insert(out.end(), static_cast<std::size_t>(reps), e);
    }
    if (out.empty()) throw ParseError("empty abelian type");
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// "21", "1^3", "2^2"; runs are compressed only when every exponent agrees.
inline std::string format_ptype(const PType& t) {
    if (t.empty()) return "0";
    if (t.size() > 1 && std::all_of(t.begin(), t.end(), [&](int e) { return e == t.front(); }))
        return std::to_string(t.front()) + "^" + std::to_string(t.size());
    std::string s;
    for (int e : t) s += std::to_string(e);
    return s;
}

/// Larger groups first: by order, then lexicographically by exponents.
inline bool ptype_precedes(const PType& a, const PType& b) {
    const int sa = std::accumulate(a.begin(), a.end(), 0), sb = std::accumulate(b.begin(), b.end(), 0);
    if (sa != sb) return sa > sb;
    return a > b;
}

inline bool ptype_sequence_less(const std::vector<PType>& a, const std::vector<PType>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (ptype_precedes(a[i], b[i])) return true;
        if (ptype_precedes(b[i], a[i])) return false;
    }
    return a.size() < b.size();
}

/// Transfer kernel type. entries[i] is the kernel identifier of position
/// i+1: 0 for a total kernel, j >= 1 for the j-th order-p subgroup.
struct Tkt {
    int p = 3;
    std::vector<int> entries;
    SylowCase case_tag = SylowCase::UU;

    void validate() const {
        if (!is_prime(p)) throw DomainError("TKT prime " + std::to_string(p) + " is not prime");
        if (entries.size() != static_cast<std::size_t>(p + 1))
            throw DomainError("TKT must have " + std::to_string(p + 1) + " entries, got " +
                              std::to_string(entries.size()));
        for (int e : entries)
            if (e < 0 || e > p + 1)
                throw DomainError("malformed TKT: entry " + std::to_string(e) + " outside 0.." +
                                  std::to_string(p + 1));
    }

    /// Digit string "2241"; comma separated when some entry exceeds 9.
    std::string to_string() const {
        const bool wide = std::any_of(entries.begin(), entries.end(), [](int e) { return e > 9; });
        std::string s;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (wide && i) s += ',';
            s += std::to_string(entries[i]);
        }
        return s;
    }

    static Tkt parse(std::string_view text, int p = 3, SylowCase c = SylowCase::UU) {
        Tkt t{p, {}, c};
        if (text.find(',') != std::string_view::npos) {
            std::size_t start = 0;
            while (start <= text.size()) {
                auto end = text.find(',', start);
                if (end == std::string_view::npos) end = text.size();
                auto tok = std::string(text.substr(start, end - start));
                if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
                    throw ParseError("bad TKT entry '" + tok + "'");
                t.entries.push_back(std::stoi(tok));
                start = end + 1;
            }
        } else {
            for (char ch : text) {
                if (!std::isdigit(static_cast<unsigned char>(ch)))
                    throw ParseError("bad TKT '" + std::string(text) + "'");
                t.entries.push_back(ch - '0');
            }
        }
        t.validate();
        return t;
    }

    friend bool operator==(const Tkt&, const Tkt&) = default;
};

/// Transfer target type: entry i is the abelian type attached to position i+1.
struct Ttt {
    int p = 3;
    std::vector<PType> entries;

    /// Semicolon list "21;21;1^3;21".
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) s += ';';
            s += format_ptype(entries[i]);
        }
        return s;
    }

    /// Accepts the semicolon list, or the comma notation of printed tables
    /// with parenthesized repeats such as "2^2,(1^2)^3" or "(21)^4".
    static Ttt parse(std::string_view text, int p = 3) {
        Ttt t{p, {}};
        const char sep = text.find(';') != std::string_view::npos ? ';' : ',';
        std::size_t i = 0;
        while (i < text.size()) {
            std::size_t end = i;
            int depth = 0;
            while (end < text.size() && !(text[end] == sep && depth == 0)) {
                if (text[end] == '(') ++depth;
                if (text[end] == ')') --depth;
                ++end;
            }
            auto tok = text.substr(i, end - i);
            while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
            while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
            if (tok.empty()) throw ParseError("empty TTT component in '" + std::string(text) + "'");
            if (tok.front() == '(') {
                auto close = tok.find(')');
                if (close == std::string_view::npos) throw ParseError("unbalanced '(' in TTT");
                PType inner = parse_ptype(tok.substr(1, close - 1));
                int reps = 1;
                auto rest = tok.substr(close + 1);
                if (!rest.empty()) {
                    if (rest.front() != '^' || rest.size() < 2)
                        throw ParseError("bad repeat in TTT component '" + std::string(tok) + "'");
                    reps = std::stoi(std::string(rest.substr(1)));
                }
                for (int k = 0; k < reps; ++k) t.entries.push_back(inner);
            } else {
                t.entries.push_back(parse_ptype(tok));
            }
            i = end + 1;
        }
        return t;
    }

    friend bool operator==(const Ttt&, const Ttt&) = default;
};

enum class Taussky { A, B };

inline std::string to_string(const std::vector<Taussky>& labels) {
    std::string s;
    for (auto l : labels) s += l == Taussky::A ? 'A' : 'B';
    return s;
}

struct ArtinPattern {
    Ttt ttt;
    Tkt tkt;
    std::optional<std::vector<Taussky>> weak_tkt;

    void validate() const {
        tkt.validate();
        if (ttt.p != tkt.p || ttt.entries.size() != tkt.entries.size())
            throw DomainError("TTT and TKT disagree in prime or length");
    }
};

/// F_p-dimension of a capitulation kernel: log_p(degree * unit norm index).
/// With `rank` given, the result must not exceed it.
inline int capitulation_dimension(std::int64_t p, std::int64_t degree, std::int64_t unit_norm_index,
                                  std::optional<int> rank = std::nullopt) {
    detail::require_prime(p);
    auto log_p = [p](std::int64_t v, const char* what) {
        if (v < 1) throw DomainError(std::string(what) + " must be positive");
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (v != 1) throw DomainError(std::string(what) + " is not a power of " + std::to_string(p));
        return e;
    };
    const int dim = log_p(degree, "degree") + log_p(unit_norm_index, "unit norm index");
    if (dim == 0) throw DomainError("inconsistent input: a capitulation kernel cannot be trivial");
    if (rank && dim > *rank)
        throw DomainError("inconsistent input: kernel dimension " + std::to_string(dim) + " exceeds rank " +
                          std::to_string(*rank));
    return dim;
}

enum class ExtensionType { Alpha, Delta };

/// Capitulation dimension over a quadratic field with p-rank at least two.
inline int quadratic_capitulation_case(std::int64_t p, bool is_real,
                                       std::optional<ExtensionType> ext = std::nullopt) {
    if (p < 3 || !is_prime(p)) throw DomainError("quadratic capitulation needs an odd prime p");
    if (!is_real) return 1;
    if (!ext) throw DomainError("real quadratic field needs the extension type (alpha or delta)");
    return *ext == ExtensionType::Alpha ? 2 : 1;
}

namespace detail {

inline std::vector<Taussky> taussky_labels(SylowCase c, int non_cyc, int cyc, const Tkt& tkt) {
    std::vector<Taussky> out;
    const int n = static_cast<int>(tkt.entries.size());
    for (int i = 1; i <= n; ++i) {
        const int k = tkt.entries[static_cast<std::size_t>(i - 1)];
        bool a = false;
        switch (c) {
            case SylowCase::UU: a = k == i || k == 0; break;
            case SylowCase::UV: a = (k == cyc && i != non_cyc) || i == non_cyc || k == 0; break;
            case SylowCase::VV: a = true; break;
            default: throw DomainError("Taussky conditions need p-rank two");
        }
        out.push_back(a ? Taussky::A : Taussky::B);
    }
    return out;
}

}  // namespace detail

/// Weak TKT: Taussky's condition A or B for each position.
inline std::vector<Taussky> taussky_weak_tkt(const NaturalOrdering& ord, const Tkt& tkt) {
    tkt.validate();
    if (tkt.entries.size() != ord.subgroups.size())
        throw DomainError("TKT length does not match the natural ordering");
    return detail::taussky_labels(ord.shape.case_tag, ord.non_cyc, ord.cyc, tkt);
}

/// Weak TKT from the case tag alone. In case UV the distinguished position
/// and kernel identifier are both taken to be p+1, the orbit convention.
inline std::vector<Taussky> taussky_weak_tkt(const Tkt& tkt) {
    tkt.validate();
    return detail::taussky_labels(tkt.case_tag, tkt.p + 1, tkt.p + 1, tkt);
}

namespace detail {

/// Calls f(domain, codomain) for every renumeration allowed in the case:
/// the new TKT is lambda(i) = codomain^{-1}(kappa(domain(i))), both maps
/// 1-based with codomain(0) = 0.
template <class F>
void for_each_renumeration(int p, SylowCase c, F&& f) {
    const int n = p + 1;
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    auto extend0 = [n](const std::vector<int>& s) {
        std::vector<int> e(static_cast<std::size_t>(n + 1));
        e[0] = 0;
        for (int i = 1; i <= n; ++i) e[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i - 1)];
        return e;
    };
    switch (c) {
        case SylowCase::UU:
            do {
                f(sigma, extend0(sigma));
            } while (std::next_permutation(sigma.begin(), sigma.end()));
            break;
        case SylowCase::VV: {
            std::vector<int> tau = sigma;
            do {
                auto s0 = extend0(sigma);
                std::iota(tau.begin(), tau.end(), 1);
                do {
                    f(tau, s0);
                } while (std::next_permutation(tau.begin(), tau.end()));
            } while (std::next_permutation(sigma.begin(), sigma.end()));
            break;
        }
        case SylowCase::UV: {
            // pi, rho permute 1..p; position and identifier p+1 stay fixed.
            std::vector<int> pi(static_cast<std::size_t>(p)), rho(static_cast<std::size_t>(p));
            std::iota(pi.begin(), pi.end(), 1);
            do {
                std::vector<int> pi0 = pi;
                pi0.push_back(n);
                auto pi_ext = extend0(pi0);
                std::iota(rho.begin(), rho.end(), 1);
                do {
                    std::vector<int> rho_star = rho;
                    rho_star.push_back(n);
                    f(rho_star, pi_ext);
                } while (std::next_permutation(rho.begin(), rho.end()));
            } while (std::next_permutation(pi.begin(), pi.end()));
            break;
        }
        default: throw DomainError("orbit canonicalization needs case UU, UV or VV");
    }
}

inline std::vector<int> renumber(const std::vector<int>& kappa, const std::vector<int>& domain,
                                 const std::vector<int>& codomain) {
    std::vector<int> inv(codomain.size());
    for (std::size_t v = 0; v < codomain.size(); ++v) inv[static_cast<std::size_t>(codomain[v])] = static_cast<int>(v);
    std::vector<int> out(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i)
        out[i] = inv[static_cast<std::size_t>(kappa[static_cast<std::size_t>(domain[i] - 1)])];
    return out;
}

}  // namespace detail

/// Lexicographically least member of the renumeration orbit.
inline Tkt tkt_orbit_canonical(const Tkt& tkt) {
    tkt.validate();
    std::vector<int> best = tkt.entries;
    detail::for_each_renumeration(tkt.p, tkt.case_tag, [&](const auto& dom, const auto& cod) {
        auto cand = detail::renumber(tkt.entries, dom, cod);
        if (cand < best) best = std::move(cand);
    });
    return Tkt{tkt.p, std::move(best), tkt.case_tag};
}

inline bool tkt_equivalent(const Tkt& a, const Tkt& b) {
    if (a.p != b.p || a.case_tag != b.case_tag)
        throw DomainError("cannot compare TKTs of different prime or case");
    return tkt_orbit_canonical(a) == tkt_orbit_canonical(b);
}

/// Joint normal form: the TKT is canonicalized and the TTT is carried along
/// by the same position renumeration, ties broken by the least TTT.
inline ArtinPattern ap_canonical(const ArtinPattern& ap) {
    ap.validate();
    std::vector<int> best_k;
    std::vector<PType> best_t;
    bool have = false;
    detail::for_each_renumeration(ap.tkt.p, ap.tkt.case_tag, [&](const auto& dom, const auto& cod) {
        auto k = detail::renumber(ap.tkt.entries, dom, cod);
        if (have && k > best_k) return;
        std::vector<PType> t(ap.ttt.entries.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = ap.ttt.entries[static_cast<std::size_t>(dom[i] - 1)];
        if (!have || k < best_k || ptype_sequence_less(t, best_t)) {
            best_k = std::move(k);
            best_t = std::move(t);
            have = true;
        }
    });
    ArtinPattern out;
    out.tkt = Tkt{ap.tkt.p, std::move(best_k), ap.tkt.case_tag};
    out.ttt = Ttt{ap.ttt.p, std::move(best_t)};
    return out;
}

/// Moves the distinguished position (the non-cyclic maximal subgroup) and
/// the distinguished kernel identifier of case UV to subscript p+1, the
/// convention used by the UV orbit relation. Other cases pass through.
inline ArtinPattern standardize_uv(const NaturalOrdering& ord, ArtinPattern ap) {
    if (ord.shape.case_tag != SylowCase::UV) return ap;
    const int n = static_cast<int>(ord.p + 1);
    if (ord.non_cyc < 1 || ord.cyc < 1) throw DomainError("case UV ordering lacks its distinguished indices");
    auto& k = ap.tkt.entries;
    std::swap(k[static_cast<std::size_t>(ord.non_cyc - 1)], k[static_cast<std::size_t>(n - 1)]);
    if (!ap.ttt.entries.empty())
        std::swap(ap.ttt.entries[static_cast<std::size_t>(ord.non_cyc - 1)],
                  ap.ttt.entries[static_cast<std::size_t>(n - 1)]);
    for (auto& e : k) {
        if (e == ord.cyc)
            e = n;
        else if (e == n)
            e = ord.cyc;
    }
    return ap;
}

}  // namespace capit
