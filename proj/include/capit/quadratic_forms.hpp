#pragma once

// Narrow class groups of real quadratic fields from indefinite binary
// quadratic forms (a, b, c) with b^2 - 4ac = d > 0.
//
// Reduced forms satisfy 0 < b < sqrt d and sqrt d - b < 2|a| < sqrt d + b.
// Every proper equivalence class contains reduced forms, and these form one
// cycle under the reduction operator rho, so the narrow class number is the
// number of rho-cycles. All comparisons with sqrt d use s = floor(sqrt d):
// d is not a square, so x < sqrt d iff x <= s for integers x.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "capit/abelian.hpp"
#include "capit/artin_pattern.hpp"
#include "capit/detail/smith.hpp"
#include "capit/error.hpp"

namespace capit {

inline std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw DomainError("isqrt of a negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(std::int64_t n) { return n >= 0 && isqrt(n) * isqrt(n) == n; }

inline bool is_squarefree(std::int64_t n) {
    if (n < 1) return false;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % q != 0) continue;
        n /= q;
        if (n % q == 0) return false;
    }
    return true;
}

/// Discriminant of a real quadratic field.
inline bool is_fundamental(std::int64_t d) {
    if (d <= 1) return false;
    if (d % 4 == 1) return is_squarefree(d);
    if (d % 4 != 0) return false;
    const std::int64_t m = d / 4;
    return (m % 4 == 2 || m % 4 == 3) && is_squarefree(m);
}

struct QuadForm {
    std::int64_t a = 0, b = 0, c = 0;

    std::int64_t discriminant() const {
        const __int128 v = static_cast<__int128>(b) * b - static_cast<__int128>(4) * a * c;
        if (v > INT64_MAX || v < INT64_MIN) throw DomainError("discriminant overflows 64 bits");
        return static_cast<std::int64_t>(v);
    }

    std::string to_string() const {
        return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    }

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

namespace detail {

inline std::int64_t c_from(std::int64_t a, std::int64_t b, std::int64_t d) {
    const __int128 num = static_cast<__int128>(b) * b - d;
    const __int128 den = static_cast<__int128>(4) * a;
    if (den == 0 || num % den != 0) throw DomainError("no integral form with these coefficients");
    return static_cast<std::int64_t>(num / den);
}

inline void require_form_discriminant(std::int64_t d) {
    if (d <= 0) throw DomainError("only positive discriminants are supported, got " + std::to_string(d));
    if (is_square(d)) throw DomainError("square discriminant " + std::to_string(d) + " has no reduced forms");
    if (d % 4 != 0 && d % 4 != 1) throw DomainError("discriminant must be 0 or 1 mod 4");
}

}  // namespace detail

inline bool is_reduced(const QuadForm& f, std::int64_t s) {
    const std::int64_t a2 = 2 * std::llabs(f.a);
    return f.b > 0 && f.b <= s && s < a2 + f.b && a2 - f.b <= s;
}

inline bool is_reduced(const QuadForm& f) { return is_reduced(f, isqrt(f.discriminant())); }

/// One step of the reduction operator: (a,b,c) -> (c, b', (b'^2-d)/4c) with
/// b' = -b mod 2c, normalized into (sqrt d - 2|c|, sqrt d) when |c| < sqrt d
/// and into (-|c|, |c|] otherwise. The result is properly equivalent.
inline QuadForm rho(const QuadForm& f, std::int64_t d, std::int64_t s) {
    if (f.c == 0) throw DomainError("degenerate form " + f.to_string());
    const std::int64_t m = 2 * std::llabs(f.c);
    std::int64_t bp;
    if (std::llabs(f.c) <= s) {
        bp = s - detail::mod_floor(s + f.b, m);
    } else {
        bp = detail::mod_floor(-f.b, m);
        if (bp > std::llabs(f.c)) bp -= m;
    }
    return {f.c, bp, detail::c_from(f.c, bp, d)};
}

inline QuadForm rho(const QuadForm& f) {
    const auto d = f.discriminant();
    return rho(f, d, isqrt(d));
}

/// A reduced form properly equivalent to f.
inline QuadForm reduce(QuadForm f) {
    const auto d = f.discriminant();
    detail::require_form_discriminant(d);
    const auto s = isqrt(d);
    while (!is_reduced(f, s)) f = rho(f, d, s);
    return f;
}

inline QuadForm principal_form(std::int64_t d) {
    detail::require_form_discriminant(d);
    const std::int64_t b = d % 2;
    return reduce({1, b, detail::c_from(1, b, d)});
}

/// Composition of two forms of the same discriminant (Dirichlet/Shanks,
/// with the first coefficients taken positive), followed by reduction.
inline QuadForm compose(QuadForm f1, QuadForm f2) {
    const auto d = f1.discriminant();
    if (f2.discriminant() != d) throw DomainError("cannot compose forms of different discriminants");
    const auto s0 = isqrt(d);
    // Move to cycle members with a > 0; every cycle alternates sign.
    while (f1.a <= 0) f1 = rho(f1, d, s0);
    while (f2.a <= 0) f2 = rho(f2, d, s0);
    if (f1.a > f2.a) std::swap(f1, f2);

    auto ext_gcd = [](std::int64_t a, std::int64_t b) {
        // returns (u, v, g) with u a + v b = g >= 0
        std::int64_t u0 = 1, v0 = 0, u1 = 0, v1 = 1;
        while (b != 0) {
            const std::int64_t q = a / b;
            std::tie(a, b) = std::make_pair(b, a - q * b);
            std::tie(u0, u1) = std::make_pair(u1, u0 - q * u1);
            std::tie(v0, v1) = std::make_pair(v1, v0 - q * v1);
        }
        if (a < 0) return std::make_tuple(-u0, -v0, -a);
        return std::make_tuple(u0, v0, a);
    };

    const std::int64_t s = (f1.b + f2.b) / 2, n = f2.b - s;
    std::int64_t y1, dd;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        dd = f1.a;
    } else {
        auto [u, v, g] = ext_gcd(f2.a, f1.a);
        (void)v;
        y1 = u;
        dd = g;
    }
    std::int64_t x2, y2, d1;
    if (s % dd == 0) {
        y2 = -1;
        x2 = 0;
        d1 = dd;
    } else {
        auto [u, v, g] = ext_gcd(s, dd);
        x2 = u;
        y2 = -v;
        d1 = g;
    }
    const std::int64_t v1 = f1.a / d1, v2 = f2.a / d1;
    const __int128 rr = static_cast<__int128>(y1) * y2 % v1 * n - static_cast<__int128>(x2) * f2.c;
    std::int64_t r = static_cast<std::int64_t>(rr % v1);
    if (r < 0) r += v1;
    const __int128 b3 = f2.b + static_cast<__int128>(2) * v2 * r;
    const __int128 a3 = static_cast<__int128>(v1) * v2;
    QuadForm f3{static_cast<std::int64_t>(a3), static_cast<std::int64_t>(b3), 0};
    f3.c = detail::c_from(f3.a, f3.b, d);
    return reduce(f3);
}

/// Reduced forms of discriminant d grouped into rho-cycles.
struct FormCycles {
    std::int64_t d = 0;
    std::vector<std::vector<QuadForm>> cycles;
    std::map<QuadForm, std::size_t> cycle_of;

    std::size_t class_of(const QuadForm& f) const { return cycle_of.at(reduce(f)); }
};

inline std::vector<QuadForm> reduced_forms(std::int64_t d) {
    detail::require_form_discriminant(d);
    const auto s = isqrt(d);
    std::vector<QuadForm> out;
    for (std::int64_t b = (d % 2 == 0 ? 2 : 1); b <= s; b += 2) {
        const std::int64_t n = (d - b * b) / 4;  // = -ac > 0
        // s < 2|a| + b and 2|a| - b <= s
        for (std::int64_t a = (s - b) / 2 + 1; 2 * a <= s + b; ++a) {
            if (n % a != 0) continue;
            out.push_back({a, b, -n / a});
            out.push_back({-a, b, n / a});
        }
    }
    return out;
}

inline FormCycles form_cycles(std::int64_t d) {
    FormCycles fc;
    fc.d = d;
    const auto s = isqrt(d);
    for (const auto& f : reduced_forms(d)) {
        if (fc.cycle_of.count(f)) continue;
        const std::size_t id = fc.cycles.size();
        fc.cycles.emplace_back();
        QuadForm g = f;
        do {
            fc.cycle_of.emplace(g, id);
            fc.cycles.back().push_back(g);
            g = rho(g, d, s);
        } while (!(g == f));
    }
    return fc;
}

inline std::int64_t narrow_class_number(std::int64_t d) {
    if (!is_fundamental(d)) throw DomainError(std::to_string(d) + " is not a fundamental discriminant");
    return static_cast<std::int64_t>(form_cycles(d).cycles.size());
}

struct ClassGroupResult {
    std::int64_t d = 0;
    std::int64_t class_number = 0;  ///< narrow
    AbelianGroup narrow;            ///< divisor chain
    PType sylow3;                   ///< logarithmic 3-type, descending
    std::vector<QuadForm> generator_forms;
};

/// Structure of the narrow class group of a fundamental discriminant.
inline ClassGroupResult narrow_class_group(std::int64_t d) {
    if (!is_fundamental(d)) throw DomainError(std::to_string(d) + " is not a fundamental discriminant");
    auto fc = form_cycles(d);
    ClassGroupResult r;
    r.d = d;
    r.class_number = static_cast<std::int64_t>(fc.cycles.size());
    std::vector<QuadForm> rep;
    for (const auto& cyc : fc.cycles)
        rep.push_back(*std::find_if(cyc.begin(), cyc.end(), [](const QuadForm& f) { return f.a > 0; }));
    const std::size_t id = fc.cycle_of.at(principal_form(d));
    auto st = detail::abelian_structure(rep.size(), id, [&](std::size_t x, std::size_t y) {
        return fc.cycle_of.at(compose(rep[x], rep[y]));
    });
    r.narrow = AbelianGroup(st.invariants);
    r.sylow3 = r.narrow.p_exponents(3);
    for (auto g : st.generators) r.generator_forms.push_back(rep[g]);
    return r;
}

/// 3-Sylow type of the class group. The narrow and the wide class group
/// differ by index at most 2, so their 3-parts agree.
inline PType sylow3_type(std::int64_t d) {
    if (!is_fundamental(d)) throw DomainError(std::to_string(d) + " is not a fundamental discriminant");
    if (narrow_class_number(d) % 3 != 0) return {};
    return narrow_class_group(d).sylow3;
}

struct ScanOptions {
    unsigned jobs = 1;
    std::int64_t block = 10000;
    std::optional<std::string> checkpoint;  ///< file holding the last completed d
    std::function<void(std::int64_t)> on_hit;  ///< called in ascending order
};

/// Fundamental d with lo < d < hi whose 3-class group is of type (3,3),
/// in ascending order. With a checkpoint file the scan resumes after the
/// recorded d and records progress after every block; hits emitted before
/// an interruption are not repeated.
inline std::vector<std::int64_t> scan_range(std::int64_t lo, std::int64_t hi, const ScanOptions& opt = {}) {
    if (lo < 0 || hi <= lo) throw DomainError("invalid scan range");
    if (opt.block < 1) throw DomainError("scan block size must be positive");
    std::int64_t start = lo;
    if (opt.checkpoint) {
        std::ifstream in(*opt.checkpoint);
        std::int64_t last = 0;
        if (in >> last) start = std::max(start, last);
    }
    const std::int64_t first = start + 1;
    const std::int64_t nblocks = first >= hi ? 0 : (hi - first + opt.block - 1) / opt.block;

    std::vector<std::vector<std::int64_t>> found(static_cast<std::size_t>(nblocks));
    std::vector<char> done(static_cast<std::size_t>(nblocks), 0);
    std::atomic<std::int64_t> next{0};
    std::mutex mu;
    std::int64_t committed = 0;
    std::vector<std::int64_t> out;

    auto commit = [&]() {  // caller holds mu
        while (committed < nblocks && done[static_cast<std::size_t>(committed)]) {
            for (auto d : found[static_cast<std::size_t>(committed)]) {
                out.push_back(d);
                if (opt.on_hit) opt.on_hit(d);
            }
            const std::int64_t last = std::min(hi - 1, first + (committed + 1) * opt.block - 1);
            if (opt.checkpoint) {
                std::ofstream ck(*opt.checkpoint, std::ios::trunc);
                ck << last << "\n";
            }
            ++committed;
        }
    };
    auto worker = [&]() {
        for (;;) {
            const std::int64_t k = next.fetch_add(1);
            if (k >= nblocks) return;
            const std::int64_t b0 = first + k * opt.block, b1 = std::min(hi, b0 + opt.block);
            std::vector<std::int64_t> hits;
            for (std::int64_t d = b0; d < b1; ++d) {
                if (!is_fundamental(d)) continue;
                if (narrow_class_number(d) % 9 != 0) continue;
                if (narrow_class_group(d).sylow3 == PType{1, 1}) hits.push_back(d);
            }
            std::lock_guard<std::mutex> lock(mu);
            found[static_cast<std::size_t>(k)] = std::move(hits);
            done[static_cast<std::size_t>(k)] = 1;
            commit();
        }
    };
    const unsigned jobs = std::max(1u, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

}  // namespace capit
