#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace capit::detail {

using Row = std::vector<std::int64_t>;

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Diagonalization of the lattice L = rowspace(rows) + modulus * Z^ncols.
///
/// `transform` is the accumulated unimodular column transform V: a vector x
/// maps to the coordinates x*V, the i-th taken modulo `invariants[i]`.
/// Entries are kept reduced modulo `modulus`, which is harmless because the
/// lattice contains modulus * Z^ncols.
struct SmithForm {
    std::vector<std::int64_t> invariants;  ///< one per column, each dividing modulus
    std::vector<Row> transform;            ///< ncols x ncols
};

inline SmithForm smith_normal_form(std::vector<Row> rows, std::size_t ncols, std::int64_t modulus) {
    if (modulus <= 0) throw std::invalid_argument("smith_normal_form: modulus must be positive");
    auto reduce = [modulus](std::int64_t v) {
        std::int64_t r = mod_floor(v, modulus);
        return r > modulus / 2 ? r - modulus : r;
    };
    auto mulsub = [&](std::int64_t a, std::int64_t q, std::int64_t b) {
        __int128 v = static_cast<__int128>(a) - static_cast<__int128>(q) * b;
        v %= modulus;
        return reduce(static_cast<std::int64_t>(v));
    };
    for (auto& r : rows) {
        r.resize(ncols, 0);
        for (auto& v : r) v = reduce(v);
    }
    std::vector<Row> V(ncols, Row(ncols, 0));
    for (std::size_t i = 0; i < ncols; ++i) V[i][i] = 1;

    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& r : rows) std::swap(r[a], r[b]);
        for (auto& r : V) std::swap(r[a], r[b]);
    };
    // col_j -= q * col_t
    auto col_sub = [&](std::size_t j, std::size_t t, std::int64_t q) {
        for (auto& r : rows) r[j] = mulsub(r[j], q, r[t]);
        for (auto& r : V) r[j] = mulsub(r[j], q, r[t]);
    };
    auto row_sub = [&](std::size_t i, std::size_t t, std::int64_t q) {
        for (std::size_t j = 0; j < ncols; ++j) rows[i][j] = mulsub(rows[i][j], q, rows[t][j]);
    };

    std::vector<std::int64_t> diag(ncols, 0);
    std::size_t t = 0;
    for (; t < ncols && t < rows.size(); ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = rows.size(), pj = ncols;
            std::int64_t best = 0;
            for (std::size_t i = t; i < rows.size(); ++i)
                for (std::size_t j = t; j < ncols; ++j) {
                    std::int64_t v = std::llabs(rows[i][j]);
                    if (v != 0 && (best == 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) break;
            std::swap(rows[t], rows[pi]);
            swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows.size(); ++i) {
                if (rows[i][t] == 0) continue;
                row_sub(i, t, rows[i][t] / rows[t][t]);
                if (rows[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < ncols; ++j) {
                if (rows[t][j] == 0) continue;
                col_sub(j, t, rows[t][j] / rows[t][t]);
                if (rows[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            bool divisible = true;
            for (std::size_t i = t + 1; i < rows.size() && divisible; ++i)
                for (std::size_t j = t + 1; j < ncols; ++j)
                    if (rows[i][j] % rows[t][t] != 0) {
                        for (std::size_t k = 0; k < ncols; ++k)
                            rows[t][k] = reduce(rows[t][k] + rows[i][k]);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (rows.empty() || t >= rows.size()) break;
        diag[t] = std::llabs(rows[t][t]);
        if (diag[t] == 0) break;
    }

    SmithForm out;
    out.invariants.resize(ncols);
    for (std::size_t i = 0; i < ncols; ++i) {
        std::int64_t d = diag[i] == 0 ? modulus : std::gcd(diag[i], modulus);
        out.invariants[i] = d;
    }
    for (auto& r : V)
        for (auto& v : r) v = mod_floor(v, modulus);
    out.transform = std::move(V);
    return out;
}

/// Structure of a finite abelian group presented by its multiplication on
/// the dense labels [0, n).
struct AbelianStructure {
    std::vector<std::int64_t> invariants;          ///< nontrivial factors, divisor chain
    std::vector<std::vector<std::int64_t>> coords;  ///< coordinates of every label
    std::vector<std::size_t> generators;            ///< labels used to span the group
};

/// `op(a, b)` must be an abelian group law on [0, n) with identity `identity`.
/// Generators are picked greedily; relations are the Schreier relations of
/// the breadth-first spanning tree, so the presentation is complete.
template <class Op>
AbelianStructure abelian_structure(std::size_t n, std::size_t identity, Op&& op) {
    AbelianStructure out;
    std::vector<std::size_t> gens;
    std::vector<Row> word;  // word[x]: exponent vector over gens reaching x
    std::vector<char> seen;
    std::vector<Row> relations;

    auto span = [&]() {
        const std::size_t m = gens.size();
        word.assign(n, Row());
        seen.assign(n, 0);
        relations.clear();
        seen[identity] = 1;
        word[identity] = Row(m, 0);
        std::deque<std::size_t> queue{identity};
        while (!queue.empty()) {
            std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t k = 0; k < m; ++k) {
                std::size_t y = op(x, gens[k]);
                Row w = word[x];
                w[k] += 1;
                if (!seen[y]) {
                    seen[y] = 1;
                    word[y] = std::move(w);
                    queue.push_back(y);
                } else {
                    for (std::size_t i = 0; i < m; ++i) w[i] -= word[y][i];
                    if (std::any_of(w.begin(), w.end(), [](std::int64_t v) { return v != 0; }))
                        relations.push_back(std::move(w));
                }
            }
        }
    };

    span();
    for (std::size_t x = 0; x < n; ++x) {
        if (seen[x]) continue;
        gens.push_back(x);
        span();
    }
    out.generators = gens;

    const std::size_t m = gens.size();
    out.coords.assign(n, {});
    if (m == 0) return out;

    SmithForm snf = smith_normal_form(relations, m, static_cast<std::int64_t>(n));
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < m; ++i)
        if (snf.invariants[i] > 1) keep.push_back(i);
    for (std::size_t i : keep) out.invariants.push_back(snf.invariants[i]);

    for (std::size_t x = 0; x < n; ++x) {
        Row c(keep.size(), 0);
        for (std::size_t a = 0; a < keep.size(); ++a) {
            std::size_t col = keep[a];
            __int128 acc = 0;
            for (std::size_t i = 0; i < m; ++i)
                acc += static_cast<__int128>(word[x][i]) * snf.transform[i][col];
            std::int64_t d = out.invariants[a];
            c[a] = mod_floor(static_cast<std::int64_t>(acc % d), d);
        }
        out.coords[x] = std::move(c);
    }
    return out;
}

}  // namespace capit::detail
