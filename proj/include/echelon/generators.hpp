#pragma once

#include <numeric>

#include "echelon/decompose.hpp"
#include "echelon/random.hpp"

namespace echelon {

struct GenParams {
    int rank = 2;
    int length = 1;             // m
    std::vector<int> ranks;     // r_0..r_m; empty = random composition
    int degree_bound = 1;       // scramble polynomial degree
    int scramble_count = 0;     // elementary operations in the outer scramble
    bool per_lattice_remix = true;

    // chain step exponents t_i = x^a y^b on the chosen pair
    int min_x_exp = 0, max_x_exp = 2;
    int min_y_exp = 1, max_y_exp = 2;

    // restrict scramble polynomial entries to these variables (empty = all);
    // transverse collections use this to share one frame across data
    std::vector<int> scramble_vars;
};

// Default desk table: one divisor pair plus one free variable.
inline VarTablePtr default_gen_table() {
    auto t = std::make_shared<VarTable>();
    t->add_pair("x", "y");
    t->add_free("z");
    return t;
}

inline std::vector<int> random_composition(RandomSource& rng, int total, int parts) {
    std::vector<int> v(parts, 0);
    for (int i = 0; i < total; ++i) ++v[rng.below(parts)];
    return v;
}

// Normal-form datum for the given blocks: E^i is the diagonal lattice with
// block multipliers from the chain.
template <class K>
EchelonDatum<K> normal_form_datum(const DivisorChain& chain, int rank,
                                  const std::vector<int>& ranks, const K& one) {
    int m = chain.length();
    if (static_cast<int>(ranks.size()) != m + 1)
        throw BadParameters("need m+1 block ranks");
    if (std::accumulate(ranks.begin(), ranks.end(), 0) != rank)
        throw BadParameters("block ranks must sum to the rank");
    EchelonDecomposition<K> dec;
    dec.block_ranks = ranks;
    dec.basis = Mat<Poly<K>>::identity(rank, Poly<K>::constant(chain.table(), one));
    return reassemble(dec, chain);
}

// Scalar-style chain on one divisor pair: t_i = x^{a_i} y^{b_i}.
inline DivisorChain make_pair_chain(const VarTablePtr& table, int xvar, int yvar,
                                    const std::vector<std::pair<int, int>>& exps) {
    std::vector<DivisorChain::Step> steps;
    int n = table->size();
    for (auto& [a, b] : exps) {
        Monomial t = Monomial::var(n, xvar, a) * Monomial::var(n, yvar, b);
        Monomial y = Monomial::var(n, yvar, b);
        steps.push_back({t, y});
    }
    return DivisorChain(table, steps);
}

// Deterministic seeded datum: a normal form conjugated by a constant-
// determinant scramble, with optional per-lattice basis remixing. The output
// always validates; anything else is a generator bug.
template <class K>
EchelonDatum<K> random_datum(std::uint64_t seed, const GenParams& p, VarTablePtr table,
                             int xvar, int yvar, const K& one) {
    if (p.rank < 1 || p.length < 1) throw BadParameters("rank and length must be positive");
    RandomSource rng(seed);

    std::vector<std::pair<int, int>> exps;
    for (int i = 0; i < p.length; ++i)
        exps.emplace_back(static_cast<int>(rng.range(p.min_x_exp, p.max_x_exp)),
                          static_cast<int>(rng.range(p.min_y_exp, p.max_y_exp)));
    DivisorChain chain = make_pair_chain(table, xvar, yvar, exps);

    std::vector<int> ranks = p.ranks;
    if (ranks.empty()) ranks = random_composition(rng, p.rank, p.length + 1);
    if (std::accumulate(ranks.begin(), ranks.end(), 0) != p.rank)
        throw BadParameters("block ranks must sum to the rank");

    EchelonDatum<K> d = normal_form_datum(chain, p.rank, ranks, one);

    if (p.scramble_count > 0) {
        Mat<Poly<K>> g = random_unimodular(rng, table, one, p.rank, p.scramble_count,
                                           p.degree_bound, p.scramble_vars);
        Mat<Frac<K>> gf = to_frac_matrix(g);
        for (int i = 1; i <= p.length; ++i)
            d.filtration[i] =
                LatticeBasis<K>(gf * d.filtration[i].matrix(), "E^" + std::to_string(i));
    }
    if (p.per_lattice_remix) {
        for (int i = 1; i <= p.length; ++i) {
            Mat<Poly<K>> h =
                random_unimodular(rng, table, one, p.rank, 2, p.degree_bound, p.scramble_vars);
            d.filtration[i] = LatticeBasis<K>(d.filtration[i].matrix() * to_frac_matrix(h),
                                              "E^" + std::to_string(i));
        }
    }

    ValidationReport rep = validate_datum(d);
    if (!rep.valid) throw InternalBreach("generated datum does not validate: " + rep.to_string());
    return d;
}

template <class K>
EchelonDatum<K> random_datum(std::uint64_t seed, const GenParams& p, const K& one) {
    VarTablePtr t = default_gen_table();
    return random_datum(seed, p, t, 0, 1, one);
}

} // namespace echelon
