#pragma once

#include "echelon/modify.hpp"

namespace echelon {

// A map from the ambient bundle to a trivialized line bundle: a row vector of
// polynomials in the ambient coordinates.
template <class K>
struct MapToLine {
    std::vector<Poly<K>> row;

    Frac<K> apply(const std::vector<Frac<K>>& col) const {
        Frac<K> acc = Frac<K>::of_poly(zero_like(row.at(0)));
        for (size_t k = 0; k < row.size(); ++k) acc += col[k].times_poly(row[k]);
        return acc;
    }
};

template <class K>
struct ExtendOutcome {
    bool hypothesis_ok = false;
    int fail_level = -1;   // level i at which phi(E^i) misses L(-D_i)
    int witness_col = -1;
    std::vector<Poly<K>> extended; // values of the extension on the E_m basis
};

// Checks phi(E^i) <= L(-D_i) level by level (first failure wins) and, when
// the hypothesis holds, extends phi over the whole modification by applying
// it to the E_m basis over the fraction field. Non-polynomial extension
// values after a clean hypothesis check contradict the construction and
// raise an internal breach.
template <class K>
ExtendOutcome<K> extend_map(const EchelonDatum<K>& d, const ModificationChain<K>& c,
                            const MapToLine<K>& phi) {
    if (static_cast<int>(phi.row.size()) != d.rank)
        throw DimensionMismatch("map row length vs rank");
    ExtendOutcome<K> out;
    for (int i = 1; i <= d.length(); ++i) {
        Monomial Di = d.chain.D(i);
        for (int col = 0; col < d.rank; ++col) {
            Frac<K> v = phi.apply(d.filtration[i].column(col));
            if (!v.over_monomial(Di).in_local_ring()) {
                out.hypothesis_ok = false;
                out.fail_level = i;
                out.witness_col = col;
                return out;
            }
        }
    }
    out.hypothesis_ok = true;
    int m = c.length();
    for (int col = 0; col < d.rank; ++col) {
        Frac<K> v = phi.apply(c.stages[m].column(col));
        if (!v.is_polynomial()) {
            if (!v.in_local_ring())
                throw InternalBreach("ExtensionFail: value " + v.to_string() +
                                     " on column " + std::to_string(col));
            // unit denominator: legal in the local model; clear it
            v = v * Frac<K>::of_poly(v.den());
        }
        out.extended.push_back(v.as_poly());
    }
    return out;
}

template <class K>
struct ProbeCandidate {
    Monomial mu;
    std::vector<Poly<K>> v;
    bool enlarges = false;
    bool extends = false;
};

template <class K>
struct ProbeReport {
    int trials = 0;
    int enlargements = 0;
    std::vector<ProbeCandidate<K>> counterexamples;
    bool consistent() const { return counterexamples.empty(); }
};

// Falsification harness for the maximality clause: random candidates
// E' = E_m + R (1/mu) v with (1/mu) v outside E_m. If phi extends to such a
// candidate, maximality is contradicted and the candidate is reported. The
// report never asserts the theorem; it only fails to falsify it.
template <class K>
ProbeReport<K> maximality_probe(const EchelonDatum<K>& d, const ModificationChain<K>& c,
                                const MapToLine<K>& phi, std::uint64_t seed, int trials) {
    ProbeReport<K> rep;
    rep.trials = trials;
    const VarTablePtr& t = d.table();
    K one = K{}.similar(1);

    std::vector<int> yvars;
    for (int v = 0; v < t->size(); ++v) {
        bool used = false;
        for (int i = 1; i <= d.length(); ++i)
            if (d.chain.y(i).exp(v) > 0) used = true;
        if (used) yvars.push_back(v);
    }
    if (yvars.empty()) return rep; // nothing to enlarge along

    const LatticeBasis<K>& Em = c.stages[c.length()];
    for (int trial = 0; trial < trials; ++trial) {
        RandomSource rng = RandomSource::forked(seed, trial);
        int var = yvars[rng.below(yvars.size())];
        Monomial mu = Monomial::var(t->size(), var, 1 + static_cast<int>(rng.below(2)));
        std::vector<Poly<K>> v;
        for (int row = 0; row < d.rank; ++row) v.push_back(random_poly(rng, t, one, 1, 2));

        std::vector<Frac<K>> w;
        for (auto& p : v) w.push_back(Frac<K>::of_poly(p).over_monomial(mu));
        bool enlarges = !is_member(w, Em);
        if (enlarges) ++rep.enlargements;
        bool extends = phi.apply(w).in_local_ring();
        if (enlarges && extends)
            rep.counterexamples.push_back({mu, v, enlarges, extends});
    }
    return rep;
}

// Supported ring maps: pair-preserving variable permutation, unit rescaling
// of each variable, and adjoining fresh free variables. These are dominant
// and stay inside the monomial model.
template <class K>
struct RingMap {
    VarTablePtr source;
    VarTablePtr target;
    std::vector<int> var_map; // source index -> target index, injective
    std::vector<K> scales;    // per source variable, nonzero

    static RingMap identity(const VarTablePtr& t, const K& one) {
        RingMap f{t, t, {}, {}};
        for (int i = 0; i < t->size(); ++i) {
            f.var_map.push_back(i);
            f.scales.push_back(one);
        }
        return f;
    }

    void check() const {
        if (static_cast<int>(var_map.size()) != source->size() ||
            static_cast<int>(scales.size()) != source->size())
            throw MapUnsupported("map tables have the wrong size");
        std::vector<bool> hit(target->size(), false);
        for (int i = 0; i < source->size(); ++i) {
            int im = var_map[i];
            if (im < 0 || im >= target->size() || hit[im])
                throw MapUnsupported("variable map is not injective");
            hit[im] = true;
            if (scales[i].is_zero()) throw MapUnsupported("zero variable scale");
            if (source->var(i).role != target->var(im).role)
                throw MapUnsupported("variable roles are not preserved");
            if (source->var(i).partner >= 0 &&
                var_map[source->var(i).partner] != target->var(im).partner)
                throw MapUnsupported("divisor pairs are not preserved");
        }
    }

    Monomial apply(const Monomial& m) const {
        Monomial r(target->size());
        for (int i = 0; i < source->size(); ++i) r.exp(var_map[i]) = m.exp(i);
        return r;
    }
    // unit constants on monomials rescale the equation, not the divisor
    Poly<K> apply(const Poly<K>& p) const {
        Poly<K> r(target);
        for (auto& [m, coef] : p.terms()) {
            K c = coef;
            for (int i = 0; i < source->size(); ++i)
                for (int e = 0; e < m.exp(i); ++e) c *= scales[i];
            r.add_term(apply(m), c);
        }
        return r;
    }
    Frac<K> apply(const Frac<K>& f) const { return Frac<K>(apply(f.num()), apply(f.den())); }
    LatticeBasis<K> apply(const LatticeBasis<K>& L) const {
        int r = L.rank();
        K one = K{}.similar(1);
        Mat<Frac<K>> m(r, r, Frac<K>::zero(target, one));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) m.at(i, j) = apply(L.matrix().at(i, j));
        return LatticeBasis<K>(std::move(m), L.label());
    }
    DivisorChain apply(const DivisorChain& chain) const {
        std::vector<DivisorChain::Step> steps;
        for (int i = 1; i <= chain.length(); ++i) steps.push_back({apply(chain.t(i)), apply(chain.y(i))});
        return DivisorChain(target, steps);
    }
    EchelonDatum<K> apply(const EchelonDatum<K>& d) const {
        std::vector<LatticeBasis<K>> f;
        for (auto& L : d.filtration) f.push_back(apply(L));
        return EchelonDatum<K>{d.rank, apply(d.chain), std::move(f)};
    }
};

struct CommutationReport {
    bool ok = true;
    int fail_stage = -1;
};

// Base-change compatibility: the pullback of the modification equals the
// modification of the pullback, stage by stage.
template <class K>
CommutationReport pullback_commute(const EchelonDatum<K>& d, const RingMap<K>& f,
                                   std::uint64_t seed = 0) {
    (void)seed;
    f.check();
    ensure_same_table(d.table(), f.source);
    ModificationChain<K> left = modify(d);
    ModificationChain<K> right = modify(f.apply(d));
    CommutationReport rep;
    for (int j = 0; j <= d.length(); ++j) {
        if (!lattice_equal(f.apply(left.stages[j]), right.stages[j])) {
            rep.ok = false;
            rep.fail_stage = j;
            return rep;
        }
    }
    return rep;
}

struct TransportReport {
    bool ok = true;
    int fail_stage = -1;
    bool composition_ok = true;
};

template <class K>
EchelonDatum<K> transport_datum(const EchelonDatum<K>& d, const Mat<Poly<K>>& g) {
    if (!det(g).is_local_unit()) throw NotUnimodular{};
    Mat<Frac<K>> gf = to_frac_matrix(g);
    std::vector<LatticeBasis<K>> f;
    for (auto& L : d.filtration) f.push_back(LatticeBasis<K>(gf * L.matrix(), L.label()));
    return EchelonDatum<K>{d.rank, d.chain, std::move(f)};
}

// Functoriality under a unimodular change of the ambient frame: transported
// data modify to transported stages, and transport respects composition on a
// sampled second matrix.
template <class K>
TransportReport functoriality_transport(const EchelonDatum<K>& d, const Mat<Poly<K>>& g,
                                        std::uint64_t seed = 0) {
    if (!det(g).is_local_unit()) throw NotUnimodular{};
    TransportReport rep;
    ModificationChain<K> base = modify(d);
    ModificationChain<K> moved = modify(transport_datum(d, g));
    Mat<Frac<K>> gf = to_frac_matrix(g);
    for (int j = 0; j <= d.length(); ++j) {
        LatticeBasis<K> expected(gf * base.stages[j].matrix());
        if (!lattice_equal(expected, moved.stages[j])) {
            rep.ok = false;
            rep.fail_stage = j;
            return rep;
        }
    }
    // composition sample
    RandomSource rng(seed == 0 ? 0x5eedULL : seed);
    K one = K{}.similar(1);
    Mat<Poly<K>> g2 = random_unimodular(rng, d.table(), one, d.rank, 3, 1);
    ModificationChain<K> once_more = modify(transport_datum(transport_datum(d, g), g2));
    ModificationChain<K> composed = modify(transport_datum(d, g2 * g));
    for (int j = 0; j <= d.length(); ++j)
        if (!lattice_equal(once_more.stages[j], composed.stages[j])) rep.composition_ok = false;
    return rep;
}

} // namespace echelon
