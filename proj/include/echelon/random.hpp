#pragma once

#include <cstdint>
#include <random>

#include "echelon/matrix.hpp"

namespace echelon {

// Seeded randomness with no ambient state. The raw engine output is used
// directly (modulo bias is irrelevant here) so streams depend only on the
// seed, not on standard-library distribution internals.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    // uniform-ish in [0, n)
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool chance(int num, int den) { return below(den) < static_cast<std::uint64_t>(num); }

    // derive an independent stream for a trial index; schedule-independent
    RandomSource fork(std::uint64_t index) const {
        std::uint64_t s = seed_mix_;
        s ^= 0x9e3779b97f4a7c15ull + index + (s << 6) + (s >> 2);
        return RandomSource(s);
    }
    static RandomSource forked(std::uint64_t seed, std::uint64_t index) {
        RandomSource r(seed);
        return r.fork(index);
    }

private:
    std::mt19937_64 eng_;
    std::uint64_t seed_mix_ = eng_();
};

template <class K>
K random_scalar(RandomSource& rng, const K& one, long lo = -3, long hi = 3) {
    return one.similar(rng.range(lo, hi));
}
template <class K>
K random_nonzero_scalar(RandomSource& rng, const K& one, long lo = -3, long hi = 3) {
    for (;;) {
        K c = random_scalar(rng, one, lo, hi);
        if (!c.is_zero()) return c;
    }
}

// Random polynomial of bounded degree. var_mask limits which variables may
// appear (empty mask = all).
template <class K>
Poly<K> random_poly(RandomSource& rng, const VarTablePtr& t, const K& one, int max_deg,
                    int max_terms, const std::vector<int>& allowed_vars = {}) {
    std::vector<int> vars = allowed_vars;
    if (vars.empty())
        for (int i = 0; i < t->size(); ++i) vars.push_back(i);
    Poly<K> p(t);
    int nterms = static_cast<int>(rng.below(max_terms + 1));
    for (int i = 0; i < nterms; ++i) {
        Monomial m(t->size());
        int deg = static_cast<int>(rng.below(max_deg + 1));
        for (int d = 0; d < deg; ++d) ++m.exp(vars[rng.below(vars.size())]);
        p.add_term(m, random_scalar(rng, one));
    }
    return p;
}

// Elementary matrix E_{kl}(p): identity plus p in position (k, l).
template <class K>
Mat<Poly<K>> elementary_matrix(const VarTablePtr& t, const K& one, int n, int k, int l,
                               const Poly<K>& p) {
    Mat<Poly<K>> m = Mat<Poly<K>>::identity(n, Poly<K>::constant(t, one));
    m.at(k, l) = m.at(k, l) + p;
    return m;
}

// Product of random elementary matrices and unit diagonal scalings: a
// unimodular matrix with constant determinant, by construction.
template <class K>
Mat<Poly<K>> random_unimodular(RandomSource& rng, const VarTablePtr& t, const K& one, int n,
                               int ops, int max_deg, const std::vector<int>& allowed_vars = {}) {
    Mat<Poly<K>> acc = Mat<Poly<K>>::identity(n, Poly<K>::constant(t, one));
    for (int s = 0; s < ops; ++s) {
        if (n >= 2 && !rng.chance(1, 4)) {
            int k = static_cast<int>(rng.below(n));
            int l = static_cast<int>(rng.below(n - 1));
            if (l >= k) ++l;
            Poly<K> p = random_poly(rng, t, one, max_deg, 2, allowed_vars);
            acc = acc * elementary_matrix(t, one, n, k, l, p);
        } else {
            Mat<Poly<K>> d = Mat<Poly<K>>::identity(n, Poly<K>::constant(t, one));
            int k = static_cast<int>(rng.below(n));
            d.at(k, k) = Poly<K>::constant(t, random_nonzero_scalar(rng, one));
            acc = acc * d;
        }
    }
    return acc;
}

} // namespace echelon
