#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "echelon/chain.hpp"
#include "echelon/lattice.hpp"

namespace echelon {

// A descending chain of full-rank lattices E^0 >= E^1 >= ... >= E^m together
// with the divisor chain. filtration[0] is the ambient and must be the
// standard lattice.
template <class K>
struct EchelonDatum {
    int rank = 0;
    DivisorChain chain;
    std::vector<LatticeBasis<K>> filtration; // size m+1

    int length() const { return chain.length(); }
    const VarTablePtr& table() const { return chain.table(); }
    const LatticeBasis<K>& level(int i) const { return filtration.at(i); }
};

struct ValidationFailure {
    enum class Kind {
        Containment,      // E^i not inside E^{i-1}
        Effectivity,      // y_i does not divide t_i
        CommonComponent,  // D_i shares a variable with its complement
        Persistence,      // split/freeness or twisted containment fails at (i, j)
        AmbientNotStandard,
        SingularBasis,
    };
    Kind kind;
    int i = -1;
    int j = -1;
    std::string detail;

    std::string name() const {
        switch (kind) {
            case Kind::Containment: return "ContainmentViolation";
            case Kind::Effectivity: return "EffectivityViolation";
            case Kind::CommonComponent: return "CommonComponentViolation";
            case Kind::Persistence: return "PersistenceViolation";
            case Kind::AmbientNotStandard: return "AmbientNotStandard";
            case Kind::SingularBasis: return "SingularBasis";
        }
        return "?";
    }
    std::string to_string() const {
        std::string s = name() + "(" + std::to_string(i);
        if (kind == Kind::Persistence) s += ", " + std::to_string(j);
        s += ")";
        if (!detail.empty()) s += ": " + detail;
        return s;
    }
};

struct ValidationReport {
    bool valid = true;
    std::vector<ValidationFailure> failures;
    // persistence ranks s_{i,i-1} discovered along the way; useful diagnostics
    std::vector<int> level_quotient_ranks;

    void add(ValidationFailure f) {
        valid = false;
        failures.push_back(std::move(f));
    }
    std::string to_string() const {
        if (valid) return "valid";
        std::string s;
        for (auto& f : failures) {
            if (!s.empty()) s += "; ";
            s += f.to_string();
        }
        return s;
    }
};

// Thrown by operations whose precondition is a validating datum.
struct ValidationError : Error {
    ValidationReport report;
    explicit ValidationError(ValidationReport r)
        : Error("datum does not validate: " + r.to_string()), report(std::move(r)) {}
};

// Checks, in order: divisor-chain invariants, the standard ambient, the
// containments E^i <= E^{i-1}, the twisted containments t_i E^{i-1} <= E^i,
// and the persistence condition for every pair j < i. Persistence of (i, j)
// is certified by unit-pivot column reduction of the image of E^i in
// E^j mod t_i: the reduction must terminate with zero residual (split and
// free) and with the same pivot count as at j = i-1 (the map from
// E^i / t_i E^{i-1} is then a surjection of free modules of equal rank over
// a local ring, hence an isomorphism).
template <class K>
ValidationReport validate_datum(const EchelonDatum<K>& d) {
    ValidationReport rep;
    const int m = d.length();
    const int r = d.rank;

    for (auto& f : d.chain.validate()) {
        rep.add({f.kind == DivisorChain::Failure::Kind::Effectivity
                     ? ValidationFailure::Kind::Effectivity
                     : ValidationFailure::Kind::CommonComponent,
                 f.i, -1, f.detail});
    }

    if (static_cast<int>(d.filtration.size()) != m + 1) {
        rep.add({ValidationFailure::Kind::Containment, 0, -1,
                 "filtration must contain E^0..E^m"});
        return rep;
    }

    // nonsingular bases
    for (int i = 0; i <= m; ++i) {
        if (d.filtration[i].rank() != r) {
            rep.add({ValidationFailure::Kind::SingularBasis, i, -1, "rank mismatch"});
            return rep;
        }
        if (det(d.filtration[i].matrix()).is_zero()) {
            rep.add({ValidationFailure::Kind::SingularBasis, i, -1, "singular basis matrix"});
            return rep;
        }
    }

    K one = K{}.similar(1);
    auto std_lattice = LatticeBasis<K>::standard(r, d.table(), one);
    if (!lattice_equal(d.filtration[0], std_lattice))
        rep.add({ValidationFailure::Kind::AmbientNotStandard, 0, -1,
                 "E^0 is not the standard lattice"});

    std::vector<bool> contained(m + 1, true);
    for (int i = 1; i <= m; ++i) {
        if (!lattice_contains(d.filtration[i - 1], d.filtration[i])) {
            contained[i] = false;
            rep.add({ValidationFailure::Kind::Containment, i, -1, ""});
        }
    }

    rep.level_quotient_ranks.assign(m + 1, -1);
    std::vector<ValidationFailure> persistence_fails;

    for (int i = 1; i <= m; ++i) {
        if (!contained[i]) continue;
        const Monomial& ti = d.chain.t(i);

        // twisted containment t_i E^{i-1} <= E^i (first half of persistence)
        bool twisted_ok = true;
        for (int jcol = 0; jcol < r && twisted_ok; ++jcol) {
            std::vector<Frac<K>> col = d.filtration[i - 1].column(jcol);
            for (auto& e : col) e = e.times_monomial(ti);
            if (!is_member(col, d.filtration[i])) twisted_ok = false;
        }
        if (!twisted_ok) {
            persistence_fails.push_back({ValidationFailure::Kind::Persistence, i, i - 1,
                                         "t_i E^{i-1} is not contained in E^i"});
            continue;
        }
        if (ti.is_one()) continue; // E^i = E^{i-1}; nothing to persist

        // second half: image of E^i in E^j mod t_i, for every j < i
        int reference_rank = -1;
        for (int j = i - 1; j >= 0; --j) {
            bool chain_ok = true;
            for (int k = j + 1; k <= i; ++k)
                if (!contained[k]) chain_ok = false;
            if (!chain_ok) break;

            Mat<Poly<K>> g = coordinate_matrix(d.filtration[i], d.filtration[j],
                                               "persistence coordinates");
            PivotReduction<K> red = pivot_reduce_mod(g, ti);
            if (!red.residual_zero()) {
                persistence_fails.push_back(
                    {ValidationFailure::Kind::Persistence, i, j,
                     "image of E^i in E^" + std::to_string(j) + " mod t_" + std::to_string(i) +
                         " is not a free split submodule"});
                continue;
            }
            int s = static_cast<int>(red.pivots.size());
            if (j == i - 1) {
                reference_rank = s;
                rep.level_quotient_ranks[i] = s;
            } else if (s != reference_rank) {
                persistence_fails.push_back(
                    {ValidationFailure::Kind::Persistence, i, j,
                     "image rank " + std::to_string(s) + " differs from rank " +
                         std::to_string(reference_rank) + " of E^i / t_i E^{i-1}"});
            }
        }
    }

    std::sort(persistence_fails.begin(), persistence_fails.end(),
              [](const ValidationFailure& a, const ValidationFailure& b) {
                  return a.i != b.i ? a.i < b.i : a.j < b.j;
              });
    for (auto& f : persistence_fails) rep.add(std::move(f));
    return rep;
}

template <class K>
void require_valid(const EchelonDatum<K>& d) {
    ValidationReport rep = validate_datum(d);
    if (!rep.valid) throw ValidationError(std::move(rep));
}

} // namespace echelon
