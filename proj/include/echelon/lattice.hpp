#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "echelon/matrix.hpp"

namespace echelon {

// Full-rank lattice in the rank-r generic fiber, presented by the columns of
// an r x r matrix over the fraction field. The lattice is the set of local-ring
// linear combinations of the columns.
template <class K>
class LatticeBasis {
public:
    LatticeBasis() = default;
    LatticeBasis(Mat<Frac<K>> columns, std::string label = {})
        : m_(std::move(columns)), label_(std::move(label)) {
        if (m_.rows() != m_.cols()) throw DimensionMismatch("lattice basis must be square");
    }

    static LatticeBasis standard(int r, const VarTablePtr& t, const K& one) {
        Frac<K> z = Frac<K>::zero(t, one);
        return LatticeBasis(Mat<Frac<K>>::identity(r, z), "standard");
    }

    int rank() const { return m_.rows(); }
    const Mat<Frac<K>>& matrix() const { return m_; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }
    const VarTablePtr& table() const { return m_.at(0, 0).table(); }

    std::vector<Frac<K>> column(int j) const { return m_.col(j); }

    std::string to_string() const { return matrix_to_string(m_); }

private:
    Mat<Frac<K>> m_;
    std::string label_;
};

// Solves B w = v exactly over the fraction field via the adjugate. Returns
// nothing when v does not lie in the lattice over the local ring at the
// origin: a coordinate stays illegal exactly when, after cancellation, its
// denominator keeps a monomial or non-unit polynomial factor.
template <class K>
std::optional<std::vector<Frac<K>>> membership(const std::vector<Frac<K>>& v,
                                               const LatticeBasis<K>& L) {
    if (static_cast<int>(v.size()) != L.rank())
        throw DimensionMismatch("vector length vs lattice rank");
    const Mat<Frac<K>>& B = L.matrix();
    Frac<K> d = det(B);
    if (d.is_zero()) throw SingularMatrix{};
    Mat<Frac<K>> adj = adjugate(B);
    std::vector<Frac<K>> w = adj.apply(v);
    for (auto& wi : w) {
        wi = wi / d;
        if (!wi.in_local_ring()) return std::nullopt;
    }
    // recompute B w = v; exactness is part of the contract
    std::vector<Frac<K>> back = B.apply(w);
    for (size_t i = 0; i < w.size(); ++i)
        if (!(back[i] == v[i])) throw InternalBreach("membership coordinates do not recompose");
    return w;
}

template <class K>
bool is_member(const std::vector<Frac<K>>& v, const LatticeBasis<K>& L) {
    return membership(v, L).has_value();
}

enum class TwistDirection { Up, Down };

// L(D) for D = div(mu): up divides every column by mu, down multiplies.
template <class K>
LatticeBasis<K> twist(const LatticeBasis<K>& L, const Monomial& mu, TwistDirection dir) {
    Mat<Frac<K>> m = L.matrix();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m.at(i, j) = dir == TwistDirection::Up ? m.at(i, j).over_monomial(mu)
                                                   : m.at(i, j).times_monomial(mu);
    return LatticeBasis<K>(std::move(m), L.label());
}

template <class K>
bool lattice_contains(const LatticeBasis<K>& outer, const LatticeBasis<K>& inner) {
    if (outer.rank() != inner.rank()) throw DimensionMismatch("lattice ranks differ");
    for (int j = 0; j < inner.rank(); ++j)
        if (!is_member(inner.column(j), outer)) return false;
    return true;
}

template <class K>
bool lattice_equal(const LatticeBasis<K>& a, const LatticeBasis<K>& b) {
    return lattice_contains(a, b) && lattice_contains(b, a);
}

// Determinant over the fraction field, normalized: constant term 1 when the
// numerator is a local unit, otherwise lex-leading coefficient 1.
template <class K>
Frac<K> det_lattice(const LatticeBasis<K>& L) {
    Frac<K> d = det(L.matrix());
    if (d.is_zero()) throw SingularMatrix{};
    K c = d.num().is_local_unit() ? d.num().constant_term() : d.num().lead().second;
    K scale = c.similar(1) / c;
    return d * Frac<K>::of_poly(Poly<K>::constant(d.table(), scale));
}

// --- unit-pivot column reduction over the local ring -----------------------
//
// Shared engine behind the quotient probe, the persistence checks and the
// echelon decomposition. Works on polynomial columns; a pivot is an entry
// whose reduction mod mu is a local unit (equivalently, nonzero constant
// term when mu != 1). Elimination uses the scaled operation
//     col_k := u * col_k - a * col_j
// which keeps entries polynomial and preserves column spans over the local
// ring because u is a unit.

template <class K>
struct PivotReduction {
    Mat<Poly<K>> w;                            // transformed columns
    std::vector<std::pair<int, int>> pivots;   // (row, col) in discovery order
    std::vector<int> bad_cols;                 // non-pivot cols not == 0 mod mu
    bool forced_ok = true;
    int failed_forced_col = -1;

    bool residual_zero() const { return bad_cols.empty(); }
};

template <class K>
PivotReduction<K> pivot_reduce_mod(Mat<Poly<K>> m, const Monomial& mu, int forced_prefix = 0) {
    PivotReduction<K> out;
    int rows = m.rows(), cols = m.cols();
    std::vector<bool> used_row(rows, false), used_col(cols, false);

    auto is_unit_mod = [&](const Poly<K>& p) {
        return !mu.is_one() && !p.constant_term().is_zero();
    };
    auto eliminate = [&](int pi, int pj) {
        Poly<K> u = m.at(pi, pj);
        for (int k = 0; k < cols; ++k) {
            if (k == pj) continue;
            Poly<K> a = m.at(pi, k);
            if (a.is_zero()) continue;
            for (int i = 0; i < rows; ++i) m.at(i, k) = m.at(i, k) * u - a * m.at(i, pj);
        }
        used_row[pi] = true;
        used_col[pj] = true;
        out.pivots.emplace_back(pi, pj);
    };

    // forced columns first (decomposition: previously found blocks must persist)
    for (int j = 0; j < forced_prefix; ++j) {
        int found = -1;
        for (int i = 0; i < rows && found < 0; ++i)
            if (!used_row[i] && is_unit_mod(reduce_mod_monomial(m.at(i, j), mu))) found = i;
        if (found < 0) {
            out.forced_ok = false;
            out.failed_forced_col = j;
            out.w = std::move(m);
            return out;
        }
        eliminate(found, j);
    }

    // free pivoting: scan rows in declared order, first unit entry wins
    for (bool progress = true; progress;) {
        progress = false;
        for (int i = 0; i < rows && !progress; ++i) {
            if (used_row[i]) continue;
            for (int j = 0; j < cols && !progress; ++j) {
                if (used_col[j]) continue;
                if (is_unit_mod(reduce_mod_monomial(m.at(i, j), mu))) {
                    eliminate(i, j);
                    progress = true;
                }
            }
        }
    }

    for (int j = 0; j < cols; ++j) {
        if (used_col[j]) continue;
        for (int i = 0; i < rows; ++i) {
            if (!reduce_mod_monomial(m.at(i, j), mu).is_zero()) {
                out.bad_cols.push_back(j);
                break;
            }
        }
    }
    out.w = std::move(m);
    return out;
}

// --- quotients --------------------------------------------------------------

struct QuotientDescriptor {
    Monomial annihilator;
    int free_rank = 0;
    int ambient_step = 0;

    bool operator==(const QuotientDescriptor&) const = default;
};

struct NotFreeSplit {
    std::string reason;
};

template <class K>
using QuotientResult = std::variant<QuotientDescriptor, NotFreeSplit>;

// Makes a column of local-ring coordinates polynomial by scaling with the
// (unit) denominators; the column span over the local ring is unchanged.
template <class K>
std::vector<Poly<K>> clear_unit_denominators(const std::vector<Frac<K>>& col) {
    Poly<K> common;
    bool have = false;
    for (auto& f : col) {
        if (!f.in_local_ring()) throw Error("coordinate not in the local ring: " + f.to_string());
        if (!have) {
            common = f.den();
            have = true;
        } else {
            common = common * f.den();
        }
    }
    std::vector<Poly<K>> out;
    out.reserve(col.size());
    for (auto& f : col) {
        Frac<K> scaled = f * Frac<K>::of_poly(common);
        out.push_back(scaled.as_poly());
    }
    return out;
}

// Coordinates of the columns of `inner` with respect to `outer`, cleared to a
// polynomial matrix. Throws NotContained when some column is not a member.
template <class K>
Mat<Poly<K>> coordinate_matrix(const LatticeBasis<K>& inner, const LatticeBasis<K>& outer,
                               const std::string& what) {
    int r = outer.rank();
    Mat<Poly<K>> t(r, inner.rank(), Poly<K>::zero(outer.table()));
    for (int j = 0; j < inner.rank(); ++j) {
        auto w = membership(inner.column(j), outer);
        if (!w) throw NotContained(what + ", column " + std::to_string(j));
        auto cleared = clear_unit_denominators(*w);
        for (int i = 0; i < r; ++i) t.at(i, j) = cleared[i];
    }
    return t;
}

// Certifies that big/small is free over R/(mu) and reports its rank.
// Pivot rule and the zero-residual condition follow the column reduction
// above; any surviving non-pivot column obstructs a free splitting.
template <class K>
QuotientResult<K> quotient_structure(const LatticeBasis<K>& small, const LatticeBasis<K>& big,
                                     const Monomial& mu, int ambient_step = 0) {
    if (small.rank() != big.rank()) throw DimensionMismatch("quotient of different ranks");
    Mat<Poly<K>> t = coordinate_matrix(small, big, "quotient: small inside big");

    if (mu.is_one()) {
        // R/(1) is the zero ring; the only free-split quotient is the zero one.
        if (lattice_contains(small, big)) return QuotientDescriptor{mu, 0, ambient_step};
        return NotFreeSplit{"annihilator 1 but lattices differ"};
    }

    // annihilation: mu * big must land in small
    for (int j = 0; j < big.rank(); ++j) {
        std::vector<Frac<K>> col = big.column(j);
        for (auto& e : col) e = e.times_monomial(mu);
        if (!is_member(col, small))
            return NotFreeSplit{"annihilator does not send big into small (column " +
                                std::to_string(j) + ")"};
    }

    PivotReduction<K> red = pivot_reduce_mod(t, mu);
    if (!red.residual_zero())
        return NotFreeSplit{"residual column " + std::to_string(red.bad_cols.front()) +
                            " is nonzero mod " + mu.to_string(*big.table())};
    int q = big.rank() - static_cast<int>(red.pivots.size());
    return QuotientDescriptor{mu, q, ambient_step};
}

} // namespace echelon
