#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "echelon/datum.hpp"

namespace echelon {

// Adapted direct-sum decomposition E^0 = A_0 + ... + A_m: basis columns
// grouped by block, with det(basis) a local unit. Block A_j enters E^i with
// the monomial coefficient multiplier(chain, i, j).
template <class K>
struct EchelonDecomposition {
    std::vector<int> block_ranks; // r_0 .. r_m
    Mat<Poly<K>> basis;           // columns grouped A_0 | A_1 | ... | A_m

    int rank() const { return basis.rows(); }
    int blocks() const { return static_cast<int>(block_ranks.size()); }
    int block_offset(int j) const {
        int off = 0;
        for (int b = 0; b < j; ++b) off += block_ranks[b];
        return off;
    }
    // block index of a basis column
    int block_of(int col) const {
        int j = 0, off = 0;
        while (col >= off + block_ranks[j]) off += block_ranks[j++];
        return j;
    }
};

// Coefficient of block A_j inside E^i: the product t_i t_{i-1} ... t_{m-j+1}
// when j > m - i, and 1 otherwise.
inline Monomial multiplier(const DivisorChain& chain, int i, int j) {
    int m = chain.length();
    Monomial acc = Monomial::one(chain.table()->size());
    for (int l = m - j + 1; l <= i; ++l) acc = acc * chain.t(l);
    return acc;
}

// Same coefficient as a Laurent exponent vector.
inline ExpVec multiplier_exp(const DivisorChain& chain, int i, int j) {
    return expvec_of(multiplier(chain, i, j));
}

namespace detail {

// Rank and pivot rows of the constant-term matrix, by Gaussian elimination
// over the coefficient field.
template <class K>
std::pair<int, std::vector<int>> constant_rank_rows(const Mat<Poly<K>>& m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<K>> c(rows, std::vector<K>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) c[i][j] = m.at(i, j).constant_term();
    std::vector<int> pivot_rows;
    std::vector<bool> used(rows, false);
    for (int j = 0; j < cols; ++j) {
        int pi = -1;
        for (int i = 0; i < rows && pi < 0; ++i)
            if (!used[i] && !c[i][j].is_zero()) pi = i;
        if (pi < 0) continue;
        used[pi] = true;
        pivot_rows.push_back(pi);
        for (int i = 0; i < rows; ++i) {
            if (i == pi || c[i][j].is_zero()) continue;
            K f = c[i][j] / c[pi][j];
            for (int k = j; k < cols; ++k) c[i][k] -= f * c[pi][k];
        }
    }
    return {static_cast<int>(pivot_rows.size()), pivot_rows};
}

template <class K>
std::vector<Poly<K>> frac_col_to_poly(const std::vector<Frac<K>>& col, const std::string& what) {
    for (auto& f : col)
        if (!f.in_local_ring()) throw InternalBreach(what + ": entry leaves the local ring");
    return clear_unit_denominators(col);
}

} // namespace detail

// Builds the lattice chain of Eq-style block form from a decomposition.
template <class K>
EchelonDatum<K> reassemble(const EchelonDecomposition<K>& dec, const DivisorChain& chain) {
    int m = chain.length();
    int r = dec.rank();
    if (static_cast<int>(dec.block_ranks.size()) != m + 1)
        throw RankMismatch("decomposition has " + std::to_string(dec.block_ranks.size()) +
                           " blocks for chain length " + std::to_string(m));
    if (std::accumulate(dec.block_ranks.begin(), dec.block_ranks.end(), 0) != r)
        throw RankMismatch("block ranks do not sum to the rank");

    const VarTablePtr& t = chain.table();
    K one = K{}.similar(1);
    std::vector<LatticeBasis<K>> filtration;
    for (int i = 0; i <= m; ++i) {
        Mat<Frac<K>> b(r, r, Frac<K>::zero(t, one));
        for (int col = 0; col < r; ++col) {
            Monomial mu = multiplier(chain, i, dec.block_of(col));
            for (int row = 0; row < r; ++row)
                b.at(row, col) = Frac<K>::of_poly(dec.basis.at(row, col)).times_monomial(mu);
        }
        filtration.emplace_back(std::move(b), "E^" + std::to_string(i));
    }
    return EchelonDatum<K>{r, chain, std::move(filtration)};
}

// Echelon decomposition by descending splits: at step i the previously found
// blocks are forced pivots of the reduction of E^i inside E^{i-1} mod t_i,
// and the new unit-pivot columns form the next block. The per-step
// certificate "E^i = (A_0 + ... + A_{m-i}) + t_i E^{i-1}" telescopes to the
// block form of every E^i, which is re-verified before returning.
template <class K>
EchelonDecomposition<K> decompose(const EchelonDatum<K>& d) {
    require_valid(d);
    const int m = d.length();
    const int r = d.rank;
    const VarTablePtr& table = d.table();
    K one = K{}.similar(1);

    std::vector<Mat<Poly<K>>> blocks; // A_0, A_1, ... in ambient coordinates
    auto total_found = [&] {
        int s = 0;
        for (auto& b : blocks) s += b.cols();
        return s;
    };

    for (int i = m; i >= 1; --i) {
        const Monomial& ti = d.chain.t(i);
        if (ti.is_one()) {
            blocks.emplace_back(r, 0, Poly<K>::zero(table));
            continue;
        }
        const LatticeBasis<K>& prev = d.filtration[i - 1];
        int a = total_found();

        Mat<Poly<K>> g(r, a + r, Poly<K>::zero(table));
        int col = 0;
        for (auto& blk : blocks)
            for (int j = 0; j < blk.cols(); ++j, ++col) {
                auto w = membership(to_frac_matrix(blk).col(j), prev);
                if (!w) throw InternalBreach("found block left the filtration");
                auto cleared = detail::frac_col_to_poly(*w, "block coordinates");
                for (int row = 0; row < r; ++row) g.at(row, col) = cleared[row];
            }
        Mat<Poly<K>> level = coordinate_matrix(d.filtration[i], prev, "decompose step");
        for (int j = 0; j < r; ++j, ++col)
            for (int row = 0; row < r; ++row) g.at(row, col) = level.at(row, j);

        PivotReduction<K> red = pivot_reduce_mod(g, ti, a);
        if (!red.forced_ok)
            throw InternalBreach("persisted block lost its unit pivot at step " +
                                 std::to_string(i));
        if (!red.residual_zero())
            throw InternalBreach("split residual at step " + std::to_string(i));

        Mat<Poly<K>> fresh(r, 0, Poly<K>::zero(table));
        for (auto& [pi, pj] : red.pivots) {
            (void)pi;
            if (pj < a) continue;
            // transformed column, mapped back to ambient coordinates
            std::vector<Frac<K>> in_prev;
            in_prev.reserve(r);
            for (int row = 0; row < r; ++row)
                in_prev.push_back(Frac<K>::of_poly(red.w.at(row, pj)));
            std::vector<Frac<K>> ambient = prev.matrix().apply(in_prev);
            fresh.append_col(detail::frac_col_to_poly(ambient, "new block column"));
        }
        blocks.push_back(std::move(fresh));
    }

    // the final block completes the found columns to a basis of the ambient
    int found = total_found();
    Mat<Poly<K>> all(r, found, Poly<K>::zero(table));
    {
        int col = 0;
        for (auto& blk : blocks)
            for (int j = 0; j < blk.cols(); ++j, ++col)
                for (int row = 0; row < r; ++row) all.at(row, col) = blk.at(row, j);
    }
    auto [crank, pivot_rows] = detail::constant_rank_rows(all);
    if (crank != found)
        throw InternalBreach("found blocks are not part of a unimodular basis");
    std::vector<bool> is_pivot_row(r, false);
    for (int pr : pivot_rows) is_pivot_row[pr] = true;
    Mat<Poly<K>> last(r, 0, Poly<K>::zero(table));
    for (int row = 0; row < r; ++row) {
        if (is_pivot_row[row]) continue;
        std::vector<Poly<K>> e(r, Poly<K>::zero(table));
        e[row] = Poly<K>::constant(table, one);
        last.append_col(e);
    }
    blocks.push_back(std::move(last));

    EchelonDecomposition<K> dec;
    for (auto& blk : blocks) dec.block_ranks.push_back(blk.cols());
    dec.basis = Mat<Poly<K>>(r, r, Poly<K>::zero(table));
    {
        int col = 0;
        for (auto& blk : blocks)
            for (int j = 0; j < blk.cols(); ++j, ++col)
                for (int row = 0; row < r; ++row) dec.basis.at(row, col) = blk.at(row, j);
    }

    if (!det(dec.basis).is_local_unit())
        throw InternalBreach("decomposition basis is not unimodular");

    EchelonDatum<K> back = reassemble(dec, d.chain);
    for (int i = 0; i <= m; ++i)
        if (!lattice_equal(back.filtration[i], d.filtration[i]))
            throw InternalBreach("reassembly mismatch at level " + std::to_string(i));

    return dec;
}

} // namespace echelon
