#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "echelon/field.hpp"
#include "echelon/monomial.hpp"

namespace echelon {

// Exact multivariate polynomial over the field K. Terms are kept in a map
// ordered lexicographically on the declared variable order, with no zero
// coefficients stored, so two polynomials are equal iff their term lists are.
template <class K>
class Poly {
public:
    using Terms = std::map<Monomial, K, MonomialLexLess>;

    Poly() = default;
    explicit Poly(VarTablePtr table) : table_(std::move(table)) {}

    static Poly zero(VarTablePtr table) { return Poly(std::move(table)); }
    static Poly constant(VarTablePtr table, K c) {
        Poly p(std::move(table));
        if (!c.is_zero()) p.terms_.emplace(Monomial::one(p.nvars()), std::move(c));
        return p;
    }
    static Poly monomial(VarTablePtr table, Monomial m, K c) {
        Poly p(std::move(table));
        if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }
    static Poly variable(VarTablePtr table, int i, const K& one) {
        int n = static_cast<int>(table->size());
        return monomial(std::move(table), Monomial::var(n, i), one);
    }

    const VarTablePtr& table() const { return table_; }
    int nvars() const { return table_ ? table_->size() : 0; }
    const Terms& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second.is_one();
    }

    K constant_term() const {
        auto it = terms_.find(Monomial::one(nvars()));
        return it == terms_.end() ? K{} : it->second;
    }

    // Unit in the localization at the origin.
    bool is_local_unit() const { return !constant_term().is_zero(); }

    // Leading term in lex order (greatest monomial).
    std::pair<Monomial, K> lead() const {
        if (terms_.empty()) throw Error("lead of zero polynomial");
        auto it = terms_.rbegin();
        return {it->first, it->second};
    }

    int total_degree() const {
        int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    void add_term(const Monomial& m, const K& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator+(const Poly& o) const {
        ensure_same_table(table_, o.table_);
        Poly r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Poly operator-(const Poly& o) const {
        ensure_same_table(table_, o.table_);
        Poly r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    Poly operator-() const {
        Poly r(table_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    Poly operator*(const Poly& o) const {
        ensure_same_table(table_, o.table_);
        Poly r(table_);
        for (auto& [ma, ca] : terms_)
            for (auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const K& c) const {
        Poly r(table_);
        if (c.is_zero()) return r;
        for (auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
        return r;
    }
    Poly times_monomial(const Monomial& mu) const {
        Poly r(table_);
        for (auto& [m, k] : terms_) r.terms_.emplace(m * mu, k);
        return r;
    }

    bool operator==(const Poly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        for (; a != terms_.end(); ++a, ++b)
            if (a->first != b->first || !(a->second == b->second)) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Largest monomial dividing every term (the monomial content); 1 for the
    // zero polynomial.
    Monomial monomial_content() const {
        if (terms_.empty()) return Monomial::one(nvars());
        Monomial g = terms_.begin()->first;
        for (auto& [m, c] : terms_) g = g.gcd(m);
        return g;
    }

    bool divisible_by_monomial(const Monomial& mu) const {
        for (auto& [m, c] : terms_)
            if (!mu.divides(m)) return false;
        return true;
    }
    Poly divide_by_monomial(const Monomial& mu) const {
        Poly r(table_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m / mu, c);
        return r;
    }

    std::string to_string(bool compact = false) const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [m, c] : terms_) {
            std::string cs = c.to_string();
            bool neg = !cs.empty() && cs[0] == '-';
            std::string mag = neg ? cs.substr(1) : cs;
            if (first) {
                if (neg) s += '-';
            } else {
                s += compact ? (neg ? "-" : "+") : (neg ? " - " : " + ");
            }
            if (m.is_one()) {
                s += mag;
            } else {
                if (mag != "1") s += mag + "*";
                s += m.to_string(*table_);
            }
            first = false;
        }
        return s;
    }

private:
    VarTablePtr table_;
    Terms terms_;
};

// Canonical residue of f in R/(mu): delete every term divisible by mu.
// A polynomial lies in the monomial ideal (mu) iff each of its terms does.
template <class K>
Poly<K> reduce_mod_monomial(const Poly<K>& f, const Monomial& mu) {
    Poly<K> r(f.table());
    for (auto& [m, c] : f.terms())
        if (!mu.divides(m)) r.add_term(m, c);
    return r;
}

// Exact quotient f/g when it exists in the polynomial ring. Single-divisor
// multivariate division with leading-term reduction: once any leading term
// fails to reduce the remainder can never return to zero, so we stop there.
template <class K>
std::optional<Poly<K>> divide_exact(const Poly<K>& f, const Poly<K>& g) {
    ensure_same_table(f.table(), g.table());
    if (g.is_zero()) throw DivisionByZero{};
    Poly<K> q(f.table());
    Poly<K> r = f;
    auto [gm, gc] = g.lead();
    while (!r.is_zero()) {
        auto [rm, rc] = r.lead();
        if (!gm.divides(rm)) return std::nullopt;
        Monomial qm = rm / gm;
        K qc = rc / gc;
        Poly<K> t = Poly<K>::monomial(f.table(), qm, qc);
        q += t;
        r -= t * g;
    }
    return q;
}

enum class ArithOp { Add, Sub, Mul };

template <class K>
Poly<K> poly_arith(const Poly<K>& a, const Poly<K>& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
    }
    throw BadParameters("unknown arithmetic op");
}

} // namespace echelon
