#pragma once

#include <string>

#include "echelon/poly.hpp"

namespace echelon {

// Exact fraction of polynomials. Denominators arising in this project are
// always (constant) * (monomial) * (local unit); reduce() cancels the common
// monomial content and full polynomial divisors, which is enough to decide
// membership in the local ring at the origin for that class.
template <class K>
class Frac {
public:
    Frac() = default;
    explicit Frac(Poly<K> num) : num_(std::move(num)) {
        den_ = Poly<K>::constant(num_.table(), unit_scalar());
    }
    Frac(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero{};
        reduce();
    }

    static Frac zero(const VarTablePtr& t, const K& one) {
        return Frac(Poly<K>::zero(t), Poly<K>::constant(t, one));
    }
    static Frac of_poly(Poly<K> p) { return Frac(std::move(p)); }
    static Frac monomial_quotient(const VarTablePtr& t, const Monomial& num,
                                  const Monomial& den, const K& one) {
        return Frac(Poly<K>::monomial(t, num, one), Poly<K>::monomial(t, den, one));
    }
    // Laurent exponent vector -> monomial/monomial.
    static Frac of_expvec(const VarTablePtr& t, const ExpVec& e, const K& one) {
        Monomial n(static_cast<int>(e.size())), d(static_cast<int>(e.size()));
        for (size_t i = 0; i < e.size(); ++i)
            (e[i] >= 0 ? n.exp(static_cast<int>(i)) : d.exp(static_cast<int>(i))) = std::abs(e[i]);
        return monomial_quotient(t, n, d, one);
    }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }
    const VarTablePtr& table() const { return num_.table(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }

    // Lies in the localization of the polynomial ring at the origin. After
    // reduce() the only obstruction is a denominator that still carries a
    // monomial factor or a non-unit polynomial factor.
    bool in_local_ring() const {
        if (num_.is_zero()) return true;
        if (den_.is_one()) return true;
        return den_.monomial_content().is_one() && den_.is_local_unit();
    }

    // The polynomial value; only valid when den == 1.
    const Poly<K>& as_poly() const {
        if (!den_.is_one()) throw Error("fraction is not a polynomial: " + to_string());
        return num_;
    }

    Frac operator+(const Frac& o) const {
        return Frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Frac operator-(const Frac& o) const {
        return Frac(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Frac operator-() const {
        Frac r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Frac operator*(const Frac& o) const { return Frac(num_ * o.num_, den_ * o.den_); }
    Frac operator/(const Frac& o) const {
        if (o.is_zero()) throw DivisionByZero{};
        return Frac(num_ * o.den_, den_ * o.num_);
    }
    Frac& operator+=(const Frac& o) { return *this = *this + o; }
    Frac& operator-=(const Frac& o) { return *this = *this - o; }
    Frac& operator*=(const Frac& o) { return *this = *this * o; }

    Frac times_poly(const Poly<K>& p) const { return Frac(num_ * p, den_); }
    Frac times_monomial(const Monomial& mu) const { return Frac(num_.times_monomial(mu), den_); }
    Frac over_monomial(const Monomial& mu) const {
        return Frac(num_, den_.times_monomial(mu));
    }

    bool operator==(const Frac& o) const { return num_ * o.den_ == o.num_ * den_; }
    bool operator!=(const Frac& o) const { return !(*this == o); }

    // Per-variable minimum Laurent exponent over the terms (num content minus
    // den content). Zero fractions have no content; callers skip them.
    ExpVec laurent_content() const {
        ExpVec n = expvec_of(num_.monomial_content());
        ExpVec d = expvec_of(den_.monomial_content());
        return expvec_sub(n, d);
    }

    std::string to_string(bool compact = true) const {
        if (den_.is_one()) return num_.to_string(compact);
        std::string ds = den_.is_monomial() && den_.lead().second.is_one()
                             ? den_.lead().first.to_string(*table())
                             : "(" + den_.to_string(compact) + ")";
        return "(" + num_.to_string(compact) + ")/" + ds;
    }

private:
    Poly<K> num_;
    Poly<K> den_;

    K unit_scalar() const {
        // derive a 1 of the right field from any coefficient; zero polys over
        // Fp may not know the modulus, which is fine: 1 over Q, and prime
        // moduli join lazily on first arithmetic contact.
        if (!num_.is_zero()) return num_.lead().second.similar(1);
        return K{}.similar(1);
    }

    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly<K>::constant(num_.table(), unit_scalar());
            return;
        }
        // cancel common monomial content
        Monomial g = num_.monomial_content().gcd(den_.monomial_content());
        if (!g.is_one()) {
            num_ = num_.divide_by_monomial(g);
            den_ = den_.divide_by_monomial(g);
        }
        // cancel a full polynomial divisor when there is one
        if (!den_.is_one()) {
            if (auto q = divide_exact(num_, den_)) {
                num_ = *q;
                den_ = Poly<K>::constant(num_.table(), unit_scalar());
            }
        }
        // normalize: leading coefficient of the denominator is 1
        K lc = den_.lead().second;
        if (!lc.is_one()) {
            K inv = lc.similar(1) / lc;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
};

} // namespace echelon
