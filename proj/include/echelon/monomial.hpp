#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "echelon/errors.hpp"

namespace echelon {

// Ordered variable list, partitioned into divisor pairs (x_k, y_k) and free
// variables. The declaration order fixes the lexicographic term order and the
// serialization of every polynomial in the run.
class VarTable {
public:
    enum class Role { XPart, YPart, Free };

    struct Var {
        std::string name;
        Role role = Role::Free;
        int partner = -1; // index of the paired variable, -1 for free
    };

    VarTable() = default;

    int add_free(const std::string& name) {
        check_new(name);
        vars_.push_back({name, Role::Free, -1});
        return static_cast<int>(vars_.size()) - 1;
    }

    // Declares the pair (x, y); x is the "off-divisor" part, y the divisor part.
    std::pair<int, int> add_pair(const std::string& xname, const std::string& yname) {
        check_new(xname);
        check_new(yname);
        int xi = static_cast<int>(vars_.size());
        vars_.push_back({xname, Role::XPart, xi + 1});
        vars_.push_back({yname, Role::YPart, xi});
        return {xi, xi + 1};
    }

    int size() const { return static_cast<int>(vars_.size()); }
    const Var& var(int i) const { return vars_.at(i); }
    const std::string& name(int i) const { return vars_.at(i).name; }
    bool is_divisor_var(int i) const { return vars_.at(i).role != Role::Free; }

    int find(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (vars_[i].name == name) return i;
        return -1;
    }

    bool operator==(const VarTable& o) const {
        if (vars_.size() != o.vars_.size()) return false;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name != o.vars_[i].name || vars_[i].role != o.vars_[i].role ||
                vars_[i].partner != o.vars_[i].partner)
                return false;
        return true;
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < size(); ++i) {
            if (vars_[i].role == Role::YPart) continue; // emitted with its x-part
            if (!s.empty()) s += ' ';
            if (vars_[i].role == Role::XPart)
                s += vars_[i].name + "/" + vars_[vars_[i].partner].name;
            else
                s += vars_[i].name;
        }
        return s;
    }

private:
    std::vector<Var> vars_;

    void check_new(const std::string& name) {
        if (name.empty()) throw BadParameters("empty variable name");
        if (find(name) >= 0) throw BadParameters("duplicate variable " + name);
    }
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline void ensure_same_table(const VarTablePtr& a, const VarTablePtr& b) {
    if (a == b) return;
    if (!a || !b || !(*a == *b)) throw VarTableMismatch{};
}

// Monomial as a dense exponent vector over the declared variables.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<int> exps) : e_(std::move(exps)) {}

    static Monomial one(int nvars) { return Monomial(nvars); }
    static Monomial var(int nvars, int i, int exp = 1) {
        Monomial m(nvars);
        m.e_.at(i) = exp;
        return m;
    }

    int nvars() const { return static_cast<int>(e_.size()); }
    int exp(int i) const { return e_.at(i); }
    int& exp(int i) { return e_.at(i); }
    const std::vector<int>& exps() const { return e_; }

    bool is_one() const {
        return std::all_of(e_.begin(), e_.end(), [](int x) { return x == 0; });
    }
    int degree() const {
        int d = 0;
        for (int x : e_) d += x;
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (int i = 0; i < nvars(); ++i) r.e_[i] += o.e_[i];
        return r;
    }
    bool divides(const Monomial& o) const {
        for (int i = 0; i < nvars(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }
    // Quotient o.divides(*this) assumed.
    Monomial operator/(const Monomial& o) const {
        Monomial r = *this;
        for (int i = 0; i < nvars(); ++i) {
            r.e_[i] -= o.e_[i];
            if (r.e_[i] < 0) throw BadParameters("monomial quotient with negative exponent");
        }
        return r;
    }

    Monomial gcd(const Monomial& o) const {
        Monomial r = *this;
        for (int i = 0; i < nvars(); ++i) r.e_[i] = std::min(r.e_[i], o.e_[i]);
        return r;
    }
    Monomial lcm(const Monomial& o) const {
        Monomial r = *this;
        for (int i = 0; i < nvars(); ++i) r.e_[i] = std::max(r.e_[i], o.e_[i]);
        return r;
    }
    Monomial pow(int k) const {
        Monomial r = *this;
        for (int i = 0; i < nvars(); ++i) r.e_[i] *= k;
        return r;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }

    // Lexicographic order on the declared variable order.
    bool lex_less(const Monomial& o) const { return e_ < o.e_; }

    bool shares_variable(const Monomial& o) const {
        for (int i = 0; i < nvars(); ++i)
            if (e_[i] > 0 && o.e_[i] > 0) return true;
        return false;
    }

    std::string to_string(const VarTable& t) const {
        std::string s;
        for (int i = 0; i < nvars(); ++i) {
            if (e_[i] == 0) continue;
            if (!s.empty()) s += '*';
            s += t.name(i);
            if (e_[i] != 1) s += "^" + std::to_string(e_[i]);
        }
        return s.empty() ? "1" : s;
    }

private:
    std::vector<int> e_;
};

struct MonomialLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.lex_less(b); }
};

// Laurent exponent vector: the "adapted coordinates" currency. Entry i is the
// exponent of variable i in a monomial multiplier, negative meaning division.
using ExpVec = std::vector<int>;

inline ExpVec expvec_zero(int nvars) { return ExpVec(nvars, 0); }
inline ExpVec expvec_of(const Monomial& m) { return m.exps(); }
inline ExpVec expvec_add(const ExpVec& a, const ExpVec& b) {
    ExpVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}
inline ExpVec expvec_sub(const ExpVec& a, const ExpVec& b) {
    ExpVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}
inline ExpVec expvec_min(const ExpVec& a, const ExpVec& b) {
    ExpVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = std::min(r[i], b[i]);
    return r;
}
inline ExpVec expvec_max(const ExpVec& a, const ExpVec& b) {
    ExpVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = std::max(r[i], b[i]);
    return r;
}
// a >= b componentwise: the lattice mu_a R is contained in mu_b R.
inline bool expvec_geq(const ExpVec& a, const ExpVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

} // namespace echelon
