#pragma once

#include <string>
#include <vector>

#include "echelon/monomial.hpp"

namespace echelon {

// Per-step local equations of the divisor data: t_i cuts the i-th increment
// of the delta-chain, y_i the increment dD_i of the modification divisor, and
// x_i = t_i / y_i the complementary part D_i^dag. Cumulatively
// delta_i = t_1 ... t_i and D_i = y_1 ... y_i, with delta_0 = D_0 = 1.
class DivisorChain {
public:
    struct Step {
        Monomial t;
        Monomial y;
    };

    DivisorChain(VarTablePtr table, std::vector<Step> steps)
        : table_(std::move(table)), steps_(std::move(steps)) {
        if (steps_.empty()) throw BadParameters("divisor chain must have length >= 1");
    }

    int length() const { return static_cast<int>(steps_.size()); }
    const VarTablePtr& table() const { return table_; }

    // steps are 1-indexed to match the mathematical conventions
    const Monomial& t(int i) const { return steps_.at(i - 1).t; }
    const Monomial& y(int i) const { return steps_.at(i - 1).y; }
    Monomial x(int i) const { return t(i) / y(i); }

    Monomial delta(int i) const { return cumulative(i, /*y_part=*/false, /*x_part=*/false); }
    Monomial D(int i) const { return cumulative(i, true, false); }
    Monomial X(int i) const { return cumulative(i, false, true); } // product of x_1..x_i

    struct Failure {
        enum class Kind { Effectivity, CommonComponent } kind;
        int i;
        std::string detail;
    };

    std::vector<Failure> validate() const {
        std::vector<Failure> fails;
        int n = table_->size();
        Monomial ycum = Monomial::one(n), xcum = Monomial::one(n);
        for (int i = 1; i <= length(); ++i) {
            if (!y(i).divides(t(i))) {
                fails.push_back({Failure::Kind::Effectivity, i,
                                 "y does not divide t at step " + std::to_string(i)});
                continue;
            }
            ycum = ycum * y(i);
            xcum = xcum * x(i);
            if (ycum.shares_variable(xcum))
                fails.push_back({Failure::Kind::CommonComponent, i,
                                 "D_" + std::to_string(i) + " shares a component with its complement"});
        }
        return fails;
    }

    // variables occurring in any step monomial
    std::vector<int> divisor_variables() const {
        std::vector<int> vars;
        for (int v = 0; v < table_->size(); ++v) {
            bool used = false;
            for (auto& s : steps_)
                if (s.t.exp(v) > 0 || s.y.exp(v) > 0) used = true;
            if (used) vars.push_back(v);
        }
        return vars;
    }

    bool operator==(const DivisorChain& o) const {
        if (length() != o.length()) return false;
        for (int i = 1; i <= length(); ++i)
            if (t(i) != o.t(i) || y(i) != o.y(i)) return false;
        return true;
    }

private:
    VarTablePtr table_;
    std::vector<Step> steps_;

    Monomial cumulative(int i, bool y_part, bool x_part) const {
        Monomial m = Monomial::one(table_->size());
        for (int k = 1; k <= i; ++k) m = m * (y_part ? y(k) : (x_part ? x(k) : t(k)));
        return m;
    }
};

} // namespace echelon
