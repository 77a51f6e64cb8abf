#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "echelon/errors.hpp"

namespace echelon {

// Which exact field a computation runs over. Chosen at run time from input.
struct FieldSpec {
    enum class Kind { Rationals, Prime };
    Kind kind = Kind::Rationals;
    std::int64_t p = 0; // prime modulus when kind == Prime

    static FieldSpec rationals() { return {Kind::Rationals, 0}; }
    static FieldSpec prime(std::int64_t p_) { return {Kind::Prime, p_}; }

    bool operator==(const FieldSpec&) const = default;

    std::string to_string() const {
        return kind == Kind::Rationals ? "Q" : "Fp " + std::to_string(p);
    }
};

// Arbitrary-precision rational. boost keeps values in lowest terms with
// positive denominator, which is exactly the canonical form we need.
class Rat {
public:
    using Backend = boost::multiprecision::cpp_rational;

    Rat() = default;
    Rat(long n) : v_(n) {} // NOLINT: implicit by design, mirrors int literals
    explicit Rat(Backend v) : v_(std::move(v)) {}

    static Rat fraction(long num, long den) {
        if (den == 0) throw DivisionByZero{};
        return Rat(Backend(num) / Backend(den));
    }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }

    Rat operator+(const Rat& o) const { return Rat(v_ + o.v_); }
    Rat operator-(const Rat& o) const { return Rat(v_ - o.v_); }
    Rat operator-() const { return Rat(-v_); }
    Rat operator*(const Rat& o) const { return Rat(v_ * o.v_); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw DivisionByZero{};
        return Rat(v_ / o.v_);
    }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    Rat inv() const {
        if (is_zero()) throw DivisionByZero{};
        return Rat(1 / v_);
    }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }

    // Fresh element of the same field with the given small value. Rationals
    // carry no context, prime-field elements carry their modulus; generic
    // code uses this instead of a bare constructor.
    Rat similar(long n) const { return Rat(n); }

    static FieldSpec spec_of(const Rat&) { return FieldSpec::rationals(); }

    std::string to_string() const { return v_.str(); }

private:
    Backend v_;
};

// Prime field element; each value carries its modulus so mixed-field bugs
// fail loudly instead of silently wrapping.
class Fp {
public:
    Fp() = default;
    Fp(std::int64_t value, std::int64_t p) : p_(p) { v_ = norm(value, p); }

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator+(const Fp& o) const { return Fp(v_ + o.v_, join(o)); }
    Fp operator-(const Fp& o) const { return Fp(v_ - o.v_, join(o)); }
    Fp operator-() const { return Fp(-v_, p_); }
    Fp operator*(const Fp& o) const {
        std::int64_t p = join(o);
        if (p == 0) return Fp(v_ * o.v_, 0);
        return Fp(static_cast<std::int64_t>((__int128)v_ * o.v_ % p), p);
    }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    Fp inv() const {
        if (v_ == 0) throw DivisionByZero{};
        if (p_ == 0) {
            if (v_ == 1 || v_ == -1) return *this;
            throw Error("prime field inverse without modulus");
        }
        // extended Euclid
        std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return Fp(x0, p_);
    }

    bool operator==(const Fp& o) const {
        if (p_ != 0 && o.p_ != 0 && p_ != o.p_) return false;
        if (p_ == o.p_) return v_ == o.v_;
        std::int64_t p = p_ == 0 ? o.p_ : p_;
        return norm(v_, p) == norm(o.v_, p);
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp similar(long n) const { return Fp(n, p_); }

    static FieldSpec spec_of(const Fp& x) { return FieldSpec::prime(x.modulus()); }

    std::string to_string() const { return std::to_string(v_); }

private:
    std::int64_t v_ = 0;
    std::int64_t p_ = 0; // 0 = modulus not yet known (only legal for the value 0)

    // p == 0 marks a "context-free" integer literal (0, ±1, small constants
    // created before any field element is in scope); it adopts a modulus on
    // first arithmetic contact via join().
    static std::int64_t norm(std::int64_t v, std::int64_t p) {
        if (p == 0) return v;
        v %= p;
        return v < 0 ? v + p : v;
    }
    // Default-constructed zeros adopt the other operand's modulus.
    std::int64_t join(const Fp& o) const {
        if (p_ == 0) return o.p_;
        if (o.p_ == 0) return p_;
        if (p_ != o.p_) throw Error("mixed prime moduli");
        return p_;
    }
};

} // namespace echelon
