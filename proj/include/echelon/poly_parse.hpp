#pragma once

#include <cctype>
#include <string>

#include "echelon/frac.hpp"

namespace echelon {

// Recursive-descent parser for the polynomial text syntax: sums of terms
// like `1 + 2*x*y - x^2*y^2`, with `*` optional between factors. Fraction
// entries are written `(<poly>)/<monomial>`, denominator omitted when 1.
template <class K>
class PolyParser {
public:
    PolyParser(VarTablePtr table, K one_exemplar)
        : table_(std::move(table)), one_(std::move(one_exemplar)) {}

    Poly<K> parse_poly(const std::string& text, int line = 0) const {
        Cursor c{text, 0, line};
        Poly<K> p = poly(c);
        skip_ws(c);
        if (c.pos != text.size()) fail(c, "trailing input");
        return p;
    }

    Monomial parse_monomial(const std::string& text, int line = 0) const {
        Poly<K> p = parse_poly(text, line);
        if (p.is_zero() || !p.is_monomial() || !p.lead().second.is_one())
            throw ParseError(line, 1, "expected a monomial, got '" + text + "'");
        return p.lead().first;
    }

    // `(<poly>)/<monomial>` or bare `<poly>`.
    Frac<K> parse_entry(const std::string& text, int line = 0) const {
        if (!text.empty() && text[0] == '(') {
            size_t depth = 0;
            for (size_t i = 0; i < text.size(); ++i) {
                if (text[i] == '(') ++depth;
                if (text[i] == ')') {
                    --depth;
                    if (depth == 0) {
                        if (i + 1 < text.size() && text[i + 1] == '/') {
                            Poly<K> num = parse_poly(text.substr(1, i - 1), line);
                            Monomial den = parse_monomial(text.substr(i + 2), line);
                            return Frac<K>(num, Poly<K>::monomial(table_, den, one_));
                        }
                        break; // plain parenthesized polynomial
                    }
                }
            }
        }
        return Frac<K>::of_poly(parse_poly(text, line));
    }

private:
    VarTablePtr table_;
    K one_;

    struct Cursor {
        const std::string& s;
        size_t pos;
        int line;
    };

    [[noreturn]] void fail(const Cursor& c, const std::string& msg) const {
        throw ParseError(c.line, static_cast<int>(c.pos) + 1, msg);
    }

    static void skip_ws(Cursor& c) {
        while (c.pos < c.s.size() && std::isspace(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
    }
    char peek(const Cursor& c) const { return c.pos < c.s.size() ? c.s[c.pos] : '\0'; }

    Poly<K> poly(Cursor& c) const {
        Poly<K> acc(table_);
        skip_ws(c);
        bool neg = false;
        if (peek(c) == '+' || peek(c) == '-') {
            neg = peek(c) == '-';
            ++c.pos;
        }
        while (true) {
            Poly<K> t = term(c);
            acc += neg ? -t : t;
            skip_ws(c);
            if (peek(c) == '+' || peek(c) == '-') {
                neg = peek(c) == '-';
                ++c.pos;
            } else {
                break;
            }
        }
        return acc;
    }

    Poly<K> term(Cursor& c) const {
        Poly<K> acc = factor(c);
        while (true) {
            skip_ws(c);
            char ch = peek(c);
            if (ch == '*') {
                ++c.pos;
                acc *= factor(c);
            } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '(') {
                acc *= factor(c); // juxtaposition
            } else {
                break;
            }
        }
        return acc;
    }

    Poly<K> factor(Cursor& c) const {
        skip_ws(c);
        char ch = peek(c);
        if (ch == '(') {
            ++c.pos;
            Poly<K> p = poly(c);
            skip_ws(c);
            if (peek(c) != ')') fail(c, "expected ')'");
            ++c.pos;
            return power_suffix(c, std::move(p));
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) return number(c);
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            int vi = match_var(c);
            int e = 1;
            skip_ws(c);
            if (peek(c) == '^') {
                ++c.pos;
                e = natural(c);
            } else if (std::isdigit(static_cast<unsigned char>(peek(c)))) {
                fail(c, "exponent must be written with '^'");
            }
            return Poly<K>::monomial(table_, Monomial::var(table_->size(), vi, e), one_);
        }
        fail(c, std::string("unexpected character '") + ch + "'");
    }

    Poly<K> power_suffix(Cursor& c, Poly<K> base) const {
        skip_ws(c);
        if (peek(c) != '^') return base;
        ++c.pos;
        int e = natural(c);
        Poly<K> acc = Poly<K>::constant(table_, one_);
        for (int i = 0; i < e; ++i) acc *= base;
        return acc;
    }

    Poly<K> number(Cursor& c) const {
        long n = natural(c);
        if (peek(c) == '/' && c.pos + 1 < c.s.size() &&
            std::isdigit(static_cast<unsigned char>(c.s[c.pos + 1]))) {
            ++c.pos;
            long d = natural(c);
            if (d == 0) fail(c, "zero denominator in coefficient");
            return Poly<K>::constant(table_, one_.similar(n) / one_.similar(d));
        }
        return Poly<K>::constant(table_, one_.similar(n));
    }

    long natural(Cursor& c) const {
        skip_ws(c);
        if (!std::isdigit(static_cast<unsigned char>(peek(c)))) fail(c, "expected a number");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek(c)))) {
            v = v * 10 + (c.s[c.pos] - '0');
            if (v > 1000000000L) fail(c, "number too large");
            ++c.pos;
        }
        return v;
    }

    // Longest declared variable name starting at the cursor.
    int match_var(Cursor& c) const {
        int best = -1;
        size_t best_len = 0;
        for (int i = 0; i < table_->size(); ++i) {
            const std::string& n = table_->name(i);
            if (n.size() > best_len && c.s.compare(c.pos, n.size(), n) == 0) {
                best = i;
                best_len = n.size();
            }
        }
        if (best < 0) fail(c, "unknown variable");
        c.pos += best_len;
        return best;
    }
};

} // namespace echelon
