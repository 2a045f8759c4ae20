#pragma once

#include <map>
#include <string>
#include <vector>

#include "rational.hpp"

namespace nilcone {

// ---------- univariate polynomials over Rat ----------

struct Poly1 {
    std::vector<Rat> c;  // coefficient of q^k at index k

    Poly1() = default;
    Poly1(const Rat& v) { if (v != 0) c = {v}; }
    static Poly1 monomial(const Rat& v, int deg) {
        Poly1 p;
        if (v != 0) { p.c.assign(deg + 1, Rat(0)); p.c[deg] = v; }
        return p;
    }
    void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Rat coeff(int k) const { return k >= 0 && k < static_cast<int>(c.size()) ? c[k] : Rat(0); }

    Poly1 operator+(const Poly1& o) const {
        Poly1 r;
        r.c.assign(std::max(c.size(), o.c.size()), Rat(0));
        for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        r.trim();
        return r;
    }
    Poly1 operator-(const Poly1& o) const { return *this + o * Rat(-1); }
    Poly1 operator*(const Poly1& o) const {
        if (is_zero() || o.is_zero()) return {};
        Poly1 r;
        r.c.assign(c.size() + o.c.size() - 1, Rat(0));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        r.trim();
        return r;
    }
    Poly1 operator*(const Rat& s) const {
        Poly1 r = *this;
        for (Rat& v : r.c) v *= s;
        r.trim();
        return r;
    }
    bool operator==(const Poly1& o) const { return c == o.c; }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }
};

// division with remainder
inline std::pair<Poly1, Poly1> divmod(Poly1 a, const Poly1& b) {
    if (b.is_zero()) throw Singular("polynomial division by zero");
    Poly1 q;
    q.c.assign(a.c.size(), Rat(0));
    while (!a.is_zero() && a.deg() >= b.deg()) {
        int d = a.deg() - b.deg();
        Rat f = a.c.back() / b.c.back();
        q.c[d] = f;
        for (int i = 0; i <= b.deg(); ++i) a.c[i + d] -= f * b.c[i];
        a.trim();
    }
    q.trim();
    return {q, a};
}

inline Poly1 gcd(Poly1 a, Poly1 b) {
    while (!b.is_zero()) {
        Poly1 r = divmod(a, b).second;
        a = b;
        b = r;
    }
    if (!a.is_zero()) a = a * (Rat(1) / a.c.back());  // monic
    return a;
}

// multiplicity of the root x0
inline int root_multiplicity(Poly1 p, const Rat& x0) {
    Poly1 lin;
    lin.c = {-x0, Rat(1)};
    int m = 0;
    while (!p.is_zero()) {
        auto [q, r] = divmod(p, lin);
        if (!r.is_zero()) break;
        ++m;
        p = q;
    }
    return m;
}

// ---------- rational functions in one variable ----------

struct RatFun1 {
    Poly1 num, den;  // den monic, gcd(num, den) = 1

    RatFun1() : den(Rat(1)) {}
    RatFun1(const Rat& v) : num(v), den(Rat(1)) {}
    RatFun1(Poly1 n, Poly1 d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    void reduce() {
        if (den.is_zero()) throw Singular("rational function with zero denominator");
        if (num.is_zero()) { den = Poly1(Rat(1)); return; }
        Poly1 g = gcd(num, den);
        num = divmod(num, g).first;
        den = divmod(den, g).first;
        Rat lead = den.c.back();
        num = num * (Rat(1) / lead);
        den = den * (Rat(1) / lead);
    }
    bool is_zero() const { return num.is_zero(); }
    RatFun1 operator+(const RatFun1& o) const { return {num * o.den + o.num * den, den * o.den}; }
    RatFun1 operator-(const RatFun1& o) const { return {num * o.den - o.num * den, den * o.den}; }
    RatFun1 operator*(const RatFun1& o) const { return {num * o.num, den * o.den}; }
    RatFun1 operator/(const RatFun1& o) const {
        if (o.is_zero()) throw Singular("rational function division by zero");
        return {num * o.den, den * o.num};
    }
    bool operator==(const RatFun1& o) const { return num == o.num && den == o.den; }
};

// ---------- bivariate polynomials over Rat ----------

struct Poly2 {
    // exponent pair (in x, in y) -> coefficient; zero coefficients absent
    std::map<std::pair<int, int>, Rat> t;

    Poly2() = default;
    Poly2(const Rat& v) { if (v != 0) t[{0, 0}] = v; }
    Poly2(int v) : Poly2(Rat(v)) {}
    static Poly2 monomial(const Rat& v, int dx, int dy) {
        Poly2 p;
        if (v != 0) p.t[{dx, dy}] = v;
        return p;
    }
    bool is_zero() const { return t.empty(); }
    bool operator==(const Poly2& o) const { return t == o.t; }
    int total_deg() const {
        int d = -1;
        for (auto& [e, c] : t) d = std::max(d, e.first + e.second);
        return d;
    }

    Poly2 operator+(const Poly2& o) const {
        Poly2 r = *this;
        for (auto& [e, c] : o.t) {
            Rat& v = r.t[e];
            v += c;
            if (v == 0) r.t.erase(e);
        }
        return r;
    }
    Poly2 operator-(const Poly2& o) const { return *this + o * Rat(-1); }
    Poly2 operator*(const Poly2& o) const {
        Poly2 r;
        for (auto& [e1, c1] : t)
            for (auto& [e2, c2] : o.t) {
                std::pair<int, int> e{e1.first + e2.first, e1.second + e2.second};
                Rat& v = r.t[e];
                v += c1 * c2;
                if (v == 0) r.t.erase(e);
            }
        return r;
    }
    Poly2 operator*(const Rat& s) const {
        if (s == 0) return {};
        Poly2 r = *this;
        for (auto& [e, c] : r.t) c *= s;
        return r;
    }
    Poly2 operator-() const { return *this * Rat(-1); }

    Poly2 theta_x() const {  // x d/dx
        Poly2 r;
        for (auto& [e, c] : t)
            if (e.first) r.t[e] = c * Rat(e.first);
        return r;
    }
    Poly2 theta_y() const {
        Poly2 r;
        for (auto& [e, c] : t)
            if (e.second) r.t[e] = c * Rat(e.second);
        return r;
    }

    Rat eval(const Rat& x, const Rat& y) const {
        Rat acc(0);
        for (auto& [e, c] : t) {
            Rat term = c;
            for (int i = 0; i < e.first; ++i) term *= x;
            for (int i = 0; i < e.second; ++i) term *= y;
            acc += term;
        }
        return acc;
    }

    // substitute a rational value for one variable, producing a univariate
    // polynomial in the other
    Poly1 substitute_y(const Rat& y) const {
        Poly1 out;
        for (auto& [e, c] : t) {
            Rat v = c;
            for (int i = 0; i < e.second; ++i) v *= y;
            if (static_cast<int>(out.c.size()) <= e.first) out.c.resize(e.first + 1, Rat(0));
            out.c[e.first] += v;
        }
        out.trim();
        return out;
    }
    Poly1 substitute_x(const Rat& x) const {
        Poly1 out;
        for (auto& [e, c] : t) {
            Rat v = c;
            for (int i = 0; i < e.first; ++i) v *= x;
            if (static_cast<int>(out.c.size()) <= e.second) out.c.resize(e.second + 1, Rat(0));
            out.c[e.second] += v;
        }
        out.trim();
        return out;
    }
};

// Exact multivariate division; returns true and sets quotient when divisor
// divides exactly (graded-lex elimination on leading terms).
inline bool divides_exactly(const Poly2& divisor, Poly2 dividend, Poly2* quotient = nullptr) {
    if (divisor.is_zero()) return false;
    auto lead = [](const Poly2& p) {
        auto best = p.t.begin();
        for (auto it = p.t.begin(); it != p.t.end(); ++it) {
            int db = best->first.first + best->first.second, di = it->first.first + it->first.second;
            if (di > db || (di == db && it->first > best->first)) best = it;
        }
        return best;
    };
    auto dl = lead(divisor);
    Poly2 q;
    while (!dividend.is_zero()) {
        auto tl = lead(dividend);
        int ex = tl->first.first - dl->first.first, ey = tl->first.second - dl->first.second;
        if (ex < 0 || ey < 0) return false;
        Poly2 m = Poly2::monomial(tl->second / dl->second, ex, ey);
        q = q + m;
        dividend = dividend - divisor * m;
    }
    if (quotient) *quotient = q;
    return true;
}

// ---------- tiny expression parser for polynomial strings ----------
// Grammar: sum of terms; term = signed product of factors; factor = integer,
// rational "p/q", variable name, or factor^int. Used for dataset operator
// coefficients like "-22*x - 18*y" and test fixtures.
struct PolyParser {
    std::string s;
    size_t pos = 0;

    explicit PolyParser(std::string src) : s(std::move(src)) {}
    void ws() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }
    bool peek(char c) { ws(); return pos < s.size() && s[pos] == c; }
    bool eat(char c) { if (peek(c)) { ++pos; return true; } return false; }

    Poly2 parse() {
        Poly2 r = parse_sum();
        ws();
        if (pos != s.size()) throw ParseError("trailing input in polynomial '" + s + "'");
        return r;
    }
    Poly2 parse_sum() {
        Poly2 acc = parse_term();
        while (true) {
            if (eat('+')) acc = acc + parse_term();
            else if (eat('-')) acc = acc - parse_term();
            else return acc;
        }
    }
    Poly2 parse_term() {
        int sign = 1;
        while (true) {
            if (eat('-')) sign = -sign;
            else if (eat('+')) continue;
            else break;
        }
        Poly2 acc = parse_factor();
        while (true) {
            if (eat('*')) acc = acc * parse_factor();
            else if (peek('x') || peek('y') || peek('(')) acc = acc * parse_factor();
            else break;
        }
        return sign < 0 ? -acc : acc;
    }
    Poly2 parse_factor() {
        ws();
        Poly2 base;
        if (eat('(')) {
            base = parse_sum();
            if (!eat(')')) throw ParseError("unbalanced parenthesis in '" + s + "'");
        } else if (pos < s.size() && (s[pos] == 'x' || s[pos] == 'y')) {
            base = Poly2::monomial(Rat(1), s[pos] == 'x' ? 1 : 0, s[pos] == 'y' ? 1 : 0);
            ++pos;
        } else {
            size_t start = pos;
            if (pos < s.size() && s[pos] == '-') ++pos;
            while (pos < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
                ++pos;
            if (pos == start) throw ParseError("expected factor in polynomial '" + s + "'");
            base = Poly2(parse_rat(s.substr(start, pos - start)));
        }
        if (eat('^')) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) throw ParseError("bad exponent in polynomial '" + s + "'");
            int e = std::stoi(s.substr(start, pos - start));
            Poly2 acc(Rat(1));
            for (int i = 0; i < e; ++i) acc = acc * base;
            base = acc;
        }
        return base;
    }
};

inline Poly2 parse_poly2(const std::string& src) { return PolyParser(src).parse(); }

} // namespace nilcone
