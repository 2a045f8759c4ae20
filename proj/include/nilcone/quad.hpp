#pragma once

#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "rational.hpp"

namespace nilcone {

// Element a + b*sqrt(d) of a fixed real quadratic field. Values with
// b == 0 are radicand-agnostic (d == 0) so plain rationals mix freely;
// genuinely mixed radicands are an error, not an implicit tower.
struct Quad {
    Rat a{0}, b{0};
    long d = 0;

    Quad() = default;
    Quad(int v) : a(v) {}  // NOLINT: implicit for T(0)/T(1) in templates
    Quad(const Rat& v) : a(v) {}
    Quad(const Rat& ra, const Rat& rb, long rad) : a(ra), b(rb), d(rad) {
        if (b == 0) d = 0;
        if (b != 0 && d <= 0) throw MixedRadicand("radicand must be positive");
    }

    bool is_rational() const { return b == 0; }

    static long join(long d1, long d2) {
        if (d1 == 0) return d2;
        if (d2 == 0) return d1;
        if (d1 != d2) throw MixedRadicand("cannot mix sqrt radicands");
        return d1;
    }

    Quad operator+(const Quad& o) const { return Quad(a + o.a, b + o.b, join(d, o.d)); }
    Quad operator-(const Quad& o) const { return Quad(a - o.a, b - o.b, join(d, o.d)); }
    Quad operator-() const { return Quad(-a, -b, d); }
    Quad operator*(const Quad& o) const {
        long rad = join(d, o.d);
        return Quad(a * o.a + b * o.b * Rat(rad), a * o.b + b * o.a, rad);
    }
    Quad conj() const { return Quad(a, -b, d); }
    Rat norm() const { return a * a - b * b * Rat(d); }
    Quad operator/(const Quad& o) const {
        Rat n = o.norm();
        if (n == 0 && o.a == 0 && o.b == 0) throw Singular("division by zero Quad");
        if (n == 0) throw Singular("division by zero-norm Quad");
        Quad num = (*this) * o.conj();
        return Quad(num.a / n, num.b / n, num.d ? num.d : join(d, o.d));
    }
    bool operator==(const Quad& o) const {
        return a == o.a && b == o.b && (b == 0 || d == o.d);
    }
    bool operator!=(const Quad& o) const { return !(*this == o); }

    int sign() const {
        int sa = ::sgn(a), sb = ::sgn(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // a and b*sqrt(d) disagree: compare magnitudes via squares.
        Rat diff = a * a - b * b * Rat(d);
        int sd = ::sgn(diff);
        return sd == 0 ? 0 : sd * sa;
    }

    bool operator<(const Quad& o) const { return (*this - o).sign() < 0; }

    double to_double() const { return a.get_d() + b.get_d() * std::sqrt(static_cast<double>(d)); }

    std::string str() const {
        auto coeff = [](const Rat& q) { return q.get_str(); };
        if (b == 0) return coeff(a);
        std::string root = "√" + std::to_string(d);
        std::string bs;
        if (b == 1) bs = root;
        else if (b == -1) bs = "-" + root;
        else bs = coeff(b) + root;
        if (a == 0) return bs;
        if (::sgn(b) > 0) return coeff(a) + "+" + bs;
        return coeff(a) + bs;
    }
};

// A 2-d ray direction with QuadNum coordinates.
using QuadRay = std::array<Quad, 2>;

inline std::string ray_str(const QuadRay& r) {
    return "(" + r[0].str() + ", " + r[1].str() + ")";
}

} // namespace nilcone
