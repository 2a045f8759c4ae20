#pragma once

#include <map>
#include <string>
#include <vector>

#include "couplings.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace nilcone {

// ---------- truncated bivariate power series with log grading ----------
// Terms x^n y^m lx^k ly^l with n + m <= D; lx, ly are the formal logarithm
// symbols with theta_x lx = 1, theta_y ly = 1.

struct SKey {
    int n, m, k, l;
    bool operator<(const SKey& o) const {
        return std::tie(n, m, k, l) < std::tie(o.n, o.m, o.k, o.l);
    }
    bool operator==(const SKey& o) const {
        return n == o.n && m == o.m && k == o.k && l == o.l;
    }
};

struct PSeries {
    int D = 0;
    std::map<SKey, Rat> t;

    explicit PSeries(int d = 0) : D(d) {}

    void add(const SKey& key, const Rat& v) {
        if (v == 0 || key.n + key.m > D) return;
        Rat& slot = t[key];
        slot += v;
        if (slot == 0) t.erase(key);
    }
    bool is_zero() const { return t.empty(); }
    Rat coeff(int n, int m, int k = 0, int l = 0) const {
        auto it = t.find({n, m, k, l});
        return it == t.end() ? Rat(0) : it->second;
    }
    bool zero_through(int degree) const {
        for (auto& [key, v] : t)
            if (key.n + key.m <= degree) return false;
        return true;
    }

    PSeries operator+(const PSeries& o) const {
        PSeries r(std::min(D, o.D));
        for (auto& [key, v] : t) r.add(key, v);
        for (auto& [key, v] : o.t) r.add(key, v);
        return r;
    }
    PSeries operator*(const Rat& s) const {
        PSeries r(D);
        for (auto& [key, v] : t) r.add(key, v * s);
        return r;
    }

    PSeries theta_x() const {
        PSeries r(D);
        for (auto& [key, v] : t) {
            if (key.n) r.add(key, v * Rat(key.n));
            if (key.k) r.add({key.n, key.m, key.k - 1, key.l}, v * Rat(key.k));
        }
        return r;
    }
    PSeries theta_y() const {
        PSeries r(D);
        for (auto& [key, v] : t) {
            if (key.m) r.add(key, v * Rat(key.m));
            if (key.l) r.add({key.n, key.m, key.k, key.l - 1}, v * Rat(key.l));
        }
        return r;
    }
    // multiply by the polynomial p(x, y); truncation shrinks accordingly
    PSeries mul_poly(const Poly2& p) const {
        int pd = std::max(p.total_deg(), 0);
        if (D - pd < 0) throw TruncationTooSmall("series truncation below coefficient degree");
        PSeries r(D - pd);
        for (auto& [key, v] : t)
            for (auto& [e, c] : p.t)
                r.add({key.n + e.first, key.m + e.second, key.k, key.l}, v * c);
        return r;
    }
};

// ---------- theta-differential operators ----------
// Finite sum of terms c_{ab}(x, y) theta_x^a theta_y^b; the theta powers act
// first, then the polynomial coefficient multiplies.

struct ThetaOperator {
    std::map<std::pair<int, int>, Poly2> terms;  // (a, b) -> coefficient

    int max_order() const {
        int d = 0;
        for (auto& [ab, c] : terms) d = std::max(d, ab.first + ab.second);
        return d;
    }
    int max_coeff_degree() const {
        int d = 0;
        for (auto& [ab, c] : terms) d = std::max(d, c.total_deg());
        return d;
    }
    // left-multiply every coefficient by a polynomial
    ThetaOperator scaled(const Poly2& p) const {
        ThetaOperator r;
        for (auto& [ab, c] : terms) {
            Poly2 pc = p * c;
            if (!pc.is_zero()) r.terms[ab] = pc;
        }
        return r;
    }
    // compose with a single theta on the left: theta_x . (c(x,y) theta^e) =
    // (theta_x c) theta^e + c theta_x theta^e  (Leibniz; theta_x c means the
    // polynomial x dc/dx)
    ThetaOperator left_theta(bool in_x) const {
        ThetaOperator r;
        auto acc = [&](std::pair<int, int> ab, const Poly2& c) {
            if (c.is_zero()) return;
            Poly2& slot = r.terms[ab];
            slot = slot + c;
            if (slot.is_zero()) r.terms.erase(ab);
        };
        for (auto& [ab, c] : terms) {
            acc(ab, in_x ? c.theta_x() : c.theta_y());
            acc({ab.first + (in_x ? 1 : 0), ab.second + (in_x ? 0 : 1)}, c);
        }
        return r;
    }
    ThetaOperator operator+(const ThetaOperator& o) const {
        ThetaOperator r = *this;
        for (auto& [ab, c] : o.terms) {
            Poly2& slot = r.terms[ab];
            slot = slot + c;
            if (slot.is_zero()) r.terms.erase(ab);
        }
        return r;
    }
};

inline PSeries apply_theta(const ThetaOperator& op, const PSeries& s) {
    int pd = op.max_coeff_degree();
    if (s.D - pd < 0) throw TruncationTooSmall("series truncation below operator degree");
    PSeries out(s.D - pd);
    for (auto& [ab, c] : op.terms) {
        PSeries cur = s;
        for (int i = 0; i < ab.first; ++i) cur = cur.theta_x();
        for (int i = 0; i < ab.second; ++i) cur = cur.theta_y();
        out = out + cur.mul_poly(c);
    }
    return out;
}

// Holomorphic Frobenius solution: coefficient (n, m) is
// (2n+2m)! ((n+m)!)^2 / (n!^4 m!^4).
inline PSeries w0_series(int D) {
    if (D < 0) throw DimensionMismatch("w0_series: negative truncation");
    PSeries s(D);
    std::vector<mpz_class> fact(2 * D + 1);
    fact[0] = 1;
    for (int i = 1; i <= 2 * D; ++i) fact[i] = fact[i - 1] * i;
    for (int n = 0; n <= D; ++n)
        for (int m = 0; n + m <= D; ++m) {
            mpz_class num = fact[2 * (n + m)] * fact[n + m] * fact[n + m];
            mpz_class den = fact[n] * fact[n] * fact[n] * fact[n];
            den *= fact[m] * fact[m] * fact[m] * fact[m];
            s.add({n, m, 0, 0}, Rat(num) / Rat(den));
        }
    return s;
}

// Parse a dataset "operators" object: keys "a,b" (theta_x^a theta_y^b),
// values polynomial strings.
inline ThetaOperator parse_theta_operator(
    const std::map<std::string, std::string>& spec) {
    ThetaOperator op;
    for (auto& [key, poly] : spec) {
        size_t comma = key.find(',');
        if (comma == std::string::npos) throw ParseError("operator key '" + key + "'");
        int a = std::stoi(key.substr(0, comma));
        int b = std::stoi(key.substr(comma + 1));
        Poly2 c = parse_poly2(poly);
        if (!c.is_zero()) op.terms[{a, b}] = c;
    }
    return op;
}

// ---------- flop invariance over the fraction field Q(q') ----------

inline std::string poly1_str(const Poly1& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = 0; k <= p.deg(); ++k) {
        if (p.coeff(k) == 0) continue;
        if (!out.empty()) out += " + ";
        out += rat_str(p.coeff(k));
        if (k > 0) out += "*q^" + std::to_string(k);
    }
    return out;
}

// Exact identity in q':
//   C' + sum_d n0(d) d^3 q'^d/(1-q'^d)
//     = C^f + jac^3 * sum_d n0(d) d^3 q^d/(1-q^d) |_{q = 1/q'}
inline bool flop_invariance_check(const Rat& c_prime, const Rat& c_flop,
                                  const std::map<int, Rat>& n0, const Rat& jac) {
    auto geom = [](int d) {  // q'^d / (1 - q'^d)
        return RatFun1(Poly1::monomial(Rat(1), d),
                       Poly1(Rat(1)) - Poly1::monomial(Rat(1), d));
    };
    auto geom_inv = [](int d) {  // q^d/(1-q^d) at q = 1/q', i.e. 1/(q'^d - 1)
        return RatFun1(Poly1(Rat(1)), Poly1::monomial(Rat(1), d) - Poly1(Rat(1)));
    };
    RatFun1 lhs{c_prime}, rhs{c_flop};
    for (auto& [d, cnt] : n0) {
        Rat w = cnt * Rat(d) * Rat(d) * Rat(d);
        lhs = lhs + geom(d) * RatFun1(w);
        rhs = rhs + geom_inv(d) * RatFun1(w * jac * jac * jac);
    }
    RatFun1 residual = lhs - rhs;
    if (!residual.is_zero())
        throw IdentityFails("flop invariance residual (" + poly1_str(residual.num) +
                            ") / (" + poly1_str(residual.den) + ")");
    return true;
}

// ---------- prepotential shift as a quadratic period-symbol form ----------

// Quadratic form in formal period symbols over the frame
// (a_0, ..., a_r, b_r, ..., b_0); stored as the symmetric matrix S with
// form = Pi^t S Pi.
struct PeriodSymbolForm {
    int r = 0;
    RMat s;

    bool pure_a() const {
        int dim = 2 * (r + 1);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if ((i > r || j > r) && s(i, j) != 0) return false;
        return true;
    }
    bool is_zero() const { return s.is_zero(); }
    // coefficient of a_i a_j in the expanded form (i <= j <= r)
    Rat a_coeff(int i, int j) const { return i == j ? s(i, i) : s(i, j) + s(j, i); }
    std::string str() const {
        std::string out;
        for (int i = 0; i <= r; ++i)
            for (int j = i; j <= r; ++j) {
                Rat c = a_coeff(i, j);
                if (c == 0) continue;
                if (!out.empty()) out += " + ";
                out += "(" + rat_str(c) + ")*a" + std::to_string(i);
                out += i == j ? "^2" : "*a" + std::to_string(j);
            }
        return out.empty() ? "0" : out;
    }
};

// F = (1/2) sum a_i b_i as Pi^t Q_F Pi over the frame above: Q_F has 1/4 on
// the antidiagonal. `connection` must already act on the homology frame
// (the inverse transpose of a cohomology connection).
inline PeriodSymbolForm prepotential_shift(const RMat& connection, int r) {
    int dim = 2 * (r + 1);
    if (connection.r != dim || connection.c != dim)
        throw DimensionMismatch("prepotential_shift: connection is not " + std::to_string(dim) +
                                "-dimensional");
    RMat qf(dim, dim);
    for (int i = 0; i < dim; ++i) qf(i, dim - 1 - i) = Rat(1, 4);
    RMat shift = connection.transpose() * qf * connection - qf;
    PeriodSymbolForm form;
    form.r = r;
    form.s = shift;
    if (!form.pure_a())
        throw NotAQuadraticShiftInA("prepotential shift involves B-period symbols");
    return form;
}

} // namespace nilcone
