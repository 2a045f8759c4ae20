#pragma once

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace nilcone {

// Exact rationals. GMP keeps them reduced with positive denominator
// as long as we canonicalize after raw string input.
using Rat = mpq_class;

inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    for (char ch : s) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/'))
            throw ParseError("bad character in rational literal '" + s + "'");
    }
    try {
        Rat q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("unparsable rational literal '" + s + "'");
    }
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline int sgn(const Rat& q) { return ::sgn(q); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

} // namespace nilcone
