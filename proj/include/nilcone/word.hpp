#pragma once

#include <map>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "unipotent.hpp"

namespace nilcone {

// Word DSL over named matrices: products of factors separated by '*'.
// Factors: NAME, NAME^k (k any integer), dual(NAME), @identity.
struct WordFactor {
    std::string name;
    long exponent = 1;
    bool dual = false;
    bool identity = false;
};

inline std::vector<WordFactor> parse_word(const std::string& word) {
    std::vector<WordFactor> out;
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < word.size() && std::isspace(static_cast<unsigned char>(word[pos]))) ++pos; };
    bool expect_factor = true;
    while (true) {
        skip_ws();
        if (pos >= word.size()) break;
        if (!expect_factor) {
            if (word[pos] != '*') throw NotComposable("expected '*' in word '" + word + "'");
            ++pos;
            expect_factor = true;
            continue;
        }
        WordFactor f;
        if (word[pos] == '@') {
            size_t start = ++pos;
            while (pos < word.size() && std::isalnum(static_cast<unsigned char>(word[pos]))) ++pos;
            if (word.substr(start, pos - start) != "identity")
                throw NotComposable("unknown builtin in word '" + word + "'");
            f.identity = true;
        } else {
            size_t start = pos;
            while (pos < word.size() &&
                   (std::isalnum(static_cast<unsigned char>(word[pos])) || word[pos] == '_'))
                ++pos;
            if (pos == start) throw NotComposable("expected factor in word '" + word + "'");
            f.name = word.substr(start, pos - start);
            if (f.name == "dual") {
                if (pos >= word.size() || word[pos] != '(')
                    throw NotComposable("dual needs parentheses in '" + word + "'");
                size_t close = word.find(')', ++pos);
                if (close == std::string::npos) throw NotComposable("unbalanced dual() in '" + word + "'");
                f.name = word.substr(pos, close - pos);
                f.dual = true;
                pos = close + 1;
            }
            if (pos < word.size() && word[pos] == '^') {
                size_t estart = ++pos;
                if (pos < word.size() && word[pos] == '-') ++pos;
                while (pos < word.size() && std::isdigit(static_cast<unsigned char>(word[pos]))) ++pos;
                if (pos == estart) throw NotComposable("bad exponent in word '" + word + "'");
                f.exponent = std::stol(word.substr(estart, pos - estart));
            }
        }
        out.push_back(f);
        expect_factor = false;
    }
    if (expect_factor && !out.empty()) throw NotComposable("trailing '*' in word '" + word + "'");
    return out;
}

inline RMat compose_word(const std::string& word, const std::map<std::string, RMat>& names) {
    auto factors = parse_word(word);
    int dim = 0;
    if (!names.empty()) dim = names.begin()->second.r;
    RMat acc;
    bool started = false;
    for (const auto& f : factors) {
        RMat m;
        if (f.identity) {
            if (dim == 0) throw NotComposable("@identity with no named matrices in scope");
            m = RMat::identity(dim);
        } else {
            auto it = names.find(f.name);
            if (it == names.end()) throw UnknownGenerator("'" + f.name + "' in word '" + word + "'");
            m = it->second;
            if (f.dual) m = dual_action(m);
            if (f.exponent != 1) m = mpow(m, f.exponent);
        }
        if (!started) {
            acc = m;
            started = true;
        } else {
            if (acc.c != m.r) throw NotComposable("dimension mismatch in word '" + word + "'");
            acc = acc * m;
        }
    }
    if (!started) {
        if (dim == 0) throw NotComposable("empty word with no named matrices in scope");
        return RMat::identity(dim);
    }
    return acc;
}

} // namespace nilcone
