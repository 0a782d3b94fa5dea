#pragma once

// Word-level reference arithmetic for superpolynomials.  A term is a list of
// generator indices kept in arbitrary order; normalisation bubble-sorts it and
// counts transpositions of odd generators.  Shares nothing with the kernel's
// exponent-vector representation apart from the final conversion.

#include "superkahler/algebra.hpp"

#include <map>
#include <vector>

namespace superkahler::words {

using Word = std::vector<std::size_t>;

struct WordPoly {
    VarsPtr vars;
    std::map<Word, Rational> terms;  // keys are sorted words

    void add(Word w, Rational c) {
        const auto [sorted, sign] = normalise(*vars, std::move(w));
        if (sign == 0) return;
        auto& slot = terms[sorted];
        slot += c * sign;
        if (slot == 0) terms.erase(sorted);
    }

    // Sign is 0 when an odd generator repeats.
    static std::pair<Word, int> normalise(const VariableList& vars, Word w) {
        int sign = 1;
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
                if (w[j] > w[j + 1]) {
                    if (vars.isOdd(w[j]) && vars.isOdd(w[j + 1])) sign = -sign;
                    std::swap(w[j], w[j + 1]);
                }
        for (std::size_t j = 0; j + 1 < w.size(); ++j)
            if (w[j] == w[j + 1] && vars.isOdd(w[j])) return {w, 0};
        return {w, sign};
    }
};

inline WordPoly fromKernel(const SuperPolynomial& p) {
    WordPoly r{p.vars(), {}};
    for (const auto& [m, c] : p.terms()) {
        Word w;
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            for (unsigned k = 0; k < m.exps[i]; ++k) w.push_back(i);
        r.add(w, c);
    }
    return r;
}

inline SuperPolynomial toKernel(const WordPoly& p) {
    SuperPolynomial r(p.vars);
    for (const auto& [w, c] : p.terms) {
        Monomial m{std::vector<std::uint16_t>(p.vars->size(), 0)};
        for (auto g : w) ++m.exps[g];
        r.addTerm(m, c);
    }
    return r;
}

inline WordPoly multiply(const WordPoly& a, const WordPoly& b) {
    WordPoly r{a.vars, {}};
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add(w, ca * cb);
        }
    return r;
}

// Derivation of parity p(v) applied letter by letter: a left derivative
// passes every letter before the hit, a right one every letter after it.
inline WordPoly derivative(const WordPoly& p, std::size_t v, bool left) {
    WordPoly r{p.vars, {}};
    const bool vOdd = p.vars->isOdd(v);
    for (const auto& [w, c] : p.terms)
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] != v) continue;
            int passed = 0;
            if (vOdd) {
                if (left)
                    for (std::size_t j = 0; j < i; ++j) passed += p.vars->isOdd(w[j]);
                else
                    for (std::size_t j = i + 1; j < w.size(); ++j) passed += p.vars->isOdd(w[j]);
            }
            Word rest = w;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            r.add(rest, (passed & 1) ? Rational(-c) : c);
        }
    return r;
}

inline SuperPolynomial multiplyRef(const SuperPolynomial& a, const SuperPolynomial& b) {
    return toKernel(multiply(fromKernel(a), fromKernel(b)));
}
inline SuperPolynomial leftDerivativeRef(const SuperPolynomial& p, std::size_t v) {
    return toKernel(derivative(fromKernel(p), v, true));
}
inline SuperPolynomial rightDerivativeRef(const SuperPolynomial& p, std::size_t v) {
    return toKernel(derivative(fromKernel(p), v, false));
}

}  // namespace superkahler::words
