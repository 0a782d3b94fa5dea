#pragma once

#include "support/random_poly.hpp"

namespace superkahler::fixtures {

/// Keeps only monomials carrying at least `minOdd` odd variables.
inline SuperPolynomial nilpotentPart(const SuperPolynomial& p, int minOdd = 1) {
    SuperPolynomial r(p.vars());
    for (const auto& [m, c] : p.terms()) {
        int odd = 0;
        for (std::size_t i = 0; i < m.exps.size(); ++i) odd += p.vars()->isOdd(i) ? m.exps[i] : 0;
        if (odd >= minOdd) r.addTerm(m, c);
    }
    return r;
}

/// Constant nondegenerate Gram matrix of a 2-form of the given parity, or
/// nullopt when the chart admits none.
inline std::optional<Matrix> standardFormGram(const Chart& ch, Parity par, PolyGen& gen) {
    const unsigned n = ch.superDim().n, m = ch.superDim().m;
    Matrix g(ch.size(), ch.coordinates());
    if (par == Parity::even) {
        if (n % 2) return std::nullopt;
        for (unsigned i = 0; i + 1 < n; i += 2) {
            const Rational c = gen.coefficient();
            g(i, i + 1) = ch.constant(c);
            g(i + 1, i) = ch.constant(-c);
        }
        for (unsigned j = 0; j < m; ++j) g(n + j, n + j) = ch.constant(gen.coefficient());
    } else {
        if (n != m) return std::nullopt;
        for (unsigned i = 0; i < n; ++i) {
            const Rational c = gen.coefficient();
            g(i, n + i) = ch.constant(c);
            g(n + i, i) = ch.constant(-c);
        }
    }
    return g;
}

/// Random 1-form whose differential keeps the body constant: coefficients
/// are of degree <= 1 or carry two odd variables.
inline DifferentialForm tameOneForm(const Chart& ch, Parity par, PolyGen& gen) {
    SuperPolynomial al(ch.formVars());
    for (std::size_t a = 0; a < ch.size(); ++a) {
        const auto f0 = gen.homogeneous(ch.coordinates(), ch.parity(a) + par, 4, 4);
        SuperPolynomial f(ch.coordinates());
        for (const auto& [mono, c] : f0.terms()) {
            int odd = 0;
            for (std::size_t i = ch.superDim().n; i < ch.size(); ++i) odd += mono.exps[i];
            if (odd >= 2 || mono.degree() <= 1) f.addTerm(mono, c);
        }
        al += f.embedInto(ch.formVars()) * SuperPolynomial::variable(ch.formVars(), ch.conjugateIndex(a));
    }
    return {ch, al};
}

/// Closed nondegenerate 2-form: constant part plus an exact perturbation.
inline std::optional<DifferentialForm> randomClosedForm(const Chart& ch, Parity par, PolyGen& gen) {
    auto g = standardFormGram(ch, par, gen);
    if (!g) return std::nullopt;
    auto w0 = formFromGram(ch, *g);
    return DifferentialForm{ch, w0.value + deRham(tameOneForm(ch, par, gen)).value};
}

/// Nondegenerate 2-form with constant body and a random nilpotent
/// super-antisymmetric perturbation; usually not closed.
inline std::optional<DifferentialForm> randomForm(const Chart& ch, Parity par, PolyGen& gen) {
    auto g = standardFormGram(ch, par, gen);
    if (!g) return std::nullopt;
    for (std::size_t a = 0; a < ch.size(); ++a)
        for (std::size_t b = a; b < ch.size(); ++b) {
            const int s = -signPow(ch.p(a) * ch.p(b));
            if (a == b && s == -1) continue;
            auto f = nilpotentPart(gen.homogeneous(ch.coordinates(), ch.parity(a) + ch.parity(b) + par, 3, 2));
            (*g)(a, b) += f;
            if (a != b) (*g)(b, a) += f * Rational(s);
        }
    return formFromGram(ch, *g);
}

/// Supersymmetric h with constant nondegenerate body and nilpotent perturbation.
inline std::optional<BilinearForm> randomMetric(const Chart& ch, Parity par, PolyGen& gen) {
    const unsigned n = ch.superDim().n, m = ch.superDim().m;
    Matrix h(ch.size(), ch.coordinates());
    if (par == Parity::even) {
        if (m % 2) return std::nullopt;
        for (unsigned i = 0; i < n; ++i) h(i, i) = ch.constant(gen.coefficient());
        for (unsigned j = 0; j + 1 < m; j += 2) {
            const Rational c = gen.coefficient();
            h(n + j, n + j + 1) = ch.constant(c);
            h(n + j + 1, n + j) = ch.constant(-c);
        }
    } else {
        if (n != m) return std::nullopt;
        for (unsigned i = 0; i < n; ++i) {
            const Rational c = gen.coefficient();
            h(i, n + i) = ch.constant(c);
            h(n + i, i) = ch.constant(c);
        }
    }
    for (std::size_t a = 0; a < ch.size(); ++a)
        for (std::size_t b = a; b < ch.size(); ++b) {
            const int s = signPow(ch.p(a) * ch.p(b));
            if (a == b && s == -1) continue;
            auto f = nilpotentPart(gen.homogeneous(ch.coordinates(), ch.parity(a) + ch.parity(b) + par, 3, 2));
            h(a, b) += f;
            if (a != b) h(b, a) += f * Rational(s);
        }
    return BilinearForm(ch, h, par);
}

}  // namespace superkahler::fixtures
