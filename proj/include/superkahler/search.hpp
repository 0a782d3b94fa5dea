#pragma once

// Standard models, structural obstructions, randomized evidence for
// nonexistence, and the brute-force bracket oracle.

#include "superkahler/verify.hpp"
#include "superkahler/wordpoly.hpp"

#include <random>

namespace superkahler {

struct KaehlerPair {
    Tensor11 j;
    BilinearForm h;
};

/// Named reason why no pair exists, or nullopt for admissible cells.
inline std::optional<std::string> structuralObstruction(SuperDim d, Parity pJ, Parity pH) {
    if (checkSuperdimAdmissible(d, pJ, pH)) return std::nullopt;
    const bool oddJ = pJ == Parity::odd, oddH = pH == Parity::odd;
    if (oddJ && d.n != d.m) return "J-square parity clash: odd J exchanges " + std::to_string(d.n) +
                                   " even with " + std::to_string(d.m) + " odd directions";
    if (oddH && d.n != d.m) return "rectangular pairing: odd h pairs " + std::to_string(d.n) + " even with " +
                                   std::to_string(d.m) + " odd directions";
    if (!oddH && d.m % 2) return "odd-odd antisymmetric block of odd rank is degenerate";
    return "J^2 = -id has no solution on an even block of odd rank";
}

namespace detail {

using Rows = std::vector<std::vector<Rational>>;

inline Rows zeroRows(std::size_t n) { return Rows(n, std::vector<Rational>(n, Rational(0))); }

// J e_i = e_{i+1}, J e_{i+1} = -e_i
inline void rotationPairs(Rows& j, std::size_t from, std::size_t count) {
    for (std::size_t i = from; i + 1 < from + count; i += 2) {
        j[i + 1][i] = 1;
        j[i][i + 1] = -1;
    }
}

// Symplectic pairs h(e_i, e_{i+1}) = 1 = -h(e_{i+1}, e_i)
inline void symplecticPairs(Rows& h, std::size_t from, std::size_t count) {
    for (std::size_t i = from; i + 1 < from + count; i += 2) {
        h[i][i + 1] = 1;
        h[i + 1][i] = -1;
    }
}

}  // namespace detail

struct ModelResult {
    std::optional<KaehlerPair> model;
    /// Set when no model is returned, or when the returned candidate is
    /// known not to pass (odd J).
    std::string obstruction;
};

/// Constant-coefficient model on the standard chart.
///   (ev, ev)  rotations on both parts, h = id + symplectic on the odd part
///   (ev, od)  rotations on both parts, h pairs x_i with xi_i
///   odd J     J x_i = xi_i, J xi_i = -x_i with h as above; returned as a
///             candidate only, the pseudo-Hermitian identity forces h = 0
inline ModelResult standardModel(SuperDim d, Parity pJ, Parity pH) {
    if (auto why = structuralObstruction(d, pJ, pH)) return {std::nullopt, *why};
    const Chart ch = Chart::standard(d);
    const std::size_t n = d.n, size = ch.size();
    auto j = detail::zeroRows(size), h = detail::zeroRows(size);
    if (pJ == Parity::even) {
        detail::rotationPairs(j, 0, n);
        detail::rotationPairs(j, n, d.m);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            j[n + i][i] = 1;
            j[i][n + i] = -1;
        }
    }
    if (pH == Parity::even) {
        for (std::size_t i = 0; i < n; ++i) h[i][i] = 1;
        detail::symplecticPairs(h, n, d.m);
    } else {
        for (std::size_t i = 0; i < n; ++i) h[i][n + i] = h[n + i][i] = 1;
    }
    KaehlerPair pair{Tensor11(ch, Matrix::constant(ch.coordinates(), j), pJ, -1),
                     BilinearForm(ch, Matrix::constant(ch.coordinates(), h), pH)};
    std::string caveat;
    if (pJ == Parity::odd && size > 0)
        caveat = "odd J: h(X,Y) = (-1)^{p(X)p(J)} h(JX,JY) applied twice gives h = -h, so no nondegenerate "
                 "pseudo-Hermitian h exists; candidate returned unverified";
    return {std::move(pair), std::move(caveat)};
}

/// The flat quaternionic triple on 4|0 with h = id:
/// J1 = i, J2 = j, J3 = k acting on (x1, x2, x3, x4).
inline std::pair<std::array<Tensor11, 3>, BilinearForm> quaternionModel() {
    const Chart ch = Chart::standard({4, 0});
    auto make = [&](const detail::Rows& r) { return Tensor11(ch, Matrix::constant(ch.coordinates(), r), Parity::even, -1); };
    // Left multiplication by i, j, k on the basis (1, i, j, k), as column matrices.
    const detail::Rows I = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
    const detail::Rows J = {{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    const detail::Rows K = {{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
    return {{make(I), make(J), make(K)}, BilinearForm(ch, Matrix::identity(4, ch.coordinates()), Parity::even)};
}

struct SearchEvidence {
    SuperDim superDim;
    Parity pJ = Parity::even, pH = Parity::even;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t squarePasses = 0;     // J^2 = -id
    std::size_t nondegenerate = 0;    // ... and h nondegenerate, supersymmetric
    std::size_t passes = 0;           // ... and pseudo-Hermitian
    std::string obstruction;

    VerificationReport report() const {
        VerificationReport rep;
        rep.kind = "search";
        rep.hasVerdict = false;
        rep.superDim = superDim;
        rep.parities = {{"J", pJ}, {"h", pH}};
        rep.settings = {{"seed", std::to_string(seed)}, {"trials", std::to_string(trials)}};
        rep.add({"structural-obstruction", Status::pass, false, obstruction, std::nullopt});
        rep.add({"randomized-search", passes == 0 ? Status::pass : Status::fail, false,
                 "evidence, not proof: " + std::to_string(passes) + " of " + std::to_string(trials) +
                     " sampled constant pairs passed (J^2 = -id in " + std::to_string(squarePasses) +
                     ", also h nondegenerate in " + std::to_string(nondegenerate) + ")",
                 std::nullopt});
        return rep;
    }
};

/// Samples constant pairs with small rational entries in the parity-allowed
/// slots and runs the pointwise checks.  Deterministic per seed; trial t
/// draws from its own engine seeded by (seed, t).
inline SearchEvidence randomizedCounterexampleSearch(SuperDim d, Parity pJ, Parity pH, std::size_t trials,
                                                     std::uint64_t seed) {
    auto why = structuralObstruction(d, pJ, pH);
    if (!why) throw std::invalid_argument("superdimension " + d.toString() + " is admissible for this parity pattern; use standardModel");
    const Chart ch = Chart::standard(d);
    const std::size_t n = ch.size();
    SearchEvidence ev{d, pJ, pH, seed, trials, 0, 0, 0, *why};
    for (std::size_t t = 0; t < trials; ++t) {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(t)};
        std::mt19937_64 rng(ss);
        auto draw = [&]() -> Rational {
            static const int vals[] = {0, 0, 0, 1, -1, 2, -2};
            const int v = vals[std::uniform_int_distribution<int>(0, 6)(rng)];
            return Rational(v);
        };
        auto j = detail::zeroRows(n), h = detail::zeroRows(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if ((ch.p(a) + ch.p(b) + bit(pJ)) % 2 == 0) j[a][b] = draw();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b)
                if ((ch.p(a) + ch.p(b) + bit(pH)) % 2 == 0) {
                    h[a][b] = draw();
                    h[b][a] = h[a][b] * signPow(ch.p(a) * ch.p(b));
                }
        Tensor11 jt(ch, Matrix::constant(ch.coordinates(), j), pJ, -1);
        if (!checkSquare(jt).pass) continue;
        ++ev.squarePasses;
        BilinearForm ht(ch, Matrix::constant(ch.coordinates(), h), pH);
        if (!checkNondegenerate(ht).pass) continue;
        ++ev.nondegenerate;
        if (checkPseudoHermitian(ht, jt).pass) ++ev.passes;
    }
    return ev;
}

/// {P,Q} expanded term by term on words over (u, v:u):
///   sum_a  dr P/du_a * dl Q/dv_a  -  dr P/dv_a * dl Q/du_a
/// using the word arithmetic only.  Size guard: n + m <= 4.
inline MultivectorField bruteForceBracketOracle(const MultivectorField& p, const MultivectorField& q) {
    if (!(p.chart == q.chart)) throw CalculusError("bruteForceBracketOracle: chart mismatch");
    const Chart& ch = p.chart;
    if (ch.size() > 4) throw std::invalid_argument("bruteForceBracketOracle: size guard n + m <= 4 exceeded");
    const auto wp = words::fromKernel(p.value), wq = words::fromKernel(q.value);
    words::WordPoly acc{ch.multivectorVars(), {}};
    auto accumulate = [&](const words::WordPoly& t, const Rational& s) {
        for (const auto& [w, c] : t.terms) acc.add(w, c * s);
    };
    for (std::size_t a = 0; a < ch.size(); ++a) {
        const std::size_t va = ch.conjugateIndex(a);
        accumulate(words::multiply(words::derivative(wp, a, false), words::derivative(wq, va, true)), Rational(1));
        accumulate(words::multiply(words::derivative(wp, va, false), words::derivative(wq, a, true)), Rational(-1));
    }
    return {ch, words::toKernel(acc)};
}

/// Conformal factor 1 + x1 xi1 xi2 (body 1, so inversion stays supported);
/// scaling a model h by it keeps the pair pseudo-Hermitian but breaks
/// closedness of omega on 2|2.
inline SuperPolynomial conformalBump(const Chart& ch) {
    if (ch.superDim().n < 1 || ch.superDim().m < 2) throw std::invalid_argument("conformalBump needs n >= 1, m >= 2");
    const std::size_t n = ch.superDim().n;
    return ch.one() + ch.coordinate(0) * ch.coordinate(n) * ch.coordinate(n + 1);
}

/// Standard (ev J) model on 2|2 with h scaled by conformalBump: pseudo-Hermitian,
/// nondegenerate, omega not closed, so the bracket rows fail.
inline KaehlerPair nonClosedFixture(Parity pH) {
    auto m = standardModel({2, 2}, Parity::even, pH);
    KaehlerPair pair = *m.model;
    const auto phi = conformalBump(pair.h.chart);
    pair.h = BilinearForm(pair.h.chart, pair.h.components.map([&](const SuperPolynomial& e) { return e * phi; }),
                          pH);
    return pair;
}

/// Even bivector d1^d2 + x2 d2^d3 on 3|0; {B,B} != 0.
inline MultivectorField nonJacobiEvenBivector() {
    const Chart ch = Chart::standard({3, 0});
    const auto& mv = ch.multivectorVars();
    auto v = [&](std::size_t a) { return SuperPolynomial::variable(mv, ch.conjugateIndex(a)); };
    auto x = [&](std::size_t a) { return SuperPolynomial::variable(mv, a); };
    return {ch, v(0) * v(1) + x(1) * v(1) * v(2)};
}

/// Odd bracket on 1|1 (x, xi): pi^{x x} = xi, pi^{x xi} = -pi^{xi x} = x^2.
/// Graded antisymmetric with nonzero Jacobiator; not carried by a multivector.
inline Bivector nonJacobiOddBivector() {
    const Chart ch = Chart::standard({1, 1});
    Matrix pi(2, ch.coordinates());
    pi(0, 0) = ch.coordinate(1);
    pi(0, 1) = ch.coordinate(0) * ch.coordinate(0);
    pi(1, 0) = -pi(0, 1);
    return Bivector(ch, pi, Parity::odd);
}

}  // namespace superkahler
