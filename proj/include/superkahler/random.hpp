#pragma once

// Seeded generators of random superpolynomials for property tests.

#include "superkahler/algebra.hpp"

#include <random>

namespace superkahler {

class RandomPoly {
public:
    explicit RandomPoly(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return uniform(0, 1) == 1; }
    std::mt19937_64& engine() { return rng_; }

    Rational coefficient(int range = 5) {
        int v = 0;
        while (v == 0) v = uniform(-range, range);
        if (coin()) return Rational(v);
        Rational r(v, uniform(1, 3));
        r.canonicalize();
        return r;
    }

    /// Random polynomial over `vars` with `terms` monomials of total degree
    /// <= maxDegree, every monomial of parity `parity`.  Odd variables appear
    /// at most once per monomial.
    SuperPolynomial homogeneous(const VarsPtr& vars, Parity parity, int maxDegree, int terms) {
        SuperPolynomial p(vars);
        const std::size_t n = vars->size();
        for (int t = 0; t < terms; ++t) {
            for (int attempt = 0; attempt < 40; ++attempt) {
                Monomial m{std::vector<std::uint16_t>(n, 0)};
                const int deg = uniform(0, maxDegree);
                int odd = 0;
                for (int k = 0; k < deg && n > 0; ++k) {
                    const auto i = static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1));
                    if (vars->isOdd(i)) {
                        if (m.exps[i]) continue;
                        ++odd;
                    }
                    ++m.exps[i];
                }
                if ((odd & 1) != bit(parity)) continue;
                p.addTerm(m, coefficient());
                break;
            }
        }
        return p;
    }

    /// Restricted to monomials of the given degree in `subset` variables.
    SuperPolynomial homogeneousInDegree(const VarsPtr& vars, Parity parity, int maxDegree, int terms,
                                        const std::vector<std::size_t>& subset, int subsetDegree) {
        SuperPolynomial p(vars);
        for (int guard = 0; guard < 200 && static_cast<int>(p.termCount()) < terms; ++guard) {
            auto q = homogeneous(vars, parity, maxDegree, 1);
            if (q.maxDegreeIn(subset) == subsetDegree) p += q;
        }
        return p;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace superkahler
