#pragma once

#include "superkahler/chart.hpp"

namespace superkahler {

class TensorError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

namespace detail {

// Every component (a,b) must be homogeneous of parity p(a) + p(b) + p(T).
inline void checkComponentParities(const Chart& chart, const Matrix& m, Parity tensorParity,
                                   const char* what) {
    if (m.size() != chart.size())
        throw TensorError(std::string(what) + ": matrix is " + std::to_string(m.size()) + "x" +
                          std::to_string(m.size()) + ", chart has " + std::to_string(chart.size()) +
                          " coordinates");
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b) {
            const Parity want = chart.parity(a) + chart.parity(b) + tensorParity;
            if (!m(a, b).hasParity(want))
                throw TensorError(std::string(what) + ": component (" + std::to_string(a + 1) + "," +
                                  std::to_string(b + 1) + ") = " + m(a, b).toString() + " is not " +
                                  (want == Parity::even ? "even" : "odd"));
        }
}

}  // namespace detail

/// Valency (1,1) tensor with a declared parity and the sign s in J^2 = s*id.
struct Tensor11 {
    Chart chart;
    Matrix components;
    Parity parity = Parity::even;
    int squareSign = -1;

    Tensor11() = default;
    Tensor11(Chart c, Matrix comps, Parity p, int sq)
        : chart(std::move(c)), components(std::move(comps)), parity(p), squareSign(sq) {
        if (sq != 1 && sq != -1) throw TensorError("squareSign must be +1 or -1");
        detail::checkComponentParities(chart, components, parity, "J");
    }

    const SuperPolynomial& operator()(std::size_t a, std::size_t b) const { return components(a, b); }
};

/// Bilinear form on the tangent frame: components(a,b) = h(e_a, e_b).
struct BilinearForm {
    Chart chart;
    Matrix components;
    Parity parity = Parity::even;

    BilinearForm() = default;
    BilinearForm(Chart c, Matrix comps, Parity p) : chart(std::move(c)), components(std::move(comps)), parity(p) {
        detail::checkComponentParities(chart, components, parity, "bilinear form");
    }

    const SuperPolynomial& operator()(std::size_t a, std::size_t b) const { return components(a, b); }

    /// First (a,b) violating h_ab = sign * (-1)^{p(a)p(b)} h_ba, if any.
    std::optional<std::pair<std::size_t, std::size_t>> symmetryViolation(int sign) const {
        for (std::size_t a = 0; a < chart.size(); ++a)
            for (std::size_t b = a; b < chart.size(); ++b) {
                const int s = sign * signPow(chart.p(a) * chart.p(b));
                if (!(components(a, b) - components(b, a) * Rational(s)).isZero()) return std::pair{a, b};
            }
        return std::nullopt;
    }
    /// h(X,Y) = (-1)^{p(X)p(Y)} h(Y,X) on the frame.
    bool isSuperSymmetric() const { return !symmetryViolation(1); }
    /// w(X,Y) = -(-1)^{p(X)p(Y)} w(Y,X) on the frame.
    bool isSuperAntisymmetric() const { return !symmetryViolation(-1); }
};

}  // namespace superkahler
