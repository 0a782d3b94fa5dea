#pragma once

// Charts, superdimensions and square matrices of superfunctions.
//
// Matrix convention (used everywhere in the library): a (1,1)-tensor J acts on
// the coordinate frame by J(e_b) = sum_a e_a J^a_b with coefficients written
// on the right, so composition is the plain matrix product (JK)^a_c =
// sum_b J^a_b K^b_c with no extra Koszul signs.  Component J^a_b has parity
// p(a) + p(b) + p(J); the same rule holds for Gram matrices h_ab = h(e_a, e_b).

#include "superkahler/algebra.hpp"

#include <string>
#include <vector>

namespace superkahler {

struct SuperDim {
    unsigned n = 0;  // even coordinates
    unsigned m = 0;  // odd coordinates

    unsigned total() const noexcept { return n + m; }
    std::string toString() const { return std::to_string(n) + "|" + std::to_string(m); }
    friend bool operator==(const SuperDim&, const SuperDim&) = default;
};

/// Accepts "n|m" and the shell-friendly "n.m".
inline SuperDim parseSuperDim(const std::string& text) {
    const auto sep = text.find_first_of("|.");
    auto digits = [](const std::string& s) {
        return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos && s.size() < 6;
    };
    if (sep == std::string::npos || !digits(text.substr(0, sep)) || !digits(text.substr(sep + 1)))
        throw std::invalid_argument("invalid superdimension '" + text + "' (expected n|m or n.m)");
    return {static_cast<unsigned>(std::stoul(text.substr(0, sep))),
            static_cast<unsigned>(std::stoul(text.substr(sep + 1)))};
}

/// Coordinate chart u_1..u_{n+m}: even coordinates first, then odd ones.
/// Besides the coordinate list it owns two derived lists of length 2(n+m):
/// the multivector list (u, v:u) where v:u_a has parity p(u_a)+1, and the
/// form list (u, d:u) where d:u_a has parity p(u_a)+1.
class Chart {
public:
    Chart() = default;
    Chart(const std::vector<std::string>& evenNames, const std::vector<std::string>& oddNames) {
        std::vector<VariableSpec> coords, mv, forms;
        for (const auto& e : evenNames) coords.push_back({e, Parity::even});
        for (const auto& o : oddNames) coords.push_back({o, Parity::odd});
        for (const auto& c : coords) {
            if (c.name.find(':') != std::string::npos)
                throw AlgebraError("coordinate names may not contain ':'");
        }
        mv = coords;
        forms = coords;
        for (const auto& c : coords) {
            mv.push_back({"v:" + c.name, flip(c.parity)});
            forms.push_back({"d:" + c.name, flip(c.parity)});
        }
        dim_ = {static_cast<unsigned>(evenNames.size()), static_cast<unsigned>(oddNames.size())};
        coords_ = makeVars(std::move(coords));
        multivector_ = makeVars(std::move(mv));
        forms_ = makeVars(std::move(forms));
    }

    /// Chart with default names x1..xn, xi1..xim.
    static Chart standard(SuperDim d) {
        std::vector<std::string> ev, od;
        for (unsigned i = 1; i <= d.n; ++i) ev.push_back("x" + std::to_string(i));
        for (unsigned i = 1; i <= d.m; ++i) od.push_back("xi" + std::to_string(i));
        return Chart(ev, od);
    }

    SuperDim superDim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_.total(); }
    Parity parity(std::size_t a) const { return (*coords_)[a].parity; }
    int p(std::size_t a) const { return bit(parity(a)); }
    const std::string& name(std::size_t a) const { return (*coords_)[a].name; }

    const VarsPtr& coordinates() const noexcept { return coords_; }
    const VarsPtr& multivectorVars() const noexcept { return multivector_; }
    const VarsPtr& formVars() const noexcept { return forms_; }

    std::vector<std::string> evenNames() const {
        std::vector<std::string> r;
        for (std::size_t a = 0; a < dim_.n; ++a) r.push_back(name(a));
        return r;
    }
    std::vector<std::string> oddNames() const {
        std::vector<std::string> r;
        for (std::size_t a = dim_.n; a < size(); ++a) r.push_back(name(a));
        return r;
    }

    SuperPolynomial zero() const { return SuperPolynomial(coords_); }
    SuperPolynomial one() const { return SuperPolynomial::constant(coords_, 1); }
    SuperPolynomial constant(const Rational& c) const { return SuperPolynomial::constant(coords_, c); }
    SuperPolynomial coordinate(std::size_t a) const { return SuperPolynomial::variable(coords_, a); }

    /// Index of v:u_a (resp. d:u_a) in the doubled lists.
    std::size_t conjugateIndex(std::size_t a) const { return size() + a; }

    friend bool operator==(const Chart& a, const Chart& b) { return sameVars(a.coords_, b.coords_); }

private:
    SuperDim dim_;
    VarsPtr coords_;
    VarsPtr multivector_;
    VarsPtr forms_;
};

/// Square matrix of superfunctions over a chart's coordinates.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t n, const VarsPtr& vars) : n_(n), vars_(vars), data_(n * n, SuperPolynomial(vars)) {}

    static Matrix identity(std::size_t n, const VarsPtr& vars) {
        Matrix r(n, vars);
        for (std::size_t i = 0; i < n; ++i) r(i, i) = SuperPolynomial::constant(vars, 1);
        return r;
    }

    /// Constant matrix from rows of rationals.
    static Matrix constant(const VarsPtr& vars, const std::vector<std::vector<Rational>>& rows) {
        Matrix r(rows.size(), vars);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw AlgebraError("constant matrix is not square");
            for (std::size_t j = 0; j < rows.size(); ++j) r(i, j) = SuperPolynomial::constant(vars, rows[i][j]);
        }
        return r;
    }

    std::size_t size() const noexcept { return n_; }
    SuperPolynomial& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const SuperPolynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    bool isZero() const {
        for (const auto& e : data_)
            if (!e.isZero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) throw AlgebraError("matrix size mismatch");
        Matrix r(a.n_, a.vars());
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t k = 0; k < a.n_; ++k) {
                if (a(i, k).isZero()) continue;
                for (std::size_t j = 0; j < a.n_; ++j)
                    if (!b(k, j).isZero()) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.n_ != b.n_) throw AlgebraError("matrix size mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        if (a.n_ != b.n_) throw AlgebraError("matrix size mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend Matrix operator*(Matrix a, const Rational& s) {
        for (auto& e : a.data_) e *= s;
        return a;
    }

    Matrix map(const auto& f) const {
        Matrix r = *this;
        for (auto& e : r.data_) e = f(e);
        return r;
    }

    const VarsPtr& vars() const { return vars_; }

private:
    std::size_t n_ = 0;
    VarsPtr vars_;
    std::vector<SuperPolynomial> data_;
};

class UnsupportedInversion : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};
class DegenerateMatrix : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Gauss-Jordan inverse over Q; nullopt when singular.
inline std::optional<RationalMatrix> invertRational(RationalMatrix a) {
    const std::size_t n = a.size();
    RationalMatrix inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational scale = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= scale;
            inv[col][j] /= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline RationalMatrix valueAtOrigin(const Matrix& m) {
    RationalMatrix r(m.size(), std::vector<Rational>(m.size(), 0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r[i][j] = m(i, j).valueAtOrigin();
    return r;
}

/// Two-sided inverse of a matrix whose body (odd variables set to zero) is a
/// constant invertible matrix G0.  With G = G0 + N and N nilpotent, the
/// Neumann series sum_k (-G0^{-1} N)^k G0^{-1} terminates.
inline Matrix invertSupported(const Matrix& g) {
    const std::size_t n = g.size();
    const VarsPtr vars = g.vars();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!g(i, j).body().isConstant())
                throw UnsupportedInversion("matrix body is not constant (entry (" + std::to_string(i + 1) + "," +
                                           std::to_string(j + 1) + ") = " + g(i, j).body().toString() + ")");
    const auto g0 = valueAtOrigin(g);
    const auto g0inv = invertRational(g0);
    if (!g0inv) throw DegenerateMatrix("matrix body is singular");
    const Matrix base = Matrix::constant(vars, *g0inv);
    const Matrix step = (base * (g - Matrix::constant(vars, g0))) * Rational(-1);

    Matrix result = base;
    Matrix term = base;
    // Each factor of `step` carries at least one odd variable.
    std::size_t oddCount = 0;
    for (std::size_t i = 0; i < vars->size(); ++i) oddCount += vars->isOdd(i);
    for (std::size_t k = 0; k <= oddCount; ++k) {
        term = step * term;
        if (term.isZero()) break;
        result = result + term;
    }
    return result;
}

}  // namespace superkahler
