#pragma once

// Multivector fields, differential forms, the Buttin bracket, the de Rham
// differential and the Levi-Civita connection.
//
// Multivector fields are superfunctions of (u, v:u) with p(v:u_a) = p(u_a)+1;
// differential forms are superfunctions of (u, d:u) with p(d:u_a) = p(u_a)+1.
// The tensor parity of a bivector or 2-form is the parity of its value
// polynomial: component pi^{ab} (or w_ab) has parity p(a)+p(b)+p(B) and the
// two conjugate factors contribute p(a)+1 and p(b)+1, so the total is p(B).

#include "superkahler/tensors.hpp"

#include <array>

namespace superkahler {

class CalculusError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

struct MultivectorField {
    Chart chart;
    SuperPolynomial value;

    MultivectorField() = default;
    MultivectorField(Chart c, SuperPolynomial v) : chart(std::move(c)), value(std::move(v)) {
        if (value.vars() && !sameVars(value.vars(), chart.multivectorVars()))
            throw CalculusError("multivector value is not over the chart's (u, v:u) variables");
        if (!value.vars()) value = SuperPolynomial(chart.multivectorVars());
    }

    /// A function of u viewed as a multivector field of degree 0.
    static MultivectorField function(const Chart& c, const SuperPolynomial& f) {
        return {c, f.embedInto(c.multivectorVars())};
    }
    /// The conjugate coordinate v:u_a.
    static MultivectorField conjugate(const Chart& c, std::size_t a) {
        return {c, SuperPolynomial::variable(c.multivectorVars(), c.conjugateIndex(a))};
    }

    std::optional<Parity> parity() const { return value.parity(); }

    /// Degree in the conjugate variables, or nullopt when mixed.
    std::optional<int> degree() const {
        const auto idx = conjugateIndices();
        const int hi = value.maxDegreeIn(idx), lo = value.minDegreeIn(idx);
        if (hi != lo) return std::nullopt;
        return hi < 0 ? 0 : hi;
    }

    /// The degree-0 part as a function of u.
    SuperPolynomial asFunction() const { return value.restrictTo(chart.coordinates()); }

    std::vector<std::size_t> conjugateIndices() const {
        std::vector<std::size_t> r;
        for (std::size_t a = 0; a < chart.size(); ++a) r.push_back(chart.conjugateIndex(a));
        return r;
    }

    friend bool operator==(const MultivectorField& a, const MultivectorField& b) {
        return a.chart == b.chart && a.value == b.value;
    }
};

struct DifferentialForm {
    Chart chart;
    SuperPolynomial value;

    DifferentialForm() = default;
    DifferentialForm(Chart c, SuperPolynomial v) : chart(std::move(c)), value(std::move(v)) {
        if (value.vars() && !sameVars(value.vars(), chart.formVars()))
            throw CalculusError("form value is not over the chart's (u, d:u) variables");
        if (!value.vars()) value = SuperPolynomial(chart.formVars());
    }

    static DifferentialForm function(const Chart& c, const SuperPolynomial& f) {
        return {c, f.embedInto(c.formVars())};
    }
    static DifferentialForm differential(const Chart& c, std::size_t a) {
        return {c, SuperPolynomial::variable(c.formVars(), c.conjugateIndex(a))};
    }

    std::optional<Parity> parity() const { return value.parity(); }
    std::optional<int> degree() const {
        std::vector<std::size_t> idx;
        for (std::size_t a = 0; a < chart.size(); ++a) idx.push_back(chart.conjugateIndex(a));
        const int hi = value.maxDegreeIn(idx), lo = value.minDegreeIn(idx);
        if (hi != lo) return std::nullopt;
        return hi < 0 ? 0 : hi;
    }
    bool isZero() const { return value.isZero(); }

    friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
        return a.chart == b.chart && a.value == b.value;
    }
};

/// X = sum_a e_a X^a.
struct VectorField {
    Chart chart;
    std::vector<SuperPolynomial> components;
    Parity parity = Parity::even;

    static VectorField coordinate(const Chart& c, std::size_t a) {
        VectorField x{c, std::vector<SuperPolynomial>(c.size(), c.zero()), c.parity(a)};
        x.components[a] = c.one();
        return x;
    }

    /// J(X) = sum_{a,b} e_a J^a_b X^b.
    VectorField apply(const Tensor11& j) const {
        VectorField r{chart, std::vector<SuperPolynomial>(chart.size(), chart.zero()), parity + j.parity};
        for (std::size_t a = 0; a < chart.size(); ++a)
            for (std::size_t b = 0; b < chart.size(); ++b) r.components[a] += j(a, b) * components[b];
        return r;
    }
};

/// Christoffel symbols: nabla_{e_a} e_b = sum_c e_c Gamma^c_{ab}.
struct Connection {
    Chart chart;
    std::vector<SuperPolynomial> christoffel;  // index (c, a, b)

    const SuperPolynomial& gamma(std::size_t c, std::size_t a, std::size_t b) const {
        const std::size_t n = chart.size();
        return christoffel[(c * n + a) * n + b];
    }
    SuperPolynomial& gamma(std::size_t c, std::size_t a, std::size_t b) {
        const std::size_t n = chart.size();
        return christoffel[(c * n + a) * n + b];
    }

    bool isFlat() const {
        for (const auto& g : christoffel)
            if (!g.isZero()) return false;
        return true;
    }
};

/// Three-index array T[a](d, b), used for nabla_a J.
using TensorArray3 = std::vector<Matrix>;

inline bool isZero(const TensorArray3& t) {
    for (const auto& m : t)
        if (!m.isZero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Buttin bracket

/// {P,Q} = sum_a  dP/du_a (right) * dQ/dv_a (left) - dP/dv_a (right) * dQ/du_a (left).
///
/// This is the canonical odd bracket on functions of (u, v:u): parity
/// p(P)+p(Q)+1, {u_a, v:u_b} = delta_ab, shifted antisymmetry
/// {P,Q} = -(-1)^{(p(P)+1)(p(Q)+1)} {Q,P}, shifted Jacobi
/// {P,{Q,R}} = {{P,Q},R} + (-1)^{(p(P)+1)(p(Q)+1)} {Q,{P,R}}.
inline MultivectorField buttinBracket(const MultivectorField& p, const MultivectorField& q) {
    if (!(p.chart == q.chart)) throw CalculusError("Buttin bracket: chart mismatch");
    if (!p.parity() || !q.parity()) throw CalculusError("Buttin bracket: inhomogeneous input");
    const Chart& chart = p.chart;
    SuperPolynomial r(chart.multivectorVars());
    for (std::size_t a = 0; a < chart.size(); ++a) {
        const std::size_t va = chart.conjugateIndex(a);
        const auto pu = p.value.rightDerivative(a);
        if (!pu.isZero()) {
            const auto qv = q.value.leftDerivative(va);
            if (!qv.isZero()) r += pu * qv;
        }
        const auto pv = p.value.rightDerivative(va);
        if (!pv.isZero()) {
            const auto qu = q.value.leftDerivative(a);
            if (!qu.isZero()) r -= pv * qu;
        }
    }
    return {chart, std::move(r)};
}

/// Derived bracket of functions {f,g}_B = {{f,B},g}.
inline SuperPolynomial bracketFromBivector(const MultivectorField& b, const SuperPolynomial& f,
                                           const SuperPolynomial& g) {
    const auto deg = b.degree();
    if (!b.value.isZero() && (!deg || *deg != 2)) throw CalculusError("bracketFromBivector: B is not a bivector");
    if (!b.parity()) throw CalculusError("bracketFromBivector: B is inhomogeneous");
    if (!sameVars(f.vars(), b.chart.coordinates()) || !sameVars(g.vars(), b.chart.coordinates()))
        throw CalculusError("bracketFromBivector: chart mismatch");
    const Chart& chart = b.chart;
    SuperPolynomial total(chart.coordinates());
    // Bilinear, so inhomogeneous arguments are split into parity parts.
    for (Parity pf : {Parity::even, Parity::odd}) {
        const auto fp = f.part(pf);
        if (fp.isZero()) continue;
        const auto fb = buttinBracket(MultivectorField::function(chart, fp), b);
        for (Parity pg : {Parity::even, Parity::odd}) {
            const auto gp = g.part(pg);
            if (gp.isZero()) continue;
            total += buttinBracket(fb, MultivectorField::function(chart, gp)).asFunction();
        }
    }
    return total;
}

/// pi^{ab} = {u_a, u_b}_B.
inline Matrix bivectorMatrix(const MultivectorField& b) {
    const Chart& chart = b.chart;
    Matrix pi(chart.size(), chart.coordinates());
    for (std::size_t a = 0; a < chart.size(); ++a)
        for (std::size_t c = 0; c < chart.size(); ++c)
            pi(a, c) = bracketFromBivector(b, chart.coordinate(a), chart.coordinate(c));
    return pi;
}

/// B = -1/2 sum_{a,b} v:u_a pi^{ab} v:u_b, the bivector with {u_a,u_b}_B = pi^{ab}.
/// Throws when pi lacks the graded symmetry pi^{ab} = -(-1)^{p(a)p(b)+(p(a)+p(b))p(B)} pi^{ba}.
inline MultivectorField bivectorFromMatrix(const Chart& chart, const Matrix& pi) {
    SuperPolynomial v(chart.multivectorVars());
    for (std::size_t a = 0; a < chart.size(); ++a)
        for (std::size_t c = 0; c < chart.size(); ++c) {
            if (pi(a, c).isZero()) continue;
            const auto va = SuperPolynomial::variable(chart.multivectorVars(), chart.conjugateIndex(a));
            const auto vc = SuperPolynomial::variable(chart.multivectorVars(), chart.conjugateIndex(c));
            v += va * pi(a, c).embedInto(chart.multivectorVars()) * vc;
        }
    v *= Rational(-1, 2);
    MultivectorField b{chart, std::move(v)};
    if (!b.parity()) throw CalculusError("bivector matrix has inhomogeneous parity");
    if (!(bivectorMatrix(b) == pi)) throw CalculusError("matrix lacks the graded symmetry of a bivector");
    return b;
}

// ---------------------------------------------------------------------------
// Differential forms

/// d = sum_a d:u_a * d/du_a (left derivative): an odd derivation,
/// d(fg) = (df)g + (-1)^{p(f)} f(dg), with d^2 = 0.
inline DifferentialForm deRham(const DifferentialForm& w) {
    const Chart& chart = w.chart;
    SuperPolynomial r(chart.formVars());
    for (std::size_t a = 0; a < chart.size(); ++a) {
        const auto da = w.value.leftDerivative(a);
        if (da.isZero()) continue;
        r += SuperPolynomial::variable(chart.formVars(), chart.conjugateIndex(a)) * da;
    }
    return {chart, std::move(r)};
}

/// Gram matrix of a 2-form: G_ab = (-1)^{p(a)} d/d(du_a) d/d(du_b) w, both
/// right derivatives, du_b taken first.
inline Matrix gramOfForm(const DifferentialForm& w) {
    const Chart& chart = w.chart;
    Matrix g(chart.size(), chart.coordinates());
    for (std::size_t a = 0; a < chart.size(); ++a)
        for (std::size_t b = 0; b < chart.size(); ++b) {
            auto e = w.value.rightDerivative(chart.conjugateIndex(b)).rightDerivative(chart.conjugateIndex(a));
            g(a, b) = e.restrictTo(chart.coordinates()) * Rational(signPow(chart.p(a)));
        }
    return g;
}

/// w = 1/2 sum_{a,b} (-1)^{p(a)} G_ab du_a du_b.  Inverse of gramOfForm on
/// super-antisymmetric G (G_ab = -(-1)^{p(a)p(b)} G_ba); throws otherwise.
inline DifferentialForm formFromGram(const Chart& chart, const Matrix& g) {
    SuperPolynomial v(chart.formVars());
    for (std::size_t a = 0; a < chart.size(); ++a)
        for (std::size_t b = 0; b < chart.size(); ++b) {
            if (g(a, b).isZero()) continue;
            v += g(a, b).embedInto(chart.formVars()) *
                 SuperPolynomial::variable(chart.formVars(), chart.conjugateIndex(a)) *
                 SuperPolynomial::variable(chart.formVars(), chart.conjugateIndex(b)) *
                 Rational(signPow(chart.p(a)), 2);
        }
    DifferentialForm w{chart, std::move(v)};
    if (!(gramOfForm(w) == g)) throw CalculusError("Gram matrix is not super-antisymmetric; not a 2-form");
    return w;
}

// ---------------------------------------------------------------------------
// Brackets given by a structure matrix

/// A bracket of parity k on functions of u, stored as its structure matrix
/// pi^{ab} = {u_a, u_b}:
///   {f,g} = sum_{a,b} df/du_a (right) * pi^{ab} * dg/du_b (left).
/// For even k this is exactly the derived bracket of the bivector
/// -1/2 sum v:u_a pi^{ab} v:u_b.  For odd k an antisymmetric pi generally has
/// nonzero diagonal entries on even coordinates, which no function of
/// (u, v:u) can carry, so only the matrix is kept.
struct Bivector {
    Chart chart;
    Matrix pi;
    Parity parity = Parity::even;

    Bivector() = default;
    Bivector(Chart c, Matrix m, Parity k) : chart(std::move(c)), pi(std::move(m)), parity(k) {
        detail::checkComponentParities(chart, pi, parity, "bivector");
    }

    static Bivector fromMultivector(const MultivectorField& b) {
        const auto deg = b.degree();
        if (!b.value.isZero() && (!deg || *deg != 2)) throw CalculusError("not a bivector");
        if (!b.parity()) throw CalculusError("bivector has inhomogeneous parity");
        return {b.chart, bivectorMatrix(b), *b.parity()};
    }

    /// Realisation on (u, v:u); nullopt when none exists.
    std::optional<MultivectorField> multivector() const {
        if (parity == Parity::odd) return std::nullopt;
        try {
            return bivectorFromMatrix(chart, pi);
        } catch (const CalculusError&) {
            return std::nullopt;
        }
    }

    int k() const { return bit(parity); }

    SuperPolynomial bracket(const SuperPolynomial& f, const SuperPolynomial& g) const {
        SuperPolynomial r(chart.coordinates());
        for (std::size_t a = 0; a < chart.size(); ++a) {
            const auto fa = f.rightDerivative(a);
            if (fa.isZero()) continue;
            for (std::size_t b = 0; b < chart.size(); ++b) {
                if (pi(a, b).isZero()) continue;
                const auto gb = g.leftDerivative(b);
                if (!gb.isZero()) r += fa * pi(a, b) * gb;
            }
        }
        return r;
    }

    /// First (a,b) with pi^{ab} != -(-1)^{(p(a)+k)(p(b)+k)} pi^{ba}.
    std::optional<std::pair<std::size_t, std::size_t>> antisymmetryViolation() const {
        for (std::size_t a = 0; a < chart.size(); ++a)
            for (std::size_t b = a; b < chart.size(); ++b) {
                const int s = -signPow((chart.p(a) + k()) * (chart.p(b) + k()));
                if (!(pi(a, b) - pi(b, a) * Rational(s)).isZero()) return std::pair{a, b};
            }
        return std::nullopt;
    }
};

struct JacobiWitness {
    std::size_t a, b, c;
    SuperPolynomial value;
};

/// Jacobiator {u_a,{u_b,u_c}} - {{u_a,u_b},u_c} - (-1)^{(p(a)+k)(p(b)+k)} {u_b,{u_a,u_c}}
/// on coordinate triples.  For an antisymmetric biderivation this is a
/// derivation in each slot, so vanishing on coordinates is vanishing everywhere.
inline std::optional<JacobiWitness> jacobiViolation(const Bivector& b) {
    const Chart& chart = b.chart;
    const std::size_t n = chart.size();
    std::vector<SuperPolynomial> first(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) first[a * n + c] = b.pi(a, c);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t bb = 0; bb < n; ++bb)
            for (std::size_t c = 0; c < n; ++c) {
                const int s = signPow((chart.p(a) + b.k()) * (chart.p(bb) + b.k()));
                auto jac = b.bracket(chart.coordinate(a), first[bb * n + c]) -
                           b.bracket(first[a * n + bb], chart.coordinate(c)) -
                           b.bracket(chart.coordinate(bb), first[a * n + c]) * Rational(s);
                if (!jac.isZero()) return JacobiWitness{a, bb, c, std::move(jac)};
            }
    return std::nullopt;
}

namespace detail {
// Twist turning a 2-form's Gram matrix into the matrix whose negative inverse
// is the bracket: Gt_bd = (-1)^{p(b)(1 + p(d) + p(w))} G_bd.  It is an involution.
inline Matrix inversionTwist(const Chart& chart, const Matrix& g, Parity formParity) {
    Matrix r = g;
    for (std::size_t b = 0; b < chart.size(); ++b)
        for (std::size_t d = 0; d < chart.size(); ++d)
            if (chart.p(b) * (1 + chart.p(d) + bit(formParity)) & 1) r(b, d) = -r(b, d);
    return r;
}
}  // namespace detail

/// Bracket inverse to a nondegenerate form given by its Gram matrix.
/// Normalisation: X_a = sum_b pi^{ab} d/du_b satisfies
/// i(X_a) w = -(-1)^{p(a)+p(w)} du_a.
inline Bivector gramToBivector(const Chart& chart, const Matrix& gram, Parity formParity) {
    return {chart, invertSupported(detail::inversionTwist(chart, gram, formParity)) * Rational(-1), formParity};
}

inline Bivector formToBivector(const DifferentialForm& w) {
    const auto deg = w.degree();
    if (!w.value.isZero() && (!deg || *deg != 2)) throw CalculusError("formToBivector: not a 2-form");
    const auto par = w.parity();
    if (!par) throw CalculusError("formToBivector: inhomogeneous form");
    return gramToBivector(w.chart, gramOfForm(w), *par);
}

/// Inverse of formToBivector.
inline DifferentialForm bivectorToForm(const Bivector& b) {
    const Matrix gt = invertSupported(b.pi) * Rational(-1);
    return formFromGram(b.chart, detail::inversionTwist(b.chart, gt, b.parity));
}

// ---------------------------------------------------------------------------
// Levi-Civita connection
//
// With nabla_{e_a} e_b = sum_c e_c Gamma^c_ab:
//   torsion-free:  Gamma^c_ab = (-1)^{p(a)p(b)} Gamma^c_ba
//   metric:        (-1)^{p(a)p(h)} d_a h_bc = Gamma_{ab,c} + (-1)^{p(b)p(c)} Gamma_{ac,b}
// where Gamma_{ab,c} = h(nabla_a e_b, e_c) = sum_d (-1)^{(p(d)+p(a)+p(b))p(c)} h_dc Gamma^d_ab.

/// Lowered symbols Gamma_{ab,c}, stored at index (a*n + b)*n + c.  Polynomial
/// for every h, no inversion needed.
inline std::vector<SuperPolynomial> christoffelFirstKind(const BilinearForm& h) {
    const Chart& chart = h.chart;
    const std::size_t n = chart.size();
    const int ph = bit(h.parity);
    auto K = [&](std::size_t a, std::size_t b, std::size_t c) {
        return h(b, c).leftDerivative(a) * Rational(signPow(chart.p(a) * ph));
    };
    std::vector<SuperPolynomial> low(n * n * n, chart.zero());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const int pa = chart.p(a), pb = chart.p(b), pc = chart.p(c);
                low[(a * n + b) * n + c] = (K(a, b, c) + K(b, a, c) * Rational(signPow(pa * pb)) -
                                            K(c, a, b) * Rational(signPow(pc * (pa + pb)))) *
                                           Rational(1, 2);
            }
    return low;
}

/// Gamma_{ab,c} recomputed from Gamma^d_ab.
inline std::vector<SuperPolynomial> lowerConnection(const BilinearForm& h, const Connection& conn) {
    const Chart& chart = h.chart;
    const std::size_t n = chart.size();
    std::vector<SuperPolynomial> low(n * n * n, chart.zero());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                auto& e = low[(a * n + b) * n + c];
                for (std::size_t d = 0; d < n; ++d) {
                    if (h(d, c).isZero() || conn.gamma(d, a, b).isZero()) continue;
                    e += h(d, c) * conn.gamma(d, a, b) *
                         Rational(signPow((chart.p(d) + chart.p(a) + chart.p(b)) * chart.p(c)));
                }
            }
    return low;
}

/// Levi-Civita connection of a nondegenerate supersymmetric h whose body is
/// constant (the class invertSupported handles); throws UnsupportedInversion
/// otherwise.
inline Connection leviCivita(const BilinearForm& h) {
    if (!h.isSuperSymmetric()) throw CalculusError("leviCivita: h is not supersymmetric");
    const Chart& chart = h.chart;
    const std::size_t n = chart.size();
    Matrix ht(n, chart.coordinates());
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
            ht(c, d) = h(d, c) * Rational(signPow(chart.p(c) * chart.p(d)));
    const Matrix inv = invertSupported(ht);
    const auto low = christoffelFirstKind(h);
    Connection conn{chart, std::vector<SuperPolynomial>(n * n * n, chart.zero())};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t d = 0; d < n; ++d)
                for (std::size_t c = 0; c < n; ++c) {
                    const auto& l = low[(a * n + b) * n + c];
                    if (l.isZero() || inv(d, c).isZero()) continue;
                    conn.gamma(d, a, b) +=
                        inv(d, c) * l * Rational(signPow((chart.p(a) + chart.p(b)) * chart.p(c)));
                }
    return conn;
}

/// Residual of metric compatibility, index (a*n + b)*n + c; all zero for leviCivita(h).
inline std::vector<SuperPolynomial> metricityResidual(const BilinearForm& h, const Connection& conn) {
    const Chart& chart = h.chart;
    const std::size_t n = chart.size();
    const auto low = lowerConnection(h, conn);
    std::vector<SuperPolynomial> r(n * n * n, chart.zero());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                r[(a * n + b) * n + c] =
                    h(b, c).leftDerivative(a) -
                    (low[(a * n + b) * n + c] + low[(a * n + c) * n + b] * Rational(signPow(chart.p(b) * chart.p(c)))) *
                        Rational(signPow(chart.p(a) * bit(h.parity)));
    return r;
}

inline bool isTorsionFree(const Connection& conn) {
    const Chart& chart = conn.chart;
    for (std::size_t c = 0; c < chart.size(); ++c)
        for (std::size_t a = 0; a < chart.size(); ++a)
            for (std::size_t b = a + 1; b < chart.size(); ++b)
                if (!(conn.gamma(c, a, b) - conn.gamma(c, b, a) * Rational(signPow(chart.p(a) * chart.p(b)))).isZero())
                    return false;
    return true;
}

/// (nabla_a J)^d_b = sum_c Gamma^d_ac J^c_b + (-1)^{p(a)p(d)} d_a J^d_b
///                   - (-1)^{p(a)p(J)} sum_c J^d_c Gamma^c_ab.
inline TensorArray3 covariantDerivative(const Tensor11& j, const Connection& conn) {
    const Chart& chart = j.chart;
    const std::size_t n = chart.size();
    TensorArray3 out(n, Matrix(n, chart.coordinates()));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t d = 0; d < n; ++d)
            for (std::size_t b = 0; b < n; ++b) {
                auto& e = out[a](d, b);
                e = j(d, b).leftDerivative(a) * Rational(signPow(chart.p(a) * chart.p(d)));
                for (std::size_t c = 0; c < n; ++c) {
                    if (!conn.gamma(d, a, c).isZero() && !j(c, b).isZero()) e += conn.gamma(d, a, c) * j(c, b);
                    if (!j(d, c).isZero() && !conn.gamma(c, a, b).isZero())
                        e -= j(d, c) * conn.gamma(c, a, b) * Rational(signPow(chart.p(a) * bit(j.parity)));
                }
            }
    return out;
}

}  // namespace superkahler
