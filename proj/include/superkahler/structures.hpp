#pragma once

// The pair (J, h), the derived omega and B, and the pointwise checks.
//
// Conventions (shared by everything here):
//   h(X,Y) = (-1)^{p(X)p(Y)} h(Y,X)                       supersymmetry
//   h(e_c f, e_d g) = (-1)^{p(f)p(d)} h_cd f g             frame expansion
//   h(X,Y) = (-1)^{p(X)p(J)} h(JX, JY)                     pseudo-Hermitian
//   w(X,Y) = h(JX, Y)                                       omega
// For odd J the pseudo-Hermitian identity applied twice gives
// h = (-1)^{p(J)} h, so only h = 0 satisfies it; the check is kept literal.

#include "superkahler/calculus.hpp"

#include <string>

namespace superkahler {

struct Witness {
    std::string where;  // e.g. "(2,3)"
    SuperPolynomial value;
};

struct CheckResult {
    bool pass = true;
    std::optional<Witness> witness;
    std::string note;

    static CheckResult ok(std::string note = {}) { return {true, std::nullopt, std::move(note)}; }
    static CheckResult fail(std::string note, std::optional<Witness> w = std::nullopt) {
        return {false, std::move(w), std::move(note)};
    }
};

inline std::string entryName(std::size_t a, std::size_t b) {
    return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
}

namespace detail {
inline void requireSameChart(const Chart& a, const Chart& b, const char* what) {
    if (!(a == b)) throw TensorError(std::string(what) + ": chart mismatch");
}
}  // namespace detail

/// J^2 = squareSign * id, exactly.  Witness: first entry of J^2 - s*id.
inline CheckResult checkSquare(const Tensor11& j) {
    const std::size_t n = j.chart.size();
    const Matrix diff = j.components * j.components -
                        Matrix::identity(n, j.chart.coordinates()) * Rational(j.squareSign);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!diff(a, b).isZero())
                return CheckResult::fail("J^2 != " + std::string(j.squareSign > 0 ? "+" : "-") + "id",
                                         Witness{entryName(a, b), diff(a, b)});
    return CheckResult::ok();
}

/// h(Je_a, Je_b) on the frame.
inline Matrix pullBackByJ(const BilinearForm& h, const Tensor11& j) {
    const Chart& ch = h.chart;
    const std::size_t n = ch.size();
    const int pj = bit(j.parity);
    Matrix r(n, ch.coordinates());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                if (j(c, a).isZero()) continue;
                for (std::size_t d = 0; d < n; ++d) {
                    if (h(c, d).isZero() || j(d, b).isZero()) continue;
                    r(a, b) += h(c, d) * j(c, a) * j(d, b) * Rational(signPow((ch.p(c) + ch.p(a) + pj) * ch.p(d)));
                }
            }
    return r;
}

/// h(e_a,e_b) = (-1)^{p(a)p(J)} h(Je_a, Je_b) for all frame pairs, which
/// suffices by linearity over functions.
inline CheckResult checkPseudoHermitian(const BilinearForm& h, const Tensor11& j) {
    detail::requireSameChart(h.chart, j.chart, "checkPseudoHermitian");
    const Chart& ch = h.chart;
    const Matrix pulled = pullBackByJ(h, j);
    for (std::size_t a = 0; a < ch.size(); ++a)
        for (std::size_t b = 0; b < ch.size(); ++b) {
            const auto r = h(a, b) - pulled(a, b) * Rational(signPow(ch.p(a) * bit(j.parity)));
            if (!r.isZero()) return CheckResult::fail("h(X,Y) != (-1)^{p(X)p(J)} h(JX,JY)", Witness{entryName(a, b), r});
        }
    return CheckResult::ok();
}

enum class OmegaVariant {
    literal,        // w(X,Y) = h(JX, Y)
    signDecorated,  // w(X,Y) = (-1)^{p(X)p(J)} h(JX, Y)
};

inline const char* toString(OmegaVariant v) { return v == OmegaVariant::literal ? "literal" : "sign-decorated"; }

struct Omega {
    BilinearForm gram;
    /// Present when the Gram matrix is super-antisymmetric, i.e. omega is a 2-form.
    std::optional<DifferentialForm> form;
};

/// Gram matrix w_ab = w(e_a, e_b) = sum_c (-1)^{(p(c)+p(a)+p(J))p(b)} h_cb J^c_a.
/// With J^2 = s*id and h pseudo-Hermitian, w(Y,X) = s (-1)^{p(X)p(Y)} w(X,Y),
/// so omega is a 2-form only for s = -1.
inline Omega buildOmega(const BilinearForm& h, const Tensor11& j, OmegaVariant variant = OmegaVariant::literal) {
    detail::requireSameChart(h.chart, j.chart, "buildOmega");
    const Chart& ch = h.chart;
    const std::size_t n = ch.size();
    const int pj = bit(j.parity);
    Matrix w(n, ch.coordinates());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c)
                if (!h(c, b).isZero() && !j(c, a).isZero())
                    w(a, b) += h(c, b) * j(c, a) * Rational(signPow((ch.p(c) + ch.p(a) + pj) * ch.p(b)));
            if (variant == OmegaVariant::signDecorated && (ch.p(a) * pj)) w(a, b) = -w(a, b);
        }
    Omega out{BilinearForm(ch, w, h.parity + j.parity), std::nullopt};
    if (out.gram.isSuperAntisymmetric()) out.form = formFromGram(ch, w);
    return out;
}

/// The body Gram matrix at the origin is invertible.  The parity blocks
/// make this equivalent to: even h has invertible even-even and odd-odd
/// blocks; odd h has invertible square off-diagonal blocks (n = m).
inline CheckResult checkNondegenerate(const BilinearForm& h) {
    const auto& ch = h.chart;
    const unsigned n = ch.superDim().n, m = ch.superDim().m;
    if (h.parity == Parity::odd && n != m)
        return CheckResult::fail("odd form on " + ch.superDim().toString() + ": pairing blocks are not square");
    if (!invertRational(valueAtOrigin(h.components.map([](const SuperPolynomial& p) { return p.body(); }))))
        return CheckResult::fail("body of the Gram matrix at the origin is singular");
    return CheckResult::ok();
}

/// The bivector of (h, J), realised as the inverse of omega:  X_a = sum_b pi^{ab} d/du_b is
/// the Hamiltonian field of u_a, i(X_a) w = -(-1)^{p(a)+p(w)} du_a.  h must
/// be invertible in the supported class (raising indices through h is what
/// makes B well defined); omega's Gram matrix is then inverted.
inline Bivector buildBivector(const BilinearForm& h, const Tensor11& j,
                              OmegaVariant variant = OmegaVariant::literal) {
    (void)invertSupported(h.components);  // throws DegenerateMatrix / UnsupportedInversion
    const Omega w = buildOmega(h, j, variant);
    return gramToBivector(h.chart, w.gram.components, w.gram.parity);
}

}  // namespace superkahler
