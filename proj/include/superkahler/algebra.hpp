#pragma once

// Exact supercommutative polynomial arithmetic over the rationals.
//
// A SuperPolynomial is an element of Q[x_1..x_n] (x) Lambda[xi_1..xi_m] over
// an ordered list of variables, each even or odd.  Odd variables square to
// zero and anticommute; every reordering of odd factors is tracked with the
// Koszul sign.  Coefficients are GMP rationals, so every identity checked by
// this library is an exact polynomial identity.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace superkahler {

using Rational = mpq_class;

enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) noexcept {
    return static_cast<Parity>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}
constexpr Parity& operator+=(Parity& a, Parity b) noexcept { return a = a + b; }
constexpr Parity flip(Parity p) noexcept { return p + Parity::odd; }
constexpr int bit(Parity p) noexcept { return static_cast<int>(p); }
constexpr Parity parityOfBit(int b) noexcept { return (b & 1) ? Parity::odd : Parity::even; }

/// (-1)^k for an integer exponent.
constexpr int signPow(int k) noexcept { return (k & 1) ? -1 : 1; }

inline const char* toString(Parity p) noexcept { return p == Parity::even ? "ev" : "od"; }

inline Parity parseParity(const std::string& s) {
    if (s == "ev" || s == "even" || s == "0") return Parity::even;
    if (s == "od" || s == "odd" || s == "1") return Parity::odd;
    throw std::invalid_argument("unknown parity '" + s + "' (expected ev|od)");
}

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VariableSpec {
    std::string name;
    Parity parity = Parity::even;

    friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

/// Ordered list of variables with unique names.  Shared (immutably) by all
/// polynomials living over it.
class VariableList {
public:
    explicit VariableList(std::vector<VariableSpec> vars) : vars_(std::move(vars)) {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].name.empty()) throw AlgebraError("empty variable name");
            if (!index_.emplace(vars_[i].name, i).second)
                throw AlgebraError("duplicate variable name '" + vars_[i].name + "'");
        }
    }

    std::size_t size() const noexcept { return vars_.size(); }
    const VariableSpec& operator[](std::size_t i) const { return vars_[i]; }
    const std::vector<VariableSpec>& specs() const noexcept { return vars_; }
    bool isOdd(std::size_t i) const { return vars_[i].parity == Parity::odd; }

    std::optional<std::size_t> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t indexOf(const std::string& name) const {
        auto idx = find(name);
        if (!idx) throw AlgebraError("unknown variable '" + name + "'");
        return *idx;
    }

    friend bool operator==(const VariableList& a, const VariableList& b) { return a.vars_ == b.vars_; }

private:
    std::vector<VariableSpec> vars_;
    std::unordered_map<std::string, std::size_t> index_;
};

using VarsPtr = std::shared_ptr<const VariableList>;

inline VarsPtr makeVars(std::vector<VariableSpec> specs) {
    return std::make_shared<const VariableList>(std::move(specs));
}

inline bool sameVars(const VarsPtr& a, const VarsPtr& b) { return a == b || (a && b && *a == *b); }

/// Exponent vector, one entry per variable; odd variables carry 0 or 1.
struct Monomial {
    std::vector<std::uint16_t> exps;

    unsigned degree() const {
        unsigned d = 0;
        for (auto e : exps) d += e;
        return d;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical monomial order: higher total degree first, then lexicographically
/// larger exponent vectors first (so x1 precedes x2).
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const unsigned da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.exps > b.exps;
    }
};

class SuperPolynomial {
public:
    using Terms = std::map<Monomial, Rational, MonomialOrder>;

    SuperPolynomial() = default;
    explicit SuperPolynomial(VarsPtr vars) : vars_(std::move(vars)) {}

    static SuperPolynomial constant(VarsPtr vars, const Rational& c) {
        SuperPolynomial p(vars);
        if (c != 0) p.terms_.emplace(Monomial{std::vector<std::uint16_t>(p.vars_->size(), 0)}, c);
        return p;
    }

    static SuperPolynomial variable(VarsPtr vars, std::size_t index) {
        if (index >= vars->size()) throw AlgebraError("variable index out of range");
        SuperPolynomial p(vars);
        Monomial m{std::vector<std::uint16_t>(vars->size(), 0)};
        m.exps[index] = 1;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }

    static SuperPolynomial variable(VarsPtr vars, const std::string& name) {
        const auto idx = vars->indexOf(name);
        return variable(std::move(vars), idx);
    }

    /// Builds c * (product of variables in the listed order), applying the
    /// Koszul sign needed to bring the odd factors into canonical order.
    static SuperPolynomial product(VarsPtr vars, const std::vector<std::size_t>& factors,
                                   const Rational& c = 1) {
        SuperPolynomial p = constant(vars, c);
        for (auto f : factors) p = p * variable(vars, f);
        return p;
    }

    const VarsPtr& vars() const noexcept { return vars_; }
    const Terms& terms() const noexcept { return terms_; }
    bool isZero() const noexcept { return terms_.empty(); }
    std::size_t termCount() const noexcept { return terms_.size(); }

    bool isConstant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
    }
    Rational constantTerm() const {
        for (const auto& [m, c] : terms_)
            if (m.degree() == 0) return c;
        return 0;
    }

    /// Parity of a single monomial over this polynomial's variable list.
    Parity monomialParity(const Monomial& m) const {
        int k = 0;
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            if (vars_->isOdd(i)) k += m.exps[i];
        return parityOfBit(k);
    }

    /// Shared parity of all monomials; nullopt when inhomogeneous.  The zero
    /// polynomial is homogeneous of both parities and reports even.
    std::optional<Parity> parity() const {
        std::optional<Parity> p;
        for (const auto& [m, c] : terms_) {
            const Parity q = monomialParity(m);
            if (!p) p = q;
            else if (*p != q) return std::nullopt;
        }
        return p.value_or(Parity::even);
    }

    bool hasParity(Parity p) const {
        for (const auto& [m, c] : terms_)
            if (monomialParity(m) != p) return false;
        return true;
    }

    SuperPolynomial part(Parity p) const {
        SuperPolynomial r(vars_);
        for (const auto& [m, c] : terms_)
            if (monomialParity(m) == p) r.terms_.emplace(m, c);
        return r;
    }

    /// Sum of the exponents over the given variable indices, maximized over
    /// terms (-1 for the zero polynomial).
    int maxDegreeIn(const std::vector<std::size_t>& indices) const {
        int best = -1;
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (auto i : indices) d += m.exps[i];
            best = std::max(best, d);
        }
        return best;
    }
    int minDegreeIn(const std::vector<std::size_t>& indices) const {
        int best = -1;
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (auto i : indices) d += m.exps[i];
            best = best < 0 ? d : std::min(best, d);
        }
        return best;
    }

    friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
        if (a.terms_.empty() && b.terms_.empty()) return true;
        return sameVars(a.vars_, b.vars_) && a.terms_ == b.terms_;
    }

    SuperPolynomial operator-() const {
        SuperPolynomial r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    SuperPolynomial& operator+=(const SuperPolynomial& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_) accumulate(m, c);
        return *this;
    }
    SuperPolynomial& operator-=(const SuperPolynomial& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_) accumulate(m, -c);
        return *this;
    }
    friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
    friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }

    SuperPolynomial& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        else
            for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend SuperPolynomial operator*(SuperPolynomial a, const Rational& s) { return a *= s; }
    friend SuperPolynomial operator*(const Rational& s, SuperPolynomial a) { return a *= s; }

    friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
        SuperPolynomial r(commonVars(a, b));
        if (a.terms_.empty() || b.terms_.empty()) return r;
        const VariableList& vars = *r.vars_;
        Monomial scratch;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                int sign = 1;
                if (!multiplyMonomials(vars, ma, mb, scratch, sign)) continue;
                Rational prod = ca * cb;
                if (sign < 0) prod = -prod;
                r.accumulate(scratch, prod);
            }
        }
        return r;
    }

    SuperPolynomial& operator*=(const SuperPolynomial& o) { return *this = *this * o; }

    /// Left derivative: the odd variable is first moved to the leftmost
    /// position of each monomial (Koszul sign), then struck.
    SuperPolynomial leftDerivative(std::size_t v) const { return derivative(v, /*fromLeft=*/true); }
    /// Right derivative: the odd variable is moved to the rightmost position.
    SuperPolynomial rightDerivative(std::size_t v) const { return derivative(v, /*fromLeft=*/false); }
    SuperPolynomial leftDerivative(const std::string& name) const {
        return leftDerivative(requireVars().indexOf(name));
    }
    SuperPolynomial rightDerivative(const std::string& name) const {
        return rightDerivative(requireVars().indexOf(name));
    }

    /// Projection setting every odd variable to zero.
    SuperPolynomial body() const {
        SuperPolynomial r(vars_);
        for (const auto& [m, c] : terms_) {
            bool pure = true;
            for (std::size_t i = 0; i < m.exps.size() && pure; ++i)
                if (vars_->isOdd(i) && m.exps[i]) pure = false;
            if (pure) r.terms_.emplace(m, c);
        }
        return r;
    }

    /// Value at the origin of the chart: all variables set to zero.
    Rational valueAtOrigin() const { return constantTerm(); }

    /// Re-expresses the polynomial over a list that extends the current one
    /// by appending variables (the current list must be a prefix).
    SuperPolynomial embedInto(const VarsPtr& target) const {
        const VariableList& src = requireVars();
        if (target->size() < src.size()) throw AlgebraError("embedding target is smaller than source");
        for (std::size_t i = 0; i < src.size(); ++i)
            if (!((*target)[i] == src[i])) throw AlgebraError("embedding target does not extend source");
        SuperPolynomial r(target);
        for (const auto& [m, c] : terms_) {
            Monomial e{m.exps};
            e.exps.resize(target->size(), 0);
            r.terms_.emplace(std::move(e), c);
        }
        return r;
    }

    /// Inverse of embedInto: drops trailing variables, which must not occur.
    SuperPolynomial restrictTo(const VarsPtr& target) const {
        SuperPolynomial r(target);
        for (const auto& [m, c] : terms_) {
            for (std::size_t i = target->size(); i < m.exps.size(); ++i)
                if (m.exps[i]) throw AlgebraError("restriction would drop a variable that occurs");
            Monomial e{m.exps};
            e.exps.resize(target->size());
            r.terms_.emplace(std::move(e), c);
        }
        return r;
    }

    /// Canonical text: monomials in MonomialOrder, explicit signs, factors in
    /// variable-list order, "0" for the zero polynomial.
    std::string toString() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            std::string factors;
            for (std::size_t i = 0; i < m.exps.size(); ++i) {
                if (!m.exps[i]) continue;
                if (!factors.empty()) factors += "*";
                factors += (*vars_)[i].name;
                if (m.exps[i] > 1) factors += "^" + std::to_string(m.exps[i]);
            }
            if (factors.empty()) os << mag.get_str();
            else if (mag == 1) os << factors;
            else os << mag.get_str() << "*" << factors;
        }
        return os.str();
    }

    // Low-level access for code that builds polynomials term by term.
    void addTerm(const Monomial& m, const Rational& c) {
        if (m.exps.size() != requireVars().size()) throw AlgebraError("monomial size mismatch");
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            if (vars_->isOdd(i) && m.exps[i] > 1) return;  // xi^2 = 0
        accumulate(m, c);
    }

private:
    const VariableList& requireVars() const {
        if (!vars_) throw AlgebraError("polynomial has no variable list");
        return *vars_;
    }

    static VarsPtr commonVars(const SuperPolynomial& a, const SuperPolynomial& b) {
        if (!a.vars_) return b.vars_;
        if (!b.vars_) return a.vars_;
        if (!sameVars(a.vars_, b.vars_)) throw AlgebraError("variable-list mismatch");
        return a.vars_;
    }

    void adopt(const SuperPolynomial& o) { vars_ = commonVars(*this, o); }

    void accumulate(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Product of monomials; false when an odd variable repeats.  The sign
    // counts pairs (odd i in a, odd j in b) with i > j: each is one
    // transposition when merging b's odd factors into a's.
    static bool multiplyMonomials(const VariableList& vars, const Monomial& a, const Monomial& b,
                                  Monomial& out, int& sign) {
        const std::size_t n = vars.size();
        out.exps.resize(n);
        int oddInBBelow = 0;
        int swaps = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (vars.isOdd(i)) {
                if (a.exps[i] && b.exps[i]) return false;
                if (a.exps[i]) swaps += oddInBBelow;
                if (b.exps[i]) ++oddInBBelow;
                out.exps[i] = static_cast<std::uint16_t>(a.exps[i] | b.exps[i]);
            } else {
                out.exps[i] = static_cast<std::uint16_t>(a.exps[i] + b.exps[i]);
            }
        }
        sign = signPow(swaps);
        return true;
    }

    SuperPolynomial derivative(std::size_t v, bool fromLeft) const {
        const VariableList& vars = requireVars();
        if (v >= vars.size()) throw AlgebraError("unknown variable index");
        SuperPolynomial r(vars_);
        const bool odd = vars.isOdd(v);
        for (const auto& [m, c] : terms_) {
            if (!m.exps[v]) continue;
            Monomial d{m.exps};
            Rational coeff = c;
            if (odd) {
                int passed = 0;
                if (fromLeft) {
                    for (std::size_t i = 0; i < v; ++i) passed += vars.isOdd(i) ? m.exps[i] : 0;
                } else {
                    for (std::size_t i = v + 1; i < vars.size(); ++i) passed += vars.isOdd(i) ? m.exps[i] : 0;
                }
                if (passed & 1) coeff = -coeff;
                d.exps[v] = 0;
            } else {
                coeff *= m.exps[v];
                d.exps[v] = static_cast<std::uint16_t>(m.exps[v] - 1);
            }
            r.accumulate(d, coeff);
        }
        return r;
    }

    VarsPtr vars_;
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const SuperPolynomial& p) { return os << p.toString(); }

}  // namespace superkahler
