#pragma once

// Decision procedures and their reports.
//
// A report is an ordered list of named conditions, each pass / fail /
// skipped, with an optional symbolic witness.  The verdict:
//   kaehler              every condition passes (skipped ones are neutral)
//   almost-kaehler-only  only bracket conditions fail
//   not-almost-kaehler   anything else fails
//
// Bracket conditions are "buttin-bracket" ({B,B} = 0 for the multivector B)
// and "jacobi" (Jacobiator of the bracket of B on coordinate triples).  For
// even B they are equivalent.  For odd B the first is vacuous (every odd
// multivector has {B,B} = 0) and an odd antibracket is not carried by any
// multivector, so it is skipped and the Jacobi row decides.

#include "superkahler/structures.hpp"

#include <json.hpp>

#include <array>
#include <sstream>

namespace superkahler {

enum class Status { pass, fail, skipped };

inline const char* toString(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "skipped";
    }
}

enum class Verdict { kaehler, almostKaehlerOnly, notAlmostKaehler };

inline const char* toString(Verdict v) {
    switch (v) {
        case Verdict::kaehler: return "kaehler";
        case Verdict::almostKaehlerOnly: return "almost-kaehler-only";
        default: return "not-almost-kaehler";
    }
}

struct Condition {
    std::string name;
    Status status = Status::pass;
    bool bracket = false;  // counts as a bracket condition for the verdict
    std::string note;
    std::optional<Witness> witness;
};

struct VerificationReport {
    std::string kind;  // "kaehler", "hyper-kaehler", "cross-check", "search"
    SuperDim superDim;
    std::vector<std::pair<std::string, Parity>> parities;  // e.g. ("J", odd), ("h", even)
    std::vector<std::pair<std::string, std::string>> settings;
    std::vector<Condition> conditions;
    Verdict verdict = Verdict::kaehler;
    bool hasVerdict = true;

    void add(Condition c) { conditions.push_back(std::move(c)); }

    void add(std::string name, const CheckResult& r, bool bracket = false) {
        conditions.push_back({std::move(name), r.pass ? Status::pass : Status::fail, bracket, r.note, r.witness});
    }

    const Condition* find(const std::string& name) const {
        for (const auto& c : conditions)
            if (c.name == name) return &c;
        return nullptr;
    }

    Verdict computeVerdict() const {
        bool bracketFail = false;
        for (const auto& c : conditions) {
            if (c.status != Status::fail) continue;
            if (!c.bracket) return Verdict::notAlmostKaehler;
            bracketFail = true;
        }
        return bracketFail ? Verdict::almostKaehlerOnly : Verdict::kaehler;
    }

    void finish() { verdict = computeVerdict(); }

    nlohmann::ordered_json toJson() const {
        nlohmann::ordered_json j;
        j["schema"] = "superkahler-report/1";
        j["kind"] = kind;
        j["superdim"] = superDim.toString();
        auto& p = j["parity"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : parities) p[k] = toString(v);
        if (!settings.empty()) {
            auto& s = j["settings"] = nlohmann::ordered_json::object();
            for (const auto& [k, v] : settings) s[k] = v;
        }
        auto& cs = j["conditions"] = nlohmann::ordered_json::array();
        for (const auto& c : conditions) {
            nlohmann::ordered_json e;
            e["name"] = c.name;
            e["status"] = toString(c.status);
            if (!c.note.empty()) e["note"] = c.note;
            if (c.witness) e["witness"] = {{"entry", c.witness->where}, {"value", c.witness->value.toString()}};
            cs.push_back(std::move(e));
        }
        if (hasVerdict) j["verdict"] = toString(verdict);
        return j;
    }

    std::string toJsonText() const { return toJson().dump(2) + "\n"; }

    std::string summary() const {
        std::ostringstream os;
        os << kind << " on " << superDim.toString();
        for (const auto& [k, v] : parities) os << "  p(" << k << ")=" << toString(v);
        os << "\n";
        for (const auto& c : conditions) {
            os << "  [" << toString(c.status) << "] " << c.name;
            if (!c.note.empty()) os << ": " << c.note;
            if (c.witness) os << "\n      witness " << c.witness->where << " = " << c.witness->value.toString();
            os << "\n";
        }
        if (hasVerdict) os << "verdict: " << toString(verdict) << "\n";
        return os.str();
    }
};

/// Table of admissible superdimensions:
///   (ev J, ev h)           n, m even
///   (ev J, od h), (od, ev) n even, n = m
///   (od J, od h)           n = m
inline bool checkSuperdimAdmissible(SuperDim d, Parity pJ, Parity pH) {
    if (pJ == Parity::even && pH == Parity::even) return d.n % 2 == 0 && d.m % 2 == 0;
    if (pJ == Parity::odd && pH == Parity::odd) return d.n == d.m;
    return d.n % 2 == 0 && d.n == d.m;
}

struct KaehlerOptions {
    OmegaVariant omega = OmegaVariant::literal;
};

namespace detail {

inline std::string describe(const std::exception& e) { return e.what(); }

// Bracket rows for one bivector; `suffix` distinguishes B_i in hyper reports.
inline void addBracketConditions(VerificationReport& rep, const std::optional<Bivector>& b, const std::string& suffix) {
    const std::string bb = "buttin-bracket" + suffix, jac = "jacobi" + suffix;
    if (!b) {
        rep.add({bb, Status::skipped, true, "no bivector", std::nullopt});
        rep.add({jac, Status::skipped, true, "no bivector", std::nullopt});
        return;
    }
    if (auto mv = b->multivector()) {
        const auto sq = buttinBracket(*mv, *mv);
        if (sq.value.isZero()) rep.add({bb, Status::pass, true, {}, std::nullopt});
        else {
            // witness: first term of {B,B} in canonical order
            rep.add({bb, Status::fail, true, "{B,B} != 0", Witness{"{B,B}", sq.value}});
        }
    } else {
        rep.add({bb, Status::skipped, true,
                 b->parity == Parity::odd ? "odd bracket: {B,B} vanishes for every odd multivector and this "
                                            "bracket has no multivector form; Jacobi row decides"
                                          : "matrix has no multivector form",
                 std::nullopt});
    }
    if (auto v = jacobiViolation(*b))
        rep.add({jac, Status::fail, true, "Jacobiator nonzero",
                 Witness{"(" + b->chart.name(v->a) + "," + b->chart.name(v->b) + "," + b->chart.name(v->c) + ")",
                         v->value}});
    else
        rep.add({jac, Status::pass, true, {}, std::nullopt});
}

// Builds B and records the "bivector" row.  Nullopt when construction fails.
inline std::optional<Bivector> buildBivectorRow(VerificationReport& rep, const BilinearForm& h, const Tensor11& j,
                                                OmegaVariant variant, const std::string& suffix) {
    const std::string name = "bivector" + suffix;
    try {
        Bivector b = buildBivector(h, j, variant);
        if (auto v = b.antisymmetryViolation()) {
            const auto [a, c] = *v;
            const int s = -signPow((h.chart.p(a) + b.k()) * (h.chart.p(c) + b.k()));
            rep.add({name, Status::fail, false, "bracket matrix lacks graded antisymmetry (omega is not a 2-form)",
                     Witness{entryName(a, c), b.pi(a, c) - b.pi(c, a) * Rational(s)}});
            return std::nullopt;
        }
        rep.add({name, Status::pass, false, std::string("p(B) = ") + toString(b.parity), std::nullopt});
        return b;
    } catch (const AlgebraError& e) {
        rep.add({name, Status::fail, false, describe(e), std::nullopt});
        return std::nullopt;
    }
}

}  // namespace detail

/// Runs square, nondegenerate, pseudo-hermitian, superdim, bivector and the
/// bracket rows in that order; every failure is recorded, nothing throws for
/// well-formed tensors on a common chart.
inline VerificationReport verifyKaehler(const Tensor11& j, const BilinearForm& h, KaehlerOptions opt = {}) {
    detail::requireSameChart(h.chart, j.chart, "verifyKaehler");
    VerificationReport rep;
    rep.kind = "kaehler";
    rep.superDim = h.chart.superDim();
    rep.parities = {{"J", j.parity}, {"h", h.parity}};
    rep.settings = {{"omega", toString(opt.omega)}, {"squareSign", j.squareSign > 0 ? "+1" : "-1"}};

    rep.add("square", checkSquare(j));
    rep.add("nondegenerate", checkNondegenerate(h));
    if (!h.isSuperSymmetric()) {
        const auto [a, b] = *h.symmetryViolation(1);
        rep.add({"supersymmetric", Status::fail, false, "h_ab != (-1)^{p(a)p(b)} h_ba",
                 Witness{entryName(a, b), h(a, b) - h(b, a) * Rational(signPow(h.chart.p(a) * h.chart.p(b)))}});
    }
    rep.add("pseudo-hermitian", checkPseudoHermitian(h, j));
    const bool adm = checkSuperdimAdmissible(rep.superDim, j.parity, h.parity);
    rep.add({"superdim-admissible", adm ? Status::pass : Status::fail, false,
             adm ? std::string{} : "superdimension outside the admissible table for this parity pattern", std::nullopt});
    const auto b = detail::buildBivectorRow(rep, h, j, opt.omega, "");
    detail::addBracketConditions(rep, b, "");
    rep.finish();
    return rep;
}

struct DomNabResult {
    bool dOmegaZero = false;
    bool nablaJZero = false;
    std::optional<Witness> dOmegaWitness;
    std::optional<Witness> nablaJWitness;
    bool agree() const { return dOmegaZero == nablaJZero; }
};

/// d(omega) = 0 and nabla J = 0 computed independently.  Throws when omega
/// is not a 2-form or h is outside the supported inversion class.
inline DomNabResult crossCheckDomNab(const Tensor11& j, const BilinearForm& h,
                                     OmegaVariant variant = OmegaVariant::literal) {
    detail::requireSameChart(h.chart, j.chart, "crossCheckDomNab");
    const Omega w = buildOmega(h, j, variant);
    if (!w.form) throw CalculusError("crossCheckDomNab: omega is not a 2-form (is J^2 = +id?)");
    DomNabResult r;
    const auto dw = deRham(*w.form);
    r.dOmegaZero = dw.isZero();
    if (!r.dOmegaZero) r.dOmegaWitness = Witness{"d(omega)", dw.value};
    const auto nab = covariantDerivative(j, leviCivita(h));
    r.nablaJZero = true;
    for (std::size_t a = 0; a < nab.size() && r.nablaJZero; ++a)
        for (std::size_t d = 0; d < nab[a].size() && r.nablaJZero; ++d)
            for (std::size_t b = 0; b < nab[a].size(); ++b)
                if (!nab[a](d, b).isZero()) {
                    r.nablaJZero = false;
                    r.nablaJWitness = Witness{"(nabla_" + h.chart.name(a) + " J)" + entryName(d, b), nab[a](d, b)};
                    break;
                }
    return r;
}

/// Report form of the cross-check.  On purely even charts a disagreement is a
/// failure; on super charts it is recorded as a note only.
inline VerificationReport crossCheckReport(const Tensor11& j, const BilinearForm& h,
                                           OmegaVariant variant = OmegaVariant::literal) {
    VerificationReport rep;
    rep.kind = "cross-check";
    rep.superDim = h.chart.superDim();
    rep.parities = {{"J", j.parity}, {"h", h.parity}};
    const auto r = crossCheckDomNab(j, h, variant);
    rep.add({"d-omega-zero", r.dOmegaZero ? Status::pass : Status::fail, false, {}, r.dOmegaWitness});
    rep.add({"nabla-J-zero", r.nablaJZero ? Status::pass : Status::fail, false, {}, r.nablaJWitness});
    if (rep.superDim.m == 0)
        rep.add({"flags-agree", r.agree() ? Status::pass : Status::fail, false,
                 r.agree() ? std::string{} : "d(omega)=0 and nabla J=0 disagree on an even chart", std::nullopt});
    else
        rep.add({"flags-agree", Status::skipped, false,
                 r.agree() ? "agree (not enforced on super charts)" : "disagree (logged, not enforced on super charts)",
                 std::nullopt});
    rep.finish();
    return rep;
}

/// Signs s(i,j) in 1/2 (s(i,j) J_i J_j + s(j,i) J_j J_i) = J_k, for the six
/// ordered pairs (1,2) (2,1) (1,3) (3,1) (2,3) (3,2).
struct QuaternionSignTable {
    std::array<int, 6> signs{1, 1, 1, 1, 1, 1};

    static std::size_t slot(int i, int j) {
        static const int table[3][3] = {{-1, 0, 2}, {1, -1, 4}, {3, 5, -1}};
        const int s = table[i - 1][j - 1];
        if (s < 0) throw std::invalid_argument("quaternion sign table: i == j");
        return static_cast<std::size_t>(s);
    }
    int operator()(int i, int j) const { return signs[slot(i, j)]; }

    /// "+1,-1,+1,+1,-1,+1" (commas or spaces), order as above.
    static QuaternionSignTable parse(const std::string& text) {
        QuaternionSignTable t;
        std::string s = text;
        for (auto& ch : s)
            if (ch == ',') ch = ' ';
        std::istringstream is(s);
        std::string tok;
        std::size_t k = 0;
        while (is >> tok) {
            if (k == 6) throw std::invalid_argument("sign table needs exactly six entries");
            if (tok == "+1" || tok == "1" || tok == "+") t.signs[k] = 1;
            else if (tok == "-1" || tok == "-") t.signs[k] = -1;
            else throw std::invalid_argument("sign table entry '" + tok + "' is not +1 or -1");
            ++k;
        }
        if (k != 6) throw std::invalid_argument("sign table needs exactly six entries");
        return t;
    }

    std::string toString() const {
        std::string r;
        for (std::size_t k = 0; k < 6; ++k) r += (k ? "," : "") + std::string(signs[k] > 0 ? "+1" : "-1");
        return r;
    }
};

inline VerificationReport verifyHyperKaehler(const std::array<Tensor11, 3>& js, const BilinearForm& h,
                                             const QuaternionSignTable& signs = {}, KaehlerOptions opt = {}) {
    for (const auto& j : js) detail::requireSameChart(h.chart, j.chart, "verifyHyperKaehler");
    VerificationReport rep;
    rep.kind = "hyper-kaehler";
    rep.superDim = h.chart.superDim();
    rep.parities = {{"J1", js[0].parity}, {"J2", js[1].parity}, {"J3", js[2].parity}, {"h", h.parity}};
    rep.settings = {{"omega", toString(opt.omega)}, {"signs", signs.toString()}};

    rep.add("nondegenerate", checkNondegenerate(h));
    static const int perms[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
    for (const auto& p : perms) {
        const int i = p[0], jj = p[1], k = p[2];
        const Matrix& a = js[i - 1].components;
        const Matrix& b = js[jj - 1].components;
        const Matrix lhs = (a * b * Rational(signs(i, jj)) + b * a * Rational(signs(jj, i))) * Rational(1, 2);
        const Matrix diff = lhs - js[k - 1].components;
        const std::string name =
            "quaternion(" + std::to_string(i) + "," + std::to_string(jj) + "," + std::to_string(k) + ")";
        CheckResult r = CheckResult::ok();
        for (std::size_t x = 0; x < diff.size() && r.pass; ++x)
            for (std::size_t y = 0; y < diff.size(); ++y)
                if (!diff(x, y).isZero()) {
                    r = CheckResult::fail("1/2(J" + std::to_string(i) + "J" + std::to_string(jj) + " + J" +
                                              std::to_string(jj) + "J" + std::to_string(i) + ") != J" +
                                              std::to_string(k),
                                          Witness{entryName(x, y), diff(x, y)});
                    break;
                }
        rep.add(name, r);
    }
    for (int i = 0; i < 3; ++i)
        rep.add("pseudo-hermitian(J" + std::to_string(i + 1) + ")", checkPseudoHermitian(h, js[i]));
    for (int i = 0; i < 3; ++i) {
        const std::string suffix = "(B" + std::to_string(i + 1) + ")";
        const auto b = detail::buildBivectorRow(rep, h, js[i], opt.omega, suffix);
        detail::addBracketConditions(rep, b, suffix);
    }
    rep.finish();
    return rep;
}

}  // namespace superkahler
