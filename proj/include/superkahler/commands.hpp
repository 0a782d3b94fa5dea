#pragma once

// Subcommands behind the superkahler executable.  Each returns its exit
// code, the text for stdout/stderr and the JSON report; nothing here touches
// the process state, so tests drive the commands in-process.
//
// Exit codes: 0 kaehler, 10 almost-kaehler-only, 20 not-almost-kaehler,
// 2 input error, 1 self-test failure.

#include "superkahler/chartfile.hpp"
#include "superkahler/random.hpp"

namespace superkahler {

struct CommandOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    unsigned maxDim = 6;
    QuaternionSignTable signs;
    OmegaVariant omega = OmegaVariant::literal;
};

struct CommandResult {
    int exitCode = 0;
    std::string out;
    std::string err;
    std::string report;  // JSON, empty when the command has none
};

inline int exitCodeFor(Verdict v) {
    switch (v) {
        case Verdict::kaehler: return 0;
        case Verdict::almostKaehlerOnly: return 10;
        default: return 20;
    }
}

namespace detail {

inline CommandResult inputError(const std::string& msg) { return {2, {}, "error: " + msg + "\n", {}}; }

inline std::string warningText(const ChartFile& f) {
    std::string r;
    for (const auto& w : f.warnings) r += "warning: " + w + "\n";
    return r;
}

// Declared omega / B entries are compared with the derived ones.
inline void compareDeclared(VerificationReport& rep, const ChartFile& f, const Tensor11& j, const BilinearForm& h,
                            OmegaVariant variant) {
    for (const auto* e : f.ofKind(TensorKind::omega)) {
        const auto w = buildOmega(h, j, variant);
        const Matrix diff = e->components - w.gram.components;
        Condition c{"declared-omega(" + e->name + ")", Status::pass, false, {}, std::nullopt};
        if (e->parity != w.gram.parity) c = {c.name, Status::fail, false, "declared parity differs", std::nullopt};
        for (std::size_t a = 0; a < diff.size() && c.status == Status::pass; ++a)
            for (std::size_t b = 0; b < diff.size(); ++b)
                if (!diff(a, b).isZero()) {
                    c = {c.name, Status::fail, false, "declared omega differs from h(J-,-)", Witness{entryName(a, b), diff(a, b)}};
                    break;
                }
        rep.add(std::move(c));
    }
    for (const auto* e : f.ofKind(TensorKind::B)) {
        Condition c{"declared-bivector(" + e->name + ")", Status::pass, false, {}, std::nullopt};
        try {
            const Bivector b = buildBivector(h, j, variant);
            const Matrix diff = e->components - b.pi;
            if (e->parity != b.parity) c = {c.name, Status::fail, false, "declared parity differs", std::nullopt};
            for (std::size_t a = 0; a < diff.size() && c.status == Status::pass; ++a)
                for (std::size_t bb = 0; bb < diff.size(); ++bb)
                    if (!diff(a, bb).isZero()) {
                        c = {c.name, Status::fail, false, "declared B differs from the derived bivector",
                             Witness{entryName(a, bb), diff(a, bb)}};
                        break;
                    }
        } catch (const AlgebraError& ex) {
            c = {c.name, Status::fail, false, ex.what(), std::nullopt};
        }
        rep.add(std::move(c));
    }
}

template <class F>
CommandResult guarded(F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        return inputError(e.what());
    } catch (const std::invalid_argument& e) {
        return inputError(e.what());
    } catch (const AlgebraError& e) {
        return inputError(e.what());
    } catch (const std::runtime_error& e) {
        return inputError(e.what());
    }
}

inline CommandResult fromReport(const VerificationReport& rep, std::string err = {}) {
    return {exitCodeFor(rep.verdict), rep.summary(), std::move(err), rep.toJsonText()};
}

}  // namespace detail

/// check: one J and one h (plus optional declared omega / B entries).
inline CommandResult commandCheck(const ChartFile& f, const CommandOptions& opt = {}) {
    return detail::guarded([&] {
        const auto js = f.ofKind(TensorKind::J);
        const auto hs = f.ofKind(TensorKind::h);
        if (js.size() != 1 || hs.size() != 1)
            return detail::inputError("check needs exactly one tensor of kind J and one of kind h (found " +
                                      std::to_string(js.size()) + " and " + std::to_string(hs.size()) + ")");
        const Tensor11 j = f.tensor11(*js[0]);
        const BilinearForm h = f.form(*hs[0]);
        auto rep = verifyKaehler(j, h, {opt.omega});
        detail::compareDeclared(rep, f, j, h, opt.omega);
        rep.finish();
        return detail::fromReport(rep, detail::warningText(f));
    });
}

/// check-hyper: three J (in file order J1, J2, J3) and one h.
inline CommandResult commandCheckHyper(const ChartFile& f, const CommandOptions& opt = {}) {
    return detail::guarded([&] {
        const auto js = f.ofKind(TensorKind::J);
        const auto hs = f.ofKind(TensorKind::h);
        if (js.size() != 3 || hs.size() != 1)
            return detail::inputError("check-hyper needs three tensors of kind J and one of kind h");
        auto rep = verifyHyperKaehler({f.tensor11(*js[0]), f.tensor11(*js[1]), f.tensor11(*js[2])}, f.form(*hs[0]),
                                      opt.signs, {opt.omega});
        return detail::fromReport(rep, detail::warningText(f));
    });
}

inline CommandResult commandCrossCheck(const ChartFile& f, const CommandOptions& opt = {}) {
    return detail::guarded([&] {
        const auto js = f.ofKind(TensorKind::J);
        const auto hs = f.ofKind(TensorKind::h);
        if (js.size() != 1 || hs.size() != 1)
            return detail::inputError("cross-check needs exactly one tensor of kind J and one of kind h");
        auto rep = crossCheckReport(f.tensor11(*js[0]), f.form(*hs[0]), opt.omega);
        return detail::fromReport(rep, detail::warningText(f));
    });
}

/// Reads the file, then dispatches; unreadable files are input errors.
template <class Command>
CommandResult onFile(const std::string& path, const CommandOptions& opt, Command cmd) {
    ChartFile f;
    try {
        f = readChartFile(path);
    } catch (const ParseError& e) {
        return detail::inputError(path + ":" + e.what());
    } catch (const std::exception& e) {
        return detail::inputError(e.what());
    }
    return cmd(f, opt);
}

/// Admissibility grids for n, m = 0..bound, one per parity pattern.
inline CommandResult commandTable(unsigned bound) {
    CommandResult r;
    nlohmann::ordered_json j;
    j["schema"] = "superkahler-table/1";
    j["bound"] = bound;
    auto& cells = j["patterns"] = nlohmann::ordered_json::array();
    std::ostringstream os;
    const std::pair<Parity, Parity> patterns[] = {
        {Parity::even, Parity::even}, {Parity::even, Parity::odd}, {Parity::odd, Parity::even}, {Parity::odd, Parity::odd}};
    for (auto [pj, ph] : patterns) {
        os << "p(J)=" << toString(pj) << " p(h)=" << toString(ph) << "   rows n, columns m, '+' admissible\n     ";
        for (unsigned m = 0; m <= bound; ++m) os << " " << m;
        os << "\n";
        nlohmann::ordered_json grid = nlohmann::ordered_json::array();
        for (unsigned n = 0; n <= bound; ++n) {
            os << "  " << n << "  ";
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (unsigned m = 0; m <= bound; ++m) {
                const bool ok = checkSuperdimAdmissible({n, m}, pj, ph);
                os << " " << (ok ? '+' : '.');
                row.push_back(ok);
            }
            os << "\n";
            grid.push_back(std::move(row));
        }
        os << "\n";
        cells.push_back({{"J", toString(pj)}, {"h", toString(ph)}, {"admissible", std::move(grid)}});
    }
    r.out = os.str();
    r.report = j.dump(2) + "\n";
    return r;
}

/// search: emits the standard model as a ChartFile, or the obstruction plus
/// randomized evidence for inadmissible cells.
inline CommandResult commandSearch(const std::string& sdimText, const std::string& pJText, const std::string& pHText,
                                   const CommandOptions& opt = {}) {
    return detail::guarded([&] {
        const SuperDim d = parseSuperDim(sdimText);
        const Parity pj = parseParity(pJText), ph = parseParity(pHText);
        if (d.total() > opt.maxDim)
            return detail::inputError("superdimension " + d.toString() + " exceeds --max-dim " + std::to_string(opt.maxDim));
        auto model = standardModel(d, pj, ph);
        CommandResult r;
        if (model.model) {
            ChartFile f = chartFileFor(model.model->j, model.model->h);
            f.comments.push_back("standard model on " + d.toString() + ", p(J)=" + toString(pj) + " p(h)=" + toString(ph));
            if (!model.obstruction.empty()) {
                f.comments.push_back(model.obstruction);
                r.err = "warning: " + model.obstruction + "\n";
            }
            r.out = writeChartFile(f);
            auto rep = verifyKaehler(model.model->j, model.model->h, {opt.omega});
            rep.kind = "search";
            rep.settings.insert(rep.settings.begin(), {"result", "standard-model"});
            r.report = rep.toJsonText();
            return r;
        }
        const auto ev = randomizedCounterexampleSearch(d, pj, ph, opt.trials, opt.seed);
        const auto rep = ev.report();
        r.out = "obstruction: " + model.obstruction + "\n" + rep.summary();
        r.report = rep.toJsonText();
        return r;
    });
}

/// Brute-force bracket against the kernel on random pairs, charts up to 2|2.
inline CommandResult commandOracleSelftest(const CommandOptions& opt = {}) {
    RandomPoly gen(opt.seed);
    VerificationReport rep;
    rep.kind = "oracle-selftest";
    rep.hasVerdict = false;
    rep.superDim = {2, 2};
    rep.settings = {{"seed", std::to_string(opt.seed)}, {"trials", std::to_string(opt.trials)}};
    bool allOk = true;
    for (auto d : {SuperDim{1, 1}, SuperDim{2, 0}, SuperDim{0, 2}, SuperDim{2, 1}, SuperDim{1, 2}, SuperDim{2, 2}}) {
        const Chart ch = Chart::standard(d);
        std::optional<Witness> bad;
        for (std::size_t t = 0; t < opt.trials && !bad; ++t) {
            MultivectorField p{ch, gen.homogeneous(ch.multivectorVars(), gen.coin() ? Parity::odd : Parity::even, 3, 3)};
            MultivectorField q{ch, gen.homogeneous(ch.multivectorVars(), gen.coin() ? Parity::odd : Parity::even, 3, 3)};
            const auto diff = bruteForceBracketOracle(p, q).value - buttinBracket(p, q).value;
            if (!diff.isZero()) bad = Witness{"trial " + std::to_string(t), diff};
        }
        allOk = allOk && !bad;
        rep.add({"oracle-agreement(" + d.toString() + ")", bad ? Status::fail : Status::pass, false,
                 std::to_string(opt.trials) + " random pairs", bad});
    }
    return {allOk ? 0 : 1, rep.summary(), {}, rep.toJsonText()};
}

}  // namespace superkahler
