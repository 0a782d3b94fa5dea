#include "support/fixtures.hpp"

#include "superkahler/search.hpp"

#include <gtest/gtest.h>

using namespace superkahler;

namespace {

// Hand transcription of the admissibility table, indexed by (p(J), p(h)).
bool tableCell(unsigned n, unsigned m, bool oddJ, bool oddH) {
    if (!oddJ && !oddH) return n % 2 == 0 && m % 2 == 0;  // 2n|2m
    if (oddJ && oddH) return n == m;                      // n|n
    return n % 2 == 0 && n == m;                          // 2n|2n
}

Status statusOf(const VerificationReport& r, const std::string& name) {
    auto c = r.find(name);
    EXPECT_NE(c, nullptr) << name;
    return c ? c->status : Status::skipped;
}

}  // namespace

TEST(Admissibility, MatchesTableUpToSix) {
    for (unsigned n = 0; n <= 6; ++n)
        for (unsigned m = 0; m <= 6; ++m)
            for (bool oj : {false, true})
                for (bool oh : {false, true})
                    EXPECT_EQ(checkSuperdimAdmissible({n, m}, oj ? Parity::odd : Parity::even,
                                                      oh ? Parity::odd : Parity::even),
                              tableCell(n, m, oj, oh))
                        << n << "|" << m << " " << oj << oh;
}

TEST(Admissibility, NamedExamples) {
    EXPECT_TRUE(checkSuperdimAdmissible({2, 4}, Parity::even, Parity::even));
    EXPECT_TRUE(checkSuperdimAdmissible({2, 2}, Parity::odd, Parity::even));
    EXPECT_FALSE(checkSuperdimAdmissible({2, 4}, Parity::odd, Parity::even));
    EXPECT_TRUE(checkSuperdimAdmissible({3, 3}, Parity::odd, Parity::odd));
}

TEST(VerifyKaehler, EvenJModelsAreKaehler) {
    for (auto d : {SuperDim{2, 0}, SuperDim{2, 2}, SuperDim{0, 2}, SuperDim{2, 4}})
        for (Parity ph : {Parity::even, Parity::odd}) {
            if (!checkSuperdimAdmissible(d, Parity::even, ph)) continue;
            auto m = standardModel(d, Parity::even, ph);
            ASSERT_TRUE(m.model) << d.toString();
            auto rep = verifyKaehler(m.model->j, m.model->h);
            EXPECT_EQ(rep.verdict, Verdict::kaehler) << rep.summary();
        }
}

TEST(VerifyKaehler, RowOrderAndParityPattern) {
    auto m = standardModel({2, 2}, Parity::even, Parity::odd);
    auto rep = verifyKaehler(m.model->j, m.model->h);
    std::vector<std::string> names;
    for (const auto& c : rep.conditions) names.push_back(c.name);
    EXPECT_EQ(names, (std::vector<std::string>{"square", "nondegenerate", "pseudo-hermitian", "superdim-admissible",
                                               "bivector", "buttin-bracket", "jacobi"}));
    // omega odd, so B odd: the Buttin row is vacuous and skipped
    EXPECT_EQ(statusOf(rep, "buttin-bracket"), Status::skipped);
    EXPECT_EQ(statusOf(rep, "jacobi"), Status::pass);
}

TEST(VerifyKaehler, OddComplexStructureCandidatesFailPseudoHermitian) {
    for (auto [d, ph] : {std::pair{SuperDim{1, 1}, Parity::odd}, std::pair{SuperDim{2, 2}, Parity::even},
                         std::pair{SuperDim{2, 2}, Parity::odd}}) {
        auto m = standardModel(d, Parity::odd, ph);
        ASSERT_TRUE(m.model);
        EXPECT_FALSE(m.obstruction.empty());
        auto rep = verifyKaehler(m.model->j, m.model->h);
        EXPECT_EQ(statusOf(rep, "pseudo-hermitian"), Status::fail);
        EXPECT_EQ(rep.verdict, Verdict::notAlmostKaehler);
    }
}

TEST(VerifyKaehler, BrokenSquareIsNotAlmostKaehler) {
    auto m = standardModel({2, 0}, Parity::even, Parity::even);
    Tensor11 j = m.model->j;
    j.components(0, 0) += j.chart.one();
    auto rep = verifyKaehler(j, m.model->h);
    EXPECT_EQ(statusOf(rep, "square"), Status::fail);
    EXPECT_EQ(rep.verdict, Verdict::notAlmostKaehler);
    EXPECT_TRUE(rep.find("square")->witness);
}

TEST(VerifyKaehler, InadmissibleDimensionFailsTableRow) {
    // The even-even block rotation exists on 2|1 but h's odd block is degenerate.
    Chart ch = Chart::standard({2, 1});
    auto j = Matrix::constant(ch.coordinates(), {{0, -1, 0}, {1, 0, 0}, {0, 0, 1}});
    auto h = Matrix::constant(ch.coordinates(), {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
    auto rep = verifyKaehler(Tensor11(ch, j, Parity::even, -1), BilinearForm(ch, h, Parity::even));
    EXPECT_EQ(statusOf(rep, "superdim-admissible"), Status::fail);
    EXPECT_EQ(statusOf(rep, "nondegenerate"), Status::fail);
    EXPECT_EQ(rep.verdict, Verdict::notAlmostKaehler);
}

TEST(VerifyKaehler, NonClosedFixturesAreAlmostKaehlerOnly) {
    for (Parity ph : {Parity::even, Parity::odd}) {
        auto f = nonClosedFixture(ph);
        ASSERT_TRUE(checkPseudoHermitian(f.h, f.j).pass);
        auto w = buildOmega(f.h, f.j);
        ASSERT_TRUE(w.form);
        ASSERT_FALSE(deRham(*w.form).isZero());
        auto rep = verifyKaehler(f.j, f.h);
        EXPECT_EQ(rep.verdict, Verdict::almostKaehlerOnly) << rep.summary();
        EXPECT_EQ(statusOf(rep, "jacobi"), Status::fail);
        ASSERT_TRUE(rep.find("jacobi")->witness);
        EXPECT_FALSE(rep.find("jacobi")->witness->value.isZero());
        if (ph == Parity::even) {
            // Buttin row witness agrees with the brute-force expansion.
            const auto* bb = rep.find("buttin-bracket");
            ASSERT_EQ(bb->status, Status::fail);
            auto mv = *buildBivector(f.h, f.j).multivector();
            EXPECT_EQ(bb->witness->value, bruteForceBracketOracle(mv, mv).value);
        }
    }
}

TEST(VerifyKaehler, SignDecoratedVariantAgreesOnEvenJ) {
    for (Parity ph : {Parity::even, Parity::odd}) {
        auto f = nonClosedFixture(ph);
        auto a = verifyKaehler(f.j, f.h, {OmegaVariant::literal});
        auto b = verifyKaehler(f.j, f.h, {OmegaVariant::signDecorated});
        EXPECT_EQ(a.verdict, b.verdict);
    }
}

TEST(Report, JsonIsDeterministicAndOrdered) {
    auto f = nonClosedFixture(Parity::even);
    const auto a = verifyKaehler(f.j, f.h).toJsonText();
    const auto b = verifyKaehler(f.j, f.h).toJsonText();
    EXPECT_EQ(a, b);
    auto j = nlohmann::ordered_json::parse(a);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"schema", "kind", "superdim", "parity", "settings", "conditions",
                                              "verdict"}));
    EXPECT_EQ(j["verdict"], "almost-kaehler-only");
    EXPECT_EQ(j["parity"]["J"], "ev");
}

TEST(CrossCheck, ConstantDataIsFlatAndClosed) {
    for (auto [d, ph] : {std::pair{SuperDim{2, 0}, Parity::even}, std::pair{SuperDim{2, 2}, Parity::even},
                         std::pair{SuperDim{2, 2}, Parity::odd}}) {
        auto m = standardModel(d, Parity::even, ph);
        auto r = crossCheckDomNab(m.model->j, m.model->h);
        EXPECT_TRUE(r.dOmegaZero);
        EXPECT_TRUE(r.nablaJZero);
    }
}

TEST(CrossCheck, EvenChartNonConstantJ) {
    // h of signature (2,2), J = g^{-1} J0 g with g = 1 + x1 N, N h-skew and N^2 = 0.
    Chart ch = Chart::standard({4, 0});
    auto cv = ch.coordinates();
    auto h = BilinearForm(ch, Matrix::constant(cv, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}),
                          Parity::even);
    auto j0 = Matrix::constant(cv, {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
    // N = u (hw)^T - w (hu)^T with null orthogonal u = (1,1,1,1), w = (1,0,0,1); N J0 != J0 N
    auto n0 = Matrix::constant(cv, {{0, -1, 1, 0}, {1, 0, 0, -1}, {1, 0, 0, -1}, {0, -1, 1, 0}});
    ASSERT_TRUE((n0 * n0).isZero());
    Matrix n = n0.map([&](const SuperPolynomial& e) { return e * ch.coordinate(0); });
    Matrix g = Matrix::identity(4, cv) + n, gi = Matrix::identity(4, cv) - n;
    Tensor11 j(ch, gi * j0 * g, Parity::even, -1);
    ASSERT_TRUE(checkSquare(j).pass);
    ASSERT_TRUE(checkPseudoHermitian(h, j).pass);
    auto r = crossCheckDomNab(j, h);
    auto rep = crossCheckReport(j, h);
    EXPECT_EQ(rep.find("flags-agree")->status, r.agree() ? Status::pass : Status::fail);
    EXPECT_FALSE(r.nablaJZero);
}

TEST(CrossCheck, SuperChartsLogWithoutEnforcing) {
    auto f = nonClosedFixture(Parity::even);
    auto rep = crossCheckReport(f.j, f.h);
    EXPECT_EQ(rep.find("flags-agree")->status, Status::skipped);
    EXPECT_EQ(rep.find("d-omega-zero")->status, Status::fail);
}

TEST(HyperKaehler, QuaternionRelationsUnderBothTables) {
    auto [js, h] = quaternionModel();
    for (const auto& j : js) {
        EXPECT_TRUE(checkSquare(j).pass);
        EXPECT_TRUE(checkPseudoHermitian(h, j).pass);
    }
    // J1 J2 = J3 = -J2 J1: the literal anticommutator relation gives 0, not J3.
    EXPECT_EQ(js[0].components * js[1].components, js[2].components);
    auto literal = verifyHyperKaehler(js, h);
    EXPECT_EQ(literal.find("quaternion(1,2,3)")->status, Status::fail);
    auto commutator = verifyHyperKaehler(js, h, QuaternionSignTable::parse("+1,-1,-1,+1,+1,-1"));
    EXPECT_EQ(commutator.verdict, Verdict::kaehler) << commutator.summary();
}

TEST(HyperKaehler, IdentityTripleSatisfiesLiteralRelation) {
    Chart ch = Chart::standard({2, 0});
    Tensor11 id(ch, Matrix::identity(2, ch.coordinates()), Parity::even, 1);
    BilinearForm h(ch, Matrix::identity(2, ch.coordinates()), Parity::even);
    auto rep = verifyHyperKaehler({id, id, id}, h);
    for (auto name : {"quaternion(1,2,3)", "quaternion(2,3,1)", "quaternion(3,1,2)"})
        EXPECT_EQ(rep.find(name)->status, Status::pass);
    EXPECT_EQ(rep.find("pseudo-hermitian(J1)")->status, Status::pass);
}

TEST(HyperKaehler, SingleEntryPerturbationIsLocalized) {
    auto [js, h] = quaternionModel();
    const auto table = QuaternionSignTable::parse("+1,-1,-1,+1,+1,-1");
    for (int i = 0; i < 3; ++i)
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) {
                auto pert = js;
                pert[i].components(a, b) += h.chart.one();
                auto rep = verifyHyperKaehler(pert, h, table);
                ASSERT_EQ(rep.verdict, Verdict::notAlmostKaehler);
                bool quatFailed = false;
                for (const auto& c : rep.conditions)
                    if (c.name.rfind("quaternion", 0) == 0 && c.status == Status::fail) {
                        quatFailed = true;
                        ASSERT_TRUE(c.witness);
                        ASSERT_FALSE(c.witness->value.isZero());
                    }
                ASSERT_TRUE(quatFailed);
            }
}

TEST(SignTable, ParseAndErrors) {
    EXPECT_EQ(QuaternionSignTable::parse("+1 -1 +1 +1 -1 +1").toString(), "+1,-1,+1,+1,-1,+1");
    EXPECT_THROW(QuaternionSignTable::parse("+1,+1"), std::invalid_argument);
    EXPECT_THROW(QuaternionSignTable::parse("+1,+1,+1,+1,+1,+2"), std::invalid_argument);
    QuaternionSignTable t;
    EXPECT_EQ(t(2, 1), 1);
}
