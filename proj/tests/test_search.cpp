#include "support/fixtures.hpp"

#include "superkahler/search.hpp"

#include <gtest/gtest.h>

using namespace superkahler;
using superkahler::fixtures::PolyGen;

TEST(StandardModel, ObstructionsAreNamed) {
    EXPECT_EQ(standardModel({2, 1}, Parity::even, Parity::even).obstruction,
              "odd-odd antisymmetric block of odd rank is degenerate");
    EXPECT_FALSE(standardModel({2, 1}, Parity::even, Parity::even).model);
    EXPECT_NE(standardModel({3, 0}, Parity::even, Parity::even).obstruction.find("odd rank"), std::string::npos);
    EXPECT_NE(standardModel({2, 1}, Parity::odd, Parity::odd).obstruction.find("J-square parity clash"),
              std::string::npos);
    EXPECT_NE(standardModel({2, 4}, Parity::even, Parity::odd).obstruction.find("rectangular pairing"),
              std::string::npos);
}

TEST(StandardModel, EveryInadmissibleCellHasAnObstruction) {
    for (unsigned n = 0; n <= 3; ++n)
        for (unsigned m = 0; m <= 3; ++m)
            for (Parity pj : {Parity::even, Parity::odd})
                for (Parity ph : {Parity::even, Parity::odd}) {
                    auto r = standardModel({n, m}, pj, ph);
                    EXPECT_EQ(r.model.has_value(), checkSuperdimAdmissible({n, m}, pj, ph));
                    if (!r.model) EXPECT_FALSE(r.obstruction.empty());
                }
}

TEST(Search, RefusesAdmissibleAndFindsNothingOnSmallCells) {
    EXPECT_THROW(randomizedCounterexampleSearch({2, 2}, Parity::even, Parity::even, 10, 1), std::invalid_argument);
    auto ev = randomizedCounterexampleSearch({1, 0}, Parity::even, Parity::even, 1000, 7);
    EXPECT_EQ(ev.passes, 0u);
    EXPECT_EQ(ev.squarePasses, 0u);
    auto ev3 = randomizedCounterexampleSearch({3, 0}, Parity::even, Parity::even, 1000, 7);
    EXPECT_EQ(ev3.passes, 0u);
    EXPECT_NE(ev3.report().toJsonText().find("evidence, not proof"), std::string::npos);
}

TEST(Search, DeterministicPerSeed) {
    auto a = randomizedCounterexampleSearch({2, 1}, Parity::even, Parity::even, 300, 42).report().toJsonText();
    auto b = randomizedCounterexampleSearch({2, 1}, Parity::even, Parity::even, 300, 42).report().toJsonText();
    EXPECT_EQ(a, b);
}

TEST(Search, SamplerReachesSquareStageOnEvenBlocks) {
    // J^2 = -id is reachable on the even 2x2 block of 2|1, so the funnel is not vacuous.
    auto ev = randomizedCounterexampleSearch({2, 1}, Parity::even, Parity::even, 2000, 3);
    EXPECT_EQ(ev.passes, 0u);
    EXPECT_EQ(ev.squarePasses, 0u);  // the odd 1x1 block cannot square to -1 either
    auto ev2 = randomizedCounterexampleSearch({2, 4}, Parity::even, Parity::odd, 200, 3);
    EXPECT_EQ(ev2.passes, 0u);
}

TEST(BruteForceOracle, CanonicalPairingAndGuard) {
    Chart ch = Chart::standard({1, 1});
    for (std::size_t a = 0; a < 2; ++a) {
        auto r = bruteForceBracketOracle(MultivectorField::conjugate(ch, a),
                                         MultivectorField::function(ch, ch.coordinate(a)));
        EXPECT_EQ(r.value.toString(), "-1");
    }
    Chart big = Chart::standard({3, 2});
    auto one = MultivectorField::function(big, big.one());
    EXPECT_THROW(bruteForceBracketOracle(one, one), std::invalid_argument);
}

TEST(BruteForceOracleProperty, AgreesWithKernel) {
    PolyGen gen(51);
    for (auto d : {SuperDim{1, 1}, SuperDim{2, 0}, SuperDim{0, 2}, SuperDim{2, 1}, SuperDim{2, 2}}) {
        Chart ch = Chart::standard(d);
        for (int t = 0; t < 40; ++t) {
            MultivectorField p{ch, gen.homogeneous(ch.multivectorVars(), gen.coin() ? Parity::odd : Parity::even, 3, 3)};
            MultivectorField q{ch, gen.homogeneous(ch.multivectorVars(), gen.coin() ? Parity::odd : Parity::even, 3, 3)};
            ASSERT_EQ(bruteForceBracketOracle(p, q).value, buttinBracket(p, q).value);
        }
    }
}

TEST(Fixtures, NonJacobiEvenBivector) {
    auto b = nonJacobiEvenBivector();
    auto kernel = buttinBracket(b, b);
    EXPECT_FALSE(kernel.value.isZero());
    EXPECT_EQ(kernel.value, bruteForceBracketOracle(b, b).value);
    EXPECT_TRUE(jacobiViolation(Bivector::fromMultivector(b)).has_value());
}

TEST(Fixtures, NonJacobiOddBivector) {
    auto b = nonJacobiOddBivector();
    EXPECT_FALSE(b.antisymmetryViolation());
    EXPECT_FALSE(b.multivector());
    auto w = jacobiViolation(b);
    ASSERT_TRUE(w);
    EXPECT_FALSE(w->value.isZero());
}

TEST(Fixtures, NonClosedOmegaPerParity) {
    for (Parity ph : {Parity::even, Parity::odd}) {
        auto f = nonClosedFixture(ph);
        auto w = buildOmega(f.h, f.j);
        ASSERT_TRUE(w.form);
        EXPECT_EQ(w.gram.parity, ph);
        EXPECT_FALSE(deRham(*w.form).isZero());
        EXPECT_TRUE(jacobiViolation(buildBivector(f.h, f.j)).has_value());
    }
}

TEST(SearchProperty, InadmissibleCellsNeverPass) {
    std::size_t cells = 0;
    for (unsigned n = 0; n <= 3; ++n)
        for (unsigned m = 0; m <= 3; ++m)
            for (Parity pj : {Parity::even, Parity::odd})
                for (Parity ph : {Parity::even, Parity::odd}) {
                    if (checkSuperdimAdmissible({n, m}, pj, ph)) continue;
                    ++cells;
                    auto ev = randomizedCounterexampleSearch({n, m}, pj, ph, 1000, 11 + n * 4 + m);
                    EXPECT_EQ(ev.passes, 0u) << SuperDim{n, m}.toString() << " " << toString(pj) << "/" << toString(ph);
                }
    EXPECT_EQ(cells, 52u);
}
