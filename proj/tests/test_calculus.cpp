#include "support/fixtures.hpp"

#include <gtest/gtest.h>

using namespace superkahler;
using superkahler::fixtures::PolyGen;

namespace {

const SuperDim kDims[] = {{2, 0}, {0, 2}, {1, 1}, {2, 1}, {2, 2}, {0, 3}, {3, 3}};

MultivectorField randomMultivector(const Chart& ch, Parity p, PolyGen& gen) {
    return {ch, gen.homogeneous(ch.multivectorVars(), p, 4, 4)};
}

Parity randomParity(PolyGen& gen) { return gen.coin() ? Parity::odd : Parity::even; }

// Interior product by X = sum_b X^b d/du_b: left derivative in du_b, coefficient on the left.
SuperPolynomial contract(const Chart& ch, const std::vector<SuperPolynomial>& x, const DifferentialForm& w) {
    SuperPolynomial r(ch.formVars());
    for (std::size_t b = 0; b < ch.size(); ++b)
        if (!x[b].isZero()) r += x[b].embedInto(ch.formVars()) * w.value.leftDerivative(ch.conjugateIndex(b));
    return r;
}

}  // namespace

TEST(ButtinBracket, CanonicalPairing) {
    Chart ch = Chart::standard({1, 1});
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            auto r = buttinBracket(MultivectorField::function(ch, ch.coordinate(a)), MultivectorField::conjugate(ch, b));
            EXPECT_EQ(r.value, SuperPolynomial::constant(ch.multivectorVars(), a == b ? 1 : 0));
        }
    // Shifted antisymmetry gives {v:u, u} = -1 for both parities.
    EXPECT_EQ(buttinBracket(MultivectorField::conjugate(ch, 0), MultivectorField::function(ch, ch.coordinate(0))).value.toString(), "-1");
    EXPECT_EQ(buttinBracket(MultivectorField::conjugate(ch, 1), MultivectorField::function(ch, ch.coordinate(1))).value.toString(), "-1");
}

TEST(ButtinBracketProperty, ShiftedAntisymmetryAndJacobi) {
    PolyGen gen(11);
    for (auto d : {SuperDim{1, 1}, SuperDim{2, 1}, SuperDim{1, 2}}) {
        Chart ch = Chart::standard(d);
        for (int t = 0; t < 12; ++t) {
            const Parity pp = randomParity(gen), pq = randomParity(gen), pr = randomParity(gen);
            auto P = randomMultivector(ch, pp, gen), Q = randomMultivector(ch, pq, gen), R = randomMultivector(ch, pr, gen);
            const int s = signPow((bit(pp) + 1) * (bit(pq) + 1));
            auto pq_ = buttinBracket(P, Q);
            ASSERT_TRUE(pq_.value.hasParity(pp + pq + Parity::odd));
            ASSERT_EQ(pq_.value, buttinBracket(Q, P).value * Rational(-s));
            auto lhs = buttinBracket(P, buttinBracket(Q, R)).value;
            auto rhs = buttinBracket(buttinBracket(P, Q), R).value + buttinBracket(Q, buttinBracket(P, R)).value * Rational(s);
            ASSERT_EQ(lhs, rhs);
        }
    }
}

TEST(ButtinBracketProperty, OddElementsHaveVanishingSelfBracket) {
    PolyGen gen(12);
    Chart ch = Chart::standard({2, 2});
    for (int t = 0; t < 20; ++t) {
        auto B = randomMultivector(ch, Parity::odd, gen);
        ASSERT_TRUE(buttinBracket(B, B).value.isZero());
    }
}

TEST(DeRham, SquaresToZeroAndIsOddDerivation) {
    PolyGen gen(13);
    for (auto d : kDims) {
        Chart ch = Chart::standard(d);
        for (int t = 0; t < 10; ++t) {
            const Parity pf = randomParity(gen);
            DifferentialForm f{ch, gen.homogeneous(ch.formVars(), pf, 4, 4)};
            DifferentialForm g{ch, gen.homogeneous(ch.formVars(), randomParity(gen), 4, 4)};
            ASSERT_TRUE(deRham(deRham(f)).isZero());
            auto lhs = deRham(DifferentialForm{ch, f.value * g.value}).value;
            auto rhs = deRham(f).value * g.value + f.value * deRham(g).value * Rational(signPow(bit(pf)));
            ASSERT_EQ(lhs, rhs);
        }
    }
}

TEST(DeRham, CoordinateDifferential) {
    Chart ch = Chart::standard({1, 1});
    auto x = DifferentialForm::function(ch, ch.coordinate(0) * ch.coordinate(0));
    EXPECT_EQ(deRham(x).value.toString(), "2*x1*d:x1");
}

TEST(Forms, GramRoundTrip) {
    PolyGen gen(14);
    for (auto d : kDims)
        for (Parity par : {Parity::even, Parity::odd}) {
            Chart ch = Chart::standard(d);
            for (int t = 0; t < 5; ++t) {
                auto w = fixtures::randomForm(ch, par, gen);
                if (!w) break;
                const Matrix g = gramOfForm(*w);
                ASSERT_TRUE(BilinearForm(ch, g, par).isSuperAntisymmetric());
                ASSERT_EQ(formFromGram(ch, g), *w);
            }
        }
}

TEST(Forms, NonAntisymmetricGramRejected) {
    Chart ch = Chart::standard({2, 0});
    Matrix g = Matrix::identity(2, ch.coordinates());
    EXPECT_THROW(formFromGram(ch, g), CalculusError);
}

TEST(Bivector, EvenMatrixAndMultivectorAgree) {
    PolyGen gen(15);
    for (auto d : kDims) {
        Chart ch = Chart::standard(d);
        for (int t = 0; t < 5; ++t) {
            // random even bivector: quadratic in v with even total parity
            SuperPolynomial v(ch.multivectorVars());
            for (std::size_t a = 0; a < ch.size(); ++a)
                for (std::size_t b = 0; b < ch.size(); ++b) {
                    auto c = gen.homogeneous(ch.coordinates(), ch.parity(a) + ch.parity(b), 2, 1);
                    v += SuperPolynomial::variable(ch.multivectorVars(), ch.conjugateIndex(a)) *
                         c.embedInto(ch.multivectorVars()) *
                         SuperPolynomial::variable(ch.multivectorVars(), ch.conjugateIndex(b));
                }
            MultivectorField B{ch, v};
            auto br = Bivector::fromMultivector(B);
            ASSERT_FALSE(br.antisymmetryViolation());
            ASSERT_EQ(br.multivector()->value, B.value);
            auto f = gen.homogeneous(ch.coordinates(), randomParity(gen), 3, 3);
            auto g = gen.homogeneous(ch.coordinates(), randomParity(gen), 3, 3);
            ASSERT_EQ(br.bracket(f, g), bracketFromBivector(B, f, g));
            // For even B the Jacobi identity holds exactly when {B,B} = 0.
            ASSERT_EQ(!jacobiViolation(br).has_value(), buttinBracket(B, B).value.isZero());
        }
    }
}

TEST(Bivector, KnownNonPoissonEvenBivector) {
    Chart ch = Chart::standard({3, 0});
    auto mv = ch.multivectorVars();
    auto V = [&](std::size_t a) { return SuperPolynomial::variable(mv, ch.conjugateIndex(a)); };
    // d1^d2 + x2 d2^d3: dual vector field w = (x2, 0, 1) has w.curl w = -1.
    MultivectorField B{ch, V(0) * V(1) + SuperPolynomial::variable(mv, 1) * V(1) * V(2)};
    EXPECT_FALSE(buttinBracket(B, B).value.isZero());
    EXPECT_TRUE(jacobiViolation(Bivector::fromMultivector(B)).has_value());
}

TEST(Bivector, OddMultivectorGivesSymmetricBracket) {
    Chart ch = Chart::standard({1, 1});
    auto mv = ch.multivectorVars();
    MultivectorField B{ch, SuperPolynomial::variable(mv, "v:x1") * SuperPolynomial::variable(mv, "v:xi1")};
    auto br = Bivector::fromMultivector(B);
    EXPECT_EQ(br.parity, Parity::odd);
    EXPECT_EQ(br.pi(0, 1), br.pi(1, 0));
    EXPECT_TRUE(br.antisymmetryViolation().has_value());
    EXPECT_TRUE(buttinBracket(B, B).value.isZero());
}

TEST(FormInversionProperty, HamiltonianNormalisation) {
    PolyGen gen(16);
    for (auto d : kDims)
        for (Parity par : {Parity::even, Parity::odd}) {
            Chart ch = Chart::standard(d);
            for (int t = 0; t < 4; ++t) {
                auto w = fixtures::randomForm(ch, par, gen);
                if (!w) break;
                const Bivector b = formToBivector(*w);
                ASSERT_FALSE(b.antisymmetryViolation());
                for (std::size_t a = 0; a < ch.size(); ++a) {
                    std::vector<SuperPolynomial> x;
                    for (std::size_t c = 0; c < ch.size(); ++c) x.push_back(b.pi(a, c));
                    const auto want = DifferentialForm::differential(ch, a).value *
                                      Rational(-signPow(ch.p(a) + bit(par)));
                    ASSERT_EQ(contract(ch, x, *w), want) << "a=" << a << " w=" << w->value;
                }
                ASSERT_EQ(bivectorToForm(b), *w);
            }
        }
}

TEST(FormInversionProperty, ClosedExactlyWhenJacobi) {
    PolyGen gen(17);
    int nonClosedSeen = 0;
    for (auto d : kDims)
        for (Parity par : {Parity::even, Parity::odd}) {
            Chart ch = Chart::standard(d);
            for (int t = 0; t < 6; ++t) {
                auto w = (t % 2) ? fixtures::randomForm(ch, par, gen) : fixtures::randomClosedForm(ch, par, gen);
                if (!w) break;
                std::optional<Bivector> b;
                try {
                    b = formToBivector(*w);
                } catch (const DegenerateMatrix&) {
                    continue;
                } catch (const AlgebraError& e) {
                    FAIL() << e.what() << " dim " << d.toString() << " " << toString(par) << " t=" << t << " w=" << w->value;
                }
                const bool closed = deRham(*w).isZero();
                nonClosedSeen += !closed;
                ASSERT_EQ(closed, !jacobiViolation(*b).has_value()) << w->value;
            }
        }
    EXPECT_GT(nonClosedSeen, 5);
}

TEST(LeviCivita, ClassicalConformalFirstKind) {
    // h = (1 + x1^2) * identity on 2|0 against Gamma_{ij,k} = 1/2 (d_k,j d_i f + d_k,i d_j f - d_i,j d_k f).
    Chart ch = Chart::standard({2, 0});
    const auto phi = ch.one() + ch.coordinate(0) * ch.coordinate(0);
    Matrix hm(2, ch.coordinates());
    hm(0, 0) = phi;
    hm(1, 1) = phi;
    BilinearForm h(ch, hm, Parity::even);
    const auto low = christoffelFirstKind(h);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                SuperPolynomial want = ch.zero();
                if (k == j) want += phi.leftDerivative(i);
                if (k == i) want += phi.leftDerivative(j);
                if (i == j) want -= phi.leftDerivative(k);
                want *= Rational(1, 2);
                EXPECT_EQ(low[(i * 2 + j) * 2 + k], want);
            }
    EXPECT_THROW(leviCivita(h), UnsupportedInversion);
}

TEST(LeviCivita, FlatForConstantMetric) {
    Chart ch = Chart::standard({2, 2});
    Matrix hm(4, ch.coordinates());
    hm(0, 0) = hm(1, 1) = ch.one();
    hm(2, 3) = ch.one();
    hm(3, 2) = ch.constant(-1);
    EXPECT_TRUE(leviCivita(BilinearForm(ch, hm, Parity::even)).isFlat());
}

TEST(LeviCivitaProperty, MetricAndTorsionFree) {
    PolyGen gen(18);
    for (auto d : {SuperDim{2, 2}, SuperDim{1, 2}, SuperDim{0, 2}, SuperDim{1, 1}, SuperDim{2, 4}})
        for (Parity par : {Parity::even, Parity::odd}) {
            Chart ch = Chart::standard(d);
            for (int t = 0; t < 4; ++t) {
                auto h = fixtures::randomMetric(ch, par, gen);
                if (!h) break;
                const auto conn = leviCivita(*h);
                ASSERT_TRUE(isTorsionFree(conn));
                for (const auto& r : metricityResidual(*h, conn)) ASSERT_TRUE(r.isZero()) << r;
                // Lowering the solved symbols reproduces the first-kind formula.
                ASSERT_EQ(lowerConnection(*h, conn), christoffelFirstKind(*h));
            }
        }
}

TEST(CovariantDerivative, IdentityIsParallel) {
    PolyGen gen(19);
    Chart ch = Chart::standard({2, 2});
    auto h = fixtures::randomMetric(ch, Parity::even, gen);
    Tensor11 id(ch, Matrix::identity(4, ch.coordinates()), Parity::even, 1);
    EXPECT_TRUE(isZero(covariantDerivative(id, leviCivita(*h))));
}
