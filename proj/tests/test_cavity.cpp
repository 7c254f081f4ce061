#include <gtest/gtest.h>

#include "nvhyper/cavity.hpp"

using namespace nvh;

namespace {

CavityParams resonant(double x, double ks) {
    CavityParams p;
    p.g = x;  // kappa = gamma = 1
    p.kappa_s = ks;
    return p;
}

}  // namespace

TEST(ReflectionCoupled, UnitCouplingGivesThreeFifths) {
    EXPECT_NEAR(std::abs(reflection_coupled(resonant(1.0, 0.0)) - 0.6), 0.0, 1e-15);
}

TEST(ReflectionCoupled, ZeroCouplingIsEmptyCavity) {
    for (double ks : {0.0, 0.03, 0.5, 1.0}) {
        CavityParams p = resonant(0.0, ks);
        p.delta_c = 0.3;
        p.delta_0 = -0.2;
        EXPECT_LT(std::abs(reflection_coupled(p) - reflection_empty(p)), 1e-12);
    }
}

TEST(ReflectionCoupled, QuotedPoint) {
    EXPECT_NEAR(reflection_coupled(resonant(1.5, 0.03)).real(), 8.03 / 10.03, 1e-15);
}

TEST(ReflectionCoupled, RawRatesScaleOut) {
    CavityParams p;
    p.kappa = 4.0;
    p.gamma = 9.0;
    p.kappa_s = 0.12;
    p.g = 1.5 * 6.0;
    EXPECT_NEAR(reflection_coupled(p).real(), 8.03 / 10.03, 1e-14);
}

TEST(ReflectionEmpty, Examples) {
    EXPECT_NEAR(std::abs(reflection_empty(resonant(0, 0)) + 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(reflection_empty(resonant(0, 1.0))), 0.0, 1e-15);
    EXPECT_NEAR(reflection_empty(resonant(0, 0.06)).real(), -0.94 / 1.06, 1e-15);
}

TEST(CavityParamsTest, Validation) {
    CavityParams p;
    p.kappa = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = CavityParams{};
    p.kappa_s = -0.1;
    EXPECT_THROW(reflection_coupled(p), std::invalid_argument);
    p = CavityParams{};
    p.g = -1;
    EXPECT_THROW(reflection_empty(p), std::invalid_argument);
}

TEST(ResonantPair, Examples) {
    auto q = resonant_pair(1.5, 0.03);
    EXPECT_NEAR(q.r.real(), 0.800598, 5e-7);
    EXPECT_NEAR(q.r0.real(), -0.941748, 5e-7);
    auto z = resonant_pair(0.0, 0.06);
    EXPECT_NEAR(z.r.real(), -0.88679, 1e-5);
    EXPECT_DOUBLE_EQ(z.r.real(), z.r0.real());
    auto big = resonant_pair(1e4, 0.0);
    EXPECT_NEAR(big.r.real(), 1.0, 1e-8);
    EXPECT_EQ(big.r0.real(), -1.0);
    EXPECT_THROW(resonant_pair(-1.0, 0.0), std::invalid_argument);
}

TEST(ResonantPair, MatchesGeneralFormula) {
    for (double x : {0.0, 0.5, 1.5, 3.0})
        for (double ks : {0.0, 0.03, 0.06}) {
            auto q = resonant_pair(x, ks);
            EXPECT_LT(std::abs(q.r - reflection_coupled(resonant(x, ks))), 1e-14);
            EXPECT_LT(std::abs(q.r0 - reflection_empty(resonant(x, ks))), 1e-14);
            EXPECT_LT(std::abs(q.r.imag()), 1e-12);
        }
}

TEST(ResonantPair, MonotoneAndBounded) {
    for (double ks : {0.0, 0.03, 0.06}) {
        double prev = -2.0;
        for (int i = 0; i <= 200; ++i) {
            const double r = resonant_pair(0.05 * i, ks).r.real();
            EXPECT_GT(r, prev);
            EXPECT_LE(std::abs(r), 1.0);
            prev = r;
        }
    }
}

TEST(ReflectionPairTest, RejectsGain) { EXPECT_THROW(ReflectionPair(1.1, -1.0), std::invalid_argument); }

TEST(Scattering, IdealOnLPlus) {
    auto op = scattering_operator(ReflectionPair::ideal());
    EXPECT_TRUE(op.unitary);
    // index pol*2 + spin: |L>|+> = 2
    EXPECT_EQ(op.matrix(2, 2), cplx(-1.0));
    EXPECT_EQ(op.matrix(1, 1), cplx(-1.0));
    EXPECT_EQ((op.matrix - op.matrix.diagonal().asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Scattering, LossyRMinusPicksR0) {
    ReflectionPair q(0.8, -0.9);
    auto op = scattering_operator(q);
    EXPECT_FALSE(op.unitary);
    EXPECT_EQ(op.matrix(1, 1), cplx(-0.9));
}

TEST(Scattering, BalancedInputNorm) {
    auto op = scattering_operator(ReflectionPair(0.6, -1.0));
    Vec in = Vec::Zero(4);
    in[0] = in[2] = 1.0 / std::sqrt(2.0);  // (|R>+|L>)|+>
    Vec out = op.matrix * in;
    EXPECT_NEAR(out.squaredNorm(), 0.68, 1e-15);
    EXPECT_NEAR(out[0].real(), 0.6 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(out[2].real(), -1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Scattering, SingularValuesAreMagnitudes) {
    ReflectionPair q(cplx(0.3, 0.4), -0.7);
    Eigen::JacobiSVD<Mat> svd(scattering_operator(q).matrix);
    auto sv = svd.singularValues();
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(std::abs(sv[i] - 0.5) < 1e-12 || std::abs(sv[i] - 0.7) < 1e-12);
}
