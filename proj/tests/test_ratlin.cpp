#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "starcalc/errors.hpp"
#include "starcalc/ratlin/matrix.hpp"

using starcalc::BigInt;
using starcalc::Rational;
using starcalc::RationalMatrix;
using fixtures::Rows;

namespace {

RationalMatrix M(const Rows& rows) { return RationalMatrix::from_rows(rows); }

const std::vector<std::pair<const char*, const Rows*>>& printed_forms() {
    static const std::vector<std::pair<const char*, const Rows*>> forms{
        {"Q", &fixtures::kQ}, {"K", &fixtures::kK}, {"S2", &fixtures::kS2},
        {"U", &fixtures::kU}, {"R", &fixtures::kRForm}};
    return forms;
}

}  // namespace

TEST(Rational, StaysReduced) {
    const Rational r(BigInt(6), BigInt(-4));
    EXPECT_EQ(r.numerator(), -3);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(r.to_string(), "-3/2");
    EXPECT_EQ(Rational(BigInt(0), BigInt(-7)).to_string(), "0");
    EXPECT_EQ(Rational(4, 2).to_string(), "2");
    EXPECT_TRUE(Rational(4, 2).is_integer());
}

TEST(Rational, ZeroDenominator) {
    EXPECT_THROW(Rational(1, 0), starcalc::DivisionByZero);
    EXPECT_THROW(Rational(1) / Rational(0), starcalc::DivisionByZero);
    EXPECT_THROW(Rational::parse("3/0"), starcalc::DivisionByZero);
}

TEST(Rational, Parse) {
    EXPECT_EQ(Rational::parse("-403/261"), Rational(-403, 261));
    EXPECT_EQ(Rational::parse(" 10/1044 "), Rational(5, 522));
    EXPECT_EQ(Rational::parse("+7"), Rational(7));
    for (const char* bad : {"", "/", "1/", "a", "1.5", "--1", "1/2/3"}) {
        EXPECT_THROW(Rational::parse(bad), starcalc::Error) << bad;
    }
}

TEST(Rational, Arithmetic) {
    EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
    EXPECT_EQ(Rational(1, 3) - Rational(1, 2), Rational(-1, 6));
    EXPECT_EQ(Rational(-2, 3) * Rational(9, 4), Rational(-3, 2));
    EXPECT_EQ(Rational(-2, 3) / Rational(4, 9), Rational(-3, 2));
    EXPECT_LT(Rational(-739, 261), Rational(-403, 261));
    EXPECT_EQ(Rational(-5, 7).abs(), Rational(5, 7));
}

TEST(Rational, BigValuesStayExact) {
    Rational r(1);
    for (int i = 0; i < 40; ++i) r *= Rational(1000003, 999983);
    for (int i = 0; i < 40; ++i) r /= Rational(1000003, 999983);
    EXPECT_EQ(r, Rational(1));
}

TEST(Rational, DecimalRendering) {
    EXPECT_EQ(Rational(-403, 261).to_decimal(2), "-1.54");
    EXPECT_EQ(Rational(-211, 261).to_decimal(2), "-0.81");
    EXPECT_EQ(Rational(-739, 261).to_decimal(2), "-2.83");
    EXPECT_EQ(Rational(-1, 3).to_decimal(2), "-0.33");
    EXPECT_EQ(Rational(1, 200).to_decimal(2), "0.01");
    EXPECT_EQ(Rational(-1, 200).to_decimal(2), "-0.01");
    EXPECT_EQ(Rational(-1, 300).to_decimal(2), "0.00");
    EXPECT_EQ(Rational(7).to_decimal(0), "7");
    EXPECT_EQ(Rational(-1).to_decimal(3), "-1.000");
}

TEST(Invert, QMatchesPrintedInverse) {
    const auto inv = starcalc::invert(M(fixtures::kQ));
    EXPECT_EQ(inv, fixtures::scaled_table(fixtures::kQInverseTable, fixtures::kQInverseScale));
    EXPECT_EQ(inv(0, 0), Rational(-90, 261));
    EXPECT_EQ(inv(5, 6), Rational(-107, 261));
}

TEST(Invert, PrintedTables) {
    EXPECT_EQ(starcalc::invert(M(fixtures::kRForm)),
              fixtures::scaled_table(fixtures::kRInverseTable, fixtures::kRInverseScale));
    EXPECT_EQ(starcalc::invert(M(fixtures::kK)),
              fixtures::scaled_table(fixtures::kKInverseTable, fixtures::kKInverseScale));
    EXPECT_EQ(starcalc::invert(M(fixtures::kS2)),
              fixtures::scaled_table(fixtures::kS2InverseTable, fixtures::kS2InverseScale));
    EXPECT_EQ(starcalc::invert(RationalMatrix::identity(3)), RationalMatrix::identity(3));
}

TEST(Invert, ProductIsIdentity) {
    for (const auto& [name, rows] : printed_forms()) {
        const auto m = M(*rows);
        EXPECT_EQ(m * starcalc::invert(m), RationalMatrix::identity(m.dimension())) << name;
    }
}

TEST(Invert, Singular) {
    EXPECT_THROW(starcalc::invert(RationalMatrix{{1, 2}, {2, 4}}), starcalc::SingularMatrix);
    EXPECT_THROW(starcalc::invert(RationalMatrix(3)), starcalc::SingularMatrix);
    // I2 cycle form is degenerate
    EXPECT_THROW(starcalc::invert(RationalMatrix{{-2, 2}, {2, -2}}), starcalc::SingularMatrix);
}

TEST(Invert, RationalEntries) {
    RationalMatrix m(2);
    m(0, 0) = Rational(1, 2);
    m(0, 1) = Rational(1, 3);
    m(1, 0) = Rational(1, 4);
    m(1, 1) = Rational(1, 5);
    // det = 1/10 - 1/12 = 1/60
    RationalMatrix expected(2);
    expected(0, 0) = Rational(12);
    expected(0, 1) = Rational(-20);
    expected(1, 0) = Rational(-15);
    expected(1, 1) = Rational(30);
    EXPECT_EQ(starcalc::invert(m), expected);
}

TEST(Determinant, MatchesLaplaceExpansion) {
    for (const auto& [name, rows] : printed_forms()) {
        EXPECT_EQ(starcalc::determinant(M(*rows)), Rational(static_cast<long>(fixtures::laplace_det(*rows))))
            << name;
    }
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 6;
        std::uniform_int_distribution<long> d(-9, 9);
        Rows m(n, std::vector<long>(n));
        for (auto& row : m) {
            for (auto& x : row) x = d(rng);
        }
        EXPECT_EQ(starcalc::determinant(M(m)), Rational(static_cast<long>(fixtures::laplace_det(m))));
    }
}

TEST(Inertia, PrintedSignatures) {
    EXPECT_EQ(starcalc::inertia(M(fixtures::kQ)), (starcalc::Inertia{0, 0, 7}));
    EXPECT_EQ(starcalc::inertia(M(fixtures::kK)), (starcalc::Inertia{0, 0, 5}));
    EXPECT_EQ(starcalc::inertia(M(fixtures::kS2)).signature(), -5);
    EXPECT_EQ(starcalc::inertia(M(fixtures::kU)).signature(), -9);
    EXPECT_EQ(starcalc::inertia(M(fixtures::kRForm)).signature(), -2);
    EXPECT_EQ(starcalc::inertia(RationalMatrix::identity(4)), (starcalc::Inertia{4, 0, 0}));
}

TEST(Inertia, ZeroPivotsUseSplitting) {
    EXPECT_EQ(starcalc::inertia(RationalMatrix{{0, 1}, {1, 0}}), (starcalc::Inertia{1, 0, 1}));
    EXPECT_EQ(starcalc::inertia(RationalMatrix{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}), (starcalc::Inertia{1, 1, 1}));
    EXPECT_EQ(starcalc::inertia(RationalMatrix(3)), (starcalc::Inertia{0, 3, 0}));
    EXPECT_EQ(starcalc::inertia(RationalMatrix{{0, 2, 3}, {2, 0, 1}, {3, 1, 0}}).dimension(), 3u);
}

TEST(Inertia, NotSymmetric) {
    EXPECT_THROW(starcalc::inertia(RationalMatrix{{1, 2}, {3, 4}}), starcalc::NotSymmetric);
    EXPECT_THROW(starcalc::is_negative_definite(RationalMatrix{{-1, 2}, {0, -4}}), starcalc::NotSymmetric);
}

TEST(Inertia, AgreesWithFloatingEigenvalues) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 7;
        const Rows m = fixtures::random_symmetric(rng, n, trial % 3 == 0 ? 1 : 6);
        Eigen::MatrixXd e(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) e(i, j) = static_cast<double>(m[i][j]);
        }
        const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e).eigenvalues();
        starcalc::Inertia oracle;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            if (ev[i] > 1e-7) {
                ++oracle.n_plus;
            } else if (ev[i] < -1e-7) {
                ++oracle.n_minus;
            } else {
                ++oracle.n_zero;
            }
        }
        EXPECT_EQ(starcalc::inertia(M(m)), oracle) << "trial " << trial;
    }
}

TEST(EvaluateForm, PrintedInverseQuadratics) {
    const auto inv_q = starcalc::invert(M(fixtures::kQ));
    const std::vector<long> p{1, 1, 0, 0, 1, 0, 0};
    const std::vector<long> n{3, -1, 0, 0, -1, 0, 0};
    EXPECT_EQ(starcalc::evaluate_form(inv_q, p), Rational(-403, 261));
    EXPECT_EQ(starcalc::evaluate_form(inv_q, n), Rational(-739, 261));
    // the same numbers from the printed table, by integer arithmetic
    EXPECT_EQ(static_cast<long>(fixtures::table_form(fixtures::kQInverseTable, p)), 403);
    EXPECT_EQ(static_cast<long>(fixtures::table_form(fixtures::kQInverseTable, n)), 739);
    // the displayed partial sum 810 + 97 + 108 - 180 - 108 + 12
    EXPECT_EQ(810 + 97 + 108 - 180 - 108 + 12, 739);
    EXPECT_EQ(starcalc::evaluate_form(inv_q, std::vector<long>(7, 0)), Rational(0));
}

TEST(EvaluateForm, DimensionMismatch) {
    const std::vector<long> c{1, 2};
    EXPECT_THROW(starcalc::evaluate_form(RationalMatrix::identity(3), c), starcalc::DimensionMismatch);
    EXPECT_THROW(starcalc::bilinear_form(RationalMatrix::identity(2), c, std::vector<long>{1}),
                 starcalc::DimensionMismatch);
    EXPECT_THROW(RationalMatrix(0), starcalc::DimensionMismatch);
}

TEST(EvaluateForm, BilinearIsSymmetricForSymmetricForms) {
    const auto q = M(fixtures::kQ);
    const std::vector<long> u{1, 0, 2, -1, 0, 3, 1};
    const std::vector<long> v{0, 1, -1, 2, 5, 0, -2};
    EXPECT_EQ(starcalc::bilinear_form(q, u, v), starcalc::bilinear_form(q, v, u));
}

TEST(NegativeDefinite, Examples) {
    EXPECT_TRUE(starcalc::is_negative_definite(M(fixtures::kRForm)));
    EXPECT_FALSE(starcalc::is_negative_definite(RationalMatrix{{1, 0}, {0, -1}}));
    EXPECT_TRUE(starcalc::is_negative_definite(M(fixtures::kQ)));
    EXPECT_FALSE(starcalc::is_negative_definite(RationalMatrix{{-2, 2}, {2, -2}}));
}

TEST(NegativeDefinite, AgreesWithSylvesterCriterion) {
    for (const auto& [name, rows] : printed_forms()) {
        EXPECT_TRUE(fixtures::sylvester_negative_definite(*rows)) << name;
        EXPECT_TRUE(starcalc::is_negative_definite(M(*rows))) << name;
    }
    std::mt19937 rng(99);
    int definite = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + trial % 5;
        Rows m = fixtures::random_symmetric(rng, n, 2);
        for (std::size_t i = 0; i < n; ++i) m[i][i] -= 4;  // bias toward definite
        const bool oracle = fixtures::sylvester_negative_definite(m);
        definite += oracle;
        EXPECT_EQ(starcalc::is_negative_definite(M(m)), oracle) << "trial " << trial;
    }
    EXPECT_GT(definite, 50);
}

// ---- properties -----------------------------------------------------------

TEST(RatlinProperty, DoubleInverseIsIdentity) {
    for (const auto& [name, rows] : printed_forms()) {
        const auto m = M(*rows);
        EXPECT_EQ(starcalc::invert(starcalc::invert(m)), m) << name;
    }
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = fixtures::random_unimodular(rng, 1 + trial % 6).scaled(Rational(1 + trial % 4, 3));
        EXPECT_EQ(starcalc::invert(starcalc::invert(m)), m);
    }
}

TEST(RatlinProperty, InertiaInvariantUnderUnimodularCongruence) {
    std::mt19937 rng(7);
    for (const auto& [name, rows] : printed_forms()) {
        const auto m = M(*rows);
        const auto base = starcalc::inertia(m);
        for (int k = 0; k < 200; ++k) {
            const auto p = fixtures::random_unimodular(rng, m.dimension());
            const auto congruent = p.transpose() * m * p;
            ASSERT_TRUE(congruent.is_symmetric());
            EXPECT_EQ(starcalc::inertia(congruent), base) << name << " move " << k;
        }
    }
}

TEST(RatlinProperty, DefinitenessSurvivesInversion) {
    for (const auto& [name, rows] : printed_forms()) {
        const auto m = M(*rows);
        EXPECT_EQ(starcalc::is_negative_definite(m), starcalc::is_negative_definite(starcalc::invert(m))) << name;
    }
    const RationalMatrix indefinite{{1, 2}, {2, -3}};
    EXPECT_FALSE(starcalc::is_negative_definite(starcalc::invert(indefinite)));
}

TEST(RatlinProperty, NegativeDefiniteFormsAreNegativeOnRandomVectors) {
    std::mt19937 rng(11);
    for (const auto& [name, rows] : printed_forms()) {
        const auto m = M(*rows);
        ASSERT_TRUE(starcalc::is_negative_definite(m));
        const auto inv = starcalc::invert(m);
        for (int k = 0; k < 1000; ++k) {
            const auto c = fixtures::random_nonzero_vector(rng, m.dimension(), 20);
            EXPECT_LT(starcalc::evaluate_form(m, c).sign(), 0) << name;
            EXPECT_LT(starcalc::evaluate_form(inv, c).sign(), 0) << name;
        }
    }
}

TEST(RatlinProperty, FillingFormQuadratic) {
    // q(a, b) = (-79a^2 + 46ab - 10b^2) / 261, the inverse filling form
    EXPECT_EQ(46 * 46 - 4 * 79 * 10, -1044);
    const auto inv = starcalc::invert(M(fixtures::kRForm));
    for (long a = -15; a <= 15; ++a) {
        for (long b = -15; b <= 15; ++b) {
            if (a == 0 && b == 0) continue;
            const Rational q(-79 * a * a + 46 * a * b - 10 * b * b, 261);
            EXPECT_LT(q.sign(), 0);
            EXPECT_EQ(starcalc::evaluate_form(inv, std::vector<long>{a, b}), q);
        }
    }
}
