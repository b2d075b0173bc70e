#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "wha/cyclotomic.hpp"

using namespace wha;

namespace {

using cplx = std::complex<double>;

cplx numeric(const CycloNumber& x) {
    int N = x.conductor();
    cplx s = 0;
    for (int i = 0; i < x.length(); ++i)
        s += x.coeff(i).get_d() * std::polar(1.0, 2 * std::numbers::pi * i / N);
    return s;
}

// reference model: rational group ring of Z/N, mapped into the field term by term
struct GroupRing {
    int N;
    std::vector<mpq_class> c;
    explicit GroupRing(int n) : N(n), c(n, 0) {}
    GroupRing operator*(const GroupRing& o) const {
        GroupRing out(N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) out.c[(i + j) % N] += c[i] * o.c[j];
        return out;
    }
    GroupRing operator+(const GroupRing& o) const {
        GroupRing out(N);
        for (int i = 0; i < N; ++i) out.c[i] = c[i] + o.c[i];
        return out;
    }
    CycloNumber image() const {
        const CycloField* F = CycloField::get(N);
        CycloNumber s = CycloNumber::zero(F);
        for (int i = 0; i < N; ++i)
            if (c[i] != 0) s += CycloNumber::rational(c[i], F) * CycloNumber::zeta_power(F, i);
        return s;
    }
};

GroupRing random_element(std::mt19937& rng, int N) {
    GroupRing x(N);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5), pick(0, 2);
    for (int i = 0; i < N; ++i)
        if (pick(rng) == 0) x.c[i] = mpq_class(num(rng), den(rng));
    for (auto& v : x.c) v.canonicalize();
    return x;
}

int multiplicative_order(const CycloNumber& x) {
    CycloNumber p = x;
    for (int k = 1; k <= 1000; ++k) {
        if (p.is_one()) return k;
        p = p * x;
    }
    return -1;
}

}  // namespace

TEST(CyclotomicPolynomial, SmallCases) {
    EXPECT_EQ(CycloField::cyclotomic_poly(1), (std::vector<i64>{-1, 1}));
    EXPECT_EQ(CycloField::cyclotomic_poly(4), (std::vector<i64>{1, 0, 1}));
    EXPECT_EQ(CycloField::cyclotomic_poly(8), (std::vector<i64>{1, 0, 0, 0, 1}));
    EXPECT_EQ(CycloField::cyclotomic_poly(12), (std::vector<i64>{1, 0, -1, 0, 1}));
    EXPECT_EQ(CycloField::get(24)->phi, 8);
    EXPECT_EQ(CycloField::get(40)->phi, 16);
}

TEST(CycloNumber, ArithmeticMatchesGroupRingModel) {
    std::mt19937 rng(11);
    for (int N : {8, 12, 16, 24, 40}) {
        for (int trial = 0; trial < 25; ++trial) {
            auto a = random_element(rng, N), b = random_element(rng, N);
            EXPECT_EQ((a * b).image(), a.image() * b.image()) << "N=" << N;
            EXPECT_EQ((a + b).image(), a.image() + b.image()) << "N=" << N;
        }
    }
}

TEST(CycloNumber, NumericEmbeddingIsMultiplicative) {
    std::mt19937 rng(5);
    for (int N : {16, 24, 40}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto x = random_element(rng, N).image(), y = random_element(rng, N).image();
            cplx lhs = numeric(x * y), rhs = numeric(x) * numeric(y);
            EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-6 * (1 + std::abs(rhs)));
        }
    }
}

TEST(CycloNumber, InverseAndDivision) {
    std::mt19937 rng(3);
    for (int N : {12, 24, 40}) {
        const CycloField* F = CycloField::get(N);
        for (int trial = 0; trial < 10; ++trial) {
            auto x = random_element(rng, N).image();
            if (x.is_zero()) continue;
            EXPECT_EQ(x * x.inverse(), CycloNumber::one(F));
            auto y = random_element(rng, N).image();
            EXPECT_EQ((y / x) * x, y);
        }
        EXPECT_THROW(CycloNumber::zero(F).inverse(), std::domain_error);
    }
}

TEST(CycloNumber, CanonicalRepresentation) {
    const CycloField* F = CycloField::get(12);
    auto z = [&](int k) { return CycloNumber::zeta_power(F, k); };
    // zeta_12^4 - zeta_12^2 + 1 = 0
    EXPECT_TRUE((z(4) - z(2) + CycloNumber::one(F)).is_zero());
    EXPECT_EQ(z(6), -CycloNumber::one(F));
    EXPECT_EQ(z(12), CycloNumber::one(F));
    EXPECT_EQ(z(-1), z(11));
    EXPECT_EQ(z(3) * z(3), z(6));
    EXPECT_EQ(CycloNumber(2), CycloNumber(2).in_field(F));
}

TEST(CycloNumber, GaloisAndConjugation) {
    const CycloField* F = CycloField::get(8);
    auto z = CycloNumber::zeta_power(F, 1);
    EXPECT_EQ(z.conj(), CycloNumber::zeta_power(F, 7));
    EXPECT_EQ(z * z.conj(), CycloNumber::one(F));
    EXPECT_EQ(z.galois(3), CycloNumber::zeta_power(F, 3));
    EXPECT_THROW(z.galois(2), std::invalid_argument);
}

TEST(CycloNumber, LargeCoefficientsStayExact) {
    const CycloField* F = CycloField::get(24);
    CycloNumber x = CycloNumber::zeta_power(F, 1) + CycloNumber::rational(7, 3, F);
    CycloNumber p = x.pow(60);
    EXPECT_EQ(p * x.pow(-60), CycloNumber::one(F));
    EXPECT_EQ(x.pow(30) * x.pow(30), p);
    EXPECT_NEAR(std::abs(numeric(p) - std::pow(numeric(x), 60)) / std::abs(numeric(p)), 0.0, 1e-9);
}

TEST(CycloNumber, HashAgreesWithEquality) {
    const CycloField* F = CycloField::get(16);
    auto a = CycloNumber::zeta_power(F, 9), b = -CycloNumber::zeta_power(F, 1);
    EXPECT_EQ(a, b);
    EXPECT_EQ(std::hash<CycloNumber>{}(a), std::hash<CycloNumber>{}(b));
}

TEST(LevelField, ConductorsAndRoots) {
    auto L3 = field_for_level(3);
    EXPECT_EQ(L3.F->N, 24);
    EXPECT_EQ(L3.A, CycloNumber::zeta_power(L3.F, 2));
    EXPECT_TRUE(L3.A.pow(12).is_one());
    EXPECT_EQ(L3.A.pow(6), -L3.one());

    auto L4 = field_for_level(4);
    EXPECT_EQ(L4.F->N, 16);
    EXPECT_EQ(L4.q, CycloNumber::zeta_power(L4.F, 2));
    EXPECT_TRUE(L4.q.pow(8).is_one());

    auto L5 = field_for_level(5, 3);
    EXPECT_EQ(L5.F->N, 40);
    EXPECT_EQ(L5.A, CycloNumber::zeta_power(L5.F, 6));
    EXPECT_EQ(multiplicative_order(L5.A), 20);
}

TEST(LevelField, RejectsBadParameters) {
    EXPECT_THROW(field_for_level(2), std::invalid_argument);
    EXPECT_THROW(field_for_level(4, 2), std::invalid_argument);
    EXPECT_THROW(field_for_level(5, 5), std::invalid_argument);
}

TEST(LevelField, SqrtTwo) {
    for (int r = 3; r <= 6; ++r) {
        auto L = field_for_level(r);
        EXPECT_EQ(L.sqrt2 * L.sqrt2, L.integer(2));
    }
}

TEST(QuantumInteger, Values) {
    for (int r = 3; r <= 7; ++r) {
        auto L = field_for_level(r);
        EXPECT_TRUE(L.qint(0).is_zero());
        EXPECT_TRUE(L.qint(1).is_one());
        EXPECT_TRUE(L.qint(r).is_zero()) << "r=" << r;
        EXPECT_EQ(L.qint(-2), -L.qint(2));
        // [n] = (q^n - q^-n) / (q - q^-1)
        for (int n = 2; n < 2 * r; ++n)
            EXPECT_EQ(L.qint(n) * (L.q - L.qinv), L.q.pow(n) - L.q.pow(-n)) << "r=" << r << " n=" << n;
        // [2][n] = [n+1] + [n-1]
        for (int n = 1; n < r; ++n) EXPECT_EQ(L.qint(2) * L.qint(n), L.qint(n + 1) + L.qint(n - 1));
    }
    auto L3 = field_for_level(3);
    EXPECT_TRUE(L3.qint(2).is_one());
}

TEST(QuantumInteger, NumericValue) {
    for (int r = 3; r <= 6; ++r) {
        auto L = field_for_level(r);
        for (int n = 1; n < r; ++n) {
            double expect = std::sin(n * std::numbers::pi / r) / std::sin(std::numbers::pi / r);
            cplx got = numeric(L.qint(n));
            EXPECT_NEAR(got.real(), expect, 1e-9);
            EXPECT_NEAR(got.imag(), 0.0, 1e-9);
        }
    }
}

TEST(CycloNumber, DecimalAndString) {
    auto L = field_for_level(4);
    EXPECT_EQ(L.qint(2).to_decimal(10).substr(0, 8), "1.414213");
    EXPECT_EQ(CycloNumber::rational(-3, 4).to_string(), "-3/4");
}
