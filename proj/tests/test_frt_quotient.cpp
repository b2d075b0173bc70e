#include <random>

#include <gtest/gtest.h>

#include "wha/assembly.hpp"
#include "wha/frt_quotient.hpp"
#include "wha/temperley_lieb.hpp"

using namespace wha;

namespace {

struct Level {
    LevelField L;
    DimensionGraph g;
    RMatrix R;
    PathWba H;
    RelationSet rels;
    FrtQuotient Q;
    Level(int r, int cap)
        : L(field_for_level(r)),
          g(sl2_dimension_graph(r)),
          R(TemperleyLieb(L).derive_r_matrix()),
          H(g, cap, L.F),
          rels(frt_relations(H, R)),
          Q(g, rels, cap, L.F) {}
};

std::size_t flat(const PathSpace& S, const BasisKey& k) { return static_cast<std::size_t>(k.p) * S.count(k.m) + k.q; }

SparseSolver<CycloNumber>::Row to_row(const PathSpace& S, const WbaElement& x) {
    SparseSolver<CycloNumber>::Row row;
    for (auto& [k, c] : x.terms()) row.emplace_back(flat(S, k), c);
    return row;
}

// the degree-m ideal spanned directly by the products x * gen * y of basis monomials
SparseSolver<CycloNumber> sandwich_span(const Level& lv, int m) {
    const PathSpace& S = lv.H.space();
    SparseSolver<CycloNumber> span(static_cast<std::size_t>(S.count(m)) * S.count(m), lv.L.one());
    for (auto& gen : lv.rels.generators) {
        int d = gen.degree();
        for (int a = 0; a + d <= m; ++a) {
            int b = m - d - a;
            for (int p = 0; p < S.count(a); ++p)
                for (int q = 0; q < S.count(a); ++q) {
                    auto left = lv.H.multiply(lv.H.basis(a, p, q), gen);
                    if (left.is_zero()) continue;
                    for (int s = 0; s < S.count(b); ++s)
                        for (int t = 0; t < S.count(b); ++t) {
                            auto x = lv.H.multiply(left, lv.H.basis(b, s, t));
                            if (!x.is_zero()) span.add_row(to_row(S, x), lv.L.zero());
                        }
                }
        }
    }
    return span;
}

bool in_span(const SparseSolver<CycloNumber>& span, const PathSpace& S, const WbaElement& x) {
    return span.reduce(to_row(S, x)).empty();
}

WbaElement random_homogeneous(std::mt19937& rng, const PathWba& H, int m, int terms) {
    const PathSpace& S = H.space();
    WbaElement x(H.cap());
    for (int t = 0; t < terms; ++t)
        x.add({m, static_cast<int>(rng() % S.count(m)), static_cast<int>(rng() % S.count(m))},
              H.field() ? CycloNumber(static_cast<int>(rng() % 9) - 4).in_field(H.field()) : CycloNumber(1));
    return x;
}

}  // namespace

TEST(FrtRelations, LevelThreeIsTrivial) {
    Level lv(3, 4);
    EXPECT_TRUE(lv.rels.generators.empty());
    for (int m = 0; m <= 4; ++m) {
        EXPECT_EQ(lv.Q.dim(m), 4);
        EXPECT_EQ(lv.Q.ideal_rank(m), 0);
    }
}

TEST(FrtRelations, GeneratorsLieInKernelOfCounit) {
    for (int r = 4; r <= 6; ++r) {
        Level lv(r, 2);
        EXPECT_FALSE(lv.rels.generators.empty());
        for (auto& g : lv.rels.generators) {
            EXPECT_TRUE(lv.H.counit(g).is_zero());
            EXPECT_EQ(g.degree(), 2);
            EXPECT_TRUE(g.is_homogeneous());
        }
    }
}

TEST(FrtRelations, ClosedFormGeneratesTheSameIdeal) {
    for (int r = 4; r <= 6; ++r) {
        Level lv(r, 2);
        auto other = frt_relations(lv.H, closed_form_r(lv.L));
        FrtQuotient Q2(lv.g, other, 2, lv.L.F);
        EXPECT_EQ(Q2.ideal_rref(2), lv.Q.ideal_rref(2)) << "r=" << r;
    }
}

TEST(GeneralRelations, SpecialCoefficientSystems) {
    Level lv(5, 2);
    auto same = general_relations(lv.H, coefficients_from_r(lv.H.space(), lv.R));
    EXPECT_EQ(same.generators.size(), lv.rels.generators.size());
    for (std::size_t i = 0; i < same.generators.size(); ++i) EXPECT_EQ(same.generators[i], lv.rels.generators[i]);

    EndomorphismCoefficients id;
    id.n = 2;
    for (int p = 0; p < lv.H.space().count(2); ++p) id.f[{p, p}] = lv.L.one();
    EXPECT_TRUE(general_relations(lv.H, id).generators.empty());

    // distinct scalars on the vertices give the degree-0 generators [u|v] (lambda_v - lambda_u)
    EndomorphismCoefficients f0;
    f0.n = 0;
    for (int v = 0; v < 4; ++v) f0.f[{v, v}] = lv.L.integer(v + 1);
    auto rel0 = general_relations(lv.H, f0);
    EXPECT_EQ(rel0.generators.size(), 12u);
    for (auto& g : rel0.generators) {
        ASSERT_EQ(g.size(), 1u);
        auto& [k, c] = *g.terms().begin();
        EXPECT_EQ(k.m, 0);
        EXPECT_EQ(c, lv.L.integer(k.q - k.p));
    }
    EXPECT_THROW(FrtQuotient(lv.g, rel0, 2, lv.L.F), std::invalid_argument);

    EndomorphismCoefficients bad;
    bad.n = 2;
    bad.f[{lv.H.space().index_of_vertices({0, 1, 0}), lv.H.space().index_of_vertices({0, 1, 2})}] = lv.L.one();
    EXPECT_THROW(general_relations(lv.H, bad), std::invalid_argument);
}

TEST(Quotient, DimensionsLevelFour) {
    Level lv(4, 4);
    EXPECT_EQ(lv.Q.ambient_dim(0), 9);
    EXPECT_EQ(lv.Q.dim(0), 9);
    EXPECT_EQ(lv.Q.dim(1), 16);
    EXPECT_EQ(lv.Q.ambient_dim(2), 36);
    EXPECT_EQ(lv.Q.ideal_rank(2), 18);
    EXPECT_EQ(lv.Q.dim(2), 18);
    EXPECT_EQ(lv.Q.ambient_dim(3), 64);
    EXPECT_EQ(lv.Q.dim(3), 16);
    EXPECT_EQ(lv.Q.dim(4), 18);
}

TEST(Quotient, DimensionsMatchFusionRules) {
    for (int r = 3; r <= 5; ++r) {
        Level lv(r, 5);
        auto o = fusion_oracle(sl2_fusion_data(r), lv.g, 5);
        for (int m = 0; m <= 5; ++m) EXPECT_EQ(lv.Q.dim(m), o.degree_dims[m]) << "r=" << r << " m=" << m;
        int n1 = lv.H.space().count(1);
        EXPECT_EQ(lv.Q.dim(1), n1 * n1);
    }
}

TEST(Quotient, IdealAgreesWithSandwichSpan) {
    for (auto [r, top] : std::vector<std::pair<int, int>>{{4, 4}, {5, 3}, {6, 3}}) {
        Level lv(r, top);
        const PathSpace& S = lv.H.space();
        for (int m = 2; m <= top; ++m) {
            auto span = sandwich_span(lv, m);
            EXPECT_EQ(static_cast<long long>(span.rank()), lv.Q.ideal_rank(m)) << "r=" << r << " m=" << m;
            // x - nf(x) lies in the ideal, for every monomial
            for (int p = 0; p < S.count(m); ++p)
                for (int q = 0; q < S.count(m); ++q) {
                    BasisKey k{m, p, q};
                    WbaElement x(lv.H.cap());
                    x.add(k, lv.L.one());
                    ASSERT_TRUE(in_span(span, S, x - lv.Q.normal_form(k))) << "r=" << r << " m=" << m;
                }
            // the rows of the published RREF lie in the ideal
            auto rr = lv.Q.ideal_rref(m);
            EXPECT_EQ(static_cast<long long>(rr.rows()), lv.Q.ideal_rank(m));
            for (std::size_t i = 0; i < rr.rows(); ++i) {
                SparseSolver<CycloNumber>::Row row;
                for (std::size_t j = 0; j < rr.cols(); ++j)
                    if (!rr(i, j).is_zero()) row.emplace_back(j, rr(i, j));
                EXPECT_TRUE(span.reduce(row).empty());
            }
        }
    }
}

TEST(Quotient, RepresentativeIndependence) {
    Level lv(4, 4);
    std::mt19937 rng(10);
    for (int t = 0; t < 30; ++t) {
        auto& gen = lv.rels.generators[rng() % lv.rels.generators.size()];
        auto u = random_homogeneous(rng, lv.H, static_cast<int>(rng() % 2), 2);
        auto v = random_homogeneous(rng, lv.H, static_cast<int>(rng() % 2), 2);
        auto i = lv.H.multiply(lv.H.multiply(u, gen), v);
        EXPECT_TRUE(lv.Q.reduce(i).is_zero());
        int d = i.is_zero() ? 2 : i.degree();
        if (d > 2) continue;
        auto x = random_homogeneous(rng, lv.H, d, 3);
        auto y = random_homogeneous(rng, lv.H, 4 - d, 3);
        EXPECT_EQ(lv.Q.multiply(x + i, y), lv.Q.multiply(x, y));
        EXPECT_EQ(lv.Q.multiply(y, x + i), lv.Q.multiply(y, x));
    }
}

TEST(Quotient, UnitAndFrtRelationsHold) {
    Level lv(4, 3);
    std::mt19937 rng(1);
    for (int t = 0; t < 10; ++t) {
        auto x = lv.Q.reduce(random_homogeneous(rng, lv.H, 1 + static_cast<int>(rng() % 2), 3));
        EXPECT_EQ(lv.Q.multiply(lv.Q.unit(), x), x);
        EXPECT_EQ(lv.Q.multiply(x, lv.Q.unit()), x);
    }
    // sum_p [r|p] R_{p;q} = sum_p R_{r;p} [p|q] after reduction, written with degree-1 products
    const PathSpace& S = lv.H.space();
    auto R = r_matrix_on_paths(S, lv.R, 2, 1);
    for (int r = 0; r < S.count(2); ++r)
        for (int q = 0; q < S.count(2); ++q) {
            WbaElement lhs(lv.H.cap()), rhs(lv.H.cap());
            for (int p = 0; p < S.count(2); ++p) {
                auto [r1, r2] = S.split(2, r, 1);
                auto [p1, p2] = S.split(2, p, 1);
                auto [q1, q2] = S.split(2, q, 1);
                auto tt = [&](int a1, int a2, int b1, int b2) {
                    return lv.H.multiply(lv.H.basis(1, a1, b1), lv.H.basis(1, a2, b2));
                };
                if (!R(p, q).is_zero()) lhs = lhs + R(p, q) * tt(r1, r2, p1, p2);
                if (!R(r, p).is_zero()) rhs = rhs + R(r, p) * tt(p1, p2, q1, q2);
            }
            EXPECT_EQ(lv.Q.reduce(lhs), lv.Q.reduce(rhs));
        }
}

TEST(Quotient, CoidealProperty) {
    for (int r = 4; r <= 6; ++r) {
        Level lv(r, 2);
        auto rep = lv.Q.check_coideal();
        EXPECT_GT(rep.generators, 0);
        EXPECT_TRUE(rep.counit_ok) << "r=" << r;
        EXPECT_TRUE(rep.coproduct_ok) << "r=" << r;
    }
}

TEST(Quotient, ComultiplicationIsMultiplicative) {
    Level lv(4, 4);
    std::mt19937 rng(2);
    for (int t = 0; t < 10; ++t) {
        auto x = lv.Q.reduce(random_homogeneous(rng, lv.H, 2, 3));
        auto y = lv.Q.reduce(random_homogeneous(rng, lv.H, 1 + static_cast<int>(rng() % 2), 3));
        auto lhs = lv.Q.comultiply(lv.Q.multiply(x, y));
        TensorElement prod;
        auto dx = lv.Q.comultiply(x), dy = lv.Q.comultiply(y);
        for (auto& [ka, va] : dx.terms())
            for (auto& [kb, vb] : dy.terms()) {
                auto l = lv.H.multiply_basis(ka.first, kb.first);
                auto rr = lv.H.multiply_basis(ka.second, kb.second);
                if (l && rr) prod.add(*l, *rr, va * vb);
            }
        EXPECT_EQ(lhs, lv.Q.reduce(prod));
    }
}

TEST(Quotient, RejectsMalformedGenerators) {
    Level lv(4, 2);
    auto mixed = lv.rels.generators[0] + lv.H.basis(1, 0, 0, lv.L.one());
    EXPECT_THROW(FrtQuotient(lv.g, std::vector<WbaElement>{mixed}, 2, lv.L.F), std::invalid_argument);
    const PathSpace& S = lv.H.space();
    auto blocks = lv.H.basis(2, S.index_of_vertices({0, 1, 0}), S.index_of_vertices({0, 1, 0}), lv.L.one()) +
                  lv.H.basis(2, S.index_of_vertices({1, 2, 1}), S.index_of_vertices({1, 2, 1}), lv.L.one());
    EXPECT_THROW(FrtQuotient(lv.g, std::vector<WbaElement>{blocks}, 2, lv.L.F), std::invalid_argument);
    EXPECT_THROW(lv.Q.dim(3), DegreeOverflow);
}

TEST(StarTriangular, Holds) {
    for (int r = 3; r <= 6; ++r) {
        auto g = sl2_dimension_graph(r);
        EXPECT_TRUE(check_star_triangular(closed_form_r(r), g).ok) << r;
        EXPECT_TRUE(check_star_triangular(derive_r_matrix(r), g).ok) << r;
        RMatrix id;
        id.r = r;
        id.F = field_for_level(r).F;
        PathSpace S(g, 2);
        for (auto& p : S.paths(2)) id.set({p.vertices[0], p.vertices[1], p.vertices[2]}, {p.vertices[0], p.vertices[1], p.vertices[2]}, CycloNumber::one(id.F));
        EXPECT_TRUE(check_star_triangular(id, g).ok);
    }
}

TEST(StarTriangular, PerturbationIsCaught) {
    for (int r = 4; r <= 6; ++r) {
        auto R = closed_form_r(r);
        auto key = R.entries.begin()->first;
        for (auto& [k, v] : R.entries)
            if (k.first != k.second) {
                key = k;
                break;
            }
        R.set(key.first, key.second, R(key.first, key.second) + CycloNumber::one(R.F));
        auto rep = check_star_triangular(R, sl2_dimension_graph(r));
        EXPECT_FALSE(rep.ok);
        EXPECT_GT(rep.nonzero_entries, 0);
        EXPECT_NE(rep.witness.find("residual"), std::string::npos);
    }
}

TEST(RForm, BaseCases) {
    Level lv(4, 3);
    const PathSpace& S = lv.H.space();
    RForm rf(S, lv.R);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v)
            for (int w = 0; w < 3; ++w)
                for (int x = 0; x < 3; ++x)
                    EXPECT_EQ(rf(BasisKey{0, u, v}, BasisKey{0, w, x}).is_one(), u == v && v == x && u == w);
    // degree-1 pairs with mismatched endpoints vanish
    int a = S.index_of_vertices({0, 1}), b = S.index_of_vertices({1, 2}), c = S.index_of_vertices({2, 1});
    EXPECT_TRUE(rf(BasisKey{1, a, a}, BasisKey{1, c, c}).is_zero());
    EXPECT_TRUE(rf(BasisKey{1, a, a}, BasisKey{1, a, a}).is_zero());
    EXPECT_TRUE(rf(BasisKey{1, a, b}, BasisKey{1, c, a}).is_zero());
}

TEST(RForm, LawsAtLowDegree) {
    Level lv(4, 4);
    RForm rf(lv.H.space(), lv.R), rb(lv.H.space(), invert_r_matrix(lv.R, lv.g), true);
    auto rep = check_rform(lv.Q, rf, rb, 2);
    for (auto& c : rep.all()) EXPECT_TRUE(c.ok) << c.name << ": " << c.witness;
    EXPECT_GT(rep.exchange.instances, 0);
}

TEST(RForm, InverseMatrix) {
    for (int r = 3; r <= 6; ++r) {
        auto g = sl2_dimension_graph(r);
        auto R = derive_r_matrix(r);
        EXPECT_EQ(invert_r_matrix(R, g), derive_r_matrix(r, 1, true)) << r;
    }
}
