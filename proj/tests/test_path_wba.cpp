#include <random>

#include <gtest/gtest.h>

#include "wha/path_wba.hpp"
#include "wha/wba_axioms.hpp"

using namespace wha;

namespace {

struct Fixture {
    DimensionGraph g;
    PathWba H;
    const PathSpace& S;
    Fixture(const DimensionGraph& graph, int cap) : g(graph), H(graph, cap), S(H.space()) {}

    WbaElement el(std::vector<int> p, std::vector<int> q, CycloNumber c = 1) const {
        int m = static_cast<int>(p.size()) - 1;
        return H.basis(m, S.index_of_vertices(p), S.index_of_vertices(q), c);
    }
    WbaElement random(std::mt19937& rng, int max_m, int terms) const {
        WbaElement x(H.cap());
        std::uniform_int_distribution<int> coef(-4, 4);
        for (int t = 0; t < terms; ++t) {
            int m = static_cast<int>(rng() % (max_m + 1));
            int n = S.count(m);
            if (!n) continue;
            x.add({m, static_cast<int>(rng() % n), static_cast<int>(rng() % n)}, CycloNumber(coef(rng)));
        }
        return x;
    }
};

TensorElement tensor_product(const PathWba& H, const TensorElement& a, const TensorElement& b) {
    TensorElement out;
    for (auto& [ka, va] : a.terms())
        for (auto& [kb, vb] : b.terms()) {
            auto l = H.multiply_basis(ka.first, kb.first);
            auto r = H.multiply_basis(ka.second, kb.second);
            if (l && r) out.add(*l, *r, va * vb);
        }
    return out;
}

WbaElement left_counit(const PathWba& H, const TensorElement& t) {
    WbaElement out(H.cap());
    for (auto& [k, v] : t.terms())
        if (k.first.p == k.first.q) out.add(k.second, v);
    return out;
}

WbaElement right_counit(const PathWba& H, const TensorElement& t) {
    WbaElement out(H.cap());
    for (auto& [k, v] : t.terms())
        if (k.second.p == k.second.q) out.add(k.first, v);
    return out;
}

WbaElement single(const PathWba& H, const BasisKey& k) {
    WbaElement e(H.cap());
    e.add(k, CycloNumber(1));
    return e;
}

}  // namespace

TEST(PathWba, Unit) {
    Fixture f3(sl2_dimension_graph(3), 2);
    auto u = f3.H.unit();
    EXPECT_EQ(u, f3.el({0}, {0}) + f3.el({0}, {1}) + f3.el({1}, {0}) + f3.el({1}, {1}));
    Fixture f4(sl2_dimension_graph(4), 2);
    EXPECT_EQ(f4.H.unit().size(), 9u);
    Fixture one(DimensionGraph(1), 1);
    EXPECT_EQ(one.H.unit(), one.el({0}, {0}));
}

TEST(PathWba, MultiplyExamples) {
    Fixture f(sl2_dimension_graph(3), 3);
    EXPECT_EQ(f.H.multiply(f.el({0, 1}, {0, 1}), f.el({1, 0}, {1, 0})), f.el({0, 1, 0}, {0, 1, 0}));
    EXPECT_TRUE(f.H.multiply(f.el({0, 1}, {0, 1}), f.el({0, 1}, {0, 1})).is_zero());
    // only one leg composable
    EXPECT_TRUE(f.H.multiply(f.el({0, 1}, {1, 0}), f.el({1, 0}, {1, 0})).is_zero());
    Fixture small(sl2_dimension_graph(3), 2);
    EXPECT_THROW(small.H.multiply(small.el({0, 1, 0}, {0, 1, 0}), small.el({0, 1}, {0, 1})), DegreeOverflow);
}

TEST(PathWba, UnitLawOnRandomElements) {
    std::mt19937 rng(9);
    Fixture f(sl2_dimension_graph(5), 4);
    for (int t = 0; t < 30; ++t) {
        auto x = f.random(rng, 4, 6);
        EXPECT_EQ(f.H.multiply(f.H.unit(), x), x);
        EXPECT_EQ(f.H.multiply(x, f.H.unit()), x);
    }
}

TEST(PathWba, ComultiplyExamples) {
    Fixture f(sl2_dimension_graph(3), 2);
    auto& S = f.S;
    int a = S.index_of_vertices({0, 1, 0}), b = S.index_of_vertices({1, 0, 1});
    TensorElement expect;
    expect.add({2, a, a}, {2, a, b}, 1);
    expect.add({2, a, b}, {2, b, b}, 1);
    EXPECT_EQ(f.H.comultiply(f.el({0, 1, 0}, {1, 0, 1})), expect);

    Fixture g(sl2_dimension_graph(5), 1);
    TensorElement d0;
    for (int v = 0; v < 4; ++v) d0.add({0, 1, v}, {0, v, 3}, 1);
    EXPECT_EQ(g.H.comultiply(g.el({1}, {3})), d0);
}

TEST(PathWba, CounitAndCounitalMaps) {
    Fixture f(sl2_dimension_graph(4), 2);
    EXPECT_TRUE(f.H.counit(f.el({0, 1, 0}, {0, 1, 0})).is_one());
    EXPECT_TRUE(f.H.counit(f.el({0, 1, 0}, {1, 0, 1})).is_zero());
    EXPECT_EQ(f.H.counit(f.H.unit()), CycloNumber(f.S.count(0)));

    EXPECT_EQ(f.H.counital_source(f.el({0, 1, 0}, {0, 1, 0})), f.el({0}, {0}) + f.el({1}, {0}) + f.el({2}, {0}));
    EXPECT_TRUE(f.H.counital_source(f.el({0, 1, 0}, {1, 0, 1})).is_zero());
    EXPECT_EQ(f.H.counital_target(f.el({0, 1, 2}, {0, 1, 2})), f.el({0}, {0}) + f.el({0}, {1}) + f.el({0}, {2}));
}

TEST(PathWba, CounitLawOnRandomElements) {
    std::mt19937 rng(4);
    Fixture f(sl2_dimension_graph(4), 3);
    for (int t = 0; t < 30; ++t) {
        auto x = f.random(rng, 3, 5);
        auto d = f.H.comultiply(x);
        EXPECT_EQ(left_counit(f.H, d), x);
        EXPECT_EQ(right_counit(f.H, d), x);
    }
}

TEST(PathWba, ComultiplicationIsMultiplicative) {
    std::mt19937 rng(12);
    for (auto g : {sl2_dimension_graph(4), dimension_graph_from_fusion(fibonacci_fusion_data(), 1)}) {
        Fixture f(g, 4);
        for (int t = 0; t < 20; ++t) {
            auto x = f.random(rng, 2, 4), y = f.random(rng, 2, 4);
            EXPECT_EQ(f.H.comultiply(f.H.multiply(x, y)), tensor_product(f.H, f.H.comultiply(x), f.H.comultiply(y)));
        }
    }
}

TEST(PathWba, WeakCounitOnBasisTriples) {
    // eps(xyz) = eps(x y') eps(y'' z) = eps(x y'') eps(y' z)
    Fixture f(sl2_dimension_graph(4), 3);
    auto& H = f.H;
    std::vector<BasisKey> keys;
    for (int m = 0; m <= 1; ++m)
        for (int p = 0; p < f.S.count(m); ++p)
            for (int q = 0; q < f.S.count(m); ++q) keys.push_back({m, p, q});
    for (auto& x : keys)
        for (auto& y : keys)
            for (auto& z : keys) {
                auto X = single(H, x), Y = single(H, y), Z = single(H, z);
                CycloNumber lhs = H.counit(H.multiply(H.multiply(X, Y), Z));
                CycloNumber a = 0, b = 0;
                auto dy = H.comultiply(Y);
                for (auto& [k, v] : dy.terms()) {
                    auto l = single(H, k.first), r = single(H, k.second);
                    a += v * H.counit(H.multiply(X, l)) * H.counit(H.multiply(r, Z));
                    b += v * H.counit(H.multiply(X, r)) * H.counit(H.multiply(l, Z));
                }
                ASSERT_EQ(lhs, a);
                ASSERT_EQ(lhs, b);
            }
}

TEST(PathWba, CounitalMapsAreIdempotentAndCommute) {
    std::mt19937 rng(30);
    Fixture f(sl2_dimension_graph(5), 3);
    for (int t = 0; t < 20; ++t) {
        auto x = f.random(rng, 3, 5), y = f.random(rng, 3, 5);
        auto s = f.H.counital_source(x), tt = f.H.counital_target(y);
        EXPECT_EQ(f.H.counital_source(s), s);
        EXPECT_EQ(f.H.counital_target(tt), tt);
        EXPECT_EQ(f.H.multiply(s, tt), f.H.multiply(tt, s));
    }
}

TEST(TruncationIdempotent, Examples) {
    auto g3 = sl2_dimension_graph(3);
    auto P = truncation_idempotent(g3, 1, 1);
    EXPECT_EQ(P.rows(), 4u);
    EXPECT_EQ(rank(P), 2u);
    EXPECT_EQ(P * P, P);
    auto g5 = sl2_dimension_graph(5);
    auto P0 = truncation_idempotent(g5, 0, 0);
    EXPECT_EQ(rank(P0), 4u);
    for (int m = 0; m <= 2; ++m)
        for (int l = 0; l <= 2; ++l) {
            auto Q = truncation_idempotent(g5, m, l);
            EXPECT_EQ(Q * Q, Q);
            EXPECT_EQ(static_cast<int>(rank(Q)), PathSpace(g5, m + l).count(m + l));
        }
}

TEST(HgAxioms, Sl2GraphsPass) {
    for (int r = 3; r <= 6; ++r) {
        auto rep = check_wba_axioms(sl2_dimension_graph(r), 4);
        EXPECT_TRUE(rep.ok()) << "r=" << r << "\n" << rep.summary();
    }
}

TEST(HgAxioms, AllSmallDigraphsPass) {
    int count = 0;
    for (int n = 1; n <= 3; ++n)
        for (auto& g : all_digraphs(n)) {
            ++count;
            auto rep = check_wba_axioms(g, 3);
            ASSERT_TRUE(rep.ok()) << rep.summary();
        }
    // loops allowed: 2^(n^2) digraphs on n labelled vertices
    EXPECT_EQ(count, 2 + 16 + 512);
}

TEST(HgAxioms, CorruptedProductIsCaught) {
    auto g = sl2_dimension_graph(4);
    PathSpace S(g, 3);
    BasisKey x{1, S.index_of_vertices({0, 1}), S.index_of_vertices({0, 1})};
    BasisKey y{1, S.index_of_vertices({1, 2}), S.index_of_vertices({1, 0})};
    HgAxiomChecker c(g, 3);
    c.corrupt_product(x, y);
    auto rep = c.run();
    auto* mult = rep.find("comultiplication is multiplicative");
    ASSERT_NE(mult, nullptr);
    EXPECT_FALSE(mult->ok);
    EXPECT_NE(mult->witness.find("[(0,1)|(0,1)]_1"), std::string::npos) << mult->witness;
    EXPECT_TRUE(rep.find("coassociativity")->ok);
}
