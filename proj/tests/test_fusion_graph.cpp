#include <random>

#include <gtest/gtest.h>

#include "wha/graph.hpp"

using namespace wha;

namespace {

std::vector<std::vector<int>> vertex_lists(const std::vector<Path>& ps) {
    std::vector<std::vector<int>> out;
    for (auto& p : ps) out.push_back(p.vertices);
    return out;
}

// walks counted by brute-force recursion over edges
long long count_walks(const DimensionGraph& g, int from, int to, int m) {
    if (m == 0) return from == to ? 1 : 0;
    long long s = 0;
    for (auto& e : g.edges())
        if (e.target == from) s += count_walks(g, e.source, to, m - 1);
    return s;
}

// truncated Clebsch-Gordan: V_a (x) V_1 = V_{a-1} + V_{a+1}, the latter only below the top label
std::map<int, long long> tensor_power_multiplicities(int r, int m) {
    std::map<int, long long> cur{{0, 1}};
    for (int k = 0; k < m; ++k) {
        std::map<int, long long> next;
        for (auto [a, c] : cur) {
            if (a >= 1) next[a - 1] += c;
            if (a + 1 <= r - 2) next[a + 1] += c;
        }
        cur = next;
    }
    return cur;
}

}  // namespace

TEST(Sl2Graph, Shapes) {
    auto g3 = sl2_dimension_graph(3);
    EXPECT_EQ(g3.num_vertices(), 2);
    EXPECT_EQ(g3.num_edges(), 2);
    EXPECT_EQ(g3.multiplicity(0, 1), 1);
    EXPECT_EQ(g3.multiplicity(1, 0), 1);

    auto g5 = sl2_dimension_graph(5);
    EXPECT_EQ(g5.num_vertices(), 4);
    EXPECT_EQ(g5.num_edges(), 6);
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) EXPECT_EQ(g5.multiplicity(j, l), std::abs(j - l) == 1 ? 1 : 0);
    EXPECT_FALSE(g5.has_parallel_edges());
    EXPECT_THROW(sl2_dimension_graph(2), std::invalid_argument);
}

TEST(Sl2Graph, AgreesWithFusionConstructor) {
    for (int r = 3; r <= 8; ++r) EXPECT_EQ(dimension_graph_from_fusion(sl2_fusion_data(r), 1), sl2_dimension_graph(r)) << r;
}

TEST(FusionGraph, Fibonacci) {
    auto g = dimension_graph_from_fusion(fibonacci_fusion_data(), 1);
    EXPECT_EQ(g.num_vertices(), 2);
    EXPECT_EQ(g.num_edges(), 3);
    EXPECT_EQ(g.multiplicity(0, 1), 1);
    EXPECT_EQ(g.multiplicity(1, 0), 1);
    EXPECT_EQ(g.multiplicity(1, 1), 1);
    EXPECT_EQ(g.multiplicity(0, 0), 0);
}

TEST(FusionGraph, RejectsBadGenerators) {
    try {
        dimension_graph_from_fusion(sl2_fusion_data(5), 0);
        FAIL() << "unit accepted as generator";
    } catch (const GeneratorError& e) {
        EXPECT_EQ(e.clause(), 3);
    }
    // V_2 at r=5 only reaches the even labels
    try {
        dimension_graph_from_fusion(sl2_fusion_data(5), 2);
        FAIL() << "non-generating object accepted";
    } catch (const GeneratorError& e) {
        EXPECT_EQ(e.clause(), 1);
    }
    auto f = fibonacci_fusion_data();
    f.N[1][1][1] = 2;
    try {
        dimension_graph_from_fusion(f, 1);
        FAIL() << "multiplicity 2 accepted";
    } catch (const GeneratorError& e) {
        EXPECT_EQ(e.clause(), 2);
    }
    auto broken = fibonacci_fusion_data();
    broken.N[0][1][1] = 0;
    EXPECT_THROW(dimension_graph_from_fusion(broken, 1), std::invalid_argument);
}

TEST(Paths, EnumerationExamples) {
    auto g4 = sl2_dimension_graph(4);
    EXPECT_EQ(enumerate_paths(g4, 0).size(), 3u);
    EXPECT_EQ(vertex_lists(enumerate_paths(g4, 2)),
              (std::vector<std::vector<int>>{{0, 1, 0}, {0, 1, 2}, {1, 0, 1}, {1, 2, 1}, {2, 1, 0}, {2, 1, 2}}));
    auto g3 = sl2_dimension_graph(3);
    EXPECT_EQ(vertex_lists(enumerate_paths(g3, 2)), (std::vector<std::vector<int>>{{0, 1, 0}, {1, 0, 1}}));
    EXPECT_EQ(enumerate_paths(g3, 7).size(), 2u);
}

TEST(Paths, CountsMatchWalkRecursion) {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        DimensionGraph g(n);
        for (int k = 0, ne = static_cast<int>(rng() % 6); k < ne; ++k)
            g.add_edge(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
        for (int m = 0; m <= 4; ++m) {
            long long expect = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) expect += count_walks(g, a, b, m);
            auto ps = enumerate_paths(g, m);
            EXPECT_EQ(static_cast<long long>(ps.size()), expect);
            EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
            for (auto& p : ps) {
                EXPECT_EQ(p.length(), m);
                for (int i = 0; i < m; ++i) {
                    EXPECT_EQ(g.tau(p.edges[i]), p.vertices[i]);
                    EXPECT_EQ(g.sigma(p.edges[i]), p.vertices[i + 1]);
                }
            }
        }
    }
}

TEST(Paths, Multiplicities) {
    for (int r = 5; r <= 8; ++r) {
        auto g = sl2_dimension_graph(r);
        EXPECT_EQ(path_multiplicities(g, 0, 3), (std::map<int, long long>{{1, 2}, {3, 1}}));
        auto m4 = path_multiplicities(g, 0, 4);
        EXPECT_EQ(m4[0], 2);
        EXPECT_EQ(m4[2], 3);
        if (r >= 6) EXPECT_EQ(m4[4], 1);
    }
    auto g = sl2_dimension_graph(4);
    EXPECT_EQ(path_multiplicities(g, 2, 0), (std::map<int, long long>{{2, 1}}));
}

TEST(Paths, MultiplicitiesMatchTensorPowers) {
    for (int r = 3; r <= 7; ++r) {
        auto g = sl2_dimension_graph(r);
        for (int m = 0; m <= 8; ++m) {
            auto got = path_multiplicities(g, 0, m);
            std::erase_if(got, [](auto& kv) { return kv.second == 0; });
            EXPECT_EQ(got, tensor_power_multiplicities(r, m)) << "r=" << r << " m=" << m;
        }
    }
}

TEST(Paths, Construction) {
    auto g = sl2_dimension_graph(4);
    auto p = path_from_vertices(g, {0, 1, 2});
    EXPECT_EQ(p.tau(), 0);
    EXPECT_EQ(p.sigma(), 2);
    EXPECT_EQ(p.length(), 2);
    EXPECT_THROW(path_from_vertices(g, {0, 2}), std::invalid_argument);
    DimensionGraph multi(2);
    multi.add_edge(0, 1);
    multi.add_edge(0, 1);
    EXPECT_TRUE(multi.has_parallel_edges());
    EXPECT_THROW(path_from_vertices(multi, {1, 0}), std::invalid_argument);
    EXPECT_EQ(make_path(multi, {1}).vertices, (std::vector<int>{1, 0}));
}

TEST(FusionData, Validation) {
    EXPECT_EQ(sl2_fusion_data(6).validate(), "");
    EXPECT_EQ(fibonacci_fusion_data().validate(), "");
    auto f = sl2_fusion_data(4);
    f.unit = 5;
    EXPECT_FALSE(f.validate().empty());
    EXPECT_TRUE(sl2_admissible(1, 1, 0, 3));
    EXPECT_FALSE(sl2_admissible(1, 1, 2, 3));
    EXPECT_FALSE(sl2_admissible(1, 2, 0, 6));
}
