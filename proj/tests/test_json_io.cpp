#include <random>
#include <type_traits>

#include <gtest/gtest.h>

#include "wha/grouplike.hpp"
#include "wha/json_io.hpp"

using namespace wha;

namespace {

template <class T, class Write, class Read>
void expect_round_trip(const T& x, Write write, Read read) {
    std::string text = dump(write(x));
    T back = read(json::parse(text));
    if constexpr (std::is_same_v<T, FusionData>)
        EXPECT_TRUE(back.unit == x.unit && back.N == x.N) << text;
    else
        EXPECT_TRUE(back == x) << text;
    EXPECT_EQ(dump(write(back)), text);
}

}  // namespace

TEST(JsonIo, CycloNumberGolden) {
    CycloNumber half = CycloNumber(3) / CycloNumber(2);
    EXPECT_EQ(to_json(half).dump(), R"({"N":1,"coeffs":[["3","2"]]})");
    EXPECT_EQ(cyclo_from_json(json::parse(R"({"N":1,"coeffs":[["6","4"]]})")), half);
    auto L = field_for_level(4);
    auto A = L.A;
    EXPECT_EQ(cyclo_from_json(to_json(A)), A);
}

TEST(JsonIo, CycloNumberRoundTrips) {
    std::mt19937 rng(5);
    for (int r = 3; r <= 6; ++r) {
        auto L = field_for_level(r);
        for (int t = 0; t < 20; ++t) {
            CycloNumber x = L.zero();
            for (int e = 0; e < 6; ++e)
                x += CycloNumber(static_cast<long long>(rng() % 19) - 9) / CycloNumber(static_cast<long long>(rng() % 7) + 1) *
                     L.A.pow(static_cast<long long>(rng() % 97));
            expect_round_trip(x, [](auto& v) { return to_json(v); }, cyclo_from_json);
        }
    }
    // large integers survive as decimal strings
    CycloNumber big = CycloNumber::from_coeffs(nullptr, {mpq_class(mpz_class("123456789012345678901234567890"), mpz_class(7))});
    expect_round_trip(big, [](auto& v) { return to_json(v); }, cyclo_from_json);
}

TEST(JsonIo, GraphAndFusionRoundTrip) {
    expect_round_trip(sl2_dimension_graph(6), [](auto& v) { return to_json(v); }, graph_from_json);
    DimensionGraph multi(2);
    multi.add_edge(0, 1);
    multi.add_edge(0, 1);
    multi.add_edge(1, 1);
    expect_round_trip(multi, [](auto& v) { return to_json(v); }, graph_from_json);
    for (auto f : {sl2_fusion_data(5), fibonacci_fusion_data()})
        expect_round_trip(f, [](auto& v) { return to_json(v); }, fusion_from_json);
}

TEST(JsonIo, WbaElementRoundTrip) {
    auto L = field_for_level(5);
    PathWba H(sl2_dimension_graph(5), 2, L.F);
    auto g2 = grouplike_g2_normalized(H, L);
    auto j = to_json(g2, H.space());
    EXPECT_EQ(j["terms"][0]["p"], json::parse("[0,1,0]"));
    expect_round_trip(
        g2, [&](auto& v) { return to_json(v, H.space()); }, [&](const json& x) { return wba_from_json(x, H.space(), 2); });
    expect_round_trip(
        H.unit(), [&](auto& v) { return to_json(v, H.space()); },
        [&](const json& x) { return wba_from_json(x, H.space(), 2); });
}

TEST(JsonIo, MultigraphPathsUseEdgeIds) {
    DimensionGraph g(2);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    PathWba H(g, 2);
    const auto& S = H.space();
    int p = S.index_of(make_path(g, {1, 2}));
    int q = S.index_of(make_path(g, {0, 2}));
    auto x = H.basis(2, p, q, CycloNumber(4));
    auto j = to_json(x, S);
    EXPECT_EQ(j["terms"][0]["p"], json::parse("[1,2]"));
    EXPECT_EQ(j["terms"][0]["q"], json::parse("[0,2]"));
    expect_round_trip(
        x, [&](auto& v) { return to_json(v, S); }, [&](const json& y) { return wba_from_json(y, S, 2); });
}

TEST(JsonIo, RMatrixRoundTrip) {
    for (int r = 3; r <= 6; ++r) {
        auto R = TemperleyLieb(field_for_level(r)).derive_r_matrix();
        expect_round_trip(R, [](auto& v) { return to_json(v); }, rmatrix_from_json);
    }
}

TEST(JsonIo, MalformedInputIsRejected) {
    EXPECT_THROW(cyclo_from_json(json::parse(R"({"N":1,"coeffs":[["1","0"]]})")), std::invalid_argument);
    EXPECT_THROW(cyclo_from_json(json::parse(R"({"N":1})")), json::exception);
    EXPECT_THROW(graph_from_json(json::parse(R"({"vertices":[0,2],"edges":[]})")), std::invalid_argument);
    EXPECT_THROW(graph_from_json(json::parse(R"({"vertices":[0,1],"edges":[[0,5,0]]})")), std::invalid_argument);
    EXPECT_THROW(graph_from_json(json::parse(R"({"vertices":[0,1],"edges":[[0,1,1]]})")), std::invalid_argument);
    EXPECT_THROW(fusion_from_json(json::parse(R"({"unit":0,"N":[[[1,0]],[[0,1]]]})")), std::invalid_argument);

    PathWba H(sl2_dimension_graph(4), 2);
    auto term = [](const char* p, const char* q) {
        return json::parse(std::string(R"({"terms":[{"m":1,"p":)") + p + R"(,"q":)" + q +
                           R"(,"c":{"N":1,"coeffs":[["1","1"]]}}]})");
    };
    EXPECT_NO_THROW(wba_from_json(term("[0,1]", "[1,2]"), H.space(), 2));
    EXPECT_THROW(wba_from_json(term("[0,1,2]", "[1,2]"), H.space(), 2), std::invalid_argument);
    EXPECT_ANY_THROW(wba_from_json(term("[0,2]", "[1,2]"), H.space(), 2));
}
