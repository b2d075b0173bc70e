#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wha/cyclotomic.hpp"
#include "wha/frt_quotient.hpp"
#include "wha/graph.hpp"
#include "wha/linear_algebra.hpp"
#include "wha/path_wba.hpp"
#include "wha/temperley_lieb.hpp"

namespace wha {

/// Q = id - P_2 on kG^2 by its listed coefficients; column = input path (degree-2 path index).
inline Matrix<CycloNumber> projector_q(const LevelField& L, const PathSpace& S) {
    int n = S.count(2), top = L.r - 2;
    Matrix<CycloNumber> Q(n, n, L.zero());
    auto idx = [&](int a, int b, int c) { return S.index_of_vertices({a, b, c}); };
    auto qi = [&](int k) { return L.qint(k); };
    Q(idx(0, 1, 0), idx(0, 1, 0)) = L.one();
    Q(idx(top, top - 1, top), idx(top, top - 1, top)) = L.one();
    for (int j = 1; j <= top - 1; ++j) {
        int up = idx(j, j + 1, j), dn = idx(j, j - 1, j);
        Q(up, up) = qi(j + 2) / (qi(2) * qi(j + 1));
        Q(dn, up) = -qi(j) * qi(j + 2) / (qi(2) * qi(j + 1) * qi(j + 1));
        Q(up, dn) = -L.one() / qi(2);
        Q(dn, dn) = qi(j) / (qi(2) * qi(j + 1));
    }
    return Q;
}

/// -E/[2] with E the cup-cap on two strands in the path basis; an independent evaluation of Q
inline Matrix<CycloNumber> projector_q_from_cupcap(const TemperleyLieb& T, const PathSpace& S) {
    const LevelField& L = T.level();
    RMatrix E = T.cupcap_matrix();
    auto M = r_matrix_on_paths(S, E, 2, 1);
    CycloNumber s = -L.one() / L.qint(2);
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = s * M(i, j);
    return M;
}

namespace detail {
inline WbaElement g2_with_weights(const PathWba& H, const LevelField& L, const std::vector<CycloNumber>& left,
                                  const std::vector<CycloNumber>& right) {
    const PathSpace& S = H.space();
    int top = L.r - 2;
    WbaElement g(H.cap());
    auto has = [&](int v) { return v >= 0 && v <= top; };
    auto key = [&](int j, int sj, int l, int sl) {
        return BasisKey{2, S.index_of_vertices({j, j + sj, j}), S.index_of_vertices({l, l + sl, l})};
    };
    for (int j = 0; j <= top; ++j)
        for (int l = 0; l <= top; ++l) {
            CycloNumber w = left[j] * right[l];
            if (has(j + 1) && has(l + 1)) g.add(key(j, 1, l, 1), w * L.qint(l + 1) / L.qint(j + 1));
            if (has(j - 1) && has(l - 1)) g.add(key(j, -1, l, -1), w * L.qint(l) / L.qint(j));
            if (has(j - 1) && has(l + 1)) g.add(key(j, -1, l, 1), -w * L.qint(l + 1) / L.qint(j));
            if (has(j + 1) && has(l - 1)) g.add(key(j, 1, l, -1), -w * L.qint(l) / L.qint(j + 1));
        }
    return g;
}
}  // namespace detail

/// the degree-2 group-like as printed: weights alpha_j alpha_l, alpha = 1 at the ends and 1/sqrt2 inside
inline WbaElement grouplike_g2(const PathWba& H, const LevelField& L) {
    int top = L.r - 2;
    std::vector<CycloNumber> a(top + 1, L.one() / L.sqrt2);
    a[0] = a[top] = L.one();
    return detail::g2_with_weights(H, L, a, a);
}

/// the central representative: weights c_j [j+1]/[l+1] with c = 1 at the ends and 1/2 inside
inline WbaElement grouplike_g2_normalized(const PathWba& H, const LevelField& L) {
    int top = L.r - 2;
    std::vector<CycloNumber> b(top + 1, L.zero()), c(top + 1, L.zero());
    for (int j = 0; j <= top; ++j) {
        b[j] = (j == 0 || j == top) ? L.qint(j + 1) : L.qint(j + 1) / L.integer(2);
        c[j] = L.one() / L.qint(j + 1);
    }
    return detail::g2_with_weights(H, L, b, c);
}

struct GroupLikeCertificate {
    WbaElement element;
    int degree = 0;
    TensorElement right_residual, left_residual;
    WbaElement eps_s_residual, eps_t_residual, x_residual;
    int centrality_checked = 0;
    std::vector<BasisKey> centrality_failures;

    bool right_ok() const { return right_residual.is_zero() && eps_s_residual.is_zero(); }
    bool left_ok() const { return left_residual.is_zero() && eps_t_residual.is_zero(); }
    bool grouplike() const { return right_ok() && left_ok(); }
    bool central() const { return centrality_failures.empty(); }
    bool x_fixed() const { return x_residual.is_zero(); }
    bool valid() const { return grouplike(); }
};

/// residuals of the group-like axioms, centrality against degree <= 1 monomials, and X-fixedness
inline GroupLikeCertificate verify_grouplike(const FrtQuotient& Q, const WbaElement& x) {
    GroupLikeCertificate c;
    const PathSpace& S = Q.space();
    WbaElement g = Q.reduce(x);
    c.element = g;
    c.degree = x.degree() < 0 ? 0 : x.degree();
    int n0 = S.count(0);
    CycloNumber one = CycloNumber::one(Q.field());
    std::vector<std::vector<WbaElement>> gr(n0, std::vector<WbaElement>(n0)), gl(n0, std::vector<WbaElement>(n0));
    for (int j = 0; j < n0; ++j)
        for (int v = 0; v < n0; ++v) {
            WbaElement b(Q.cap());
            b.add({0, j, v}, one);
            gr[j][v] = Q.multiply(g, b);
            gl[j][v] = Q.multiply(b, g);
        }
    TensorElement rhs_r, rhs_l;
    for (int j = 0; j < n0; ++j)
        for (int v = 0; v < n0; ++v)
            for (int l = 0; l < n0; ++l) {
                for (auto& [ka, va] : gr[j][v].terms())
                    for (auto& [kb, vb] : gr[v][l].terms()) rhs_r.add(ka, kb, va * vb);
                for (auto& [ka, va] : gl[j][v].terms())
                    for (auto& [kb, vb] : gl[v][l].terms()) rhs_l.add(ka, kb, va * vb);
            }
    TensorElement dg = Q.comultiply(g);
    c.right_residual = dg - rhs_r;
    c.left_residual = dg - rhs_l;
    c.eps_s_residual = Q.counital_source(g) - Q.unit();
    c.eps_t_residual = Q.counital_target(g) - Q.unit();
    c.x_residual = Q.loop_projection(g) - g;
    for (int m = 0; m <= 1; ++m)
        for (int p = 0; p < S.count(m); ++p)
            for (int q = 0; q < S.count(m); ++q) {
                WbaElement b(Q.cap());
                b.add({m, p, q}, one);
                ++c.centrality_checked;
                if (!(Q.multiply(g, b) - Q.multiply(b, g)).is_zero()) c.centrality_failures.push_back({m, p, q});
            }
    return c;
}

struct GroupLikeSolution {
    enum class Status { none, unique, underdetermined };
    Status status = Status::none;
    std::vector<WbaElement> solutions;
    std::size_t linear_nullity = 0;
    std::string note;
};

inline std::string to_string(GroupLikeSolution::Status s) {
    switch (s) {
        case GroupLikeSolution::Status::none: return "none";
        case GroupLikeSolution::Status::unique: return "unique";
        default: return "underdetermined";
    }
}

namespace detail {

using TensorCoords = std::map<std::pair<int, int>, CycloNumber>;

inline void add_to(TensorCoords& t, std::pair<int, int> k, const CycloNumber& c) {
    if (c.is_zero()) return;
    auto it = t.find(k);
    if (it == t.end()) t.emplace(k, c);
    else {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

/// coordinates of (sum_i x_i rep_i) * b (right) or b * (...) (left) for a monomial b
inline Coords times_monomial(const FrtQuotient& Q, int m, const Coords& x, const BasisKey& b, bool right) {
    Coords out;
    auto& reps = Q.internal_basis(m);
    for (auto& [i, c] : x) {
        auto k = right ? Q.ambient().multiply_basis(reps[i], b) : Q.ambient().multiply_basis(b, reps[i]);
        if (!k) continue;
        for (auto& [j, v] : Q.coords(*k)) wha::add_to(out, j, c * v);
    }
    return out;
}

inline TensorCoords comultiply_coords(const FrtQuotient& Q, int m, const Coords& x) {
    TensorCoords out;
    auto& reps = Q.internal_basis(m);
    int n = Q.space().count(m);
    for (auto& [i, c] : x) {
        const BasisKey& k = reps[i];
        for (int t = 0; t < n; ++t) {
            auto& a = Q.coords(BasisKey{m, k.p, t});
            if (a.empty()) continue;
            auto& b = Q.coords(BasisKey{m, t, k.q});
            for (auto& [ia, va] : a)
                for (auto& [ib, vb] : b) add_to(out, {ia, ib}, c * va * vb);
        }
    }
    return out;
}

/// sum_{j,v,l} (x [j|v]) (x) (y [v|l]) (right) or ([j|v] x) (x) ([v|l] y) (left), in tensor coordinates
inline TensorCoords unit_twisted(const FrtQuotient& Q, int m, const Coords& x, const Coords& y, bool right) {
    int n0 = Q.space().count(0);
    CycloNumber one = CycloNumber::one(Q.field());
    std::vector<std::vector<Coords>> xs(n0, std::vector<Coords>(n0)), ys(n0, std::vector<Coords>(n0));
    for (int j = 0; j < n0; ++j)
        for (int v = 0; v < n0; ++v) {
            xs[j][v] = times_monomial(Q, m, x, BasisKey{0, j, v}, right);
            ys[j][v] = times_monomial(Q, m, y, BasisKey{0, j, v}, right);
        }
    TensorCoords out;
    for (int j = 0; j < n0; ++j)
        for (int v = 0; v < n0; ++v)
            for (int l = 0; l < n0; ++l)
                for (auto& [a, va] : xs[j][v])
                    for (auto& [b, vb] : ys[v][l]) add_to(out, {a, b}, va * vb);
    return out;
}

}  // namespace detail

/// Homogeneous group-likes of degree m in the quotient. Linear conditions first (counital maps, X, centrality,
/// and r-normalisation when an r-form is supplied), then the remaining quadratic equations are linearised.
inline GroupLikeSolution grouplike_solve(const FrtQuotient& Q, int m, const RForm* r = nullptr) {
    GroupLikeSolution res;
    const PathSpace& S = Q.space();
    const CycloField* F = Q.field();
    CycloNumber one = CycloNumber::one(F), zero = CycloNumber::zero(F);
    int n = Q.dim(m);
    auto& reps = Q.internal_basis(m);
    int n0 = S.count(0);
    SparseSolver<CycloNumber> lin(n, one);
    using Row = SparseSolver<CycloNumber>::Row;
    // eps_s(g) = 1 = eps_t(g), coordinates (j, l) of degree 0
    for (int side = 0; side < 2; ++side)
        for (int j = 0; j < n0; ++j)
            for (int l = 0; l < n0; ++l) {
                Row row;
                for (int i = 0; i < n; ++i) {
                    const BasisKey& k = reps[i];
                    if (k.p != k.q) continue;
                    if (side == 0 && S.sigma(m, k.p) == l) row.emplace_back(i, one);
                    if (side == 1 && S.tau(m, k.q) == j) row.emplace_back(i, one);
                }
                lin.add_row(row, one);
            }
    // X(g) = g
    for (int i = 0; i < n; ++i) {
        auto b = Q.block_of(reps[i]);
        if (b[0] != b[1] || b[2] != b[3]) lin.add_row({{static_cast<std::size_t>(i), one}}, zero);
    }
    // centrality against degree 0 and 1 monomials
    if (m + 1 <= Q.cap())
        for (int d = 0; d <= 1; ++d)
            for (int p = 0; p < S.count(d); ++p)
                for (int q = 0; q < S.count(d); ++q) {
                    BasisKey b{d, p, q};
                    std::map<int, Row> rows;
                    for (int i = 0; i < n; ++i) {
                        Coords e{{i, one}};
                        for (auto& [k, v] : detail::times_monomial(Q, m, e, b, true)) rows[k].emplace_back(i, v);
                        for (auto& [k, v] : detail::times_monomial(Q, m, e, b, false)) rows[k].emplace_back(i, -v);
                    }
                    for (auto& [k, row] : rows) lin.add_row(row, zero);
                }
    // r(g, y) = eps(y) = r(y, g) for degree-1 monomials y
    if (r)
        for (int p = 0; p < S.count(1); ++p)
            for (int q = 0; q < S.count(1); ++q) {
                BasisKey y{1, p, q};
                Row a, b;
                for (int i = 0; i < n; ++i) {
                    a.emplace_back(i, (*r)(reps[i], y));
                    b.emplace_back(i, (*r)(y, reps[i]));
                }
                CycloNumber e = p == q ? one : zero;
                lin.add_row(a, e);
                lin.add_row(b, e);
            }
    if (!lin.consistent()) {
        res.note = "linear conditions are inconsistent";
        return res;
    }
    res.linear_nullity = lin.nullity();
    auto to_coords = [&](const std::vector<CycloNumber>& v) {
        Coords c;
        for (int i = 0; i < n; ++i)
            if (!v[i].is_zero()) c.emplace(i, v[i]);
        return c;
    };
    Coords g0 = to_coords(lin.particular());
    std::vector<Coords> ker;
    for (auto& v : lin.kernel_basis()) ker.push_back(to_coords(v));
    auto accept = [&](const Coords& g) {
        WbaElement el = Q.reduce(Q.from_coords(m, g));
        if (verify_grouplike(Q, el).grouplike()) {
            res.status = GroupLikeSolution::Status::unique;
            res.solutions.push_back(el);
        } else {
            res.note = "candidate fails the group-like certificate";
        }
    };
    if (ker.empty()) {
        accept(g0);
        return res;
    }
    // g = g0 + sum_a t_a k_a; unknowns t_a and s_ab = t_a t_b (a <= b), equations Delta g = twisted g (x) g
    std::size_t K = ker.size();
    auto sidx = [&](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        return K + a * K - a * (a + 1) / 2 + b;
    };
    std::size_t nv = K + K * (K + 1) / 2;
    SparseSolver<CycloNumber> quad(nv, one);
    std::vector<Coords> basis{g0};
    basis.insert(basis.end(), ker.begin(), ker.end());
    // variable of the product of basis elements u, w (0 = constant)
    auto var_of = [&](std::size_t u, std::size_t w) -> long long {
        if (u == 0 && w == 0) return -1;
        if (u == 0) return static_cast<long long>(w - 1);
        if (w == 0) return static_cast<long long>(u - 1);
        return static_cast<long long>(sidx(u - 1, w - 1));
    };
    for (int side = 0; side < 2; ++side) {
        std::map<std::pair<int, int>, std::map<long long, CycloNumber>> eqs;
        for (std::size_t u = 0; u <= K; ++u) {
            long long v = u == 0 ? -1 : static_cast<long long>(u - 1);
            for (auto& [k, c] : detail::comultiply_coords(Q, m, basis[u])) {
                auto& e = eqs[k][v];
                e = e.field() ? e + c : c;
            }
        }
        for (std::size_t u = 0; u <= K; ++u)
            for (std::size_t w = 0; w <= K; ++w) {
                long long v = var_of(u, w);
                for (auto& [k, c] : detail::unit_twisted(Q, m, basis[u], basis[w], side == 0)) {
                    auto& e = eqs[k][v];
                    e = e.field() ? e - c : -c;
                }
            }
        for (auto& [k, terms] : eqs) {
            SparseSolver<CycloNumber>::Row row;
            CycloNumber rhs = zero;
            for (auto& [v, c] : terms) {
                if (v < 0) rhs = -c;
                else row.emplace_back(static_cast<std::size_t>(v), c);
            }
            quad.add_row(row, rhs);
        }
    }
    if (!quad.consistent()) {
        res.note = "group-like equations are inconsistent";
        return res;
    }
    if (quad.nullity() > 0) {
        res.status = GroupLikeSolution::Status::underdetermined;
        res.note = "linearised system has nullity " + std::to_string(quad.nullity());
        return res;
    }
    auto t = quad.particular();
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = a; b < K; ++b)
            if (!(t[sidx(a, b)] == t[a] * t[b])) {
                res.note = "linearised solution is not of rank one";
                return res;
            }
    Coords g = g0;
    for (std::size_t a = 0; a < K; ++a)
        for (auto& [i, c] : ker[a]) wha::add_to(g, i, t[a] * c);
    accept(g);
    return res;
}

/// A subcomodule of kG^m isomorphic to the unit object: b_v for each vertex v, with an idempotent onto span(b).
struct UnitSubcomodule {
    int m = 2;
    std::vector<std::vector<CycloNumber>> vectors;  // vectors[v] = b_v in the path basis
    Matrix<CycloNumber> projector;
};

/// span of the b_j inside kG^2 for the sl_2 graph, with Q as the projector
inline UnitSubcomodule sl2_unit_subcomodule(const LevelField& L, const PathSpace& S) {
    UnitSubcomodule u;
    int top = L.r - 2, n = S.count(2);
    u.projector = projector_q(L, S);
    for (int j = 0; j <= top; ++j) {
        std::vector<CycloNumber> b(n, L.zero());
        if (j == 0) b[S.index_of_vertices({0, 1, 0})] = L.one();
        else if (j == top) b[S.index_of_vertices({top, top - 1, top})] = -L.one();
        else {
            b[S.index_of_vertices({j, j + 1, j})] = L.qint(j + 1) / L.sqrt2;
            b[S.index_of_vertices({j, j - 1, j})] = -L.qint(j) / L.sqrt2;
        }
        u.vectors.push_back(b);
    }
    return u;
}

class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Extraction {
    WbaElement raw;         // sum_{k,v} c_{kv} for the given basis
    WbaElement normalized;  // torus-twisted so that r(g, y) = eps(y) = r(y, g) in degree 1
    std::vector<std::vector<WbaElement>> coefficients;  // c_{kv}
};

/// g = eps(1_(0)) 1_(1) read off the coaction of a unit subcomodule, then normalised with the r-form
inline Extraction grouplike_from_comodule(const FrtQuotient& Q, const UnitSubcomodule& U, const RForm& r) {
    const PathSpace& S = Q.space();
    const CycloField* F = Q.field();
    CycloNumber one = CycloNumber::one(F), zero = CycloNumber::zero(F);
    int m = U.m, n = S.count(m), nb = static_cast<int>(U.vectors.size());
    if (nb != S.count(0)) throw ExtractionError("need one basis vector per vertex");
    const auto& P = U.projector;
    if (static_cast<int>(P.rows()) != n || static_cast<int>(P.cols()) != n) throw ExtractionError("projector has wrong shape");
    if (!(P * P == P)) throw ExtractionError("projector is not idempotent");
    for (int v = 0; v < nb; ++v) {
        if (static_cast<int>(U.vectors[v].size()) != n) throw ExtractionError("basis vector has wrong length");
        if (!(P.apply(U.vectors[v]) == U.vectors[v])) throw ExtractionError("basis vector outside the projector image");
    }
    Matrix<CycloNumber> B(n, nb, zero);
    for (int v = 0; v < nb; ++v)
        for (int i = 0; i < n; ++i) B(i, v) = U.vectors[v][i];
    if (rank(B) != static_cast<std::size_t>(nb) || rank(P) != static_cast<std::size_t>(nb))
        throw ExtractionError("basis does not span the projector image");
    // dual functionals: P e_W = sum_k dual[k][W] b_k
    std::vector<std::vector<CycloNumber>> dual(nb, std::vector<CycloNumber>(n, zero));
    for (int w = 0; w < n; ++w) {
        auto sol = solve_affine(B, P.col(w), one);
        for (int k = 0; k < nb; ++k) dual[k][w] = sol.particular[k];
    }
    // closure: sum_{P,Q} b_v[P] ((1 - P) e_Q)[W] [Q|P] lies in the ideal
    for (int v = 0; v < nb; ++v)
        for (int w = 0; w < n; ++w) {
            WbaElement res(Q.cap());
            for (int p = 0; p < n; ++p) {
                if (U.vectors[v][p].is_zero()) continue;
                for (int q = 0; q < n; ++q) {
                    CycloNumber c = (w == q ? one : zero) - P(w, q);
                    if (!c.is_zero()) res.add({m, q, p}, U.vectors[v][p] * c);
                }
            }
            if (!Q.is_zero_in_quotient(res)) throw ExtractionError("span is not closed under the coaction");
        }
    Extraction ex;
    ex.coefficients.assign(nb, std::vector<WbaElement>(nb, WbaElement(Q.cap())));
    for (int k = 0; k < nb; ++k)
        for (int v = 0; v < nb; ++v) {
            WbaElement c(Q.cap());
            for (int p = 0; p < n; ++p) {
                if (U.vectors[v][p].is_zero()) continue;
                for (int q = 0; q < n; ++q)
                    if (!dual[k][q].is_zero()) c.add({m, q, p}, U.vectors[v][p] * dual[k][q]);
            }
            ex.coefficients[k][v] = Q.reduce(c);
        }
    ex.raw = WbaElement(Q.cap());
    std::vector<std::pair<int, int>> support;
    for (int k = 0; k < nb; ++k)
        for (int v = 0; v < nb; ++v) {
            ex.raw = ex.raw + ex.coefficients[k][v];
            if (!ex.coefficients[k][v].is_zero()) support.emplace_back(k, v);
        }
    // unknown ratio mu_{kv} per nonzero c_{kv}
    std::size_t nv = support.size();
    SparseSolver<CycloNumber> sol(nv, one);
    for (std::size_t i = 0; i < nv; ++i)
        if (support[i].first == support[i].second) sol.add_row({{i, one}}, one);
    for (int p = 0; p < S.count(1); ++p)
        for (int q = 0; q < S.count(1); ++q) {
            WbaElement y(Q.cap());
            y.add({1, p, q}, one);
            SparseSolver<CycloNumber>::Row a, b;
            for (std::size_t i = 0; i < nv; ++i) {
                auto& c = ex.coefficients[support[i].first][support[i].second];
                a.emplace_back(i, r(c, y));
                b.emplace_back(i, r(y, c));
            }
            sol.add_row(a, p == q ? one : zero);
            sol.add_row(b, p == q ? one : zero);
        }
    // centrality against degree 0 and 1 monomials
    for (int d = 0; d <= 1 && m + d <= Q.cap(); ++d)
        for (int p = 0; p < S.count(d); ++p)
            for (int q = 0; q < S.count(d); ++q) {
                WbaElement y(Q.cap());
                y.add({d, p, q}, one);
                std::map<BasisKey, SparseSolver<CycloNumber>::Row> rows;
                for (std::size_t i = 0; i < nv; ++i) {
                    auto& c = ex.coefficients[support[i].first][support[i].second];
                    WbaElement comm = Q.multiply(c, y) - Q.multiply(y, c);
                    for (auto& [k, v] : comm.terms()) rows[k].emplace_back(i, v);
                }
                for (auto& [k, row] : rows) sol.add_row(row, zero);
            }
    if (!sol.consistent()) throw ExtractionError("no torus twist satisfies the r-normalisation");
    if (sol.nullity() > 0) throw ExtractionError("r-normalisation leaves the torus twist undetermined");
    auto mu = sol.particular();
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j) {
            auto [k, v] = support[i];
            auto [v2, w] = support[j];
            if (v != v2) continue;
            for (std::size_t l = 0; l < nv; ++l)
                if (support[l] == std::make_pair(k, w) && !(mu[l] == mu[i] * mu[j]))
                    throw ExtractionError("normalising ratios are not a torus twist");
        }
    ex.normalized = WbaElement(Q.cap());
    for (std::size_t i = 0; i < nv; ++i)
        ex.normalized = ex.normalized + mu[i] * ex.coefficients[support[i].first][support[i].second];
    return ex;
}

}  // namespace wha
