#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wha/cyclotomic.hpp"
#include "wha/frt_quotient.hpp"
#include "wha/graph.hpp"
#include "wha/grouplike.hpp"
#include "wha/linear_algebra.hpp"
#include "wha/wba_axioms.hpp"

namespace wha {

/// Dimensions predicted by the fusion rules: dim omega(V_j) = sum_{a,b} N_{b j}^a.
struct FusionOracle {
    std::vector<long long> fiber_dims;
    std::vector<long long> degree_dims;  // predicted dim of the degree-m quotient
    long long total = 0;                 // sum_j (dim omega V_j)^2

    /// simple objects j reached by paths of length m from the unit vertex
    std::vector<std::vector<int>> reached;
};

inline FusionOracle fusion_oracle(const FusionData& f, const DimensionGraph& g, int max_degree) {
    FusionOracle o;
    int n = f.size();
    for (int j = 0; j < n; ++j) {
        long long d = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) d += f.N[b][j][a];
        o.fiber_dims.push_back(d);
        o.total += d * d;
    }
    for (int m = 0; m <= max_degree; ++m) {
        long long d = 0;
        std::vector<int> js;
        for (auto& [j, c] : path_multiplicities(g, f.unit, m))
            if (c > 0) {
                d += o.fiber_dims[j] * o.fiber_dims[j];
                js.push_back(j);
            }
        o.degree_dims.push_back(d);
        o.reached.push_back(js);
    }
    return o;
}

/// Finite-dimensional algebra and coalgebra in a fixed basis.
struct StructureConstants {
    const CycloField* F = nullptr;
    int dim = 0;
    std::vector<std::vector<Coords>> mul;  // e_i e_j
    std::vector<std::vector<std::tuple<int, int, CycloNumber>>> comul;
    std::vector<CycloNumber> counit;
    Coords unit;

    using Tensor = std::map<std::pair<int, int>, CycloNumber>;
    using Triple = std::map<std::tuple<int, int, int>, CycloNumber>;

    Coords basis(int i) const { return {{i, CycloNumber::one(F)}}; }
    Coords multiply(const Coords& a, const Coords& b) const {
        Coords out;
        for (auto& [i, x] : a)
            for (auto& [j, y] : b) {
                CycloNumber c = x * y;
                for (auto& [k, z] : mul[i][j]) add_to(out, k, c * z);
            }
        return out;
    }
    Tensor comultiply(const Coords& a) const {
        Tensor out;
        for (auto& [i, x] : a)
            for (auto& [p, q, c] : comul[i]) add(out, {p, q}, x * c);
        return out;
    }
    CycloNumber eps(const Coords& a) const {
        CycloNumber s = CycloNumber::zero(F);
        for (auto& [i, x] : a) s += x * counit[i];
        return s;
    }
    Tensor multiply(const Tensor& a, const Tensor& b) const {
        Tensor out;
        for (auto& [ka, x] : a)
            for (auto& [kb, y] : b) {
                auto& l = mul[ka.first][kb.first];
                if (l.empty()) continue;
                auto& r = mul[ka.second][kb.second];
                if (r.empty()) continue;
                CycloNumber c = x * y;
                for (auto& [i, u] : l)
                    for (auto& [j, v] : r) add(out, {i, j}, c * u * v);
            }
        return out;
    }
    /// eps_s(x) = 1' eps(x 1''), eps_t(x) = eps(1' x) 1''
    Coords counital_source(const Coords& x) const {
        Coords out;
        for (auto& [k, c] : comultiply(unit)) {
            CycloNumber e = eps(multiply(x, basis(k.second)));
            if (!e.is_zero()) add_to(out, k.first, c * e);
        }
        return out;
    }
    Coords counital_target(const Coords& x) const {
        Coords out;
        for (auto& [k, c] : comultiply(unit)) {
            CycloNumber e = eps(multiply(basis(k.first), x));
            if (!e.is_zero()) add_to(out, k.second, c * e);
        }
        return out;
    }

    template <class K>
    static void add(std::map<K, CycloNumber>& m, const K& k, const CycloNumber& c) {
        if (c.is_zero()) return;
        auto it = m.find(k);
        if (it == m.end()) m.emplace(k, c);
        else {
            it->second += c;
            if (it->second.is_zero()) m.erase(it);
        }
    }
};

/// Exhaustive weak bialgebra axioms on the basis of a structure-constant algebra.
inline AxiomReport check_wba_axioms(const StructureConstants& A) {
    using Tensor = StructureConstants::Tensor;
    using Triple = StructureConstants::Triple;
    AxiomReport rep;
    int n = A.dim;
    CycloNumber one = CycloNumber::one(A.F), zero = CycloNumber::zero(A.F);
    auto fail = [](AxiomCheck& c, const std::string& w) {
        if (c.ok) c.witness = w;
        c.ok = false;
    };
    auto e = [](int i) { return "e" + std::to_string(i); };
    {
        AxiomCheck c{"associativity"};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    ++c.instances;
                    Coords l = A.multiply(A.mul[i][j], A.basis(k)), r = A.multiply(A.basis(i), A.mul[j][k]);
                    if (l != r) fail(c, "(" + e(i) + e(j) + ")" + e(k));
                }
        rep.checks.push_back(c);
    }
    {
        AxiomCheck c{"unit"};
        for (int i = 0; i < n; ++i) {
            ++c.instances;
            if (A.multiply(A.unit, A.basis(i)) != A.basis(i) || A.multiply(A.basis(i), A.unit) != A.basis(i)) fail(c, e(i));
        }
        rep.checks.push_back(c);
    }
    {
        AxiomCheck c{"coassociativity"};
        for (int i = 0; i < n; ++i) {
            ++c.instances;
            Triple l, r;
            for (auto& [p, q, x] : A.comul[i]) {
                for (auto& [a, b, y] : A.comul[p]) StructureConstants::add(l, {a, b, q}, x * y);
                for (auto& [a, b, y] : A.comul[q]) StructureConstants::add(r, {p, a, b}, x * y);
            }
            if (l != r) fail(c, e(i));
        }
        rep.checks.push_back(c);
    }
    {
        AxiomCheck c{"counit"};
        for (int i = 0; i < n; ++i) {
            ++c.instances;
            Coords l, r;
            for (auto& [p, q, x] : A.comul[i]) {
                add_to(l, q, x * A.counit[p]);
                add_to(r, p, x * A.counit[q]);
            }
            if (l != A.basis(i) || r != A.basis(i)) fail(c, e(i));
        }
        rep.checks.push_back(c);
    }
    std::vector<Tensor> D(n);
    for (int i = 0; i < n; ++i) D[i] = A.comultiply(A.basis(i));
    {
        AxiomCheck c{"comultiplication is multiplicative"};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ++c.instances;
                if (A.comultiply(A.mul[i][j]) != A.multiply(D[i], D[j])) fail(c, e(i) + e(j));
            }
        rep.checks.push_back(c);
    }
    // E[a][b] = eps(e_a e_b)
    std::vector<std::vector<CycloNumber>> E(n, std::vector<CycloNumber>(n, zero));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) E[a][b] = A.eps(A.mul[a][b]);
    for (int op = 0; op < 2; ++op) {
        AxiomCheck c{op == 0 ? "weak counit (Delta)" : "weak counit (Delta^op)"};
        for (int j = 0; j < n; ++j) {
            std::vector<std::vector<CycloNumber>> L(n, std::vector<CycloNumber>(n, zero)), R = L;
            for (int i = 0; i < n; ++i)
                for (auto& [k1, x] : A.mul[i][j])
                    for (int k = 0; k < n; ++k)
                        if (!E[k1][k].is_zero()) L[i][k] += x * E[k1][k];
            for (auto& [p, q, x] : A.comul[j]) {
                int a = op == 0 ? p : q, b = op == 0 ? q : p;
                for (int i = 0; i < n; ++i) {
                    if (E[i][a].is_zero()) continue;
                    CycloNumber f = x * E[i][a];
                    for (int k = 0; k < n; ++k)
                        if (!E[b][k].is_zero()) R[i][k] += f * E[b][k];
                }
            }
            c.instances += static_cast<long long>(n) * n;
            for (int i = 0; i < n && c.ok; ++i)
                for (int k = 0; k < n; ++k)
                    if (!(L[i][k] == R[i][k])) {
                        fail(c, "eps(" + e(i) + e(j) + e(k) + ")");
                        break;
                    }
        }
        rep.checks.push_back(c);
    }
    Tensor D1 = A.comultiply(A.unit);
    {
        Triple lhs;
        for (auto& [k, x] : D1)
            for (auto& [a, b, y] : A.comul[k.first]) StructureConstants::add(lhs, {a, b, k.second}, x * y);
        for (int op = 0; op < 2; ++op) {
            AxiomCheck c{op == 0 ? "weak unit (mu)" : "weak unit (mu^op)"};
            Triple rhs;
            for (auto& [k1, x] : D1)
                for (auto& [k2, y] : D1) {
                    // (Delta(1) (x) 1)(1 (x) Delta(1)) or the opposite order in the middle leg
                    auto& mid = op == 0 ? A.mul[k1.second][k2.first] : A.mul[k2.first][k1.second];
                    for (auto& [m, z] : mid) StructureConstants::add(rhs, {k1.first, m, k2.second}, x * y * z);
                }
            c.instances = 1;
            if (lhs != rhs) fail(c, "Delta^2(1)");
            rep.checks.push_back(c);
        }
    }
    std::vector<Coords> Es(n), Et(n);
    for (int i = 0; i < n; ++i) {
        Es[i] = A.counital_source(A.basis(i));
        Et[i] = A.counital_target(A.basis(i));
    }
    {
        AxiomCheck cs{"eps_s idempotent"}, ct{"eps_t idempotent"};
        for (int i = 0; i < n; ++i) {
            ++cs.instances;
            ++ct.instances;
            if (A.counital_source(Es[i]) != Es[i]) fail(cs, e(i));
            if (A.counital_target(Et[i]) != Et[i]) fail(ct, e(i));
        }
        rep.checks.push_back(cs);
        rep.checks.push_back(ct);
    }
    {
        AxiomCheck c{"base algebras commute"};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ++c.instances;
                if (A.multiply(Es[i], Et[j]) != A.multiply(Et[j], Es[i])) fail(c, e(i) + "," + e(j));
            }
        rep.checks.push_back(c);
    }
    return rep;
}

struct AntipodeResult {
    bool exists = false;
    bool unique = false;
    std::size_t nullity = 0;
    Matrix<CycloNumber> S;  // column b = S(e_b)
    AxiomReport checks;
};

/// Solves the three antipode axioms as one linear system; unique iff its nullity is zero.
inline AntipodeResult solve_antipode(const StructureConstants& A) {
    AntipodeResult res;
    int n = A.dim;
    CycloNumber one = CycloNumber::one(A.F), zero = CycloNumber::zero(A.F);
    auto var = [n](int a, int b) { return static_cast<std::size_t>(a) * n + b; };
    SparseSolver<CycloNumber> sol(static_cast<std::size_t>(n) * n, one);
    using Row = SparseSolver<CycloNumber>::Row;
    for (int i = 0; i < n; ++i) {
        Coords et = A.counital_target(A.basis(i)), es = A.counital_source(A.basis(i));
        std::map<int, Row> left, right;
        for (auto& [p, q, x] : A.comul[i])
            for (int a = 0; a < n; ++a) {
                // x' S(x''): e_p * (S_{a q} e_a)
                for (auto& [k, v] : A.mul[p][a]) left[k].emplace_back(var(a, q), x * v);
                // S(x') x'': (S_{a p} e_a) * e_q
                for (auto& [k, v] : A.mul[a][q]) right[k].emplace_back(var(a, p), x * v);
            }
        for (int k = 0; k < n; ++k) {
            auto lt = et.find(k), rt = es.find(k);
            sol.add_row(left.count(k) ? left[k] : Row{}, lt == et.end() ? zero : lt->second);
            sol.add_row(right.count(k) ? right[k] : Row{}, rt == es.end() ? zero : rt->second);
        }
    }
    // given the first axiom, S(x') x'' S(x''') = S(x') eps_t(x''), so the third axiom is linear as well
    std::vector<Coords> Et(n);
    for (int q = 0; q < n; ++q) Et[q] = A.counital_target(A.basis(q));
    for (int i = 0; i < n; ++i) {
        std::map<int, Row> rows;
        for (int k = 0; k < n; ++k) rows[k].emplace_back(var(k, i), one);
        for (auto& [p, q, x] : A.comul[i]) {
            if (Et[q].empty()) continue;
            for (int a = 0; a < n; ++a)
                for (auto& [k, v] : A.multiply(A.basis(a), Et[q])) rows[k].emplace_back(var(a, p), -x * v);
        }
        for (auto& [k, row] : rows) sol.add_row(row, zero);
    }
    if (!sol.consistent()) return res;
    res.exists = true;
    res.nullity = sol.nullity();
    res.unique = res.nullity == 0;
    auto x = sol.particular();
    res.S = Matrix<CycloNumber>(n, n, zero);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) res.S(a, b) = x[var(a, b)];
    auto apply = [&](int b) {
        Coords c;
        for (int a = 0; a < n; ++a)
            if (!res.S(a, b).is_zero()) c.emplace(a, res.S(a, b));
        return c;
    };
    std::vector<Coords> Sb(n);
    for (int b = 0; b < n; ++b) Sb[b] = apply(b);
    AxiomCheck l{"antipode: x' S(x'') = eps_t(x)"}, r{"antipode: S(x') x'' = eps_s(x)"},
        t{"antipode: S(x') x'' S(x''') = S(x)"};
    for (int i = 0; i < n; ++i) {
        Coords lv, rv, tv;
        for (auto& [p, q, c] : A.comul[i]) {
            for (auto& [k, v] : A.multiply(A.basis(p), Sb[q])) add_to(lv, k, c * v);
            for (auto& [k, v] : A.multiply(Sb[p], A.basis(q))) add_to(rv, k, c * v);
            for (auto& [a, b, d] : A.comul[q]) {
                Coords y = A.multiply(A.multiply(Sb[p], A.basis(a)), Sb[b]);
                for (auto& [k, v] : y) add_to(tv, k, c * d * v);
            }
        }
        ++l.instances;
        ++r.instances;
        ++t.instances;
        if (lv != A.counital_target(A.basis(i))) { l.ok = false; l.witness = "e" + std::to_string(i); }
        if (rv != A.counital_source(A.basis(i))) { r.ok = false; r.witness = "e" + std::to_string(i); }
        if (tv != Sb[i]) { t.ok = false; t.witness = "e" + std::to_string(i); }
    }
    res.checks.checks = {l, r, t};
    return res;
}

class AssemblyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StabilizationStep {
    int degree = 0;
    int dim = 0;
    int dim_plus_two = 0;
    bool bijective = false;
};

struct AssembledWha {
    int m0 = 0;
    int even_dim = 0, odd_dim = 0;
    std::vector<StabilizationStep> steps;
    StructureConstants A;
    int dim() const { return A.dim; }
};

/// H = Q_{m0} + Q_{m0+1} with products transported back along right multiplication by g.
/// m0 is the least even degree from which x -> x g is bijective in every degree up to max_degree - 2.
inline AssembledWha assemble_wha(const FrtQuotient& Q, const WbaElement& g, int max_degree) {
    if (max_degree > Q.cap()) throw AssemblyError("max degree exceeds the quotient cap");
    if (!g.is_homogeneous() || g.degree() != 2) throw AssemblyError("group-like must be homogeneous of degree 2");
    const CycloField* F = Q.field();
    CycloNumber one = CycloNumber::one(F), zero = CycloNumber::zero(F);
    AssembledWha W;
    std::vector<Matrix<CycloNumber>> Lm(max_degree + 1);
    std::vector<bool> bij(max_degree + 1, false);
    for (int m = 0; m + 2 <= max_degree; ++m) {
        int a = Q.dim(m), b = Q.dim(m + 2);
        Matrix<CycloNumber> M(b, a, zero);
        for (int i = 0; i < a; ++i) {
            Coords out;
            for (auto& [k, v] : g.terms()) {
                auto prod = Q.ambient().multiply_basis(Q.internal_basis(m)[i], k);
                if (!prod) continue;
                for (auto& [j, w] : Q.coords(*prod)) add_to(out, j, v * w);
            }
            for (auto& [j, w] : out) M(j, i) = w;
        }
        bij[m] = a == b && rank(M) == static_cast<std::size_t>(a);
        W.steps.push_back({m, a, b, bij[m]});
        Lm[m] = std::move(M);
    }
    std::optional<int> m0;
    for (int m = 0; m + 3 <= max_degree && !m0; m += 2) {
        bool ok = true;
        for (int k = m; k + 2 <= max_degree; ++k) ok = ok && bij[k];
        if (ok) m0 = m;
    }
    if (!m0) throw AssemblyError("right multiplication by g does not stabilise below degree " + std::to_string(max_degree));
    if (2 * *m0 + 2 > max_degree) throw AssemblyError("products leave the verified range; raise max degree");
    W.m0 = *m0;
    int ne = Q.dim(W.m0), no = Q.dim(W.m0 + 1);
    W.even_dim = ne;
    W.odd_dim = no;
    std::vector<Matrix<CycloNumber>> Linv(max_degree + 1);
    for (int m = W.m0; m + 2 <= 2 * W.m0 + 2; ++m) Linv[m] = *inverse(Lm[m]);
    auto down = [&](int d, Coords c) {
        int target = (d % 2 == W.m0 % 2) ? W.m0 : W.m0 + 1;
        while (d > target) {
            const auto& M = Linv[d - 2];
            Coords out;
            for (auto& [j, v] : c)
                for (std::size_t i = 0; i < M.rows(); ++i)
                    if (!M(i, j).is_zero()) add_to(out, static_cast<int>(i), M(i, j) * v);
            c = std::move(out);
            d -= 2;
        }
        Coords glob;
        int off = target == W.m0 ? 0 : ne;
        for (auto& [i, v] : c) glob.emplace(i + off, v);
        return glob;
    };
    StructureConstants& A = W.A;
    A.F = F;
    A.dim = ne + no;
    std::vector<BasisKey> reps = Q.internal_basis(W.m0);
    for (auto& k : Q.internal_basis(W.m0 + 1)) reps.push_back(k);
    A.mul.assign(A.dim, std::vector<Coords>(A.dim));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            auto prod = Q.ambient().multiply_basis(reps[i], reps[j]);
            if (!prod) continue;
            A.mul[i][j] = down(prod->m, Q.coords(*prod));
        }
    const PathSpace& S = Q.space();
    A.comul.resize(A.dim);
    A.counit.resize(A.dim);
    for (int i = 0; i < A.dim; ++i) {
        const BasisKey& k = reps[i];
        int off = i < ne ? 0 : ne;
        std::map<std::pair<int, int>, CycloNumber> t;
        for (int p = 0; p < S.count(k.m); ++p) {
            auto& a = Q.coords(BasisKey{k.m, k.p, p});
            if (a.empty()) continue;
            auto& b = Q.coords(BasisKey{k.m, p, k.q});
            for (auto& [x, u] : a)
                for (auto& [y, v] : b) StructureConstants::add(t, {x + off, y + off}, u * v);
        }
        for (auto& [kk, c] : t) A.comul[i].emplace_back(kk.first, kk.second, c);
        A.counit[i] = k.p == k.q ? one : zero;
    }
    // unit: 1 g^{m0/2}
    Coords u = Q.coords(Q.ambient().unit(), 0);
    for (int m = 0; m < W.m0; m += 2) {
        Coords out;
        for (auto& [j, v] : u)
            for (std::size_t i = 0; i < Lm[m].rows(); ++i)
                if (!Lm[m](i, j).is_zero()) add_to(out, static_cast<int>(i), Lm[m](i, j) * v);
        u = std::move(out);
    }
    A.unit = u;
    return W;
}

}  // namespace wha
