#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wha/cyclotomic.hpp"
#include "wha/graph.hpp"
#include "wha/linear_algebra.hpp"
#include "wha/path_wba.hpp"
#include "wha/temperley_lieb.hpp"
#include "wha/wba_axioms.hpp"

namespace wha {

using Coords = std::map<int, CycloNumber>;

inline void add_to(Coords& v, int k, const CycloNumber& c) {
    if (c.is_zero()) return;
    auto it = v.find(k);
    if (it == v.end()) v.emplace(k, c);
    else {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

/// Coefficients f_{p;q} of an endomorphism of kG^n, keyed by path indices (p, q).
struct EndomorphismCoefficients {
    int n = 0;
    std::map<std::pair<int, int>, CycloNumber> f;

    CycloNumber operator()(int p, int q) const {
        auto it = f.find({p, q});
        return it == f.end() ? CycloNumber() : it->second;
    }
};

inline EndomorphismCoefficients coefficients_from_r(const PathSpace& S, const RMatrix& R) {
    EndomorphismCoefficients c;
    c.n = 2;
    for (auto& [k, v] : R.entries) {
        std::vector<int> p(k.first.begin(), k.first.end()), q(k.second.begin(), k.second.end());
        c.f[{S.index_of_vertices(p), S.index_of_vertices(q)}] = v;
    }
    return c;
}

struct RelationSet {
    int degree = 2;
    std::vector<WbaElement> generators;
    std::optional<RMatrix> source;
};

/// Generators sum_p [r|p] f_{p;q} - sum_p f_{r;p} [p|q], one for each pair (r, q) of length-n paths.
inline RelationSet general_relations(const PathWba& H, const EndomorphismCoefficients& f) {
    const PathSpace& S = H.space();
    int n = f.n;
    if (n > H.cap()) throw DegreeOverflow(n, H.cap());
    for (auto& [k, v] : f.f) {
        auto [p, q] = k;
        if (v.is_zero()) continue;
        if (S.tau(n, p) != S.tau(n, q) || S.sigma(n, p) != S.sigma(n, q))
            throw std::invalid_argument("general_relations: coefficient f_{p;q} with mismatched endpoints");
    }
    std::map<int, std::vector<std::pair<int, CycloNumber>>> by_col, by_row;
    for (auto& [k, v] : f.f) {
        if (v.is_zero()) continue;
        by_col[k.second].emplace_back(k.first, v);
        by_row[k.first].emplace_back(k.second, v);
    }
    RelationSet out;
    out.degree = n;
    int cnt = S.count(n);
    for (int r = 0; r < cnt; ++r)
        for (int q = 0; q < cnt; ++q) {
            WbaElement g(H.cap());
            if (auto it = by_col.find(q); it != by_col.end())
                for (auto& [p, v] : it->second) g.add({n, r, p}, v);
            if (auto it = by_row.find(r); it != by_row.end())
                for (auto& [p, v] : it->second) g.add({n, p, q}, -v);
            if (!g.is_zero()) out.generators.push_back(std::move(g));
        }
    return out;
}

inline RelationSet frt_relations(const PathWba& H, const RMatrix& R) {
    RelationSet rs = general_relations(H, coefficients_from_r(H.space(), R));
    rs.source = R;
    return rs;
}

/// R acting on positions (i, i+1) (1-based) of length-m paths; column = input path.
inline Matrix<CycloNumber> r_matrix_on_paths(const PathSpace& S, const RMatrix& R, int m, int i) {
    int n = S.count(m);
    Matrix<CycloNumber> M(n, n, CycloNumber::zero(R.F));
    for (int c = 0; c < n; ++c) {
        const auto& vs = S.path(m, c).vertices;
        RMatrix::Path3 col{vs[i - 1], vs[i], vs[i + 1]};
        for (auto& [k, v] : R.entries) {
            if (k.second != col) continue;
            std::vector<int> nv = vs;
            nv[i] = k.first[1];
            M(S.index_of_vertices(nv), c) += v;
        }
    }
    return M;
}

struct StarTriangularReport {
    bool ok = true;
    int nonzero_entries = 0;
    std::string witness;
};

inline StarTriangularReport check_star_triangular(const RMatrix& R, const DimensionGraph& g) {
    PathSpace S(g, 3);
    auto R1 = r_matrix_on_paths(S, R, 3, 1);
    auto R2 = r_matrix_on_paths(S, R, 3, 2);
    auto D = R1 * R2 * R1 - R2 * R1 * R2;
    StarTriangularReport rep;
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j)
            if (!D(i, j).is_zero()) {
                if (rep.ok) {
                    auto show = [&](int k) {
                        std::ostringstream os;
                        os << "(";
                        auto& vs = S.path(3, k).vertices;
                        for (std::size_t t = 0; t < vs.size(); ++t) os << (t ? "," : "") << vs[t];
                        os << ")";
                        return os.str();
                    };
                    rep.witness = "row " + show(static_cast<int>(i)) + " col " + show(static_cast<int>(j)) +
                                  " residual " + D(i, j).to_string();
                }
                rep.ok = false;
                ++rep.nonzero_entries;
            }
    return rep;
}

/// Graded quotient H[G]/I for an ideal generated by homogeneous elements of degree >= 1.
/// Degree m is built as (Q_{m-1} (x)^ H_1) / J_m, block by block in the endpoint classes
/// (tau P, sigma P, tau Q, sigma Q).
class FrtQuotient {
public:
    using Block = std::array<int, 4>;

    FrtQuotient(const DimensionGraph& g, std::vector<WbaElement> generators, int cap, const CycloField* F)
        : H_(g, cap, F), F_(F), gens_(std::move(generators)) {
        for (auto& gen : gens_) {
            if (gen.is_zero()) continue;
            if (!gen.is_homogeneous()) throw std::invalid_argument("FrtQuotient: generator is not homogeneous");
            if (gen.degree() == 0)
                throw std::invalid_argument("FrtQuotient: degree-0 generators are not supported");
            std::optional<Block> b;
            for (auto& [k, v] : gen.terms()) {
                Block bk = block_of(k);
                if (b && *b != bk) throw std::invalid_argument("FrtQuotient: generator mixes endpoint classes");
                b = bk;
            }
        }
    }
    FrtQuotient(const DimensionGraph& g, const RelationSet& rels, int cap, const CycloField* F)
        : FrtQuotient(g, rels.generators, cap, F) {}

    const PathWba& ambient() const { return H_; }
    const PathSpace& space() const { return H_.space(); }
    const CycloField* field() const { return F_; }
    int cap() const { return H_.cap(); }
    const std::vector<WbaElement>& generators() const { return gens_; }

    Block block_of(const BasisKey& k) const {
        const PathSpace& S = space();
        return {S.tau(k.m, k.p), S.sigma(k.m, k.p), S.tau(k.m, k.q), S.sigma(k.m, k.q)};
    }

    long long ambient_dim(int m) const {
        long long n = space().count(m);
        return n * n;
    }
    int dim(int m) const { return static_cast<int>(degree_(m).reps.size()); }
    long long ideal_rank(int m) const { return ambient_dim(m) - dim(m); }

    /// internal basis: monomial representatives, grouped by endpoint class
    const std::vector<BasisKey>& internal_basis(int m) const { return degree_(m).reps; }

    /// coordinates of a monomial in the internal basis of its degree
    const Coords& coords(const BasisKey& x) const {
        auto& D = degree_(x.m);
        auto it = D.pmemo.find({x.p, x.q});
        if (it != D.pmemo.end()) return it->second;
        Coords out;
        if (x.m == 0) {
            out.emplace(D.rep_index.at({x.p, x.q}), CycloNumber::one(F_));
        } else {
            auto [pp, e] = space().split(x.m, x.p, x.m - 1);
            auto [qq, f] = space().split(x.m, x.q, x.m - 1);
            const Coords& prev = coords(BasisKey{x.m - 1, pp, qq});
            auto bit = D.blocks.find(block_of(x));
            if (bit != D.blocks.end())
                for (auto& [k, c] : prev) {
                    int col = bit->second.col_index.at({k, e, f});
                    for (auto& [i, v] : bit->second.psi[col]) add_to(out, i, c * v);
                }
        }
        return D.pmemo.emplace(std::pair<int, int>{x.p, x.q}, std::move(out)).first->second;
    }
    Coords coords(const WbaElement& x, int m) const {
        Coords out;
        for (auto& [k, c] : x.terms()) {
            if (k.m != m) throw std::invalid_argument("coords: element is not homogeneous of the given degree");
            for (auto& [i, v] : coords(k)) add_to(out, i, c * v);
        }
        return out;
    }
    WbaElement from_coords(int m, const Coords& c) const {
        auto& reps = internal_basis(m);
        WbaElement out(cap());
        for (auto& [i, v] : c) out.add(reps[i], v);
        return out;
    }

    /// lexicographic standard monomials of degree m (quotient basis used for canonical forms)
    const std::vector<BasisKey>& standard_monomials(int m) const {
        auto& D = degree_(m);
        ensure_canonical_(D);
        return D.standard;
    }

    /// canonical form of a monomial: combination of standard monomials
    const WbaElement& normal_form(const BasisKey& x) const {
        auto& D = degree_(x.m);
        ensure_canonical_(D);
        auto it = D.nf_memo.find({x.p, x.q});
        if (it != D.nf_memo.end()) return it->second;
        const Coords& c = coords(x);
        WbaElement out(cap());
        if (!c.empty()) {
            auto& B = D.blocks_canon.at(block_of(x));
            for (std::size_t i = 0; i < B.standard.size(); ++i) {
                CycloNumber s = CycloNumber::zero(F_);
                for (auto& [k, v] : c) {
                    auto& e = B.sinv(i, k - B.offset);
                    if (!e.is_zero()) s += e * v;
                }
                out.add(B.standard[i], s);
            }
        }
        return D.nf_memo.emplace(std::pair<int, int>{x.p, x.q}, std::move(out)).first->second;
    }

    WbaElement reduce(const WbaElement& x) const {
        WbaElement out(cap());
        for (auto& [k, c] : x.terms())
            for (auto& [s, v] : normal_form(k).terms()) out.add(s, c * v);
        return out;
    }
    TensorElement reduce(const TensorElement& t) const {
        TensorElement out;
        for (auto& [k, c] : t.terms()) {
            auto& a = normal_form(k.first);
            auto& b = normal_form(k.second);
            for (auto& [ka, va] : a.terms())
                for (auto& [kb, vb] : b.terms()) out.add(ka, kb, c * va * vb);
        }
        return out;
    }
    bool is_zero_in_quotient(const WbaElement& x) const { return reduce(x).is_zero(); }

    WbaElement unit() const { return reduce(H_.unit()); }
    WbaElement multiply(const WbaElement& a, const WbaElement& b) const { return reduce(H_.multiply(a, b)); }
    TensorElement comultiply(const WbaElement& a) const { return reduce(H_.comultiply(a)); }
    CycloNumber counit(const WbaElement& a) const { return H_.counit(a); }
    WbaElement counital_source(const WbaElement& a) const { return reduce(H_.counital_source(a)); }
    WbaElement counital_target(const WbaElement& a) const { return reduce(H_.counital_target(a)); }
    WbaElement loop_projection(const WbaElement& a) const { return reduce(H_.loop_projection(a)); }

    /// the ideal in degree m in reduced row-echelon form over the lexicographic ambient basis (p, q)
    Matrix<CycloNumber> ideal_rref(int m) const {
        int n = space().count(m);
        auto& std_ = standard_monomials(m);
        std::set<BasisKey> is_std(std_.begin(), std_.end());
        Matrix<CycloNumber> out(0, static_cast<std::size_t>(n) * n, CycloNumber::zero(F_));
        std::vector<CycloNumber> row(static_cast<std::size_t>(n) * n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                BasisKey k{m, p, q};
                if (is_std.count(k)) continue;
                std::fill(row.begin(), row.end(), CycloNumber::zero(F_));
                row[static_cast<std::size_t>(p) * n + q] = CycloNumber::one(F_);
                for (auto& [s, v] : normal_form(k).terms()) row[static_cast<std::size_t>(s.p) * n + s.q] -= v;
                out.append_row(row);
            }
        return out;
    }

    /// generators vanish under the counit and their coproducts vanish in the quotient tensor square
    struct CoidealReport {
        bool counit_ok = true;
        bool coproduct_ok = true;
        int generators = 0;
    };
    CoidealReport check_coideal() const {
        CoidealReport rep;
        for (auto& g : gens_) {
            if (g.is_zero()) continue;
            ++rep.generators;
            if (!counit(g).is_zero()) rep.counit_ok = false;
            if (!comultiply(g).is_zero()) rep.coproduct_ok = false;
        }
        return rep;
    }

private:
    struct BlockData {
        std::vector<std::array<int, 3>> cols;  // (internal index in degree m-1, e, f)
        std::map<std::array<int, 3>, int> col_index;
        std::vector<Coords> psi;
    };
    struct CanonBlock {
        int offset = 0;
        std::vector<BasisKey> standard;
        Matrix<CycloNumber> sinv;
    };
    struct DegreeData {
        int m = 0;
        std::map<Block, BlockData> blocks;
        std::vector<BasisKey> reps;
        std::map<std::pair<int, int>, int> rep_index;
        std::vector<Block> rep_block;
        std::map<Block, std::pair<int, int>> block_range;  // offset, size
        std::map<std::pair<int, int>, Coords> pmemo;
        bool canonical = false;
        std::vector<BasisKey> standard;
        std::map<Block, CanonBlock> blocks_canon;
        std::map<std::pair<int, int>, WbaElement> nf_memo;
    };

    PathWba H_;
    const CycloField* F_;
    std::vector<WbaElement> gens_;
    mutable std::vector<std::unique_ptr<DegreeData>> degrees_;

    DegreeData& degree_(int m) const {
        if (m > cap()) throw DegreeOverflow(m, cap());
        while (static_cast<int>(degrees_.size()) <= m) build_(static_cast<int>(degrees_.size()));
        return *degrees_[m];
    }

    void build_(int m) const {
        auto D = std::make_unique<DegreeData>();
        D->m = m;
        const PathSpace& S = space();
        if (m == 0) {
            int n = S.count(0);
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v) {
                    BasisKey k{0, u, v};
                    D->rep_index[{u, v}] = static_cast<int>(D->reps.size());
                    D->reps.push_back(k);
                    D->rep_block.push_back(block_of(k));
                }
            for (std::size_t i = 0; i < D->reps.size(); ++i)
                D->block_range[D->rep_block[i]] = {static_cast<int>(i), 1};
            degrees_.push_back(std::move(D));
            return;
        }
        DegreeData& P = *degrees_[m - 1];
        int ne = S.count(1);
        // columns of Q_{m-1} (x)^ H_1
        for (std::size_t k = 0; k < P.reps.size(); ++k) {
            const Block& b = P.rep_block[k];
            for (int e = 0; e < ne; ++e) {
                if (S.tau(1, e) != b[1]) continue;
                for (int f = 0; f < ne; ++f) {
                    if (S.tau(1, f) != b[3]) continue;
                    Block nb{b[0], S.sigma(1, e), b[2], S.sigma(1, f)};
                    auto& B = D->blocks[nb];
                    std::array<int, 3> col{static_cast<int>(k), e, f};
                    B.col_index[col] = static_cast<int>(B.cols.size());
                    B.cols.push_back(col);
                }
            }
        }
        std::map<Block, SparseSolver<CycloNumber>> solvers;
        for (auto& [b, B] : D->blocks) solvers.emplace(b, SparseSolver<CycloNumber>(B.cols.size(), CycloNumber::one(F_)));
        // J_m: x . gen for generators of degree n <= m and x in the internal basis of degree m - n
        for (auto& gen : gens_) {
            if (gen.is_zero()) continue;
            int n = gen.degree();
            if (n > m) continue;
            const BasisKey& first = gen.terms().begin()->first;
            Block gb = block_of(first);
            auto& X = *degrees_[m - n];
            for (std::size_t xi = 0; xi < X.reps.size(); ++xi) {
                const Block& xb = X.rep_block[xi];
                if (xb[1] != gb[0] || xb[3] != gb[2]) continue;
                const BasisKey& x = X.reps[xi];
                Block tb{xb[0], gb[1], xb[2], gb[3]};
                auto bit = D->blocks.find(tb);
                if (bit == D->blocks.end()) continue;
                auto& B = bit->second;
                typename SparseSolver<CycloNumber>::Row row;
                for (auto& [t, c] : gen.terms()) {
                    auto [ap, ae] = S.split(n, t.p, n - 1);
                    auto [bp, bf] = S.split(n, t.q, n - 1);
                    BasisKey prefix{m - 1, S.concat(m - n, x.p, n - 1, ap), S.concat(m - n, x.q, n - 1, bp)};
                    for (auto& [k, v] : coords(prefix)) row.emplace_back(B.col_index.at({k, ae, bf}), c * v);
                }
                solvers.at(tb).add_row(std::move(row), CycloNumber::zero(F_));
            }
        }
        // internal basis = free columns; psi = reduction of each column
        for (auto& [b, B] : D->blocks) {
            auto& sol = solvers.at(b);
            std::map<std::size_t, int> global;
            int offset = static_cast<int>(D->reps.size());
            for (std::size_t c = 0; c < B.cols.size(); ++c) {
                if (sol.is_pivot(c)) continue;
                auto [k, e, f] = B.cols[c];
                const BasisKey& pk = P.reps[k];
                BasisKey rep{m, S.concat(m - 1, pk.p, 1, e), S.concat(m - 1, pk.q, 1, f)};
                global[c] = static_cast<int>(D->reps.size());
                D->rep_index[{rep.p, rep.q}] = static_cast<int>(D->reps.size());
                D->reps.push_back(rep);
                D->rep_block.push_back(b);
            }
            D->block_range[b] = {offset, static_cast<int>(D->reps.size()) - offset};
            B.psi.resize(B.cols.size());
            for (std::size_t c = 0; c < B.cols.size(); ++c) {
                if (!sol.is_pivot(c)) {
                    B.psi[c].emplace(global.at(c), CycloNumber::one(F_));
                    continue;
                }
                for (auto& [fc, v] : sol.reduce({{c, CycloNumber::one(F_)}})) B.psi[c].emplace(global.at(fc), v);
            }
        }
        degrees_.push_back(std::move(D));
    }

    void ensure_canonical_(DegreeData& D) const {
        if (D.canonical) return;
        const PathSpace& S = space();
        int m = D.m;
        std::map<std::pair<int, int>, std::vector<int>> by_ends;
        for (int p = 0; p < S.count(m); ++p) by_ends[{S.tau(m, p), S.sigma(m, p)}].push_back(p);
        for (auto& [b, range] : D.block_range) {
            auto [offset, size] = range;
            CanonBlock C;
            C.offset = offset;
            if (size > 0) {
                auto& ps = by_ends.at({b[0], b[1]});
                auto& qs = by_ends.at({b[2], b[3]});
                std::vector<BasisKey> monos;
                for (int p : ps)
                    for (int q : qs) monos.push_back({m, p, q});
                SparseSolver<CycloNumber> sol(size, CycloNumber::one(F_));
                std::vector<BasisKey> picked;
                for (auto it = monos.rbegin(); it != monos.rend() && static_cast<int>(picked.size()) < size; ++it) {
                    typename SparseSolver<CycloNumber>::Row row;
                    for (auto& [k, v] : coords(*it)) row.emplace_back(k - offset, v);
                    std::size_t before = sol.rank();
                    sol.add_row(row, CycloNumber::zero(F_));
                    if (sol.rank() > before) picked.push_back(*it);
                }
                std::reverse(picked.begin(), picked.end());
                C.standard = picked;
                Matrix<CycloNumber> Mp(size, size, CycloNumber::zero(F_));
                for (int j = 0; j < size; ++j)
                    for (auto& [k, v] : coords(picked[j])) Mp(k - offset, j) = v;
                auto inv = inverse(Mp, CycloNumber::one(F_));
                if (!inv) throw std::logic_error("FrtQuotient: standard monomials are not a basis");
                C.sinv = std::move(*inv);
            }
            D.blocks_canon.emplace(b, std::move(C));
        }
        for (auto& [b, C] : D.blocks_canon) D.standard.insert(D.standard.end(), C.standard.begin(), C.standard.end());
        std::sort(D.standard.begin(), D.standard.end());
        D.canonical = true;
    }
};

/// The universal r-form of the Weak FRT bialgebra (and its weak inverse) by the degree recursion.
class RForm {
public:
    RForm(const PathSpace& S, const RMatrix& R, bool bar = false) : S_(S), R_(R), bar_(bar) {}

    const RMatrix& matrix() const { return R_; }
    bool is_bar() const { return bar_; }

    CycloNumber operator()(const BasisKey& x, const BasisKey& y) const {
        auto key = std::make_pair(x, y);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        CycloNumber v = eval_(x, y);
        memo_.emplace(key, v);
        return v;
    }
    CycloNumber operator()(const WbaElement& x, const WbaElement& y) const {
        CycloNumber s = CycloNumber::zero(R_.F);
        for (auto& [kx, cx] : x.terms())
            for (auto& [ky, cy] : y.terms()) s += cx * cy * (*this)(kx, ky);
        return s;
    }

private:
    const PathSpace& S_;
    RMatrix R_;
    bool bar_;
    mutable std::map<std::pair<BasisKey, BasisKey>, CycloNumber> memo_;

    CycloNumber val_(bool c) const { return c ? CycloNumber::one(R_.F) : CycloNumber::zero(R_.F); }
    RMatrix::Path3 triple_(int p, int r) const {
        auto& a = S_.path(1, p).vertices;
        auto& b = S_.path(1, r).vertices;
        return {a[0], a[1], b[1]};
    }

    CycloNumber eval_(const BasisKey& x, const BasisKey& y) const {
        int m = x.m, l = y.m;
        auto tau = [&](int d, int i) { return S_.tau(d, i); };
        auto sigma = [&](int d, int i) { return S_.sigma(d, i); };
        if (m == 0 && l == 0) return val_(x.p == x.q && x.q == y.q && x.p == y.p);
        if (m == 0 && l == 1) {
            if (y.p != y.q) return val_(false);
            if (!bar_) return val_(x.p == tau(1, y.p) && x.q == sigma(1, y.p));
            return val_(x.p == sigma(1, y.p) && x.q == tau(1, y.p));
        }
        if (m == 1 && l == 0) {
            if (x.p != x.q) return val_(false);
            if (!bar_) return val_(sigma(1, x.p) == y.p && tau(1, x.p) == y.q);
            return val_(tau(1, x.p) == y.p && sigma(1, x.p) == y.q);
        }
        if (m == 1 && l == 1) {
            int p = x.p, q = x.q, r = y.p, s = y.q;
            if (!bar_) {
                if (tau(1, p) != tau(1, s) || sigma(1, r) != sigma(1, q) || sigma(1, s) != tau(1, q) ||
                    sigma(1, p) != tau(1, r))
                    return val_(false);
                return R_(triple_(p, r), triple_(s, q));
            }
            if (sigma(1, r) != tau(1, p) || sigma(1, q) != tau(1, s)) return val_(false);
            return R_(triple_(r, p), triple_(q, s));
        }
        CycloNumber sum = CycloNumber::zero(R_.F);
        if (l >= 2) {
            auto [r1, r2] = S_.split(l, y.p, l - 1);
            auto [s1, s2] = S_.split(l, y.q, l - 1);
            for (int t = 0; t < S_.count(m); ++t) {
                CycloNumber a, b;
                if (!bar_) {
                    a = (*this)(BasisKey{m, x.p, t}, BasisKey{l - 1, r1, s1});
                    if (a.is_zero()) continue;
                    b = (*this)(BasisKey{m, t, x.q}, BasisKey{1, r2, s2});
                } else {
                    a = (*this)(BasisKey{m, t, x.q}, BasisKey{l - 1, r1, s1});
                    if (a.is_zero()) continue;
                    b = (*this)(BasisKey{m, x.p, t}, BasisKey{1, r2, s2});
                }
                sum += a * b;
            }
            return sum;
        }
        auto [p1, p2] = S_.split(m, x.p, m - 1);
        auto [q1, q2] = S_.split(m, x.q, m - 1);
        for (int t = 0; t < S_.count(l); ++t) {
            CycloNumber a, b;
            if (!bar_) {
                a = (*this)(BasisKey{1, p2, q2}, BasisKey{l, y.p, t});
                if (a.is_zero()) continue;
                b = (*this)(BasisKey{m - 1, p1, q1}, BasisKey{l, t, y.q});
            } else {
                a = (*this)(BasisKey{m - 1, p1, q1}, BasisKey{l, y.p, t});
                if (a.is_zero()) continue;
                b = (*this)(BasisKey{1, p2, q2}, BasisKey{l, t, y.q});
            }
            sum += a * b;
        }
        return sum;
    }
};

/// Inverse of an R-matrix on the length-2 path space.
inline RMatrix invert_r_matrix(const RMatrix& R, const DimensionGraph& g) {
    PathSpace S(g, 2);
    auto M = r_matrix_on_paths(S, R, 2, 1);
    auto inv = inverse(M, CycloNumber::one(R.F));
    if (!inv) throw std::invalid_argument("invert_r_matrix: R is singular");
    RMatrix out;
    out.r = R.r;
    out.F = R.F;
    for (int i = 0; i < S.count(2); ++i)
        for (int j = 0; j < S.count(2); ++j) {
            auto& a = S.path(2, i).vertices;
            auto& b = S.path(2, j).vertices;
            out.set({a[0], a[1], a[2]}, {b[0], b[1], b[2]}, (*inv)(i, j));
        }
    return out;
}

struct RFormReport {
    AxiomCheck exchange{"exchange law"};
    AxiomCheck weak_inverse_left{"weak inverse (rbar r)"};
    AxiomCheck weak_inverse_right{"weak inverse (r rbar)"};
    AxiomCheck counit_compat{"counit compatibility"};
    AxiomCheck multiplicative_left{"r(xy, z) = r(y, z') r(x, z'')"};
    AxiomCheck multiplicative_right{"r(x, yz) = r(x', y) r(x'', z)"};
    AxiomCheck vanishes_on_ideal{"r vanishes on the ideal"};

    std::vector<AxiomCheck> all() const {
        return {exchange, weak_inverse_left, weak_inverse_right, counit_compat, multiplicative_left, multiplicative_right,
                vanishes_on_ideal};
    }
    bool ok() const {
        for (auto& c : all())
            if (!c.ok) return false;
        return true;
    }
};

/// Checks the r-form axioms on all pairs of ambient basis elements of degree <= max_degree;
/// the exchange law is compared in the quotient.
inline RFormReport check_rform(const FrtQuotient& Q, const RForm& r, const RForm& rbar, int max_degree) {
    RFormReport rep;
    const PathWba& H = Q.ambient();
    const PathSpace& S = Q.space();
    const CycloField* F = Q.field();
    auto describe = [&](const BasisKey& k) {
        std::ostringstream os;
        auto show = [&](int m, int p) {
            os << "(";
            auto& vs = S.path(m, p).vertices;
            for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
            os << ")";
        };
        os << "[";
        show(k.m, k.p);
        os << "|";
        show(k.m, k.q);
        os << "]_" << k.m;
        return os.str();
    };
    auto fail = [](AxiomCheck& c, const std::string& w) {
        if (c.ok) {
            c.ok = false;
            c.witness = w;
        }
    };
    auto mul = [&](const BasisKey& a, const BasisKey& b) { return H.multiply_basis(a, b); };
    auto eps = [](const std::optional<BasisKey>& k) { return k && k->p == k->q; };
    std::vector<BasisKey> basis;
    for (int m = 0; m <= max_degree; ++m)
        for (int p = 0; p < S.count(m); ++p)
            for (int q = 0; q < S.count(m); ++q) basis.push_back({m, p, q});
    CycloNumber one = CycloNumber::one(F), zero = CycloNumber::zero(F);
    for (auto& x : basis)
        for (auto& y : basis) {
            std::string w = describe(x) + " " + describe(y);
            int nx = S.count(x.m), ny = S.count(y.m);
            // exchange law: x'y' r(x''y'') = r(x'y') y''x''
            ++rep.exchange.instances;
            WbaElement lhs(Q.cap()), rhs(Q.cap());
            CycloNumber wl = zero, wr = zero, cl = zero, cr = zero;
            for (int t = 0; t < nx; ++t)
                for (int u = 0; u < ny; ++u) {
                    BasisKey x1{x.m, x.p, t}, x2{x.m, t, x.q}, y1{y.m, y.p, u}, y2{y.m, u, y.q};
                    CycloNumber r22 = r(x2, y2), r11 = r(x1, y1);
                    if (!r22.is_zero())
                        if (auto k = mul(x1, y1)) lhs.add(*k, r22);
                    if (!r11.is_zero())
                        if (auto k = mul(y2, x2)) rhs.add(*k, r11);
                    wl += rbar(x1, y1) * r22;
                    wr += r11 * rbar(x2, y2);
                    if (eps(mul(x1, y1))) cl += r22;
                    if (eps(mul(y2, x2))) cr += r11;
                }
            if (!Q.reduce(lhs - rhs).is_zero()) fail(rep.exchange, w);
            ++rep.weak_inverse_left.instances;
            ++rep.weak_inverse_right.instances;
            if (wl != (eps(mul(y, x)) ? one : zero)) fail(rep.weak_inverse_left, w);
            if (wr != (eps(mul(x, y)) ? one : zero)) fail(rep.weak_inverse_right, w);
            ++rep.counit_compat.instances;
            CycloNumber rv = r(x, y);
            if (cl != rv || cr != rv) fail(rep.counit_compat, w);
        }
    // multiplicativity on triples with the product inside the degree range
    for (auto& x : basis)
        for (auto& y : basis) {
            if (x.m + y.m > max_degree) continue;
            auto xy = mul(x, y);
            for (auto& z : basis) {
                ++rep.multiplicative_left.instances;
                int nz = S.count(z.m);
                CycloNumber lhs = xy ? r(*xy, z) : zero, rhs = zero;
                for (int t = 0; t < nz; ++t) rhs += r(y, BasisKey{z.m, z.p, t}) * r(x, BasisKey{z.m, t, z.q});
                if (lhs != rhs) fail(rep.multiplicative_left, describe(x) + " " + describe(y) + " " + describe(z));
                ++rep.multiplicative_right.instances;
                int nxz = S.count(z.m);
                CycloNumber l2 = xy ? r(z, *xy) : zero, r2 = zero;
                for (int t = 0; t < nxz; ++t) r2 += r(BasisKey{z.m, z.p, t}, x) * r(BasisKey{z.m, t, z.q}, y);
                if (l2 != r2) fail(rep.multiplicative_right, describe(z) + " " + describe(x) + " " + describe(y));
            }
        }
    for (auto& g : Q.generators())
        for (auto& y : basis) {
            ++rep.vanishes_on_ideal.instances;
            WbaElement ye(Q.cap());
            ye.add(y, one);
            if (!r(g, ye).is_zero() || !r(ye, g).is_zero()) fail(rep.vanishes_on_ideal, describe(y));
        }
    return rep;
}

}  // namespace wha
