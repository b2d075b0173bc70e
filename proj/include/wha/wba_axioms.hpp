#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wha/graph.hpp"
#include "wha/path_wba.hpp"

namespace wha {

struct AxiomCheck {
    std::string name;
    bool ok = true;
    long long instances = 0;
    std::string witness;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;

    bool ok() const {
        for (auto& c : checks) if (!c.ok) return false;
        return true;
    }
    const AxiomCheck* first_failure() const {
        for (auto& c : checks) if (!c.ok) return &c;
        return nullptr;
    }
    const AxiomCheck* find(const std::string& name) const {
        for (auto& c : checks) if (c.name == name) return &c;
        return nullptr;
    }
    std::string summary() const {
        std::ostringstream os;
        for (auto& c : checks) {
            os << (c.ok ? "PASS " : "FAIL ") << c.name << " (" << c.instances << " instances)";
            if (!c.ok) os << " witness: " << c.witness;
            os << "\n";
        }
        return os.str();
    }
};

/// Exhaustive check of the weak bialgebra axioms of H[G] on all basis elements up to a degree cap.
/// Structure constants of H[G] are 0/1, so everything runs on integer index tables.
class HgAxiomChecker {
public:
    HgAxiomChecker(const DimensionGraph& g, int cap) : S_(g, cap), cap_(cap) {
        for (int m = 0; m <= cap; ++m) {
            n_.push_back(S_.count(m));
            off_.push_back(total_);
            total_ += static_cast<long long>(n_[m]) * n_[m];
        }
        deg_.resize(total_);
        P_.resize(total_);
        Q_.resize(total_);
        for (int m = 0; m <= cap; ++m)
            for (int p = 0; p < n_[m]; ++p)
                for (int q = 0; q < n_[m]; ++q) {
                    long long i = idx(m, p, q);
                    deg_[i] = m;
                    P_[i] = p;
                    Q_[i] = q;
                }
        concat_.assign(cap + 1, std::vector<std::vector<int>>(cap + 1));
        for (int a = 0; a <= cap; ++a)
            for (int b = 0; a + b <= cap; ++b) {
                auto& t = concat_[a][b];
                t.assign(static_cast<std::size_t>(n_[a]) * n_[b], -1);
                for (int p = 0; p < n_[a]; ++p)
                    for (int r = 0; r < n_[b]; ++r) t[static_cast<std::size_t>(p) * n_[b] + r] = S_.concat(a, p, b, r);
            }
    }

    /// mutation hook: the product of these two basis elements is dropped (set to zero)
    void corrupt_product(const BasisKey& x, const BasisKey& y) {
        corrupt_ = true;
        cx_ = idx(x.m, x.p, x.q);
        cy_ = idx(y.m, y.p, y.q);
    }

    long long idx(int m, int p, int q) const { return off_[m] + static_cast<long long>(p) * n_[m] + q; }
    long long size() const { return total_; }

    long long mul(long long x, long long y) const {
        int a = deg_[x], b = deg_[y];
        if (a + b > cap_) throw DegreeOverflow(a + b, cap_);
        if (corrupt_ && x == cx_ && y == cy_) return -1;
        const auto& t = concat_[a][b];
        int pr = t[static_cast<std::size_t>(P_[x]) * n_[b] + P_[y]];
        if (pr < 0) return -1;
        int qs = t[static_cast<std::size_t>(Q_[x]) * n_[b] + Q_[y]];
        if (qs < 0) return -1;
        return idx(a + b, pr, qs);
    }
    int eps(long long x) const { return P_[x] == Q_[x] ? 1 : 0; }

    std::string describe(long long x) const {
        std::ostringstream os;
        auto show = [&](int m, int p) {
            const Path& path = S_.path(m, p);
            os << "(";
            for (std::size_t i = 0; i < path.vertices.size(); ++i) os << (i ? "," : "") << path.vertices[i];
            os << ")";
            if (S_.graph().has_parallel_edges() && m > 0) {
                os << "{";
                for (std::size_t i = 0; i < path.edges.size(); ++i) os << (i ? "," : "") << path.edges[i];
                os << "}";
            }
        };
        os << "[";
        show(deg_[x], P_[x]);
        os << "|";
        show(deg_[x], Q_[x]);
        os << "]_" << deg_[x];
        return os.str();
    }

    AxiomReport run() const {
        AxiomReport rep;
        rep.checks.push_back(associativity_());
        rep.checks.push_back(unit_laws_());
        rep.checks.push_back(coassociativity_());
        rep.checks.push_back(counit_laws_());
        rep.checks.push_back(multiplicativity_());
        auto [wc, wco] = weak_counit_();
        rep.checks.push_back(wc);
        rep.checks.push_back(wco);
        auto [wu, wuo] = weak_unit_();
        rep.checks.push_back(wu);
        rep.checks.push_back(wuo);
        for (auto& c : counital_maps_()) rep.checks.push_back(c);
        return rep;
    }

private:
    PathSpace S_;
    int cap_;
    std::vector<int> n_;
    std::vector<long long> off_;
    long long total_ = 0;
    std::vector<int> deg_, P_, Q_;
    std::vector<std::vector<std::vector<int>>> concat_;
    bool corrupt_ = false;
    long long cx_ = -1, cy_ = -1;
    mutable std::vector<std::pair<long long, long long>> delta_one_;

    long long begin_(int m) const { return off_[m]; }
    long long end_(int m) const { return off_[m] + static_cast<long long>(n_[m]) * n_[m]; }

    static void fail_(AxiomCheck& c, const std::string& w) {
        if (c.ok) {
            c.ok = false;
            c.witness = w;
        }
    }

    AxiomCheck associativity_() const {
        AxiomCheck c{"associativity"};
        for (int a = 0; a <= cap_; ++a)
            for (int b = 0; a + b <= cap_; ++b)
                for (int d = 0; a + b + d <= cap_; ++d)
                    for (long long x = begin_(a); x < end_(a); ++x)
                        for (long long y = begin_(b); y < end_(b); ++y) {
                            long long xy = mul(x, y);
                            for (long long z = begin_(d); z < end_(d); ++z) {
                                ++c.instances;
                                long long l = xy < 0 ? -1 : mul(xy, z);
                                long long yz = mul(y, z);
                                long long r = yz < 0 ? -1 : mul(x, yz);
                                if (l != r) fail_(c, "x=" + describe(x) + " y=" + describe(y) + " z=" + describe(z));
                            }
                        }
        return c;
    }

    AxiomCheck unit_laws_() const {
        AxiomCheck c{"unit"};
        for (long long x = 0; x < total_; ++x) {
            ++c.instances;
            std::vector<long long> left, right;
            for (long long u = begin_(0); u < end_(0); ++u) {
                long long l = mul(u, x);
                if (l >= 0) left.push_back(l);
                long long r = mul(x, u);
                if (r >= 0) right.push_back(r);
            }
            if (left != std::vector<long long>{x}) fail_(c, "1*x != x at x=" + describe(x));
            if (right != std::vector<long long>{x}) fail_(c, "x*1 != x at x=" + describe(x));
        }
        return c;
    }

    AxiomCheck coassociativity_() const {
        AxiomCheck c{"coassociativity"};
        // both sides are sums of distinct triples; key them by the middle tensor factor
        std::vector<std::pair<long long, long long>> slot;
        std::vector<char> used;
        for (long long x = 0; x < total_; ++x) {
            ++c.instances;
            int m = deg_[x], p = P_[x], q = Q_[x];
            long long base = off_[m], n2 = static_cast<long long>(n_[m]) * n_[m];
            slot.assign(n2, {-1, -1});
            used.assign(n2, 0);
            bool ok = true;
            long long lhs_terms = 0;
            for (int t = 0; t < n_[m]; ++t)
                for (int t2 = 0; t2 < n_[m]; ++t2) {
                    long long mid = idx(m, t2, t) - base;
                    if (used[mid]) ok = false;
                    used[mid] = 1;
                    slot[mid] = {idx(m, p, t2), idx(m, t, q)};
                    ++lhs_terms;
                }
            long long rhs_terms = 0;
            for (int t = 0; t < n_[m] && ok; ++t)
                for (int t2 = 0; t2 < n_[m]; ++t2) {
                    long long mid = idx(m, t, t2) - base;
                    if (used[mid] != 1 || slot[mid] != std::pair<long long, long long>{idx(m, p, t), idx(m, t2, q)}) {
                        ok = false;
                        break;
                    }
                    used[mid] = 2;
                    ++rhs_terms;
                }
            if (!ok || lhs_terms != rhs_terms) fail_(c, "x=" + describe(x));
        }
        return c;
    }

    AxiomCheck counit_laws_() const {
        AxiomCheck c{"counit"};
        for (long long x = 0; x < total_; ++x) {
            ++c.instances;
            int m = deg_[x], p = P_[x], q = Q_[x];
            std::vector<long long> l, r;
            for (int t = 0; t < n_[m]; ++t) {
                if (eps(idx(m, p, t))) l.push_back(idx(m, t, q));
                if (eps(idx(m, t, q))) r.push_back(idx(m, p, t));
            }
            if (l != std::vector<long long>{x} || r != std::vector<long long>{x}) fail_(c, "x=" + describe(x));
        }
        return c;
    }

    AxiomCheck multiplicativity_() const {
        AxiomCheck c{"comultiplication is multiplicative"};
        std::vector<std::pair<long long, long long>> lhs, rhs;
        for (int a = 0; a <= cap_; ++a)
            for (int b = 0; a + b <= cap_; ++b)
                for (long long x = begin_(a); x < end_(a); ++x)
                    for (long long y = begin_(b); y < end_(b); ++y) {
                        ++c.instances;
                        lhs.clear();
                        rhs.clear();
                        long long xy = mul(x, y);
                        if (xy >= 0) {
                            int m = deg_[xy];
                            for (int t = 0; t < n_[m]; ++t) lhs.emplace_back(idx(m, P_[xy], t), idx(m, t, Q_[xy]));
                        }
                        for (int t = 0; t < n_[a]; ++t)
                            for (int t2 = 0; t2 < n_[b]; ++t2) {
                                long long u = mul(idx(a, P_[x], t), idx(b, P_[y], t2));
                                if (u < 0) continue;
                                long long v = mul(idx(a, t, Q_[x]), idx(b, t2, Q_[y]));
                                if (v < 0) continue;
                                rhs.emplace_back(u, v);
                            }
                        std::sort(lhs.begin(), lhs.end());
                        std::sort(rhs.begin(), rhs.end());
                        if (lhs != rhs) fail_(c, "x=" + describe(x) + " y=" + describe(y));
                    }
        return c;
    }

    std::pair<AxiomCheck, AxiomCheck> weak_counit_() const {
        AxiomCheck c{"weak counit (Delta)"}, co{"weak counit (Delta^op)"};
        std::vector<int> t1, t2;
        for (int a = 0; a <= cap_; ++a)
            for (int b = 0; a + b <= cap_; ++b)
                for (int d = 0; a + b + d <= cap_; ++d)
                    for (long long x = begin_(a); x < end_(a); ++x)
                        for (long long y = begin_(b); y < end_(b); ++y) {
                            long long xy = mul(x, y);
                            int r = P_[y], s = Q_[y];
                            // t with eps(x [r|t]) != 0, resp. eps(x [t|s]) != 0
                            t1.clear();
                            t2.clear();
                            for (int t = 0; t < n_[b]; ++t) {
                                long long u = mul(x, idx(b, r, t));
                                if (u >= 0 && eps(u)) t1.push_back(t);
                                long long u2 = mul(x, idx(b, t, s));
                                if (u2 >= 0 && eps(u2)) t2.push_back(t);
                            }
                            long long nz = end_(d) - begin_(d);
                            c.instances += nz;
                            co.instances += nz;
                            if (xy < 0 && t1.empty() && t2.empty()) continue;
                            for (long long z = begin_(d); z < end_(d); ++z) {
                                long long xyz = xy < 0 ? -1 : mul(xy, z);
                                int lhs = xyz < 0 ? 0 : eps(xyz);
                                int r1 = 0, r2 = 0;
                                for (int t : t1) {
                                    long long v = mul(idx(b, t, s), z);
                                    if (v >= 0) r1 += eps(v);
                                }
                                for (int t : t2) {
                                    long long v = mul(idx(b, r, t), z);
                                    if (v >= 0) r2 += eps(v);
                                }
                                if (lhs != r1 && c.ok) fail_(c, "x=" + describe(x) + " y=" + describe(y) + " z=" + describe(z));
                                if (lhs != r2 && co.ok) fail_(co, "x=" + describe(x) + " y=" + describe(y) + " z=" + describe(z));
                            }
                        }
        return {c, co};
    }

    std::vector<std::pair<long long, long long>> delta_unit_() const {
        std::vector<std::pair<long long, long long>> out;
        int n = n_[0];
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                for (int v = 0; v < n; ++v) out.emplace_back(idx(0, j, v), idx(0, v, l));
        return out;
    }

    std::pair<AxiomCheck, AxiomCheck> weak_unit_() const {
        AxiomCheck c{"weak unit (mu)"}, co{"weak unit (mu^op)"};
        int n = n_[0];
        std::vector<std::tuple<long long, long long, long long>> lhs, r1, r2;
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                for (int v = 0; v < n; ++v)
                    for (int w = 0; w < n; ++w) lhs.emplace_back(idx(0, j, w), idx(0, w, v), idx(0, v, l));
        auto D = delta_unit_();
        for (auto& [a, b] : D)
            for (auto& [cc, d] : D) {
                long long bc = mul(b, cc);
                if (bc >= 0) r1.emplace_back(a, bc, d);
                long long cb = mul(cc, b);
                if (cb >= 0) r2.emplace_back(a, cb, d);
            }
        std::sort(lhs.begin(), lhs.end());
        std::sort(r1.begin(), r1.end());
        std::sort(r2.begin(), r2.end());
        c.instances = co.instances = 1;
        if (lhs != r1) fail_(c, "Delta^2(1) differs");
        if (lhs != r2) fail_(co, "Delta^2(1) differs");
        return {c, co};
    }

    using IntVec = std::map<long long, long long>;

    static void add_to_(IntVec& v, long long k, long long c) {
        if (!c) return;
        auto& e = v[k];
        e += c;
        if (!e) v.erase(k);
    }

    IntVec eps_s_(const IntVec& x) const {
        IntVec out;
        const auto& D = delta_one_;
        for (auto& [k, c] : x)
            for (auto& [a, b] : D) {
                long long xb = mul(k, b);
                if (xb >= 0 && eps(xb)) add_to_(out, a, c);
            }
        return out;
    }
    IntVec eps_t_(const IntVec& x) const {
        IntVec out;
        const auto& D = delta_one_;
        for (auto& [k, c] : x)
            for (auto& [a, b] : D) {
                long long ax = mul(a, k);
                if (ax >= 0 && eps(ax)) add_to_(out, b, c);
            }
        return out;
    }
    IntVec mul_vec_(const IntVec& x, const IntVec& y) const {
        IntVec out;
        for (auto& [a, ca] : x)
            for (auto& [b, cb] : y) {
                long long ab = mul(a, b);
                if (ab >= 0) add_to_(out, ab, ca * cb);
            }
        return out;
    }

    std::vector<AxiomCheck> counital_maps_() const {
        delta_one_ = delta_unit_();
        AxiomCheck is{"eps_s idempotent"}, it{"eps_t idempotent"}, cm{"base algebras commute"};
        std::set<IntVec> imgs_s, imgs_t;
        for (long long x = 0; x < total_; ++x) {
            IntVec ex{{x, 1}};
            auto s = eps_s_(ex);
            auto t = eps_t_(ex);
            ++is.instances;
            ++it.instances;
            if (eps_s_(s) != s) fail_(is, "x=" + describe(x));
            if (eps_t_(t) != t) fail_(it, "x=" + describe(x));
            if (!s.empty()) imgs_s.insert(s);
            if (!t.empty()) imgs_t.insert(t);
        }
        for (auto& s : imgs_s)
            for (auto& t : imgs_t) {
                ++cm.instances;
                if (mul_vec_(s, t) != mul_vec_(t, s)) fail_(cm, "eps_s/eps_t images do not commute");
            }
        return {is, it, cm};
    }
};

inline AxiomReport check_wba_axioms(const DimensionGraph& g, int max_degree) {
    return HgAxiomChecker(g, max_degree).run();
}

/// All loop-allowed digraphs on n vertices (at most one edge per ordered pair), in bitmask order.
inline std::vector<DimensionGraph> all_digraphs(int n) {
    std::vector<DimensionGraph> out;
    int pairs = n * n;
    for (long long mask = 0; mask < (1LL << pairs); ++mask) {
        DimensionGraph g(n);
        for (int k = 0; k < pairs; ++k)
            if (mask >> k & 1) g.add_edge(k / n, k % n);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace wha
