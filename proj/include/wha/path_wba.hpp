#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wha/cyclotomic.hpp"
#include "wha/graph.hpp"
#include "wha/linear_algebra.hpp"

namespace wha {

class DegreeOverflow : public std::runtime_error {
public:
    DegreeOverflow(int degree, int cap)
        : std::runtime_error("degree " + std::to_string(degree) + " exceeds cap " + std::to_string(cap)),
          degree_(degree), cap_(cap) {}
    int degree() const { return degree_; }
    int cap() const { return cap_; }

private:
    int degree_, cap_;
};

/// Paths of each length up to a cap, indexed in lexicographic order.
class PathSpace {
public:
    PathSpace() = default;
    PathSpace(const DimensionGraph& g, int cap) : g_(g), cap_(cap) {
        for (int m = 0; m <= cap; ++m) add_degree_();
    }

    const DimensionGraph& graph() const { return g_; }
    int cap() const { return cap_; }
    void extend(int cap) {
        while (cap_ < cap) {
            ++cap_;
            add_degree_();
        }
    }

    int count(int m) const { return static_cast<int>(paths_.at(m).size()); }
    const Path& path(int m, int i) const { return paths_.at(m).at(i); }
    const std::vector<Path>& paths(int m) const { return paths_.at(m); }
    int tau(int m, int i) const { return tau_[m][i]; }
    int sigma(int m, int i) const { return sigma_[m][i]; }

    int index_of(const Path& p) const {
        auto& idx = index_.at(p.length());
        auto it = idx.find(key_(p));
        if (it == idx.end()) throw std::invalid_argument("index_of: unknown path");
        return it->second;
    }
    int index_of_vertices(const std::vector<int>& vs) const { return index_of(path_from_vertices(g_, vs)); }

    /// index of the concatenation p.q (p of length m, q of length n), or -1 if not composable
    int concat(int m, int p, int n, int q) const {
        if (sigma_[m][p] != tau_[n][q]) return -1;
        if (m == 0) return q;
        if (n == 0) return p;
        const Path& a = paths_[m][p];
        const Path& b = paths_[n][q];
        std::vector<int> es = a.edges;
        es.insert(es.end(), b.edges.begin(), b.edges.end());
        return index_.at(m + n).at(es);
    }
    /// split a path of length m into the prefix of length k and the suffix
    std::pair<int, int> split(int m, int p, int k) const {
        const Path& a = paths_[m][p];
        int pre, suf;
        if (k == 0) pre = index_.at(0).at({a.vertices.front()});
        else pre = index_.at(k).at(std::vector<int>(a.edges.begin(), a.edges.begin() + k));
        if (k == m) suf = index_.at(0).at({a.vertices.back()});
        else suf = index_.at(m - k).at(std::vector<int>(a.edges.begin() + k, a.edges.end()));
        return {pre, suf};
    }

private:
    DimensionGraph g_;
    int cap_ = -1;
    std::vector<std::vector<Path>> paths_;
    std::vector<std::vector<int>> tau_, sigma_;
    std::vector<std::map<std::vector<int>, int>> index_;

    static std::vector<int> key_(const Path& p) {
        if (p.length() == 0) return {p.vertices.front()};
        return p.edges;
    }
    void add_degree_() {
        int m = static_cast<int>(paths_.size());
        paths_.push_back(enumerate_paths(g_, m));
        tau_.emplace_back();
        sigma_.emplace_back();
        index_.emplace_back();
        for (std::size_t i = 0; i < paths_[m].size(); ++i) {
            tau_[m].push_back(paths_[m][i].tau());
            sigma_[m].push_back(paths_[m][i].sigma());
            index_[m][key_(paths_[m][i])] = static_cast<int>(i);
        }
    }
};

/// Basis symbol [p|q]_m by path indices.
struct BasisKey {
    int m = 0;
    int p = 0;
    int q = 0;
    auto operator<=>(const BasisKey&) const = default;
};

/// Sparse graded element of H[G] (or of a quotient, in canonical form), coefficients never zero.
class WbaElement {
public:
    WbaElement() = default;
    explicit WbaElement(int degree_cap) : cap_(degree_cap) {}

    int degree_cap() const { return cap_; }
    void set_degree_cap(int c) { cap_ = c; }
    const std::map<BasisKey, CycloNumber>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const BasisKey& k, const CycloNumber& c) {
        if (k.m > cap_) throw DegreeOverflow(k.m, cap_);
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) terms_.emplace(k, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    CycloNumber coeff(const BasisKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? CycloNumber() : it->second;
    }
    /// max degree present, -1 for zero
    int degree() const {
        int d = -1;
        for (auto& [k, v] : terms_) d = std::max(d, k.m);
        return d;
    }
    bool is_homogeneous() const {
        int d = -2;
        for (auto& [k, v] : terms_) {
            if (d == -2) d = k.m;
            else if (d != k.m) return false;
        }
        return true;
    }
    WbaElement homogeneous_part(int m) const {
        WbaElement out(cap_);
        for (auto& [k, v] : terms_) if (k.m == m) out.terms_.emplace(k, v);
        return out;
    }

    friend WbaElement operator+(WbaElement a, const WbaElement& b) {
        a.cap_ = std::max(a.cap_, b.cap_);
        for (auto& [k, v] : b.terms_) a.add(k, v);
        return a;
    }
    friend WbaElement operator-(WbaElement a, const WbaElement& b) {
        a.cap_ = std::max(a.cap_, b.cap_);
        for (auto& [k, v] : b.terms_) a.add(k, -v);
        return a;
    }
    friend WbaElement operator*(const CycloNumber& c, const WbaElement& a) {
        WbaElement out(a.cap_);
        if (c.is_zero()) return out;
        for (auto& [k, v] : a.terms_) out.terms_.emplace(k, c * v);
        return out;
    }
    friend bool operator==(const WbaElement& a, const WbaElement& b) { return a.terms_ == b.terms_; }

private:
    int cap_ = 1 << 20;
    std::map<BasisKey, CycloNumber> terms_;
};

/// Element of H (x) H.
class TensorElement {
public:
    using Key = std::pair<BasisKey, BasisKey>;
    const std::map<Key, CycloNumber>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const BasisKey& a, const BasisKey& b, const CycloNumber& c) {
        if (c.is_zero()) return;
        Key k{a, b};
        auto it = terms_.find(k);
        if (it == terms_.end()) terms_.emplace(k, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) {
        for (auto& [k, v] : b.terms_) a.add(k.first, k.second, -v);
        return a;
    }
    friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.terms_ == b.terms_; }

private:
    std::map<Key, CycloNumber> terms_;
};

/// The weak bialgebra H[G] of path pairs, truncated at a degree cap.
class PathWba {
public:
    PathWba(const DimensionGraph& g, int cap, const CycloField* F = nullptr) : space_(g, cap), cap_(cap), F_(F) {}

    const PathSpace& space() const { return space_; }
    const DimensionGraph& graph() const { return space_.graph(); }
    int cap() const { return cap_; }
    const CycloField* field() const { return F_; }
    CycloNumber one_scalar() const { return CycloNumber::one(F_); }

    WbaElement zero() const { return WbaElement(cap_); }
    WbaElement basis(int m, int p, int q, const CycloNumber& c = 1) const {
        if (m > cap_) throw DegreeOverflow(m, cap_);
        WbaElement e(cap_);
        e.add({m, p, q}, c.in_field(F_));
        return e;
    }
    WbaElement basis(const Path& p, const Path& q) const {
        if (p.length() != q.length()) throw std::invalid_argument("basis: paths of different length");
        return basis(p.length(), space_.index_of(p), space_.index_of(q));
    }

    /// eta(1) = sum_{j,l} [j|l]_0
    WbaElement unit() const {
        WbaElement e(cap_);
        int n = space_.count(0);
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) e.add({0, j, l}, one_scalar());
        return e;
    }

    /// product of basis symbols, as a key, or nullopt when a delta vanishes
    std::optional<BasisKey> multiply_basis(const BasisKey& x, const BasisKey& y) const {
        int m = x.m + y.m;
        if (m > cap_) throw DegreeOverflow(m, cap_);
        int pr = space_.concat(x.m, x.p, y.m, y.p);
        if (pr < 0) return std::nullopt;
        int qs = space_.concat(x.m, x.q, y.m, y.q);
        if (qs < 0) return std::nullopt;
        return BasisKey{m, pr, qs};
    }

    WbaElement multiply(const WbaElement& a, const WbaElement& b) const {
        WbaElement out(cap_);
        for (auto& [ka, va] : a.terms())
            for (auto& [kb, vb] : b.terms())
                if (auto k = multiply_basis(ka, kb)) out.add(*k, va * vb);
        return out;
    }

    /// Delta([p|q]_m) = sum_r [p|r]_m (x) [r|q]_m
    TensorElement comultiply(const WbaElement& a) const {
        TensorElement t;
        for (auto& [k, v] : a.terms())
            for (int r = 0; r < space_.count(k.m); ++r) t.add({k.m, k.p, r}, {k.m, r, k.q}, v);
        return t;
    }

    CycloNumber counit(const WbaElement& a) const {
        CycloNumber s = CycloNumber::zero(F_);
        for (auto& [k, v] : a.terms())
            if (k.p == k.q) s += v;
        return s;
    }

    /// eps_s([p|q]_m) = delta_{pq} sum_j [j|sigma(p)]_0
    WbaElement counital_source(const WbaElement& a) const {
        WbaElement out(cap_);
        for (auto& [k, v] : a.terms()) {
            if (k.p != k.q) continue;
            int s = space_.sigma(k.m, k.p);
            for (int j = 0; j < space_.count(0); ++j) out.add({0, j, vertex_index_(s)}, v);
        }
        return out;
    }
    /// eps_t([p|q]_m) = delta_{pq} sum_j [tau(q)|j]_0
    WbaElement counital_target(const WbaElement& a) const {
        WbaElement out(cap_);
        for (auto& [k, v] : a.terms()) {
            if (k.p != k.q) continue;
            int t = space_.tau(k.m, k.q);
            for (int j = 0; j < space_.count(0); ++j) out.add({0, vertex_index_(t), j}, v);
        }
        return out;
    }

    /// X([p|q]_m) = delta_{sigma p, tau p} delta_{sigma q, tau q} [p|q]_m
    WbaElement loop_projection(const WbaElement& a) const {
        WbaElement out(cap_);
        for (auto& [k, v] : a.terms())
            if (space_.sigma(k.m, k.p) == space_.tau(k.m, k.p) && space_.sigma(k.m, k.q) == space_.tau(k.m, k.q))
                out.add(k, v);
        return out;
    }

    int vertex_index_(int v) const { return v; }

private:
    PathSpace space_;
    int cap_;
    const CycloField* F_;
};

/// P(p (x) q) = p (x) q if sigma(p) = tau(q), else 0; rows/cols indexed by (p, q) with q fastest.
inline Matrix<CycloNumber> truncation_idempotent(const DimensionGraph& g, int m, int l) {
    PathSpace S(g, std::max(m, l));
    int a = S.count(m), b = S.count(l);
    Matrix<CycloNumber> P(a * b, a * b, CycloNumber(0));
    for (int p = 0; p < a; ++p)
        for (int q = 0; q < b; ++q)
            if (S.sigma(m, p) == S.tau(l, q)) P(p * b + q, p * b + q) = CycloNumber(1);
    return P;
}

}  // namespace wha
