#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wha/cyclotomic.hpp"
#include "wha/graph.hpp"

namespace wha {

/// Non-crossing perfect matching between `bot` points below and `top` points above.
/// Point i < bot is bottom i (left to right), point bot + i is top i.
struct PlanarDiagram {
    int bot = 0;
    int top = 0;
    std::vector<int> pairing;

    int size() const { return bot + top; }
    auto operator<=>(const PlanarDiagram&) const = default;

    bool is_valid() const {
        int n = size();
        if (static_cast<int>(pairing.size()) != n || n % 2) return false;
        for (int i = 0; i < n; ++i) {
            int j = pairing[i];
            if (j < 0 || j >= n || j == i || pairing[j] != i) return false;
        }
        auto pos = circular_positions_();
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                int a = pos[i], b = pos[pairing[i]], c = pos[k], d = pos[pairing[k]];
                if (a > b) std::swap(a, b);
                if (c > d) std::swap(c, d);
                if (a < c && c < b && b < d) return false;
            }
        return true;
    }

    static PlanarDiagram identity(int n) {
        PlanarDiagram d{n, n, std::vector<int>(2 * n)};
        for (int i = 0; i < n; ++i) {
            d.pairing[i] = n + i;
            d.pairing[n + i] = i;
        }
        return d;
    }
    /// e_i on n strands (1-based): cap on bottom i, i+1 and cup on top i, i+1
    static PlanarDiagram cupcap(int n, int i) {
        if (i < 1 || i >= n) throw std::invalid_argument("cupcap: index out of range");
        PlanarDiagram d = identity(n);
        int a = i - 1, b = i;
        d.pairing[a] = b;
        d.pairing[b] = a;
        d.pairing[n + a] = n + b;
        d.pairing[n + b] = n + a;
        return d;
    }

    PlanarDiagram flipped() const {
        PlanarDiagram d{top, bot, std::vector<int>(size())};
        auto m = [&](int p) { return p < bot ? top + p : p - bot; };
        for (int i = 0; i < size(); ++i) d.pairing[m(i)] = m(pairing[i]);
        return d;
    }

    /// position of each point on the boundary circle: bottom left to right, then top right to left
    std::vector<int> circular_positions_() const {
        std::vector<int> pos(size());
        for (int i = 0; i < bot; ++i) pos[i] = i;
        for (int i = 0; i < top; ++i) pos[bot + i] = bot + top - 1 - i;
        return pos;
    }
};

/// f o g (g below f) together with the number of closed loops created.
inline std::pair<PlanarDiagram, int> compose(const PlanarDiagram& f, const PlanarDiagram& g) {
    if (g.top != f.bot) throw std::invalid_argument("compose: strand counts do not match");
    int a = g.bot, b = g.top, c = f.top;
    PlanarDiagram out{a, c, std::vector<int>(a + c, -1)};
    std::vector<char> seen(b, 0);
    // walk from an outer point until another outer point is reached
    auto walk_from_g = [&](int x) {
        while (true) {
            int y = g.pairing[x];
            if (y < a) return y;
            int mid = y - a;
            seen[mid] = 1;
            int z = f.pairing[mid];
            if (z >= b) return a + (z - b);
            seen[z] = 1;
            x = a + z;
        }
    };
    auto walk_from_f = [&](int x) {
        while (true) {
            int y = f.pairing[x];
            if (y >= b) return a + (y - b);
            seen[y] = 1;
            int z = g.pairing[a + y];
            if (z < a) return z;
            seen[z - a] = 1;
            x = z - a;
        }
    };
    for (int i = 0; i < a; ++i)
        if (out.pairing[i] < 0) {
            int j = walk_from_g(i);
            out.pairing[i] = j;
            out.pairing[j] = i;
        }
    for (int i = 0; i < c; ++i)
        if (out.pairing[a + i] < 0) {
            int j = walk_from_f(b + i);
            out.pairing[a + i] = j;
            out.pairing[j] = a + i;
        }
    int loops = 0;
    for (int m = 0; m < b; ++m) {
        if (seen[m]) continue;
        ++loops;
        int cur = m;
        while (!seen[cur]) {
            seen[cur] = 1;
            int y = f.pairing[cur];
            seen[y] = 1;
            cur = g.pairing[a + y] - a;
        }
    }
    return {out, loops};
}

inline PlanarDiagram tensor(const PlanarDiagram& f, const PlanarDiagram& g) {
    PlanarDiagram out{f.bot + g.bot, f.top + g.top, std::vector<int>(f.size() + g.size())};
    auto mf = [&](int p) { return p < f.bot ? p : out.bot + (p - f.bot); };
    auto mg = [&](int p) { return p < g.bot ? f.bot + p : out.bot + f.top + (p - g.bot); };
    for (int i = 0; i < f.size(); ++i) out.pairing[mf(i)] = mf(f.pairing[i]);
    for (int i = 0; i < g.size(); ++i) out.pairing[mg(i)] = mg(g.pairing[i]);
    return out;
}

/// number of loops after joining top i to bottom i
inline int closure_loops(const PlanarDiagram& d) {
    if (d.bot != d.top) throw std::invalid_argument("closure: diagram is not an endomorphism");
    int n = d.bot;
    std::vector<char> seen(2 * n, 0);
    int loops = 0;
    for (int s = 0; s < 2 * n; ++s) {
        if (seen[s]) continue;
        ++loops;
        int cur = s;
        while (!seen[cur]) {
            seen[cur] = 1;
            int y = d.pairing[cur];
            seen[y] = 1;
            cur = y < n ? y + n : y - n;
        }
    }
    return loops;
}

/// All planar diagrams with the given boundary (Catalan many when bot + top = 2n).
inline std::vector<PlanarDiagram> all_diagrams(int bot, int top) {
    int n = bot + top;
    std::vector<PlanarDiagram> out;
    if (n % 2) return out;
    std::vector<int> at(n);  // circular position -> point
    for (int i = 0; i < bot; ++i) at[i] = i;
    for (int i = 0; i < top; ++i) at[bot + top - 1 - i] = bot + i;
    std::vector<int> match(n, -1);
    std::vector<std::vector<int>> results;
    auto rec = [&](auto&& self, std::vector<int> todo) -> std::vector<std::vector<std::pair<int, int>>> {
        if (todo.empty()) return {{}};
        std::vector<std::vector<std::pair<int, int>>> res;
        for (std::size_t k = 1; k < todo.size(); k += 2) {
            std::vector<int> inner(todo.begin() + 1, todo.begin() + k);
            std::vector<int> outer(todo.begin() + k + 1, todo.end());
            auto ri = self(self, inner);
            auto ro = self(self, outer);
            for (auto& x : ri)
                for (auto& y : ro) {
                    std::vector<std::pair<int, int>> m = x;
                    m.insert(m.end(), y.begin(), y.end());
                    m.emplace_back(todo[0], todo[k]);
                    res.push_back(std::move(m));
                }
        }
        return res;
    };
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (auto& m : rec(rec, all)) {
        PlanarDiagram d{bot, top, std::vector<int>(n)};
        for (auto [x, y] : m) {
            d.pairing[at[x]] = at[y];
            d.pairing[at[y]] = at[x];
        }
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Formal linear combination of planar diagrams with a fixed boundary.
class TlElement {
public:
    TlElement() = default;
    TlElement(int bot, int top) : bot_(bot), top_(top) {}
    explicit TlElement(const PlanarDiagram& d, const CycloNumber& c) : bot_(d.bot), top_(d.top) { add(d, c); }

    int bot() const { return bot_; }
    int top() const { return top_; }
    int n() const { return bot_; }
    const std::map<PlanarDiagram, CycloNumber>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const PlanarDiagram& d, const CycloNumber& c) {
        if (d.bot != bot_ || d.top != top_) throw std::invalid_argument("TlElement: boundary mismatch");
        if (c.is_zero()) return;
        auto it = terms_.find(d);
        if (it == terms_.end()) terms_.emplace(d, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    CycloNumber coeff(const PlanarDiagram& d) const {
        auto it = terms_.find(d);
        return it == terms_.end() ? CycloNumber() : it->second;
    }

    friend TlElement operator+(TlElement a, const TlElement& b) {
        for (auto& [d, c] : b.terms_) a.add(d, c);
        return a;
    }
    friend TlElement operator-(TlElement a, const TlElement& b) {
        for (auto& [d, c] : b.terms_) a.add(d, -c);
        return a;
    }
    friend TlElement operator*(const CycloNumber& s, const TlElement& a) {
        TlElement out(a.bot_, a.top_);
        for (auto& [d, c] : a.terms_) out.add(d, s * c);
        return out;
    }
    friend bool operator==(const TlElement& a, const TlElement& b) {
        return a.bot_ == b.bot_ && a.top_ == b.top_ && a.terms_ == b.terms_;
    }

private:
    int bot_ = 0, top_ = 0;
    std::map<PlanarDiagram, CycloNumber> terms_;
};

/// R-matrix coefficients R_{p;q} on length-2 paths, p and q given by vertex sequences.
/// R_{p;q} is the coefficient of p in the image of q.
struct RMatrix {
    using Path3 = std::array<int, 3>;
    int r = 0;
    const CycloField* F = nullptr;
    std::map<std::pair<Path3, Path3>, CycloNumber> entries;

    CycloNumber operator()(const Path3& p, const Path3& q) const {
        auto it = entries.find({p, q});
        return it == entries.end() ? CycloNumber::zero(F) : it->second;
    }
    void set(const Path3& p, const Path3& q, const CycloNumber& c) {
        if (c.is_zero()) entries.erase({p, q});
        else entries[{p, q}] = c;
    }
    friend bool operator==(const RMatrix& a, const RMatrix& b) { return a.r == b.r && a.entries == b.entries; }
};

/// Diagram calculus at level r: loop value -[2], Jones-Wenzl projectors, trivalent vertices.
class TemperleyLieb {
public:
    explicit TemperleyLieb(const LevelField& L) : L_(L), delta_(-L.qint(2)) {}
    explicit TemperleyLieb(int r, int root_exponent = 1) : TemperleyLieb(field_for_level(r, root_exponent)) {}

    const LevelField& level() const { return L_; }
    int r() const { return L_.r; }
    const CycloNumber& loop_value() const { return delta_; }

    TlElement identity(int n) const { return TlElement(PlanarDiagram::identity(n), L_.one()); }
    TlElement cupcap(int n, int i) const { return TlElement(PlanarDiagram::cupcap(n, i), L_.one()); }
    TlElement diagram(const PlanarDiagram& d) const { return TlElement(d, L_.one()); }

    /// a o b: b first, then a
    TlElement multiply(const TlElement& a, const TlElement& b) const {
        if (a.bot() != b.top()) throw std::invalid_argument("tl_multiply: strand counts do not match");
        TlElement out(b.bot(), a.top());
        for (auto& [da, ca] : a.terms())
            for (auto& [db, cb] : b.terms()) {
                auto [d, loops] = compose(da, db);
                out.add(d, ca * cb * delta_pow_(loops));
            }
        return out;
    }
    TlElement tensor(const TlElement& a, const TlElement& b) const {
        TlElement out(a.bot() + b.bot(), a.top() + b.top());
        for (auto& [da, ca] : a.terms())
            for (auto& [db, cb] : b.terms()) out.add(wha::tensor(da, db), ca * cb);
        return out;
    }
    TlElement flip(const TlElement& a) const {
        TlElement out(a.top(), a.bot());
        for (auto& [d, c] : a.terms()) out.add(d.flipped(), c);
        return out;
    }
    CycloNumber closure(const TlElement& a) const {
        CycloNumber s = L_.zero();
        for (auto& [d, c] : a.terms()) s += c * delta_pow_(closure_loops(d));
        return s;
    }

    TlElement jones_wenzl(int n) const {
        if (n < 0 || n > L_.r - 2) throw std::invalid_argument("jones_wenzl: n must lie in [0, r-2]");
        while (static_cast<int>(jw_.size()) <= n) {
            int k = static_cast<int>(jw_.size());
            if (k <= 1) {
                jw_.push_back(identity(k));
                continue;
            }
            // P_k = P_{k-1} (x) 1 + ([k-1]/[k]) (P_{k-1} (x) 1) e_{k-1} (P_{k-1} (x) 1)
            TlElement pad = tensor(jw_[k - 1], identity(1));
            TlElement hook = multiply(pad, multiply(cupcap(k, k - 1), pad));
            jw_.push_back(pad + (L_.qint(k - 1) / L_.qint(k)) * hook);
        }
        return jw_[n];
    }

    CycloNumber quantum_dim(int n) const {
        if (n < 0 || n > L_.r - 2) throw std::invalid_argument("quantum_dim: n must lie in [0, r-2]");
        CycloNumber v = L_.qint(n + 1);
        return n % 2 ? -v : v;
    }

    bool admissible(int a, int b, int c) const {
        if (a < 0 || b < 0 || c < 0) return false;
        return sl2_admissible(a, b, c, L_.r);
    }

    /// trivalent vertex a -> b (x) c with Jones-Wenzl projectors on all three legs; zero if not admissible
    TlElement split_vertex(int a, int b, int c) const {
        if (!admissible(a, b, c)) return TlElement(a, b + c);
        auto key = std::array<int, 3>{a, b, c};
        if (auto it = split_.find(key); it != split_.end()) return it->second;
        int i = (a + b - c) / 2, j = (a + c - b) / 2, k = (b + c - a) / 2;
        PlanarDiagram d{a, b + c, std::vector<int>(a + b + c)};
        auto link = [&](int x, int y) {
            d.pairing[x] = y;
            d.pairing[y] = x;
        };
        for (int s = 0; s < i; ++s) link(s, a + s);
        for (int s = 0; s < j; ++s) link(i + s, a + b + k + s);
        for (int s = 0; s < k; ++s) link(a + b - 1 - s, a + b + s);
        TlElement v = multiply(tensor(jones_wenzl(b), jones_wenzl(c)), multiply(diagram(d), jones_wenzl(a)));
        split_.emplace(key, v);
        return v;
    }
    /// dual vertex b (x) c -> a
    TlElement merge_vertex(int b, int c, int a) const { return flip(split_vertex(a, b, c)); }

    CycloNumber theta(int a, int b, int c) const {
        if (!admissible(a, b, c)) return L_.zero();
        return closure(multiply(merge_vertex(b, c, a), split_vertex(a, b, c)));
    }

    /// H-shaped network b (x) c -> a (x) j (x) c -> a (x) d
    TlElement h_network(int a, int b, int c, int d, int j) const {
        TlElement lower = tensor(split_vertex(b, a, j), identity(c));
        TlElement upper = tensor(identity(a), merge_vertex(j, c, d));
        return multiply(upper, lower);
    }
    /// b (x) c -> i -> a (x) d
    TlElement i_channel(int a, int b, int c, int d, int i) const {
        return multiply(split_vertex(i, a, d), merge_vertex(b, c, i));
    }

    /// tetrahedral net: the H-network closed off by the i-vertices
    CycloNumber tet(int a, int b, int i, int c, int d, int j) const {
        if (!admissible(b, c, i) || !admissible(a, d, i) || !admissible(a, b, j) || !admissible(c, d, j))
            return L_.zero();
        TlElement net = multiply(merge_vertex(a, d, i), multiply(h_network(a, b, c, d, j), split_vertex(i, b, c)));
        return closure(net);
    }

    /// Delta_i Tet / (theta(a,d,i) theta(b,c,i)); the coefficient of the i-channel in the j-network
    CycloNumber six_j(int a, int b, int i, int c, int d, int j) const {
        CycloNumber t = tet(a, b, i, c, d, j);
        if (t.is_zero()) return t;
        return quantum_dim(i) * t / (theta(a, d, i) * theta(b, c, i));
    }

    /// basis vector of the length-2 path (j,k,l): V_l -> V_k (x) M -> V_j (x) M (x) M
    TlElement path_vector(int j, int k, int l) const {
        return multiply(tensor(split_vertex(k, j, 1), identity(1)), split_vertex(l, k, 1));
    }

    /// matrix of x_e e + x_1 1 acting on the last two strands, in the path basis of length-2 paths
    RMatrix two_strand_matrix(const CycloNumber& x_e, const CycloNumber& x_1) const {
        RMatrix R;
        R.r = L_.r;
        R.F = L_.F;
        int top = L_.r - 2;
        for (int j = 0; j <= top; ++j)
            for (int l = 0; l <= top; ++l) {
                std::vector<int> mids;
                for (int k = 0; k <= top; ++k)
                    if (std::abs(k - j) == 1 && std::abs(l - k) == 1) mids.push_back(k);
                if (mids.empty()) continue;
                TlElement op = x_e * tensor(identity(j), cupcap(2, 1)) + x_1 * identity(j + 2);
                for (int k : mids) {
                    TlElement image = multiply(op, path_vector(j, k, l));
                    for (int k2 : mids) {
                        TlElement dual = flip(path_vector(j, k2, l));
                        CycloNumber num = closure(multiply(dual, image));
                        CycloNumber den = closure(multiply(dual, path_vector(j, k2, l)));
                        R.set({j, k2, l}, {j, k, l}, num / den);
                    }
                }
            }
        return R;
    }

    /// crossing resolved as A (cup-cap) + A^{-1} (identity); the inverse crossing swaps A and A^{-1}
    RMatrix derive_r_matrix(bool inverse = false) const {
        return inverse ? two_strand_matrix(L_.Ainv, L_.A) : two_strand_matrix(L_.A, L_.Ainv);
    }
    /// the cup-cap e acting on the last two strands
    RMatrix cupcap_matrix() const { return two_strand_matrix(L_.one(), L_.zero()); }

private:
    LevelField L_;
    CycloNumber delta_;
    mutable std::vector<TlElement> jw_;
    mutable std::map<std::array<int, 3>, TlElement> split_;
    mutable std::vector<CycloNumber> delta_pows_;

    const CycloNumber& delta_pow_(int k) const {
        while (static_cast<int>(delta_pows_.size()) <= k)
            delta_pows_.push_back(delta_pows_.empty() ? L_.one() : delta_pows_.back() * delta_);
        return delta_pows_[k];
    }
};

inline RMatrix derive_r_matrix(int r, int root_exponent = 1, bool inverse = false) {
    return TemperleyLieb(r, root_exponent).derive_r_matrix(inverse);
}

/// the four families of coefficients, with q^{1/2} = A
inline RMatrix closed_form_r(const LevelField& L) {
    RMatrix R;
    R.r = L.r;
    R.F = L.F;
    int top = L.r - 2;
    CycloNumber h = L.Ainv;             // q^{-1/2}
    CycloNumber h3 = L.Ainv.pow(3);     // q^{-3/2}
    auto in = [&](int v) { return v >= 0 && v <= top; };
    for (int j = 0; j <= top; ++j) {
        CycloNumber b = L.qint(j + 1);
        if (in(j + 1)) R.set({j, j + 1, j}, {j, j + 1, j}, -h * L.q.pow(j + 1) / b);
        if (in(j - 1)) R.set({j, j - 1, j}, {j, j - 1, j}, h * L.q.pow(-(j + 1)) / b);
        if (in(j - 1) && in(j + 1)) {
            R.set({j, j - 1, j}, {j, j + 1, j}, h * L.qint(j) * L.qint(j + 2) / (b * b));
            R.set({j, j + 1, j}, {j, j - 1, j}, h);
        }
        if (in(j + 2)) R.set({j, j + 1, j + 2}, {j, j + 1, j + 2}, h3);
        if (in(j - 2)) R.set({j, j - 1, j - 2}, {j, j - 1, j - 2}, h3);
    }
    return R;
}
inline RMatrix closed_form_r(int r, int root_exponent = 1) { return closed_form_r(field_for_level(r, root_exponent)); }

}  // namespace wha
