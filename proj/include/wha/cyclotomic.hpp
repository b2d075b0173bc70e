#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace wha {

using i64 = long long;
using i128 = __int128;
using u128 = unsigned __int128;

namespace detail {

inline int ctz_u128(u128 x) {
    auto lo = static_cast<unsigned long long>(x);
    if (lo) return __builtin_ctzll(lo);
    return 64 + __builtin_ctzll(static_cast<unsigned long long>(x >> 64));
}

inline u128 gcd_u128(u128 a, u128 b) {
    if (!a) return b;
    if (!b) return a;
    if ((a >> 64) == 0 && (b >> 64) == 0)
        return std::gcd(static_cast<unsigned long long>(a), static_cast<unsigned long long>(b));
    int sh = ctz_u128(a | b);
    a >>= ctz_u128(a);
    do {
        b >>= ctz_u128(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b);
    return a << sh;
}

inline u128 abs_u128(i128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

inline int bit_length(u128 x) {
    auto hi = static_cast<unsigned long long>(x >> 64);
    if (hi) return 128 - __builtin_clzll(hi);
    auto lo = static_cast<unsigned long long>(x);
    return lo ? 64 - __builtin_clzll(lo) : 0;
}

inline mpz_class to_mpz(i128 x) {
    bool neg = x < 0;
    u128 u = abs_u128(x);
    mpz_class hi(static_cast<unsigned long>(static_cast<unsigned long long>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<unsigned long long>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

inline mpz_class to_mpz(i64 x) {
    mpz_class r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(x));
    return r;
}

inline bool fits_i64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

// Integer polynomial helpers, coefficients low degree first.
inline std::vector<i64> poly_divexact(std::vector<i64> num, const std::vector<i64>& den) {
    // den is monic
    int dn = static_cast<int>(den.size()) - 1;
    int nn = static_cast<int>(num.size()) - 1;
    if (nn < dn) return {0};
    std::vector<i64> q(nn - dn + 1, 0);
    for (int i = nn; i >= dn; --i) {
        i64 c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    for (int i = 0; i < dn; ++i)
        if (num[i] != 0) throw std::logic_error("poly_divexact: nonzero remainder");
    return q;
}

}  // namespace detail

/// Cyclotomic field Q(zeta_N) with power basis modulo Phi_N.
class CycloField {
public:
    int N = 1;
    int phi = 1;
    std::vector<i64> cyclotomic;                // Phi_N, monic, size phi+1
    std::vector<std::vector<i64>> powers;       // zeta^e in the power basis, e = 0..N-1
    std::vector<int> units;                     // residues coprime to N
    int table_bits = 1;                         // bit bound on |powers| entries

    static const CycloField* get(int N) {
        static std::mutex mu;
        static std::map<int, std::unique_ptr<CycloField>> registry;
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find(N);
        if (it != registry.end()) return it->second.get();
        auto f = std::unique_ptr<CycloField>(new CycloField(N));
        auto* raw = f.get();
        registry.emplace(N, std::move(f));
        return raw;
    }

    static std::vector<i64> cyclotomic_poly(int n) {
        if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
        std::vector<i64> p(n + 1, 0);
        p[0] = -1;
        p[n] = 1;
        for (int d = 1; d < n; ++d)
            if (n % d == 0) p = detail::poly_divexact(p, cyclotomic_poly(d));
        return p;
    }

private:
    explicit CycloField(int n) : N(n) {
        if (n < 1) throw std::invalid_argument("CycloField: conductor must be positive");
        cyclotomic = cyclotomic_poly(n);
        phi = static_cast<int>(cyclotomic.size()) - 1;
        powers.assign(N, std::vector<i64>(phi, 0));
        std::vector<i64> cur(phi, 0);
        cur[0] = 1;
        i64 maxabs = 1;
        for (int e = 0; e < N; ++e) {
            powers[e] = cur;
            for (auto c : cur) maxabs = std::max(maxabs, c < 0 ? -c : c);
            // multiply by x and reduce
            i64 top = cur[phi - 1];
            for (int i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (top != 0)
                for (int i = 0; i < phi; ++i) cur[i] -= top * cyclotomic[i];
        }
        table_bits = detail::bit_length(static_cast<u128>(maxabs));
        for (int k = 1; k <= N; ++k)
            if (std::gcd(k % N, N) == 1) units.push_back(k % N);
        std::sort(units.begin(), units.end());
    }
};

/// Exact element of Q(zeta_N): integer numerator vector over a positive common denominator,
/// normalised so that gcd(numerators, denominator) = 1. A null field means a plain rational.
class CycloNumber {
public:
    CycloNumber() : n_(1, 0) {}
    CycloNumber(long long v) : n_(1, v) { normalize_small_(); }  // NOLINT implicit
    CycloNumber(int v) : CycloNumber(static_cast<long long>(v)) {}  // NOLINT implicit

    static CycloNumber rational(const mpq_class& v, const CycloField* F = nullptr) {
        mpq_class c = v;
        c.canonicalize();
        CycloNumber x;
        x.F_ = F;
        int len = F ? F->phi : 1;
        std::vector<mpz_class> num(len, 0);
        num[0] = c.get_num();
        x.assign_big_(std::move(num), c.get_den());
        return x;
    }
    static CycloNumber rational(long long num, long long den, const CycloField* F = nullptr) {
        return rational(mpq_class(detail::to_mpz(num), detail::to_mpz(den)), F);
    }
    static CycloNumber zero(const CycloField* F) {
        CycloNumber x;
        x.F_ = F;
        x.n_.assign(F ? F->phi : 1, 0);
        return x;
    }
    static CycloNumber one(const CycloField* F) {
        CycloNumber x = zero(F);
        x.n_[0] = 1;
        x.bits_ = 1;
        return x;
    }
    /// zeta_N^k
    static CycloNumber zeta_power(const CycloField* F, long long k) {
        if (!F) throw std::invalid_argument("zeta_power needs a field");
        int e = static_cast<int>(((k % F->N) + F->N) % F->N);
        CycloNumber x = zero(F);
        x.n_ = F->powers[e];
        x.normalize_small_();
        return x;
    }
    static CycloNumber from_coeffs(const CycloField* F, const std::vector<mpq_class>& coeffs) {
        int len = F ? F->phi : 1;
        if (static_cast<int>(coeffs.size()) != len)
            throw std::invalid_argument("from_coeffs: wrong coefficient count");
        mpz_class den = 1;
        for (auto c : coeffs) {
            c.canonicalize();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        }
        std::vector<mpz_class> num(len);
        for (int i = 0; i < len; ++i) {
            mpq_class c = coeffs[i];
            c.canonicalize();
            num[i] = c.get_num() * (den / c.get_den());
        }
        CycloNumber x;
        x.F_ = F;
        x.assign_big_(std::move(num), den);
        return x;
    }

    const CycloField* field() const { return F_; }
    int conductor() const { return F_ ? F_->N : 1; }
    int length() const { return F_ ? F_->phi : 1; }

    bool is_zero() const {
        if (big_) {
            for (auto& z : bn_) if (z != 0) return false;
            return true;
        }
        for (auto v : n_) if (v) return false;
        return true;
    }
    bool is_one() const { return is_rational() && coeff(0) == 1; }
    bool is_rational() const {
        int len = length();
        for (int i = 1; i < len; ++i)
            if (big_ ? bn_[i] != 0 : n_[i] != 0) return false;
        return true;
    }

    /// i-th power-basis coordinate
    mpq_class coeff(int i) const {
        mpq_class r = big_ ? mpq_class(bn_[i], bd_) : mpq_class(detail::to_mpz(n_[i]), detail::to_mpz(d_));
        r.canonicalize();
        return r;
    }
    std::vector<mpq_class> coeffs() const {
        std::vector<mpq_class> out;
        for (int i = 0; i < length(); ++i) out.push_back(coeff(i));
        return out;
    }
    mpq_class to_rational() const {
        if (!is_rational()) throw std::domain_error("CycloNumber is not rational");
        return coeff(0);
    }

    /// embed into the field F (only from the plain-rational state or the same field)
    CycloNumber in_field(const CycloField* F) const {
        if (F_ == F) return *this;
        if (F_ != nullptr) throw std::invalid_argument("CycloNumber: mixed conductors");
        CycloNumber x = zero(F);
        if (big_) {
            std::vector<mpz_class> num(F ? F->phi : 1, 0);
            num[0] = bn_[0];
            x.assign_big_(std::move(num), bd_);
        } else {
            x.n_[0] = n_[0];
            x.d_ = d_;
            x.bits_ = bits_;
        }
        return x;
    }

    friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
        if (a.F_ != b.F_) {
            const CycloField* F = common_field_(a, b);
            return a.in_field(F) == b.in_field(F);
        }
        if (a.big_ != b.big_) return false;
        if (a.big_) return a.bd_ == b.bd_ && a.bn_ == b.bn_;
        return a.d_ == b.d_ && a.n_ == b.n_;
    }
    friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

    friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) { return add_(a, b, false); }
    friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) { return add_(a, b, true); }
    CycloNumber operator-() const {
        CycloNumber x = *this;
        if (x.big_) for (auto& z : x.bn_) z = -z;
        else for (auto& v : x.n_) v = -v;
        return x;
    }
    friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) { return mul_(a, b); }
    friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inverse(); }
    CycloNumber& operator+=(const CycloNumber& b) { return *this = *this + b; }
    CycloNumber& operator-=(const CycloNumber& b) { return *this = *this - b; }
    CycloNumber& operator*=(const CycloNumber& b) { return *this = *this * b; }
    CycloNumber& operator/=(const CycloNumber& b) { return *this = *this / b; }

    /// Galois automorphism zeta -> zeta^k (k coprime to N)
    CycloNumber galois(int k) const {
        if (!F_) return *this;
        const CycloField& F = *F_;
        int kk = ((k % F.N) + F.N) % F.N;
        if (std::gcd(kk, F.N) != 1) throw std::invalid_argument("galois: exponent not coprime to conductor");
        std::vector<mpz_class> num(F.phi, 0);
        mpz_class den;
        if (big_) den = bd_;
        else den = detail::to_mpz(d_);
        for (int i = 0; i < F.phi; ++i) {
            mpz_class ci = big_ ? bn_[i] : detail::to_mpz(n_[i]);
            if (ci == 0) continue;
            const auto& row = F.powers[(static_cast<long long>(i) * kk) % F.N];
            for (int j = 0; j < F.phi; ++j)
                if (row[j]) num[j] += ci * detail::to_mpz(row[j]);
        }
        CycloNumber x;
        x.F_ = F_;
        x.assign_big_(std::move(num), den);
        return x;
    }
    /// complex conjugate
    CycloNumber conj() const { return galois(-1); }

    CycloNumber inverse() const {
        if (is_zero()) throw std::domain_error("CycloNumber: division by zero");
        if (is_rational()) {
            mpq_class c = 1 / coeff(0);
            return rational(c, F_);
        }
        CycloNumber prod = one(F_);
        for (int k : F_->units)
            if (k != 1) prod = prod * galois(k);
        CycloNumber norm = *this * prod;
        if (!norm.is_rational()) throw std::logic_error("CycloNumber: norm not rational");
        return prod * rational(1 / norm.coeff(0), F_);
    }

    CycloNumber pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        CycloNumber result = one(F_), base = *this;
        while (e) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    /// exact form, e.g. "1/2 - z^3 + 2*z^5" with z = zeta_N
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i < length(); ++i) {
            mpq_class c = coeff(i);
            if (c == 0) continue;
            bool neg = c < 0;
            mpq_class a = neg ? mpq_class(-c) : c;
            if (first) os << (neg ? "-" : "");
            else os << (neg ? " - " : " + ");
            first = false;
            if (i == 0) os << a.get_str();
            else {
                if (a != 1) os << a.get_str() << "*";
                os << "z" << (i > 1 ? "^" + std::to_string(i) : "");
            }
        }
        if (first) os << "0";
        return os.str();
    }

    /// decimal approximation "re + im*i" for display
    std::string to_decimal(int digits = 30) const {
        using boost::multiprecision::cpp_dec_float_50;
        cpp_dec_float_50 re = 0, im = 0;
        const cpp_dec_float_50 two_pi = 2 * boost::math::constants::pi<cpp_dec_float_50>();
        int N = conductor();
        for (int i = 0; i < length(); ++i) {
            mpq_class c = coeff(i);
            if (c == 0) continue;
            cpp_dec_float_50 v = cpp_dec_float_50(c.get_num().get_str()) / cpp_dec_float_50(c.get_den().get_str());
            cpp_dec_float_50 ang = two_pi * i / N;
            re += v * cos(ang);
            im += v * sin(ang);
        }
        auto fmt = [digits](cpp_dec_float_50 v) {
            if (abs(v) < cpp_dec_float_50("1e-40")) v = 0;
            std::ostringstream os;
            os.precision(digits);
            os << v;
            return os.str();
        };
        std::string s = fmt(re);
        cpp_dec_float_50 aim = abs(im);
        if (aim >= cpp_dec_float_50("1e-40")) s += (im < 0 ? " - " : " + ") + fmt(aim) + "*i";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloNumber& x) { return os << x.to_string(); }

    std::size_t hash() const {
        std::size_t h = std::hash<int>()(conductor());
        for (int i = 0; i < length(); ++i) {
            auto c = coeff(i);
            h = h * 1000003u ^ std::hash<std::string>()(c.get_str());
        }
        return h;
    }

private:
    const CycloField* F_ = nullptr;
    std::vector<i64> n_;
    i64 d_ = 1;
    int bits_ = 0;
    bool big_ = false;
    std::vector<mpz_class> bn_;
    mpz_class bd_;

    static constexpr int kSmallBits = 62;

    static const CycloField* common_field_(const CycloNumber& a, const CycloNumber& b) {
        if (a.F_ == b.F_) return a.F_;
        if (!a.F_) return b.F_;
        if (!b.F_) return a.F_;
        throw std::invalid_argument("CycloNumber: mixed conductors");
    }

    void normalize_small_() {
        u128 g = static_cast<u128>(d_);
        for (auto v : n_) g = detail::gcd_u128(g, detail::abs_u128(v));
        if (g > 1) {
            for (auto& v : n_) v /= static_cast<i64>(g);
            d_ /= static_cast<i64>(g);
        }
        bool z = true;
        for (auto v : n_) if (v) { z = false; break; }
        if (z) d_ = 1;
        u128 m = static_cast<u128>(d_);
        for (auto v : n_) m = std::max(m, detail::abs_u128(v));
        bits_ = detail::bit_length(m);
    }

    // Takes arbitrary numerators/denominator (den != 0), normalises, and picks the representation.
    void assign_big_(std::vector<mpz_class> num, mpz_class den) {
        if (den < 0) {
            den = -den;
            for (auto& z : num) z = -z;
        }
        mpz_class g = den;
        for (auto& z : num) {
            if (g == 1) break;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        }
        bool allzero = true;
        for (auto& z : num) if (z != 0) { allzero = false; break; }
        if (allzero) {
            den = 1;
            g = 1;
        }
        if (g != 1) {
            for (auto& z : num) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
        }
        bool small = mpz_sizeinbase(den.get_mpz_t(), 2) <= kSmallBits;
        for (auto& z : num)
            if (small && mpz_sizeinbase(z.get_mpz_t(), 2) > kSmallBits) small = false;
        if (small) {
            big_ = false;
            bn_.clear();
            bd_ = 0;
            n_.resize(num.size());
            u128 m = 0;
            for (std::size_t i = 0; i < num.size(); ++i) {
                n_[i] = mpz_get_si(num[i].get_mpz_t());
                m = std::max(m, detail::abs_u128(n_[i]));
            }
            d_ = mpz_get_si(den.get_mpz_t());
            m = std::max(m, static_cast<u128>(d_));
            bits_ = detail::bit_length(m);
        } else {
            big_ = true;
            n_.clear();
            d_ = 1;
            bits_ = 1000;
            bn_ = std::move(num);
            bd_ = std::move(den);
        }
    }

    // Accepts i128 numerators known not to overflow; normalises in i128 and stores.
    void assign_i128_(std::vector<i128>& num, i128 den) {
        if (den < 0) {
            den = -den;
            for (auto& v : num) v = -v;
        }
        u128 g = static_cast<u128>(den);
        for (auto v : num) {
            if (g == 1) break;
            g = detail::gcd_u128(g, detail::abs_u128(v));
        }
        bool allzero = true;
        for (auto v : num) if (v) { allzero = false; break; }
        if (allzero) {
            den = 1;
            g = 1;
        }
        if (g > 1) {
            for (auto& v : num) v /= static_cast<i128>(g);
            den /= static_cast<i128>(g);
        }
        u128 m = static_cast<u128>(den);
        for (auto v : num) m = std::max(m, detail::abs_u128(v));
        int b = detail::bit_length(m);
        if (b <= kSmallBits) {
            big_ = false;
            bn_.clear();
            n_.resize(num.size());
            for (std::size_t i = 0; i < num.size(); ++i) n_[i] = static_cast<i64>(num[i]);
            d_ = static_cast<i64>(den);
            bits_ = b;
        } else {
            std::vector<mpz_class> bn(num.size());
            for (std::size_t i = 0; i < num.size(); ++i) bn[i] = detail::to_mpz(num[i]);
            assign_big_(std::move(bn), detail::to_mpz(den));
        }
    }

    std::vector<mpz_class> big_num_() const {
        if (big_) return bn_;
        std::vector<mpz_class> out(n_.size());
        for (std::size_t i = 0; i < n_.size(); ++i) out[i] = detail::to_mpz(n_[i]);
        return out;
    }
    mpz_class big_den_() const { return big_ ? bd_ : detail::to_mpz(d_); }

    static CycloNumber add_(const CycloNumber& a0, const CycloNumber& b0, bool sub) {
        const CycloField* F = common_field_(a0, b0);
        if (a0.F_ != F) return add_(a0.in_field(F), b0, sub);
        if (b0.F_ != F) return add_(a0, b0.in_field(F), sub);
        const CycloNumber& a = a0;
        const CycloNumber& b = b0;
        CycloNumber r;
        r.F_ = F;
        std::size_t len = a.length();
        if (!a.big_ && !b.big_ && a.bits_ <= 60 && b.bits_ <= 60) {
            if (a.d_ == b.d_) {
                if (a.d_ == 1) {
                    r.n_.resize(len);
                    for (std::size_t i = 0; i < len; ++i) r.n_[i] = sub ? a.n_[i] - b.n_[i] : a.n_[i] + b.n_[i];
                    r.d_ = 1;
                    u128 m = 1;
                    for (auto v : r.n_) m = std::max(m, detail::abs_u128(v));
                    r.bits_ = detail::bit_length(m);
                    return r;
                }
                std::vector<i128> num(len);
                for (std::size_t i = 0; i < len; ++i)
                    num[i] = sub ? static_cast<i128>(a.n_[i]) - b.n_[i] : static_cast<i128>(a.n_[i]) + b.n_[i];
                r.assign_i128_(num, a.d_);
                return r;
            }
            std::vector<i128> num(len);
            for (std::size_t i = 0; i < len; ++i) {
                i128 x = static_cast<i128>(a.n_[i]) * b.d_;
                i128 y = static_cast<i128>(b.n_[i]) * a.d_;
                num[i] = sub ? x - y : x + y;
            }
            r.assign_i128_(num, static_cast<i128>(a.d_) * b.d_);
            return r;
        }
        auto an = a.big_num_(), bn = b.big_num_();
        mpz_class ad = a.big_den_(), bd = b.big_den_();
        std::vector<mpz_class> num(len);
        for (std::size_t i = 0; i < len; ++i) num[i] = sub ? mpz_class(an[i] * bd - bn[i] * ad) : mpz_class(an[i] * bd + bn[i] * ad);
        r.assign_big_(std::move(num), ad * bd);
        return r;
    }

    static CycloNumber mul_(const CycloNumber& a0, const CycloNumber& b0) {
        const CycloField* F = common_field_(a0, b0);
        if (a0.F_ != F) return mul_(a0.in_field(F), b0);
        if (b0.F_ != F) return mul_(a0, b0.in_field(F));
        const CycloNumber& a = a0;
        const CycloNumber& b = b0;
        CycloNumber r;
        r.F_ = F;
        int len = a.length();
        if (a.is_zero() || b.is_zero()) return zero(F);
        if (!a.big_ && !b.big_) {
            int lg = 1;
            while ((1 << lg) < 2 * len) ++lg;
            int tb = F ? F->table_bits : 0;
            if (a.bits_ + b.bits_ + 2 * lg + tb + 2 <= 125) {
                std::vector<i128> num(len, 0);
                if (len == 1) {
                    num[0] = static_cast<i128>(a.n_[0]) * b.n_[0];
                } else {
                    std::vector<i128> full(2 * len - 1, 0);
                    for (int i = 0; i < len; ++i) {
                        if (!a.n_[i]) continue;
                        for (int j = 0; j < len; ++j)
                            if (b.n_[j]) full[i + j] += static_cast<i128>(a.n_[i]) * b.n_[j];
                    }
                    for (int k = 0; k < len; ++k) num[k] = full[k];
                    for (int k = len; k < 2 * len - 1; ++k) {
                        if (!full[k]) continue;
                        const auto& row = F->powers[k % F->N];
                        for (int i = 0; i < len; ++i)
                            if (row[i]) num[i] += full[k] * row[i];
                    }
                }
                r.assign_i128_(num, static_cast<i128>(a.d_) * b.d_);
                return r;
            }
        }
        auto an = a.big_num_(), bn = b.big_num_();
        std::vector<mpz_class> full(2 * len - 1, 0);
        for (int i = 0; i < len; ++i) {
            if (an[i] == 0) continue;
            for (int j = 0; j < len; ++j)
                if (bn[j] != 0) full[i + j] += an[i] * bn[j];
        }
        std::vector<mpz_class> num(full.begin(), full.begin() + len);
        for (int k = len; k < 2 * len - 1; ++k) {
            if (full[k] == 0) continue;
            const auto& row = F->powers[k % F->N];
            for (int i = 0; i < len; ++i)
                if (row[i]) num[i] += full[k] * detail::to_mpz(row[i]);
        }
        r.assign_big_(std::move(num), a.big_den_() * b.big_den_());
        return r;
    }
};

/// Field context for level r: conductor lcm(4r, 8), A = zeta_N^{(N/4r) * exponent}.
struct LevelField {
    int r = 0;
    int root_exponent = 1;
    const CycloField* F = nullptr;
    CycloNumber A, Ainv, q, qinv, sqrt2;

    CycloNumber zero() const { return CycloNumber::zero(F); }
    CycloNumber one() const { return CycloNumber::one(F); }
    CycloNumber integer(long long v) const { return CycloNumber(v).in_field(F); }
    CycloNumber rational(long long p, long long d) const { return CycloNumber::rational(p, d, F); }

    /// [n] = sum_{i=0}^{n-1} q^{n-1-2i}, [-n] = -[n]
    CycloNumber quantum_integer(long long n) const {
        if (n < 0) return -quantum_integer(-n);
        CycloNumber s = zero();
        for (long long i = 0; i < n; ++i) s += q.pow(n - 1 - 2 * i);
        return s;
    }
    CycloNumber qint(long long n) const { return quantum_integer(n); }
};

inline LevelField field_for_level(int r, int root_exponent = 1) {
    if (r < 3) throw std::invalid_argument("field_for_level: r must be at least 3");
    int four_r = 4 * r;
    if (std::gcd(((root_exponent % four_r) + four_r) % four_r, four_r) != 1)
        throw std::invalid_argument("field_for_level: root_exponent must be coprime to 4r");
    LevelField L;
    L.r = r;
    L.root_exponent = root_exponent;
    int N = std::lcm(four_r, 8);
    L.F = CycloField::get(N);
    L.A = CycloNumber::zeta_power(L.F, static_cast<long long>(N / four_r) * root_exponent);
    L.Ainv = L.A.inverse();
    L.q = L.A * L.A;
    L.qinv = L.Ainv * L.Ainv;
    L.sqrt2 = CycloNumber::zeta_power(L.F, N / 8) + CycloNumber::zeta_power(L.F, -(N / 8));
    return L;
}

}  // namespace wha

template <>
struct std::hash<wha::CycloNumber> {
    std::size_t operator()(const wha::CycloNumber& x) const { return x.hash(); }
};
