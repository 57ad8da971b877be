#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "edsff/error.hpp"
#include "edsff/fq.hpp"

namespace edsff {

namespace detail {

// ---- fast kernels for prime fields (packed residues < p) ------------------
//
// Inner loops accumulate unreduced sums in 64-bit words and reduce lazily:
// with coefficients < p and p < 2^32 every product fits, and a whole batch
// of rows can be added before any modular reduction is needed. The batch
// budget degrades gracefully to one row for very large p.

inline u64 lazy_budget(u64 p) {
    u64 pp = p * p;  // p < 2^32
    u64 b = (std::numeric_limits<u64>::max() - pp) / pp;
    return b ? b : 1;
}

// Barrett-style reduction x mod p for x < 2^64, p < 2^32: one mulhi and at
// most two corrections instead of a hardware divide.
struct Reducer {
    u64 p, M;
    explicit Reducer(u64 p_) : p(p_), M((u64)(((u128)1 << 64) / p_)) {}
    u64 operator()(u64 x) const {
        u64 q = (u64)(((u128)x * M) >> 64);
        u64 r = x - q * p;
        if (r >= p) r -= p;
        if (r >= p) r -= p;
        return r;
    }
};

inline void trim_u64(std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline std::vector<u64> school_mul_p(u64 p, const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> out(a.size() + b.size() - 1, 0);
    Reducer red(p);
    u64 budget = lazy_budget(p);
    u64 rows = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        u64 ai = a[i];
        if (!ai) continue;
        u64* o = out.data() + i;
        const u64* bp = b.data();
        for (size_t j = 0; j < b.size(); ++j) o[j] += ai * bp[j];
        if (++rows == budget) {
            for (u64& x : out) x = red(x);
            rows = 0;
        }
    }
    for (u64& x : out) x = red(x);
    trim_u64(out);
    return out;
}

inline std::vector<u64> add_p(u64 p, const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        u64 s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        out[i] = s >= p ? s - p : s;
    }
    trim_u64(out);
    return out;
}

inline std::vector<u64> sub_p(u64 p, const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0;
        u64 y = i < b.size() ? b[i] : 0;
        out[i] = x >= y ? x - y : x + p - y;
    }
    trim_u64(out);
    return out;
}

inline size_t karatsuba_threshold_ref(size_t set_to = 0) {
    static size_t threshold = 32;
    if (set_to) threshold = set_to;
    return threshold;
}

inline std::vector<u64> kara_mul_p(u64 p, const std::vector<u64>& a, const std::vector<u64>& b) {
    size_t n = std::max(a.size(), b.size());
    if (std::min(a.size(), b.size()) < karatsuba_threshold_ref()) return school_mul_p(p, a, b);
    size_t m = (n + 1) / 2;
    auto lo = [&](const std::vector<u64>& v) {
        return std::vector<u64>(v.begin(), v.begin() + std::min(m, v.size()));
    };
    auto hi = [&](const std::vector<u64>& v) {
        return v.size() > m ? std::vector<u64>(v.begin() + m, v.end()) : std::vector<u64>{};
    };
    std::vector<u64> a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
    trim_u64(a0);
    trim_u64(b0);
    std::vector<u64> z0 = kara_mul_p(p, a0, b0);
    std::vector<u64> z2 = kara_mul_p(p, a1, b1);
    std::vector<u64> z1 = kara_mul_p(p, add_p(p, a0, a1), add_p(p, b0, b1));
    z1 = sub_p(p, sub_p(p, z1, z0), z2);
    std::vector<u64> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < z0.size(); ++i) out[i] = z0[i];
    for (size_t i = 0; i < z1.size(); ++i) {
        u64 s = out[m + i] + z1[i];
        out[m + i] = s >= p ? s - p : s;
    }
    for (size_t i = 0; i < z2.size(); ++i) {
        u64 s = out[2 * m + i] + z2[i];
        out[2 * m + i] = s >= p ? s - p : s;
    }
    trim_u64(out);
    return out;
}

// In-place lazy division: u <- u mod v; the quotient (reduced) lands in *q
// when requested. v must be reduced and nonzero. neg_v, when given, must be
// the precomputed vector of (p - v[j]) mod p.
inline void divrem_p(u64 p, std::vector<u64>& u, const std::vector<u64>& v,
                     std::vector<u64>* q, const u64* neg_v = nullptr) {
    size_t dv = v.size() - 1;
    if (u.size() <= dv) {
        for (u64& x : u) x %= p;
        trim_u64(u);
        if (q) q->clear();
        return;
    }
    Reducer red(p);
    std::vector<u64> neg_store;
    if (!neg_v && dv > 0) {
        neg_store.resize(dv);
        for (size_t j = 0; j < dv; ++j) neg_store[j] = v[j] ? p - v[j] : 0;
        neg_v = neg_store.data();
    }
    if (q) q->assign(u.size() - dv, 0);
    u64 lc_inv = powmod64(v.back(), p - 2, p);
    u64 budget = lazy_budget(p);
    u64 rows = 0;
    for (size_t i = u.size(); i-- > dv;) {
        u64 top = red(u[i]);
        u[i] = 0;
        if (!top) continue;
        u64 qc = red(top * lc_inv);
        if (q) (*q)[i - dv] = qc;
        u64* dst = u.data() + (i - dv);
        for (size_t j = 0; j < dv; ++j) dst[j] += qc * neg_v[j];
        if (++rows == budget) {
            for (size_t j = 0; j < i; ++j) u[j] = red(u[j]);
            rows = 0;
        }
    }
    u.resize(dv);
    for (u64& x : u) x = red(x);
    trim_u64(u);
}

// Euclid cascade in two flat buffers: the divisor stays reduced with a
// cached negation, the dividend stays lazy until coefficients are inspected.
inline std::vector<u64> gcd_p(u64 p, std::vector<u64> a, std::vector<u64> b) {
    Reducer red(p);
    trim_u64(a);
    trim_u64(b);
    if (a.size() < b.size()) std::swap(a, b);
    if (b.empty()) {
        if (!a.empty() && a.back() != 1) {
            u64 s = powmod64(a.back(), p - 2, p);
            for (u64& x : a) x = red(x * s);
        }
        return a;
    }
    std::vector<u64> neg;
    u64 lc_inv = 0;
    auto set_divisor = [&]() {
        neg.resize(b.size() - 1);
        for (size_t j = 0; j + 1 < b.size(); ++j) neg[j] = b[j] ? p - b[j] : 0;
        lc_inv = powmod64(b.back(), p - 2, p);
    };
    set_divisor();
    u64 budget = lazy_budget(p);
    u64 rows = 0;
    for (;;) {
        size_t dv = b.size() - 1;
        for (size_t i = a.size(); i-- > dv;) {
            u64 top = red(a[i]);
            a[i] = 0;
            if (!top) continue;
            u64 qc = red(top * lc_inv);
            u64* dst = a.data() + (i - dv);
            const u64* ng = neg.data();
            for (size_t j = 0; j < dv; ++j) dst[j] += qc * ng[j];
            if (++rows >= budget) {
                for (size_t j = 0; j < i; ++j) a[j] = red(a[j]);
                rows = 0;
            }
        }
        a.resize(dv);
        for (u64& x : a) x = red(x);
        trim_u64(a);
        if (a.empty()) break;
        std::swap(a, b);
        set_divisor();
        rows = 0;
    }
    if (b.back() != 1) {
        u64 s = powmod64(b.back(), p - 2, p);
        for (u64& x : b) x = red(x * s);
    }
    return b;
}

}  // namespace detail

// Univariate polynomial over F_q with exact arithmetic. Coefficients are
// packed field elements in ascending order with no trailing zeros; the zero
// polynomial has an empty vector and degree() == -1.
class Poly {
public:
    Poly() : f_(nullptr) {}
    explicit Poly(const Field& f) : f_(&f) {}
    Poly(const Field& f, std::vector<u64> coeffs) : f_(&f), c_(std::move(coeffs)) {
        for (u64& x : c_) require(x < f.q, "coefficient out of range");
        detail::trim_u64(c_);
    }

    static Poly from_ints(const Field& f, std::initializer_list<long long> asc) {
        std::vector<u64> c;
        c.reserve(asc.size());
        for (long long v : asc) c.push_back(f.reduce_int(v));
        return Poly(f, std::move(c));
    }
    static Poly constant(const Fq& a) { return Poly(a.field(), {a.packed()}); }
    static Poly variable(const Field& f) { return Poly(f, {0, 1}); }

    const Field& field() const {
        require(f_ != nullptr, "use of uninitialized Poly");
        return *f_;
    }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    // Degree of the zero polynomial is reported as -1 (stands in for -inf).
    long degree() const { return (long)c_.size() - 1; }
    const std::vector<u64>& packed() const { return c_; }

    Fq coeff(size_t i) const {
        return Fq(field(), i < c_.size() ? c_[i] : 0);
    }
    Fq leading() const {
        require(!c_.empty(), "leading coefficient of zero polynomial");
        return Fq(field(), c_.back());
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.f_ == nullptr || b.f_ == nullptr) return a.f_ == b.f_ && a.c_ == b.c_;
        return a.f_->same_as(*b.f_) && a.c_ == b.c_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Canonical ordering: by degree, then coefficients from the top.
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (size_t i = a.c_.size(); i-- > 0;) {
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        }
        return false;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        const Field& f = a.match(b);
        if (f.is_prime_field()) return Poly(f, detail::add_p(f.p, a.c_, b.c_), no_check{});
        return zipped(f, a, b, false);
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        const Field& f = a.match(b);
        if (f.is_prime_field()) return Poly(f, detail::sub_p(f.p, a.c_, b.c_), no_check{});
        return zipped(f, a, b, true);
    }
    Poly operator-() const {
        Poly r(*this);
        for (u64& x : r.c_) x = f_->neg(x);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        const Field& f = a.match(b);
        if (a.is_zero() || b.is_zero()) return Poly(f);
        if (f.is_prime_field()) return Poly(f, detail::kara_mul_p(f.p, a.c_, b.c_), no_check{});
        return Poly(f, generic_mul(f, a.c_, b.c_), no_check{});
    }

    friend Poly operator*(const Fq& s, const Poly& a) {
        const Field& f = a.field();
        require(f.same_as(s.field()), "elements from different fields");
        if (s.is_zero()) return Poly(f);
        Poly r(a);
        for (u64& x : r.c_) x = f.mul(x, s.packed());
        return r;
    }
    friend Poly operator*(const Poly& a, const Fq& s) { return s * a; }

    // Quotient and remainder with deg r < deg g; g must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& g) {
        const Field& f = a.match(g);
        require(!g.is_zero(), "division by zero polynomial");
        if (f.is_prime_field()) {
            std::vector<u64> u = a.c_, q;
            detail::divrem_p(f.p, u, g.c_, &q);
            detail::trim_u64(q);
            return {Poly(f, std::move(q), no_check{}), Poly(f, std::move(u), no_check{})};
        }
        return generic_divmod(f, a, g);
    }

    friend Poly operator/(const Poly& a, const Poly& g) { return divmod(a, g).first; }
    friend Poly operator%(const Poly& a, const Poly& g) { return divmod(a, g).second; }

    // Division known to be exact; throws internal_error on a nonzero remainder.
    friend Poly exact_div(const Poly& a, const Poly& g) {
        auto [q, r] = divmod(a, g);
        ensure(r.is_zero(), "exact_div: division not exact");
        return q;
    }

    friend bool divides(const Poly& g, const Poly& a) {
        if (g.is_zero()) return a.is_zero();
        return (a % g).is_zero();
    }

    // Monic gcd; gcd(0, 0) = 0.
    friend Poly gcd(const Poly& a, const Poly& b) {
        const Field& f = a.match(b);
        if (f.is_prime_field()) return Poly(f, detail::gcd_p(f.p, a.c_, b.c_), no_check{});
        Poly x = a, y = b;
        while (!y.is_zero()) {
            x = x % y;
            std::swap(x, y);
        }
        return x.is_zero() ? x : x.monic();
    }

    Poly monic() const {
        require(!is_zero(), "monic of zero polynomial");
        if (c_.back() == 1) return *this;
        return leading().inverse() * *this;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(field());
        std::vector<u64> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) {
            d[i - 1] = f_->mul(c_[i], f_->reduce_int((long long)(i % f_->p)));
        }
        detail::trim_u64(d);
        return Poly(*f_, std::move(d), no_check{});
    }

    Fq eval(const Fq& x) const {
        const Field& f = field();
        require(f.same_as(x.field()), "elements from different fields");
        u64 acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = f.add(f.mul(acc, x.packed()), c_[i]);
        return Fq(f, acc);
    }

    Poly pow(u64 e) const {
        Poly r = Poly(field(), {1});
        Poly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Multiply by t^j.
    Poly shifted(long j) const {
        if (is_zero() || j == 0) return *this;
        std::vector<u64> c(c_.size() + (size_t)j, 0);
        std::copy(c_.begin(), c_.end(), c.begin() + j);
        return Poly(*f_, std::move(c), no_check{});
    }

    // Truncate mod t^n.
    Poly truncated(size_t n) const {
        if (c_.size() <= n) return *this;
        std::vector<u64> c(c_.begin(), c_.begin() + n);
        detail::trim_u64(c);
        return Poly(*f_, std::move(c), no_check{});
    }

    // Coefficients reversed as a degree-n polynomial: t^n * f(1/t).
    Poly reversed(size_t n) const {
        require((long)n >= degree(), "reversed: degree exceeds window");
        std::vector<u64> c(n + 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) c[n - i] = c_[i];
        detail::trim_u64(c);
        return Poly(*f_, std::move(c), no_check{});
    }

    // Number of trailing zero coefficients (ord_t); -1 for the zero poly.
    long trailing_zeros() const {
        if (is_zero()) return -1;
        long v = 0;
        while (c_[(size_t)v] == 0) ++v;
        return v;
    }

private:
    struct no_check {};
    Poly(const Field& f, std::vector<u64> coeffs, no_check) : f_(&f), c_(std::move(coeffs)) {}

    const Field& match(const Poly& o) const {
        require(f_ != nullptr && o.f_ != nullptr, "use of uninitialized Poly");
        require(f_->same_as(*o.f_), "polynomials over different fields");
        return *f_;
    }

    static Poly zipped(const Field& f, const Poly& a, const Poly& b, bool sub_) {
        std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < c.size(); ++i) {
            u64 x = i < a.c_.size() ? a.c_[i] : 0;
            u64 y = i < b.c_.size() ? b.c_[i] : 0;
            c[i] = sub_ ? f.sub(x, y) : f.add(x, y);
        }
        detail::trim_u64(c);
        return Poly(f, std::move(c), no_check{});
    }

    static std::vector<u64> generic_mul(const Field& f, const std::vector<u64>& a,
                                        const std::vector<u64>& b) {
        if (a.empty() || b.empty()) return {};
        size_t th = detail::karatsuba_threshold_ref();
        if (std::min(a.size(), b.size()) < th) {
            std::vector<u64> out(a.size() + b.size() - 1, 0);
            for (size_t i = 0; i < a.size(); ++i) {
                if (!a[i]) continue;
                for (size_t j = 0; j < b.size(); ++j) {
                    out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
                }
            }
            detail::trim_u64(out);
            return out;
        }
        size_t n = std::max(a.size(), b.size());
        size_t m = (n + 1) / 2;
        auto cut = [&](const std::vector<u64>& v, bool high) {
            std::vector<u64> r;
            if (high) {
                if (v.size() > m) r.assign(v.begin() + m, v.end());
            } else {
                r.assign(v.begin(), v.begin() + std::min(m, v.size()));
                detail::trim_u64(r);
            }
            return r;
        };
        auto vadd = [&](const std::vector<u64>& x, const std::vector<u64>& y) {
            std::vector<u64> r(std::max(x.size(), y.size()), 0);
            for (size_t i = 0; i < r.size(); ++i) {
                r[i] = f.add(i < x.size() ? x[i] : 0, i < y.size() ? y[i] : 0);
            }
            detail::trim_u64(r);
            return r;
        };
        auto vsub = [&](std::vector<u64> x, const std::vector<u64>& y) {
            if (x.size() < y.size()) x.resize(y.size(), 0);
            for (size_t i = 0; i < y.size(); ++i) x[i] = f.sub(x[i], y[i]);
            detail::trim_u64(x);
            return x;
        };
        std::vector<u64> a0 = cut(a, false), a1 = cut(a, true);
        std::vector<u64> b0 = cut(b, false), b1 = cut(b, true);
        std::vector<u64> z0 = generic_mul(f, a0, b0);
        std::vector<u64> z2 = generic_mul(f, a1, b1);
        // cancel before writing: the raw middle product overhangs the buffer
        std::vector<u64> z1 = vsub(vsub(generic_mul(f, vadd(a0, a1), vadd(b0, b1)), z0), z2);
        std::vector<u64> out(a.size() + b.size() - 1, 0);
        auto axpy = [&](const std::vector<u64>& z, size_t off) {
            for (size_t i = 0; i < z.size(); ++i) out[off + i] = f.add(out[off + i], z[i]);
        };
        axpy(z0, 0);
        axpy(z1, m);
        axpy(z2, 2 * m);
        detail::trim_u64(out);
        return out;
    }

    static std::pair<Poly, Poly> generic_divmod(const Field& f, const Poly& a, const Poly& g) {
        std::vector<u64> u = a.c_;
        size_t dv = g.c_.size() - 1;
        if (u.size() <= dv) return {Poly(f), a};
        std::vector<u64> q(u.size() - dv, 0);
        u64 lc_inv = f.inv(g.c_.back());
        for (size_t i = u.size(); i-- > dv;) {
            u64 qc = f.mul(u[i], lc_inv);
            if (!qc) continue;
            q[i - dv] = qc;
            for (size_t j = 0; j <= dv; ++j) {
                u[i - dv + j] = f.sub(u[i - dv + j], f.mul(qc, g.c_[j]));
            }
        }
        u.resize(dv);
        detail::trim_u64(u);
        detail::trim_u64(q);
        return {Poly(f, std::move(q), no_check{}), Poly(f, std::move(u), no_check{})};
    }

    const Field* f_;
    std::vector<u64> c_;
};

// Schoolbook multiplication is used below this degree, Karatsuba above.
// Returns the current threshold; pass a nonzero value to change it (do so
// before any concurrent use).
inline size_t karatsuba_threshold(size_t set_to = 0) {
    return detail::karatsuba_threshold_ref(set_to);
}

// Power-series inverse of f mod t^n (f(0) != 0), by Newton iteration.
inline Poly series_inverse(const Poly& f, size_t n) {
    require(!f.is_zero() && !f.coeff(0).is_zero(), "series_inverse: constant term is zero");
    const Field& F = f.field();
    Poly g = Poly::constant(f.coeff(0).inverse());
    Poly two = Poly::from_ints(F, {2});
    size_t m = 1;
    while (m < n) {
        m = std::min(2 * m, n);
        g = (g * (two - f.truncated(m) * g)).truncated(m);
    }
    return g.truncated(n);
}

// Power-series square root of f mod t^n with f(0) = 1, char != 2.
inline Poly series_sqrt_one(const Poly& f, size_t n) {
    const Field& F = f.field();
    require(F.p != 2, "series sqrt requires odd characteristic");
    ensure(f.coeff(0).is_one(), "series_sqrt_one: constant term must be 1");
    Fq half = Fq::from_int(F, 2).inverse();
    Poly g = Poly::from_ints(F, {1});
    size_t m = 1;
    while (m < n) {
        m = std::min(2 * m, n);
        Poly ginv = series_inverse(g, m);
        g = (half * (g + (f.truncated(m) * ginv).truncated(m))).truncated(m);
    }
    return g.truncated(n);
}

// Writes f = unit * root^2 with root monic, when possible.
struct SqrtParts {
    Poly root;
    Fq unit;
};

inline std::optional<SqrtParts> exact_sqrt(const Poly& f) {
    require(!f.is_zero(), "exact_sqrt of zero polynomial");
    const Field& F = f.field();
    Fq unit = f.leading();
    if ((f.degree() & 1) != 0) return std::nullopt;
    Poly m = f.monic();
    if (F.p == 2) {
        // squaring is the Frobenius: even exponents, coefficient-wise roots
        std::vector<u64> c((size_t)m.degree() / 2 + 1, 0);
        for (long i = 0; i <= m.degree(); ++i) {
            u64 v = m.coeff((size_t)i).packed();
            if (i & 1) {
                if (v) return std::nullopt;
            } else {
                u64 r;
                F.sqrt(v, r);
                c[(size_t)i / 2] = r;
            }
        }
        return SqrtParts{Poly(F, std::move(c)), unit};
    }
    long v = m.trailing_zeros();
    if (v & 1) return std::nullopt;
    std::vector<u64> shifted(m.packed().begin() + v, m.packed().end());
    Poly core(F, std::move(shifted));
    size_t half = (size_t)core.degree() / 2;
    Poly rev = core.reversed((size_t)core.degree());
    Poly s = series_sqrt_one(rev, half + 1);
    Poly root = s.reversed(half);
    if (root * root != core) return std::nullopt;
    Poly full = root.shifted(v / 2);
    return SqrtParts{full, unit};
}

// Resultant via the Euclidean chain.
inline Fq resultant(const Poly& a0, const Poly& b0) {
    const Field& F = a0.field();
    require(F.same_as(b0.field()), "polynomials over different fields");
    Fq zero = Fq(F, 0), acc = Fq(F, F.one());
    if (a0.is_zero() || b0.is_zero()) return zero;
    Poly a = a0, b = b0;
    bool negate = false;
    for (;;) {
        if (b.degree() == 0) {
            acc = acc * b.leading().pow((u64)a.degree());
            break;
        }
        if (a.degree() < b.degree()) {
            if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
            std::swap(a, b);
            continue;
        }
        // res(a, b) = (-1)^(da*db) lc(b)^(da - dr) res(b, r),  r = a mod b
        Poly r = a % b;
        if (r.is_zero()) return zero;
        if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
        acc = acc * b.leading().pow((u64)(a.degree() - r.degree()));
        a = b;
        b = r;
    }
    return negate ? zero - acc : acc;
}

}  // namespace edsff
