#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "edsff/error.hpp"

namespace edsff {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mulmod64(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 powmod64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

// Descriptor of a finite field F_q, q = p^k. Elements are passed around as
// packed 64-bit words: the residue itself when k = 1, otherwise the base-p
// digit encoding of the coefficient vector (degree < k, little-endian).
// Field objects are immutable; elements keep a raw pointer to their field,
// so the field must outlive them (hold the shared_ptr from the factory).
class Field {
public:
    u64 p;                       // characteristic, prime, < 2^32
    unsigned k;                  // extension degree >= 1
    u64 q;                       // p^k, < 2^63
    std::vector<u64> modulus;    // monic irreducible of degree k over F_p (k > 1 only)

    static std::shared_ptr<const Field> prime(u64 p) {
        return std::shared_ptr<const Field>(new Field(p, {}));
    }

    // modulus: coefficients c0..ck over F_p, monic, irreducible (verified).
    static std::shared_ptr<const Field> extension(u64 p, std::vector<u64> modulus) {
        return std::shared_ptr<const Field>(new Field(p, std::move(modulus)));
    }

    bool is_prime_field() const { return k == 1; }

    bool same_as(const Field& o) const {
        return this == &o || (p == o.p && k == o.k && modulus == o.modulus);
    }

    // ---- scalar arithmetic on packed values -------------------------------

    u64 reduce_int(long long v) const {
        long long m = (long long)p;
        long long r = v % m;
        if (r < 0) r += m;
        return (u64)r;
    }

    u64 add(u64 a, u64 b) const {
        if (k == 1) {
            u64 s = a + b;
            return s >= p ? s - p : s;
        }
        return digitwise(a, b, /*sub=*/false);
    }

    u64 sub(u64 a, u64 b) const {
        if (k == 1) return a >= b ? a - b : a + p - b;
        return digitwise(a, b, /*sub=*/true);
    }

    u64 neg(u64 a) const { return sub(0, a); }

    u64 mul(u64 a, u64 b) const {
        if (k == 1) return (a * b) % p;  // p < 2^32, product fits
        return ext_mul(a, b);
    }

    u64 pow(u64 a, u64 e) const {
        u64 r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    u64 inv(u64 a) const {
        require(a != 0, "division by zero in F_q");
        return pow(a, q - 2);
    }

    u64 one() const { return 1; }

    // a ^ (1/p); always exists and is unique (Frobenius is bijective).
    u64 pth_root(u64 a) const {
        if (k == 1) return a;
        u64 e = 1;
        for (unsigned i = 0; i + 1 < k; ++i) e *= p;  // p^(k-1) <= q/p < 2^63
        return pow(a, e);
    }

    bool is_square(u64 a) const {
        if (a == 0) return true;
        if (p == 2) return true;  // Frobenius is surjective on squares
        return pow(a, (q - 1) / 2) == one();
    }

    // Deterministic square root: the smaller of the two packed roots, when
    // one exists (Tonelli-Shanks on the cyclic group of order q-1).
    bool sqrt(u64 a, u64& root) const {
        if (a == 0) {
            root = 0;
            return true;
        }
        if (p == 2) {
            root = pow(a, q / 2);  // x -> x^2 is bijective, q/2 = 2^(k-1)
            return true;
        }
        if (!is_square(a)) return false;
        u64 m = q - 1;
        int e = 0;
        while ((m & 1) == 0) m >>= 1, ++e;
        u64 g = 0;  // non-residue
        for (u64 c = 2; c < q; ++c) {
            if (!is_square(c)) {
                g = c;
                break;
            }
        }
        u64 x = pow(a, (m + 1) / 2);
        u64 b = pow(a, m);
        u64 z = pow(g, m);
        int r = e;
        while (b != one()) {
            int s = 0;
            u64 t = b;
            while (t != one()) {
                t = mul(t, t);
                ++s;
            }
            u64 w = z;
            for (int i = 0; i < r - s - 1; ++i) w = mul(w, w);
            z = mul(w, w);
            b = mul(b, z);
            x = mul(x, w);
            r = s;
        }
        u64 other = neg(x);
        root = x < other ? x : other;
        return true;
    }

    std::string describe() const {
        if (k == 1) return "F_" + std::to_string(p);
        return "F_" + std::to_string(p) + "^" + std::to_string(k);
    }

private:
    Field(u64 p_, std::vector<u64> mod) : p(p_), k(1), modulus(std::move(mod)) {
        require(p >= 2, "field characteristic must be >= 2");
        require(p < (1ull << 32), "characteristic must be < 2^32");
        require(detail::is_prime_u64(p), "field characteristic must be prime");
        if (!modulus.empty()) {
            require(modulus.size() >= 3, "extension modulus must have degree >= 2");
            k = (unsigned)modulus.size() - 1;
            for (u64& c : modulus) {
                require(c < p, "modulus coefficients must be reduced mod p");
            }
            require(modulus.back() == 1, "extension modulus must be monic");
            require(modulus_irreducible(), "extension modulus must be irreducible over F_p");
        }
        q = 1;
        for (unsigned i = 0; i < k; ++i) {
            require(q < (1ull << 62) / p, "field size p^k must be < 2^63");
            q *= p;
        }
    }

    void decode(u64 v, u64* d) const {
        for (unsigned i = 0; i < k; ++i) {
            d[i] = v % p;
            v /= p;
        }
    }

    u64 encode(const u64* d) const {
        u64 v = 0;
        for (unsigned i = k; i-- > 0;) v = v * p + d[i];
        return v;
    }

    u64 digitwise(u64 a, u64 b, bool sub_) const {
        u64 v = 0, scale = 1;
        for (unsigned i = 0; i < k; ++i) {
            u64 da = a % p, db = b % p;
            a /= p;
            b /= p;
            u64 dc = sub_ ? (da >= db ? da - db : da + p - db)
                          : (da + db >= p ? da + db - p : da + db);
            v += dc * scale;
            scale *= p;
        }
        return v;
    }

    u64 ext_mul(u64 a, u64 b) const {
        u64 da[64], db[64];
        u128 acc[127] = {};
        decode(a, da);
        decode(b, db);
        for (unsigned i = 0; i < k; ++i) {
            if (!da[i]) continue;
            for (unsigned j = 0; j < k; ++j) acc[i + j] += (u128)da[i] * db[j];
        }
        u64 c[127];
        for (unsigned i = 0; i < 2 * k - 1; ++i) c[i] = (u64)(acc[i] % p);
        // reduce by the monic modulus
        for (unsigned i = 2 * k - 2; i >= k; --i) {
            u64 t = c[i];
            if (!t) continue;
            c[i] = 0;
            for (unsigned j = 0; j < k; ++j) {
                u64 sub_amt = (t * modulus[j]) % p;
                unsigned idx = i - k + j;
                c[idx] = c[idx] >= sub_amt ? c[idx] - sub_amt : c[idx] + p - sub_amt;
            }
        }
        return encode(c);
    }

    // Rabin's test on the small modulus: f irreducible over F_p iff
    // x^(p^k) = x (mod f) and gcd(x^(p^(k/l)) - x, f) = 1 for primes l | k.
    bool modulus_irreducible() const {
        auto xq = [&](unsigned times) {
            // x^(p^times) mod f via repeated p-th powering of x
            std::vector<u64> r = {0, 1};
            for (unsigned i = 0; i < times; ++i) r = small_powmod(r, p);
            return r;
        };
        std::vector<u64> x = {0, 1};
        std::vector<u64> t = xq(k);
        if (small_sub(t, x) != std::vector<u64>{}) return false;
        for (unsigned l = 2; l <= k; ++l) {
            if (k % l != 0 || !detail::is_prime_u64(l)) continue;
            std::vector<u64> d = small_sub(xq(k / l), x);
            if (small_gcd_deg(d) != 0) return false;
        }
        return true;
    }

    // Minimal F_p[x] helpers for the irreducibility check (degree < 2k).
    std::vector<u64> small_trim(std::vector<u64> v) const {
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    }
    std::vector<u64> small_sub(std::vector<u64> a, const std::vector<u64>& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
        return small_trim(std::move(a));
    }
    std::vector<u64> small_mulmod(const std::vector<u64>& a, const std::vector<u64>& b) const {
        std::vector<u128> acc(a.size() + b.size(), 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < b.size(); ++j) acc[i + j] += (u128)a[i] * b[j];
        }
        std::vector<u64> c(acc.size());
        for (size_t i = 0; i < acc.size(); ++i) c[i] = (u64)(acc[i] % p);
        c = small_trim(std::move(c));
        // reduce mod modulus (monic degree k)
        while (c.size() > k) {
            u64 t = c.back();
            size_t off = c.size() - 1 - k;
            if (t) {
                for (unsigned j = 0; j <= k; ++j) {
                    c[off + j] = (c[off + j] + p - (t * modulus[j]) % p) % p;
                }
            }
            c = small_trim(std::move(c));
            if (c.size() <= k) break;
        }
        return small_trim(std::move(c));
    }
    std::vector<u64> small_powmod(std::vector<u64> base, u64 e) const {
        std::vector<u64> r = {1};
        while (e) {
            if (e & 1) r = small_mulmod(r, base);
            base = small_mulmod(base, base);
            e >>= 1;
        }
        return r;
    }
    long small_gcd_deg(std::vector<u64> a) const {
        std::vector<u64> b(modulus);
        b = small_trim(std::move(b));
        a = small_trim(std::move(a));
        if (a.empty()) return (long)b.size() - 1;
        while (!b.empty()) {
            // a mod b
            u64 binv = detail::powmod64(b.back(), p - 2, p);
            while (a.size() >= b.size()) {
                u64 c = (a.back() * binv) % p;
                size_t off = a.size() - b.size();
                for (size_t j = 0; j < b.size(); ++j) {
                    a[off + j] = (a[off + j] + p - (c * b[j]) % p) % p;
                }
                a = small_trim(std::move(a));
                if (a.empty()) break;
            }
            std::swap(a, b);
        }
        return (long)a.size() - 1;
    }
};

using FieldPtr = std::shared_ptr<const Field>;

// Element of F_q with value semantics. Cheap to copy (16 bytes); arithmetic
// requires both operands to come from compatible fields.
class Fq {
public:
    Fq() : f_(nullptr), v_(0) {}
    Fq(const Field& f, u64 packed) : f_(&f), v_(packed) { require(packed < f.q, "Fq value out of range"); }
    static Fq from_int(const Field& f, long long n) { return Fq(f, f.reduce_int(n)); }

    const Field& field() const {
        require(f_ != nullptr, "use of uninitialized Fq");
        return *f_;
    }
    u64 packed() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    friend Fq operator+(const Fq& a, const Fq& b) { return Fq(a.match(b), a.f_->add(a.v_, b.v_)); }
    friend Fq operator-(const Fq& a, const Fq& b) { return Fq(a.match(b), a.f_->sub(a.v_, b.v_)); }
    friend Fq operator*(const Fq& a, const Fq& b) { return Fq(a.match(b), a.f_->mul(a.v_, b.v_)); }
    friend Fq operator/(const Fq& a, const Fq& b) {
        return Fq(a.match(b), a.f_->mul(a.v_, b.f_->inv(b.v_)));
    }
    Fq operator-() const { return Fq(field(), f_->neg(v_)); }
    Fq inverse() const { return Fq(field(), f_->inv(v_)); }
    Fq pow(u64 e) const { return Fq(field(), f_->pow(v_, e)); }

    friend bool operator==(const Fq& a, const Fq& b) {
        if (a.f_ == nullptr || b.f_ == nullptr) return a.f_ == b.f_;
        return a.f_->same_as(*b.f_) && a.v_ == b.v_;
    }
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

private:
    const Field& match(const Fq& o) const {
        require(f_ != nullptr && o.f_ != nullptr, "use of uninitialized Fq");
        require(f_->same_as(*o.f_), "elements from different fields");
        return *f_;
    }
    const Field* f_;
    u64 v_;
};

// Square root in F_q with the canonical (smaller packed) choice, or nullopt.
inline bool fq_sqrt(const Fq& a, Fq& out) {
    u64 r;
    if (!a.field().sqrt(a.packed(), r)) return false;
    out = Fq(a.field(), r);
    return true;
}

inline Fq fq_pth_root(const Fq& a) { return Fq(a.field(), a.field().pth_root(a.packed())); }

}  // namespace edsff
