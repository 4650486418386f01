#include "quadcong/modarith.hpp"

#include <array>
#include <ostream>
#include <string>

namespace quadcong {

namespace {

u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

// n odd, n > 37.
bool miller_rabin(u64 n) {
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // First 12 primes are a deterministic witness set below 3.3e24.
    static constexpr std::array<u64, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 a : witnesses) {
        u64 x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
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

} // namespace

bool is_odd_prime(i64 n) noexcept {
    if (n < 3 || (n & 1) == 0) return false;
    const auto un = static_cast<u64>(n);
    for (u64 q : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (un == q) return true;
        if (un % q == 0) return false;
    }
    return miller_rabin(un);
}

PrimePowerModulus::PrimePowerModulus(i64 p, i64 k) {
    if (!is_odd_prime(p)) throw Error(Errc::NotOddPrime, std::to_string(p) + " is not an odd prime");
    if (k < 1) throw Error(Errc::Precondition, "exponent k must be >= 1, got " + std::to_string(k));
    const auto up = static_cast<u64>(p);
    u64 n = 1;
    for (i64 i = 0; i < k; ++i) {
        if (n > (kMaxModulus - 1) / up)
            throw Error(Errc::Overflow,
                        std::to_string(p) + "^" + std::to_string(k) + " does not fit below 2^62");
        n *= up;
    }
    p_ = up;
    k_ = static_cast<unsigned>(k);
    n_ = n;
}

u64 PrimePowerModulus::power_of_p(unsigned e) const {
    if (e > k_) throw Error(Errc::Precondition, "p^e requested beyond the modulus exponent");
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) r *= p_;
    return r;
}

u64 PrimePowerModulus::pow(u64 a, u64 e) const noexcept { return powmod64(a, e, n_); }

u64 PrimePowerModulus::inv(u64 a) const {
    if (!is_unit(a)) throw Error(Errc::NotUnit, std::to_string(a) + " is divisible by " + std::to_string(p_));
    // Extended Euclid; all quantities stay below N < 2^62 in magnitude.
    i64 r0 = static_cast<i64>(n_), r1 = static_cast<i64>(a);
    i64 t0 = 0, t1 = 1;
    while (r1 != 0) {
        const i64 q = r0 / r1;
        const i64 r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        const i64 t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    return reduce(t0);
}

Residue PrimePowerModulus::operator()(i64 x) const { return {reduce(x), *this}; }
Residue PrimePowerModulus::zero() const { return {0, *this}; }
Residue PrimePowerModulus::one() const { return {1, *this}; }

PrimePowerModulus make_modulus(i64 p, i64 k) { return {p, k}; }

Residue::Residue(u64 value, const PrimePowerModulus& modulus)
    : value_(value % modulus.n()), mod_(modulus) {}

namespace {
void require_same(const Residue& x, const Residue& y) {
    if (!(x.modulus() == y.modulus()))
        throw Error(Errc::ModulusMismatch, "residues mod " + std::to_string(x.modulus().n()) + " and " +
                                               std::to_string(y.modulus().n()));
}
} // namespace

Residue operator+(const Residue& x, const Residue& y) {
    require_same(x, y);
    return {x.mod_.add(x.value_, y.value_), x.mod_};
}

Residue operator-(const Residue& x, const Residue& y) {
    require_same(x, y);
    return {x.mod_.sub(x.value_, y.value_), x.mod_};
}

Residue operator*(const Residue& x, const Residue& y) {
    require_same(x, y);
    return {x.mod_.mul(x.value_, y.value_), x.mod_};
}

std::ostream& operator<<(std::ostream& os, const Residue& r) {
    return os << r.value() << " (mod " << r.modulus().n() << ")";
}

Residue mod_pow(const Residue& a, u64 e) { return {a.modulus().pow(a.value(), e), a.modulus()}; }

Residue mod_inv(const Residue& a) { return {a.modulus().inv(a.value()), a.modulus()}; }

int legendre_symbol(i64 d, i64 p) {
    if (!is_odd_prime(p)) throw Error(Errc::NotOddPrime, std::to_string(p) + " is not an odd prime");
    i64 r = d % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    const auto up = static_cast<u64>(p);
    return powmod64(static_cast<u64>(r), (up - 1) / 2, up) == 1 ? 1 : -1;
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    if (v.saturated) os << ">=";
    return os << v.exponent;
}

Valuation p_valuation(u64 value, const PrimePowerModulus& m, unsigned cap) {
    if (cap > m.k())
        throw Error(Errc::Precondition, "valuation cap " + std::to_string(cap) + " exceeds k = " +
                                            std::to_string(m.k()));
    if (value % m.power_of_p(cap) == 0) return {cap, true};
    unsigned e = 0;
    while (value % m.p() == 0) {
        value /= m.p();
        ++e;
    }
    return {e, false};
}

Valuation p_valuation(const Residue& x, unsigned cap) { return p_valuation(x.value(), x.modulus(), cap); }

} // namespace quadcong
