#pragma once

/**
 * @file modarith.hpp
 * @brief Residue arithmetic in Z/p^kZ for an odd prime p.
 *
 * PrimePowerModulus is a small immutable descriptor. It exposes raw-word
 * operations (u64 in, u64 out) for the polynomial kernels, and a checked
 * value type, Residue, for everything else. Every residue is kept in
 * canonical form [0, N). N < 2^62, so a product of two residues always fits
 * in an unsigned 128-bit intermediate.
 */

#include <cstdint>
#include <iosfwd>

#include "quadcong/error.hpp"

namespace quadcong {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_odd_prime(i64 n) noexcept;

class Residue;

class PrimePowerModulus {
public:
    /// Upper bound (exclusive) on N = p^k.
    static constexpr u64 kMaxModulus = u64{1} << 62;

    PrimePowerModulus(i64 p, i64 k);

    u64 p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    u64 n() const noexcept { return n_; }

    /// p^e for 0 <= e <= k.
    u64 power_of_p(unsigned e) const;

    // Raw-word arithmetic. Arguments must already be canonical.
    u64 reduce(i64 x) const noexcept {
        i64 r = x % static_cast<i64>(n_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(n_) : r);
    }
    u64 reduce_wide(u128 x) const noexcept { return static_cast<u64>(x % n_); }
    u64 add(u64 a, u64 b) const noexcept {
        u64 s = a + b;
        return s >= n_ ? s - n_ : s;
    }
    u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + n_ - b; }
    u64 neg(u64 a) const noexcept { return a == 0 ? 0 : n_ - a; }
    u64 mul(u64 a, u64 b) const noexcept { return static_cast<u64>(static_cast<u128>(a) * b % n_); }
    u64 pow(u64 a, u64 e) const noexcept;
    /// Throws Errc::NotUnit when p divides a.
    u64 inv(u64 a) const;
    bool is_unit(u64 a) const noexcept { return a % p_ != 0; }

    Residue operator()(i64 x) const;
    Residue zero() const;
    Residue one() const;

    friend bool operator==(const PrimePowerModulus& x, const PrimePowerModulus& y) noexcept {
        return x.n_ == y.n_;
    }

private:
    u64 p_;
    unsigned k_;
    u64 n_;
};

PrimePowerModulus make_modulus(i64 p, i64 k);

/// An element of Z/p^kZ. Carries its modulus so mixed-ring arithmetic is
/// caught instead of silently producing garbage.
class Residue {
public:
    Residue(u64 value, const PrimePowerModulus& modulus);

    u64 value() const noexcept { return value_; }
    const PrimePowerModulus& modulus() const noexcept { return mod_; }
    bool is_zero() const noexcept { return value_ == 0; }
    bool is_unit() const noexcept { return mod_.is_unit(value_); }

    Residue operator-() const { return {mod_.neg(value_), mod_}; }
    friend Residue operator+(const Residue& x, const Residue& y);
    friend Residue operator-(const Residue& x, const Residue& y);
    friend Residue operator*(const Residue& x, const Residue& y);
    Residue& operator+=(const Residue& y) { return *this = *this + y; }
    Residue& operator-=(const Residue& y) { return *this = *this - y; }
    Residue& operator*=(const Residue& y) { return *this = *this * y; }

    friend bool operator==(const Residue& x, const Residue& y) noexcept {
        return x.mod_ == y.mod_ && x.value_ == y.value_;
    }

private:
    u64 value_;
    PrimePowerModulus mod_;
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

inline Residue mod_add(const Residue& a, const Residue& b) { return a + b; }
inline Residue mod_sub(const Residue& a, const Residue& b) { return a - b; }
inline Residue mod_mul(const Residue& a, const Residue& b) { return a * b; }
Residue mod_pow(const Residue& a, u64 e);
Residue mod_inv(const Residue& a);

/// (d/p) in {-1, 0, +1} by Euler's criterion; d may be negative.
int legendre_symbol(i64 d, i64 p);

/// p-adic valuation as far as Z/p^k can see it. When `saturated` is set the
/// true valuation is only known to be >= exponent.
struct Valuation {
    unsigned exponent = 0;
    bool saturated = false;

    bool at_least(unsigned e) const noexcept { return exponent >= e; }
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// Valuation of a raw canonical word. Requires cap <= m.k().
Valuation p_valuation(u64 value, const PrimePowerModulus& m, unsigned cap);
Valuation p_valuation(const Residue& x, unsigned cap);

} // namespace quadcong
