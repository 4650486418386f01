#pragma once

/**
 * @file quadring.hpp
 * @brief The formal quadratic extension R = (Z/p^kZ)[T]/(T^2 - d).
 *
 * T is always the formal generator, whether or not d is a square mod p, so
 * a congruence verified here holds for every specialization of T to a
 * square root of d. {1, T} is a free basis, so "x is divisible by p^e in R"
 * is decided componentwise.
 */

#include <iosfwd>
#include <memory>

#include "quadcong/modarith.hpp"

namespace quadcong {

/// Raw coordinates a + bT, interpreted by a QuadCtx. Used by kernels.
struct QuadPair {
    u64 a = 0;
    u64 b = 0;
    friend bool operator==(const QuadPair&, const QuadPair&) = default;
};

class QuadElem;
class QuadCtx;
using QuadCtxPtr = std::shared_ptr<const QuadCtx>;

class QuadCtx : public std::enable_shared_from_this<QuadCtx> {
    struct Token {};

public:
    /// Use make_quad_ctx.
    QuadCtx(Token, const PrimePowerModulus& modulus, i64 d);
    QuadCtx(const QuadCtx&) = delete;
    QuadCtx& operator=(const QuadCtx&) = delete;

    static QuadCtxPtr make(const PrimePowerModulus& modulus, i64 d);

    const PrimePowerModulus& modulus() const noexcept { return mod_; }
    u64 p() const noexcept { return mod_.p(); }
    unsigned k() const noexcept { return mod_.k(); }
    /// d as originally given (before reduction).
    i64 d_input() const noexcept { return d_input_; }
    Residue d() const { return {d_, mod_}; }
    u64 d_raw() const noexcept { return d_; }
    int chi() const noexcept { return chi_; }

    /// Same modulus and same d: the two contexts describe one ring.
    bool same_ring(const QuadCtx& other) const noexcept {
        return this == &other || (mod_ == other.mod_ && d_ == other.d_);
    }

    QuadPair pair(i64 a, i64 b) const noexcept { return {mod_.reduce(a), mod_.reduce(b)}; }
    QuadElem elem(i64 a, i64 b) const;
    QuadElem wrap(QuadPair v) const;
    QuadElem zero() const;
    QuadElem one() const;
    /// The generator T (the formal sqrt(d)).
    QuadElem gen() const;

    // Raw kernel operations.
    QuadPair add(QuadPair x, QuadPair y) const noexcept { return {mod_.add(x.a, y.a), mod_.add(x.b, y.b)}; }
    QuadPair sub(QuadPair x, QuadPair y) const noexcept { return {mod_.sub(x.a, y.a), mod_.sub(x.b, y.b)}; }
    QuadPair neg(QuadPair x) const noexcept { return {mod_.neg(x.a), mod_.neg(x.b)}; }
    QuadPair conj(QuadPair x) const noexcept { return {x.a, mod_.neg(x.b)}; }
    QuadPair mul(QuadPair x, QuadPair y) const noexcept {
        const u64 bb = mod_.mul(x.b, y.b);
        const u128 re = static_cast<u128>(x.a) * y.a + static_cast<u128>(d_) * bb;
        const u128 im = static_cast<u128>(x.a) * y.b + static_cast<u128>(x.b) * y.a;
        return {mod_.reduce_wide(re), mod_.reduce_wide(im)};
    }
    QuadPair scale(QuadPair x, u64 s) const noexcept { return {mod_.mul(x.a, s), mod_.mul(x.b, s)}; }
    u64 norm(QuadPair x) const noexcept { return mod_.sub(mod_.mul(x.a, x.a), mod_.mul(d_, mod_.mul(x.b, x.b))); }
    bool is_unit(QuadPair x) const noexcept { return mod_.is_unit(norm(x)); }
    /// Throws NonUnitNorm when p divides the norm.
    QuadPair inv(QuadPair x) const;
    QuadPair pow(QuadPair x, u64 e) const noexcept;

private:
    PrimePowerModulus mod_;
    i64 d_input_;
    u64 d_;
    int chi_;
};

/// Throws PDividesD when p | d.
QuadCtxPtr make_quad_ctx(const PrimePowerModulus& modulus, i64 d);

/// a + bT in a shared context. Value type; copies share the context.
class QuadElem {
public:
    QuadElem(QuadCtxPtr ctx, QuadPair v) : ctx_(std::move(ctx)), v_(v) {}

    const QuadCtxPtr& ctx() const noexcept { return ctx_; }
    QuadPair raw() const noexcept { return v_; }
    Residue a() const { return {v_.a, ctx_->modulus()}; }
    Residue b() const { return {v_.b, ctx_->modulus()}; }
    bool is_zero() const noexcept { return v_.a == 0 && v_.b == 0; }

    QuadElem operator-() const { return {ctx_, ctx_->neg(v_)}; }
    friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
    QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
    QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
    QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }

    friend bool operator==(const QuadElem& x, const QuadElem& y) noexcept {
        return x.v_ == y.v_ && x.ctx_->same_ring(*y.ctx_);
    }

private:
    QuadCtxPtr ctx_;
    QuadPair v_;
};

std::ostream& operator<<(std::ostream& os, const QuadElem& x);

inline QuadElem quad_add(const QuadElem& x, const QuadElem& y) { return x + y; }
inline QuadElem quad_sub(const QuadElem& x, const QuadElem& y) { return x - y; }
inline QuadElem quad_mul(const QuadElem& x, const QuadElem& y) { return x * y; }
QuadElem conj(const QuadElem& x);
Residue quad_norm(const QuadElem& x);
QuadElem quad_inv(const QuadElem& x);
QuadElem quad_pow(const QuadElem& x, u64 e);

/// Componentwise valuation of a + bT.
struct ValuationResult {
    Valuation va;
    Valuation vb;

    /// min(va, vb), a saturated component counting as >= its cap.
    Valuation vmin() const noexcept;
    bool at_least(unsigned e) const noexcept { return vmin().exponent >= e; }
};

ValuationResult quad_valuation(const QuadElem& x, unsigned cap);

} // namespace quadcong
