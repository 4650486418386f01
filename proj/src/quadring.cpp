#include "quadcong/quadring.hpp"

#include <ostream>
#include <string>

namespace quadcong {

QuadCtx::QuadCtx(Token, const PrimePowerModulus& modulus, i64 d)
    : mod_(modulus), d_input_(d), d_(modulus.reduce(d)), chi_(0) {
    chi_ = legendre_symbol(d, static_cast<i64>(modulus.p()));
    if (chi_ == 0)
        throw Error(Errc::PDividesD, std::to_string(modulus.p()) + " divides d = " + std::to_string(d));
}

QuadCtxPtr QuadCtx::make(const PrimePowerModulus& modulus, i64 d) {
    return std::make_shared<const QuadCtx>(Token{}, modulus, d);
}

QuadCtxPtr make_quad_ctx(const PrimePowerModulus& modulus, i64 d) { return QuadCtx::make(modulus, d); }

QuadElem QuadCtx::wrap(QuadPair v) const { return {shared_from_this(), v}; }
QuadElem QuadCtx::elem(i64 a, i64 b) const { return wrap(pair(a, b)); }
QuadElem QuadCtx::zero() const { return wrap({0, 0}); }
QuadElem QuadCtx::one() const { return wrap({1 % mod_.n(), 0}); }
QuadElem QuadCtx::gen() const { return wrap({0, 1}); }

QuadPair QuadCtx::inv(QuadPair x) const {
    const u64 nm = norm(x);
    if (!mod_.is_unit(nm))
        throw Error(Errc::NonUnitNorm, "norm " + std::to_string(nm) + " of " + std::to_string(x.a) + "+" +
                                           std::to_string(x.b) + "T is divisible by p");
    return scale(conj(x), mod_.inv(nm));
}

QuadPair QuadCtx::pow(QuadPair x, u64 e) const noexcept {
    QuadPair r{1 % mod_.n(), 0};
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

namespace {
const QuadCtx& common_ctx(const QuadElem& x, const QuadElem& y) {
    if (!x.ctx()->same_ring(*y.ctx()))
        throw Error(Errc::ContextMismatch, "elements of different quadratic rings");
    return *x.ctx();
}
} // namespace

QuadElem operator+(const QuadElem& x, const QuadElem& y) { return {x.ctx_, common_ctx(x, y).add(x.v_, y.v_)}; }
QuadElem operator-(const QuadElem& x, const QuadElem& y) { return {x.ctx_, common_ctx(x, y).sub(x.v_, y.v_)}; }
QuadElem operator*(const QuadElem& x, const QuadElem& y) { return {x.ctx_, common_ctx(x, y).mul(x.v_, y.v_)}; }

std::ostream& operator<<(std::ostream& os, const QuadElem& x) {
    return os << "(" << x.raw().a << ", " << x.raw().b << ")";
}

QuadElem conj(const QuadElem& x) { return {x.ctx(), x.ctx()->conj(x.raw())}; }
Residue quad_norm(const QuadElem& x) { return {x.ctx()->norm(x.raw()), x.ctx()->modulus()}; }
QuadElem quad_inv(const QuadElem& x) { return {x.ctx(), x.ctx()->inv(x.raw())}; }
QuadElem quad_pow(const QuadElem& x, u64 e) { return {x.ctx(), x.ctx()->pow(x.raw(), e)}; }

Valuation ValuationResult::vmin() const noexcept {
    if (va.exponent != vb.exponent) return va.exponent < vb.exponent ? va : vb;
    return {va.exponent, va.saturated && vb.saturated};
}

ValuationResult quad_valuation(const QuadElem& x, unsigned cap) {
    const auto& m = x.ctx()->modulus();
    return {p_valuation(x.raw().a, m, cap), p_valuation(x.raw().b, m, cap)};
}

} // namespace quadcong
