#pragma once

/**
 * @file polyops.hpp
 * @brief Dense univariate polynomials over (Z/p^k)[T]/(T^2 - d).
 *
 * Coefficients are stored lowest degree first and always normalized: the
 * top coefficient is nonzero, and the zero polynomial is the empty
 * sequence. Multiplication is schoolbook below kKaratsubaThreshold and
 * Karatsuba above; there is no FFT path because p is the object under test
 * and cannot be chosen transform-friendly.
 */

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "quadcong/quadring.hpp"

namespace quadcong {

/// Operand length at or below which multiplication falls back to schoolbook.
inline constexpr std::size_t kKaratsubaThreshold = 32;

class DensePoly {
public:
    /// The zero polynomial.
    explicit DensePoly(QuadCtxPtr ctx);
    DensePoly(QuadCtxPtr ctx, std::vector<QuadPair> coeffs);
    /// Rational (b = 0) integer coefficients, lowest degree first.
    DensePoly(QuadCtxPtr ctx, std::initializer_list<i64> rational_coeffs);

    static DensePoly constant(const QuadElem& c);
    /// c * x^e
    static DensePoly monomial(QuadCtxPtr ctx, QuadPair c, std::size_t e);
    /// x - c
    static DensePoly linear(const QuadElem& root);

    const QuadCtxPtr& ctx() const noexcept { return ctx_; }
    std::span<const QuadPair> raw() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    std::ptrdiff_t degree() const noexcept { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == QuadPair{1 % ctx_->modulus().n(), 0}; }

    /// Coefficient of x^i; zero past the degree.
    QuadElem coeff(std::size_t i) const;
    QuadPair raw_coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : QuadPair{}; }
    std::vector<QuadElem> coeffs() const;

    DensePoly operator-() const;
    friend DensePoly operator+(const DensePoly& f, const DensePoly& g);
    friend DensePoly operator-(const DensePoly& f, const DensePoly& g);
    friend DensePoly operator*(const DensePoly& f, const DensePoly& g);

    friend bool operator==(const DensePoly& f, const DensePoly& g) noexcept {
        return f.ctx_->same_ring(*g.ctx_) && f.coeffs_ == g.coeffs_;
    }

private:
    void normalize() noexcept;

    QuadCtxPtr ctx_;
    std::vector<QuadPair> coeffs_;
};

/// Prints e.g. "x^4 + 1" or "x^2 + (0+1T)x + 2".
std::ostream& operator<<(std::ostream& os, const DensePoly& f);

/// Lowest exponent where f and g differ, or nullopt when equal.
std::optional<std::size_t> first_difference(const DensePoly& f, const DensePoly& g);

DensePoly poly_mul(const DensePoly& f, const DensePoly& g);
/// Quadratic-time product; kept as the permanent oracle for poly_mul.
DensePoly poly_mul_schoolbook(const DensePoly& f, const DensePoly& g);
DensePoly poly_pow(const DensePoly& f, u64 e);

/// prod (x - r) over the roots, via a balanced subproduct tree.
DensePoly product_of_linear_factors(const QuadCtxPtr& ctx, std::span<const QuadPair> roots);
DensePoly product_of_linear_factors(const QuadCtxPtr& ctx, std::span<const QuadElem> roots);
/// Left fold of (x - r); the quadratic reference for the tree.
DensePoly product_of_linear_factors_naive(const QuadCtxPtr& ctx, std::span<const QuadPair> roots);

/// Balanced product of arbitrary polynomials sharing one ring. Empty input
/// gives the constant 1.
DensePoly product_tree(const QuadCtxPtr& ctx, std::span<const DensePoly> factors);

/// q with f = q * g exactly. g needs a unit leading coefficient; the
/// remainder is always checked and a nonzero one raises NonZeroRemainder.
DensePoly poly_div_exact(const DensePoly& f, const DensePoly& g);

/// (x - c)^(p-1) mod p as sum_j c^j x^(p-1-j). Requires k = 1.
DensePoly shifted_power_pm1(const QuadElem& c);

QuadElem poly_eval(const DensePoly& f, const QuadElem& x0);

} // namespace quadcong
