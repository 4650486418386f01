#pragma once

/**
 * @file theorems.hpp
 * @brief The product polynomial P(x), its closed forms, the Wolstenholme-type
 * sum over m + n*sqrt(d), and the auxiliary identities used to prove them.
 *
 * Everything about P(x) lives in the k = 1 ring (the claims are mod p). Sums
 * of inverses live in Z/p^k with k large enough to see the valuation that
 * is being asserted.
 */

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadcong/polyops.hpp"

namespace quadcong {

enum class Method { Naive, Tree, Shortcut };

std::string_view method_name(Method m) noexcept;
/// Throws Errc::Precondition on an unknown name.
Method parse_method(std::string_view name);

/// The unique r in [1, (p-1)/2] with r^2 = d (mod p). NoRoot unless (d/p) = +1.
Residue sqrt_mod_p(i64 d, i64 p);

struct UnitPairSet {
    u64 p = 0;
    i64 d = 0;
    int chi = 0;
    /// (m, n) in [1, p-1]^2 with p not dividing m^2 - d n^2, lexicographic.
    std::vector<std::pair<u64, u64>> pairs;
    std::size_t excluded_count = 0;
};

UnitPairSet unit_pairs(i64 p, i64 d);

/// (Z/p)[T]/(T^2 - d).
QuadCtxPtr mod_p_ctx(i64 p, i64 d);

/// P(x) = prod (x - (m + nT)) over unit_pairs(p, d), mod p.
DensePoly compute_P(i64 p, i64 d, Method method = Method::Tree);
DensePoly compute_P(const QuadCtxPtr& ctx, Method method = Method::Tree);

/// chi = +1: sum_{j=1}^{p-2} j(j+1)/2 x^{(j-1)(p-1)};
/// chi = -1: sum_{j=0}^{(p-1)/2} x^{2j(p-1)}. The ring's chi picks the case.
DensePoly closed_form_theorem11(const QuadCtxPtr& ctx);

/// (x^{p-1} - 1)^{p-3} written out with binomial coefficients mod p.
DensePoly binomial_form_theorem11(const QuadCtxPtr& ctx);

/// Result of a verification pass. On failure `check` names what failed and
/// `exponent` (when meaningful) is the lowest differing power of x.
struct CheckOutcome {
    bool ok = true;
    std::string check;
    std::optional<std::size_t> exponent;

    explicit operator bool() const noexcept { return ok; }
    static CheckOutcome failure(std::string what, std::optional<std::size_t> exp = std::nullopt) {
        return {false, std::move(what), exp};
    }
};

struct Theorem11Result {
    CheckOutcome outcome;
    std::size_t degree = 0;
    int chi = 0;
};

/// Compares P against both printed closed forms and the structural claims
/// (monic, constant term 1, support on multiples of p-1). For d = -1 and
/// p > 3 the Gaussian-integer shape is checked as well.
Theorem11Result verify_theorem11(i64 p, i64 d, Method method = Method::Tree);
Theorem11Result verify_theorem11(const DensePoly& P, i64 d);

/// prod_{m,n=1}^{p-1} (x - m - nT) against its closed form; for chi = +1
/// also the product over the excluded pairs against x^{p-1}(x^{p-1} - 1).
CheckOutcome intermediate_products_check(i64 p, i64 d);

/// sum of 1/(m + nT) over unit_pairs(p, d), in (Z/p^k)[T]/(T^2 - d). k >= 2.
QuadElem wolstenholme_sum(i64 p, i64 d, unsigned k);
/// Same sum over pairs where both m^2 - dn^2 and n^2 - dm^2 are units.
QuadElem wolstenholme_sum_symmetric(i64 p, i64 d, unsigned k);

/// 5 when d = -1 and p > 5, else 3.
unsigned default_k(i64 p, i64 d) noexcept;
/// 4 when d = -1, p > 5 and k >= 5, else 2.
unsigned default_target(i64 p, i64 d, unsigned k) noexcept;

struct Theorem12Result {
    ValuationResult valuation;
    unsigned target = 2;
    unsigned k = 3;
    bool ok = false;
};

/// Requires k >= target + 1 so that "exactly target" is distinguishable.
Theorem12Result verify_theorem12(i64 p, i64 d, unsigned target, unsigned k);

/// sum_{n=1}^{p-1} n^t mod p.
Residue power_sum(u64 t, i64 p);
/// -1 when (p-1) | t (t = 0 included), else 0.
Residue power_sum_expected(u64 t, i64 p);

/// The 12-term polynomial f(d, m, n), evaluated in Z/N.
Residue eval_f(const PrimePowerModulus& modulus, i64 d, i64 m, i64 n);

/// S(m, n): the eight inverses 1/(+-m + +-nT), 1/(+-n + +-mT) with every
/// sign realized as p - x. Requires the eight norms to be units.
QuadElem eight_term_sum(const QuadCtxPtr& ctx, i64 m, i64 n);

struct ProofIdentityResult {
    bool ok = false;
    bool numerator_ok = false;
    bool denominator_ok = false;
    ValuationResult s_valuation;
};

/// In (Z/p^3)[T]/(T^2 - d): S(m,n) = p(1+T) f(d,m,n) w^2 (mod p^2) with
/// w = ((dm^2 - n^2)(dn^2 - m^2))^{-1} mod p, and the product of the eight
/// denominators is (dm^2 - n^2)^2 (dn^2 - m^2)^2 (mod p). Requires p >= 5.
ProofIdentityResult proof_identity_check(i64 p, i64 d, i64 m, i64 n);

/// Product of linear factors over 1..p-1, the Frobenius identity for a few
/// alphas, and the power-sum table up to t = 2(p-1).
CheckOutcome lemma_suite(i64 p, i64 d);

/// One (p, d) report row.
struct VerificationRecord {
    i64 p = 0;
    i64 d = 0;
    int chi = 0;
    bool theorem11_ok = false;
    Valuation theorem12_vmin;
    std::size_t degree_P = 0;
    Method method = Method::Tree;
    unsigned k_used = 3;
    double elapsed_ms = 0.0;

    unsigned theorem12_target() const noexcept { return default_target(p, d, k_used); }
    bool theorem12_ok() const noexcept { return theorem12_vmin.exponent >= theorem12_target(); }
    bool ok() const noexcept { return theorem11_ok && theorem12_ok(); }

    friend bool operator==(const VerificationRecord&, const VerificationRecord&) = default;
};

/// The product-polynomial and inverse-sum checks for one point. k defaults
/// to default_k(p, d).
/// `detail` (optional) receives a description of any failure.
VerificationRecord verify_point(i64 p, i64 d, Method method, std::optional<unsigned> k = std::nullopt,
                                std::string* detail = nullptr);

} // namespace quadcong
