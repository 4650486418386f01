#include "quadcong/theorems.hpp"

#include <array>
#include <chrono>
#include <sstream>

namespace quadcong {

namespace {

u64 require_odd_prime(i64 p) {
    if (!is_odd_prime(p)) throw Error(Errc::NotOddPrime, std::to_string(p) + " is not an odd prime");
    return static_cast<u64>(p);
}

// x^{a} * (x^{p-1} - 1)^e, built by repeated squaring of the binomial.
DensePoly shifted_binomial_power(const QuadCtxPtr& ctx, std::size_t shift, u64 e) {
    const std::size_t pm1 = ctx->p() - 1;
    const DensePoly base = DensePoly::monomial(ctx, QuadPair{1, 0}, pm1) - DensePoly(ctx, {1});
    return poly_mul(DensePoly::monomial(ctx, QuadPair{1, 0}, shift), poly_pow(base, e));
}

std::vector<QuadPair> unit_pair_roots(const QuadCtx& ctx, const UnitPairSet& set) {
    std::vector<QuadPair> roots;
    roots.reserve(set.pairs.size());
    for (const auto& [m, n] : set.pairs) roots.push_back(ctx.pair(static_cast<i64>(m), static_cast<i64>(n)));
    return roots;
}

// The 2(p-1) roots m + nT with p | m^2 - dn^2, in the order ({nr}, p - {nr}).
std::vector<QuadPair> excluded_roots(const QuadCtx& ctx, u64 r) {
    const u64 p = ctx.p();
    std::vector<QuadPair> roots;
    roots.reserve(2 * (p - 1));
    for (u64 n = 1; n < p; ++n) {
        const u64 nr = n * r % p;
        roots.push_back({nr, n});
        roots.push_back({p - nr, n});
    }
    return roots;
}

QuadElem inverse_sum(i64 p, i64 d, unsigned k, bool symmetric) {
    if (k < 2) throw Error(Errc::Precondition, "the inverse sum needs k >= 2");
    const auto ctx = make_quad_ctx(make_modulus(p, static_cast<i64>(k)), d);
    const auto modp = make_modulus(p, 1);
    const u64 pp = modp.p();
    const u64 dp = modp.reduce(d);
    auto unit = [&](u64 x, u64 y) { return modp.sub(modp.mul(x, x), modp.mul(dp, modp.mul(y, y))) != 0; };
    // Lexicographic in (m, n) so the accumulation order is reproducible.
    QuadPair acc{};
    for (u64 m = 1; m < pp; ++m) {
        for (u64 n = 1; n < pp; ++n) {
            if (!unit(m, n) || (symmetric && !unit(n, m))) continue;
            acc = ctx->add(acc, ctx->inv({m, n}));
        }
    }
    return ctx->wrap(acc);
}

} // namespace

std::string_view method_name(Method m) noexcept {
    switch (m) {
    case Method::Naive: return "naive";
    case Method::Tree: return "tree";
    case Method::Shortcut: return "shortcut";
    }
    return "tree";
}

Method parse_method(std::string_view name) {
    if (name == "naive") return Method::Naive;
    if (name == "tree") return Method::Tree;
    if (name == "shortcut") return Method::Shortcut;
    throw Error(Errc::Precondition, "unknown method '" + std::string(name) + "'");
}

Residue sqrt_mod_p(i64 d, i64 p) {
    const auto mod = make_modulus(p, 1);
    if (legendre_symbol(d, p) != 1)
        throw Error(Errc::NoRoot, std::to_string(d) + " is not a nonzero square mod " + std::to_string(p));
    const u64 target = mod.reduce(d);
    for (u64 r = 1; r <= (mod.p() - 1) / 2; ++r)
        if (mod.mul(r, r) == target) return {r, mod};
    throw Error(Errc::NoRoot, "no square root found");  // unreachable for a residue
}

UnitPairSet unit_pairs(i64 p, i64 d) {
    const u64 up = require_odd_prime(p);
    UnitPairSet set;
    set.p = up;
    set.d = d;
    set.chi = legendre_symbol(d, p);
    if (set.chi == 0) throw Error(Errc::PDividesD, std::to_string(p) + " divides d = " + std::to_string(d));
    const auto mod = make_modulus(p, 1);
    const u64 dp = mod.reduce(d);
    set.pairs.reserve((up - 1) * (up - 1));
    for (u64 m = 1; m < up; ++m)
        for (u64 n = 1; n < up; ++n) {
            if (mod.sub(mod.mul(m, m), mod.mul(dp, mod.mul(n, n))) == 0)
                ++set.excluded_count;
            else
                set.pairs.emplace_back(m, n);
        }
    return set;
}

QuadCtxPtr mod_p_ctx(i64 p, i64 d) { return make_quad_ctx(make_modulus(p, 1), d); }

DensePoly compute_P(i64 p, i64 d, Method method) { return compute_P(mod_p_ctx(p, d), method); }

DensePoly compute_P(const QuadCtxPtr& ctx, Method method) {
    if (ctx->k() != 1) throw Error(Errc::RequiresModP, "P(x) is computed mod p");
    const auto p = static_cast<i64>(ctx->p());
    switch (method) {
    case Method::Naive:
        return product_of_linear_factors_naive(ctx, unit_pair_roots(*ctx, unit_pairs(p, ctx->d_input())));
    case Method::Tree:
        return product_of_linear_factors(ctx, unit_pair_roots(*ctx, unit_pairs(p, ctx->d_input())));
    case Method::Shortcut: {
        // prod_m (y - m) = y^{p-1} - 1 with y = x - nT, for each n.
        const DensePoly one(ctx, {1});
        std::vector<DensePoly> factors;
        factors.reserve(ctx->p() - 1);
        for (u64 n = 1; n < ctx->p(); ++n) factors.push_back(shifted_power_pm1(ctx->wrap({0, n})) - one);
        DensePoly full = product_tree(ctx, factors);
        if (ctx->chi() != 1) return full;
        const u64 r = sqrt_mod_p(ctx->d_input(), p).value();
        return poly_div_exact(full, product_of_linear_factors(ctx, excluded_roots(*ctx, r)));
    }
    }
    throw Error(Errc::Precondition, "unknown method");
}

DensePoly closed_form_theorem11(const QuadCtxPtr& ctx) {
    const auto& mod = ctx->modulus();
    const std::size_t p = ctx->p();
    std::vector<QuadPair> c;
    if (ctx->chi() == 1) {
        c.resize((p - 1) * (p - 3) + 1);
        for (std::size_t j = 1; j <= p - 2; ++j)
            c[(j - 1) * (p - 1)] = {mod.reduce(static_cast<i64>(j * (j + 1) / 2)), 0};
    } else {
        c.resize((p - 1) * (p - 1) + 1);
        for (std::size_t j = 0; j <= (p - 1) / 2; ++j) c[2 * j * (p - 1)] = {1, 0};
    }
    return {ctx, std::move(c)};
}

DensePoly binomial_form_theorem11(const QuadCtxPtr& ctx) {
    const auto& mod = ctx->modulus();
    const u64 p = ctx->p();
    const u64 e = p - 3;
    std::vector<QuadPair> c((p - 1) * e + 1);
    // C(e, j) (-1)^{e-j}; j + 1 <= e < p keeps every divisor a unit.
    u64 binom = 1;
    for (u64 j = 0; j <= e; ++j) {
        c[j * (p - 1)] = {(e - j) % 2 == 0 ? binom : mod.neg(binom), 0};
        binom = mod.mul(mod.mul(binom, e - j), j + 1 <= e ? mod.inv(j + 1) : 1);
    }
    return {ctx, std::move(c)};
}

Theorem11Result verify_theorem11(i64 p, i64 d, Method method) { return verify_theorem11(compute_P(p, d, method), d); }

Theorem11Result verify_theorem11(const DensePoly& P, i64 d) {
    const auto& ctx = P.ctx();
    const std::size_t p = ctx->p();
    Theorem11Result res;
    res.chi = ctx->chi();
    res.degree = P.degree() < 0 ? 0 : static_cast<std::size_t>(P.degree());

    const std::size_t expected_degree = res.chi == 1 ? (p - 1) * (p - 3) : (p - 1) * (p - 1);
    if (res.degree != expected_degree) {
        res.outcome = CheckOutcome::failure("degree " + std::to_string(res.degree) + " != " +
                                            std::to_string(expected_degree));
        return res;
    }
    if (auto at = first_difference(P, closed_form_theorem11(ctx))) {
        res.outcome = CheckOutcome::failure("closed form", at);
        return res;
    }
    if (res.chi == 1) {
        if (auto at = first_difference(P, binomial_form_theorem11(ctx))) {
            res.outcome = CheckOutcome::failure("binomial form", at);
            return res;
        }
    }
    if (!P.is_monic() || !(P.raw_coeff(0) == QuadPair{1, 0})) {
        res.outcome = CheckOutcome::failure("monic with constant term 1");
        return res;
    }
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (i % (p - 1) != 0 && !(P.raw()[i] == QuadPair{})) {
            res.outcome = CheckOutcome::failure("support on multiples of p-1", i);
            return res;
        }
    }
    if (d == -1 && p > 3) {
        if (p % 4 == 3) {
            // 1 + x^{2(p-1)} + ... + x^{(p-1)^2}
            for (std::size_t i = 0; i < P.size(); ++i) {
                const bool on = i % (2 * (p - 1)) == 0;
                if (!(P.raw()[i] == (on ? QuadPair{1, 0} : QuadPair{}))) {
                    res.outcome = CheckOutcome::failure("Gaussian shape (p = 3 mod 4)", i);
                    return res;
                }
            }
        } else if (!(P.raw_coeff((p - 3) * (p - 1)) == QuadPair{1, 0})) {
            res.outcome = CheckOutcome::failure("Gaussian top coefficient (p = 1 mod 4)", (p - 3) * (p - 1));
            return res;
        }
    }
    return res;
}

CheckOutcome intermediate_products_check(i64 p, i64 d) {
    const auto ctx = mod_p_ctx(p, d);
    const u64 up = ctx->p();
    std::vector<QuadPair> all;
    all.reserve((up - 1) * (up - 1));
    for (u64 m = 1; m < up; ++m)
        for (u64 n = 1; n < up; ++n) all.push_back({m, n});
    const DensePoly full = product_of_linear_factors(ctx, all);

    if (ctx->chi() == 1) {
        if (auto at = first_difference(full, shifted_binomial_power(ctx, up - 1, up - 2)))
            return CheckOutcome::failure("full product vs x^{p-1}(x^{p-1}-1)^{p-2}", at);
        const u64 r = sqrt_mod_p(d, p).value();
        const DensePoly excluded = product_of_linear_factors(ctx, excluded_roots(*ctx, r));
        if (auto at = first_difference(excluded, shifted_binomial_power(ctx, up - 1, 1)))
            return CheckOutcome::failure("excluded product vs x^{p-1}(x^{p-1}-1)", at);
        if (auto at = first_difference(full, poly_mul(compute_P(ctx, Method::Tree), excluded)))
            return CheckOutcome::failure("full product vs P times excluded product", at);
    } else {
        const DensePoly one(ctx, {1});
        const DensePoly x_p_plus_x =
            DensePoly::monomial(ctx, {1, 0}, up) + DensePoly::monomial(ctx, {1, 0}, 1);
        const DensePoly numer = poly_pow(x_p_plus_x, up - 1) - one;
        const DensePoly denom = DensePoly::monomial(ctx, {1, 0}, up - 1) - one;
        try {
            if (auto at = first_difference(full, poly_div_exact(numer, denom)))
                return CheckOutcome::failure("full product vs ((x^p+x)^{p-1}-1)/(x^{p-1}-1)", at);
        } catch (const Error& e) {
            if (e.code() != Errc::NonZeroRemainder) throw;
            return CheckOutcome::failure("(x^p+x)^{p-1}-1 not divisible by x^{p-1}-1");
        }
    }
    return {};
}

QuadElem wolstenholme_sum(i64 p, i64 d, unsigned k) { return inverse_sum(p, d, k, false); }

QuadElem wolstenholme_sum_symmetric(i64 p, i64 d, unsigned k) { return inverse_sum(p, d, k, true); }

unsigned default_k(i64 p, i64 d) noexcept { return d == -1 && p > 5 ? 5 : 3; }

unsigned default_target(i64 p, i64 d, unsigned k) noexcept { return d == -1 && p > 5 && k >= 5 ? 4 : 2; }

Theorem12Result verify_theorem12(i64 p, i64 d, unsigned target, unsigned k) {
    if (k < target + 1)
        throw Error(Errc::Precondition, "k = " + std::to_string(k) + " cannot separate valuation " +
                                            std::to_string(target) + " from higher");
    Theorem12Result res;
    res.target = target;
    res.k = k;
    res.valuation = quad_valuation(wolstenholme_sum(p, d, k), k);
    res.ok = res.valuation.at_least(target);
    return res;
}

Residue power_sum(u64 t, i64 p) {
    const auto mod = make_modulus(p, 1);
    u64 acc = 0;
    for (u64 n = 1; n < mod.p(); ++n) acc = mod.add(acc, mod.pow(n, t));
    return {acc, mod};
}

Residue power_sum_expected(u64 t, i64 p) {
    const auto mod = make_modulus(p, 1);
    return t % (mod.p() - 1) == 0 ? -mod.one() : mod.zero();
}

Residue eval_f(const PrimePowerModulus& modulus, i64 d, i64 m, i64 n) {
    const Residue D = modulus(d), M = modulus(m), N = modulus(n);
    const Residue d2 = D * D, d3 = d2 * D;
    const Residue m2 = M * M, m4 = m2 * m2, m6 = m4 * m2;
    const Residue n2 = N * N, n4 = n2 * n2, n6 = n4 * n2;
    const Residue two = modulus(2), four = modulus(4);
    // -2dm^6 - 2d^2m^6 - 2m^4n^2 + 4dm^4n^2 + 4d^2m^4n^2 - 2d^3m^4n^2
    // - 2m^2n^4 + 4dm^2n^4 + 4d^2m^2n^4 - 2d^3m^2n^4 - 2dn^6 - 2d^2n^6
    Residue f = modulus.zero();
    f -= two * D * m6;
    f -= two * d2 * m6;
    f -= two * m4 * n2;
    f += four * D * m4 * n2;
    f += four * d2 * m4 * n2;
    f -= two * d3 * m4 * n2;
    f -= two * m2 * n4;
    f += four * D * m2 * n4;
    f += four * d2 * m2 * n4;
    f -= two * d3 * m2 * n4;
    f -= two * D * n6;
    f -= two * d2 * n6;
    return f;
}

namespace {
std::array<QuadPair, 8> eight_denominators(const QuadCtx& ctx, i64 m, i64 n) {
    const auto p = static_cast<i64>(ctx.p());
    return {ctx.pair(m, n),     ctx.pair(p - m, n), ctx.pair(m, p - n), ctx.pair(p - m, p - n),
            ctx.pair(n, m),     ctx.pair(p - n, m), ctx.pair(n, p - m), ctx.pair(p - n, p - m)};
}
} // namespace

QuadElem eight_term_sum(const QuadCtxPtr& ctx, i64 m, i64 n) {
    QuadPair acc{};
    for (const QuadPair& den : eight_denominators(*ctx, m, n)) acc = ctx->add(acc, ctx->inv(den));
    return ctx->wrap(acc);
}

ProofIdentityResult proof_identity_check(i64 p, i64 d, i64 m, i64 n) {
    if (p < 5) throw Error(Errc::Precondition, "the eight-term identity needs p >= 5");
    const auto ctx = make_quad_ctx(make_modulus(p, 3), d);
    const auto modp = make_modulus(p, 1);
    const Residue D = modp(d), M = modp(m), N = modp(n);
    const Residue u = D * M * M - N * N;  // d m^2 - n^2
    const Residue v = D * N * N - M * M;  // d n^2 - m^2
    if (!(u * v).is_unit())
        throw Error(Errc::NonUnitNorm, "p divides (m^2 - dn^2)(n^2 - dm^2) at (m, n) = (" + std::to_string(m) +
                                           ", " + std::to_string(n) + ")");

    ProofIdentityResult res;
    const QuadElem S = eight_term_sum(ctx, m, n);
    res.s_valuation = quad_valuation(S, 3);

    const Residue w = mod_inv(u * v);
    const u64 c = (eval_f(modp, d, m, n) * w * w).value();
    const u64 p2 = ctx->modulus().power_of_p(2);
    const u64 expected = static_cast<u64>(p) * c % p2;
    res.numerator_ok = S.raw().a % p2 == expected && S.raw().b % p2 == expected;

    QuadPair prod{1, 0};
    for (const QuadPair& den : eight_denominators(*ctx, m, n)) prod = ctx->mul(prod, den);
    const u64 up = static_cast<u64>(p);
    res.denominator_ok = prod.a % up == (u * u * v * v).value() && prod.b % up == 0;

    res.ok = res.numerator_ok && res.denominator_ok && res.s_valuation.at_least(1);
    return res;
}

CheckOutcome lemma_suite(i64 p, i64 d) {
    const auto ctx = mod_p_ctx(p, d);
    const u64 up = ctx->p();
    const DensePoly one(ctx, {1});

    std::vector<QuadPair> roots;
    for (u64 j = 1; j < up; ++j) roots.push_back({j, 0});
    if (auto at = first_difference(product_of_linear_factors(ctx, roots), DensePoly::monomial(ctx, {1, 0}, up - 1) - one))
        return CheckOutcome::failure("product of (x - j) over j = 1..p-1 equals x^{p-1} - 1", at);

    for (const QuadElem& alpha : {ctx->elem(1, 1), ctx->elem(2, 3), ctx->gen()}) {
        const DensePoly lhs = poly_pow(DensePoly::linear(alpha), up);
        const DensePoly rhs = DensePoly::monomial(ctx, {1, 0}, up) - DensePoly::constant(quad_pow(alpha, up));
        if (auto at = first_difference(lhs, rhs)) {
            std::ostringstream os;
            os << "Frobenius (x - a)^p = x^p - a^p for a = " << alpha;
            return CheckOutcome::failure(os.str(), at);
        }
    }

    for (u64 t = 0; t <= 2 * (up - 1); ++t)
        if (!(power_sum(t, p) == power_sum_expected(t, p)))
            return CheckOutcome::failure("power sum of n^" + std::to_string(t));
    return {};
}

VerificationRecord verify_point(i64 p, i64 d, Method method, std::optional<unsigned> k, std::string* detail) {
    const auto start = std::chrono::steady_clock::now();
    VerificationRecord rec;
    rec.p = p;
    rec.d = d;
    rec.method = method;
    rec.k_used = k.value_or(default_k(p, d));

    const auto ctx = mod_p_ctx(p, d);
    rec.chi = ctx->chi();
    const DensePoly P = compute_P(ctx, method);
    const Theorem11Result t11 = verify_theorem11(P, d);
    rec.theorem11_ok = t11.outcome.ok;
    rec.degree_P = t11.degree;

    const Theorem12Result t12 = verify_theorem12(p, d, default_target(p, d, rec.k_used), rec.k_used);
    rec.theorem12_vmin = t12.valuation.vmin();

    rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (detail) {
        std::ostringstream os;
        if (!t11.outcome.ok) {
            os << "P(x) mismatch at p=" << p << " d=" << d << ": " << t11.outcome.check;
            if (t11.outcome.exponent) os << " (first differing exponent " << *t11.outcome.exponent << ")";
        }
        if (!t12.ok) {
            if (!t11.outcome.ok) os << "; ";
            os << "inverse sum at p=" << p << " d=" << d << " has vmin " << rec.theorem12_vmin << " < "
               << t12.target << " (k=" << rec.k_used << ")";
        }
        *detail = os.str();
    }
    return rec;
}

} // namespace quadcong
