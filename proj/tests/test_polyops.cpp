#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "quadcong/polyops.hpp"

using namespace quadcong;

namespace {

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected quadcong::Error");
    return Errc::Precondition;
}

DensePoly random_poly(const QuadCtxPtr& ctx, std::size_t len, std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> pick(0, ctx->modulus().n() - 1);
    std::vector<QuadPair> c(len);
    for (auto& x : c) x = {pick(rng), pick(rng)};
    if (len) c.back().a = c.back().a ? c.back().a : 1;
    return {ctx, std::move(c)};
}

oracle::Poly to_oracle(const DensePoly& f) {
    oracle::Poly out;
    for (auto c : f.raw()) out.push_back({static_cast<std::int64_t>(c.a), static_cast<std::int64_t>(c.b)});
    return out;
}

} // namespace

TEST_CASE("DensePoly normalization") {
    const auto ctx = make_quad_ctx(make_modulus(3, 1), 2);
    CHECK(DensePoly(ctx, {1, 0, 3, 0}).degree() == 0);
    CHECK(DensePoly(ctx, {0, 0}).is_zero());
    CHECK(DensePoly(ctx).degree() == -1);
    CHECK(DensePoly(ctx, {2, 0, 1}).is_monic());
    std::ostringstream os;
    os << DensePoly(ctx, {1, 0, 0, 0, 1});
    CHECK(os.str() == "x^4 + 1");
}

TEST_CASE("poly_mul examples") {
    const auto ctx = make_quad_ctx(make_modulus(7, 1), 3);
    CHECK(poly_mul(DensePoly(ctx, {1, 1}), DensePoly(ctx, {-1, 1})) == DensePoly(ctx, {-1, 0, 1}));
    CHECK(poly_mul(DensePoly(ctx, {1, 1}), DensePoly(ctx)).is_zero());
    CHECK(poly_mul(DensePoly(ctx), DensePoly(ctx, {1, 1})).raw().empty());
    const auto other = make_quad_ctx(make_modulus(7, 1), 5);
    CHECK(code_of([&] { poly_mul(DensePoly(ctx, {1}), DensePoly(other, {1})); }) == Errc::ContextMismatch);
}

TEST_CASE("Karatsuba agrees with schoolbook and with the plain-integer oracle") {
    std::mt19937_64 rng(3);
    for (auto [p, k, d] : {std::tuple{3, 1, 2}, {31, 1, -1}, {5, 3, 2}, {3, 39, 2}, {997, 6, 5}}) {
        const auto ctx = make_quad_ctx(make_modulus(p, k), d);
        for (auto [n1, n2] : {std::pair<std::size_t, std::size_t>{33, 33}, {64, 65}, {200, 37}, {129, 300},
                              {1000, 999}, {31, 500}, {1, 77}}) {
            const DensePoly f = random_poly(ctx, n1, rng), g = random_poly(ctx, n2, rng);
            const DensePoly fast = poly_mul(f, g);
            REQUIRE(fast == poly_mul_schoolbook(f, g));
            if (n1 + n2 < 300)
                REQUIRE(to_oracle(fast) == oracle::trim(oracle::mul(to_oracle(f), to_oracle(g), d,
                                                                     static_cast<std::int64_t>(ctx->modulus().n()))));
        }
    }
}

TEST_CASE("poly_mul algebraic properties") {
    std::mt19937_64 rng(5);
    const auto ctx = make_quad_ctx(make_modulus(13, 1), 2);  // chi = -1: a field
    REQUIRE(ctx->chi() == -1);
    for (int i = 0; i < 20; ++i) {
        const DensePoly f = random_poly(ctx, 1 + rng() % 90, rng), g = random_poly(ctx, 1 + rng() % 90, rng),
                        h = random_poly(ctx, 1 + rng() % 90, rng);
        REQUIRE(poly_mul(poly_mul(f, g), h) == poly_mul(f, poly_mul(g, h)));
        REQUIRE(poly_mul(f, g) == poly_mul(g, f));
        REQUIRE(poly_mul(f, g).degree() == f.degree() + g.degree());
        REQUIRE(poly_mul(f, g + h) == poly_mul(f, g) + poly_mul(f, h));
    }
}

TEST_CASE("product_of_linear_factors examples") {
    const auto c3 = make_quad_ctx(make_modulus(3, 1), 2);
    const std::vector<QuadPair> roots{{1, 0}, {2, 0}};
    CHECK(product_of_linear_factors(c3, roots) == DensePoly(c3, {2, 0, 1}));
    CHECK(product_of_linear_factors(c3, std::vector<QuadPair>{}) == DensePoly(c3, {1}));

    for (i64 p : {3, 5, 7, 31, 97}) {
        const auto ctx = make_quad_ctx(make_modulus(p, 1), 2);
        std::vector<QuadElem> rs;
        for (i64 j = 1; j < p; ++j) rs.push_back(ctx->elem(j, 0));
        DensePoly expect = DensePoly::monomial(ctx, {1, 0}, static_cast<std::size_t>(p - 1)) - DensePoly(ctx, {1});
        REQUIRE(product_of_linear_factors(ctx, rs) == expect);
    }

    const auto other = make_quad_ctx(make_modulus(5, 1), 2);
    const std::vector<QuadElem> mixed{c3->one(), other->one()};
    CHECK(code_of([&] { product_of_linear_factors(c3, mixed); }) == Errc::ContextMismatch);
}

TEST_CASE("subproduct tree equals the naive fold and vanishes at every root") {
    std::mt19937_64 rng(17);
    for (auto [p, k, d, count] : {std::tuple{101, 1, 3, 10000}, {7, 3, -1, 3000}, {3, 39, 2, 500}}) {
        const auto ctx = make_quad_ctx(make_modulus(p, k), d);
        std::uniform_int_distribution<u64> pick(0, ctx->modulus().n() - 1);
        std::vector<QuadPair> roots(count);
        for (auto& r : roots) r = {pick(rng), pick(rng)};
        const DensePoly tree = product_of_linear_factors(ctx, roots);
        REQUIRE(tree == product_of_linear_factors_naive(ctx, roots));
        REQUIRE(tree.degree() == static_cast<std::ptrdiff_t>(count));
        for (std::size_t i = 0; i < roots.size(); i += 97) REQUIRE(poly_eval(tree, ctx->wrap(roots[i])).is_zero());
    }
}

TEST_CASE("poly_div_exact") {
    const auto c5 = make_quad_ctx(make_modulus(5, 1), 2);
    CHECK(poly_div_exact(DensePoly(c5, {-1, 0, 0, 0, 1}), DensePoly(c5, {-1, 0, 1})) == DensePoly(c5, {1, 0, 1}));

    const auto c3 = make_quad_ctx(make_modulus(3, 1), 2);
    CHECK(poly_div_exact(DensePoly(c3, {2, 0, 1, 0, 2, 0, 1}), DensePoly(c3, {2, 0, 1})) ==
          DensePoly(c3, {1, 0, 0, 0, 1}));
    CHECK(code_of([&] { poly_div_exact(DensePoly(c3, {1, 0, 1}), DensePoly(c3, {1, 1})); }) ==
          Errc::NonZeroRemainder);
    CHECK(code_of([&] { poly_div_exact(DensePoly(c3, {1, 0, 1}), DensePoly(c3)); }) == Errc::DivisionByZeroPoly);
    CHECK(code_of([&] { poly_div_exact(DensePoly(c3, {1}), DensePoly(c3, {1, 1})); }) == Errc::NonZeroRemainder);
    CHECK(poly_div_exact(DensePoly(c3), DensePoly(c3, {1, 1})).is_zero());

    // Leading coefficient 3 is not a unit mod 9.
    const auto c9 = make_quad_ctx(make_modulus(3, 2), 2);
    CHECK(code_of([&] { poly_div_exact(DensePoly(c9, {1, 0, 3}), DensePoly(c9, {1, 3})); }) == Errc::NonUnitNorm);

    std::mt19937_64 rng(23);
    for (auto [p, k, d] : {std::tuple{11, 1, 2}, {5, 4, 3}, {3, 39, -1}}) {
        const auto ctx = make_quad_ctx(make_modulus(p, k), d);
        for (int i = 0; i < 20; ++i) {
            const DensePoly q = random_poly(ctx, 1 + rng() % 120, rng);
            DensePoly g = random_poly(ctx, 1 + rng() % 60, rng);
            std::vector<QuadPair> gc(g.raw().begin(), g.raw().end());
            gc.back() = {1, 1};  // norm 1 - d, a unit for these d
            g = DensePoly(ctx, gc);
            REQUIRE(poly_div_exact(poly_mul(q, g), g) == q);
        }
    }
}

TEST_CASE("shifted_power_pm1") {
    const auto c3 = make_quad_ctx(make_modulus(3, 1), 2);
    CHECK(shifted_power_pm1(c3->gen()) == DensePoly(c3, std::vector<QuadPair>{{2, 0}, {0, 1}, {1, 0}}));
    CHECK(shifted_power_pm1(c3->zero()) == DensePoly::monomial(c3, {1, 0}, 2));

    std::mt19937_64 rng(29);
    for (i64 p : {5, 7, 13, 31, 97}) {
        const auto ctx = make_quad_ctx(make_modulus(p, 1), -3);
        for (int i = 0; i < 5; ++i) {
            const QuadElem c = ctx->wrap({rng() % p, rng() % p});
            REQUIRE(shifted_power_pm1(c) == poly_pow(DensePoly::linear(c), static_cast<u64>(p - 1)));
        }
    }
    const auto c9 = make_quad_ctx(make_modulus(3, 2), 2);
    CHECK(code_of([&] { shifted_power_pm1(c9->gen()); }) == Errc::RequiresModP);
}

TEST_CASE("poly_eval") {
    const auto c3 = make_quad_ctx(make_modulus(3, 1), 2);
    CHECK(poly_eval(DensePoly(c3, {2, 0, 1}), c3->one()).is_zero());
    CHECK(poly_eval(DensePoly(c3, {2, 0, 1}), c3->gen()) == c3->one());
    CHECK(poly_eval(DensePoly(c3), c3->gen()).is_zero());
}

TEST_CASE("Frobenius: (x - (1+T))^p = x^p - (1+T)^p mod p") {
    for (auto p : oracle::odd_primes_upto(31))
        for (i64 d : {-1, 2, 3, 5, 7}) {
            if (d % p == 0) continue;
            const auto ctx = make_quad_ctx(make_modulus(p, 1), d);
            const QuadElem alpha = ctx->elem(1, 1);
            const DensePoly lhs = poly_pow(DensePoly::linear(alpha), static_cast<u64>(p));
            const DensePoly rhs =
                DensePoly::monomial(ctx, {1, 0}, static_cast<std::size_t>(p)) - DensePoly::constant(quad_pow(alpha, p));
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("product_tree over general factors") {
    std::mt19937_64 rng(31);
    const auto ctx = make_quad_ctx(make_modulus(17, 2), 3);
    std::vector<DensePoly> fs;
    DensePoly fold(ctx, {1});
    for (int i = 0; i < 13; ++i) {
        fs.push_back(random_poly(ctx, 1 + rng() % 40, rng));
        fold = poly_mul_schoolbook(fold, fs.back());
    }
    CHECK(product_tree(ctx, fs) == fold);
    CHECK(product_tree(ctx, std::span<const DensePoly>{}) == DensePoly(ctx, {1}));
}
