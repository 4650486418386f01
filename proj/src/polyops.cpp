#include "quadcong/polyops.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <ostream>
#include <string>

namespace quadcong {

namespace {

using Coeffs = std::vector<QuadPair>;
using View = std::span<const QuadPair>;

// Subtrees with at least this many leaves are split across threads, down to
// kMaxParallelDepth levels below the root.
constexpr std::size_t kParallelLeaves = std::size_t{1} << 13;
constexpr int kMaxParallelDepth = 3;
// Leaf blocks of the subproduct tree are folded directly.
constexpr std::size_t kTreeLeaf = 8;

class Kernel {
public:
    explicit Kernel(const QuadCtx& ctx) : ctx_(ctx), m_(ctx.modulus()), d_(ctx.d_raw()) {
        const u128 sq = static_cast<u128>(m_.n() - 1) * (m_.n() - 1);
        const u128 room = std::numeric_limits<u128>::max() - m_.n();
        // Each term adds up to 2(N-1)^2 to the cross accumulator.
        const u128 b = sq == 0 ? room : room / (2 * sq);
        budget_ = b > u128{1} << 32 ? std::size_t{1} << 32 : static_cast<std::size_t>(b);
    }

    const QuadCtx& ctx() const noexcept { return ctx_; }

    // out[0 .. nf+ng-1) = f * g, every accumulator reduced lazily.
    void schoolbook(View f, View g, QuadPair* out) const {
        const std::size_t nf = f.size(), ng = g.size();
        const u64 n = m_.n();
        for (std::size_t k = 0; k + 1 < nf + ng; ++k) {
            const std::size_t lo = k >= ng ? k - ng + 1 : 0;
            const std::size_t hi = std::min(k, nf - 1);
            u128 aa = 0, bb = 0, ab = 0;
            std::size_t run = 0;
            for (std::size_t i = lo; i <= hi; ++i) {
                const QuadPair x = f[i], y = g[k - i];
                aa += static_cast<u128>(x.a) * y.a;
                bb += static_cast<u128>(x.b) * y.b;
                ab += static_cast<u128>(x.a) * y.b + static_cast<u128>(x.b) * y.a;
                if (++run == budget_) {
                    aa %= n;
                    bb %= n;
                    ab %= n;
                    run = 0;
                }
            }
            const u64 re = m_.add(m_.reduce_wide(aa), m_.mul(d_, m_.reduce_wide(bb)));
            out[k] = {re, m_.reduce_wide(ab)};
        }
    }

    Coeffs mul(View f, View g) const {
        if (f.empty() || g.empty()) return {};
        Coeffs out(f.size() + g.size() - 1);
        mul_into(f, g, out.data());
        return out;
    }

    Coeffs add(View f, View g) const {
        if (f.size() < g.size()) std::swap(f, g);
        Coeffs out(f.begin(), f.end());
        for (std::size_t i = 0; i < g.size(); ++i) out[i] = ctx_.add(out[i], g[i]);
        return out;
    }

    void accumulate(QuadPair* dst, View src) const {
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = ctx_.add(dst[i], src[i]);
    }

    // dst = dst * (x - r), growing by one coefficient.
    void mul_linear(Coeffs& c, QuadPair r) const {
        const QuadPair neg_r = ctx_.neg(r);
        c.push_back(c.back());
        for (std::size_t i = c.size() - 2; i > 0; --i) c[i] = ctx_.add(c[i - 1], ctx_.mul(neg_r, c[i]));
        c[0] = ctx_.mul(neg_r, c[0]);
    }

private:
    // Writes (not accumulates) f * g into out.
    void mul_into(View f, View g, QuadPair* out) const {
        if (f.size() < g.size()) std::swap(f, g);
        const std::size_t nf = f.size(), ng = g.size();
        if (ng <= kKaratsubaThreshold) {
            schoolbook(f, g, out);
            return;
        }
        std::fill(out, out + nf + ng - 1, QuadPair{});
        if (2 * ng <= nf) {
            // Unbalanced: slice the long operand into ng-sized blocks.
            Coeffs part(2 * ng - 1);
            for (std::size_t off = 0; off < nf; off += ng) {
                const View block = f.subspan(off, std::min(ng, nf - off));
                const std::size_t len = block.size() + ng - 1;
                mul_into(block, g, part.data());
                accumulate(out + off, View(part.data(), len));
            }
            return;
        }
        const std::size_t m = (nf + 1) / 2;
        const View f0 = f.first(m), f1 = f.subspan(m);
        const View g0 = g.first(m), g1 = g.subspan(m);
        const Coeffs z0 = mul(f0, g0);
        const Coeffs z2 = mul(f1, g1);
        Coeffs z1 = mul(add(f0, f1), add(g0, g1));
        for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = ctx_.sub(z1[i], z0[i]);
        for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = ctx_.sub(z1[i], z2[i]);
        accumulate(out, z0);
        accumulate(out + m, View(z1.data(), std::min(z1.size(), nf + ng - 1 - m)));
        accumulate(out + 2 * m, z2);
    }

    const QuadCtx& ctx_;
    const PrimePowerModulus& m_;
    u64 d_;
    std::size_t budget_;
};

void trim(Coeffs& c) {
    while (!c.empty() && c.back() == QuadPair{}) c.pop_back();
}

Coeffs fold_linear(const Kernel& K, View roots) {
    Coeffs c{{1 % K.ctx().modulus().n(), 0}};
    c.reserve(roots.size() + 1);
    for (const QuadPair& r : roots) K.mul_linear(c, r);
    return c;
}

Coeffs tree_linear(const Kernel& K, View roots, int depth) {
    if (roots.size() <= kTreeLeaf) return fold_linear(K, roots);
    const std::size_t mid = roots.size() / 2;
    if (roots.size() >= kParallelLeaves && depth < kMaxParallelDepth) {
        auto left = std::async(std::launch::async, [&] { return tree_linear(K, roots.first(mid), depth + 1); });
        Coeffs right = tree_linear(K, roots.subspan(mid), depth + 1);
        return K.mul(left.get(), right);
    }
    return K.mul(tree_linear(K, roots.first(mid), depth + 1), tree_linear(K, roots.subspan(mid), depth + 1));
}

Coeffs tree_general(const Kernel& K, std::span<const DensePoly> fs) {
    if (fs.empty()) return {{1 % K.ctx().modulus().n(), 0}};
    if (fs.size() == 1) return Coeffs(fs[0].raw().begin(), fs[0].raw().end());
    const std::size_t mid = fs.size() / 2;
    return K.mul(tree_general(K, fs.first(mid)), tree_general(K, fs.subspan(mid)));
}

const QuadCtxPtr& common_ctx(const DensePoly& f, const DensePoly& g) {
    if (!f.ctx()->same_ring(*g.ctx()))
        throw Error(Errc::ContextMismatch, "polynomials over different quadratic rings");
    return f.ctx();
}

} // namespace

DensePoly::DensePoly(QuadCtxPtr ctx) : ctx_(std::move(ctx)) {}

DensePoly::DensePoly(QuadCtxPtr ctx, std::vector<QuadPair> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    normalize();
}

DensePoly::DensePoly(QuadCtxPtr ctx, std::initializer_list<i64> rational_coeffs) : ctx_(std::move(ctx)) {
    coeffs_.reserve(rational_coeffs.size());
    for (i64 c : rational_coeffs) coeffs_.push_back(ctx_->pair(c, 0));
    normalize();
}

void DensePoly::normalize() noexcept { trim(coeffs_); }

DensePoly DensePoly::constant(const QuadElem& c) { return {c.ctx(), std::vector<QuadPair>{c.raw()}}; }

DensePoly DensePoly::monomial(QuadCtxPtr ctx, QuadPair c, std::size_t e) {
    std::vector<QuadPair> v(e + 1);
    v[e] = c;
    return {std::move(ctx), std::move(v)};
}

DensePoly DensePoly::linear(const QuadElem& root) {
    const auto& ctx = root.ctx();
    return {ctx, std::vector<QuadPair>{ctx->neg(root.raw()), {1 % ctx->modulus().n(), 0}}};
}

QuadElem DensePoly::coeff(std::size_t i) const { return ctx_->wrap(raw_coeff(i)); }

std::vector<QuadElem> DensePoly::coeffs() const {
    std::vector<QuadElem> out;
    out.reserve(coeffs_.size());
    for (const QuadPair& c : coeffs_) out.push_back(ctx_->wrap(c));
    return out;
}

DensePoly DensePoly::operator-() const {
    std::vector<QuadPair> v(coeffs_.size());
    std::transform(coeffs_.begin(), coeffs_.end(), v.begin(), [&](QuadPair c) { return ctx_->neg(c); });
    return {ctx_, std::move(v)};
}

DensePoly operator+(const DensePoly& f, const DensePoly& g) {
    const auto& ctx = common_ctx(f, g);
    return {ctx, Kernel(*ctx).add(f.coeffs_, g.coeffs_)};
}

DensePoly operator-(const DensePoly& f, const DensePoly& g) { return f + (-g); }

DensePoly operator*(const DensePoly& f, const DensePoly& g) { return poly_mul(f, g); }

std::ostream& operator<<(std::ostream& os, const DensePoly& f) {
    if (f.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = f.size(); i-- > 0;) {
        const QuadPair c = f.raw()[i];
        if (c == QuadPair{}) continue;
        if (!first) os << " + ";
        first = false;
        const bool unit_coeff = c == QuadPair{1, 0};
        if (c.b != 0)
            os << "(" << c.a << "+" << c.b << "T)";
        else if (!unit_coeff || i == 0)
            os << c.a;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os;
}

std::optional<std::size_t> first_difference(const DensePoly& f, const DensePoly& g) {
    const std::size_t n = std::max(f.size(), g.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!(f.raw_coeff(i) == g.raw_coeff(i))) return i;
    return std::nullopt;
}

DensePoly poly_mul(const DensePoly& f, const DensePoly& g) {
    const auto& ctx = common_ctx(f, g);
    return {ctx, Kernel(*ctx).mul(f.raw(), g.raw())};
}

DensePoly poly_mul_schoolbook(const DensePoly& f, const DensePoly& g) {
    const auto& ctx = common_ctx(f, g);
    if (f.is_zero() || g.is_zero()) return DensePoly(ctx);
    Coeffs out(f.size() + g.size() - 1);
    Kernel(*ctx).schoolbook(f.raw(), g.raw(), out.data());
    return {ctx, std::move(out)};
}

DensePoly poly_pow(const DensePoly& f, u64 e) {
    DensePoly result(f.ctx(), {1});
    DensePoly base = f;
    while (e) {
        if (e & 1) result = poly_mul(result, base);
        e >>= 1;
        if (e) base = poly_mul(base, base);
    }
    return result;
}

DensePoly product_of_linear_factors(const QuadCtxPtr& ctx, std::span<const QuadPair> roots) {
    return {ctx, tree_linear(Kernel(*ctx), roots, 0)};
}

DensePoly product_of_linear_factors(const QuadCtxPtr& ctx, std::span<const QuadElem> roots) {
    std::vector<QuadPair> raw;
    raw.reserve(roots.size());
    for (const QuadElem& r : roots) {
        if (!ctx->same_ring(*r.ctx())) throw Error(Errc::ContextMismatch, "root from a different quadratic ring");
        raw.push_back(r.raw());
    }
    return product_of_linear_factors(ctx, raw);
}

DensePoly product_of_linear_factors_naive(const QuadCtxPtr& ctx, std::span<const QuadPair> roots) {
    return {ctx, fold_linear(Kernel(*ctx), roots)};
}

DensePoly product_tree(const QuadCtxPtr& ctx, std::span<const DensePoly> factors) {
    for (const DensePoly& f : factors)
        if (!ctx->same_ring(*f.ctx())) throw Error(Errc::ContextMismatch, "factor from a different quadratic ring");
    return {ctx, tree_general(Kernel(*ctx), factors)};
}

DensePoly poly_div_exact(const DensePoly& f, const DensePoly& g) {
    const auto& ctx = common_ctx(f, g);
    if (g.is_zero()) throw Error(Errc::DivisionByZeroPoly, "division by the zero polynomial");
    const QuadPair lc_inv = ctx->inv(g.raw().back());
    if (f.is_zero()) return DensePoly(ctx);
    const std::size_t nf = f.size(), ng = g.size();
    if (nf < ng) throw Error(Errc::NonZeroRemainder, "dividend degree below divisor degree");

    Coeffs r(f.raw().begin(), f.raw().end());
    Coeffs q(nf - ng + 1);
    const View gv = g.raw();
    for (std::size_t i = nf - ng + 1; i-- > 0;) {
        const QuadPair c = ctx->mul(r[i + ng - 1], lc_inv);
        q[i] = c;
        if (c == QuadPair{}) continue;
        for (std::size_t j = 0; j < ng; ++j) r[i + j] = ctx->sub(r[i + j], ctx->mul(c, gv[j]));
    }
    for (std::size_t i = 0; i + 1 < ng; ++i)
        if (!(r[i] == QuadPair{}))
            throw Error(Errc::NonZeroRemainder, "remainder has nonzero coefficient at x^" + std::to_string(i));
    return {ctx, std::move(q)};
}

DensePoly shifted_power_pm1(const QuadElem& c) {
    const auto& ctx = c.ctx();
    if (ctx->k() != 1) throw Error(Errc::RequiresModP, "the binomial shortcut only holds mod p (k = 1)");
    const std::size_t top = ctx->p() - 1;
    Coeffs v(top + 1);
    QuadPair power{1, 0};
    for (std::size_t j = 0; j <= top; ++j) {
        v[top - j] = power;
        power = ctx->mul(power, c.raw());
    }
    return {ctx, std::move(v)};
}

QuadElem poly_eval(const DensePoly& f, const QuadElem& x0) {
    const auto& ctx = f.ctx();
    if (!ctx->same_ring(*x0.ctx())) throw Error(Errc::ContextMismatch, "evaluation point from a different ring");
    QuadPair acc{};
    for (std::size_t i = f.size(); i-- > 0;) acc = ctx->add(ctx->mul(acc, x0.raw()), f.raw()[i]);
    return ctx->wrap(acc);
}

} // namespace quadcong
