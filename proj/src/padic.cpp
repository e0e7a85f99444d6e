#include "cyheight/padic.hpp"

#include <algorithm>

#include "cyheight/errors.hpp"

namespace cyheight {

std::string Valuation::to_string() const {
    return exact ? std::to_string(value) : ">=" + std::to_string(value);
}

PadicContext PadicContext::build(const FiniteField& field, std::uint32_t m, std::uint32_t k) {
    const std::uint32_t p = field.characteristic();
    const std::uint64_t q = field.order();
    if (m == 0 || gcd_u64(p, m) != 1) {
        throw InvalidInput("build_padic_context: need gcd(p, m) = 1");
    }
    if ((q - 1) % m != 0) {
        throw InvalidInput("build_padic_context: m = " + std::to_string(m) +
                           " does not divide q - 1 = " + std::to_string(q - 1));
    }
    if (k < 1) throw InvalidInput("build_padic_context: precision must be >= 1");

    PadicContext ctx;
    ctx.p_ = p;
    ctx.f_ = field.degree();
    ctx.m_ = m;
    ctx.k_ = k;
    ctx.q_ = q;
    mpz_ui_pow_ui(ctx.pk_.get_mpz_t(), p, k);
    for (auto c : field.modulus()) ctx.lifted_modulus_.emplace_back(static_cast<unsigned long>(c));

    // Residue generator^{-(q-1)/m}; see the class comment for the sign.
    const std::uint64_t step = (q - 1) / m;
    ctx.zeta_residue_ = field.exp((q - 1) - step);
    if (field.element_order(ctx.zeta_residue_) != m) {
        throw InternalError("build_padic_context: residue of zeta has wrong order");
    }

    UnramifiedElt z(ctx.f_, 0);
    const auto digits = field.coeffs(ctx.zeta_residue_);
    for (std::uint32_t i = 0; i < ctx.f_; ++i) z[i] = static_cast<unsigned long>(digits[i]);

    // z -> z^q contracts towards the Teichmueller representative, one p-adic
    // digit per step.
    bool stable = false;
    for (std::uint32_t iter = 0; iter <= k + 1; ++iter) {
        UnramifiedElt next = ctx.pow(z, q);
        if (next == z) {
            stable = true;
            break;
        }
        z = std::move(next);
    }
    if (!stable) throw InternalError("build_padic_context: Teichmueller lift did not stabilise");

    ctx.powers_.reserve(m);
    UnramifiedElt cur = ctx.one();
    for (std::uint32_t i = 0; i < m; ++i) {
        ctx.powers_.push_back(cur);
        cur = ctx.mul(cur, z);
    }
    if (cur != ctx.one()) throw InternalError("build_padic_context: zeta_hat^m != 1");
    return ctx;
}

UnramifiedElt PadicContext::one() const {
    UnramifiedElt e(f_, 0);
    e[0] = 1;
    return e;
}

UnramifiedElt PadicContext::mul(const UnramifiedElt& a, const UnramifiedElt& b) const {
    std::vector<BigInt> prod(2 * f_ - 1, 0);
    for (std::uint32_t i = 0; i < f_; ++i) {
        if (a[i] == 0) continue;
        for (std::uint32_t j = 0; j < f_; ++j) prod[i + j] += a[i] * b[j];
    }
    for (std::size_t d = prod.size(); d-- > f_;) {
        if (prod[d] == 0) continue;
        const BigInt c = prod[d];
        for (std::uint32_t j = 0; j < f_; ++j) prod[d - f_ + j] -= c * lifted_modulus_[j];
        prod[d] = 0;
    }
    prod.resize(f_);
    for (auto& c : prod) {
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), pk_.get_mpz_t());
    }
    return prod;
}

UnramifiedElt PadicContext::pow(UnramifiedElt a, std::uint64_t e) const {
    UnramifiedElt result = one();
    for (; e; e >>= 1) {
        if (e & 1) result = mul(result, a);
        if (e > 1) a = mul(a, a);
    }
    return result;
}

UnramifiedElt PadicContext::reduce(const CycInt& z) const {
    if (z.conductor() != m_) {
        throw InvalidInput("valuation_at_P: conductor " + std::to_string(z.conductor()) +
                           " does not match context m = " + std::to_string(m_));
    }
    UnramifiedElt acc(f_, 0);
    const auto& c = z.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        const auto& w = powers_[i % m_];
        for (std::uint32_t j = 0; j < f_; ++j) acc[j] += c[i] * w[j];
    }
    for (auto& x : acc) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), pk_.get_mpz_t());
    return acc;
}

std::int64_t p_adic_valuation(const BigInt& n, std::uint32_t p) {
    if (n == 0) throw InvalidInput("p_adic_valuation of zero");
    BigInt rest = abs(n);
    std::int64_t v = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++v;
    }
    return v;
}

Valuation valuation_at_P(const CycInt& z, const PadicContext& ctx) {
    const UnramifiedElt image = ctx.reduce(z);
    std::int64_t best = ctx.precision();
    for (const auto& c : image) {
        if (c != 0) best = std::min(best, p_adic_valuation(c, ctx.p()));
    }
    if (best >= static_cast<std::int64_t>(ctx.precision())) {
        return Valuation::at_least(ctx.precision());
    }
    return Valuation::exactly(best);
}

std::uint32_t default_precision(std::uint32_t f, std::uint32_t r) { return f * r + 2; }

Valuation valuation_with_retry(const CycInt& z, const FiniteField& field, const PadicContext& ctx,
                               std::uint32_t max_doublings) {
    Valuation v = valuation_at_P(z, ctx);
    std::uint32_t k = ctx.precision();
    for (std::uint32_t attempt = 0; !v.exact && attempt < max_doublings; ++attempt) {
        k *= 2;
        v = valuation_at_P(z, PadicContext::build(field, ctx.m(), k));
    }
    if (!v.exact) {
        throw PrecisionExhausted("valuation still >= " + std::to_string(k) + " after " +
                                 std::to_string(max_doublings) + " precision doublings");
    }
    return v;
}

}  // namespace cyheight
