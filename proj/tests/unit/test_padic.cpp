#include <doctest.h>

#include <numeric>

#include "cyheight/errors.hpp"
#include "cyheight/padic.hpp"
#include "support.hpp"

using namespace cyheight;

namespace {

struct Setup {
    FiniteField field;
    std::uint32_t m;
};

Setup setup(std::uint32_t p, std::uint32_t m) {
    return {FiniteField::build(p, order_mod(p, m)), m};
}

CycInt n(std::uint32_t m, const BigInt& v) { return CycInt::from_integer(m, v); }

// Norm down to Q as the product of all conjugates; a rational integer.
BigInt norm(const CycInt& z) {
    const std::uint32_t m = z.conductor();
    CycInt prod = n(m, 1);
    for (std::uint32_t t = 1; t < m; ++t)
        if (std::gcd(t, m) == 1) prod *= galois_apply(t, z);
    REQUIRE(prod.is_rational_integer());
    return prod.coeffs()[0];
}

}  // namespace

TEST_CASE("padic context examples") {
    const auto f9 = FiniteField::build(3, 2);
    const auto ctx = PadicContext::build(f9, 4, 4);
    CHECK(ctx.modulus_pk() == 81);
    const auto z4 = ctx.pow(ctx.zeta_hat(), 4);
    CHECK(z4 == ctx.one());
    auto minus_one = ctx.one();
    minus_one[0] = 80;
    CHECK(ctx.pow(ctx.zeta_hat(), 2) == minus_one);

    const auto trivial = PadicContext::build(f9, 1, 5);
    CHECK(trivial.zeta_hat() == trivial.one());
}

TEST_CASE("zeta_hat reduces to an element of order m, with the documented sign") {
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 4}, {2, 5}, {11, 5}, {7, 5}, {2, 7}, {5, 12}}) {
        const auto s = setup(p, m);
        const auto ctx = PadicContext::build(s.field, m, 6);
        const std::uint64_t q = s.field.order();
        CHECK(s.field.element_order(ctx.zeta_residue()) == m);
        CHECK(ctx.zeta_residue() == s.field.exp((q - 1) - (q - 1) / m));
        // Teichmueller: fixed by the q-power map.
        CHECK(ctx.pow(ctx.zeta_hat(), q) == ctx.zeta_hat());
        CHECK(ctx.pow(ctx.zeta_hat(), m) == ctx.one());
    }
}

TEST_CASE("padic context errors") {
    const auto f9 = FiniteField::build(3, 2);
    CHECK_THROWS_AS(PadicContext::build(f9, 5, 4), InvalidInput);  // 5 does not divide 8
    CHECK_THROWS_AS(PadicContext::build(f9, 3, 4), InvalidInput);  // gcd(3, 3) != 1
    CHECK_THROWS_AS(PadicContext::build(f9, 4, 0), InvalidInput);
    const auto ctx = PadicContext::build(f9, 4, 4);
    CHECK_THROWS_AS(ctx.reduce(CycInt::zeta_power(8, 1)), InvalidInput);
}

TEST_CASE("valuation examples") {
    const auto s = setup(2, 5);  // f = 4, q = 16
    const auto ctx = PadicContext::build(s.field, 5, 14);
    CHECK(valuation_at_P(n(5, 2), ctx) == Valuation::exactly(1));
    CHECK(valuation_at_P(n(5, 1), ctx) == Valuation::exactly(0));
    CHECK(valuation_at_P(n(5, 16), ctx) == Valuation::exactly(4));
    CHECK(valuation_at_P(n(5, 48), ctx) == Valuation::exactly(4));
    // 1 - zeta is a unit away from 5.
    CHECK(valuation_at_P(n(5, 1) - CycInt::zeta_power(5, 1), ctx) == Valuation::exactly(0));
    CHECK(valuation_at_P(CycInt(5), ctx) == Valuation::at_least(14));
    CHECK(p_adic_valuation(BigInt(-96), 2) == 5);
    CHECK_THROWS_AS(p_adic_valuation(BigInt(0), 2), InvalidInput);
    CHECK(default_precision(4, 3) == 14);
    CHECK(Valuation::exactly(3).to_string() == "3");
    CHECK(Valuation::at_least(8).to_string() == ">=8");
}

TEST_CASE("valuation_with_retry raises the precision") {
    const auto s = setup(3, 4);
    const auto ctx = PadicContext::build(s.field, 4, 3);
    const CycInt big = n(4, BigInt(3) * 3 * 3 * 3 * 3 * 3 * 3) * CycInt::zeta_power(4, 1);
    CHECK(valuation_at_P(big, ctx) == Valuation::at_least(3));
    CHECK(valuation_with_retry(big, s.field, ctx) == Valuation::exactly(7));
    CHECK_THROWS_AS(valuation_with_retry(CycInt(4), s.field, ctx, 2), PrecisionExhausted);
}

TEST_CASE("property: valuation is additive on products") {
    auto g = testing::rng(5);
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 4}, {2, 5}, {11, 5}, {2, 7}, {3, 8}, {7, 3}}) {
        const auto s = setup(p, m);
        const std::uint32_t k = 40;
        const auto ctx = PadicContext::build(s.field, m, k);
        for (int it = 0; it < 80; ++it) {
            const auto a = testing::random_cyc(g, m, 30), b = testing::random_cyc(g, m, 30);
            if (a.is_zero() || b.is_zero()) continue;
            const auto va = valuation_at_P(a, ctx), vb = valuation_at_P(b, ctx), vab = valuation_at_P(a * b, ctx);
            if (va.exact && vb.exact && va.value + vb.value < k) {
                REQUIRE(vab.exact);
                REQUIRE(vab.value == va.value + vb.value);
            }
        }
    }
}

TEST_CASE("property: valuation against the norm, and the conjugate pair") {
    // v_p(N(z)) = sum over all t in (Z/m)^* of v_P(sigma_t z).
    auto g = testing::rng(8);
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 4}, {2, 5}, {11, 5}, {2, 7}, {3, 8}, {13, 3}, {5, 8}}) {
        const auto s = setup(p, m);
        const auto ctx = PadicContext::build(s.field, m, 60);
        for (int it = 0; it < 40; ++it) {
            // Mix in factors of p so valuations are not all zero.
            CycInt z = testing::random_cyc(g, m, 6);
            if (it % 2) z *= testing::random_cyc(g, m, 3) * n(m, p) + testing::random_cyc(g, m, 3) * n(m, p * p);
            if (z.is_zero()) continue;
            std::int64_t total = 0;
            for (std::uint32_t t = 1; t < m; ++t) {
                if (std::gcd(t, m) != 1) continue;
                const auto v = valuation_at_P(galois_apply(t, z), ctx);
                REQUIRE(v.exact);
                total += v.value;
            }
            REQUIRE(total == p_adic_valuation(norm(z), p));

            const auto v = valuation_at_P(z, ctx), vc = valuation_at_P(galois_apply(m - 1, z), ctx),
                       vn = valuation_at_P(modulus_squared(z), ctx);
            REQUIRE(vn.exact);
            REQUIRE(v.value + vc.value == vn.value);
        }
    }
}
