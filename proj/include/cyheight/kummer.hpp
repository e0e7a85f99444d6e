#pragma once

#include <cstdint>
#include <span>

#include "cyheight/height.hpp"

namespace cyheight {

struct EllipticBudget {
    std::uint64_t max_p = 1'000'000;
};

/// y^2 = x^3 + A x + B over F_p, p prime >= 5, nonsingular.
struct EllipticCurve {
    std::uint64_t p = 0;
    std::int64_t A = 0;
    std::int64_t B = 0;

    static EllipticCurve make(std::uint64_t p, std::int64_t A, std::int64_t B);
};

/// #E(F_p) including the point at infinity: 1 + sum_x (1 + (x^3 + A x + B | p)).
std::uint64_t ec_count_points(const EllipticCurve& E, const EllipticBudget& budget = {});
/// a_p = p + 1 - #E(F_p).
std::int64_t ec_trace(const EllipticCurve& E, const EllipticBudget& budget = {});
/// 0 iff a_p = 0 (supersingular, p >= 5), else 1.
std::uint32_t ec_p_rank(const EllipticCurve& E, const EllipticBudget& budget = {});

/// Dimension n and p-rank f(A) of an abelian variety, 0 <= f(A) <= n.
struct AbelianData {
    std::uint32_t n = 0;
    std::uint32_t p_rank = 0;

    static AbelianData make(std::uint32_t n, std::uint32_t p_rank);
};

/// Dimension and p-rank of a product are the sums over the factors.
AbelianData product(std::span<const AbelianData> factors);

/// 1 if ordinary, 2 if f(A) = n - 1, infinity if f(A) <= n - 2. Requires n >= 2.
HeightValue abelian_height(const AbelianData& d);

/// Height of a Kummer Calabi-Yau resolution of A/G, |G| prime to p (attested
/// by the caller, not checked). The formal groups of X and A are isomorphic.
HeightValue kummer_height(const AbelianData& d);

/// E: y^2 = x^3 + 1 over F_p, A = E^3, X the resolution of A/<sigma x sigma x sigma>.
/// p-rank of E comes from point counting.
HeightValue kummer_example_height(std::uint64_t p);

/// Same variety viewed as a rigid Calabi-Yau: the height is infinite iff the
/// reduction of its intermediate Jacobian (isomorphic to E, since zeta_3 is a
/// quadratic integer) is supersingular, and 1 otherwise.
HeightValue rigid_example_height(std::uint64_t p);

}  // namespace cyheight
