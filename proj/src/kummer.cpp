#include "cyheight/kummer.hpp"

#include <string>
#include <vector>

#include "cyheight/errors.hpp"
#include "cyheight/finite_field.hpp"
#include "cyheight/lattice.hpp"

namespace cyheight {

namespace {

std::uint64_t mod_p(std::int64_t v, std::uint64_t p) {
    const auto sp = static_cast<std::int64_t>(p);
    std::int64_t r = v % sp;
    if (r < 0) r += sp;
    return static_cast<std::uint64_t>(r);
}

}  // namespace

EllipticCurve EllipticCurve::make(std::uint64_t p, std::int64_t A, std::int64_t B) {
    if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
    if (p < 5) throw InvalidInput("elliptic curves need p >= 5 (a_p = 0 test), got " + std::to_string(p));
    const unsigned __int128 a = mod_p(A, p), b = mod_p(B, p);
    const unsigned __int128 disc = (4 * (a * a % p * a % p) + 27 * (b * b % p)) % p;
    if (disc == 0) {
        throw InvalidInput("singular curve: 4A^3 + 27B^2 = 0 mod " + std::to_string(p));
    }
    return {p, A, B};
}

std::uint64_t ec_count_points(const EllipticCurve& E, const EllipticBudget& budget) {
    const std::uint64_t p = E.p;
    if (p > budget.max_p) {
        throw BudgetExceeded("elliptic-p", "p = " + std::to_string(p) +
                                               " exceeds the point-count budget of " +
                                               std::to_string(budget.max_p));
    }
    // Number of square roots of each residue.
    std::vector<std::uint8_t> roots(p, 0);
    for (std::uint64_t y = 0; y < p; ++y) ++roots[y * y % p];
    const std::uint64_t a = mod_p(E.A, p), b = mod_p(E.B, p);
    std::uint64_t count = 1;  // point at infinity
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t rhs = (x * x % p * x + a * x + b) % p;
        count += roots[rhs];
    }
    return count;
}

std::int64_t ec_trace(const EllipticCurve& E, const EllipticBudget& budget) {
    const auto n = static_cast<std::int64_t>(ec_count_points(E, budget));
    const std::int64_t trace = static_cast<std::int64_t>(E.p) + 1 - n;
    if (static_cast<double>(trace) * static_cast<double>(trace) > 4.0 * static_cast<double>(E.p)) {
        throw InternalError("ec_trace: Hasse bound violated");
    }
    return trace;
}

std::uint32_t ec_p_rank(const EllipticCurve& E, const EllipticBudget& budget) {
    return ec_trace(E, budget) == 0 ? 0 : 1;
}

AbelianData AbelianData::make(std::uint32_t n, std::uint32_t p_rank) {
    if (p_rank > n) throw InvalidInput("p-rank exceeds the dimension");
    return {n, p_rank};
}

AbelianData product(std::span<const AbelianData> factors) {
    AbelianData out;
    for (const auto& d : factors) {
        out.n += d.n;
        out.p_rank += d.p_rank;
    }
    return out;
}

HeightValue abelian_height(const AbelianData& d) {
    if (d.n < 2) throw InvalidInput("abelian_height: dimension must be >= 2");
    if (d.p_rank > d.n) throw InvalidInput("abelian_height: p-rank exceeds the dimension");
    if (d.p_rank == d.n) return HeightValue::finite(1);
    if (d.p_rank + 1 == d.n) return HeightValue::finite(2);
    return HeightValue::infinite();
}

HeightValue kummer_height(const AbelianData& d) { return abelian_height(d); }

HeightValue kummer_example_height(std::uint64_t p) {
    const auto E = EllipticCurve::make(p, 0, 1);
    const AbelianData e{1, ec_p_rank(E)};
    const AbelianData cube[] = {e, e, e};
    return kummer_height(product(cube));
}

HeightValue rigid_example_height(std::uint64_t p) {
    // Intermediate Jacobian lattice for omega = zeta_3 versus H_1(E) = Z + Z omega.
    const QuadPoly omega_poly{1, 1, 1};
    const QuadLattice jac = period_lattice(omega_poly);
    if (lattice_index(jac, standard_lattice(omega_poly)) != 1 || !(jac == standard_lattice(omega_poly))) {
        throw InternalError("rigid_example_height: intermediate Jacobian not isomorphic to E");
    }
    const auto E = EllipticCurve::make(p, 0, 1);
    return ec_p_rank(E) == 0 ? HeightValue::infinite() : HeightValue::finite(1);
}

}  // namespace cyheight
