#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cyheight/alpha.hpp"
#include "cyheight/character_sums.hpp"
#include "cyheight/cyclotomic.hpp"
#include "cyheight/finite_field.hpp"
#include "cyheight/height.hpp"
#include "cyheight/padic.hpp"

namespace cyheight {

struct EnumerationBudget {
    std::uint64_t max_alphas = 1'000'000;
};

/// |A_{m,r}| = ((m-1)^{r+2} + (-1)^{r+2} (m-1)) / m.
std::uint64_t count_A(std::uint32_t m, std::uint32_t r);

/// All of A_{m,r} in lexicographic order.
std::vector<AlphaVector> enumerate_A(std::uint32_t m, std::uint32_t r,
                                     const EnumerationBudget& budget = {});

/// H = {p^j mod m : 0 <= j < f}, in order of j.
std::vector<std::uint32_t> subgroup_H(std::uint64_t p, std::uint32_t m);

/// A_H(alpha) = sum_{t in H} floor( sum_{j=1}^{r+1} <t a_j / m> ). a_0 is excluded.
std::int64_t stickelberger_AH(const AlphaVector& alpha, std::span<const std::uint32_t> H);
std::int64_t stickelberger_AH(const AlphaVector& alpha, std::uint64_t p);

struct Slope {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Slope make(std::int64_t num, std::int64_t den);
    friend auto operator<=>(const Slope& a, const Slope& b) {
        return a.num * b.den <=> b.num * a.den;
    }
    friend bool operator==(const Slope& a, const Slope& b) { return a.num == b.num && a.den == b.den; }
    std::string to_string() const;
};

/// Newton slopes {A_H(alpha) / f}, sorted by slope.
struct SlopeMultiset {
    std::uint32_t denominator = 1;  // f
    std::vector<std::pair<Slope, std::uint64_t>> entries;

    std::uint64_t total() const;
    std::uint64_t multiplicity(const Slope& s) const;
    /// Invariant under lambda -> r - lambda.
    bool symmetric(std::uint32_t r) const;
};

struct FermatHeight {
    HeightValue height;
    std::uint64_t deficient = 0;  // #{alpha : A_H(alpha) < f}
    std::uint64_t total = 0;      // |A_{m,r}|
};

FermatHeight fermat_height_details(std::uint64_t p, std::uint32_t m, std::uint32_t r,
                                   const EnumerationBudget& budget = {});
/// Finite(c) for c = #{alpha : A_H(alpha) < f} >= 1, Infinite when c = 0.
HeightValue height_fermat(std::uint64_t p, std::uint32_t m, std::uint32_t r);

/// Prediction for m = r + 2, r >= 2: 1 if p = 1 (mod m), infinity otherwise.
/// Empty when the pair is outside that range.
std::optional<HeightValue> theorem_height(std::uint64_t p, std::uint32_t m, std::uint32_t r);

SlopeMultiset newton_slopes(std::uint64_t p, std::uint32_t m, std::uint32_t r,
                            const EnumerationBudget& budget = {});

/// Z(X/F_q, T) = P(T)^{(-1)^{r-1}} / ((1-T)(1-qT)...(1-q^r T)).
struct ZetaData {
    std::uint32_t p = 0, m = 0, r = 0, f = 0;
    std::uint64_t q = 0;
    std::vector<BigInt> P_coeffs;  // constant term first
    std::vector<BigInt> pole_roots;  // 1, q, ..., q^r
    int sign_exponent = 1;           // (-1)^{r-1}
};

struct ZetaOptions {
    unsigned threads = 1;
    JacobiSumTable* table = nullptr;  // optional shared memo, must match (p, m)
    EnumerationBudget budget;
};

/// Expands prod_alpha (1 - j(alpha) T) in Z[zeta_m][T]. Throws InternalError if
/// a coefficient is not a rational integer.
ZetaData zeta_fermat(std::uint64_t p, std::uint32_t m, std::uint32_t r, const ZetaOptions& opts = {});

/// N_s from the zeta data: sum_i q^{is} + (-1)^r p_s, with the power sums p_s
/// recovered from P(T) by Newton's identities.
BigInt point_count_from_zeta(const ZetaData& zeta, std::uint32_t s);

struct PointCountBudget {
    std::uint64_t max_candidates = 100'000'000;
};

/// Projective solutions of X_0^m + ... + X_{r+1}^m = 0 over F_{q^s}, by
/// enumeration of normalised representatives.
std::uint64_t brute_force_point_count(std::uint64_t p, std::uint32_t m, std::uint32_t r,
                                      std::uint32_t s, const PointCountBudget& budget = {});

/// h[l] = #{alpha : sum_{j=0}^{r+1} <a_j/m> = l + 1}, l = 0..r.
struct HodgeVector {
    std::vector<std::uint64_t> h;
    std::uint64_t total() const;
};

HodgeVector hodge_numbers_fermat(std::uint32_t m, std::uint32_t r,
                                 const EnumerationBudget& budget = {});

/// -1 mod m lies in <p>. Requires r even, m >= 4, gcd(p, m) = 1.
bool fully_rigged_fermat(std::uint64_t p, std::uint32_t m, std::uint32_t r);

struct ArtinComparison {
    bool additive_type = false;  // height infinite
    bool fully_rigged = false;
};

/// Requires r even and m = r + 2.
ArtinComparison artin_comparison(std::uint64_t p, std::uint32_t m, std::uint32_t r);

struct StickelbergerRow {
    AlphaVector alpha;
    std::int64_t a_h = 0;
    Valuation valuation;
    bool weil_ok = false;  // j * conj(j) == q^r exactly
    bool equal() const { return valuation.exact && valuation.value == a_h; }
};

struct StickelbergerOptions {
    unsigned threads = 1;
    std::uint32_t precision = 0;  // 0 selects f * r + 2
    std::uint32_t max_doublings = 8;
    JacobiSumTable* table = nullptr;  // must match (p, m)
    EnumerationBudget budget;
};

/// ord_P j(alpha) against A_H(alpha) for every alpha in A_{m,r}, in enumeration order.
std::vector<StickelbergerRow> stickelberger_rows(std::uint64_t p, std::uint32_t m, std::uint32_t r,
                                                 const StickelbergerOptions& opts = {});

}  // namespace cyheight
