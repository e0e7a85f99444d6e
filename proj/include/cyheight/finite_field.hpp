#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace cyheight {

bool is_prime(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Least f >= 1 with p^f = 1 (mod m). Throws InvalidInput if gcd(p, m) != 1
/// or m < 2.
std::uint32_t order_mod(std::uint64_t p, std::uint64_t m);

/// Validated (p, m, r) triple for the Fermat variety X_0^m + ... + X_{r+1}^m = 0,
/// together with f = ord_m(p) and q = p^f.
struct FermatParams {
    std::uint32_t p = 0;
    std::uint32_t m = 0;
    std::uint32_t r = 0;
    std::uint32_t f = 0;
    std::uint64_t q = 0;

    static FermatParams make(std::uint64_t p, std::uint64_t m, std::uint64_t r);
};

/// Element of F_q, stored as its integer encoding sum c_i p^i.
struct FqElement {
    std::uint32_t code = 0;

    friend constexpr auto operator<=>(FqElement, FqElement) = default;
};

struct FieldBudget {
    std::uint64_t max_order = std::uint64_t{1} << 24;
};

/// F_q = F_p[x]/(modulus) with a fixed primitive generator and dense
/// log/antilog tables. Immutable after construction.
class FiniteField {
  public:
    /// Smallest monic irreducible modulus and smallest primitive generator, both
    /// in lexicographic coefficient order (leading coefficient most significant,
    /// which coincides with the integer encoding order).
    static FiniteField build(std::uint64_t p, std::uint64_t f, const FieldBudget& budget = {});

    /// Rebuilds tables from a known modulus and generator and verifies both.
    /// Used by the on-disk cache.
    static FiniteField from_parts(std::uint32_t p, std::uint32_t f,
                                  std::vector<std::uint32_t> modulus, FqElement generator);

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return f_; }
    std::uint32_t order() const noexcept { return q_; }

    /// Coefficients c_0 .. c_f of the monic modulus, low degree first.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    FqElement generator() const noexcept { return generator_; }

    FqElement zero() const noexcept { return {0}; }
    FqElement one() const noexcept { return {1}; }
    FqElement from_int(std::int64_t n) const;
    FqElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coeffs(FqElement x) const;

    FqElement add(FqElement a, FqElement b) const noexcept;
    FqElement sub(FqElement a, FqElement b) const noexcept;
    FqElement neg(FqElement a) const noexcept { return {neg_[a.code]}; }
    FqElement mul(FqElement a, FqElement b) const noexcept;
    FqElement inv(FqElement a) const;
    FqElement pow(FqElement a, std::uint64_t e) const noexcept;
    FqElement frobenius(FqElement a) const noexcept { return pow(a, p_); }

    /// generator^e for any e >= 0.
    FqElement exp(std::uint64_t e) const noexcept { return {exp_[e % (q_ - 1)]}; }

    /// Discrete log in [0, q-2]; throws InvalidInput for 0.
    std::uint32_t dlog(FqElement x) const;
    /// Unchecked table access for inner loops (x must be nonzero).
    std::uint32_t dlog_unchecked(FqElement x) const noexcept { return log_[x.code]; }

    /// Multiplicative order of a nonzero element.
    std::uint64_t element_order(FqElement x) const;

    const std::vector<std::uint32_t>& log_table() const noexcept { return log_; }

    friend bool operator==(const FiniteField& a, const FiniteField& b) {
        return a.p_ == b.p_ && a.f_ == b.f_ && a.modulus_ == b.modulus_ &&
               a.generator_ == b.generator_ && a.log_ == b.log_ && a.exp_ == b.exp_;
    }

  private:
    FiniteField(std::uint32_t p, std::uint32_t f, std::vector<std::uint32_t> modulus);
    FqElement poly_mul(FqElement a, FqElement b) const;
    void build_tables(FqElement generator);

    std::uint32_t p_ = 0;
    std::uint32_t f_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> pow_p_;  // p^i, i < f
    std::vector<std::uint32_t> neg_;
    // Digitwise addition has no carries, so the low and high halves of the
    // encoding add independently: split tables of size (p^h)^2 each.
    std::uint32_t split_ = 0;  // p^{floor(f/2)}, 0 when the split tables are absent
    std::uint32_t high_ = 0;   // p^{ceil(f/2)}
    std::vector<std::uint32_t> add_lo_;
    std::vector<std::uint32_t> add_hi_;
    FqElement generator_;
    std::vector<std::uint32_t> log_;  // log_[0] unused
    std::vector<std::uint32_t> exp_;  // size q - 1
};

/// True if the monic polynomial (coefficients low degree first, leading 1
/// included) is irreducible over F_p.
bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p);

}  // namespace cyheight
