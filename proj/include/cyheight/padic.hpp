#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyheight/cyclotomic.hpp"
#include "cyheight/finite_field.hpp"

namespace cyheight {

/// Either an exact valuation v < k, or the lower bound "v >= k" when the
/// image vanishes at precision k.
struct Valuation {
    std::int64_t value = 0;
    bool exact = true;

    static Valuation exactly(std::int64_t v) { return {v, true}; }
    static Valuation at_least(std::int64_t k) { return {k, false}; }

    friend bool operator==(const Valuation&, const Valuation&) = default;
    std::string to_string() const;
};

/// Element of R_k = (Z/p^k)[x]/(lifted modulus), coordinates low degree first.
using UnramifiedElt = std::vector<BigInt>;

/// The unramified ring R_k of rank f over Z/p^k together with a Teichmueller
/// root of unity zeta_hat of order m. The map zeta -> zeta_hat is reduction
/// modulo the canonical prime P above p.
///
/// Convention: zeta_hat reduces to generator^{-(q-1)/m} in F_q. With the
/// character chi(generator) = zeta used for Jacobi sums, this is the prime for
/// which ord_P j(alpha) equals the Stickelberger exponent A_H(alpha) as written
/// (the opposite choice yields A_H(-alpha)).
class PadicContext {
  public:
    static PadicContext build(const FiniteField& field, std::uint32_t m, std::uint32_t k);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t f() const noexcept { return f_; }
    std::uint32_t m() const noexcept { return m_; }
    std::uint32_t precision() const noexcept { return k_; }
    const BigInt& modulus_pk() const noexcept { return pk_; }
    const std::vector<BigInt>& lifted_modulus() const noexcept { return lifted_modulus_; }
    const UnramifiedElt& zeta_hat() const noexcept { return powers_.at(1 % m_); }
    /// zeta_hat^i for 0 <= i < m.
    const UnramifiedElt& zeta_hat_power(std::uint32_t i) const { return powers_.at(i % m_); }
    /// Residue of zeta_hat in F_q.
    FqElement zeta_residue() const noexcept { return zeta_residue_; }

    UnramifiedElt mul(const UnramifiedElt& a, const UnramifiedElt& b) const;
    UnramifiedElt pow(UnramifiedElt a, std::uint64_t e) const;
    UnramifiedElt one() const;

    /// Image of z under zeta -> zeta_hat.
    UnramifiedElt reduce(const CycInt& z) const;

  private:
    std::uint32_t p_ = 0;
    std::uint32_t f_ = 0;
    std::uint32_t m_ = 0;
    std::uint32_t k_ = 0;
    std::uint64_t q_ = 0;
    BigInt pk_;
    std::vector<BigInt> lifted_modulus_;  // monic, degree f
    FqElement zeta_residue_;
    std::vector<UnramifiedElt> powers_;
};

/// Minimum p-adic valuation over the coordinates of z's image in R_k.
Valuation valuation_at_P(const CycInt& z, const PadicContext& ctx);

/// p-adic valuation of a nonzero integer.
std::int64_t p_adic_valuation(const BigInt& n, std::uint32_t p);

/// Default starting precision f * r + 2: the Weil bound caps expected
/// valuations of weight-r Jacobi sums at f * r.
std::uint32_t default_precision(std::uint32_t f, std::uint32_t r);

/// valuation_at_P, rebuilding the context at doubled precision whenever the
/// result is only a lower bound. Throws PrecisionExhausted after max_doublings
/// retries.
Valuation valuation_with_retry(const CycInt& z, const FiniteField& field, const PadicContext& ctx,
                               std::uint32_t max_doublings = 8);

}  // namespace cyheight
