#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cyheight {

using BigInt = mpz_class;

/// Integer polynomial, low degree first.
using IntPoly = std::vector<BigInt>;

/// Phi_m by exact division of x^m - 1 by Phi_d for the proper divisors d | m.
IntPoly cyclotomic_polynomial(std::uint32_t m);

std::uint32_t euler_phi(std::uint32_t m);

/// Shared per-conductor data: Phi_m and the reduction of every x^k, k < m, to
/// the power basis 1, zeta, ..., zeta^{phi(m)-1}.
class CyclotomicBasis {
  public:
    static std::shared_ptr<const CyclotomicBasis> get(std::uint32_t m);

    std::uint32_t conductor() const noexcept { return m_; }
    std::uint32_t rank() const noexcept { return phi_; }
    const IntPoly& phi_poly() const noexcept { return phi_poly_; }
    /// Row k (k < m) holds the coordinates of zeta^k.
    std::span<const std::int64_t> power(std::uint32_t k) const {
        return {powers_.data() + static_cast<std::size_t>(k) * phi_, phi_};
    }

    explicit CyclotomicBasis(std::uint32_t m);

  private:
    std::uint32_t m_;
    std::uint32_t phi_;
    IntPoly phi_poly_;
    std::vector<std::int64_t> powers_;
};

/// Exact element of Z[zeta_m] in the basis 1, zeta, ..., zeta^{phi(m)-1}.
class CycInt {
  public:
    /// Zero of Z[zeta_m].
    explicit CycInt(std::uint32_t m);

    static CycInt from_integer(std::uint32_t m, const BigInt& n);
    /// zeta^k for any integer k.
    static CycInt zeta_power(std::uint32_t m, std::int64_t k);
    /// Image of sum_k c_k x^k under x -> zeta (any length; exponents taken mod m).
    static CycInt from_cyclic(std::uint32_t m, std::span<const std::int64_t> c);
    static CycInt from_cyclic(std::uint32_t m, std::span<const BigInt> c);
    /// Coordinates in the power basis; length must be phi(m).
    static CycInt from_coeffs(std::uint32_t m, std::vector<BigInt> coeffs);

    std::uint32_t conductor() const noexcept { return basis_->conductor(); }
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const;
    /// True if every coordinate except the constant one vanishes.
    bool is_rational_integer() const;

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator-() const;
    CycInt operator*(const CycInt& o) const;
    CycInt& operator+=(const CycInt& o);
    CycInt& operator*=(const CycInt& o);

    friend bool operator==(const CycInt& a, const CycInt& b) {
        return a.conductor() == b.conductor() && a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const;

  private:
    CycInt(std::shared_ptr<const CyclotomicBasis> basis, std::vector<BigInt> coeffs);
    void check_same(const CycInt& o) const;

    std::shared_ptr<const CyclotomicBasis> basis_;
    std::vector<BigInt> coeffs_;
};

CycInt cyc_add(const CycInt& a, const CycInt& b);
CycInt cyc_mul(const CycInt& a, const CycInt& b);
CycInt cyc_neg(const CycInt& a);
CycInt cyc_pow(const CycInt& a, std::uint64_t e);

/// sigma_t : zeta -> zeta^t. Throws InvalidInput when gcd(t, m) != 1.
CycInt galois_apply(std::int64_t t, const CycInt& z);

/// z * conj(z), where conjugation is sigma_{-1}.
CycInt modulus_squared(const CycInt& z);

/// Evaluates at exp(2 pi i / m). Reporting only.
std::complex<double> complex_embed(const CycInt& z);

}  // namespace cyheight
