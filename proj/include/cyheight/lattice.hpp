#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace cyheight {

/// a x^2 + b x + c with a > 0, gcd(a, b, c) = 1 and b^2 - 4ac < 0; omega is
/// its root with positive imaginary part.
struct QuadPoly {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 1;

    /// Validates and normalises the sign of a. Throws InvalidInput for a = 0,
    /// non-primitive coefficients or a real root.
    static QuadPoly make(std::int64_t a, std::int64_t b, std::int64_t c);
    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    std::complex<double> omega() const;

    friend bool operator==(const QuadPoly&, const QuadPoly&) = default;
};

/// u + v omega with rational u, v.
struct QuadElement {
    mpq_class u;
    mpq_class v;

    friend bool operator==(const QuadElement& x, const QuadElement& y) { return x.u == y.u && x.v == y.v; }
};

/// Rank-2 Z-module inside Q(omega). The basis is the row Hermite normal form
/// of the generators: b1 = (u1, v1), b2 = (0, v2) with u1 > 0, v2 > 0 and
/// 0 <= v1 < v2, which is unique for the module.
class QuadLattice {
  public:
    static QuadLattice from_generators(const QuadPoly& poly, std::vector<QuadElement> generators);

    const QuadPoly& poly() const noexcept { return poly_; }
    const std::vector<QuadElement>& generators() const noexcept { return generators_; }
    const QuadElement& basis(std::size_t i) const { return basis_.at(i); }

    /// Covolume in (u, v) coordinates: u1 * v2.
    mpq_class determinant() const { return basis_[0].u * basis_[1].v; }
    bool contains(const QuadElement& x) const;

    std::string to_string() const;

    friend bool operator==(const QuadLattice& x, const QuadLattice& y) {
        return x.poly_ == y.poly_ && x.basis_ == y.basis_;
    }

  private:
    QuadPoly poly_;
    std::vector<QuadElement> generators_;
    std::vector<QuadElement> basis_;
};

/// omega^k = x_k + y_k omega, reduced with the minimal polynomial.
QuadElement omega_power(const QuadPoly& poly, unsigned k);

/// Z + Z omega.
QuadLattice standard_lattice(const QuadPoly& poly);

/// The Z-module spanned by 1, omega, omega^2, omega^3.
QuadLattice period_lattice(const QuadPoly& poly);

/// Generalised index [L2 : L1] = det(L1) / det(L2). Throws InvalidInput if the
/// lattices belong to different omegas.
mpq_class lattice_index(const QuadLattice& L1, const QuadLattice& L2);

}  // namespace cyheight
