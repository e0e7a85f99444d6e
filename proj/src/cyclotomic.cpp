#include "cyheight/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "cyheight/errors.hpp"
#include "cyheight/finite_field.hpp"

namespace cyheight {

namespace {

// a / b for monic b with exact division asserted.
IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    IntPoly rem = a;
    const std::size_t db = b.size() - 1;
    IntPoly quot(a.size() - db, 0);
    for (std::size_t i = quot.size(); i-- > 0;) {
        const BigInt c = rem[i + db];
        quot[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[i + j] -= c * b[j];
    }
    for (const auto& c : rem) {
        if (c != 0) throw InternalError("cyclotomic_polynomial: inexact division");
    }
    return quot;
}

}  // namespace

IntPoly cyclotomic_polynomial(std::uint32_t m) {
    if (m == 0) throw InvalidInput("cyclotomic_polynomial: m must be >= 1");
    IntPoly poly(m + 1, 0);
    poly[0] = -1;
    poly[m] = 1;
    for (std::uint32_t d = 1; d < m; ++d) {
        if (m % d == 0) poly = exact_div(poly, cyclotomic_polynomial(d));
    }
    return poly;
}

std::uint32_t euler_phi(std::uint32_t m) {
    std::uint32_t count = 0;
    for (std::uint32_t k = 1; k <= m; ++k) {
        if (gcd_u64(k, m) == 1) ++count;
    }
    return count;
}

CyclotomicBasis::CyclotomicBasis(std::uint32_t m)
    : m_(m), phi_(euler_phi(m)), phi_poly_(cyclotomic_polynomial(m)) {
    powers_.assign(static_cast<std::size_t>(m_) * phi_, 0);
    // Row k = x * row (k-1) reduced once by the monic Phi_m.
    std::vector<std::int64_t> cur(phi_, 0);
    cur[0] = 1;
    for (std::uint32_t k = 0; k < m_; ++k) {
        std::copy(cur.begin(), cur.end(), powers_.begin() + static_cast<std::ptrdiff_t>(k) * phi_);
        const std::int64_t top = cur[phi_ - 1];
        for (std::uint32_t i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (std::uint32_t i = 0; i < phi_; ++i) {
            cur[i] -= top * phi_poly_[i].get_si();
        }
    }
}

std::shared_ptr<const CyclotomicBasis> CyclotomicBasis::get(std::uint32_t m) {
    static std::mutex mutex;
    static std::map<std::uint32_t, std::shared_ptr<const CyclotomicBasis>> registry;
    if (m == 0) throw InvalidInput("conductor must be >= 1");
    std::lock_guard lock(mutex);
    auto& slot = registry[m];
    if (!slot) slot = std::make_shared<const CyclotomicBasis>(m);
    return slot;
}

CycInt::CycInt(std::uint32_t m) : basis_(CyclotomicBasis::get(m)) {
    coeffs_.assign(basis_->rank(), 0);
}

CycInt::CycInt(std::shared_ptr<const CyclotomicBasis> basis, std::vector<BigInt> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {}

CycInt CycInt::from_integer(std::uint32_t m, const BigInt& n) {
    CycInt z(m);
    z.coeffs_[0] = n;
    return z;
}

CycInt CycInt::zeta_power(std::uint32_t m, std::int64_t k) {
    CycInt z(m);
    std::int64_t e = k % static_cast<std::int64_t>(m);
    if (e < 0) e += m;
    auto row = z.basis_->power(static_cast<std::uint32_t>(e));
    for (std::size_t i = 0; i < row.size(); ++i) z.coeffs_[i] = static_cast<long>(row[i]);
    return z;
}

CycInt CycInt::from_cyclic(std::uint32_t m, std::span<const std::int64_t> c) {
    CycInt z(m);
    const auto rank = z.basis_->rank();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        auto row = z.basis_->power(static_cast<std::uint32_t>(k % m));
        const BigInt ck = static_cast<long>(c[k]);
        for (std::uint32_t i = 0; i < rank; ++i) {
            if (row[i] != 0) z.coeffs_[i] += ck * static_cast<long>(row[i]);
        }
    }
    return z;
}

CycInt CycInt::from_cyclic(std::uint32_t m, std::span<const BigInt> c) {
    CycInt z(m);
    const auto rank = z.basis_->rank();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        auto row = z.basis_->power(static_cast<std::uint32_t>(k % m));
        for (std::uint32_t i = 0; i < rank; ++i) {
            if (row[i] != 0) z.coeffs_[i] += c[k] * static_cast<long>(row[i]);
        }
    }
    return z;
}

CycInt CycInt::from_coeffs(std::uint32_t m, std::vector<BigInt> coeffs) {
    auto basis = CyclotomicBasis::get(m);
    if (coeffs.size() != basis->rank()) {
        throw InvalidInput("CycInt::from_coeffs: expected " + std::to_string(basis->rank()) +
                           " coordinates, got " + std::to_string(coeffs.size()));
    }
    return CycInt(std::move(basis), std::move(coeffs));
}

bool CycInt::is_zero() const {
    for (const auto& c : coeffs_) {
        if (c != 0) return false;
    }
    return true;
}

bool CycInt::is_rational_integer() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) return false;
    }
    return true;
}

void CycInt::check_same(const CycInt& o) const {
    if (conductor() != o.conductor()) {
        throw InvalidInput("conductor mismatch: " + std::to_string(conductor()) + " vs " +
                           std::to_string(o.conductor()));
    }
}

CycInt CycInt::operator+(const CycInt& o) const {
    CycInt out = *this;
    out += o;
    return out;
}

CycInt& CycInt::operator+=(const CycInt& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

CycInt CycInt::operator-(const CycInt& o) const { return *this + (-o); }

CycInt CycInt::operator-() const {
    CycInt out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

CycInt CycInt::operator*(const CycInt& o) const {
    check_same(o);
    const std::uint32_t n = basis_->rank();
    IntPoly prod(2 * n - 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::uint32_t j = 0; j < n; ++j) {
            if (o.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    // Reduce modulo the monic Phi_m from the top.
    const IntPoly& phi = basis_->phi_poly();
    for (std::size_t k = prod.size(); k-- > n;) {
        const BigInt c = prod[k];
        if (c == 0) continue;
        for (std::uint32_t j = 0; j <= n; ++j) prod[k - n + j] -= c * phi[j];
    }
    prod.resize(n);
    return CycInt(basis_, std::move(prod));
}

CycInt& CycInt::operator*=(const CycInt& o) {
    *this = *this * o;
    return *this;
}

std::string CycInt::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0) os << "-";
        first = false;
        const BigInt mag = abs(coeffs_[i]);
        if (i == 0) {
            os << mag;
        } else {
            if (mag != 1) os << mag << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

CycInt cyc_add(const CycInt& a, const CycInt& b) { return a + b; }
CycInt cyc_mul(const CycInt& a, const CycInt& b) { return a * b; }
CycInt cyc_neg(const CycInt& a) { return -a; }

CycInt cyc_pow(const CycInt& a, std::uint64_t e) {
    CycInt result = CycInt::from_integer(a.conductor(), 1);
    CycInt base = a;
    for (; e; e >>= 1) {
        if (e & 1) result *= base;
        if (e > 1) base *= base;
    }
    return result;
}

CycInt galois_apply(std::int64_t t, const CycInt& z) {
    const std::uint32_t m = z.conductor();
    std::int64_t tm = t % static_cast<std::int64_t>(m);
    if (tm < 0) tm += m;
    if (gcd_u64(static_cast<std::uint64_t>(tm), m) != 1) {
        throw InvalidInput("galois_apply: t = " + std::to_string(t) +
                           " is not a unit mod " + std::to_string(m));
    }
    std::vector<BigInt> cyclic(m, 0);
    const auto& c = z.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        cyclic[(static_cast<std::uint64_t>(tm) * i) % m] += c[i];
    }
    return CycInt::from_cyclic(m, std::span<const BigInt>(cyclic));
}

CycInt modulus_squared(const CycInt& z) {
    return z * galois_apply(static_cast<std::int64_t>(z.conductor()) - 1, z);
}

std::complex<double> complex_embed(const CycInt& z) {
    const double angle = 2.0 * std::numbers::pi / z.conductor();
    std::complex<double> acc = 0.0;
    const auto& c = z.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc += c[i].get_d() * std::polar(1.0, angle * static_cast<double>(i));
    }
    return acc;
}

}  // namespace cyheight
