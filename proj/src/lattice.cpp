#include "cyheight/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cyheight/errors.hpp"

namespace cyheight {

namespace {

using Row = std::pair<mpz_class, mpz_class>;

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

// Floor-style remainder into [0, n).
mpz_class mod_floor(const mpz_class& x, const mpz_class& n) {
    mpz_class out;
    mpz_fdiv_r(out.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    return out;
}

// Row HNF of an integer n x 2 matrix; throws when the rank is below 2.
std::pair<Row, Row> hnf2(std::vector<Row> rows) {
    // Euclid on the first column until a single row has a nonzero entry there.
    while (true) {
        auto nonzero = [](const Row& r) { return r.first != 0; };
        auto count = std::count_if(rows.begin(), rows.end(), nonzero);
        if (count <= 1) break;
        auto pivot = std::min_element(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
            if (x.first == 0) return false;
            if (y.first == 0) return true;
            return abs(x.first) < abs(y.first);
        });
        const Row piv = *pivot;
        for (auto it = rows.begin(); it != rows.end(); ++it) {
            if (it == pivot || it->first == 0) continue;
            mpz_class k;
            mpz_tdiv_q(k.get_mpz_t(), it->first.get_mpz_t(), piv.first.get_mpz_t());
            it->first -= k * piv.first;
            it->second -= k * piv.second;
        }
    }
    auto lead = std::find_if(rows.begin(), rows.end(), [](const Row& r) { return r.first != 0; });
    if (lead == rows.end()) throw InvalidInput("lattice is rank-deficient");
    Row r1 = *lead;
    if (r1.first < 0) {
        r1.first = -r1.first;
        r1.second = -r1.second;
    }
    mpz_class g = 0;
    for (auto it = rows.begin(); it != rows.end(); ++it) {
        if (it != lead) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), it->second.get_mpz_t());
    }
    if (g == 0) throw InvalidInput("lattice is rank-deficient");
    r1.second = mod_floor(r1.second, g);
    return {r1, Row{0, g}};
}

}  // namespace

QuadPoly QuadPoly::make(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (a == 0) throw InvalidInput("minimal polynomial must be quadratic (a != 0)");
    if (a < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    if (std::gcd(std::gcd(a, b), c) != 1) throw InvalidInput("minimal polynomial must be primitive");
    QuadPoly poly{a, b, c};
    if (static_cast<__int128>(b) * b - static_cast<__int128>(4) * a * c >= 0) {
        throw InvalidInput("omega must be non-real (negative discriminant)");
    }
    return poly;
}

std::complex<double> QuadPoly::omega() const {
    const double re = -static_cast<double>(b) / (2.0 * static_cast<double>(a));
    const double im = std::sqrt(static_cast<double>(-discriminant())) / (2.0 * static_cast<double>(a));
    return {re, im};
}

QuadElement omega_power(const QuadPoly& poly, unsigned k) {
    // omega^2 = -(b omega + c) / a.
    QuadElement x{1, 0};
    const mpq_class a(poly.a), b(poly.b), c(poly.c);
    for (unsigned i = 0; i < k; ++i) {
        // (u + v omega) omega = u omega + v omega^2 = -v c / a + (u - v b / a) omega
        QuadElement next{-x.v * c / a, x.u - x.v * b / a};
        next.u.canonicalize();
        next.v.canonicalize();
        x = std::move(next);
    }
    return x;
}

QuadLattice QuadLattice::from_generators(const QuadPoly& poly, std::vector<QuadElement> generators) {
    if (generators.size() < 2) throw InvalidInput("lattice needs at least two generators");
    mpz_class denom = 1;
    for (const auto& g : generators) {
        denom = lcm(denom, g.u.get_den());
        denom = lcm(denom, g.v.get_den());
    }
    std::vector<Row> rows;
    rows.reserve(generators.size());
    for (const auto& g : generators) {
        const mpq_class u = g.u * denom, v = g.v * denom;
        rows.emplace_back(u.get_num(), v.get_num());
    }
    const auto [r1, r2] = hnf2(std::move(rows));
    QuadLattice L;
    L.poly_ = poly;
    L.generators_ = std::move(generators);
    const mpq_class d(denom);
    auto scaled = [&](const mpz_class& x) {
        mpq_class out = mpq_class(x) / d;
        out.canonicalize();
        return out;
    };
    L.basis_ = {QuadElement{scaled(r1.first), scaled(r1.second)},
                QuadElement{scaled(r2.first), scaled(r2.second)}};
    for (const auto& g : L.generators_) {
        if (!L.contains(g)) throw InternalError("lattice basis does not span its generators");
    }
    return L;
}

bool QuadLattice::contains(const QuadElement& x) const {
    // x = k1 b1 + k2 b2 with b1 = (u1, v1), b2 = (0, v2).
    const mpq_class k1 = x.u / basis_[0].u;
    if (k1.get_den() != 1) return false;
    const mpq_class k2 = (x.v - k1 * basis_[0].v) / basis_[1].v;
    return k2.get_den() == 1;
}

std::string QuadLattice::to_string() const {
    std::ostringstream os;
    os << "<(" << basis_[0].u << ", " << basis_[0].v << "), (" << basis_[1].u << ", "
       << basis_[1].v << ")>";
    return os.str();
}

QuadLattice standard_lattice(const QuadPoly& poly) {
    return QuadLattice::from_generators(poly, {QuadElement{1, 0}, QuadElement{0, 1}});
}

QuadLattice period_lattice(const QuadPoly& poly) {
    const QuadPoly checked = QuadPoly::make(poly.a, poly.b, poly.c);
    std::vector<QuadElement> gens;
    for (unsigned k = 0; k <= 3; ++k) gens.push_back(omega_power(checked, k));
    return QuadLattice::from_generators(checked, std::move(gens));
}

mpq_class lattice_index(const QuadLattice& L1, const QuadLattice& L2) {
    if (!(L1.poly() == L2.poly())) throw InvalidInput("lattice_index: lattices use different omega");
    const mpq_class d1 = abs(L1.determinant()), d2 = abs(L2.determinant());
    if (d1 == 0 || d2 == 0) throw InvalidInput("lattice_index: rank-deficient lattice");
    mpq_class out = d1 / d2;
    out.canonicalize();
    return out;
}

}  // namespace cyheight
