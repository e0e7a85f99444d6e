#include "cyheight/finite_field.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "cyheight/errors.hpp"

namespace cyheight {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first, over F_p

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    // p is prime
    std::uint64_t result = 1, base = a % p;
    for (std::uint64_t e = p - 2; e; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

// a mod b, b nonzero (not necessarily monic).
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint64_t lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * b[i] % p) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    return poly_rem(std::move(prod), mod, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod, std::uint32_t p) {
    Poly result{1};
    result = poly_rem(result, mod, p);
    base = poly_rem(base, mod, p);
    for (; e; e >>= 1) {
        if (e & 1) result = poly_mulmod(result, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::uint32_t order_mod(std::uint64_t p, std::uint64_t m) {
    if (m < 2) throw InvalidInput("order_mod: modulus must be >= 2, got " + std::to_string(m));
    if (gcd_u64(p, m) != 1) {
        throw InvalidInput("order_mod: gcd(" + std::to_string(p) + ", " + std::to_string(m) +
                           ") != 1");
    }
    const std::uint64_t base = p % m;
    std::uint64_t x = base;
    std::uint32_t f = 1;
    while (x != 1 % m) {
        x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * base % m);
        ++f;
    }
    return f;
}

FermatParams FermatParams::make(std::uint64_t p, std::uint64_t m, std::uint64_t r) {
    if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
    if (m < 3) throw InvalidInput("m must be >= 3, got " + std::to_string(m));
    if (r < 1) throw InvalidInput("r must be >= 1, got " + std::to_string(r));
    if (gcd_u64(p, m) != 1) {
        throw InvalidInput("gcd(p, m) != 1 for p = " + std::to_string(p) +
                           ", m = " + std::to_string(m));
    }
    if (p > std::numeric_limits<std::uint32_t>::max() ||
        m > std::numeric_limits<std::uint32_t>::max() || r > 1000) {
        throw InvalidInput("parameters out of supported range");
    }
    FermatParams out;
    out.p = static_cast<std::uint32_t>(p);
    out.m = static_cast<std::uint32_t>(m);
    out.r = static_cast<std::uint32_t>(r);
    out.f = order_mod(p, m);
    unsigned __int128 q = 1;
    for (std::uint32_t i = 0; i < out.f; ++i) {
        q *= p;
        if (q > (static_cast<unsigned __int128>(1) << 62)) {
            throw BudgetExceeded("q", "q = p^f exceeds 2^62 for p = " + std::to_string(p) +
                                          ", f = " + std::to_string(out.f));
        }
    }
    out.q = static_cast<std::uint64_t>(q);
    return out;
}

bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p) {
    Poly g(monic.begin(), monic.end());
    for (auto& c : g) c %= p;
    trim(g);
    if (g.size() < 2) return false;
    const std::size_t n = g.size() - 1;
    if (n == 1) return true;
    // Rabin: x^{p^n} = x mod g, and gcd(x^{p^{n/l}} - x, g) = 1 for primes l | n.
    const Poly x{0, 1};
    auto frob_iterate = [&](std::size_t times) {
        Poly y = x;
        for (std::size_t i = 0; i < times; ++i) y = poly_powmod(y, p, g, p);
        return y;
    };
    auto minus_x = [&](Poly y) {
        if (y.size() < 2) y.resize(2, 0);
        y[1] = (y[1] + p - 1) % p;
        trim(y);
        return y;
    };
    if (!minus_x(frob_iterate(n)).empty()) return false;
    for (std::uint64_t l : prime_factors(n)) {
        Poly d = poly_gcd(minus_x(frob_iterate(n / l)), g, p);
        if (d.size() != 1) return false;
    }
    return true;
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t f, std::vector<std::uint32_t> modulus)
    : p_(p), f_(f), modulus_(std::move(modulus)) {
    q_ = 1;
    pow_p_.resize(f_);
    for (std::uint32_t i = 0; i < f_; ++i) {
        pow_p_[i] = q_;
        q_ *= p_;
    }
    neg_.resize(q_);
    for (std::uint32_t c = 0; c < q_; ++c) {
        std::uint32_t rest = c, out = 0;
        for (std::uint32_t i = 0; i < f_; ++i) {
            const std::uint32_t d = rest % p_;
            rest /= p_;
            out += ((p_ - d) % p_) * pow_p_[i];
        }
        neg_[c] = out;
    }
    if (f_ > 1 && p_ != 2 && std::uint64_t{q_} * p_ <= (std::uint64_t{1} << 20)) {
        const std::uint32_t low_digits = f_ / 2;
        split_ = pow_p_[low_digits];
        high_ = q_ / split_;
        auto digit_add = [&](std::uint32_t a, std::uint32_t b, std::uint32_t digits) {
            std::uint32_t out = 0;
            for (std::uint32_t i = 0; i < digits; ++i) {
                out += ((a % p_ + b % p_) % p_) * pow_p_[i];
                a /= p_;
                b /= p_;
            }
            return out;
        };
        add_lo_.resize(std::size_t{split_} * split_);
        for (std::uint32_t a = 0; a < split_; ++a) {
            for (std::uint32_t b = 0; b < split_; ++b) add_lo_[a * split_ + b] = digit_add(a, b, low_digits);
        }
        add_hi_.resize(std::size_t{high_} * high_);
        for (std::uint32_t a = 0; a < high_; ++a) {
            for (std::uint32_t b = 0; b < high_; ++b) {
                add_hi_[a * high_ + b] = digit_add(a, b, f_ - low_digits) * split_;
            }
        }
    }
}

FiniteField FiniteField::build(std::uint64_t p, std::uint64_t f, const FieldBudget& budget) {
    if (!is_prime(p)) throw InvalidInput("build_field: p = " + std::to_string(p) + " is not prime");
    if (f < 1) throw InvalidInput("build_field: extension degree must be >= 1");
    unsigned __int128 q = 1;
    for (std::uint64_t i = 0; i < f; ++i) {
        q *= p;
        if (q > budget.max_order) {
            throw BudgetExceeded("field-order", "build_field: p^f exceeds the table budget q <= " +
                                                    std::to_string(budget.max_order));
        }
    }
    const auto p32 = static_cast<std::uint32_t>(p);
    const auto f32 = static_cast<std::uint32_t>(f);
    const auto q32 = static_cast<std::uint32_t>(q);

    std::vector<std::uint32_t> modulus(f32 + 1, 0);
    modulus[f32] = 1;
    if (f32 > 1) {
        // Tail (c_{f-1}, ..., c_0) in lexicographic order is the integer order of
        // t = sum c_i p^i.
        bool found = false;
        for (std::uint32_t t = 0; t < q32 && !found; ++t) {
            std::uint32_t rest = t;
            for (std::uint32_t i = 0; i < f32; ++i) {
                modulus[i] = rest % p32;
                rest /= p32;
            }
            found = modulus[0] != 0 && is_irreducible_mod_p(modulus, p32);
        }
        if (!found) throw InternalError("build_field: no irreducible modulus found");
    }

    FiniteField field(p32, f32, std::move(modulus));
    const std::uint64_t group = q32 - 1;
    const auto factors = prime_factors(group);
    auto slow_pow = [&](FqElement a, std::uint64_t e) {
        FqElement r = field.one();
        for (; e; e >>= 1) {
            if (e & 1) r = field.poly_mul(r, a);
            a = field.poly_mul(a, a);
        }
        return r;
    };
    for (std::uint32_t c = 1; c < q32; ++c) {
        const FqElement g{c};
        const bool primitive = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t l) {
            return slow_pow(g, group / l) != field.one();
        });
        if (primitive) {
            field.build_tables(g);
            return field;
        }
    }
    throw InternalError("build_field: no primitive element found");
}

FiniteField FiniteField::from_parts(std::uint32_t p, std::uint32_t f,
                                    std::vector<std::uint32_t> modulus, FqElement generator) {
    if (!is_prime(p) || f < 1 || modulus.size() != f + 1 || modulus.back() != 1) {
        throw InvalidInput("from_parts: malformed field description");
    }
    if (f > 1 && !is_irreducible_mod_p(modulus, p)) {
        throw InvalidInput("from_parts: modulus is reducible");
    }
    FiniteField field(p, f, std::move(modulus));
    if (generator.code == 0 || generator.code >= field.q_) {
        throw InvalidInput("from_parts: generator out of range");
    }
    field.build_tables(generator);
    return field;
}

FqElement FiniteField::poly_mul(FqElement a, FqElement b) const {
    if (f_ == 1) {
        return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.code) * b.code % p_)};
    }
    Poly pa = coeffs(a), pb = coeffs(b);
    Poly prod = poly_mulmod(pa, pb, modulus_, p_);
    prod.resize(f_, 0);
    return from_coeffs(prod);
}

void FiniteField::build_tables(FqElement generator) {
    log_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    std::vector<bool> seen(q_, false);
    FqElement x = one();
    for (std::uint32_t e = 0; e < q_ - 1; ++e) {
        if (seen[x.code] || x.code == 0) {
            throw InvalidInput("generator " + std::to_string(generator.code) +
                               " is not primitive in F_" + std::to_string(q_));
        }
        seen[x.code] = true;
        exp_[e] = x.code;
        log_[x.code] = e;
        x = poly_mul(x, generator);
    }
    if (x != one()) throw InvalidInput("generator order does not divide q - 1");
    generator_ = generator;
}

FqElement FiniteField::from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
}

FqElement FiniteField::from_coeffs(std::span<const std::uint32_t> coeffs) const {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < coeffs.size() && i < f_; ++i) code += (coeffs[i] % p_) * pow_p_[i];
    return {code};
}

std::vector<std::uint32_t> FiniteField::coeffs(FqElement x) const {
    std::vector<std::uint32_t> out(f_);
    std::uint32_t rest = x.code;
    for (std::uint32_t i = 0; i < f_; ++i) {
        out[i] = rest % p_;
        rest /= p_;
    }
    return out;
}

FqElement FiniteField::add(FqElement a, FqElement b) const noexcept {
    if (f_ == 1) {
        const std::uint32_t s = a.code + b.code;
        return {s >= p_ ? s - p_ : s};
    }
    if (p_ == 2) return {a.code ^ b.code};
    if (split_ != 0) {
        return {add_lo_[(a.code % split_) * split_ + b.code % split_] +
                add_hi_[(a.code / split_) * high_ + b.code / split_]};
    }
    std::uint32_t x = a.code, y = b.code, out = 0;
    for (std::uint32_t i = 0; i < f_; ++i) {
        std::uint32_t d = x % p_ + y % p_;
        if (d >= p_) d -= p_;
        out += d * pow_p_[i];
        x /= p_;
        y /= p_;
    }
    return {out};
}

FqElement FiniteField::sub(FqElement a, FqElement b) const noexcept { return add(a, neg(b)); }

FqElement FiniteField::mul(FqElement a, FqElement b) const noexcept {
    if (a.code == 0 || b.code == 0) return zero();
    std::uint32_t e = log_[a.code] + log_[b.code];
    if (e >= q_ - 1) e -= q_ - 1;
    return {exp_[e]};
}

FqElement FiniteField::inv(FqElement a) const {
    if (a.code == 0) throw InvalidInput("inverse of zero");
    return {exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
}

FqElement FiniteField::pow(FqElement a, std::uint64_t e) const noexcept {
    if (a.code == 0) return e == 0 ? one() : zero();
    const std::uint64_t l =
        static_cast<std::uint64_t>(static_cast<unsigned __int128>(log_[a.code]) * e % (q_ - 1));
    return {exp_[l]};
}

std::uint32_t FiniteField::dlog(FqElement x) const {
    if (x.code == 0) throw InvalidInput("dlog of zero");
    if (x.code >= q_) throw InvalidInput("dlog: element out of range");
    return log_[x.code];
}

std::uint64_t FiniteField::element_order(FqElement x) const {
    const std::uint64_t l = dlog(x);
    return (q_ - 1) / gcd_u64(l, q_ - 1);
}

}  // namespace cyheight
