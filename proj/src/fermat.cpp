#include "cyheight/fermat.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "cyheight/cache.hpp"
#include "cyheight/errors.hpp"
#include "cyheight/parallel.hpp"

namespace cyheight {

std::uint64_t count_A(std::uint32_t m, std::uint32_t r) {
    if (m < 2 || r < 1) throw InvalidInput("count_A: need m >= 2, r >= 1");
    // Exact in 128 bits for every size that could pass the enumeration budget.
    unsigned __int128 power = 1;
    for (std::uint32_t i = 0; i < r + 2; ++i) {
        power *= (m - 1);
        if (power > (static_cast<unsigned __int128>(1) << 100)) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    __int128 total = static_cast<__int128>(power);
    total += (r % 2 == 0 ? 1 : -1) * static_cast<__int128>(m - 1);
    total /= m;
    if (total > static_cast<__int128>(std::numeric_limits<std::uint64_t>::max())) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(total);
}

std::vector<AlphaVector> enumerate_A(std::uint32_t m, std::uint32_t r,
                                     const EnumerationBudget& budget) {
    const std::uint64_t expected = count_A(m, r);
    if (expected > budget.max_alphas) {
        throw BudgetExceeded("alpha-count", "|A_{m,r}| = " + std::to_string(expected) +
                                                " exceeds the enumeration budget of " +
                                                std::to_string(budget.max_alphas));
    }
    std::vector<AlphaVector> out;
    out.reserve(expected);
    const std::uint32_t n = r + 2;
    std::vector<std::uint32_t> a(n, 1);
    // Odometer over the first r+1 components; the last one is forced.
    while (true) {
        std::uint64_t partial = 0;
        for (std::uint32_t i = 0; i + 1 < n; ++i) partial += a[i];
        const std::uint32_t last = static_cast<std::uint32_t>((m - partial % m) % m);
        if (last != 0) {
            a[n - 1] = last;
            out.push_back(AlphaVector::make(m, a));
        }
        std::int64_t i = static_cast<std::int64_t>(n) - 2;
        while (i >= 0 && a[i] == m - 1) {
            a[i] = 1;
            --i;
        }
        if (i < 0) break;
        ++a[i];
    }
    if (out.size() != expected) throw InternalError("enumerate_A: count disagrees with closed form");
    return out;
}

std::vector<std::uint32_t> subgroup_H(std::uint64_t p, std::uint32_t m) {
    const std::uint32_t f = order_mod(p, m);
    std::vector<std::uint32_t> H;
    H.reserve(f);
    std::uint64_t t = 1 % m;
    for (std::uint32_t j = 0; j < f; ++j) {
        H.push_back(static_cast<std::uint32_t>(t));
        t = t * (p % m) % m;
    }
    return H;
}

std::int64_t stickelberger_AH(const AlphaVector& alpha, std::span<const std::uint32_t> H) {
    const std::uint64_t m = alpha.m();
    const auto& a = alpha.components();
    std::int64_t total = 0;
    for (std::uint32_t t : H) {
        std::uint64_t numer = 0;  // m * sum_j <t a_j / m>
        for (std::size_t j = 1; j < a.size(); ++j) numer += (std::uint64_t{t} * a[j]) % m;
        total += static_cast<std::int64_t>(numer / m);
    }
    return total;
}

std::int64_t stickelberger_AH(const AlphaVector& alpha, std::uint64_t p) {
    const auto H = subgroup_H(p, alpha.m());
    return stickelberger_AH(alpha, H);
}

Slope Slope::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidInput("slope with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

std::string Slope::to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::uint64_t SlopeMultiset::total() const {
    std::uint64_t n = 0;
    for (const auto& [s, k] : entries) n += k;
    return n;
}

std::uint64_t SlopeMultiset::multiplicity(const Slope& s) const {
    for (const auto& [t, k] : entries) {
        if (t == s) return k;
    }
    return 0;
}

bool SlopeMultiset::symmetric(std::uint32_t r) const {
    for (const auto& [s, k] : entries) {
        const Slope mirror = Slope::make(static_cast<std::int64_t>(r) * s.den - s.num, s.den);
        if (multiplicity(mirror) != k) return false;
    }
    return true;
}

namespace {

void require_coprime(std::uint64_t p, std::uint32_t m) {
    if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
    if (gcd_u64(p, m) != 1) {
        throw InvalidInput("gcd(p, m) != 1 for p = " + std::to_string(p) + ", m = " + std::to_string(m));
    }
}

}  // namespace

FermatHeight fermat_height_details(std::uint64_t p, std::uint32_t m, std::uint32_t r,
                                   const EnumerationBudget& budget) {
    const FermatParams params = FermatParams::make(p, m, r);
    const auto H = subgroup_H(p, m);
    const auto alphas = enumerate_A(m, r, budget);
    FermatHeight out;
    out.total = alphas.size();
    for (const auto& alpha : alphas) {
        if (stickelberger_AH(alpha, H) < static_cast<std::int64_t>(params.f)) ++out.deficient;
    }
    out.height = out.deficient == 0 ? HeightValue::infinite() : HeightValue::finite(out.deficient);
    return out;
}

HeightValue height_fermat(std::uint64_t p, std::uint32_t m, std::uint32_t r) {
    return fermat_height_details(p, m, r).height;
}

std::optional<HeightValue> theorem_height(std::uint64_t p, std::uint32_t m, std::uint32_t r) {
    if (m != r + 2 || r < 2) return std::nullopt;
    return p % m == 1 ? HeightValue::finite(1) : HeightValue::infinite();
}

SlopeMultiset newton_slopes(std::uint64_t p, std::uint32_t m, std::uint32_t r,
                            const EnumerationBudget& budget) {
    const FermatParams params = FermatParams::make(p, m, r);
    const auto H = subgroup_H(p, m);
    std::map<std::int64_t, std::uint64_t> counts;
    for (const auto& alpha : enumerate_A(m, r, budget)) ++counts[stickelberger_AH(alpha, H)];
    SlopeMultiset out;
    out.denominator = params.f;
    for (const auto& [ah, k] : counts) out.entries.emplace_back(Slope::make(ah, params.f), k);
    return out;
}

namespace {

void check_table(const JacobiSumTable& table, const FermatParams& params, const char* who) {
    const Character& chi = table.character();
    if (chi.order() != params.m || chi.field().characteristic() != params.p ||
        chi.field().degree() != params.f) {
        throw InvalidInput(std::string(who) + ": Jacobi table does not match (p, m)");
    }
}

}  // namespace

ZetaData zeta_fermat(std::uint64_t p, std::uint32_t m, std::uint32_t r, const ZetaOptions& opts) {
    const FermatParams params = FermatParams::make(p, m, r);
    const auto alphas = enumerate_A(m, r, opts.budget);
    auto field = FieldCache::global().get(params.p, params.f);

    std::optional<JacobiSumTable> local;
    JacobiSumTable* table = opts.table;
    if (!table) {
        local.emplace(Character::build(field, m));
        table = &*local;
    } else {
        check_table(*table, params, "zeta_fermat");
    }

    std::vector<std::optional<CycInt>> sums(alphas.size());
    parallel_for(alphas.size(), opts.threads, [&](std::size_t i) { sums[i] = table->get(alphas[i]); });

    // prod (1 - j T), constant term first.
    std::vector<CycInt> poly{CycInt::from_integer(m, 1)};
    poly.reserve(alphas.size() + 1);
    for (const auto& j : sums) {
        const CycInt neg_j = -*j;
        poly.push_back(CycInt(m));
        for (std::size_t k = poly.size() - 1; k > 0; --k) poly[k] += neg_j * poly[k - 1];
    }

    ZetaData out;
    out.p = params.p;
    out.m = m;
    out.r = r;
    out.f = params.f;
    out.q = params.q;
    out.sign_exponent = (r % 2 == 1) ? 1 : -1;
    out.P_coeffs.reserve(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) {
        if (!poly[k].is_rational_integer()) {
            throw InternalError("zeta_fermat: coefficient of T^" + std::to_string(k) +
                                " is not a rational integer: " + poly[k].to_string());
        }
        out.P_coeffs.push_back(poly[k].coeffs()[0]);
    }
    BigInt qi = 1;
    for (std::uint32_t i = 0; i <= r; ++i) {
        out.pole_roots.push_back(qi);
        qi *= static_cast<unsigned long>(params.q);
    }
    return out;
}

BigInt point_count_from_zeta(const ZetaData& zeta, std::uint32_t s) {
    if (s < 1) throw InvalidInput("point_count_from_zeta: s must be >= 1");
    const auto& c = zeta.P_coeffs;
    auto coeff = [&](std::size_t k) -> BigInt { return k < c.size() ? c[k] : BigInt(0); };
    // T P'(T) / P(T) = -sum_k p_k T^k, so p_k = -k c_k - sum_{i<k} p_i c_{k-i}.
    std::vector<BigInt> power_sums(s + 1, 0);
    for (std::uint32_t k = 1; k <= s; ++k) {
        BigInt pk = -BigInt(k) * coeff(k);
        for (std::uint32_t i = 1; i < k; ++i) pk -= power_sums[i] * coeff(k - i);
        power_sums[k] = pk;
    }
    BigInt total = 0;
    for (const auto& root : zeta.pole_roots) {
        BigInt term;
        mpz_pow_ui(term.get_mpz_t(), root.get_mpz_t(), s);
        total += term;
    }
    if (zeta.r % 2 == 0) total += power_sums[s];
    else total -= power_sums[s];
    if (total < 0) throw InternalError("point_count_from_zeta: negative point count");
    return total;
}

std::uint64_t brute_force_point_count(std::uint64_t p, std::uint32_t m, std::uint32_t r,
                                      std::uint32_t s, const PointCountBudget& budget) {
    if (m < 2) throw InvalidInput("brute_force_point_count: m must be >= 2");
    if (s < 1) throw InvalidInput("brute_force_point_count: s must be >= 1");
    const FermatParams params = FermatParams::make(p, m, r);
    const std::uint64_t degree = std::uint64_t{params.f} * s;

    // Candidates: (Q^{r+2} - 1) / (Q - 1) with Q = q^s.
    unsigned __int128 Q = 1;
    for (std::uint64_t i = 0; i < degree; ++i) {
        Q *= p;
        if (Q > budget.max_candidates) break;
    }
    unsigned __int128 candidates = 0, power = 1;
    for (std::uint32_t i = 0; i < r + 2 && candidates <= budget.max_candidates; ++i) {
        candidates += power;
        power *= Q;
    }
    if (candidates > budget.max_candidates) {
        throw BudgetExceeded("point-count", "brute-force enumeration over F_{q^" + std::to_string(s) +
                                                "} exceeds the candidate budget of " +
                                                std::to_string(budget.max_candidates));
    }

    auto field = FieldCache::global().get(params.p, static_cast<std::uint32_t>(degree));
    const std::uint32_t q = field->order();
    std::vector<FqElement> mth(q);
    for (std::uint32_t c = 0; c < q; ++c) mth[c] = field->pow(FqElement{c}, m);

    const std::uint32_t n = r + 2;
    std::uint64_t count = 0;
    // Leading nonzero coordinate at position `lead` is 1; later ones are free.
    for (std::uint32_t lead = 0; lead < n; ++lead) {
        const std::uint32_t free = n - 1 - lead;
        std::vector<std::uint32_t> x(free, 0);
        while (true) {
            FqElement sum = field->one();
            for (auto c : x) sum = field->add(sum, mth[c]);
            if (sum.code == 0) ++count;
            std::int64_t i = static_cast<std::int64_t>(free) - 1;
            while (i >= 0 && x[i] == q - 1) {
                x[i] = 0;
                --i;
            }
            if (i < 0) break;
            ++x[i];
        }
    }
    return count;
}

std::uint64_t HodgeVector::total() const { return std::accumulate(h.begin(), h.end(), std::uint64_t{0}); }

HodgeVector hodge_numbers_fermat(std::uint32_t m, std::uint32_t r, const EnumerationBudget& budget) {
    HodgeVector out;
    out.h.assign(r + 1, 0);
    for (const auto& alpha : enumerate_A(m, r, budget)) {
        std::uint64_t sum = 0;
        for (auto a : alpha.components()) sum += a;
        const std::uint64_t weight = sum / m;  // sum_j <a_j/m>, an integer in [1, r+1]
        out.h.at(weight - 1) += 1;
    }
    return out;
}

bool fully_rigged_fermat(std::uint64_t p, std::uint32_t m, std::uint32_t r) {
    if (r % 2 != 0) throw InvalidInput("fully_rigged_fermat: r must be even");
    if (m < 4) throw InvalidInput("fully_rigged_fermat: m must be >= 4");
    require_coprime(p, m);
    for (std::uint32_t t : subgroup_H(p, m)) {
        if (t == m - 1) return true;
    }
    return false;
}

ArtinComparison artin_comparison(std::uint64_t p, std::uint32_t m, std::uint32_t r) {
    if (r % 2 != 0 || m != r + 2) {
        throw InvalidInput("artin_comparison: need r even and m = r + 2");
    }
    ArtinComparison out;
    out.additive_type = height_fermat(p, m, r).is_infinite();
    out.fully_rigged = fully_rigged_fermat(p, m, r);
    return out;
}

std::vector<StickelbergerRow> stickelberger_rows(std::uint64_t p, std::uint32_t m, std::uint32_t r,
                                                 const StickelbergerOptions& opts) {
    const FermatParams params = FermatParams::make(p, m, r);
    auto field = FieldCache::global().get(params.p, params.f);
    std::optional<JacobiSumTable> local;
    JacobiSumTable* table = opts.table;
    if (!table) {
        local.emplace(Character::build(field, m));
        table = &*local;
    } else {
        check_table(*table, params, "stickelberger_rows");
    }
    const std::uint32_t k = opts.precision ? opts.precision : default_precision(params.f, r);
    const PadicContext ctx = PadicContext::build(*field, m, k);
    const auto H = subgroup_H(p, m);
    const auto alphas = enumerate_A(m, r, opts.budget);

    BigInt qr;
    mpz_ui_pow_ui(qr.get_mpz_t(), params.q, r);
    const CycInt weil = CycInt::from_integer(m, qr);

    std::vector<std::optional<StickelbergerRow>> rows(alphas.size());
    parallel_for(alphas.size(), opts.threads, [&](std::size_t i) {
        const CycInt j = table->get(alphas[i]);
        Valuation v;
        try {
            v = valuation_with_retry(j, *field, ctx, opts.max_doublings);
        } catch (const PrecisionExhausted&) {
            v = Valuation::at_least(std::int64_t{k} << opts.max_doublings);
        }
        rows[i] = StickelbergerRow{alphas[i], stickelberger_AH(alphas[i], H), v,
                                   modulus_squared(j) == weil};
    });
    std::vector<StickelbergerRow> out;
    out.reserve(rows.size());
    for (auto& row : rows) out.push_back(std::move(*row));
    return out;
}

}  // namespace cyheight
