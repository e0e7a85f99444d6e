#include "cyheight/character_sums.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "cyheight/errors.hpp"

namespace cyheight {

namespace {

constexpr std::int64_t kCoefficientLimit = std::int64_t{1} << 62;

// Single nonzero coefficient of a cyclic value, or exponent -1.
struct Monomial {
    std::int32_t exponent = -1;
    std::int64_t coeff = 0;
};

std::vector<Monomial> monomials(const GroupFunction& g) {
    std::vector<Monomial> out(g.size());
    for (std::uint32_t c = 0; c < g.size(); ++c) {
        auto v = g.cyclic(FqElement{c});
        int nonzero = 0;
        for (std::uint32_t i = 0; i < v.size(); ++i) {
            if (v[i] != 0) {
                ++nonzero;
                out[c] = {static_cast<std::int32_t>(i), v[i]};
            }
        }
        if (nonzero > 1) out[c] = {-2, 0};  // general value
        if (nonzero == 0) out[c] = {-1, 0};
    }
    return out;
}

bool is_zero_value(std::span<const std::int64_t> v) {
    for (auto c : v) {
        if (c != 0) return false;
    }
    return true;
}

// acc += a * b in Z[x]/(x^m - 1).
void accumulate_product(std::span<std::int64_t> acc, std::span<const std::int64_t> a,
                        const Monomial& ma, std::span<const std::int64_t> b, const Monomial& mb) {
    const std::uint32_t m = static_cast<std::uint32_t>(acc.size());
    if (ma.exponent >= 0 && mb.exponent >= 0) {
        acc[(static_cast<std::uint32_t>(ma.exponent) + static_cast<std::uint32_t>(mb.exponent)) % m] +=
            ma.coeff * mb.coeff;
        return;
    }
    if (ma.exponent >= 0 || mb.exponent >= 0) {
        const Monomial& mono = ma.exponent >= 0 ? ma : mb;
        auto other = ma.exponent >= 0 ? b : a;
        const auto shift = static_cast<std::uint32_t>(mono.exponent);
        for (std::uint32_t i = 0; i < m; ++i) {
            if (other[i] != 0) acc[(i + shift) % m] += mono.coeff * other[i];
        }
        return;
    }
    for (std::uint32_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (std::uint32_t j = 0; j < m; ++j) {
            if (b[j] != 0) acc[(i + j) % m] += a[i] * b[j];
        }
    }
}

void check_compatible(const GroupFunction& g, const GroupFunction& h) {
    if (&g.field() != &h.field() && !(g.field() == h.field())) {
        throw InvalidInput("convolve: operands live on different fields");
    }
    if (g.conductor() != h.conductor()) throw InvalidInput("convolve: conductor mismatch");
}

void check_overflow(const GroupFunction& g, const GroupFunction& h) {
    const auto bound = static_cast<__int128>(g.l1_bound()) * h.l1_bound() * g.size();
    if (bound >= kCoefficientLimit) {
        throw BudgetExceeded("coefficient-width",
                             "convolution could overflow 64-bit coefficients (q^r too large)");
    }
}

}  // namespace

Character Character::build(std::shared_ptr<const FiniteField> field, std::uint32_t m) {
    if (!field) throw InvalidInput("character_table: null field");
    const std::uint32_t q = field->order();
    if (m == 0 || (q - 1) % m != 0) {
        throw InvalidInput("character_table: m = " + std::to_string(m) +
                           " does not divide q - 1 = " + std::to_string(q - 1));
    }
    Character chi;
    chi.m_ = m;
    chi.exponents_.assign(q, 0);
    const auto& logs = field->log_table();
    for (std::uint32_t c = 1; c < q; ++c) chi.exponents_[c] = logs[c] % m;
    chi.field_ = std::move(field);
    return chi;
}

std::uint32_t Character::exponent(FqElement x) const {
    if (x.code == 0) throw InvalidInput("character evaluated at 0");
    if (x.code >= exponents_.size()) throw InvalidInput("character: element out of range");
    return exponents_[x.code];
}

CycInt Character::operator()(FqElement x) const { return CycInt::zeta_power(m_, exponent(x)); }

GroupFunction::GroupFunction(std::shared_ptr<const FiniteField> field, std::uint32_t m)
    : field_(std::move(field)), q_(field_->order()), m_(m) {
    if (m_ == 0) throw InvalidInput("GroupFunction: conductor must be >= 1");
    data_.assign(std::size_t{q_} * m_, 0);
}

GroupFunction GroupFunction::character_power(const Character& chi, std::uint32_t a) {
    GroupFunction g(chi.field_ptr(), chi.order());
    const auto table = chi.exponent_table();
    for (std::uint32_t c = 1; c < g.q_; ++c) {
        const auto e = static_cast<std::uint32_t>((std::uint64_t{table[c]} * a) % g.m_);
        g.data_[std::size_t{c} * g.m_ + e] = 1;
    }
    return g;
}

CycInt GroupFunction::value(FqElement x) const {
    if (x.code >= q_) throw InvalidInput("GroupFunction: element out of range");
    return CycInt::from_cyclic(m_, cyclic(x));
}

std::int64_t GroupFunction::l1_bound() const {
    std::int64_t best = 0;
    for (std::uint32_t c = 0; c < q_; ++c) {
        std::int64_t s = 0;
        for (auto v : cyclic(FqElement{c})) s += std::llabs(v);
        best = std::max(best, s);
    }
    return best;
}

GroupFunction convolve(const GroupFunction& g, const GroupFunction& h) {
    check_compatible(g, h);
    check_overflow(g, h);
    const FiniteField& field = g.field();
    const std::uint32_t q = g.size();
    GroupFunction out(g.field_ptr(), g.conductor());
    const auto mg = monomials(g);
    const auto mh = monomials(h);
    for (std::uint32_t y = 0; y < q; ++y) {
        if (mg[y].exponent == -1) continue;
        const FqElement ey{y};
        for (std::uint32_t d = 0; d < q; ++d) {
            if (mh[d].exponent == -1) continue;
            const FqElement ed{d};
            accumulate_product(out.cyclic(field.add(ey, ed)), g.cyclic(ey), mg[y], h.cyclic(ed),
                               mh[d]);
        }
    }
    return out;
}

CycInt convolve_at(const GroupFunction& g, const GroupFunction& h, FqElement x) {
    check_compatible(g, h);
    check_overflow(g, h);
    const FiniteField& field = g.field();
    const std::uint32_t m = g.conductor();
    std::vector<std::int64_t> acc(m, 0);
    Monomial general{-2, 0};
    for (std::uint32_t y = 0; y < g.size(); ++y) {
        const FqElement ey{y};
        auto gy = g.cyclic(ey);
        if (is_zero_value(gy)) continue;
        auto hv = h.cyclic(field.sub(x, ey));
        if (is_zero_value(hv)) continue;
        accumulate_product(acc, gy, general, hv, general);
    }
    return CycInt::from_cyclic(m, std::span<const std::int64_t>(acc));
}

namespace {

void check_alpha(const AlphaVector& alpha, const Character& chi) {
    if (alpha.m() != chi.order()) {
        throw InvalidInput("jacobi_sum: alpha has m = " + std::to_string(alpha.m()) +
                           " but the character has order " + std::to_string(chi.order()));
    }
}

}  // namespace

std::shared_ptr<const GroupFunction> ConvolutionMemo::fold(std::span<const std::uint32_t> exponents) {
    if (exponents.empty()) throw InvalidInput("ConvolutionMemo: empty exponent list");
    std::vector<std::uint32_t> key(exponents.begin(), exponents.end());
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    std::shared_ptr<const GroupFunction> out;
    const auto single = std::make_shared<const GroupFunction>(
        GroupFunction::character_power(chi_, key.back()));
    if (key.size() == 1) {
        out = single;
    } else {
        out = std::make_shared<const GroupFunction>(convolve(*fold(exponents.first(key.size() - 1)), *single));
    }
    const std::size_t bytes = std::size_t{out->size()} * out->conductor() * sizeof(std::int64_t);
    std::lock_guard lock(mutex_);
    if (bytes_ + bytes <= max_bytes_ && memo_.emplace(std::move(key), out).second) bytes_ += bytes;
    return out;
}

CycInt jacobi_sum(const AlphaVector& alpha, const Character& chi, ConvolutionMemo* memo) {
    check_alpha(alpha, chi);
    if (memo && memo->character().order() != chi.order()) {
        throw InvalidInput("jacobi_sum: memo belongs to a different character");
    }
    const std::uint32_t n = alpha.r() + 1;  // number of variables v_1..v_{r+1}
    const FiniteField& field = chi.field();

    // The sum is symmetric in a_1..a_{r+1}; sorting makes the halves reusable.
    std::vector<std::uint32_t> exps(alpha.components().begin() + 1, alpha.components().end());
    std::sort(exps.begin(), exps.end());
    auto fold = [&](std::span<const std::uint32_t> part) {
        if (memo) return memo->fold(part);
        GroupFunction acc = GroupFunction::character_power(chi, part[0]);
        for (std::size_t j = 1; j < part.size(); ++j) {
            acc = convolve(acc, GroupFunction::character_power(chi, part[j]));
        }
        return std::make_shared<const GroupFunction>(std::move(acc));
    };
    // Split the product into two halves and evaluate the last convolution
    // only at -1.
    const std::span<const std::uint32_t> all(exps);
    const std::size_t half = (n + 1) / 2;
    const auto left = fold(all.first(half));
    const auto right = fold(all.subspan(half));
    CycInt sum = convolve_at(*left, *right, field.neg(field.one()));
    return alpha.r() % 2 == 0 ? sum : -sum;
}

CycInt jacobi_sum_naive(const AlphaVector& alpha, const Character& chi, const JacobiBudget& budget) {
    check_alpha(alpha, chi);
    const FiniteField& field = chi.field();
    const std::uint32_t r = alpha.r();
    const std::uint32_t m = chi.order();
    unsigned __int128 tuples = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        tuples *= field.order();
        if (tuples > budget.naive_max_tuples) {
            throw BudgetExceeded("naive-oracle", "jacobi_sum_naive: q^r exceeds the oracle budget of " +
                                                     std::to_string(budget.naive_max_tuples));
        }
    }
    const auto table = chi.exponent_table();
    const FqElement minus_one = field.neg(field.one());
    std::vector<std::int64_t> counts(m, 0);

    // v_1..v_r range over F_q^*; v_{r+1} is forced.
    std::function<void(std::uint32_t, FqElement, std::uint64_t)> walk =
        [&](std::uint32_t i, FqElement partial, std::uint64_t expo) {
            if (i == r) {
                const FqElement last = field.sub(minus_one, partial);
                if (last.code == 0) return;
                const std::uint64_t e = expo + std::uint64_t{table[last.code]} * alpha[r + 1];
                ++counts[e % m];
                return;
            }
            for (std::uint32_t c = 1; c < field.order(); ++c) {
                walk(i + 1, field.add(partial, FqElement{c}),
                     (expo + std::uint64_t{table[c]} * alpha[i + 1]) % m);
            }
        };
    walk(0, field.zero(), 0);
    CycInt sum = CycInt::from_cyclic(m, std::span<const std::int64_t>(counts));
    return r % 2 == 0 ? sum : -sum;
}

CycInt JacobiSumTable::get(const AlphaVector& alpha) {
    check_alpha(alpha, chi_);
    auto [rep, unit] = alpha.galois_orbit_min();
    {
        std::lock_guard lock(mutex_);
        auto it = reps_.find(rep);
        if (it != reps_.end()) return galois_apply(unit, it->second);
    }
    CycInt value = jacobi_sum(rep, chi_, &memo_);
    {
        std::lock_guard lock(mutex_);
        auto [it, inserted] = reps_.emplace(rep, value);
        if (inserted) ++computed_;
    }
    return galois_apply(unit, value);
}

void JacobiSumTable::insert(const AlphaVector& alpha, const CycInt& value) {
    check_alpha(alpha, chi_);
    if (value.conductor() != chi_.order()) throw InvalidInput("JacobiSumTable: conductor mismatch");
    auto [rep, unit] = alpha.galois_orbit_min();
    // value = sigma_unit(j(rep)) => j(rep) = sigma_{unit^{-1}}(value).
    std::uint32_t inv = 1;
    const std::uint32_t m = chi_.order();
    while ((std::uint64_t{inv} * unit) % m != 1 % m) ++inv;
    CycInt rep_value = galois_apply(inv, value);
    std::lock_guard lock(mutex_);
    auto [it, inserted] = reps_.emplace(rep, rep_value);
    if (!inserted && !(it->second == rep_value)) {
        throw InvalidInput("JacobiSumTable: conflicting value for " + rep.to_string());
    }
}

std::map<AlphaVector, CycInt> JacobiSumTable::entries() const {
    std::lock_guard lock(mutex_);
    return reps_;
}

std::size_t JacobiSumTable::computed_count() const {
    std::lock_guard lock(mutex_);
    return computed_;
}

}  // namespace cyheight
