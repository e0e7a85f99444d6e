#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "cyheight/alpha.hpp"
#include "cyheight/cyclotomic.hpp"
#include "cyheight/finite_field.hpp"

namespace cyheight {

/// Multiplicative character of order m with chi(generator) = zeta, i.e.
/// chi(x) = zeta^{dlog(x) mod m}. Defined on F_q^* only.
class Character {
  public:
    static Character build(std::shared_ptr<const FiniteField> field, std::uint32_t m);

    const FiniteField& field() const noexcept { return *field_; }
    const std::shared_ptr<const FiniteField>& field_ptr() const noexcept { return field_; }
    std::uint32_t order() const noexcept { return m_; }

    /// e with chi(x) = zeta^e; x must be nonzero.
    std::uint32_t exponent(FqElement x) const;
    CycInt operator()(FqElement x) const;

    /// Exponent per element encoding; entry 0 is unused.
    std::span<const std::uint32_t> exponent_table() const noexcept { return exponents_; }

  private:
    std::shared_ptr<const FiniteField> field_;
    std::uint32_t m_ = 0;
    std::vector<std::uint32_t> exponents_;
};

/// Dense table F_q -> Z[zeta_m]. Values are held in the cyclic ring
/// Z[x]/(x^m - 1) with 64-bit coefficients and projected to Z[zeta_m] on
/// read; the projection is a ring map, so convolution commutes with it.
class GroupFunction {
  public:
    GroupFunction(std::shared_ptr<const FiniteField> field, std::uint32_t m);

    /// x -> chi(x)^a for x != 0, and 0 at x = 0.
    static GroupFunction character_power(const Character& chi, std::uint32_t a);

    std::uint32_t size() const noexcept { return q_; }
    std::uint32_t conductor() const noexcept { return m_; }
    const FiniteField& field() const noexcept { return *field_; }
    const std::shared_ptr<const FiniteField>& field_ptr() const noexcept { return field_; }

    std::span<std::int64_t> cyclic(FqElement x) { return {data_.data() + std::size_t{x.code} * m_, m_}; }
    std::span<const std::int64_t> cyclic(FqElement x) const {
        return {data_.data() + std::size_t{x.code} * m_, m_};
    }
    CycInt value(FqElement x) const;

    /// Upper bound on the absolute coefficient sum of any value.
    std::int64_t l1_bound() const;

  private:
    std::shared_ptr<const FiniteField> field_;
    std::uint32_t q_ = 0;
    std::uint32_t m_ = 0;
    std::vector<std::int64_t> data_;  // q * m
};

/// (g * h)(x) = sum_y g(y) h(x - y) over the additive group of F_q.
/// Throws BudgetExceeded if 64-bit coefficients could overflow.
GroupFunction convolve(const GroupFunction& g, const GroupFunction& h);
/// (g * h)(x) at a single point.
CycInt convolve_at(const GroupFunction& g, const GroupFunction& h, FqElement x);

struct JacobiBudget {
    std::uint64_t naive_max_tuples = 10'000'000;  // q^r for the enumeration oracle
};

/// Partial convolutions f_{e_1} * ... * f_{e_k} keyed by the sorted exponent
/// list, shared between Jacobi sums of one character. Entries stop being
/// stored once max_bytes is reached. Safe for concurrent use.
class ConvolutionMemo {
  public:
    explicit ConvolutionMemo(Character chi, std::size_t max_bytes = std::size_t{256} << 20)
        : chi_(std::move(chi)), max_bytes_(max_bytes) {}

    const Character& character() const noexcept { return chi_; }
    /// exponents must be sorted ascending and nonempty.
    std::shared_ptr<const GroupFunction> fold(std::span<const std::uint32_t> exponents);

  private:
    Character chi_;
    std::size_t max_bytes_;
    std::size_t bytes_ = 0;
    std::mutex mutex_;
    std::map<std::vector<std::uint32_t>, std::shared_ptr<const GroupFunction>> memo_;
};

/// j(alpha) = (-1)^r (f_{a_1} * ... * f_{a_{r+1}})(-1), with f_a the
/// support-restricted character power. a_0 does not enter.
CycInt jacobi_sum(const AlphaVector& alpha, const Character& chi, ConvolutionMemo* memo = nullptr);

/// Literal enumeration over (v_1, ..., v_{r+1}) in (F_q^*)^{r+1} with
/// 1 + v_1 + ... + v_{r+1} = 0.
CycInt jacobi_sum_naive(const AlphaVector& alpha, const Character& chi,
                        const JacobiBudget& budget = {});

/// Memo of j(alpha) for one character. Each Galois orbit under (Z/m)^* is
/// computed once, at its lexicographically smallest member, and the rest are
/// filled by galois_apply. Safe for concurrent use.
class JacobiSumTable {
  public:
    explicit JacobiSumTable(Character chi) : chi_(std::move(chi)) {}

    const Character& character() const noexcept { return chi_; }

    CycInt get(const AlphaVector& alpha);
    /// Seeds an entry (e.g. from an on-disk cache). Identical re-inserts are no-ops.
    void insert(const AlphaVector& alpha, const CycInt& value);
    /// Snapshot of every stored orbit representative.
    std::map<AlphaVector, CycInt> entries() const;
    std::size_t computed_count() const;

  private:
    Character chi_;
    ConvolutionMemo memo_{chi_};
    mutable std::mutex mutex_;
    std::map<AlphaVector, CycInt> reps_;
    std::size_t computed_ = 0;
};

}  // namespace cyheight
