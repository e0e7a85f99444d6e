#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cyheight {

/// Element (a_0, ..., a_{r+1}) of A_{m,r}: 0 < a_i < m and sum a_i = 0 mod m.
class AlphaVector {
  public:
    static AlphaVector make(std::uint32_t m, std::vector<std::uint32_t> components);

    std::uint32_t m() const noexcept { return m_; }
    std::uint32_t r() const noexcept { return static_cast<std::uint32_t>(a_.size()) - 2; }
    const std::vector<std::uint32_t>& components() const noexcept { return a_; }
    std::uint32_t operator[](std::size_t i) const { return a_[i]; }

    /// t * alpha componentwise mod m; t must be a unit mod m.
    AlphaVector scaled(std::int64_t t) const;
    /// (m - a_i)_i.
    AlphaVector negated() const { return scaled(-1); }

    /// Lexicographically smallest t * alpha over all units t mod m, together
    /// with a unit t such that alpha = t * representative.
    std::pair<AlphaVector, std::uint32_t> galois_orbit_min() const;

    std::string to_string() const;

    friend auto operator<=>(const AlphaVector&, const AlphaVector&) = default;

  private:
    AlphaVector(std::uint32_t m, std::vector<std::uint32_t> a) : m_(m), a_(std::move(a)) {}

    std::uint32_t m_ = 0;
    std::vector<std::uint32_t> a_;
};

}  // namespace cyheight
