#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace cyheight {

/// Height of a one-dimensional formal group: a finite h >= 1, or infinity
/// (the additive case).
class HeightValue {
  public:
    static HeightValue finite(std::uint64_t h);
    static HeightValue infinite() { return HeightValue{}; }

    bool is_infinite() const noexcept { return !value_; }
    bool is_finite() const noexcept { return value_.has_value(); }
    /// Throws std::bad_optional_access for infinite heights.
    std::uint64_t value() const { return value_.value(); }

    /// "1", "2", ... or "inf".
    std::string to_string() const;

    friend bool operator==(const HeightValue&, const HeightValue&) = default;

  private:
    std::optional<std::uint64_t> value_;
};

}  // namespace cyheight
