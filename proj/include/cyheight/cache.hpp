#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>

#include "cyheight/character_sums.hpp"
#include "cyheight/finite_field.hpp"

namespace cyheight {

inline constexpr std::uint32_t kFieldCacheVersion = 1;
inline constexpr std::uint32_t kJacobiCacheVersion = 1;

/// Binary field file: magic "CYFF", version, p, f, modulus, generator, dlog table.
void save_field(const std::filesystem::path& path, const FiniteField& field);
/// Loads and re-verifies a field file. Returns nullopt if the file is missing,
/// malformed, from another format version, or inconsistent.
std::optional<FiniteField> load_field(const std::filesystem::path& path, std::uint32_t p,
                                      std::uint32_t f);

/// Process-wide memo of constructed fields, optionally backed by a directory.
/// Concurrent readers are fine; racing writers produce identical files.
class FieldCache {
  public:
    static FieldCache& global();

    void set_directory(std::optional<std::filesystem::path> dir);
    std::optional<std::filesystem::path> directory() const;

    std::shared_ptr<const FiniteField> get(std::uint32_t p, std::uint32_t f,
                                           const FieldBudget& budget = {});

  private:
    mutable std::mutex mutex_;
    std::optional<std::filesystem::path> dir_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const FiniteField>> fields_;
};

std::filesystem::path field_cache_path(const std::filesystem::path& dir, std::uint32_t p,
                                       std::uint32_t f);
std::filesystem::path jacobi_cache_path(const std::filesystem::path& dir, std::uint32_t p,
                                        std::uint32_t m, std::uint32_t r);

/// JSON Jacobi-sum cache: {"format", "version", "p", "m", "r", "entries": [{"alpha", "coeffs"}]}.
/// Coefficients are decimal strings. Returns the number of entries loaded, 0 if
/// the file is absent or does not match (p, m, r, version).
std::size_t load_jacobi_cache(const std::filesystem::path& path, std::uint32_t p, std::uint32_t m,
                              std::uint32_t r, JacobiSumTable& table);
void save_jacobi_cache(const std::filesystem::path& path, std::uint32_t p, std::uint32_t m,
                       std::uint32_t r, const JacobiSumTable& table);

}  // namespace cyheight
