#include "cyheight/cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cyheight/errors.hpp"

namespace cyheight {

namespace {

constexpr std::array<char, 4> kFieldMagic{'C', 'Y', 'F', 'F'};

void put_u32(std::ostream& os, std::uint32_t v) {
    std::array<unsigned char, 4> b{static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                   static_cast<unsigned char>(v >> 16),
                                   static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b.data()), 4);
}

bool get_u32(std::istream& is, std::uint32_t& v) {
    std::array<unsigned char, 4> b{};
    if (!is.read(reinterpret_cast<char*>(b.data()), 4)) return false;
    v = std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 |
        std::uint32_t{b[3]} << 24;
    return true;
}

// Writes through a uniquely named temporary and renames it into place, so
// concurrent writers of the same key leave one complete file.
void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path());
    std::random_device rd;
    auto tmp = path;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write cache file " + tmp.string());
        os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

std::filesystem::path field_cache_path(const std::filesystem::path& dir, std::uint32_t p,
                                       std::uint32_t f) {
    return dir / ("field_v" + std::to_string(kFieldCacheVersion) + "_p" + std::to_string(p) + "_f" +
                  std::to_string(f) + ".bin");
}

std::filesystem::path jacobi_cache_path(const std::filesystem::path& dir, std::uint32_t p,
                                        std::uint32_t m, std::uint32_t r) {
    return dir / ("jacobi_v" + std::to_string(kJacobiCacheVersion) + "_p" + std::to_string(p) +
                  "_m" + std::to_string(m) + "_r" + std::to_string(r) + ".json");
}

void save_field(const std::filesystem::path& path, const FiniteField& field) {
    std::ostringstream os(std::ios::binary);
    os.write(kFieldMagic.data(), 4);
    put_u32(os, kFieldCacheVersion);
    put_u32(os, field.characteristic());
    put_u32(os, field.degree());
    for (auto c : field.modulus()) put_u32(os, c);
    put_u32(os, field.generator().code);
    for (auto l : field.log_table()) put_u32(os, l);
    atomic_write(path, os.str());
}

std::optional<FiniteField> load_field(const std::filesystem::path& path, std::uint32_t p,
                                      std::uint32_t f) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    std::array<char, 4> magic{};
    if (!is.read(magic.data(), 4) || magic != kFieldMagic) return std::nullopt;
    std::uint32_t version = 0, fp = 0, ff = 0, gen = 0;
    if (!get_u32(is, version) || version != kFieldCacheVersion) return std::nullopt;
    if (!get_u32(is, fp) || !get_u32(is, ff) || fp != p || ff != f) return std::nullopt;
    std::vector<std::uint32_t> modulus(f + 1);
    for (auto& c : modulus) {
        if (!get_u32(is, c)) return std::nullopt;
    }
    if (!get_u32(is, gen)) return std::nullopt;
    try {
        FiniteField field = FiniteField::from_parts(p, f, std::move(modulus), FqElement{gen});
        for (auto expected : field.log_table()) {
            std::uint32_t stored = 0;
            if (!get_u32(is, stored) || stored != expected) return std::nullopt;
        }
        return field;
    } catch (const InvalidInput&) {
        return std::nullopt;
    }
}

FieldCache& FieldCache::global() {
    static FieldCache cache;
    return cache;
}

void FieldCache::set_directory(std::optional<std::filesystem::path> dir) {
    std::lock_guard lock(mutex_);
    dir_ = std::move(dir);
}

std::optional<std::filesystem::path> FieldCache::directory() const {
    std::lock_guard lock(mutex_);
    return dir_;
}

std::shared_ptr<const FiniteField> FieldCache::get(std::uint32_t p, std::uint32_t f,
                                                   const FieldBudget& budget) {
    std::lock_guard lock(mutex_);
    auto& slot = fields_[{p, f}];
    if (slot) return slot;
    if (dir_) {
        const auto path = field_cache_path(*dir_, p, f);
        if (auto loaded = load_field(path, p, f)) {
            slot = std::make_shared<const FiniteField>(std::move(*loaded));
            return slot;
        }
        auto built = std::make_shared<const FiniteField>(FiniteField::build(p, f, budget));
        save_field(path, *built);
        slot = built;
        return slot;
    }
    slot = std::make_shared<const FiniteField>(FiniteField::build(p, f, budget));
    return slot;
}

std::size_t load_jacobi_cache(const std::filesystem::path& path, std::uint32_t p, std::uint32_t m,
                              std::uint32_t r, JacobiSumTable& table) {
    std::ifstream is(path);
    if (!is) return 0;
    nlohmann::json doc;
    try {
        is >> doc;
        if (doc.at("format") != "cyheight-jacobi" || doc.at("version") != kJacobiCacheVersion ||
            doc.at("p") != p || doc.at("m") != m || doc.at("r") != r) {
            return 0;
        }
        // Entries must pass the Weil check before they are trusted.
        const FermatParams fp = FermatParams::make(p, m, r);
        BigInt weil;
        mpz_ui_pow_ui(weil.get_mpz_t(), fp.q, r);
        const CycInt expected = CycInt::from_integer(m, weil);
        std::size_t loaded = 0;
        for (const auto& entry : doc.at("entries")) {
            auto alpha = AlphaVector::make(m, entry.at("alpha").get<std::vector<std::uint32_t>>());
            if (alpha.r() != r) continue;
            std::vector<BigInt> coeffs;
            for (const auto& c : entry.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
            CycInt value = CycInt::from_coeffs(m, std::move(coeffs));
            if (!(modulus_squared(value) == expected)) continue;
            table.insert(alpha, value);
            ++loaded;
        }
        return loaded;
    } catch (const nlohmann::json::exception&) {
        return 0;
    } catch (const std::invalid_argument&) {
        return 0;
    }
}

void save_jacobi_cache(const std::filesystem::path& path, std::uint32_t p, std::uint32_t m,
                       std::uint32_t r, const JacobiSumTable& table) {
    nlohmann::json doc;
    doc["format"] = "cyheight-jacobi";
    doc["version"] = kJacobiCacheVersion;
    doc["p"] = p;
    doc["m"] = m;
    doc["r"] = r;
    auto& entries = doc["entries"] = nlohmann::json::array();
    for (const auto& [alpha, value] : table.entries()) {
        if (alpha.r() != r) continue;
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : value.coeffs()) coeffs.push_back(c.get_str());
        entries.push_back({{"alpha", alpha.components()}, {"coeffs", std::move(coeffs)}});
    }
    atomic_write(path, doc.dump(1) + "\n");
}

}  // namespace cyheight
