#include <doctest.h>

#include <unistd.h>

#include <fstream>
#include <json.hpp>

#include "cyheight/cache.hpp"
#include "cyheight/fermat.hpp"

using namespace cyheight;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("cyheight-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    os << s;
}

}  // namespace

TEST_CASE("field cache round trip and rejection") {
    const auto dir = fresh_dir("field");
    const auto field = FiniteField::build(3, 4);
    const auto path = field_cache_path(dir, 3, 4);
    save_field(path, field);
    const auto loaded = load_field(path, 3, 4);
    REQUIRE(loaded.has_value());
    CHECK(*loaded == field);

    CHECK_FALSE(load_field(path, 3, 3).has_value());
    CHECK_FALSE(load_field(dir / "missing.bin", 3, 4).has_value());

    const std::string bytes = slurp(path);
    std::string bad_magic = bytes;
    bad_magic[0] = 'X';
    spit(path, bad_magic);
    CHECK_FALSE(load_field(path, 3, 4).has_value());

    std::string bad_version = bytes;
    bad_version[4] = static_cast<char>(kFieldCacheVersion + 1);
    spit(path, bad_version);
    CHECK_FALSE(load_field(path, 3, 4).has_value());

    std::string bad_table = bytes;
    bad_table[bytes.size() - 2] ^= 0x5;
    spit(path, bad_table);
    CHECK_FALSE(load_field(path, 3, 4).has_value());

    spit(path, bytes.substr(0, bytes.size() / 2));
    CHECK_FALSE(load_field(path, 3, 4).has_value());
    fs::remove_all(dir);
}

TEST_CASE("FieldCache writes through to its directory") {
    const auto dir = fresh_dir("global");
    auto& cache = FieldCache::global();
    cache.set_directory(dir);
    const auto a = cache.get(5, 3);
    CHECK(fs::exists(field_cache_path(dir, 5, 3)));
    CHECK(cache.get(5, 3) == a);
    CHECK(*load_field(field_cache_path(dir, 5, 3), 5, 3) == FiniteField::build(5, 3));
    cache.set_directory(std::nullopt);
    CHECK_FALSE(cache.directory().has_value());
    fs::remove_all(dir);
}

TEST_CASE("Jacobi cache round trip") {
    const auto dir = fresh_dir("jacobi");
    auto field = std::make_shared<const FiniteField>(FiniteField::build(2, 4));
    const auto chi = Character::build(field, 5);
    JacobiSumTable table(chi);
    for (const auto& a : enumerate_A(5, 3)) table.get(a);
    const auto path = jacobi_cache_path(dir, 2, 5, 3);
    save_jacobi_cache(path, 2, 5, 3, table);

    JacobiSumTable restored(chi);
    CHECK(load_jacobi_cache(path, 2, 5, 3, restored) == table.entries().size());
    CHECK(restored.entries() == table.entries());
    for (const auto& a : enumerate_A(5, 3)) REQUIRE(restored.get(a) == table.get(a));
    CHECK(restored.computed_count() == 0);

    JacobiSumTable other(chi);
    CHECK(load_jacobi_cache(path, 2, 5, 2, other) == 0);
    CHECK(load_jacobi_cache(path, 3, 5, 3, other) == 0);
    CHECK(load_jacobi_cache(dir / "none.json", 2, 5, 3, other) == 0);

    // Saving is deterministic.
    const auto again = dir / "again.json";
    save_jacobi_cache(again, 2, 5, 3, restored);
    CHECK(slurp(again) == slurp(path));

    // A tampered value fails the Weil check and is skipped.
    auto doc = nlohmann::json::parse(slurp(path));
    doc["entries"][0]["coeffs"][0] = "12345";
    spit(path, doc.dump());
    JacobiSumTable tampered(chi);
    CHECK(load_jacobi_cache(path, 2, 5, 3, tampered) == table.entries().size() - 1);

    spit(path, "{ not json");
    CHECK(load_jacobi_cache(path, 2, 5, 3, tampered) == 0);
    fs::remove_all(dir);
}
