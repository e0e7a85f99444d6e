#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"

using cyheight::cli::run;
using Json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

Json json_of(const Result& r) { return Json::parse(r.out); }

}  // namespace

TEST_CASE("height command") {
    auto ok = invoke({"height", "--p", "11", "--m", "5", "--r", "3"});
    REQUIRE(ok.code == 0);
    auto doc = json_of(ok);
    CHECK(doc["h"] == 1);
    CHECK(doc["agree"] == true);
    CHECK(doc["q"] == 11);
    CHECK(doc["deficient"] == 1);
    CHECK(doc["hodge"] == Json::array({1, 101, 101, 1}));
    CHECK(ok.err.empty());

    auto inf = invoke({"height", "--p", "2", "--m", "5", "--r", "3"});
    REQUIRE(inf.code == 0);
    CHECK(json_of(inf)["h"] == "inf");
    CHECK(json_of(inf)["agree"] == true);

    auto bad = invoke({"height", "--p", "10", "--m", "5", "--r", "3"});
    CHECK(bad.code == 2);
    CHECK(bad.out.empty());
    CHECK(bad.err.find("not prime") != std::string::npos);

    CHECK(invoke({"height", "--p", "7", "--m", "5"}).code == 2);
    CHECK(invoke({"height", "--p", "7", "--m", "5", "--r", "3", "--format", "xml"}).code == 2);
}

TEST_CASE("zeta command") {
    auto k3 = invoke({"zeta", "--p", "3", "--m", "4", "--r", "2", "--check", "1"});
    REQUIRE(k3.code == 0);
    auto doc = json_of(k3);
    CHECK(doc["degree"] == 21);
    CHECK(doc["P"].size() == 22);
    CHECK(doc["checks"][0]["match"] == true);

    auto cubic = invoke({"zeta", "--p", "7", "--m", "3", "--r", "1", "--check", "1,2"});
    REQUIRE(cubic.code == 0);
    auto cdoc = json_of(cubic);
    CHECK(cdoc["checks"].size() == 2);
    CHECK(cdoc["checks"][0]["brute_force"] == "9");
    CHECK(cdoc["checks"][1]["match"] == true);

    auto gcd = invoke({"zeta", "--p", "5", "--m", "5", "--r", "3"});
    CHECK(gcd.code == 2);
    CHECK(gcd.err.find("gcd") != std::string::npos);

    auto budget = invoke({"zeta", "--p", "2", "--m", "5", "--r", "3", "--check", "1", "--max-points", "10"});
    CHECK(budget.code == 3);
    CHECK(budget.err.find("point-count") != std::string::npos);
}

TEST_CASE("stickelberger command") {
    auto r = invoke({"stickelberger", "--p", "3", "--m", "4", "--r", "2"});
    REQUIRE(r.code == 0);
    auto doc = json_of(r);
    CHECK(doc["equal"] == 21);
    CHECK(doc["total"] == 21);
    CHECK(doc["rows"].size() == 21);

    auto capped = invoke({"stickelberger", "--p", "3", "--m", "4", "--r", "2", "--precision", "1",
                          "--max-doublings", "0", "--format", "csv"});
    CHECK(capped.code == 3);
    CHECK(capped.err.find("precision exhausted") != std::string::npos);
    CHECK(capped.out.rfind("# cyheight-csv v1 kind=stickelberger\n", 0) == 0);
}

TEST_CASE("survey command") {
    auto artin = invoke({"survey", "artin", "--m", "8", "--r", "6", "--p-max", "50"});
    REQUIRE(artin.code == 0);
    auto doc = json_of(artin);
    bool found = false;
    for (const auto& row : doc["rows"]) {
        if (row["p"] == 3) {
            CHECK(row["additive_type"] == true);
            CHECK(row["fully_rigged"] == false);
            found = true;
        }
    }
    CHECK(found);

    auto height = invoke({"survey", "height", "--m", "5", "--r", "3", "--p-max", "100"});
    REQUIRE(height.code == 0);
    CHECK(json_of(height)["finite_height_primes"] == Json::array({11, 31, 41, 61, 71}));

    auto kummer = invoke({"survey", "kummer", "--p-max", "50"});
    REQUIRE(kummer.code == 0);
    CHECK(json_of(kummer)["infinite_height_primes"] == Json::array({5, 11, 17, 23, 29, 41, 47}));

    // Row order does not depend on the thread count.
    auto one = invoke({"survey", "height", "--m", "6", "--r", "4", "--p-max", "80", "--threads", "1"});
    auto four = invoke({"survey", "height", "--m", "6", "--r", "4", "--p-max", "80", "--threads", "4"});
    CHECK(one.out == four.out);

    CHECK(invoke({"survey", "artin", "--m", "5", "--r", "3", "--p-max", "50"}).code == 2);
    CHECK(invoke({"survey", "height", "--m", "5", "--r", "3", "--p-min", "60", "--p-max", "50"}).code == 2);
    CHECK(invoke({"survey", "bogus", "--p-max", "50"}).code == 2);
}

TEST_CASE("kummer command") {
    auto seven = invoke({"kummer", "--p", "7"});
    REQUIRE(seven.code == 0);
    CHECK(json_of(seven)["height"] == 1);
    CHECK(json_of(seven)["N"] == 12);
    auto five = invoke({"kummer", "--p", "5", "--format", "text"});
    REQUIRE(five.code == 0);
    CHECK(five.out.find("height: inf") != std::string::npos);
    CHECK(invoke({"kummer", "--p", "4"}).code == 2);
    CHECK(invoke({"kummer", "--p", "7", "--a", "0", "--b", "0"}).code == 2);
    auto other = invoke({"kummer", "--p", "11", "--a", "1", "--b", "1"});
    REQUIRE(other.code == 0);
    CHECK(json_of(other)["rigid_height"].is_null());
}

TEST_CASE("output formats and cache determinism") {
    for (const char* fmt : {"json", "csv", "text"}) {
        auto r = invoke({"height", "--p", "3", "--m", "4", "--r", "2", "--format", fmt});
        CHECK(r.code == 0);
        CHECK_FALSE(r.out.empty());
    }
    auto csv = invoke({"survey", "kummer", "--p-max", "20", "--format", "csv"});
    std::istringstream lines(csv.out);
    std::string header, columns;
    std::getline(lines, header);
    std::getline(lines, columns);
    CHECK(header == "# cyheight-csv v1 kind=survey-kummer");
    CHECK(columns == "p,p_mod_3,N,a_p,p_rank,height,rigid_height,agree");

    const auto dir = std::filesystem::temp_directory_path() / ("cyheight-cli-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    const std::vector<std::string> args{"stickelberger", "--p", "2", "--m", "5", "--r", "3", "--cache-dir", dir.string()};
    auto cold = invoke(args);
    auto warm = invoke(args);
    REQUIRE(cold.code == 0);
    CHECK(cold.out == warm.out);
    CHECK(warm.err.find("loaded") != std::string::npos);
    auto zeta_cold = invoke({"zeta", "--p", "2", "--m", "5", "--r", "3", "--check", "1", "--cache-dir", dir.string()});
    auto zeta_warm = invoke({"zeta", "--p", "2", "--m", "5", "--r", "3", "--check", "1", "--cache-dir", dir.string()});
    CHECK(zeta_cold.out == zeta_warm.out);
    std::filesystem::remove_all(dir);
}

TEST_CASE("help and usage errors") {
    auto help = invoke({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("survey") != std::string::npos);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
}
