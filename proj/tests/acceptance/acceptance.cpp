// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cyheight/cache.hpp"
#include "cyheight/fermat.hpp"
#include "cyheight/kummer.hpp"
#include "cyheight/lattice.hpp"
#include "cyheight/parallel.hpp"

using namespace cyheight;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0) o.require(secs <= limit_s, "runtime over " + std::to_string(limit_s) + " s");
    if (!o.pass) ++failures;
    std::printf("[%s] C%d %s: %s(%.2f s%s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), secs,
                limit_s > 0 ? (", limit " + std::to_string(static_cast<int>(limit_s)) + " s").c_str() : "");
    std::fflush(stdout);
}

struct Instance {
    std::uint32_t p, m, r;
    std::size_t expected;
};

const std::vector<Instance> kStickelberger{{3, 4, 2, 21}, {2, 5, 3, 204}, {7, 5, 3, 204}, {3, 5, 3, 204}};

std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::unique_ptr<JacobiSumTable>> tables;

JacobiSumTable& table_for(const Instance& in) {
    auto& slot = tables[{in.p, in.m, in.r}];
    if (!slot) {
        const auto fp = FermatParams::make(in.p, in.m, in.r);
        slot = std::make_unique<JacobiSumTable>(Character::build(FieldCache::global().get(fp.p, fp.f), in.m));
    }
    return *slot;
}

std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> height_instances() {
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t m = 4; m <= 7; ++m)
        for (std::uint32_t p = 2; p < 100; ++p)
            if (is_prime(p) && gcd_u64(p, m) == 1) out.emplace_back(p, m, m - 2);
    return out;
}

}  // namespace

int main() {
    const unsigned threads = default_threads();

    criterion(1, "Stickelberger equivalence", 300, [&](Outcome& o) {
        for (const auto& in : kStickelberger) {
            StickelbergerOptions opts;
            opts.threads = threads;
            opts.table = &table_for(in);
            const auto rows = stickelberger_rows(in.p, in.m, in.r, opts);
            std::size_t equal = 0;
            for (const auto& row : rows) equal += row.equal();
            o.detail << "(" << in.p << "," << in.m << "," << in.r << ") " << equal << "/" << rows.size() << " ";
            o.require(rows.size() == in.expected && equal == in.expected,
                      "instance (" + std::to_string(in.p) + "," + std::to_string(in.m) + "," + std::to_string(in.r) + ")");
        }
    });

    criterion(2, "height theorem reproduction", 60, [&](Outcome& o) {
        std::size_t checked = 0, mismatches = 0;
        for (auto [p, m, r] : height_instances()) {
            const auto h = height_fermat(p, m, r);
            const bool predicted_one = p % m == 1;
            const bool ok = predicted_one ? h == HeightValue::finite(1) : h.is_infinite();
            if (!ok) ++mismatches;
            o.require(ok, "p=" + std::to_string(p) + " m=" + std::to_string(m));
            ++checked;
        }
        o.detail << checked << " instances, " << mismatches << " mismatches ";
    });

    criterion(3, "zeta vs brute-force point counts", 120, [&](Outcome& o) {
        struct C {
            std::uint32_t p, m, r, s;
        };
        for (const C c : {C{3, 4, 2, 1}, C{2, 5, 3, 1}, C{7, 3, 1, 1}, C{7, 3, 1, 2}}) {
            ZetaOptions opts;
            opts.threads = threads;
            const auto zeta = zeta_fermat(c.p, c.m, c.r, opts);
            const BigInt from_zeta = point_count_from_zeta(zeta, c.s);
            const auto brute = brute_force_point_count(c.p, c.m, c.r, c.s);
            o.detail << "N_" << c.s << "(" << c.p << "," << c.m << "," << c.r << ")=" << from_zeta.get_str() << "/"
                     << brute << " ";
            o.require(from_zeta == BigInt(std::to_string(brute)), "point count mismatch");
        }
    });

    criterion(4, "Weil modulus, exact", 0, [&](Outcome& o) {
        for (const auto& in : kStickelberger) {
            auto& table = table_for(in);
            const auto fp = FermatParams::make(in.p, in.m, in.r);
            BigInt qr;
            mpz_ui_pow_ui(qr.get_mpz_t(), fp.q, in.r);
            const CycInt target = CycInt::from_integer(in.m, qr);
            std::size_t ok = 0;
            const auto alphas = enumerate_A(in.m, in.r);
            for (const auto& a : alphas) ok += modulus_squared(table.get(a)) == target;
            o.detail << ok << "/" << alphas.size() << " ";
            o.require(ok == alphas.size(), "modulus_squared != q^r");
        }
    });

    criterion(5, "Betti and Hodge counts, height bound", 0, [&](Outcome& o) {
        const auto a42 = enumerate_A(4, 2).size(), a53 = enumerate_A(5, 3).size();
        o.detail << "|A_4,2|=" << a42 << " |A_5,3|=" << a53 << " ";
        o.require(a42 == 21 && count_A(4, 2) == 21, "|A_{4,2}|");
        o.require(a53 == 204 && count_A(5, 3) == 204, "|A_{5,3}|");
        const auto h = hodge_numbers_fermat(5, 3).h;
        o.detail << "hodge(5,3)=(" << h[0] << "," << h[1] << "," << h[2] << "," << h[3] << ") ";
        o.require(h == std::vector<std::uint64_t>{1, 101, 101, 1}, "hodge(5,3)");
        std::size_t finite = 0;
        for (auto [p, m, r] : height_instances()) {
            const auto ht = height_fermat(p, m, r);
            if (ht.is_infinite()) continue;
            ++finite;
            o.require(ht.value() <= hodge_numbers_fermat(m, r).h[1] + 1, "h <= h[1] + 1");
        }
        o.detail << finite << " finite-height instances bounded ";
    });

    criterion(6, "Artin generalization fails for m=8 r=6, holds for K3", 0, [&](Outcome& o) {
        std::vector<std::uint32_t> counter, k3_counter;
        for (std::uint32_t p = 3; p < 50; ++p) {
            if (!is_prime(p)) continue;
            for (auto [m, r, sink] : {std::tuple{8u, 6u, &counter}, std::tuple{4u, 2u, &k3_counter}}) {
                const auto c = artin_comparison(p, m, r);
                // Independent predicates: additive iff p != 1 mod m; rigged iff some p^j = -1 mod m.
                bool minus_one = false;
                for (std::uint64_t x = p % m, j = 0; j < m; ++j, x = x * p % m) minus_one = minus_one || x == m - 1;
                o.require(c.additive_type == (p % m != 1), "additive predicate at p=" + std::to_string(p));
                o.require(c.fully_rigged == minus_one, "rigged predicate at p=" + std::to_string(p));
                if (c.additive_type && !c.fully_rigged) sink->push_back(p);
            }
        }
        o.detail << "m=8 counterexamples:";
        for (auto p : counter) o.detail << " " << p;
        o.detail << "; K3 counterexamples: " << k3_counter.size() << " ";
        o.require(!counter.empty() && counter.front() == 3, "p=3 is a counterexample for m=8");
        o.require(k3_counter.empty(), "K3 has no counterexample");
    });

    criterion(7, "Kummer example: infinite height iff p = 2 mod 3", 30, [&](Outcome& o) {
        std::size_t checked = 0;
        for (std::uint64_t p = 5; p < 500; ++p) {
            if (!is_prime(p)) continue;
            const bool inf = kummer_example_height(p).is_infinite();
            o.require(inf == (p % 3 == 2), "p=" + std::to_string(p));
            ++checked;
        }
        o.detail << checked << " primes ";
    });

    criterion(8, "period lattices", 0, [&](Outcome& o) {
        for (auto [a, b, c, name] : {std::tuple{1, 1, 1, "zeta_3"}, std::tuple{1, 0, 1, "i"}}) {
            const auto poly = QuadPoly::make(a, b, c);
            const auto L = period_lattice(poly);
            const auto idx = lattice_index(L, standard_lattice(poly));
            o.detail << name << ": index " << idx.get_str() << " ";
            o.require(L == standard_lattice(poly) && idx == 1, std::string(name) + " lattice");
        }
        const auto half = QuadPoly::make(4, 0, 1);
        const auto idx = lattice_index(period_lattice(half), standard_lattice(half));
        o.detail << "i/2: index " << idx.get_str() << " ";
        o.require(idx != 0, "i/2 index is nonzero");
    });

    criterion(9, "Newton slope symmetry", 0, [&](Outcome& o) {
        std::size_t checked = 0;
        for (auto [p, m, r] : height_instances()) {
            o.require(newton_slopes(p, m, r).symmetric(r), "p=" + std::to_string(p) + " m=" + std::to_string(m));
            ++checked;
        }
        o.detail << checked << " instances ";
    });

    std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
    return failures ? 1 : 0;
}
