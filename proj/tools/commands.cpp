#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "cyheight/cache.hpp"
#include "cyheight/errors.hpp"
#include "cyheight/fermat.hpp"
#include "cyheight/kummer.hpp"
#include "cyheight/parallel.hpp"
#include "report.hpp"

namespace cyheight::cli {

namespace {

struct Common {
    std::string format = "json";
    std::string cache_dir;
    unsigned threads = 0;
    bool timings = false;
    std::uint64_t max_alphas = EnumerationBudget{}.max_alphas;
};

struct Params {
    std::uint64_t p = 0;
    std::uint32_t m = 0;
    std::uint32_t r = 0;
};

struct ZetaArgs {
    std::vector<std::uint32_t> check;
    std::uint64_t max_points = PointCountBudget{}.max_candidates;
};

struct StickelbergerArgs {
    std::uint32_t precision = 0;
    std::uint32_t max_doublings = 8;
};

struct SurveyArgs {
    std::string kind;
    std::uint64_t p_min = 2;
    std::uint64_t p_max = 0;
    std::uint64_t max_elliptic_p = EllipticBudget{}.max_p;
};

struct KummerArgs {
    std::uint64_t p = 0;
    std::int64_t a = 0;
    std::int64_t b = 1;
    std::uint64_t max_elliptic_p = EllipticBudget{}.max_p;
};

Json height_json(const HeightValue& h) {
    if (h.is_infinite()) return "inf";
    return h.value();
}

Json optional_height_json(const std::optional<HeightValue>& h) {
    if (!h) return nullptr;
    return height_json(*h);
}

Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    return Format::text;
}

unsigned thread_count(const Common& c) { return c.threads ? c.threads : default_threads(); }

std::optional<std::filesystem::path> cache_directory(const Common& c) {
    if (!c.cache_dir.empty()) return std::filesystem::path(c.cache_dir);
    if (const char* env = std::getenv(kCacheDirEnv); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

// A Jacobi table for (p, m), seeded from and written back to the cache directory.
class CachedTable {
  public:
    CachedTable(const Params& params, const std::optional<std::filesystem::path>& dir, std::ostream& err)
        : params_(params), dir_(dir) {
        const auto fp = FermatParams::make(params.p, params.m, params.r);
        table_.emplace(Character::build(FieldCache::global().get(fp.p, fp.f), params.m));
        if (dir_) {
            loaded_ = load_jacobi_cache(path(), fp.p, params.m, params.r, *table_);
            if (loaded_) err << "cache: loaded " << loaded_ << " Jacobi sums from " << path().string() << '\n';
        }
    }

    JacobiSumTable* get() { return &*table_; }

    void save(std::ostream& err) {
        if (!dir_ || table_->computed_count() == 0) return;
        try {
            std::filesystem::create_directories(*dir_);
            save_jacobi_cache(path(), static_cast<std::uint32_t>(params_.p), params_.m, params_.r, *table_);
        } catch (const std::exception& e) {
            err << "warning: could not write Jacobi cache: " << e.what() << '\n';
        }
    }

  private:
    std::filesystem::path path() const {
        return jacobi_cache_path(*dir_, static_cast<std::uint32_t>(params_.p), params_.m, params_.r);
    }

    Params params_;
    std::optional<std::filesystem::path> dir_;
    std::optional<JacobiSumTable> table_;
    std::size_t loaded_ = 0;
};

Json base_doc(const char* command, const Params& params) {
    const auto fp = FermatParams::make(params.p, params.m, params.r);
    Json doc = Json::object();
    doc["command"] = command;
    doc["p"] = params.p;
    doc["m"] = params.m;
    doc["r"] = params.r;
    doc["f"] = fp.f;
    doc["q"] = fp.q;
    return doc;
}

int cmd_height(const Params& params, const Common& common, Report& report) {
    const EnumerationBudget budget{common.max_alphas};
    report.kind = "height";
    Json doc = base_doc("height", params);
    const auto details = fermat_height_details(params.p, params.m, params.r, budget);
    const auto predicted = theorem_height(params.p, params.m, params.r);
    doc["h"] = height_json(details.height);
    doc["deficient"] = details.deficient;
    doc["alpha_count"] = details.total;
    doc["predicted"] = optional_height_json(predicted);
    const bool agree = !predicted || *predicted == details.height;
    doc["agree"] = predicted ? Json(agree) : Json(nullptr);

    const auto slopes = newton_slopes(params.p, params.m, params.r, budget);
    Json slope_rows = Json::array();
    for (const auto& [s, k] : slopes.entries) slope_rows.push_back({{"slope", s.to_string()}, {"multiplicity", k}});
    const bool symmetric = slopes.symmetric(params.r);
    doc["slopes_symmetric"] = symmetric;
    doc["hodge"] = hodge_numbers_fermat(params.m, params.r, budget).h;
    if (params.r % 2 == 0 && params.m >= 4) {
        doc["fully_rigged"] = fully_rigged_fermat(params.p, params.m, params.r);
    } else {
        doc["fully_rigged"] = nullptr;
    }
    doc["slopes"] = std::move(slope_rows);
    report.doc = std::move(doc);
    return agree && symmetric ? kOk : kCheckMismatch;
}

int cmd_zeta(const Params& params, const ZetaArgs& args, const Common& common, Report& report,
             std::ostream& err) {
    report.kind = "zeta";
    report.table_key = "checks";
    Json doc = base_doc("zeta", params);
    CachedTable cached(params, cache_directory(common), err);
    ZetaOptions opts;
    opts.threads = thread_count(common);
    opts.table = cached.get();
    opts.budget = EnumerationBudget{common.max_alphas};
    const ZetaData zeta = zeta_fermat(params.p, params.m, params.r, opts);
    cached.save(err);

    doc["degree"] = zeta.P_coeffs.size() - 1;
    doc["sign_exponent"] = zeta.sign_exponent;
    Json coeffs = Json::array();
    for (const auto& c : zeta.P_coeffs) coeffs.push_back(c.get_str());
    doc["P"] = std::move(coeffs);

    bool all_match = true;
    Json checks = Json::array();
    for (std::uint32_t s : args.check) {
        if (s < 1) throw InvalidInput("--check: s must be >= 1");
        const BigInt from_zeta = point_count_from_zeta(zeta, s);
        const std::uint64_t brute =
            brute_force_point_count(params.p, params.m, params.r, s, PointCountBudget{args.max_points});
        const bool match = from_zeta == BigInt(std::to_string(brute));
        all_match = all_match && match;
        checks.push_back({{"s", s}, {"from_zeta", from_zeta.get_str()}, {"brute_force", std::to_string(brute)},
                          {"match", match}});
    }
    doc["checks"] = std::move(checks);
    report.doc = std::move(doc);
    return all_match ? kOk : kCheckMismatch;
}

int cmd_stickelberger(const Params& params, const StickelbergerArgs& args, const Common& common,
                      Report& report, std::ostream& err) {
    report.kind = "stickelberger";
    report.table_key = "rows";
    Json doc = base_doc("stickelberger", params);
    CachedTable cached(params, cache_directory(common), err);
    StickelbergerOptions opts;
    opts.threads = thread_count(common);
    opts.precision = args.precision;
    opts.max_doublings = args.max_doublings;
    opts.table = cached.get();
    opts.budget = EnumerationBudget{common.max_alphas};
    const auto rows = stickelberger_rows(params.p, params.m, params.r, opts);
    cached.save(err);

    std::uint64_t equal = 0, mismatched = 0, exhausted = 0, weil_failures = 0;
    Json out_rows = Json::array();
    for (const auto& row : rows) {
        if (!row.valuation.exact) {
            ++exhausted;
            err << "precision exhausted for alpha " << row.alpha.to_string() << ": valuation "
                << row.valuation.to_string() << '\n';
        } else if (row.equal()) {
            ++equal;
        } else {
            ++mismatched;
        }
        if (!row.weil_ok) ++weil_failures;
        out_rows.push_back({{"alpha", row.alpha.to_string()},
                            {"a_h", row.a_h},
                            {"valuation", row.valuation.value},
                            {"exact", row.valuation.exact},
                            {"equal", row.equal()},
                            {"weil", row.weil_ok}});
    }
    doc["total"] = rows.size();
    doc["equal"] = equal;
    doc["mismatched"] = mismatched;
    doc["exhausted"] = exhausted;
    doc["weil_failures"] = weil_failures;
    doc["rows"] = std::move(out_rows);
    report.doc = std::move(doc);
    if (mismatched || weil_failures) return kCheckMismatch;
    return exhausted ? kBudgetExhausted : kOk;
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = lo; p <= hi; ++p) {
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

int cmd_survey(const Params& params, const SurveyArgs& args, const Common& common, Report& report,
               std::ostream& err) {
    if (args.p_max < args.p_min) throw InvalidInput("survey: empty range, --p-max < --p-min");
    report.kind = "survey-" + args.kind;
    report.table_key = "rows";
    const bool kummer = args.kind == "kummer";
    if (!kummer) {
        if (params.m < 3) throw InvalidInput("survey " + args.kind + ": --m must be >= 3");
        if (params.r < 1) throw InvalidInput("survey " + args.kind + ": --r must be >= 1");
        if (args.kind == "artin" && (params.r % 2 != 0 || params.m != params.r + 2)) {
            throw InvalidInput("survey artin: need r even and m = r + 2");
        }
    }
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : primes_in(args.p_min, args.p_max)) {
        if (kummer ? p >= 5 : gcd_u64(p, params.m) == 1) primes.push_back(p);
    }

    const EnumerationBudget budget{common.max_alphas};
    const EllipticBudget ec_budget{args.max_elliptic_p};
    std::vector<Json> rows(primes.size());
    std::vector<int> codes(primes.size(), kOk);
    parallel_for(primes.size(), thread_count(common), [&](std::size_t i) {
        const std::uint64_t p = primes[i];
        Json row = Json::object();
        row["p"] = p;
        try {
            if (kummer) {
                const auto E = EllipticCurve::make(p, 0, 1);
                const auto n = ec_count_points(E, ec_budget);
                const std::int64_t ap = static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(n);
                const std::uint32_t rank = ap == 0 ? 0 : 1;
                const AbelianData e{1, rank};
                const AbelianData cube[] = {e, e, e};
                const HeightValue h = kummer_height(product(cube));
                const HeightValue rigid = rigid_example_height(p);
                row["p_mod_3"] = p % 3;
                row["N"] = n;
                row["a_p"] = ap;
                row["p_rank"] = rank;
                row["height"] = height_json(h);
                row["rigid_height"] = height_json(rigid);
                row["agree"] = h == rigid;
                if (!(h == rigid)) codes[i] = kCheckMismatch;
            } else {
                const auto details = fermat_height_details(p, params.m, params.r, budget);
                const auto fp = FermatParams::make(p, params.m, params.r);
                row["f"] = fp.f;
                row["height"] = height_json(details.height);
                row["deficient"] = details.deficient;
                row["additive_type"] = details.height.is_infinite();
                const bool rig_defined = params.r % 2 == 0 && params.m >= 4;
                const bool rigged = rig_defined && fully_rigged_fermat(p, params.m, params.r);
                row["fully_rigged"] = rig_defined ? Json(rigged) : Json(nullptr);
                if (args.kind == "artin") {
                    row["counterexample"] = details.height.is_infinite() && !rigged;
                } else {
                    const auto predicted = theorem_height(p, params.m, params.r);
                    const bool agree = !predicted || *predicted == details.height;
                    row["predicted"] = optional_height_json(predicted);
                    row["agree"] = predicted ? Json(agree) : Json(nullptr);
                    if (!agree) codes[i] = kCheckMismatch;
                }
            }
        } catch (const BudgetExceeded& e) {
            row["error"] = e.what();
            codes[i] = kBudgetExhausted;
        }
        rows[i] = std::move(row);
    });

    Json doc = Json::object();
    doc["command"] = "survey";
    doc["kind"] = args.kind;
    if (!kummer) {
        doc["m"] = params.m;
        doc["r"] = params.r;
    }
    doc["p_min"] = args.p_min;
    doc["p_max"] = args.p_max;
    Json highlighted = Json::array();
    std::uint64_t mismatches = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].contains("error")) {
            err << "p = " << primes[i] << ": " << rows[i]["error"].get<std::string>() << '\n';
        }
        if (codes[i] == kCheckMismatch) ++mismatches;
        if (args.kind == "artin" && rows[i].value("counterexample", false)) highlighted.push_back(primes[i]);
        if (!rows[i].contains("height")) continue;
        const bool infinite = rows[i]["height"] == "inf";
        if ((args.kind == "height" && !infinite) || (kummer && infinite)) highlighted.push_back(primes[i]);
    }
    const char* label = args.kind == "artin" ? "counterexamples" : args.kind == "height" ? "finite_height_primes"
                                                                                         : "infinite_height_primes";
    doc["row_count"] = rows.size();
    doc["mismatches"] = mismatches;
    doc[label] = std::move(highlighted);
    doc["rows"] = Json(rows);
    report.doc = std::move(doc);

    bool exhausted = false;
    for (int c : codes) exhausted = exhausted || c == kBudgetExhausted;
    if (mismatches) return kCheckMismatch;
    return exhausted ? kBudgetExhausted : kOk;
}

int cmd_kummer(const KummerArgs& args, Report& report) {
    report.kind = "kummer";
    const auto E = EllipticCurve::make(args.p, args.a, args.b);
    const EllipticBudget budget{args.max_elliptic_p};
    const std::uint64_t n = ec_count_points(E, budget);
    const std::int64_t ap = ec_trace(E, budget);
    const std::uint32_t rank = ec_p_rank(E, budget);
    const AbelianData e{1, rank};
    const AbelianData cube[] = {e, e, e};

    Json doc = Json::object();
    doc["command"] = "kummer";
    doc["p"] = args.p;
    doc["A"] = args.a;
    doc["B"] = args.b;
    doc["N"] = n;
    doc["a_p"] = ap;
    doc["p_rank"] = rank;
    doc["supersingular"] = rank == 0;
    doc["height_E"] = rank == 1 ? 1 : 2;
    doc["height"] = height_json(kummer_height(product(cube)));
    const bool standard = args.a == 0 && args.b == 1;
    doc["rigid_height"] = standard ? height_json(rigid_example_height(args.p)) : Json(nullptr);
    report.doc = std::move(doc);
    if (standard && !(kummer_height(product(cube)) == rigid_example_height(args.p))) return kCheckMismatch;
    return kOk;
}

void add_common(CLI::App* sub, Common& common) {
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    sub->add_option("--cache-dir", common.cache_dir,
                    std::string("Cache directory (overrides $") + kCacheDirEnv + ")");
    sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
    sub->add_flag("--timings", common.timings, "Report elapsed time on stderr");
    sub->add_option("--max-alphas", common.max_alphas, "Budget on |A_{m,r}|")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_params(CLI::App* sub, Params& params, bool required) {
    auto* p = sub->add_option("--p", params.p, "Prime p");
    auto* m = sub->add_option("--m", params.m, "Degree m");
    auto* r = sub->add_option("--r", params.r, "Dimension r");
    if (required) {
        p->required();
        m->required();
        r->required();
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Arithmetic invariants of Fermat and Kummer Calabi-Yau varieties", "cyheight"};
    app.require_subcommand(1);

    Common common;
    Params params;
    ZetaArgs zeta_args;
    StickelbergerArgs st_args;
    SurveyArgs survey_args;
    KummerArgs kummer_args;

    auto* height = app.add_subcommand("height", "Formal-group height of X_m^r over F_q");
    add_params(height, params, true);
    add_common(height, common);

    auto* zeta = app.add_subcommand("zeta", "Zeta numerator and point-count cross-check");
    add_params(zeta, params, true);
    zeta->add_option("--check", zeta_args.check, "Extension degrees s to check, comma separated")
        ->delimiter(',');
    zeta->add_option("--max-points", zeta_args.max_points, "Budget on brute-force candidates")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(zeta, common);

    auto* stick = app.add_subcommand("stickelberger", "Compare ord_P j(alpha) with A_H(alpha)");
    add_params(stick, params, true);
    stick->add_option("--precision", st_args.precision, "Initial p-adic precision k (0 = f r + 2)");
    stick->add_option("--max-doublings", st_args.max_doublings, "Precision doublings before giving up")
        ->capture_default_str();
    add_common(stick, common);

    auto* survey = app.add_subcommand("survey", "One row per prime in a range");
    survey->add_option("kind", survey_args.kind, "artin | height | kummer")
        ->required()
        ->check(CLI::IsMember({"artin", "height", "kummer"}));
    survey->add_option("--m", params.m, "Degree m");
    survey->add_option("--r", params.r, "Dimension r");
    survey->add_option("--p-min", survey_args.p_min, "Smallest prime")->capture_default_str();
    survey->add_option("--p-max", survey_args.p_max, "Largest prime")->required();
    survey->add_option("--max-elliptic-p", survey_args.max_elliptic_p, "Budget on p for point counting")
        ->check(CLI::PositiveNumber);
    add_common(survey, common);

    auto* kummer = app.add_subcommand("kummer", "y^2 = x^3 + A x + B and its E^3 Kummer quotient");
    kummer->add_option("--p", kummer_args.p, "Prime p >= 5")->required();
    kummer->add_option("--a", kummer_args.a, "Coefficient A")->capture_default_str();
    kummer->add_option("--b", kummer_args.b, "Coefficient B")->capture_default_str();
    kummer->add_option("--max-elliptic-p", kummer_args.max_elliptic_p, "Budget on p for point counting")
        ->check(CLI::PositiveNumber);
    add_common(kummer, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help_out, help_err;
        const int code = app.exit(e, help_out, help_err);
        if (code == 0) {
            out << help_out.str();
            return kOk;
        }
        err << help_err.str() << help_out.str();
        return kInvalidInput;
    }

    const auto start = std::chrono::steady_clock::now();
    Report report;
    int code = kOk;
    try {
        FieldCache::global().set_directory(cache_directory(common));
        if (height->parsed()) {
            code = cmd_height(params, common, report);
        } else if (zeta->parsed()) {
            code = cmd_zeta(params, zeta_args, common, report, err);
        } else if (stick->parsed()) {
            code = cmd_stickelberger(params, st_args, common, report, err);
        } else if (survey->parsed()) {
            code = cmd_survey(params, survey_args, common, report, err);
        } else {
            code = cmd_kummer(kummer_args, report);
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const BudgetExceeded& e) {
        err << "error: budget '" << e.budget() << "' exceeded: " << e.what() << '\n';
        return kBudgetExhausted;
    } catch (const PrecisionExhausted& e) {
        err << "error: precision exhausted: " << e.what() << '\n';
        return kBudgetExhausted;
    } catch (const InternalError& e) {
        err << "error: internal consistency check failed: " << e.what() << '\n';
        return kCheckMismatch;
    }

    render(report, parse_format(common.format), out);
    if (code == kCheckMismatch) err << "check mismatch\n";
    if (common.timings) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        err << "timing: " << secs << " s\n";
    }
    return code;
}

}  // namespace cyheight::cli
