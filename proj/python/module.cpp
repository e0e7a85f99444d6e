#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyheight/cache.hpp"
#include "cyheight/errors.hpp"
#include "cyheight/fermat.hpp"
#include "cyheight/kummer.hpp"
#include "cyheight/lattice.hpp"

namespace py = pybind11;
using namespace cyheight;

namespace {

py::int_ to_py(const BigInt& n) { return py::int_(py::str(n.get_str())); }

py::object fraction(const mpq_class& x) {
    static const py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(x.get_str());
}

// Finite heights become ints, infinite ones math.inf.
py::object height_to_py(const HeightValue& h) {
    if (h.is_infinite()) return py::module_::import("math").attr("inf");
    return py::int_(h.value());
}

AlphaVector alpha_of(std::uint32_t m, const std::vector<std::uint32_t>& a) { return AlphaVector::make(m, a); }

py::tuple alpha_to_py(const AlphaVector& a) { return py::cast(a.components()); }

py::list coeffs_to_py(const CycInt& z) {
    py::list out;
    for (const auto& c : z.coeffs()) out.append(to_py(c));
    return out;
}

Character character_for(std::uint64_t p, std::uint32_t m) {
    if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
    if (gcd_u64(p, m) != 1) throw InvalidInput("gcd(p, m) != 1");
    const auto f = order_mod(p, m);
    return Character::build(FieldCache::global().get(static_cast<std::uint32_t>(p), f), m);
}

QuadLattice lattice_to_cpp(const QuadPoly& poly, const std::string& which) {
    if (which == "period") return period_lattice(poly);
    if (which == "standard") return standard_lattice(poly);
    throw InvalidInput("lattice must be 'period' or 'standard'");
}

py::list basis_to_py(const QuadLattice& L) {
    py::list out;
    for (std::size_t i = 0; i < 2; ++i) out.append(py::make_tuple(fraction(L.basis(i).u), fraction(L.basis(i).v)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_cyheight, mod) {
    mod.doc() = "Formal group heights of Fermat and Kummer Calabi-Yau varieties";

    py::register_exception<BudgetExceeded>(mod, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<PrecisionExhausted>(mod, "PrecisionExhausted", PyExc_RuntimeError);
    py::register_exception<InternalError>(mod, "InternalError", PyExc_RuntimeError);
    // InvalidInput derives from std::invalid_argument and surfaces as ValueError.

    mod.def("is_prime", &is_prime, py::arg("n"));
    mod.def("order_mod", &order_mod, py::arg("p"), py::arg("m"));
    mod.def("subgroup_H", &subgroup_H, py::arg("p"), py::arg("m"));

    mod.def("count_A", &count_A, py::arg("m"), py::arg("r"));
    mod.def(
        "enumerate_A",
        [](std::uint32_t m, std::uint32_t r, std::uint64_t max_alphas) {
            py::list out;
            for (const auto& a : enumerate_A(m, r, EnumerationBudget{max_alphas})) out.append(alpha_to_py(a));
            return out;
        },
        py::arg("m"), py::arg("r"), py::arg("max_alphas") = EnumerationBudget{}.max_alphas);
    mod.def(
        "stickelberger_AH",
        [](const std::vector<std::uint32_t>& alpha, std::uint32_t m, std::uint64_t p) {
            return stickelberger_AH(alpha_of(m, alpha), p);
        },
        py::arg("alpha"), py::arg("m"), py::arg("p"));

    mod.def(
        "jacobi_sum",
        [](std::uint64_t p, std::uint32_t m, const std::vector<std::uint32_t>& alpha) {
            const auto chi = character_for(p, m);
            const auto a = alpha_of(m, alpha);
            CycInt j(m);
            {
                py::gil_scoped_release release;
                j = jacobi_sum(a, chi);
            }
            return coeffs_to_py(j);
        },
        py::arg("p"), py::arg("m"), py::arg("alpha"),
        "Coordinates of j(alpha) in the basis 1, zeta, ..., zeta^(phi(m)-1).");

    mod.def(
        "height",
        [](std::uint64_t p, std::uint32_t m, std::uint32_t r) { return height_to_py(height_fermat(p, m, r)); },
        py::arg("p"), py::arg("m"), py::arg("r"));
    mod.def(
        "theorem_height",
        [](std::uint64_t p, std::uint32_t m, std::uint32_t r) -> py::object {
            const auto h = theorem_height(p, m, r);
            return h ? height_to_py(*h) : py::none();
        },
        py::arg("p"), py::arg("m"), py::arg("r"));
    mod.def(
        "height_details",
        [](std::uint64_t p, std::uint32_t m, std::uint32_t r) {
            const auto d = fermat_height_details(p, m, r);
            py::dict out;
            out["height"] = height_to_py(d.height);
            out["deficient"] = d.deficient;
            out["total"] = d.total;
            return out;
        },
        py::arg("p"), py::arg("m"), py::arg("r"));
    mod.def(
        "newton_slopes",
        [](std::uint64_t p, std::uint32_t m, std::uint32_t r) {
            py::list out;
            for (const auto& [s, mult] : newton_slopes(p, m, r).entries)
                out.append(py::make_tuple(fraction(mpq_class(s.num, s.den)), mult));
            return out;
        },
        py::arg("p"), py::arg("m"), py::arg("r"), "List of (slope, multiplicity), slopes ascending.");

    mod.def(
        "zeta",
        [](std::uint64_t p, std::uint32_t m, std::uint32_t r, unsigned threads) {
            ZetaData z;
            {
                py::gil_scoped_release release;
                ZetaOptions opts;
                opts.threads = threads;
                z = zeta_fermat(p, m, r, opts);
            }
            py::dict out;
            out["q"] = z.q;
            out["f"] = z.f;
            py::list P, poles;
            for (const auto& c : z.P_coeffs) P.append(to_py(c));
            for (const auto& c : z.pole_roots) poles.append(to_py(c));
            out["P"] = P;
            out["pole_roots"] = poles;
            out["sign_exponent"] = z.sign_exponent;
            return out;
        },
        py::arg("p"), py::arg("m"), py::arg("r"), py::arg("threads") = 1,
        "P(T) coefficients (constant first), the pole roots 1, q, ..., q^r and the sign (-1)^(r-1).");
    mod.def(
        "point_count",
        [](std::uint64_t p, std::uint32_t m, std::uint32_t r, std::uint32_t s) {
            BigInt n;
            {
                py::gil_scoped_release release;
                n = point_count_from_zeta(zeta_fermat(p, m, r), s);
            }
            return to_py(n);
        },
        py::arg("p"), py::arg("m"), py::arg("r"), py::arg("s") = 1);
    mod.def(
        "brute_force_point_count",
        [](std::uint64_t p, std::uint32_t m, std::uint32_t r, std::uint32_t s, std::uint64_t max_candidates) {
            py::gil_scoped_release release;
            return brute_force_point_count(p, m, r, s, PointCountBudget{max_candidates});
        },
        py::arg("p"), py::arg("m"), py::arg("r"), py::arg("s") = 1,
        py::arg("max_candidates") = PointCountBudget{}.max_candidates);

    mod.def(
        "hodge_numbers", [](std::uint32_t m, std::uint32_t r) { return hodge_numbers_fermat(m, r).h; },
        py::arg("m"), py::arg("r"));
    mod.def("fully_rigged", &fully_rigged_fermat, py::arg("p"), py::arg("m"), py::arg("r"));
    mod.def(
        "artin_comparison",
        [](std::uint64_t p, std::uint32_t m, std::uint32_t r) {
            const auto c = artin_comparison(p, m, r);
            py::dict out;
            out["additive_type"] = c.additive_type;
            out["fully_rigged"] = c.fully_rigged;
            return out;
        },
        py::arg("p"), py::arg("m"), py::arg("r"));

    mod.def(
        "stickelberger_rows",
        [](std::uint64_t p, std::uint32_t m, std::uint32_t r, unsigned threads) {
            std::vector<StickelbergerRow> rows;
            {
                py::gil_scoped_release release;
                StickelbergerOptions opts;
                opts.threads = threads;
                rows = stickelberger_rows(p, m, r, opts);
            }
            py::list out;
            for (const auto& row : rows) {
                py::dict d;
                d["alpha"] = alpha_to_py(row.alpha);
                d["a_h"] = row.a_h;
                d["valuation"] = row.valuation.value;
                d["exact"] = row.valuation.exact;
                d["equal"] = row.equal();
                d["weil"] = row.weil_ok;
                out.append(d);
            }
            return out;
        },
        py::arg("p"), py::arg("m"), py::arg("r"), py::arg("threads") = 1);

    mod.def(
        "ec_count_points",
        [](std::uint64_t p, std::int64_t A, std::int64_t B) { return ec_count_points(EllipticCurve::make(p, A, B)); },
        py::arg("p"), py::arg("A"), py::arg("B"));
    mod.def(
        "ec_trace", [](std::uint64_t p, std::int64_t A, std::int64_t B) { return ec_trace(EllipticCurve::make(p, A, B)); },
        py::arg("p"), py::arg("A"), py::arg("B"));
    mod.def(
        "ec_p_rank",
        [](std::uint64_t p, std::int64_t A, std::int64_t B) { return ec_p_rank(EllipticCurve::make(p, A, B)); },
        py::arg("p"), py::arg("A"), py::arg("B"));
    mod.def(
        "abelian_height",
        [](std::uint32_t n, std::uint32_t p_rank) { return height_to_py(abelian_height(AbelianData::make(n, p_rank))); },
        py::arg("n"), py::arg("p_rank"));
    mod.def(
        "kummer_example_height", [](std::uint64_t p) { return height_to_py(kummer_example_height(p)); }, py::arg("p"));
    mod.def(
        "rigid_example_height", [](std::uint64_t p) { return height_to_py(rigid_example_height(p)); }, py::arg("p"));

    mod.def(
        "lattice_basis",
        [](std::int64_t a, std::int64_t b, std::int64_t c, const std::string& which) {
            return basis_to_py(lattice_to_cpp(QuadPoly::make(a, b, c), which));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("which") = "period",
        "Hermite basis [(u1, v1), (0, v2)] of the lattice, elements written u + v*omega.");
    mod.def(
        "lattice_index",
        [](std::int64_t a, std::int64_t b, std::int64_t c) {
            const auto poly = QuadPoly::make(a, b, c);
            return fraction(lattice_index(period_lattice(poly), standard_lattice(poly)));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), "[Z + Z omega : period lattice] as a Fraction.");
}
