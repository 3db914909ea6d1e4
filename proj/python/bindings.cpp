#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hurwitz/characters.hpp"
#include "hurwitz/chevalley_weil.hpp"
#include "hurwitz/datum.hpp"
#include "hurwitz/graphs.hpp"
#include "hurwitz/nielsen.hpp"
#include "hurwitz/taut.hpp"

namespace py = pybind11;
using namespace hurwitz;

namespace {

py::object to_py(const Int& x) { return py::module_::import("builtins").attr("int")(x.get_str()); }
py::object to_py(const Rat& x) { return py::module_::import("fractions").attr("Fraction")(rat_to_string(x)); }

py::list to_py(const std::vector<Int>& v) {
    py::list out;
    for (const Int& x : v) out.append(to_py(x));
    return out;
}

/// (H_gen, k, mult) triples as in the datum JSON schema.
using ClassSpec = std::tuple<std::string, long, long>;

HurwitzDatum make_datum(const GroupPtr& g, const std::vector<ClassSpec>& classes) {
    HurwitzDatum xi(g);
    for (const auto& [gen, k, mult] : classes) xi.add(holonomy_element(*g, g->parse_element(gen), k), mult);
    return xi;
}

std::vector<ClassSpec> datum_classes(const HurwitzDatum& xi) {
    std::vector<ClassSpec> out;
    for (const auto& [s, mult] : xi.classes) {
        HolonomyPair p = holonomy_pair(*xi.group, s);
        out.emplace_back(xi.group->element(p.generator).cycles(), p.k, mult);
    }
    return out;
}

std::vector<CyclicBranch> to_branches(const std::vector<std::pair<long, long>>& v) {
    std::vector<CyclicBranch> out;
    for (const auto& [e, nu] : v) out.push_back({e, nu});
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Hurwitz-space combinatorics";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<Group, std::shared_ptr<Group>>(m, "Group")
        .def(py::init([](const std::string& name) { return std::make_shared<Group>(Group::named(name)); }),
             py::arg("name"))
        .def_static(
            "from_gens",
            [](const std::vector<std::string>& gens) {
                std::vector<Perm> perms;
                size_t degree = 0;
                for (const std::string& s : gens) {
                    perms.push_back(parse_cycles(s));
                    degree = std::max(degree, perms.back().degree());
                }
                for (Perm& p : perms) p = p.extended(degree);
                return std::make_shared<Group>(Group::generate(perms, {}, degree));
            },
            py::arg("gens"))
        .def_property_readonly("name", &Group::name)
        .def_property_readonly("order", &Group::order)
        .def_property_readonly("degree", &Group::degree)
        .def_property_readonly("exponent", &Group::exponent)
        .def_property_readonly("generators",
                               [](const Group& g) {
                                   std::vector<std::string> out;
                                   for (Elem x : g.generators()) out.push_back(g.element(x).cycles());
                                   return out;
                               })
        .def("classes",
             [](const Group& g) {
                 std::vector<std::tuple<std::string, size_t, long>> out;
                 for (const ConjugacyClass& c : g.classes())
                     out.emplace_back(g.element(c.representative).cycles(), c.members.size(),
                                      g.element_order(c.representative));
                 return out;
             })
        .def("character_degrees", [](const Group& g) { return character_table(g).degrees; })
        .def("__repr__", [](const Group& g) { return "<Group " + g.name() + " of order " + std::to_string(g.order()) + ">"; });

    py::class_<HurwitzDatum>(m, "Datum")
        .def(py::init([](std::shared_ptr<Group> g, const std::vector<ClassSpec>& classes) {
                 return make_datum(g, classes);
             }),
             py::arg("group"), py::arg("classes"))
        .def_property_readonly("degree", &HurwitzDatum::degree)
        .def("classes", &datum_classes)
        .def(
            "genus", [](const HurwitzDatum& xi, long base_genus) { return to_py(genus_from_datum(base_genus, xi).genus); },
            py::arg("base_genus") = 0)
        .def("__eq__", [](const HurwitzDatum& a, const HurwitzDatum& b) { return a == b; });

    m.def(
        "nielsen",
        [](const HurwitzDatum& xi, long base_genus, unsigned jobs) {
            NielsenOptions opts;
            opts.jobs = jobs;
            NielsenResult r;
            {
                py::gil_scoped_release release;
                r = nielsen_orbits(base_genus, xi, opts);
            }
            py::dict out;
            out["nielsen_number"] = r.nielsen_number;
            out["hurwitz_number"] = r.hurwitz_number;
            out["orbit_sizes"] = r.orbit_sizes;
            out["weighted_count"] = to_py(r.weighted_count);
            return out;
        },
        py::arg("datum"), py::arg("base_genus") = 0, py::arg("jobs") = 1);

    m.def(
        "cw_multiplicities",
        [](const HurwitzDatum& xi, long base_genus, long twist) {
            return to_py(cw_multiplicities(base_genus, xi, twist, character_table(*xi.group)));
        },
        py::arg("datum"), py::arg("base_genus") = 0, py::arg("twist") = 1);
    m.def(
        "hodge_ranks",
        [](const HurwitzDatum& xi, long base_genus) {
            return to_py(hodge_ranks(base_genus, xi, character_table(*xi.group)));
        },
        py::arg("datum"), py::arg("base_genus") = 0);
    m.def(
        "cw_invert",
        [](const HurwitzDatum& xi, long base_genus) {
            CharacterTable t = character_table(*xi.group);
            std::map<long, std::vector<Int>> cache;
            CwOracle oracle = [&](long mm, size_t v) {
                auto it = cache.find(mm);
                if (it == cache.end()) it = cache.emplace(mm, cw_multiplicities(base_genus, xi, mm, t)).first;
                return it->second.at(v);
            };
            InversionResult r = invert_cw(oracle, xi.group, t);
            return py::make_tuple(r.datum, r.base_genus);
        },
        py::arg("datum"), py::arg("base_genus") = 0, "Recovers (datum, base genus) from the multiplicities of a datum.");

    m.def(
        "boundary_labels",
        [](long n, const std::vector<std::pair<long, long>>& branches, long base_genus) {
            std::vector<std::string> out;
            for (const BoundaryComponent& c : boundary_components(n, base_genus, to_branches(branches)))
                out.push_back(c.label());
            return out;
        },
        py::arg("n"), py::arg("branches"), py::arg("base_genus") = 0);
    m.def(
        "lambda_relation",
        [](long n, const std::vector<std::pair<long, long>>& branches, long j, long base_genus) {
            PicContext ctx = make_context(n, base_genus, to_branches(branches));
            py::dict out;
            for (const auto& [s, c] : pic_normalize(lambda_relation(ctx, j), ctx).coeff) out[py::str(s)] = to_py(c);
            return out;
        },
        py::arg("n"), py::arg("branches"), py::arg("j"), py::arg("base_genus") = 0);

    m.def("tau", [](long a, long n) { return to_py(tau_recursive(a, n)); }, py::arg("a"), py::arg("n"));
    m.def(
        "psi_integral", [](long n, const std::vector<long>& alpha) { return to_py(psi_integral(n, alpha)); },
        py::arg("n"), py::arg("alpha"));
    m.def(
        "hyperelliptic_integral", [](long g, long a) { return to_py(hyperelliptic_integral_closed(g, a)); },
        py::arg("g"), py::arg("a"));
    m.def(
        "hodge_recursion",
        [](long p, long g, const std::vector<long>& xi, const std::string& weight) {
            if (weight != "published" && weight != "rederived")
                throw py::value_error("weight is 'published' or 'rederived'");
            return to_py(hodge_recursion(p, g, xi, weight == "published" ? RecursionWeight::published
                                                                         : RecursionWeight::rederived));
        },
        py::arg("p"), py::arg("g"), py::arg("xi"), py::arg("weight") = "published");
}
