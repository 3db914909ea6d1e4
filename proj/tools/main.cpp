#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "io.hpp"

#include "hurwitz/characters.hpp"
#include "hurwitz/nielsen.hpp"
#include "hurwitz/taut.hpp"

using namespace hurwitz;
using cli::json;
using cli::to_json;
using cli::UsageError;

namespace {

constexpr const char* kVersion = "hurwitz 0.1.0";

const std::map<std::string, std::string> kExplain = {
    {"group", "permutation group closure, conjugacy classes, cyclic-subgroup lattice; character table by "
              "Burnside-Dixon over a prime field lifted to cyclotomic values"},
    {"datum", "ramification data as classes of pairs (cyclic subgroup, primitive character); Riemann-Hurwitz "
              "genus 2g-2 = |G|(2g'-2) + sum |G|(1-1/e); enumeration of generating tuples with product 1; "
              "ramification induced on G/H"},
    {"nielsen", "Nielsen classes of generating tuples with the surface relation up to simultaneous conjugation; "
                "orbits of the colored braid group give the topological types, their number is the Nielsen number"},
    {"cw", "Chevalley-Weil decomposition of H^0(C, omega^m) by degree of the isotypic bundles and Riemann-Roch; "
           "m = 1 gives the Hodge ranks"},
    {"cw-invert", "recovers the datum from Chevalley-Weil multiplicities: fixed-point counts per cyclic subgroup "
                  "from trivial-isotypic dimensions, Moebius inversion on the cyclic lattice, local exponents"},
    {"graphs", "modular graphs with group actions: quotient graph with Riemann-Hurwitz vertex genera, genus as "
               "sum of vertex genera plus dim H_1, decomposition and inertia subgroups, exactness of "
               "H_1(Gamma) -> H_1(Gamma/G) -> (G/D)_ab -> 1 over Z, level-structure shapes"},
    {"boundary", "codimension-one boundary of cyclic covers of curves: splittings of the branch divisor with "
                 "node isotropy and symbol (a, b), a + b = n, and irreducible-node loops; discriminant "
                 "ramification (|H| - 1) on NS components"},
    {"taut", "Picard rewriting of psi, mu, kappa and lambda classes on cyclic covers of the line; eigenbundle "
             "lambda relations with R and NS boundary terms; the summed prime relation and the hyperelliptic "
             "lambda-boundary relation with its pushforward to the unlabeled locus"},
    {"hodge", "intersection numbers on M_{0,n}: psi monomials by multinomial closed form and string equation, "
              "kappa_a psi^(n-3-a) by forgetful pullback and closed form; hyperelliptic kappa-mu integrals; "
              "lambda^(b-3) integrals over Z/p covers by splitting recursion"},
};

struct Globals {
    unsigned jobs = 1;
    std::string format = "json";
};

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void print_rows(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> width;
    for (const auto& r : rows)
        for (size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], r[i].size());
        }
    for (const auto& r : rows) {
        std::string line;
        for (size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        out << line << "\n";
    }
}

bool is_record_list(const json& v) {
    if (!v.is_array() || v.empty()) return false;
    for (const json& x : v)
        if (!x.is_object()) return false;
    return true;
}

void print_table(std::ostream& out, const json& v) {
    if (!v.is_object()) {
        out << scalar_text(v) << "\n";
        return;
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, const json*>> lists;
    for (const auto& [key, val] : v.items()) {
        if (is_record_list(val))
            lists.emplace_back(key, &val);
        else
            rows.push_back({key, val.is_primitive() ? scalar_text(val) : val.dump()});
    }
    print_rows(out, rows);
    for (const auto& [key, list] : lists) {
        out << "\n" << key << ":\n";
        std::vector<std::string> cols;
        for (const json& rec : *list)
            for (const auto& [k, _] : rec.items())
                if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
        std::vector<std::vector<std::string>> table{cols};
        for (const json& rec : *list) {
            std::vector<std::string> r;
            for (const std::string& c : cols) {
                if (!rec.contains(c))
                    r.push_back("");
                else
                    r.push_back(rec.at(c).is_primitive() ? scalar_text(rec.at(c)) : rec.at(c).dump());
            }
            table.push_back(r);
        }
        print_rows(out, table);
    }
}

json pic_to_json(const PicElement& x) {
    json out = json::object();
    for (const auto& [s, c] : x.coeff) out[s] = to_json(c);
    return out;
}

json elems_to_json(const Group& g, const std::vector<Elem>& v) {
    json out = json::array();
    for (Elem x : v) out.push_back(g.element(x).cycles());
    return out;
}

json ints_to_json(const std::vector<Int>& v) {
    json out = json::array();
    for (const Int& x : v) out.push_back(to_json(x));
    return out;
}

json modular_graph_to_json(const ModularGraph& m) {
    json vertices = json::array(), edges = json::array(), legs = json::array();
    for (size_t i = 0; i < m.vertex_count(); ++i) {
        json hs = json::array();
        for (size_t h = 0; h < m.half_edge_count(); ++h)
            if (m.vertex_of[h] == i) hs.push_back(h);
        vertices.push_back({{"genus", m.genus[i]}, {"half_edges", hs}});
    }
    for (size_t h = 0; h < m.half_edge_count(); ++h) {
        if (m.is_leg(h))
            legs.push_back(h);
        else if (h < m.opposite[h])
            edges.push_back({h, m.opposite[h]});
    }
    return {{"vertices", vertices}, {"edges", edges}, {"legs", legs}};
}

json exactness_to_json(const GGraph& gg) {
    ExactnessReport r = decomposition_inertia(gg);
    return {{"decomposition", elems_to_json(*gg.group, r.decomposition)},
            {"inertia", elems_to_json(*gg.group, r.inertia)},
            {"inertia_in_decomposition", r.inertia_in_decomposition},
            {"normal", r.normal},
            {"h1_upstairs", r.h1_upstairs},
            {"h1_quotient", r.h1_quotient},
            {"abelianized_order", r.abelianized_order},
            {"composite_zero", r.composite_zero},
            {"surjective", r.surjective},
            {"exact_middle", r.exact_middle},
            {"exact", r.exact()}};
}

json quotient_to_json(const GGraph& gg) {
    GraphQuotient q = quotient_and_genus(gg);
    return {{"quotient", modular_graph_to_json(q.quotient)},
            {"upstairs_genus", to_json(q.upstairs_genus)},
            {"downstairs_genus", to_json(q.downstairs_genus)},
            {"vertex_orbit", q.vertex_orbit},
            {"half_edge_orbit", q.half_edge_orbit},
            {"datum", cli::datum_to_json(q.datum)}};
}

json level_to_json(const LevelReport& r) {
    json items = json::array();
    for (const LevelItem& it : r.items) items.push_back({{"name", it.name}, {"pass", it.pass}, {"detail", it.detail}});
    return {{"n", r.n},
            {"genus", r.genus},
            {"h1", r.h1},
            {"inertia_order", r.inertia_order},
            {"automorphism_index", r.automorphism_index},
            {"items", items},
            {"pass", r.pass()}};
}

BoundaryShape parse_shape(const std::string& s) {
    if (s == "segment") return BoundaryShape::segment;
    if (s == "loop") return BoundaryShape::loop;
    return BoundaryShape::both;
}

json boundary_json(long n, long base_genus, const std::vector<CyclicBranch>& branches, const std::string& shape) {
    std::vector<BoundaryComponent> comps = boundary_components(n, base_genus, branches, parse_shape(shape));
    json list = json::array(), disc = json::array();
    for (const BoundaryComponent& c : comps) list.push_back(cli::boundary_to_json(c));
    for (const RamificationTerm& t : discriminant_ramification(comps))
        disc.push_back({{"label", t.label}, {"coefficient", t.coefficient}});
    return {{"n", n}, {"base_genus", base_genus}, {"count", comps.size()}, {"components", list},
            {"discriminant", disc}};
}

json locus_to_json(const HyperellipticLocusRelation& r) {
    json dr = json::object(), dns = json::object();
    for (const auto& [alpha, c] : r.delta_r) dr[std::to_string(alpha)] = to_json(c);
    for (const auto& [beta, c] : r.delta_ns) dns[std::to_string(beta)] = to_json(c);
    return {{"lambda", to_json(r.lambda)}, {"delta_r1", to_json(r.delta_r1)}, {"delta_r", dr}, {"delta_ns", dns}};
}

std::vector<long> prime_nu(long p, const std::string& datum, const std::string& xi) {
    if (!xi.empty() && datum.empty()) return cli::parse_longs(xi);
    if (xi.empty() == datum.empty()) throw UsageError("give exactly one of --datum and --xi");
    std::vector<long> nu;
    for (const CyclicBranch& b : cli::cyclic_datum_branches(p, datum, "")) {
        if (b.e != p) throw DomainError("branch_data", "every branch point needs isotropy of order p");
        nu.push_back(b.nu);
    }
    return nu;
}

}  // namespace

int main(int argc, char** argv) {
    Globals globals;
    std::function<json()> action;

    CLI::App app{"Hurwitz-space combinatorics with exact arithmetic"};
    app.set_version_flag("--version", kVersion);
    app.fallthrough();
    app.require_subcommand(0, 1);
    std::string explain;
    app.add_option("--explain", explain, "Describe what a subcommand computes");
    app.add_option("--jobs", globals.jobs, "Worker threads for orbit search")->check(CLI::Range(1u, 256u));
    app.add_option("--format", globals.format, "Output mode")->check(CLI::IsMember({"json", "table"}));

    // group
    std::string group_arg;
    bool with_characters = false;
    auto* group_cmd = app.add_subcommand("group", "Group summary and character table");
    group_cmd->add_option("--group", group_arg, "Family name, {\"gens\": [...]} or JSON file")->required();
    group_cmd->add_flag("--characters", with_characters, "Include the character table");
    group_cmd->callback([&] {
        action = [&] {
            GroupPtr g = cli::group_from_arg(group_arg);
            json out = cli::group_summary(*g);
            if (with_characters) {
                CharacterTable t = character_table(*g);
                json rows = json::array();
                for (const ClassFunction& r : t.rows) {
                    json row = json::array();
                    for (const Cyclotomic& c : r) row.push_back(c.to_string());
                    rows.push_back(row);
                }
                out["characters"] = {{"modulus", t.modulus}, {"degrees", t.degrees}, {"rows", rows}};
            }
            return out;
        };
    });

    // datum
    std::string datum_path;
    long base_genus = 0;
    auto* datum_cmd = app.add_subcommand("datum", "Ramification data");
    datum_cmd->require_subcommand(1);
    auto* datum_genus = datum_cmd->add_subcommand("genus", "Normalize a datum and compute its genus");
    datum_genus->add_option("--group", group_arg, "Group, overriding the datum file");
    datum_genus->add_option("--datum", datum_path, "Datum JSON file")->required();
    datum_genus->add_option("--genus-base", base_genus, "Genus of the quotient curve")->check(CLI::NonNegativeNumber);
    datum_genus->callback([&] {
        action = [&] {
            HurwitzDatum xi = cli::load_datum(datum_path, group_arg);
            GenusData d = genus_from_datum(base_genus, xi);
            return json{{"datum", cli::datum_to_json(xi)},
                        {"degree", xi.degree()},
                        {"has_trivial", xi.has_trivial()},
                        {"genus", to_json(d.genus)},
                        {"branch_degree", to_json(d.branch_degree)},
                        {"hurwitz_dimension", d.hurwitz_dimension}};
        };
    });
    long branch_count = 0;
    bool labeled = false, modulo_out = false;
    auto* datum_enum = datum_cmd->add_subcommand("enumerate", "Genus-0 data of degree b over an abelian group");
    datum_enum->add_option("--group", group_arg, "Abelian group")->required();
    datum_enum->add_option("--b", branch_count, "Number of branch points")->required()->check(CLI::NonNegativeNumber);
    datum_enum->add_flag("--labeled", labeled, "Tuples on labeled points");
    datum_enum->add_flag("--modulo-out", modulo_out, "One datum per automorphism orbit");
    datum_enum->callback([&] {
        action = [&] {
            GroupPtr g = cli::group_from_arg(group_arg);
            auto data = enumerate_data(*g, branch_count, {labeled, modulo_out});
            json list = json::array();
            for (const auto& d : data) list.push_back(elems_to_json(*g, d));
            return json{{"group", g->name()}, {"b", branch_count}, {"count", data.size()}, {"data", list}};
        };
    });
    std::vector<std::string> subgroup_gens;
    auto* datum_induced = datum_cmd->add_subcommand("induced", "Ramification of the intermediate cover C/H");
    datum_induced->add_option("--group", group_arg, "Group, overriding the datum file");
    datum_induced->add_option("--datum", datum_path, "Datum JSON file")->required();
    datum_induced->add_option("--subgroup", subgroup_gens, "Generators of H in cycle notation")->required();
    datum_induced->add_option("--genus-base", base_genus, "Genus of the quotient curve")->check(CLI::NonNegativeNumber);
    datum_induced->callback([&] {
        action = [&] {
            HurwitzDatum xi = cli::load_datum(datum_path, group_arg);
            std::vector<Elem> gens;
            for (const std::string& s : subgroup_gens) gens.push_back(xi.group->parse_element(s));
            InducedRamification r = induced_ramification(base_genus, xi, xi.group->generated(gens));
            return json{{"degree", r.degree}, {"cycle_types", r.cycle_types}, {"genus", to_json(r.genus)}};
        };
    });

    // nielsen
    bool with_orbits = false, extended_mcg = false, verify_moves = false;
    std::string tuples_out;
    NielsenOptions nopts;
    auto* nielsen_cmd = app.add_subcommand("nielsen", "Braid orbits on the Nielsen class");
    nielsen_cmd->add_option("--group", group_arg, "Group, overriding the datum file");
    nielsen_cmd->add_option("--genus-base", base_genus, "Genus of the quotient curve")->check(CLI::NonNegativeNumber);
    nielsen_cmd->add_option("--datum", datum_path, "Datum JSON file")->required();
    nielsen_cmd->add_flag("--orbits", with_orbits, "List orbit representatives");
    nielsen_cmd->add_option("--tuples-out", tuples_out, "Write all canonical tuples with their orbits");
    nielsen_cmd->add_flag("--extended-mcg", extended_mcg, "Add handle twists for g' >= 1 (experimental)");
    nielsen_cmd->add_flag("--verify-moves", verify_moves, "Check every braid move");
    nielsen_cmd->add_option("--max-nodes", nopts.max_nodes, "Enumeration search budget");
    nielsen_cmd->add_option("--max-states", nopts.max_states, "Orbit closure budget");
    nielsen_cmd->callback([&] {
        action = [&] {
            HurwitzDatum xi = cli::load_datum(datum_path, group_arg);
            const Group& g = *xi.group;
            nopts.jobs = globals.jobs;
            nopts.extended_mcg = extended_mcg;
            nopts.verify_moves = verify_moves;
            NielsenResult r = nielsen_orbits(base_genus, xi, nopts);
            json out = {{"nielsen_number", r.nielsen_number},
                        {"hurwitz_number", r.hurwitz_number},
                        {"orbit_sizes", r.orbit_sizes},
                        {"weighted_count", to_json(r.weighted_count)},
                        {"experimental", r.experimental}};
            if (with_orbits) {
                json orbits = json::array();
                std::vector<bool> seen(r.orbit_sizes.size(), false);
                for (size_t i = 0; i < r.tuples.size(); ++i) {
                    size_t o = r.orbit_of[i];
                    if (seen[o]) continue;
                    seen[o] = true;
                    orbits.push_back({{"orbit", o}, {"size", r.orbit_sizes[o]}, {"representative", elems_to_json(g, r.tuples[i])}});
                }
                out["orbits"] = orbits;
            }
            if (!tuples_out.empty()) {
                json list = json::array();
                for (size_t i = 0; i < r.tuples.size(); ++i)
                    list.push_back({{"orbit", r.orbit_of[i]}, {"tuple", elems_to_json(g, r.tuples[i])}});
                std::ofstream f(tuples_out);
                if (!f) throw UsageError("cannot write " + tuples_out);
                f << json{{"group", g.name()}, {"base_genus", base_genus}, {"tuples", list}}.dump(2) << "\n";
            }
            return out;
        };
    });

    // cw
    long twist = 1;
    auto* cw_cmd = app.add_subcommand("cw", "Chevalley-Weil multiplicities in H^0(C, omega^m)");
    cw_cmd->add_option("--group", group_arg, "Group, overriding the datum file");
    cw_cmd->add_option("--genus-base", base_genus, "Genus of the quotient curve")->check(CLI::NonNegativeNumber);
    cw_cmd->add_option("--datum", datum_path, "Datum JSON file")->required();
    cw_cmd->add_option("--twist", twist, "Power m of the canonical bundle")->check(CLI::PositiveNumber);
    cw_cmd->callback([&] {
        action = [&] {
            HurwitzDatum xi = cli::load_datum(datum_path, group_arg);
            CharacterTable t = character_table(*xi.group);
            return json{{"genus", to_json(genus_from_datum(base_genus, xi).genus)},
                        {"twist", twist},
                        {"degrees", t.degrees},
                        {"multiplicities", ints_to_json(cw_multiplicities(base_genus, xi, twist, t))},
                        {"euler_characteristics", ints_to_json(cw_euler_characteristics(base_genus, xi, twist, t))}};
        };
    });

    // cw-invert
    std::string oracle_path;
    auto* inv_cmd = app.add_subcommand("cw-invert", "Recover a datum from Chevalley-Weil multiplicities");
    inv_cmd->add_option("--group", group_arg, "Group, overriding the datum file");
    inv_cmd->add_option("--genus-base", base_genus, "Genus of the quotient curve")->check(CLI::NonNegativeNumber);
    inv_cmd->add_option("--oracle-from", oracle_path, "Datum whose multiplicities serve as the oracle")->required();
    inv_cmd->callback([&] {
        action = [&] {
            HurwitzDatum xi = cli::load_datum(oracle_path, group_arg);
            CharacterTable t = character_table(*xi.group);
            std::map<long, std::vector<Int>> cache;
            CwOracle oracle = [&](long m, size_t v) {
                auto it = cache.find(m);
                if (it == cache.end()) it = cache.emplace(m, cw_multiplicities(base_genus, xi, m, t)).first;
                return it->second.at(v);
            };
            InversionResult r = invert_cw(oracle, xi.group, t);
            return json{{"input", cli::datum_to_json(xi)},
                        {"recovered", cli::datum_to_json(r.datum)},
                        {"base_genus", r.base_genus},
                        {"genus", to_json(r.genus)},
                        {"queries", r.queries.size()},
                        {"round_trip", r.datum == xi && r.base_genus == base_genus}};
        };
    });

    // graphs
    std::string graph_path;
    auto* graphs_cmd = app.add_subcommand("graphs", "Modular graphs with group actions");
    graphs_cmd->require_subcommand(1);
    auto* gq = graphs_cmd->add_subcommand("quotient", "Quotient graph and genera");
    gq->add_option("--graph", graph_path, "Graph JSON file")->required();
    gq->callback([&] { action = [&] { return quotient_to_json(cli::graph_from_json(cli::read_json_file(graph_path))); }; });
    auto* ge = graphs_cmd->add_subcommand("exactness", "Decomposition and inertia subgroups, homology sequence");
    ge->add_option("--graph", graph_path, "Graph JSON file")->required();
    ge->callback([&] { action = [&] { return exactness_to_json(cli::graph_from_json(cli::read_json_file(graph_path))); }; });
    std::vector<std::string> comb_elems;
    auto* gc = graphs_cmd->add_subcommand("comb", "Star graph on cyclic subgroups H_i = <s_i>");
    gc->add_option("--group", group_arg, "Group")->required();
    gc->add_option("--elements", comb_elems, "Holonomies s_i in cycle notation")->required();
    gc->callback([&] {
        action = [&] {
            GroupPtr g = cli::group_from_arg(group_arg);
            std::vector<Elem> s;
            Int closed = 1 + Int(static_cast<long>(comb_elems.size() * g->order()));
            for (const std::string& x : comb_elems) {
                s.push_back(g->parse_element(x));
                closed -= static_cast<long>(g->order()) / g->element_order(s.back());
            }
            GGraph gg = build_comb(g, s);
            json out = quotient_to_json(gg);
            out["graph"] = cli::graph_to_json(gg);
            out["closed_form_genus"] = to_json(closed);
            out["exactness"] = exactness_to_json(gg);
            return out;
        };
    });
    long level_n = 2, level_genus = 2, level_genus2 = 1;
    std::string level_shape = "loop";
    auto* gl = graphs_cmd->add_subcommand("level", "Level-n structure shapes on a standard degeneration");
    gl->add_option("--n", level_n, "Level")->required()->check(CLI::Range(2L, 64L));
    gl->add_option("--shape", level_shape, "loop or two-edge")->check(CLI::IsMember({"loop", "two-edge"}));
    gl->add_option("--genus", level_genus, "Genus (loop) or first vertex genus (two-edge)")->check(CLI::NonNegativeNumber);
    gl->add_option("--genus2", level_genus2, "Second vertex genus (two-edge)")->check(CLI::NonNegativeNumber);
    gl->callback([&] {
        action = [&] {
            GGraph gg = level_shape == "loop" ? level_loop_example(level_n, level_genus)
                                              : level_two_edge_example(level_n, level_genus, level_genus2);
            return level_to_json(level_structure_check(gg, level_n));
        };
    });

    // boundary (also under graphs)
    long cyc_n = 0;
    std::string branches_arg, shape_arg = "both";
    auto add_boundary_flags = [&](CLI::App* c) {
        c->add_option("--n", cyc_n, "Order of the cyclic group")->required()->check(CLI::Range(2L, 100000L));
        c->add_option("--genus-base", base_genus, "Genus of the quotient curve")->check(CLI::NonNegativeNumber);
        c->add_option("--datum", datum_path, "Datum JSON file on C_n");
        c->add_option("--branches", branches_arg, "Branch points e:nu,e:nu,...");
        c->add_option("--shape", shape_arg, "segment, loop or both")->check(CLI::IsMember({"segment", "loop", "both"}));
        c->callback([&] {
            action = [&] {
                return boundary_json(cyc_n, base_genus, cli::cyclic_datum_branches(cyc_n, datum_path, branches_arg),
                                     shape_arg);
            };
        });
    };
    add_boundary_flags(app.add_subcommand("boundary", "Boundary components for cyclic covers"));
    add_boundary_flags(graphs_cmd->add_subcommand("boundary", "Boundary components for cyclic covers"));

    // taut
    auto* taut_cmd = app.add_subcommand("taut", "Tautological relations for cyclic covers of curves");
    taut_cmd->require_subcommand(1);
    std::vector<long> twists;
    bool open_part = false;
    auto* tr = taut_cmd->add_subcommand("relations", "Eigenbundle lambda relations in normal form");
    tr->add_option("--n", cyc_n, "Order of the cyclic group")->required()->check(CLI::Range(2L, 100000L));
    tr->add_option("--genus-base", base_genus, "Genus of the quotient curve")->check(CLI::NonNegativeNumber);
    tr->add_option("--datum", datum_path, "Datum JSON file on C_n");
    tr->add_option("--branches", branches_arg, "Branch points e:nu,e:nu,...");
    tr->add_option("--j", twists, "Twists j (default: all units mod n)");
    tr->add_flag("--open", open_part, "Drop the boundary terms");
    tr->callback([&] {
        action = [&] {
            PicContext ctx = make_context(cyc_n, base_genus, cli::cyclic_datum_branches(cyc_n, datum_path, branches_arg));
            std::vector<long> js = twists;
            if (js.empty())
                for (long j = 1; j < cyc_n; ++j)
                    if (gcd_l(j, cyc_n) == 1) js.push_back(j);
            json rels = json::array();
            std::vector<std::string> warnings;
            for (long j : js)
                rels.push_back({{"j", j}, {"relation", pic_to_json(pic_normalize(lambda_relation(ctx, j, !open_part), ctx, &warnings))}});
            std::set<std::string> uniq(warnings.begin(), warnings.end());
            json labels = json::array();
            for (const BoundaryComponent& c : ctx.boundary) labels.push_back(c.label());
            return json{{"n", cyc_n}, {"relations", rels}, {"boundary", labels}, {"warnings", uniq}};
        };
    });
    std::string expr;
    auto* tn = taut_cmd->add_subcommand("normalize", "Rewrite a class in the Picard basis");
    tn->add_option("--n", cyc_n, "Order of the cyclic group")->required()->check(CLI::Range(2L, 100000L));
    tn->add_option("--genus-base", base_genus, "Genus of the quotient curve")->check(CLI::NonNegativeNumber);
    tn->add_option("--datum", datum_path, "Datum JSON file on C_n");
    tn->add_option("--branches", branches_arg, "Branch points e:nu,e:nu,...");
    tn->add_option("--expr", expr, "JSON object symbol -> rational")->required();
    tn->callback([&] {
        action = [&] {
            PicContext ctx = make_context(cyc_n, base_genus, cli::cyclic_datum_branches(cyc_n, datum_path, branches_arg));
            json e = cli::parse_json(expr, "--expr");
            if (!e.is_object()) throw UsageError("--expr: expected an object");
            PicElement x;
            for (const auto& [s, c] : e.items()) {
                if (!c.is_string() && !c.is_number_integer()) throw UsageError("--expr: coefficients are \"num/den\" or integers");
                x.add(s, c.is_string() ? rat_from_string(c.get<std::string>()) : Rat(c.get<long>()));
            }
            std::vector<std::string> warnings;
            PicElement y = pic_normalize(x, ctx, &warnings);
            return json{{"normal_form", pic_to_json(y)}, {"text", y.to_string()}, {"warnings", warnings}};
        };
    });
    long prime = 2, genus = 2;
    std::string xi_arg;
    auto* tc = taut_cmd->add_subcommand("ch", "Summed prime relation; hyperelliptic lambda-boundary relation for p = 2");
    tc->add_option("--p", prime, "Prime order")->required()->check(CLI::Range(2L, 1000L));
    tc->add_option("--g", genus, "Genus (p = 2)")->check(CLI::Range(2L, 200L));
    tc->add_option("--datum", datum_path, "Datum JSON file on C_p (p odd)");
    tc->add_option("--xi", xi_arg, "Branch values nu_1,...,nu_b (p odd)");
    tc->callback([&] {
        action = [&] {
            if (prime == 2) {
                HyperellipticBoundaryRelation r = hyperelliptic_boundary_relation(genus);
                json rows = json::array();
                for (const BoundaryRelationRow& row : r.rows)
                    rows.push_back({{"type", row.ns ? "NS" : "R"},
                                    {"j", row.j},
                                    {"index", row.index},
                                    {"coefficient", to_json(row.coefficient)},
                                    {"components", row.components}});
                auto [proof_end, stated] = hyperelliptic_locus_relation(genus);
                return json{{"genus", genus},
                            {"lambda", to_json(r.lambda)},
                            {"rows", rows},
                            {"locus", {{"proof_end", locus_to_json(proof_end)}, {"stated", locus_to_json(stated)}}}};
            }
            std::vector<long> nu = prime_nu(prime, datum_path, xi_arg);
            PicElement got = summed_relation(prime, nu), want = summed_relation_expected(prime, nu);
            return json{{"p", prime}, {"summed", pic_to_json(got)}, {"expected", pic_to_json(want)}, {"agree", got == want}};
        };
    });

    // hodge
    auto* hodge_cmd = app.add_subcommand("hodge", "Hodge and psi integrals");
    hodge_cmd->require_subcommand(1);
    long a = 0, npts = 3;
    auto* ht = hodge_cmd->add_subcommand("tau", "int over M_{0,n} of kappa_a psi_1^(n-3-a)");
    ht->add_option("--a", a, "kappa index")->required()->check(CLI::NonNegativeNumber);
    ht->add_option("--n", npts, "Marked points")->required()->check(CLI::Range(3L, 200L));
    ht->callback([&] {
        action = [&] {
            Int rec = tau_recursive(a, npts), closed = tau_closed(a, npts);
            return json{{"a", a}, {"n", npts}, {"tau", to_json(Rat(rec))}, {"closed_form", to_json(Rat(closed))}, {"agree", rec == closed}};
        };
    });
    std::string alpha_arg;
    auto* hp = hodge_cmd->add_subcommand("psi", "int over M_{0,n} of prod psi_i^alpha_i");
    hp->add_option("--n", npts, "Marked points")->required()->check(CLI::Range(3L, 200L));
    hp->add_option("--alpha", alpha_arg, "Exponents alpha_1,...,alpha_n")->required();
    hp->callback([&] {
        action = [&] {
            std::vector<long> alpha = cli::parse_longs(alpha_arg);
            Rat closed = psi_integral(npts, alpha), string_eq = psi_integral_string(npts, alpha);
            return json{{"n", npts}, {"alpha", alpha}, {"value", to_json(closed)}, {"string_equation", to_json(string_eq)},
                        {"agree", closed == string_eq}};
        };
    });
    auto* hh = hodge_cmd->add_subcommand("hyperelliptic", "int of kappa_a mu_1^(2g-1-a) on the pointed hyperelliptic stack");
    hh->add_option("--g", genus, "Genus")->required()->check(CLI::Range(1L, 200L));
    hh->add_option("--a", a, "kappa index")->required()->check(CLI::NonNegativeNumber);
    hh->callback([&] {
        action = [&] {
            Rat closed = hyperelliptic_integral_closed(genus, a), pipe = hyperelliptic_integral_pipeline(genus, a);
            return json{{"g", genus}, {"a", a}, {"value", to_json(closed)}, {"pipeline", to_json(pipe)}, {"agree", closed == pipe}};
        };
    });
    auto* hm = hodge_cmd->add_subcommand("mu", "int of mu_1^(2g-1) and the sin(t/2)/(t/2) coefficient");
    hm->add_option("--g", genus, "Genus")->required()->check(CLI::Range(1L, 200L));
    hm->callback([&] {
        action = [&] {
            return json{{"g", genus}, {"mu_integral", to_json(hyperelliptic_mu_integral(genus))},
                        {"sinc_coefficient", to_json(sinc_half_coefficient(genus))}};
        };
    });
    std::string weight = "published";
    auto* hr = hodge_cmd->add_subcommand("recursion", "int of lambda^(b-3) over Z/p covers of the line");
    hr->add_option("--p", prime, "Prime order")->required()->check(CLI::Range(2L, 1000L));
    hr->add_option("--g", genus, "Genus of the covers")->required()->check(CLI::NonNegativeNumber);
    hr->add_option("--datum", datum_path, "Datum JSON file on C_p");
    hr->add_option("--xi", xi_arg, "Branch values nu_1,...,nu_b");
    hr->add_option("--weight", weight, "Node weight convention")->check(CLI::IsMember({"published", "rederived"}));
    hr->callback([&] {
        action = [&] {
            std::vector<long> nu = prime_nu(prime, datum_path, xi_arg);
            RecursionWeight w = weight == "published" ? RecursionWeight::published : RecursionWeight::rederived;
            return json{{"p", prime}, {"g", genus}, {"xi", nu}, {"weight", weight},
                        {"value", to_json(hodge_recursion(prime, genus, nu, w))}};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!explain.empty()) {
        auto it = kExplain.find(explain);
        if (it == kExplain.end()) {
            std::cerr << "unknown subcommand for --explain: " << explain << "\n";
            return 2;
        }
        std::cout << explain << ": " << it->second << "\n";
        return 0;
    }
    if (!action) {
        std::cerr << app.help();
        return 2;
    }

    try {
        json out = action();
        if (globals.format == "table")
            print_table(std::cout, out);
        else
            std::cout << out.dump(2) << "\n";
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << json{{"error", e.precondition()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "failure"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}
