#include "io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cli {

using namespace hurwitz;

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        size_t pos = std::min(e.byte == 0 ? size_t{0} : e.byte - 1, text.size());
        size_t line = 1, column = 1;
        for (size_t i = 0; i < pos; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string msg = e.what();
        if (auto k = msg.find("syntax error"); k != std::string::npos) msg = msg.substr(k);
        throw UsageError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg);
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

json to_json(const Rat& x) { return rat_to_string(x); }

json to_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

namespace {

const json& field(const json& v, const char* key, const std::string& where) {
    if (!v.is_object() || !v.contains(key)) throw UsageError(where + ": missing \"" + key + "\"");
    return v.at(key);
}

long as_long(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw UsageError(where + ": expected an integer");
    return v.get<long>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw UsageError(where + ": expected a string");
    return v.get<std::string>();
}

std::vector<uint32_t> index_list(const json& v, const std::string& where) {
    if (!v.is_array()) throw UsageError(where + ": expected an array");
    std::vector<uint32_t> out;
    for (const json& x : v) {
        long k = as_long(x, where);
        if (k < 0) throw UsageError(where + ": negative index");
        out.push_back(static_cast<uint32_t>(k));
    }
    return out;
}

}  // namespace

GroupPtr group_from_json(const json& v) {
    if (v.is_string()) return std::make_shared<const Group>(Group::named(v.get<std::string>()));
    if (v.is_object() && v.contains("name") && !v.contains("gens"))
        return std::make_shared<const Group>(Group::named(as_string(v.at("name"), "group.name")));
    if (v.is_object() && v.contains("gens")) {
        std::vector<Perm> gens;
        size_t degree = 0;
        for (const json& x : v.at("gens")) {
            gens.push_back(parse_cycles(as_string(x, "group.gens")));
            degree = std::max(degree, gens.back().degree());
        }
        for (Perm& p : gens) p = p.extended(degree);
        Group g = Group::generate(gens, {}, degree);
        if (v.contains("name")) g.set_name(as_string(v.at("name"), "group.name"));
        return std::make_shared<const Group>(std::move(g));
    }
    throw UsageError("group: expected a family name or {\"gens\": [...]}");
}

GroupPtr group_from_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return group_from_json(parse_json(arg, "--group"));
    if (arg.size() > 5 && arg.ends_with(".json")) return group_from_json(read_json_file(arg));
    return group_from_json(json(arg));
}

json group_summary(const Group& g) {
    json out;
    out["name"] = g.name();
    out["order"] = g.order();
    out["degree"] = g.degree();
    out["exponent"] = g.exponent();
    out["abelian"] = g.is_abelian();
    json gens = json::array();
    for (Elem x : g.generators()) gens.push_back(g.element(x).cycles());
    out["generators"] = gens;
    json classes = json::array();
    for (const ConjugacyClass& c : g.classes()) {
        classes.push_back({{"representative", g.element(c.representative).cycles()},
                           {"size", c.members.size()},
                           {"order", g.element_order(c.representative)}});
    }
    out["classes"] = classes;
    out["cyclic_subgroups"] = g.cyclic_subgroups().size();
    return out;
}

HurwitzDatum datum_from_json(const json& v, GroupPtr g) {
    if (!g) g = group_from_json(field(v, "group", "datum"));
    HurwitzDatum xi(g);
    const json& classes = field(v, "classes", "datum");
    if (!classes.is_array()) throw UsageError("datum.classes: expected an array");
    for (const json& c : classes) {
        Elem gen = g->parse_element(as_string(field(c, "H_gen", "datum.classes"), "datum.classes.H_gen"));
        long k = c.contains("k") ? as_long(c.at("k"), "datum.classes.k") : 1;
        long mult = c.contains("mult") ? as_long(c.at("mult"), "datum.classes.mult") : 1;
        xi.add(holonomy_element(*g, gen, k), mult);
    }
    return xi;
}

json group_to_json(const Group& g) {
    try {
        if (!g.name().empty() && Group::named(g.name()).elements() == g.elements()) return g.name();
    } catch (const std::exception&) {
    }
    json gens = json::array();
    for (Elem x : g.generators()) gens.push_back(g.element(x).cycles());
    json out = {{"gens", gens}};
    if (!g.name().empty()) out["name"] = g.name();
    return out;
}

json datum_to_json(const HurwitzDatum& xi) {
    const Group& g = *xi.group;
    json classes = json::array();
    for (const auto& [s, mult] : xi.classes) {
        HolonomyPair p = holonomy_pair(g, s);
        classes.push_back({{"H_gen", g.element(p.generator).cycles()}, {"k", p.k}, {"mult", mult}});
    }
    return {{"group", group_to_json(g)}, {"classes", classes}};
}

HurwitzDatum load_datum(const std::string& path, const std::string& group_arg) {
    json v = read_json_file(path);
    return datum_from_json(v, group_arg.empty() ? nullptr : group_from_arg(group_arg));
}

std::vector<long> parse_longs(const std::string& text) {
    std::vector<long> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stol(item, &used));
            if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError("expected a comma-separated integer list, got \"" + text + "\"");
        }
    }
    return out;
}

std::vector<CyclicBranch> parse_branches(const std::string& text) {
    std::vector<CyclicBranch> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("branch \"" + item + "\" is not of the form e:nu");
        std::vector<long> v = parse_longs(item.substr(0, colon) + "," + item.substr(colon + 1));
        out.push_back({v[0], v[1]});
    }
    return out;
}

std::vector<CyclicBranch> cyclic_datum_branches(long n, const std::string& datum_path, const std::string& branches) {
    if (datum_path.empty() == branches.empty()) throw UsageError("give exactly one of --datum and --branches");
    if (!branches.empty()) return parse_branches(branches);
    json v = read_json_file(datum_path);
    GroupPtr g = v.contains("group") ? group_from_json(v.at("group")) : std::make_shared<const Group>(Group::cyclic(n));
    if (static_cast<long>(g->order()) != n || g->generators().empty() ||
        g->element_order(g->generators()[0]) != n)
        throw DomainError("cyclic_group", "the datum group is not cyclic of order " + std::to_string(n) +
                                              " on its first generator");
    return cyclic_branches(datum_from_json(v, g), g->generators()[0]);
}

GGraph graph_from_json(const json& v) {
    GroupPtr g = v.contains("group") ? group_from_json(v.at("group")) : std::make_shared<const Group>(Group::cyclic(1));
    ModularGraph m;
    const json& vertices = field(v, "vertices", "graph");
    if (!vertices.is_array() || vertices.empty()) throw UsageError("graph.vertices: expected a nonempty array");
    std::vector<long> owner;
    for (size_t i = 0; i < vertices.size(); ++i) {
        const json& vx = vertices[i];
        m.genus.push_back(vx.contains("genus") ? as_long(vx.at("genus"), "graph.vertices.genus") : 0);
        if (!vx.contains("half_edges")) continue;
        for (uint32_t h : index_list(vx.at("half_edges"), "graph.vertices.half_edges")) {
            if (h >= owner.size()) owner.resize(h + 1, -1);
            if (owner[h] >= 0) throw UsageError("graph: half-edge " + std::to_string(h) + " on two vertices");
            owner[h] = static_cast<long>(i);
        }
    }
    for (size_t h = 0; h < owner.size(); ++h) {
        if (owner[h] < 0) throw UsageError("graph: half-edge " + std::to_string(h) + " on no vertex");
        m.vertex_of.push_back(static_cast<size_t>(owner[h]));
    }
    size_t nh = m.vertex_of.size();
    std::vector<long> opposite(nh, -1);
    auto pair_up = [&](size_t a, size_t b) {
        if (a >= nh || b >= nh) throw UsageError("graph: half-edge index out of range");
        if (opposite[a] >= 0 || opposite[b] >= 0)
            throw UsageError("graph: half-edge " + std::to_string(opposite[a] >= 0 ? a : b) + " used twice");
        opposite[a] = static_cast<long>(b);
        opposite[b] = static_cast<long>(a);
    };
    if (v.contains("edges")) {
        for (const json& e : v.at("edges")) {
            std::vector<uint32_t> p = index_list(e, "graph.edges");
            if (p.size() != 2 || p[0] == p[1]) throw UsageError("graph.edges: expected pairs of distinct half-edges");
            pair_up(p[0], p[1]);
        }
    }
    if (v.contains("legs"))
        for (uint32_t h : index_list(v.at("legs"), "graph.legs")) pair_up(h, h);
    for (size_t h = 0; h < nh; ++h) {
        if (opposite[h] < 0) throw UsageError("graph: half-edge " + std::to_string(h) + " is neither an edge nor a leg");
        m.opposite.push_back(static_cast<size_t>(opposite[h]));
    }

    size_t ngens = g->generators().size();
    std::vector<std::vector<uint32_t>> he_images, v_images;
    json action = v.contains("action") ? v.at("action") : json::object();
    if (action.contains("half_edges")) {
        for (const json& t : action.at("half_edges")) he_images.push_back(index_list(t, "graph.action.half_edges"));
    } else {
        std::vector<uint32_t> id(nh);
        for (size_t h = 0; h < nh; ++h) id[h] = static_cast<uint32_t>(h);
        he_images.assign(ngens, id);
    }
    if (action.contains("vertices")) {
        for (const json& t : action.at("vertices")) v_images.push_back(index_list(t, "graph.action.vertices"));
    } else {
        for (const auto& t : he_images) {
            std::vector<long> img(m.vertex_count(), -1);
            for (size_t h = 0; h < nh && h < t.size(); ++h)
                if (t[h] < nh) img[m.vertex_of[h]] = static_cast<long>(m.vertex_of[t[h]]);
            std::vector<uint32_t> out;
            for (size_t i = 0; i < img.size(); ++i) {
                if (img[i] < 0 && m.vertex_count() > 1)
                    throw UsageError("graph.action.vertices: required when a vertex has no half-edges");
                out.push_back(static_cast<uint32_t>(img[i] < 0 ? i : img[i]));
            }
            v_images.push_back(out);
        }
    }

    std::vector<Elem> decor(nh, 0);
    if (v.contains("decor")) {
        const json& d = v.at("decor");
        if (d.is_array()) {
            if (d.size() != nh) throw UsageError("graph.decor: one entry per half-edge");
            for (size_t h = 0; h < nh; ++h) decor[h] = g->parse_element(as_string(d[h], "graph.decor"));
        } else if (d.is_object()) {
            for (const auto& [key, val] : d.items()) {
                size_t h = 0;
                try {
                    h = std::stoul(key);
                } catch (const std::logic_error&) {
                    throw UsageError("graph.decor: key \"" + key + "\" is not a half-edge index");
                }
                if (h >= nh) throw UsageError("graph.decor: half-edge index out of range");
                decor[h] = g->parse_element(as_string(val, "graph.decor"));
            }
        } else {
            throw UsageError("graph.decor: expected an array or an object");
        }
    }
    return act_by_generators(std::move(m), g, he_images, v_images, std::move(decor));
}

json graph_to_json(const GGraph& gg) {
    const ModularGraph& m = gg.graph;
    const Group& g = *gg.group;
    json vertices = json::array();
    for (size_t i = 0; i < m.vertex_count(); ++i) {
        json hs = json::array();
        for (size_t h = 0; h < m.half_edge_count(); ++h)
            if (m.vertex_of[h] == i) hs.push_back(h);
        vertices.push_back({{"genus", m.genus[i]}, {"half_edges", hs}});
    }
    json edges = json::array(), legs = json::array();
    for (size_t h = 0; h < m.half_edge_count(); ++h) {
        if (m.is_leg(h))
            legs.push_back(h);
        else if (h < m.opposite[h])
            edges.push_back({h, m.opposite[h]});
    }
    json he = json::array(), vx = json::array(), gens = json::array();
    for (Elem x : g.generators()) {
        gens.push_back(g.element(x).cycles());
        he.push_back(gg.half_edge_action[x]);
        vx.push_back(gg.vertex_action[x]);
    }
    json decor = json::object();
    for (size_t h = 0; h < gg.decor.size(); ++h)
        if (gg.decor[h] != 0) decor[std::to_string(h)] = g.element(gg.decor[h]).cycles();
    json group = {{"gens", gens}};
    if (!g.name().empty()) group["name"] = g.name();
    return {{"group", group},
            {"vertices", vertices},
            {"edges", edges},
            {"legs", legs},
            {"action", {{"half_edges", he}, {"vertices", vx}}},
            {"decor", decor}};
}

json boundary_to_json(const BoundaryComponent& c) {
    json out = {{"label", c.label()},
                {"shape", c.shape == BoundaryShape::loop ? "loop" : "segment"},
                {"type", c.node.ns() ? "NS" : "R"},
                {"e", c.node.e},
                {"nu", {c.node.nu1, c.node.nu2}}};
    if (c.node.ns()) out["symbol"] = {c.node.a, c.node.b};
    if (c.shape == BoundaryShape::loop) {
        out["genus"] = c.g1;
        out["n0"] = c.n1;
    } else {
        out["genera"] = {c.g1, c.g2};
        out["parts"] = {c.part1, c.part2};
        out["orders"] = {c.n1, c.n2};
    }
    return out;
}

}  // namespace cli
