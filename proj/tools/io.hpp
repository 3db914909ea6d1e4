#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hurwitz/chevalley_weil.hpp"
#include "hurwitz/datum.hpp"
#include "hurwitz/graphs.hpp"
#include "hurwitz/group.hpp"

namespace cli {

using json = nlohmann::json;

/// Bad flags, unreadable files, malformed JSON or schema violations; exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses text, reporting "source:line:column: message" on failure.
json parse_json(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);

/// Rationals as "num/den" strings; integers as numbers when they fit in 64 bits.
json to_json(const hurwitz::Rat& x);
json to_json(const hurwitz::Int& x);

/// A family name ("S4", "Ab[2,2,3]"), {"gens": [...]} or {"name": ...}.
hurwitz::GroupPtr group_from_json(const json& v);
/// A name, an inline JSON object or a JSON file path.
hurwitz::GroupPtr group_from_arg(const std::string& arg);
json group_summary(const hurwitz::Group& g);
/// The family name when it rebuilds the same element list, otherwise the generators.
json group_to_json(const hurwitz::Group& g);

/// {"group": ..., "classes": [{"H_gen": "(1 2 3)", "k": 1, "mult": 2}]}; g overrides the file's group when given.
hurwitz::HurwitzDatum datum_from_json(const json& v, hurwitz::GroupPtr g);
json datum_to_json(const hurwitz::HurwitzDatum& xi);
/// Loads a datum file, taking the group from --group when set.
hurwitz::HurwitzDatum load_datum(const std::string& path, const std::string& group_arg);

/// Cyclic data relative to the standard generator of Z/n: "e:nu,e:nu" or a datum file on C_n.
std::vector<hurwitz::CyclicBranch> parse_branches(const std::string& text);
std::vector<hurwitz::CyclicBranch> cyclic_datum_branches(long n, const std::string& datum_path,
                                                        const std::string& branches);
std::vector<long> parse_longs(const std::string& text);

/// Graph JSON:
/// {"group": ..., "vertices": [{"genus": 0, "half_edges": [0, 1]}], "edges": [[0, 1]], "legs": [2],
///  "action": {"half_edges": [[...] per generator], "vertices": [[...] per generator]},
///  "decor": {"2": "(1 2)"}}
hurwitz::GGraph graph_from_json(const json& v);
json graph_to_json(const hurwitz::GGraph& gg);

json boundary_to_json(const hurwitz::BoundaryComponent& c);

}  // namespace cli
