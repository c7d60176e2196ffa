#pragma once

#include "treembed/text_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace testutil {

inline std::string golden_path(const std::string& name) { return std::string(TREEMBED_GOLDEN_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string golden(const std::string& name) { return read_file(golden_path(name)); }

// The four trees and the pattern of the running example.
inline treembed::Tree example_tree(int i) { return treembed::parse_tree(golden("t" + std::to_string(i) + ".tree")); }
inline treembed::Pattern example_pattern() { return treembed::parse_pattern(golden("p0.pat")); }

} // namespace testutil

#include "treembed/suites.hpp"

#include <random>

namespace testutil {

// t = r(...) and p = root[.//p_1]...[.//p_m] with every p_i of degree <= 2,
// the shape the degree reduction accepts.
inline treembed::Instance random_degree_instance(std::mt19937_64& rng) {
    using namespace treembed;
    StructureBuilder tb = random_tree(rng, 2 + rng() % 11, {"a", "b"}).to_builder();
    tb.set_label(0, "r");

    StructureBuilder pb;
    NodeId root = pb.add_node(rng() % 3 == 0 ? "*" : "r");
    std::size_t m = 1 + rng() % 4;
    for (std::size_t i = 0; i < m; ++i) {
        Pattern sub = random_bounded_pattern(rng, 1 + rng() % 3, {"a", "b", "*"}, 0.5, 2);
        std::vector<NodeId> id(sub.size());
        for (NodeId v = 0; v < sub.size(); ++v) {
            if (v == 0)
                id[v] = pb.add_child(root, sub.label_name(v), EdgeKind::Descendant);
            else
                id[v] = pb.add_child(id[*sub.parent(v)], sub.label_name(v), sub.edge_kind(v));
        }
    }
    return {Tree(tb), Pattern(pb)};
}

} // namespace testutil
