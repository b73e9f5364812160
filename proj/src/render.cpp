#include "thv/render.hpp"

namespace thv {

namespace {

void emit_tree(const Tree& t, const std::string& prefix, int& counter, int& leaf_index,
               const std::vector<int>& leaf_labels, std::string& out) {
    int id = counter++;
    std::string name = prefix + std::to_string(id);
    if (tree_is_leaf(t)) {
        int label = leaf_labels[static_cast<size_t>(leaf_index++)];
        out += "  " + name + " [shape=none, label=\"" + std::to_string(label) + "\"];\n";
        return;
    }
    out += "  " + name + " [shape=point];\n";
    int left_id = counter;
    emit_tree(t->left, prefix, counter, leaf_index, leaf_labels, out);
    int right_id = counter;
    emit_tree(t->right, prefix, counter, leaf_index, leaf_labels, out);
    out += "  " + name + " -> " + prefix + std::to_string(left_id) + ";\n";
    out += "  " + name + " -> " + prefix + std::to_string(right_id) + ";\n";
}

} // namespace

std::string render_dot(const Element& g) {
    Element r = reduce(g);
    int n = r.leaf_count();
    auto perm = r.permutation();
    std::vector<int> domain_labels(static_cast<size_t>(n));
    std::vector<int> range_labels(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        domain_labels[static_cast<size_t>(i)] = i + 1;
        range_labels[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i + 1;
    }
    std::string out = "digraph treepair {\n";
    out += "  rankdir=TB;\n";
    out += "  subgraph cluster_domain {\n    label=\"domain\";\n";
    {
        std::string body;
        int counter = 0, leaf = 0;
        emit_tree(r.domain_tree(), "d", counter, leaf, domain_labels, body);
        out += body + "  }\n";
    }
    out += "  subgraph cluster_range {\n    label=\"range\";\n";
    {
        std::string body;
        int counter = 0, leaf = 0;
        emit_tree(r.range_tree(), "r", counter, leaf, range_labels, body);
        out += body + "  }\n";
    }
    out += "}\n";
    return out;
}

} // namespace thv
