#ifndef THV_ELEMENT_HPP
#define THV_ELEMENT_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thv/dyadic.hpp"

namespace thv {

/// Finite rooted binary tree; leaves correspond to the standard dyadic
/// partition obtained by halving at every internal node.
struct TreeNode;
using Tree = std::shared_ptr<const TreeNode>;

struct TreeNode {
    Tree left, right;
};

Tree tree_leaf();
Tree tree_node(Tree l, Tree r);
bool tree_is_leaf(const Tree& t);
int tree_leaf_count(const Tree& t);
std::vector<StdInterval> tree_partition(const Tree& t);
Tree tree_from_partition(const std::vector<StdInterval>& cells);
std::string tree_str(const Tree& t);
Tree tree_parse(const std::string& text, size_t& pos);

enum class ElementClass { F, T, V };
std::string class_name(ElementClass c);

/// A tree-pair diagram: the i-th domain leaf cell maps affinely, orientation
/// preserving, onto the perm(i)-th range leaf cell. Internally kept as the
/// sorted list of (source cell, target cell) legs, which determines the two
/// trees and the leaf permutation uniquely.
class Element {
public:
    struct Leg {
        StdInterval src, dst;
        bool operator==(const Leg& o) const { return src == o.src && dst == o.dst; }
    };

    Element(); // identity, one leaf
    explicit Element(std::vector<Leg> legs);

    static Element identity() { return Element(); }
    static Element from_trees(const Tree& domain, const Tree& range, const std::vector<int>& perm_1based);

    const std::vector<Leg>& legs() const { return legs_; }
    int leaf_count() const { return static_cast<int>(legs_.size()); }
    bool is_identity() const;

    Tree domain_tree() const;
    Tree range_tree() const;
    /// perm[i] = j (0-based): domain leaf i maps onto range leaf j.
    std::vector<int> permutation() const;

    bool operator==(const Element& o) const { return legs_ == o.legs_; } // structural
    bool operator!=(const Element& o) const { return !(*this == o); }

    std::string str() const;
    static Element parse(const std::string& text);

private:
    std::vector<Leg> legs_;
};

ElementClass class_of(const Element& g);

Dyadic evaluate(const Element& g, const Dyadic& x);
Element compose(const Element& g, const Element& h); // g∘h, h applied first; reduced
Element invert(const Element& g);
Element reduce(const Element& g);
bool equals(const Element& g, const Element& h);
DySet image_of(const Element& g, const DySet& a);

/// Splits the leg containing x (if x is interior to it) so x becomes a
/// breakpoint. No-op when x is already a breakpoint or equals 0/1.
Element refine_at(const Element& g, const Dyadic& x);

/// The V element exchanging two interior-disjoint standard intervals
/// affinely, identity elsewhere.
Element block_swap(const StdInterval& i1, const StdInterval& i2);

/// Order-preserving (F) element carrying the cells of one standard partition
/// onto the cells of another, position by position.
Element order_map(const std::vector<StdInterval>& from, const std::vector<StdInterval>& to);

enum class Gen { A, B, C, P0 };

struct Word {
    std::vector<std::pair<Gen, int>> letters; // nonzero exponents
    std::string str() const;
    static Word parse(const std::string& text);
};

Element generator(Gen name);
Element eval_word(const Word& w);
Element eval_word(const Word& w, ElementClass ambient); // class error when a letter is not allowed

std::string gen_name(Gen g);

} // namespace thv

#endif
