#pragma once

#include <optional>
#include <string>
#include <vector>

#include "limsketch/fincat.hpp"
#include "limsketch/sketch.hpp"

namespace limsketch {

// Category from non-identity arrows and their composites. Identities are
// named "id_<object>" and their composites are filled in.
CategoryPtr make_category(const std::vector<std::string>& objects,
                          const std::vector<ArrowSpec>& arrows,
                          const std::vector<CompositionEntry>& composites);

// A category given by generators and oriented relations between words.
// Words list generators in composition order: {"g", "f"} is g after f; the
// empty word is the identity of the relevant object.
struct CategoryPresentation {
    struct Relation {
        std::vector<std::string> lhs;
        std::vector<std::string> rhs;
    };

    std::vector<std::string> objects;
    std::vector<ArrowSpec> generators;
    std::vector<Relation> relations;
    // Parallel arrows into this object are identified with one canonical
    // shortest word.
    std::optional<std::string> terminal;
};

// Enumerate normal forms breadth-first, rewriting leftmost redex first.
// Fails with BudgetExceeded if a normal form longer than `max_word_length`
// appears ("hom-sets not stabilized"), and with ConstructionError if the
// rewriting turns out not to be confluent on the enumerated words.
// Composite arrows are named by their generators joined with '.'.
CategoryPtr materialize_category(const CategoryPresentation& p, std::size_t max_word_length);

// Objects a, b; one arrow t: a -> b; one cone of peak a over a one-object
// shape with leg t. Models are exactly the X with X(t) bijective.
LimitSketch sketch_iso_forcing();

// Objects a, p; projections pi1, pi2: p -> a; one cone over two points.
LimitSketch sketch_binary_product();

// Parallel pair f, g: a -> b and e: q -> a with f e = g e = h; the cone
// forces X(q) to be the equalizer of X(f), X(g).
LimitSketch sketch_equalizer();

// Poset T -> U, V -> W with the matching-family cone of peak T over the
// cospan U -> W <- V; models are the sheaves for the two-element cover.
LimitSketch sketch_two_cover_sheaf();

// The monoid sketch on g0..g3 materialized from its generators and
// commutativity relations.
LimitSketch sketch_monoid_budgeted(std::size_t budget);
CategoryPresentation monoid_category_presentation();

// Disjoint union of two sketches; objects, arrows and cones are prefixed.
LimitSketch sketch_disjoint_union(const LimitSketch& left, const std::string& left_prefix,
                                  const LimitSketch& right, const std::string& right_prefix);

std::vector<std::string> builder_names();
// Throws InputError for an unknown name.
LimitSketch build_sketch(const std::string& name);

}  // namespace limsketch
