#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "limsketch/fincat.hpp"

namespace limsketch {

// Position of an element inside a carrier.
using Elem = std::uint32_t;

// A functor D -> Set with finite carriers. Elements carry string
// identifiers (unique per object); actions are stored as index maps.
class SetPresentation {
public:
    SetPresentation() = default;
    SetPresentation(CategoryPtr base, std::vector<std::vector<std::string>> carriers,
                    std::vector<std::vector<Elem>> actions);

    const FinCategory& base() const { return *base_; }
    const CategoryPtr& base_ptr() const { return base_; }

    std::size_t size(ObjectIx o) const { return carriers_.at(o).size(); }
    std::size_t total_size() const;
    const std::vector<std::string>& carrier(ObjectIx o) const { return carriers_.at(o); }
    const std::string& name(ObjectIx o, Elem e) const { return carriers_.at(o).at(e); }
    const std::vector<Elem>& action(ArrowIx a) const { return actions_.at(a); }
    Elem apply(ArrowIx a, Elem e) const { return actions_.at(a).at(e); }

    std::optional<Elem> find(ObjectIx o, const std::string& name) const;
    Elem index_of(ObjectIx o, const std::string& name) const;

    bool operator==(const SetPresentation& other) const;

private:
    CategoryPtr base_;
    std::vector<std::vector<std::string>> carriers_;
    std::vector<std::vector<Elem>> actions_;
    std::vector<std::unordered_map<std::string, Elem>> lookup_;
};

// Build from identifier maps; identity actions may be omitted.
SetPresentation make_presentation(CategoryPtr base,
                                  const std::map<std::string, std::vector<std::string>>& carriers,
                                  const std::map<std::string, std::map<std::string, std::string>>& actions);

// Functor laws: identities act trivially, actions respect composition.
ValidationReport validate_presentation(const SetPresentation& x);

// Every carrier a singleton.
SetPresentation terminal_presentation(CategoryPtr base, const std::string& element = "*");
SetPresentation empty_presentation(CategoryPtr base);

// The subfunctor on the given elements (per object, in the order listed).
// Throws ConstructionError if an action leaves the subset.
SetPresentation subpresentation(const SetPresentation& x,
                                const std::vector<std::vector<Elem>>& members);

// X o F for a functor F into X's base (used to restrict along cone diagrams).
SetPresentation restrict_along(const SetPresentation& x, const CatFunctor& f);

// Natural transformation given by its components; source and target are
// supplied by the caller wherever laws are checked.
struct NatTrans {
    std::vector<std::vector<Elem>> components;  // per object of the base

    Elem operator()(ObjectIx o, Elem e) const { return components.at(o).at(e); }
    bool operator==(const NatTrans&) const = default;
};

ValidationReport validate_nat_trans(const SetPresentation& source, const SetPresentation& target,
                                    const NatTrans& t);
NatTrans identity_nat(const SetPresentation& x);
NatTrans compose_nat(const NatTrans& g, const NatTrans& f);  // g after f
bool is_bijective(const NatTrans& t, const SetPresentation& target);

// Element of a limit of a Set-valued diagram: one component per shape object.
using LimitTuple = std::vector<Elem>;

// The limit of a diagram as an ordered list of compatible tuples.
struct LimitSet {
    std::vector<LimitTuple> tuples;
    std::map<LimitTuple, std::size_t> index;

    std::size_t size() const { return tuples.size(); }
    std::optional<std::size_t> find(const LimitTuple& t) const;
};

struct LimitOptions {
    std::uint64_t max_product = 1'000'000;  // cap on the product of carrier sizes
    std::string context;                    // named in the budget error
};

// Compatible tuples of a diagram given as a presentation over the shape, in
// lexicographic order of component indices.
LimitSet limit_of_diagram(const SetPresentation& diagram, const LimitOptions& opts = {});

// lim X o F without materialising the restricted presentation.
LimitSet limit_along(const SetPresentation& x, const CatFunctor& diagram,
                     const LimitOptions& opts = {});

struct Cone;

struct GapMap {
    LimitSet limit;                  // X[c]
    std::vector<std::size_t> image;  // per element of X(peak): index into limit
};

// The canonical map X(peak) -> lim X o diagram induced by the legs.
GapMap gap_map(const SetPresentation& x, const Cone& c, const LimitOptions& opts = {});

// Per-object element pairs.
using PairList = std::vector<std::vector<std::pair<Elem, Elem>>>;

// A surjective natural map onto a quotient presentation. Target elements are
// classes, ordered and named by their first member in source carrier order.
struct QuotientMap {
    SetPresentation target;
    NatTrans projection;
    std::vector<std::vector<std::vector<Elem>>> classes;  // per object, per class: members
};

// Quotient by the smallest per-object equivalence containing the pairs and
// closed under every arrow action.
QuotientMap functorial_quotient(const SetPresentation& x, const PairList& pairs);

// Partition of B + C (B first) generated by f(a) ~ g(a).
struct PushoutPartition {
    std::vector<std::size_t> class_of;
    std::size_t class_count = 0;
};

PushoutPartition pushout_classes(const std::vector<Elem>& f, std::size_t b_size,
                                 const std::vector<Elem>& g, std::size_t c_size);

struct SumNaming {
    std::string left_prefix = "inl:";
    std::string right_prefix = "inr:";
};

struct DisjointSum {
    SetPresentation sum;
    NatTrans left;
    NatTrans right;
};

// Pointwise tagged union, left summand first. Throws InputError if the
// prefixed names collide.
DisjointSum disjoint_sum(const SetPresentation& x, const SetPresentation& y,
                         const SumNaming& naming = {});

// Rename every element; the new names must stay unique per object.
SetPresentation rename_elements(const SetPresentation& x,
                                const std::vector<std::vector<std::string>>& names);

// Union-find with path halving; unions keep the smaller index as root so
// the root of a class is always its first member.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n = 0);
    std::size_t find(std::size_t x);
    bool unite(std::size_t a, std::size_t b);  // true if two classes merged
    std::size_t size() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace limsketch
