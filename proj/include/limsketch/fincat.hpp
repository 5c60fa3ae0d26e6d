#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace limsketch {

using ObjectIx = std::size_t;
using ArrowIx = std::size_t;

// One law violation found by a validator, with human-readable witnesses.
struct Violation {
    std::string kind;  // e.g. "unit-law", "associativity", "naturality"
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::size_t count(std::string_view kind) const;
    void add(std::string kind, std::string message) {
        violations.push_back({std::move(kind), std::move(message)});
    }
    void append(const ValidationReport& other, const std::string& prefix = {});
};

struct ArrowSpec {
    std::string id;
    std::string dom;
    std::string cod;
};

struct CompositionEntry {
    std::string g;   // applied second
    std::string f;   // applied first
    std::string gf;  // g after f
};

// A finite category given by an explicit composition table.
//
// Objects and arrows are sorted lexicographically by identifier at
// construction; every index-based accessor refers to that order. The table
// may be partial or even wrong: structural problems (unknown or duplicate
// identifiers) throw InputError, law violations are left for
// validate_category to report.
class FinCategory {
public:
    FinCategory(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                const std::map<std::string, std::string>& identities,
                const std::vector<CompositionEntry>& compose);

    std::size_t object_count() const { return objects_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }

    const std::string& object_name(ObjectIx o) const { return objects_.at(o); }
    const std::string& arrow_name(ArrowIx a) const { return arrows_.at(a).id; }
    const std::vector<std::string>& objects() const { return objects_; }

    ObjectIx object_index(std::string_view name) const;
    ArrowIx arrow_index(std::string_view name) const;
    std::optional<ObjectIx> find_object(std::string_view name) const;
    std::optional<ArrowIx> find_arrow(std::string_view name) const;

    ObjectIx dom(ArrowIx a) const { return arrows_.at(a).dom; }
    ObjectIx cod(ArrowIx a) const { return arrows_.at(a).cod; }
    ArrowIx identity(ObjectIx o) const { return identities_.at(o); }
    bool is_identity(ArrowIx a) const;

    // g after f, or nullopt when the table has no entry for the pair.
    std::optional<ArrowIx> compose(ArrowIx g, ArrowIx f) const;
    // Same, throwing ConstructionError for a missing entry.
    ArrowIx compose_checked(ArrowIx g, ArrowIx f) const;

    // Arrows a -> b in index order.
    const std::vector<ArrowIx>& hom(ObjectIx a, ObjectIx b) const;
    std::vector<std::string> hom(std::string_view a, std::string_view b) const;

    // Non-identity arrows leaving / entering an object.
    const std::vector<ArrowIx>& outgoing(ObjectIx o) const { return outgoing_.at(o); }

    // Export in the identifier-based form accepted by the constructor.
    std::vector<ArrowSpec> arrow_specs() const;
    std::map<std::string, std::string> identity_specs() const;
    std::vector<CompositionEntry> composition_specs() const;

    bool operator==(const FinCategory& other) const;

private:
    struct ArrowRecord {
        std::string id;
        ObjectIx dom;
        ObjectIx cod;
    };

    std::vector<std::string> objects_;
    std::vector<ArrowRecord> arrows_;
    std::vector<ArrowIx> identities_;
    std::vector<std::int64_t> table_;  // arrow_count^2, -1 = undefined
    std::vector<std::vector<ArrowIx>> homs_;
    std::vector<std::vector<ArrowIx>> outgoing_;
    std::unordered_map<std::string, ObjectIx> object_lookup_;
    std::unordered_map<std::string, ArrowIx> arrow_lookup_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

// Every violated category law, with witnesses. Empty iff the table is a
// category: typed identities, composition defined exactly on composable
// pairs with the right type, unit laws, associativity.
ValidationReport validate_category(const FinCategory& c);

class CatFunctor {
public:
    CatFunctor(CategoryPtr source, CategoryPtr target, std::vector<ObjectIx> object_map,
               std::vector<ArrowIx> arrow_map);

    const FinCategory& source() const { return *source_; }
    const FinCategory& target() const { return *target_; }
    const CategoryPtr& source_ptr() const { return source_; }
    const CategoryPtr& target_ptr() const { return target_; }

    ObjectIx on_object(ObjectIx o) const { return object_map_.at(o); }
    ArrowIx on_arrow(ArrowIx a) const { return arrow_map_.at(a); }
    const std::vector<ObjectIx>& object_map() const { return object_map_; }
    const std::vector<ArrowIx>& arrow_map() const { return arrow_map_; }

private:
    CategoryPtr source_;
    CategoryPtr target_;
    std::vector<ObjectIx> object_map_;
    std::vector<ArrowIx> arrow_map_;
};

// Build a functor from identifier maps; unknown identifiers throw InputError.
CatFunctor make_functor(CategoryPtr source, CategoryPtr target,
                        const std::map<std::string, std::string>& objects,
                        const std::map<std::string, std::string>& arrows);

ValidationReport validate_functor(const CatFunctor& f);

CatFunctor identity_functor(CategoryPtr c);

// Small categories used as cone shapes and test fixtures.
CategoryPtr discrete_category(const std::vector<std::string>& objects);
CategoryPtr terminal_category(const std::string& object = "*");

// Path category of a finite directed acyclic graph: arrows are the paths,
// named by their edges joined with '.' (last edge first), identities are
// "id_<object>". Throws InputError if the graph has a cycle.
CategoryPtr free_category(const std::vector<std::string>& objects,
                          const std::vector<ArrowSpec>& edges);

}  // namespace limsketch
