#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "limsketch/fincat.hpp"
#include "limsketch/setops.hpp"

namespace limsketch {

// A cone in the base category: legs peak -> diagram(z), one per shape object.
struct Cone {
    std::string name;
    ObjectIx peak = 0;
    CatFunctor diagram;           // shape -> base
    std::vector<ArrowIx> legs;    // indexed by shape object

    const FinCategory& base() const { return diagram.target(); }
    const FinCategory& shape() const { return diagram.source(); }
};

Cone make_cone(std::string name, CategoryPtr base, const std::string& peak, CategoryPtr shape,
               const std::map<std::string, std::string>& diagram_objects,
               const std::map<std::string, std::string>& diagram_arrows,
               const std::map<std::string, std::string>& legs);

// Diagram functor laws plus leg typing and naturality of the legs.
ValidationReport validate_cone(const Cone& c);

struct LimitSketch {
    CategoryPtr base;
    std::vector<Cone> cones;
};

// Category, every cone, and that every cone lives over the sketch's base.
ValidationReport validate_sketch(const LimitSketch& s);

struct ConeVerdict {
    std::string cone;
    bool injective = true;
    std::optional<std::pair<std::string, std::string>> collision;  // two peak elements
    bool surjective = true;
    std::optional<std::vector<std::string>> unhit;  // tuple components by shape object
};

struct ModelReport {
    std::vector<ConeVerdict> cones;

    bool is_model() const;
};

// Gap-map bijectivity per cone, with the first witness of each failure.
ModelReport is_model(const SetPresentation& x, const LimitSketch& s, const LimitOptions& opts = {});

}  // namespace limsketch
