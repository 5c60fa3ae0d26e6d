#include "limsketch/sketch.hpp"

#include "limsketch/error.hpp"

namespace limsketch {

Cone make_cone(std::string name, CategoryPtr base, const std::string& peak, CategoryPtr shape,
               const std::map<std::string, std::string>& diagram_objects,
               const std::map<std::string, std::string>& diagram_arrows,
               const std::map<std::string, std::string>& legs) {
    const ObjectIx p = base->object_index(peak);
    std::vector<ArrowIx> leg_ix(shape->object_count());
    std::vector<bool> seen(leg_ix.size(), false);
    for (const auto& [z, arrow] : legs) {
        const auto zi = shape->object_index(z);
        leg_ix[zi] = base->arrow_index(arrow);
        seen[zi] = true;
    }
    for (std::size_t z = 0; z < seen.size(); ++z) {
        if (!seen[z]) {
            throw InputError("cone " + name + " has no leg at '" + shape->object_name(z) + "'");
        }
    }
    auto diagram = make_functor(shape, base, diagram_objects, diagram_arrows);
    return Cone{std::move(name), p, std::move(diagram), std::move(leg_ix)};
}

ValidationReport validate_cone(const Cone& c) {
    ValidationReport report = validate_functor(c.diagram);
    const auto& base = c.base();
    const auto& shape = c.shape();
    if (c.legs.size() != shape.object_count()) {
        report.add("leg-count", "cone " + c.name + " does not have one leg per shape object");
        return report;
    }
    for (ObjectIx z = 0; z < shape.object_count(); ++z) {
        const ArrowIx leg = c.legs[z];
        if (base.dom(leg) != c.peak || base.cod(leg) != c.diagram.on_object(z)) {
            report.add("leg-type", "leg " + base.arrow_name(leg) + " at " + shape.object_name(z) +
                                       " does not go from the peak to the diagram");
        }
    }
    if (!report.ok()) return report;
    for (ArrowIx t = 0; t < shape.arrow_count(); ++t) {
        const auto z = shape.dom(t);
        const auto z2 = shape.cod(t);
        const auto composite = base.compose(c.diagram.on_arrow(t), c.legs[z]);
        if (!composite || *composite != c.legs[z2]) {
            report.add("leg-naturality", "diagram(" + shape.arrow_name(t) + ") o leg_" +
                                             shape.object_name(z) + " != leg_" +
                                             shape.object_name(z2) + " in cone " + c.name);
        }
    }
    return report;
}

ValidationReport validate_sketch(const LimitSketch& s) {
    ValidationReport report = validate_category(*s.base);
    for (const auto& c : s.cones) {
        if (!(c.base() == *s.base)) {
            report.add("cone-base", "cone " + c.name + " is not over the sketch category");
            continue;
        }
        report.append(validate_cone(c), "cone " + c.name + ": ");
    }
    return report;
}

bool ModelReport::is_model() const {
    for (const auto& c : cones) {
        if (!c.injective || !c.surjective) return false;
    }
    return true;
}

ModelReport is_model(const SetPresentation& x, const LimitSketch& s, const LimitOptions& opts) {
    ModelReport report;
    for (const auto& c : s.cones) {
        ConeVerdict v;
        v.cone = c.name;
        const GapMap gap = gap_map(x, c, opts);
        std::vector<std::optional<Elem>> preimage(gap.limit.size());
        for (Elem e = 0; e < gap.image.size(); ++e) {
            auto& slot = preimage[gap.image[e]];
            if (slot) {
                if (v.injective) {
                    v.injective = false;
                    v.collision = {x.name(c.peak, *slot), x.name(c.peak, e)};
                }
            } else {
                slot = e;
            }
        }
        for (std::size_t i = 0; i < preimage.size(); ++i) {
            if (preimage[i]) continue;
            v.surjective = false;
            std::vector<std::string> names;
            const auto& t = gap.limit.tuples[i];
            for (ObjectIx z = 0; z < t.size(); ++z) {
                names.push_back(x.name(c.diagram.on_object(z), t[z]));
            }
            v.unhit = std::move(names);
            break;
        }
        report.cones.push_back(std::move(v));
    }
    return report;
}

}  // namespace limsketch
