#include "limsketch/fincat.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "limsketch/error.hpp"

namespace limsketch {

std::size_t ValidationReport::count(std::string_view kind) const {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

void ValidationReport::append(const ValidationReport& other, const std::string& prefix) {
    for (const auto& v : other.violations) {
        violations.push_back({v.kind, prefix + v.message});
    }
}

FinCategory::FinCategory(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                         const std::map<std::string, std::string>& identities,
                         const std::vector<CompositionEntry>& compose)
    : objects_(std::move(objects)) {
    std::sort(objects_.begin(), objects_.end());
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        if (!object_lookup_.emplace(objects_[i], i).second) {
            throw InputError("duplicate object identifier '" + objects_[i] + "'");
        }
    }
    std::sort(arrows.begin(), arrows.end(),
              [](const ArrowSpec& a, const ArrowSpec& b) { return a.id < b.id; });
    arrows_.reserve(arrows.size());
    for (const auto& spec : arrows) {
        auto dom = find_object(spec.dom);
        auto cod = find_object(spec.cod);
        if (!dom || !cod) {
            throw InputError("arrow '" + spec.id + "' refers to an unknown object");
        }
        if (!arrow_lookup_.emplace(spec.id, arrows_.size()).second) {
            throw InputError("duplicate arrow identifier '" + spec.id + "'");
        }
        arrows_.push_back({spec.id, *dom, *cod});
    }

    identities_.assign(objects_.size(), 0);
    std::vector<bool> seen(objects_.size(), false);
    for (const auto& [obj, arrow] : identities) {
        auto o = find_object(obj);
        auto a = find_arrow(arrow);
        if (!o) throw InputError("identity given for unknown object '" + obj + "'");
        if (!a) throw InputError("identity of '" + obj + "' is unknown arrow '" + arrow + "'");
        identities_[*o] = *a;
        seen[*o] = true;
    }
    for (std::size_t o = 0; o < objects_.size(); ++o) {
        if (!seen[o]) throw InputError("object '" + objects_[o] + "' has no identity arrow");
    }

    const std::size_t n = arrows_.size();
    table_.assign(n * n, -1);
    for (const auto& entry : compose) {
        auto g = find_arrow(entry.g);
        auto f = find_arrow(entry.f);
        auto gf = find_arrow(entry.gf);
        if (!g || !f || !gf) {
            throw InputError("composition entry (" + entry.g + " o " + entry.f + " = " + entry.gf +
                             ") names an unknown arrow");
        }
        auto& slot = table_[*g * n + *f];
        if (slot >= 0 && static_cast<ArrowIx>(slot) != *gf) {
            throw InputError("conflicting composition entries for (" + entry.g + " o " + entry.f +
                             ")");
        }
        slot = static_cast<std::int64_t>(*gf);
    }

    homs_.assign(objects_.size() * objects_.size(), {});
    outgoing_.assign(objects_.size(), {});
    for (ArrowIx a = 0; a < n; ++a) {
        homs_[arrows_[a].dom * objects_.size() + arrows_[a].cod].push_back(a);
        if (!is_identity(a)) outgoing_[arrows_[a].dom].push_back(a);
    }
}

ObjectIx FinCategory::object_index(std::string_view name) const {
    auto o = find_object(name);
    if (!o) throw InputError("unknown object '" + std::string(name) + "'");
    return *o;
}

ArrowIx FinCategory::arrow_index(std::string_view name) const {
    auto a = find_arrow(name);
    if (!a) throw InputError("unknown arrow '" + std::string(name) + "'");
    return *a;
}

std::optional<ObjectIx> FinCategory::find_object(std::string_view name) const {
    auto it = object_lookup_.find(std::string(name));
    if (it == object_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<ArrowIx> FinCategory::find_arrow(std::string_view name) const {
    auto it = arrow_lookup_.find(std::string(name));
    if (it == arrow_lookup_.end()) return std::nullopt;
    return it->second;
}

bool FinCategory::is_identity(ArrowIx a) const {
    const auto& rec = arrows_.at(a);
    return rec.dom == rec.cod && identities_[rec.dom] == a;
}

std::optional<ArrowIx> FinCategory::compose(ArrowIx g, ArrowIx f) const {
    const auto v = table_.at(g * arrows_.size() + f);
    if (v < 0) return std::nullopt;
    return static_cast<ArrowIx>(v);
}

ArrowIx FinCategory::compose_checked(ArrowIx g, ArrowIx f) const {
    auto gf = compose(g, f);
    if (!gf) {
        throw ConstructionError("composition " + arrow_name(g) + " o " + arrow_name(f) +
                                " is undefined");
    }
    return *gf;
}

const std::vector<ArrowIx>& FinCategory::hom(ObjectIx a, ObjectIx b) const {
    return homs_.at(a * objects_.size() + b);
}

std::vector<std::string> FinCategory::hom(std::string_view a, std::string_view b) const {
    std::vector<std::string> out;
    for (ArrowIx x : hom(object_index(a), object_index(b))) out.push_back(arrow_name(x));
    return out;
}

std::vector<ArrowSpec> FinCategory::arrow_specs() const {
    std::vector<ArrowSpec> out;
    for (const auto& rec : arrows_) out.push_back({rec.id, objects_[rec.dom], objects_[rec.cod]});
    return out;
}

std::map<std::string, std::string> FinCategory::identity_specs() const {
    std::map<std::string, std::string> out;
    for (std::size_t o = 0; o < objects_.size(); ++o) out[objects_[o]] = arrows_[identities_[o]].id;
    return out;
}

std::vector<CompositionEntry> FinCategory::composition_specs() const {
    std::vector<CompositionEntry> out;
    const std::size_t n = arrows_.size();
    for (ArrowIx g = 0; g < n; ++g) {
        for (ArrowIx f = 0; f < n; ++f) {
            const auto v = table_[g * n + f];
            if (v >= 0) out.push_back({arrows_[g].id, arrows_[f].id, arrows_[v].id});
        }
    }
    return out;
}

bool FinCategory::operator==(const FinCategory& other) const {
    if (objects_ != other.objects_ || identities_ != other.identities_ || table_ != other.table_) {
        return false;
    }
    if (arrows_.size() != other.arrows_.size()) return false;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        const auto& a = arrows_[i];
        const auto& b = other.arrows_[i];
        if (a.id != b.id || a.dom != b.dom || a.cod != b.cod) return false;
    }
    return true;
}

ValidationReport validate_category(const FinCategory& c) {
    ValidationReport report;
    const std::size_t n = c.arrow_count();
    for (ObjectIx o = 0; o < c.object_count(); ++o) {
        const ArrowIx id = c.identity(o);
        if (c.dom(id) != o || c.cod(id) != o) {
            report.add("identity-type", "identity " + c.arrow_name(id) + " of " + c.object_name(o) +
                                            " is not an endomorphism of it");
        }
    }
    for (ArrowIx g = 0; g < n; ++g) {
        for (ArrowIx f = 0; f < n; ++f) {
            const bool composable = c.cod(f) == c.dom(g);
            const auto gf = c.compose(g, f);
            if (composable && !gf) {
                report.add("missing-composite", "no composite for " + c.arrow_name(g) + " o " +
                                                    c.arrow_name(f));
            } else if (!composable && gf) {
                report.add("spurious-composite", "composite defined for non-composable " +
                                                     c.arrow_name(g) + " o " + c.arrow_name(f));
            } else if (composable && (c.dom(*gf) != c.dom(f) || c.cod(*gf) != c.cod(g))) {
                report.add("composite-type", c.arrow_name(g) + " o " + c.arrow_name(f) + " = " +
                                                 c.arrow_name(*gf) + " has the wrong type");
            }
        }
    }
    for (ArrowIx f = 0; f < n; ++f) {
        const auto left = c.compose(c.identity(c.cod(f)), f);
        const auto right = c.compose(f, c.identity(c.dom(f)));
        if ((left && *left != f) || (right && *right != f)) {
            report.add("unit-law", "identity is not neutral for " + c.arrow_name(f));
        }
    }
    for (ArrowIx f = 0; f < n; ++f) {
        for (ArrowIx g : c.outgoing(c.cod(f))) {
            const auto gf = c.compose(g, f);
            if (!gf) continue;
            for (ArrowIx h : c.outgoing(c.cod(g))) {
                const auto hg = c.compose(h, g);
                if (!hg) continue;
                const auto lhs = c.compose(h, *gf);
                const auto rhs = c.compose(*hg, f);
                if (lhs && rhs && *lhs != *rhs) {
                    report.add("associativity", "(" + c.arrow_name(h) + " o " + c.arrow_name(g) +
                                                    ") o " + c.arrow_name(f) + " != " +
                                                    c.arrow_name(h) + " o (" + c.arrow_name(g) +
                                                    " o " + c.arrow_name(f) + ")");
                }
            }
        }
    }
    return report;
}

CatFunctor::CatFunctor(CategoryPtr source, CategoryPtr target, std::vector<ObjectIx> object_map,
                       std::vector<ArrowIx> arrow_map)
    : source_(std::move(source)),
      target_(std::move(target)),
      object_map_(std::move(object_map)),
      arrow_map_(std::move(arrow_map)) {
    if (object_map_.size() != source_->object_count() ||
        arrow_map_.size() != source_->arrow_count()) {
        throw InputError("functor maps do not cover the source category");
    }
    for (auto o : object_map_) {
        if (o >= target_->object_count()) throw InputError("functor object image out of range");
    }
    for (auto a : arrow_map_) {
        if (a >= target_->arrow_count()) throw InputError("functor arrow image out of range");
    }
}

CatFunctor make_functor(CategoryPtr source, CategoryPtr target,
                        const std::map<std::string, std::string>& objects,
                        const std::map<std::string, std::string>& arrows) {
    std::vector<ObjectIx> om(source->object_count());
    std::vector<bool> om_seen(om.size(), false);
    for (const auto& [from, to] : objects) {
        const auto s = source->object_index(from);
        om[s] = target->object_index(to);
        om_seen[s] = true;
    }
    for (std::size_t o = 0; o < om.size(); ++o) {
        if (!om_seen[o]) {
            throw InputError("functor does not map object '" + source->object_name(o) + "'");
        }
    }
    std::vector<ArrowIx> am(source->arrow_count());
    std::vector<bool> am_seen(am.size(), false);
    for (const auto& [from, to] : arrows) {
        const auto s = source->arrow_index(from);
        am[s] = target->arrow_index(to);
        am_seen[s] = true;
    }
    for (std::size_t a = 0; a < am.size(); ++a) {
        if (am_seen[a]) continue;
        // Identities may be left implicit.
        if (source->is_identity(a)) {
            am[a] = target->identity(om[source->dom(a)]);
        } else {
            throw InputError("functor does not map arrow '" + source->arrow_name(a) + "'");
        }
    }
    return CatFunctor(std::move(source), std::move(target), std::move(om), std::move(am));
}

ValidationReport validate_functor(const CatFunctor& F) {
    ValidationReport report;
    const auto& s = F.source();
    const auto& t = F.target();
    for (ObjectIx o = 0; o < s.object_count(); ++o) {
        if (F.on_arrow(s.identity(o)) != t.identity(F.on_object(o))) {
            report.add("identity-preservation",
                       "identity of " + s.object_name(o) + " is not sent to an identity");
        }
    }
    for (ArrowIx a = 0; a < s.arrow_count(); ++a) {
        const ArrowIx img = F.on_arrow(a);
        if (t.dom(img) != F.on_object(s.dom(a)) || t.cod(img) != F.on_object(s.cod(a))) {
            report.add("type-preservation", "image of " + s.arrow_name(a) + " has the wrong type");
        }
    }
    for (ArrowIx f = 0; f < s.arrow_count(); ++f) {
        for (ArrowIx g = 0; g < s.arrow_count(); ++g) {
            if (s.cod(f) != s.dom(g)) continue;
            const auto gf = s.compose(g, f);
            if (!gf) continue;
            const auto img = t.compose(F.on_arrow(g), F.on_arrow(f));
            if (!img || *img != F.on_arrow(*gf)) {
                report.add("composition-preservation", "F(" + s.arrow_name(g) + " o " +
                                                           s.arrow_name(f) + ") != F(" +
                                                           s.arrow_name(g) + ") o F(" +
                                                           s.arrow_name(f) + ")");
            }
        }
    }
    return report;
}

CatFunctor identity_functor(CategoryPtr c) {
    std::vector<ObjectIx> om(c->object_count());
    std::vector<ArrowIx> am(c->arrow_count());
    for (std::size_t i = 0; i < om.size(); ++i) om[i] = i;
    for (std::size_t i = 0; i < am.size(); ++i) am[i] = i;
    auto copy = c;
    return CatFunctor(std::move(c), std::move(copy), std::move(om), std::move(am));
}

CategoryPtr discrete_category(const std::vector<std::string>& objects) {
    return free_category(objects, {});
}

CategoryPtr terminal_category(const std::string& object) { return discrete_category({object}); }

CategoryPtr free_category(const std::vector<std::string>& objects,
                          const std::vector<ArrowSpec>& edges) {
    // A path is a list of edge indices in application order.
    struct Path {
        std::string dom;
        std::string cod;
        std::vector<std::size_t> edges;
        std::string name;
    };
    auto path_name = [&](const std::vector<std::size_t>& es) {
        std::string out;
        for (auto it = es.rbegin(); it != es.rend(); ++it) {
            if (!out.empty()) out += '.';
            out += edges[*it].id;
        }
        return out;
    };

    std::vector<Path> paths;
    std::map<std::string, std::string> identities;
    for (const auto& o : objects) {
        paths.push_back({o, o, {}, "id_" + o});
        identities[o] = "id_" + o;
    }
    // Breadth-first extension; a path longer than the edge count means a cycle.
    std::vector<Path> frontier;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        frontier.push_back({edges[e].dom, edges[e].cod, {e}, edges[e].id});
    }
    std::size_t length = 1;
    while (!frontier.empty()) {
        if (length > edges.size()) throw InputError("free_category: graph has a cycle");
        std::vector<Path> next;
        for (const auto& p : frontier) {
            paths.push_back(p);
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (edges[e].dom != p.cod) continue;
                Path q = p;
                q.cod = edges[e].cod;
                q.edges.push_back(e);
                q.name = path_name(q.edges);
                next.push_back(std::move(q));
            }
        }
        frontier = std::move(next);
        ++length;
    }

    std::vector<ArrowSpec> arrows;
    std::map<std::vector<std::size_t>, std::string> by_edges;
    for (const auto& p : paths) {
        arrows.push_back({p.name, p.dom, p.cod});
        if (!p.edges.empty()) by_edges[p.edges] = p.name;
    }
    std::vector<CompositionEntry> compose;
    for (const auto& f : paths) {
        for (const auto& g : paths) {
            if (f.cod != g.dom) continue;
            std::string gf;
            if (f.edges.empty()) {
                gf = g.name;
            } else if (g.edges.empty()) {
                gf = f.name;
            } else {
                auto es = f.edges;
                es.insert(es.end(), g.edges.begin(), g.edges.end());
                gf = by_edges.at(es);
            }
            compose.push_back({g.name, f.name, gf});
        }
    }
    return std::make_shared<const FinCategory>(objects, std::move(arrows), identities, compose);
}

}  // namespace limsketch
