#include "limsketch/setops.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <tuple>

#include "limsketch/error.hpp"
#include "limsketch/sketch.hpp"

namespace limsketch {

SetPresentation::SetPresentation(CategoryPtr base, std::vector<std::vector<std::string>> carriers,
                                 std::vector<std::vector<Elem>> actions)
    : base_(std::move(base)), carriers_(std::move(carriers)), actions_(std::move(actions)) {
    if (!base_) throw InputError("presentation without a base category");
    if (carriers_.size() != base_->object_count()) {
        throw InputError("presentation carriers do not match the base objects");
    }
    if (actions_.size() != base_->arrow_count()) {
        throw InputError("presentation actions do not match the base arrows");
    }
    lookup_.resize(carriers_.size());
    for (ObjectIx o = 0; o < carriers_.size(); ++o) {
        if (carriers_[o].size() > std::numeric_limits<Elem>::max()) {
            throw BudgetExceeded("carrier too large at " + base_->object_name(o));
        }
        lookup_[o].reserve(carriers_[o].size());
        for (Elem e = 0; e < carriers_[o].size(); ++e) {
            if (!lookup_[o].emplace(carriers_[o][e], e).second) {
                throw InputError("duplicate element '" + carriers_[o][e] + "' at object " +
                                 base_->object_name(o));
            }
        }
    }
    for (ArrowIx a = 0; a < actions_.size(); ++a) {
        const auto d = base_->dom(a);
        const auto c = base_->cod(a);
        if (actions_[a].size() != carriers_[d].size()) {
            throw InputError("action of " + base_->arrow_name(a) + " is not total");
        }
        for (Elem v : actions_[a]) {
            if (v >= carriers_[c].size()) {
                throw InputError("action of " + base_->arrow_name(a) + " leaves its codomain");
            }
        }
    }
}

std::size_t SetPresentation::total_size() const {
    std::size_t n = 0;
    for (const auto& c : carriers_) n += c.size();
    return n;
}

std::optional<Elem> SetPresentation::find(ObjectIx o, const std::string& name) const {
    const auto& m = lookup_.at(o);
    auto it = m.find(name);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

Elem SetPresentation::index_of(ObjectIx o, const std::string& name) const {
    auto e = find(o, name);
    if (!e) {
        throw InputError("unknown element '" + name + "' at object " + base_->object_name(o));
    }
    return *e;
}

bool SetPresentation::operator==(const SetPresentation& other) const {
    if (base_ != other.base_ && !(base_ && other.base_ && *base_ == *other.base_)) return false;
    return carriers_ == other.carriers_ && actions_ == other.actions_;
}

SetPresentation make_presentation(
    CategoryPtr base, const std::map<std::string, std::vector<std::string>>& carriers,
    const std::map<std::string, std::map<std::string, std::string>>& actions) {
    std::vector<std::vector<std::string>> cs(base->object_count());
    for (const auto& [obj, elems] : carriers) cs[base->object_index(obj)] = elems;

    std::vector<std::unordered_map<std::string, Elem>> lookup(cs.size());
    for (ObjectIx o = 0; o < cs.size(); ++o) {
        for (Elem e = 0; e < cs[o].size(); ++e) lookup[o].emplace(cs[o][e], e);
    }

    std::vector<std::vector<Elem>> as(base->arrow_count());
    std::vector<bool> given(as.size(), false);
    for (const auto& [arrow, table] : actions) {
        const auto a = base->arrow_index(arrow);
        const auto d = base->dom(a);
        const auto c = base->cod(a);
        std::vector<Elem> fn(cs[d].size(), 0);
        std::vector<bool> hit(cs[d].size(), false);
        for (const auto& [from, to] : table) {
            auto fi = lookup[d].find(from);
            auto ti = lookup[c].find(to);
            if (fi == lookup[d].end() || ti == lookup[c].end()) {
                throw InputError("action of " + arrow + " maps '" + from + "' to '" + to +
                                 "': unknown element");
            }
            fn[fi->second] = ti->second;
            hit[fi->second] = true;
        }
        for (Elem e = 0; e < hit.size(); ++e) {
            if (!hit[e]) {
                throw InputError("action of " + arrow + " is undefined on '" + cs[d][e] + "'");
            }
        }
        as[a] = std::move(fn);
        given[a] = true;
    }
    for (ArrowIx a = 0; a < as.size(); ++a) {
        if (given[a]) continue;
        if (!base->is_identity(a)) {
            // An arrow out of an empty carrier needs no table.
            if (cs[base->dom(a)].empty()) continue;
            throw InputError("no action given for arrow " + base->arrow_name(a));
        }
        const auto n = cs[base->dom(a)].size();
        as[a].resize(n);
        for (Elem e = 0; e < n; ++e) as[a][e] = e;
    }
    return SetPresentation(std::move(base), std::move(cs), std::move(as));
}

ValidationReport validate_presentation(const SetPresentation& x) {
    ValidationReport report;
    const auto& c = x.base();
    for (ObjectIx o = 0; o < c.object_count(); ++o) {
        const auto& id = x.action(c.identity(o));
        for (Elem e = 0; e < id.size(); ++e) {
            if (id[e] != e) {
                report.add("identity-action", "identity of " + c.object_name(o) + " moves '" +
                                                  x.name(o, e) + "'");
                break;
            }
        }
    }
    for (ArrowIx f = 0; f < c.arrow_count(); ++f) {
        if (c.is_identity(f)) continue;
        for (ArrowIx g : c.outgoing(c.cod(f))) {
            const auto gf = c.compose(g, f);
            if (!gf) continue;
            for (Elem e = 0; e < x.size(c.dom(f)); ++e) {
                if (x.apply(g, x.apply(f, e)) != x.apply(*gf, e)) {
                    report.add("composition-action", "action of " + c.arrow_name(*gf) +
                                                         " differs from " + c.arrow_name(g) +
                                                         " after " + c.arrow_name(f) + " on '" +
                                                         x.name(c.dom(f), e) + "'");
                    break;
                }
            }
        }
    }
    return report;
}

SetPresentation terminal_presentation(CategoryPtr base, const std::string& element) {
    std::vector<std::vector<std::string>> cs(base->object_count(), {element});
    std::vector<std::vector<Elem>> as(base->arrow_count(), {0});
    return SetPresentation(std::move(base), std::move(cs), std::move(as));
}

SetPresentation empty_presentation(CategoryPtr base) {
    std::vector<std::vector<std::string>> cs(base->object_count());
    std::vector<std::vector<Elem>> as(base->arrow_count());
    return SetPresentation(std::move(base), std::move(cs), std::move(as));
}

SetPresentation subpresentation(const SetPresentation& x,
                                const std::vector<std::vector<Elem>>& members) {
    const auto& c = x.base();
    std::vector<std::vector<std::int64_t>> pos(c.object_count());
    std::vector<std::vector<std::string>> names(c.object_count());
    for (ObjectIx o = 0; o < c.object_count(); ++o) {
        pos[o].assign(x.size(o), -1);
        for (Elem k = 0; k < members.at(o).size(); ++k) {
            pos[o][members[o][k]] = k;
            names[o].push_back(x.name(o, members[o][k]));
        }
    }
    std::vector<std::vector<Elem>> actions(c.arrow_count());
    for (ArrowIx a = 0; a < c.arrow_count(); ++a) {
        for (Elem e : members[c.dom(a)]) {
            const auto k = pos[c.cod(a)][x.apply(a, e)];
            if (k < 0) {
                throw ConstructionError("subset is not closed under " + c.arrow_name(a) + " at '" +
                                        x.name(c.dom(a), e) + "'");
            }
            actions[a].push_back(static_cast<Elem>(k));
        }
    }
    return SetPresentation(x.base_ptr(), std::move(names), std::move(actions));
}

SetPresentation restrict_along(const SetPresentation& x, const CatFunctor& f) {
    std::vector<std::vector<std::string>> cs(f.source().object_count());
    for (ObjectIx z = 0; z < cs.size(); ++z) cs[z] = x.carrier(f.on_object(z));
    std::vector<std::vector<Elem>> as(f.source().arrow_count());
    for (ArrowIx a = 0; a < as.size(); ++a) as[a] = x.action(f.on_arrow(a));
    return SetPresentation(f.source_ptr(), std::move(cs), std::move(as));
}

ValidationReport validate_nat_trans(const SetPresentation& source, const SetPresentation& target,
                                    const NatTrans& t) {
    ValidationReport report;
    const auto& c = source.base();
    if (t.components.size() != c.object_count()) {
        report.add("shape", "component count does not match the base objects");
        return report;
    }
    for (ObjectIx o = 0; o < c.object_count(); ++o) {
        if (t.components[o].size() != source.size(o)) {
            report.add("shape", "component at " + c.object_name(o) + " is not total");
            return report;
        }
        for (Elem v : t.components[o]) {
            if (v >= target.size(o)) {
                report.add("shape", "component at " + c.object_name(o) + " leaves the target");
                return report;
            }
        }
    }
    for (ArrowIx a = 0; a < c.arrow_count(); ++a) {
        const auto d = c.dom(a);
        const auto e = c.cod(a);
        for (Elem x = 0; x < source.size(d); ++x) {
            if (target.apply(a, t(d, x)) != t(e, source.apply(a, x))) {
                report.add("naturality", "square for " + c.arrow_name(a) + " fails at '" +
                                             source.name(d, x) + "'");
                break;
            }
        }
    }
    return report;
}

NatTrans identity_nat(const SetPresentation& x) {
    NatTrans t;
    t.components.resize(x.base().object_count());
    for (ObjectIx o = 0; o < t.components.size(); ++o) {
        t.components[o].resize(x.size(o));
        for (Elem e = 0; e < x.size(o); ++e) t.components[o][e] = e;
    }
    return t;
}

NatTrans compose_nat(const NatTrans& g, const NatTrans& f) {
    NatTrans out;
    out.components.resize(f.components.size());
    for (ObjectIx o = 0; o < f.components.size(); ++o) {
        out.components[o].reserve(f.components[o].size());
        for (Elem v : f.components[o]) out.components[o].push_back(g.components.at(o).at(v));
    }
    return out;
}

bool is_bijective(const NatTrans& t, const SetPresentation& target) {
    for (ObjectIx o = 0; o < t.components.size(); ++o) {
        if (t.components[o].size() != target.size(o)) return false;
        std::vector<bool> hit(target.size(o), false);
        for (Elem v : t.components[o]) {
            if (hit.at(v)) return false;
            hit[v] = true;
        }
    }
    return true;
}

std::optional<std::size_t> LimitSet::find(const LimitTuple& t) const {
    auto it = index.find(t);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

namespace {

// Limit over `shape` of the diagram with the given carrier sizes and
// per-shape-arrow actions.
LimitSet limit_impl(const FinCategory& shape, const std::vector<std::size_t>& sizes,
                    const std::vector<const std::vector<Elem>*>& actions,
                    const LimitOptions& opts) {
    const std::size_t n = shape.object_count();

    std::uint64_t product = 1;
    for (ObjectIx z = 0; z < n; ++z) {
        const std::uint64_t s = sizes[z];
        if (s == 0) {
            product = 0;
            break;
        }
        if (product > std::numeric_limits<std::uint64_t>::max() / s) {
            product = std::numeric_limits<std::uint64_t>::max();
        } else {
            product *= s;
        }
    }
    if (product > opts.max_product) {
        throw BudgetExceeded("limit enumeration exceeds the tuple budget (" +
                             std::to_string(opts.max_product) + ")" +
                             (opts.context.empty() ? "" : " for " + opts.context));
    }

    // Arrows checked once both endpoints are assigned.
    std::vector<std::vector<ArrowIx>> checks(n);
    for (ArrowIx a = 0; a < shape.arrow_count(); ++a) {
        if (shape.is_identity(a)) continue;
        checks[std::max(shape.dom(a), shape.cod(a))].push_back(a);
    }

    LimitSet out;
    LimitTuple current(n, 0);
    auto consistent = [&](ObjectIx z) {
        for (ArrowIx a : checks[z]) {
            if ((*actions[a])[current[shape.dom(a)]] != current[shape.cod(a)]) return false;
        }
        return true;
    };
    std::function<void(ObjectIx)> descend = [&](ObjectIx z) {
        if (z == n) {
            out.index.emplace(current, out.tuples.size());
            out.tuples.push_back(current);
            return;
        }
        for (Elem e = 0; e < sizes[z]; ++e) {
            current[z] = e;
            if (consistent(z)) descend(z + 1);
        }
    };
    descend(0);
    return out;
}

}  // namespace

LimitSet limit_of_diagram(const SetPresentation& diagram, const LimitOptions& opts) {
    const auto& shape = diagram.base();
    std::vector<std::size_t> sizes(shape.object_count());
    for (ObjectIx z = 0; z < sizes.size(); ++z) sizes[z] = diagram.size(z);
    std::vector<const std::vector<Elem>*> actions(shape.arrow_count());
    for (ArrowIx a = 0; a < actions.size(); ++a) actions[a] = &diagram.action(a);
    return limit_impl(shape, sizes, actions, opts);
}

LimitSet limit_along(const SetPresentation& x, const CatFunctor& diagram,
                     const LimitOptions& opts) {
    const auto& shape = diagram.source();
    std::vector<std::size_t> sizes(shape.object_count());
    for (ObjectIx z = 0; z < sizes.size(); ++z) sizes[z] = x.size(diagram.on_object(z));
    std::vector<const std::vector<Elem>*> actions(shape.arrow_count());
    for (ArrowIx a = 0; a < actions.size(); ++a) actions[a] = &x.action(diagram.on_arrow(a));
    return limit_impl(shape, sizes, actions, opts);
}

GapMap gap_map(const SetPresentation& x, const Cone& c, const LimitOptions& opts) {
    GapMap out;
    LimitOptions o = opts;
    if (o.context.empty()) o.context = "cone " + c.name;
    out.limit = limit_along(x, c.diagram, o);
    const std::size_t width = c.legs.size();
    out.image.reserve(x.size(c.peak));
    LimitTuple t(width);
    for (Elem e = 0; e < x.size(c.peak); ++e) {
        for (std::size_t z = 0; z < width; ++z) t[z] = x.apply(c.legs[z], e);
        auto idx = out.limit.find(t);
        if (!idx) {
            throw ConstructionError("gap map of cone " + c.name +
                                    " produced an incompatible tuple; is the cone natural?");
        }
        out.image.push_back(*idx);
    }
    return out;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t DisjointSets::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
}

QuotientMap functorial_quotient(const SetPresentation& x, const PairList& pairs) {
    const auto& c = x.base();
    const std::size_t n_obj = c.object_count();
    std::vector<std::size_t> offset(n_obj + 1, 0);
    for (ObjectIx o = 0; o < n_obj; ++o) offset[o + 1] = offset[o] + x.size(o);
    DisjointSets dsu(offset[n_obj]);

    std::vector<std::tuple<ObjectIx, Elem, Elem>> work;
    auto merge = [&](ObjectIx o, Elem u, Elem v) {
        if (dsu.unite(offset[o] + u, offset[o] + v)) work.emplace_back(o, u, v);
    };
    for (ObjectIx o = 0; o < std::min(pairs.size(), n_obj); ++o) {
        for (auto [u, v] : pairs[o]) {
            if (u >= x.size(o) || v >= x.size(o)) {
                throw InputError("quotient pair outside the carrier of " + c.object_name(o));
            }
            merge(o, u, v);
        }
    }
    // Each merge edge is pushed through every action once.
    while (!work.empty()) {
        auto [o, u, v] = work.back();
        work.pop_back();
        for (ArrowIx a : c.outgoing(o)) merge(c.cod(a), x.apply(a, u), x.apply(a, v));
    }

    QuotientMap q;
    q.projection.components.resize(n_obj);
    q.classes.resize(n_obj);
    std::vector<std::vector<std::string>> names(n_obj);
    std::vector<std::vector<Elem>> reps(n_obj);
    for (ObjectIx o = 0; o < n_obj; ++o) {
        std::vector<Elem> class_of_root(x.size(o), 0);
        auto& proj = q.projection.components[o];
        proj.resize(x.size(o));
        for (Elem e = 0; e < x.size(o); ++e) {
            const Elem root = static_cast<Elem>(dsu.find(offset[o] + e) - offset[o]);
            if (root == e) {
                class_of_root[e] = static_cast<Elem>(reps[o].size());
                reps[o].push_back(e);
                names[o].push_back(x.name(o, e));
                q.classes[o].emplace_back();
            }
            proj[e] = class_of_root[root];
            q.classes[o][proj[e]].push_back(e);
        }
    }
    std::vector<std::vector<Elem>> actions(c.arrow_count());
    for (ArrowIx a = 0; a < c.arrow_count(); ++a) {
        const auto d = c.dom(a);
        const auto e = c.cod(a);
        actions[a].reserve(reps[d].size());
        for (Elem r : reps[d]) actions[a].push_back(q.projection.components[e][x.apply(a, r)]);
    }
    q.target = SetPresentation(x.base_ptr(), std::move(names), std::move(actions));
    return q;
}

PushoutPartition pushout_classes(const std::vector<Elem>& f, std::size_t b_size,
                                 const std::vector<Elem>& g, std::size_t c_size) {
    if (f.size() != g.size()) throw InputError("pushout legs have different domains");
    DisjointSets dsu(b_size + c_size);
    for (std::size_t a = 0; a < f.size(); ++a) {
        if (f[a] >= b_size || g[a] >= c_size) throw InputError("pushout leg leaves its codomain");
        dsu.unite(f[a], b_size + g[a]);
    }
    PushoutPartition out;
    out.class_of.resize(b_size + c_size);
    std::vector<std::size_t> id_of_root(b_size + c_size, 0);
    for (std::size_t i = 0; i < out.class_of.size(); ++i) {
        const auto r = dsu.find(i);
        if (r == i) id_of_root[i] = out.class_count++;
        out.class_of[i] = id_of_root[r];
    }
    return out;
}

DisjointSum disjoint_sum(const SetPresentation& x, const SetPresentation& y,
                         const SumNaming& naming) {
    if (!(x.base() == y.base())) throw InputError("disjoint sum over different base categories");
    const auto& c = x.base();
    const std::size_t n_obj = c.object_count();
    std::vector<std::vector<std::string>> names(n_obj);
    DisjointSum out;
    out.left.components.resize(n_obj);
    out.right.components.resize(n_obj);
    for (ObjectIx o = 0; o < n_obj; ++o) {
        names[o].reserve(x.size(o) + y.size(o));
        for (Elem e = 0; e < x.size(o); ++e) {
            names[o].push_back(naming.left_prefix + x.name(o, e));
            out.left.components[o].push_back(e);
        }
        for (Elem e = 0; e < y.size(o); ++e) {
            names[o].push_back(naming.right_prefix + y.name(o, e));
            out.right.components[o].push_back(static_cast<Elem>(x.size(o) + e));
        }
    }
    std::vector<std::vector<Elem>> actions(c.arrow_count());
    for (ArrowIx a = 0; a < c.arrow_count(); ++a) {
        const auto shift = static_cast<Elem>(x.size(c.cod(a)));
        actions[a] = x.action(a);
        for (Elem v : y.action(a)) actions[a].push_back(shift + v);
    }
    out.sum = SetPresentation(x.base_ptr(), std::move(names), std::move(actions));
    return out;
}

SetPresentation rename_elements(const SetPresentation& x,
                                const std::vector<std::vector<std::string>>& names) {
    std::vector<std::vector<Elem>> actions(x.base().arrow_count());
    for (ArrowIx a = 0; a < actions.size(); ++a) actions[a] = x.action(a);
    return SetPresentation(x.base_ptr(), names, std::move(actions));
}

}  // namespace limsketch
