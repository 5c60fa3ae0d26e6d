#include "limsketch/serialize.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "limsketch/builders.hpp"
#include "limsketch/error.hpp"

namespace limsketch {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw InputError(where + ": " + what);
}

void allow_only(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* a : keys) known = known || k == a;
        if (!known) fail(where, "unknown field '" + k + "'");
    }
}

const Json& need(const Json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string text(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

std::map<std::string, std::string> string_map(const Json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object of strings");
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : j.items()) out[k] = text(v, where + "." + k);
    return out;
}

// Run a constructor and prefix its InputError with the field path.
template <class F>
auto located(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const InputError& e) {
        fail(where, e.what());
    }
}

Json carriers_json(const SetPresentation& x) {
    Json out = Json::object();
    for (ObjectIx o = 0; o < x.base().object_count(); ++o) {
        out[x.base().object_name(o)] = x.carrier(o);
    }
    return out;
}

Json members_json(const SetPresentation& x, const std::vector<std::vector<Elem>>& members) {
    Json out = Json::object();
    for (ObjectIx o = 0; o < x.base().object_count(); ++o) {
        Json list = Json::array();
        for (Elem e : members[o]) list.push_back(x.name(o, e));
        out[x.base().object_name(o)] = std::move(list);
    }
    return out;
}

}  // namespace

Json parse_json_text(const std::string& body, const std::string& source) {
    try {
        return Json::parse(body);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < body.size(); ++i) {
            if (body[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": malformed JSON (" + e.what() + ")");
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

Json category_to_json(const FinCategory& c) {
    Json j;
    j["objects"] = c.objects();
    Json arrows = Json::array();
    for (const auto& a : c.arrow_specs()) arrows.push_back({{"id", a.id}, {"dom", a.dom}, {"cod", a.cod}});
    j["arrows"] = std::move(arrows);
    Json ids = Json::object();
    for (const auto& [o, a] : c.identity_specs()) ids[o] = a;
    j["identities"] = std::move(ids);
    Json comp = Json::array();
    for (const auto& e : c.composition_specs()) {
        const auto g = c.arrow_index(e.g);
        const auto f = c.arrow_index(e.f);
        if (c.is_identity(g) || c.is_identity(f)) continue;
        comp.push_back({{"g", e.g}, {"f", e.f}, {"gf", e.gf}});
    }
    j["compose"] = std::move(comp);
    return j;
}

CategoryPtr category_from_json(const Json& j, const std::string& where) {
    allow_only(j, {"objects", "arrows", "identities", "compose"}, where);
    std::vector<std::string> objects;
    const auto& jo = need(j, "objects", where);
    if (!jo.is_array()) fail(where + ".objects", "expected an array");
    for (std::size_t i = 0; i < jo.size(); ++i) {
        objects.push_back(text(jo[i], where + ".objects[" + std::to_string(i) + "]"));
    }
    std::vector<ArrowSpec> arrows;
    const auto& ja = need(j, "arrows", where);
    if (!ja.is_array()) fail(where + ".arrows", "expected an array");
    for (std::size_t i = 0; i < ja.size(); ++i) {
        const auto w = where + ".arrows[" + std::to_string(i) + "]";
        allow_only(ja[i], {"id", "dom", "cod"}, w);
        arrows.push_back({text(need(ja[i], "id", w), w + ".id"), text(need(ja[i], "dom", w), w + ".dom"),
                          text(need(ja[i], "cod", w), w + ".cod")});
    }
    const auto ids = string_map(need(j, "identities", where), where + ".identities");
    std::vector<CompositionEntry> table;
    std::set<std::pair<std::string, std::string>> given;
    if (auto it = j.find("compose"); it != j.end()) {
        if (!it->is_array()) fail(where + ".compose", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto w = where + ".compose[" + std::to_string(i) + "]";
            const auto& e = (*it)[i];
            allow_only(e, {"g", "f", "gf"}, w);
            table.push_back({text(need(e, "g", w), w + ".g"), text(need(e, "f", w), w + ".f"),
                             text(need(e, "gf", w), w + ".gf")});
            given.insert({table.back().g, table.back().f});
        }
    }
    // Composites with identities are implied.
    for (const auto& a : arrows) {
        auto cod_id = ids.find(a.cod);
        auto dom_id = ids.find(a.dom);
        if (cod_id != ids.end() && !given.count({cod_id->second, a.id})) {
            table.push_back({cod_id->second, a.id, a.id});
            given.insert({cod_id->second, a.id});
        }
        if (dom_id != ids.end() && !given.count({a.id, dom_id->second})) {
            table.push_back({a.id, dom_id->second, a.id});
            given.insert({a.id, dom_id->second});
        }
    }
    auto cat = located(where, [&] {
        return std::make_shared<const FinCategory>(std::move(objects), std::move(arrows), ids, table);
    });
    const auto report = validate_category(*cat);
    if (!report.ok()) fail(where, "not a category: " + report.violations[0].message);
    return cat;
}

Json presentation_to_json(const SetPresentation& x, const std::optional<std::string>& category_name) {
    Json j;
    j["category"] = category_name ? Json(*category_name) : category_to_json(x.base());
    j["carrier"] = carriers_json(x);
    Json actions = Json::object();
    const auto& c = x.base();
    for (ArrowIx a = 0; a < c.arrow_count(); ++a) {
        if (c.is_identity(a)) continue;
        Json table = Json::object();
        for (Elem e = 0; e < x.size(c.dom(a)); ++e) table[x.name(c.dom(a), e)] = x.name(c.cod(a), x.apply(a, e));
        actions[c.arrow_name(a)] = std::move(table);
    }
    j["action"] = std::move(actions);
    return j;
}

namespace {

CategoryPtr resolve_category(const Json& j, const std::string& where) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        return located(where, [&] { return build_sketch(name).base; });
    }
    return category_from_json(j, where);
}

}  // namespace

SetPresentation presentation_from_json(const Json& j, CategoryPtr expected, const std::string& where) {
    allow_only(j, {"category", "carrier", "action"}, where);
    CategoryPtr base = resolve_category(need(j, "category", where), where + ".category");
    if (expected) {
        if (!(*base == *expected)) fail(where + ".category", "does not match the sketch category");
        base = expected;
    }
    std::map<std::string, std::vector<std::string>> carriers;
    const auto& jc = need(j, "carrier", where);
    if (!jc.is_object()) fail(where + ".carrier", "expected an object");
    for (const auto& [obj, elems] : jc.items()) {
        const auto w = where + ".carrier." + obj;
        if (!elems.is_array()) fail(w, "expected an array");
        auto& list = carriers[obj];
        for (std::size_t i = 0; i < elems.size(); ++i) list.push_back(text(elems[i], w));
    }
    std::map<std::string, std::map<std::string, std::string>> actions;
    if (auto it = j.find("action"); it != j.end()) {
        if (!it->is_object()) fail(where + ".action", "expected an object");
        for (const auto& [arrow, table] : it->items()) {
            actions[arrow] = string_map(table, where + ".action." + arrow);
        }
    }
    auto x = located(where, [&] { return make_presentation(base, carriers, actions); });
    const auto report = validate_presentation(x);
    if (!report.ok()) fail(where, "not a functor: " + report.violations[0].message);
    return x;
}

Json sketch_to_json(const LimitSketch& s, const std::optional<std::string>& category_name) {
    Json j;
    j["category"] = category_name ? Json(*category_name) : category_to_json(*s.base);
    Json cones = Json::array();
    for (const auto& c : s.cones) {
        Json jc;
        jc["name"] = c.name;
        jc["peak"] = c.base().object_name(c.peak);
        jc["shape"] = category_to_json(c.shape());
        Json objs = Json::object();
        for (ObjectIx z = 0; z < c.shape().object_count(); ++z) {
            objs[c.shape().object_name(z)] = c.base().object_name(c.diagram.on_object(z));
        }
        Json arrs = Json::object();
        for (ArrowIx t = 0; t < c.shape().arrow_count(); ++t) {
            arrs[c.shape().arrow_name(t)] = c.base().arrow_name(c.diagram.on_arrow(t));
        }
        jc["diagram"] = {{"objects", std::move(objs)}, {"arrows", std::move(arrs)}};
        Json legs = Json::object();
        for (ObjectIx z = 0; z < c.legs.size(); ++z) {
            legs[c.shape().object_name(z)] = c.base().arrow_name(c.legs[z]);
        }
        jc["legs"] = std::move(legs);
        cones.push_back(std::move(jc));
    }
    j["cones"] = std::move(cones);
    return j;
}

LimitSketch sketch_from_json(const Json& j, const std::string& where) {
    allow_only(j, {"category", "cones"}, where);
    LimitSketch s;
    s.base = resolve_category(need(j, "category", where), where + ".category");
    const auto& jc = need(j, "cones", where);
    if (!jc.is_array()) fail(where + ".cones", "expected an array");
    for (std::size_t i = 0; i < jc.size(); ++i) {
        const auto w = where + ".cones[" + std::to_string(i) + "]";
        const auto& c = jc[i];
        allow_only(c, {"name", "peak", "shape", "diagram", "legs"}, w);
        const std::string name =
            c.contains("name") ? text(c["name"], w + ".name") : "c" + std::to_string(i);
        const auto peak = text(need(c, "peak", w), w + ".peak");
        auto shape = category_from_json(need(c, "shape", w), w + ".shape");
        const auto& d = need(c, "diagram", w);
        allow_only(d, {"objects", "arrows"}, w + ".diagram");
        const auto objs = string_map(need(d, "objects", w + ".diagram"), w + ".diagram.objects");
        const auto arrs = d.contains("arrows") ? string_map(d["arrows"], w + ".diagram.arrows")
                                               : std::map<std::string, std::string>{};
        const auto legs = string_map(need(c, "legs", w), w + ".legs");
        s.cones.push_back(located(w, [&] { return make_cone(name, s.base, peak, shape, objs, arrs, legs); }));
    }
    const auto report = validate_sketch(s);
    if (!report.ok()) fail(where, report.violations[0].message);
    return s;
}

Json nat_trans_to_json(const SetPresentation& source, const SetPresentation& target, const NatTrans& t) {
    Json comps = Json::object();
    const auto& c = source.base();
    for (ObjectIx o = 0; o < c.object_count(); ++o) {
        Json table = Json::object();
        for (Elem e = 0; e < source.size(o); ++e) table[source.name(o, e)] = target.name(o, t(o, e));
        comps[c.object_name(o)] = std::move(table);
    }
    Json j;
    j["components"] = std::move(comps);
    return j;
}

NatTrans nat_trans_from_json(const Json& j, const SetPresentation& source, const SetPresentation& target,
                             const std::string& where) {
    allow_only(j, {"components"}, where);
    const auto& jc = need(j, "components", where);
    if (!jc.is_object()) fail(where + ".components", "expected an object");
    const auto& c = source.base();
    NatTrans t;
    t.components.resize(c.object_count());
    std::vector<std::vector<bool>> set(c.object_count());
    for (ObjectIx o = 0; o < c.object_count(); ++o) {
        t.components[o].assign(source.size(o), 0);
        set[o].assign(source.size(o), false);
    }
    for (const auto& [obj, table] : jc.items()) {
        const auto w = where + ".components." + obj;
        const auto o = located(w, [&] { return c.object_index(obj); });
        for (const auto& [from, to] : string_map(table, w)) {
            const auto fe = located(w, [&] { return source.index_of(o, from); });
            t.components[o][fe] = located(w, [&] { return target.index_of(o, to); });
            set[o][fe] = true;
        }
    }
    for (ObjectIx o = 0; o < c.object_count(); ++o) {
        for (Elem e = 0; e < source.size(o); ++e) {
            if (!set[o][e]) fail(where, "no image for '" + source.name(o, e) + "' at " + c.object_name(o));
        }
    }
    const auto report = validate_nat_trans(source, target, t);
    if (!report.ok()) fail(where, "not natural: " + report.violations[0].message);
    return t;
}

Json model_report_to_json(const ModelReport& r) {
    Json cones = Json::array();
    for (const auto& v : r.cones) {
        Json jc;
        jc["cone"] = v.cone;
        jc["injective"] = v.injective;
        jc["collision"] = v.collision ? Json::array({v.collision->first, v.collision->second}) : Json();
        jc["surjective"] = v.surjective;
        jc["unhit"] = v.unhit ? Json(*v.unhit) : Json();
        cones.push_back(std::move(jc));
    }
    Json j;
    j["model"] = r.is_model();
    j["cones"] = std::move(cones);
    return j;
}

Json elim_trace_to_json(const ElimTrace& t) {
    Json j;
    j["engine"] = "elim";
    j["mode"] = to_string(t.mode);
    j["verdict"] = t.converged ? "converged" : "budget-exhausted";
    j["converged_at"] = t.converged ? Json(t.converged_at) : Json();
    Json stages = Json::array();
    for (const auto& s : t.stages) {
        Json js;
        js["index"] = s.index;
        js["B"] = carriers_json(s.B);
        js["E"] = carriers_json(s.E);
        js["core"] = members_json(s.B, s.core);
        if (s.p) {
            js["rule1"] = s.rule1_pairs;
            js["rule2"] = s.rule2_pairs;
            js["p"] = nat_trans_to_json(s.S, s.p->target, s.p->projection)["components"];
        }
        stages.push_back(std::move(js));
    }
    j["stages"] = std::move(stages);
    j["core"] = presentation_to_json(t.core);
    j["rho"] = nat_trans_to_json(t.stages.at(0).B, t.core, t.rho);
    return j;
}

Json kelly_trace_to_json(const KellyTrace& t) {
    Json j;
    j["engine"] = "kelly";
    j["verdict"] = t.converged ? "converged" : "budget-exhausted";
    j["converged_at"] = t.converged ? Json(t.converged_at) : Json();
    Json stages = Json::array();
    for (std::size_t n = 0; n < t.objects.size(); ++n) {
        Json js;
        js["index"] = n;
        js["carrier"] = carriers_json(t.objects[n]);
        if (n > 0) js["unit"] = nat_trans_to_json(t.objects[n - 1], t.objects[n], t.steps[n - 1].unit)["components"];
        stages.push_back(std::move(js));
    }
    j["stages"] = std::move(stages);
    j["result"] = presentation_to_json(t.result());
    j["rho"] = nat_trans_to_json(t.objects.at(0), t.result(), t.rho);
    return j;
}

Json alpha_to_json(const AlphaTrace& a, const ElimTrace& elim, const KellyTrace& kelly) {
    Json j;
    j["alpha0_identity"] = a.alpha0_identity;
    Json stages = Json::array();
    for (std::size_t i = 0; i < a.alpha.size(); ++i) {
        Json js;
        js["stage"] = i;
        js["components"] = nat_trans_to_json(elim.stages[i].S, kelly.objects[i], a.alpha[i])["components"];
        js["natural"] = a.naturality[i].ok;
        if (!a.naturality[i].ok) js["witness"] = a.naturality[i].witness;
        if (i > 0) {
            js["commutes"] = a.commutation[i - 1].ok;
            if (!a.commutation[i - 1].ok) js["commutation_witness"] = a.commutation[i - 1].witness;
        }
        stages.push_back(std::move(js));
    }
    j["stages"] = std::move(stages);
    j["ok"] = a.ok();
    return j;
}

}  // namespace limsketch
