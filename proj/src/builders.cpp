#include "limsketch/builders.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "limsketch/error.hpp"

namespace limsketch {

CategoryPtr make_category(const std::vector<std::string>& objects,
                          const std::vector<ArrowSpec>& arrows,
                          const std::vector<CompositionEntry>& composites) {
    std::vector<ArrowSpec> all = arrows;
    std::map<std::string, std::string> ids;
    std::map<std::string, std::pair<std::string, std::string>> ends;
    for (const auto& o : objects) {
        ids[o] = "id_" + o;
        all.push_back({"id_" + o, o, o});
    }
    for (const auto& a : all) ends[a.id] = {a.dom, a.cod};

    std::vector<CompositionEntry> table = composites;
    for (const auto& a : all) {
        const auto& [d, c] = ends[a.id];
        table.push_back({ids.at(c), a.id, a.id});
        if (a.id != ids.at(d)) table.push_back({a.id, ids.at(d), a.id});
    }
    return std::make_shared<const FinCategory>(objects, std::move(all), ids, table);
}

namespace {

using Word = std::vector<std::size_t>;  // generator indices, composition order

struct Rewriter {
    std::vector<ObjectIx> gen_dom, gen_cod;
    std::vector<std::pair<Word, Word>> rules;
    std::optional<ObjectIx> terminal;
    std::vector<Word> canonical;  // per object: chosen word into the terminal
    std::size_t max_steps = 100000;

    // Position and kind of the first redex scanning left to right (or right
    // to left); kind -1 is the terminal rule.
    std::optional<std::pair<std::size_t, long>> find_redex(const Word& w, ObjectIx dom,
                                                           bool leftmost) const {
        const std::size_t n = w.size();
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = leftmost ? k : n - 1 - k;
            if (terminal && gen_cod[w[i]] == *terminal) {
                Word suffix(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
                if (suffix != canonical[dom]) return std::make_pair(i, -1L);
            }
            for (std::size_t r = 0; r < rules.size(); ++r) {
                const auto& lhs = rules[r].first;
                if (lhs.size() > n - i) continue;
                if (std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) {
                    return std::make_pair(i, static_cast<long>(r));
                }
            }
        }
        return std::nullopt;
    }

    Word normal_form(Word w, ObjectIx dom, bool leftmost) const {
        for (std::size_t step = 0; step < max_steps; ++step) {
            auto redex = find_redex(w, dom, leftmost);
            if (!redex) return w;
            const auto [i, kind] = *redex;
            Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            if (kind < 0) {
                next.insert(next.end(), canonical[dom].begin(), canonical[dom].end());
            } else {
                const auto& [lhs, rhs] = rules[static_cast<std::size_t>(kind)];
                next.insert(next.end(), rhs.begin(), rhs.end());
                next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(i + lhs.size()),
                            w.end());
            }
            w = std::move(next);
        }
        throw ConstructionError("rewriting did not terminate within " +
                                std::to_string(max_steps) + " steps");
    }
};

Word parse_word(const std::vector<std::string>& ids,
                const std::map<std::string, std::size_t>& gen_ix) {
    Word w;
    for (const auto& id : ids) {
        auto it = gen_ix.find(id);
        if (it == gen_ix.end()) throw InputError("relation uses unknown generator '" + id + "'");
        w.push_back(it->second);
    }
    return w;
}

}  // namespace

CategoryPtr materialize_category(const CategoryPresentation& p, std::size_t max_word_length) {
    std::map<std::string, ObjectIx> obj_ix;
    for (ObjectIx o = 0; o < p.objects.size(); ++o) {
        if (!obj_ix.emplace(p.objects[o], o).second) {
            throw InputError("duplicate object '" + p.objects[o] + "'");
        }
    }
    // Generators in identifier order so ties between words break reproducibly.
    std::vector<ArrowSpec> gens = p.generators;
    std::sort(gens.begin(), gens.end(),
              [](const ArrowSpec& a, const ArrowSpec& b) { return a.id < b.id; });
    std::map<std::string, std::size_t> gen_ix;

    Rewriter rw;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (!gen_ix.emplace(gens[g].id, g).second) {
            throw InputError("duplicate generator '" + gens[g].id + "'");
        }
        auto d = obj_ix.find(gens[g].dom);
        auto c = obj_ix.find(gens[g].cod);
        if (d == obj_ix.end() || c == obj_ix.end()) {
            throw InputError("generator '" + gens[g].id + "' has an unknown endpoint");
        }
        rw.gen_dom.push_back(d->second);
        rw.gen_cod.push_back(c->second);
    }
    for (const auto& r : p.relations) {
        Word lhs = parse_word(r.lhs, gen_ix);
        if (lhs.empty()) throw InputError("relation with an empty left-hand side");
        rw.rules.emplace_back(std::move(lhs), parse_word(r.rhs, gen_ix));
    }

    if (p.terminal) {
        auto t = obj_ix.find(*p.terminal);
        if (t == obj_ix.end()) throw InputError("unknown terminal object '" + *p.terminal + "'");
        rw.terminal = t->second;
        // Shortest word into the terminal object from each object, ties broken
        // by comparing words generator by generator from the terminal end.
        rw.canonical.assign(p.objects.size(), Word{});
        std::vector<bool> done(p.objects.size(), false);
        done[t->second] = true;
        std::deque<ObjectIx> queue{t->second};
        while (!queue.empty()) {
            const ObjectIx c = queue.front();
            queue.pop_front();
            for (std::size_t g = 0; g < gens.size(); ++g) {
                if (rw.gen_cod[g] != c || done[rw.gen_dom[g]]) continue;
                Word w = rw.canonical[c];
                w.push_back(g);
                done[rw.gen_dom[g]] = true;
                rw.canonical[rw.gen_dom[g]] = std::move(w);
                queue.push_back(rw.gen_dom[g]);
            }
        }
        for (ObjectIx o = 0; o < done.size(); ++o) {
            if (!done[o]) {
                throw InputError("object '" + p.objects[o] + "' has no arrow to the terminal");
            }
        }
    }

    // Breadth-first closure of the normal forms under post-composition.
    struct Arrow {
        ObjectIx dom, cod;
        Word word;
    };
    std::vector<Arrow> arrows;
    std::set<std::pair<ObjectIx, Word>> seen;
    std::deque<std::size_t> frontier;
    for (ObjectIx o = 0; o < p.objects.size(); ++o) {
        arrows.push_back({o, o, {}});
        seen.insert({o, {}});
        frontier.push_back(arrows.size() - 1);
    }
    auto reduce = [&](const Word& w, ObjectIx dom) {
        Word left = rw.normal_form(w, dom, true);
        Word right = rw.normal_form(w, dom, false);
        if (left != right) {
            throw ConstructionError("rewriting is not confluent: two normal forms for one word");
        }
        return left;
    };
    while (!frontier.empty()) {
        const Arrow a = arrows[frontier.front()];
        frontier.pop_front();
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (rw.gen_dom[g] != a.cod) continue;
            Word w{g};
            w.insert(w.end(), a.word.begin(), a.word.end());
            Word nf = reduce(w, a.dom);
            if (!seen.insert({a.dom, nf}).second) continue;
            if (nf.size() > max_word_length) {
                throw BudgetExceeded("hom-sets not stabilized within budget (" +
                                     std::to_string(max_word_length) + ")");
            }
            arrows.push_back({a.dom, rw.gen_cod[g], std::move(nf)});
            frontier.push_back(arrows.size() - 1);
        }
    }

    auto arrow_name = [&](const Arrow& a) {
        if (a.word.empty()) return "id_" + p.objects[a.dom];
        std::string s;
        for (std::size_t k = 0; k < a.word.size(); ++k) {
            if (k) s += '.';
            s += gens[a.word[k]].id;
        }
        return s;
    };
    std::map<std::pair<ObjectIx, Word>, std::string> name_of;
    std::vector<ArrowSpec> specs;
    std::map<std::string, std::string> ids;
    for (const auto& a : arrows) {
        auto name = arrow_name(a);
        name_of[{a.dom, a.word}] = name;
        specs.push_back({name, p.objects[a.dom], p.objects[a.cod]});
        if (a.word.empty()) ids[p.objects[a.dom]] = name;
    }
    std::vector<CompositionEntry> table;
    for (const auto& f : arrows) {
        for (const auto& g : arrows) {
            if (g.dom != f.cod) continue;
            Word w = g.word;
            w.insert(w.end(), f.word.begin(), f.word.end());
            auto it = name_of.find({f.dom, reduce(w, f.dom)});
            if (it == name_of.end()) {
                throw ConstructionError("composite of " + arrow_name(g) + " and " +
                                        arrow_name(f) + " is not among the normal forms");
            }
            table.push_back({arrow_name(g), arrow_name(f), it->second});
        }
    }
    auto cat = std::make_shared<const FinCategory>(p.objects, std::move(specs), ids, table);
    if (!validate_category(*cat).ok()) {
        throw ConstructionError("materialized table is not a category; the relations are not confluent");
    }
    return cat;
}

LimitSketch sketch_iso_forcing() {
    auto d = make_category({"a", "b"}, {{"t", "a", "b"}}, {});
    auto shape = terminal_category("*");
    LimitSketch s{d, {}};
    s.cones.push_back(make_cone("c", d, "a", shape, {{"*", "b"}}, {{"id_*", "id_b"}}, {{"*", "t"}}));
    return s;
}

LimitSketch sketch_binary_product() {
    auto d = make_category({"a", "p"}, {{"pi1", "p", "a"}, {"pi2", "p", "a"}}, {});
    auto shape = discrete_category({"1", "2"});
    LimitSketch s{d, {}};
    s.cones.push_back(make_cone("c", d, "p", shape, {{"1", "a"}, {"2", "a"}},
                                {{"id_1", "id_a"}, {"id_2", "id_a"}},
                                {{"1", "pi1"}, {"2", "pi2"}}));
    return s;
}

LimitSketch sketch_equalizer() {
    auto d = make_category({"a", "b", "q"},
                           {{"f", "a", "b"}, {"g", "a", "b"}, {"e", "q", "a"}, {"h", "q", "b"}},
                           {{"f", "e", "h"}, {"g", "e", "h"}});
    auto shape = free_category({"0", "1"}, {{"u", "0", "1"}, {"v", "0", "1"}});
    LimitSketch s{d, {}};
    s.cones.push_back(make_cone("c", d, "q", shape, {{"0", "a"}, {"1", "b"}},
                                {{"id_0", "id_a"}, {"id_1", "id_b"}, {"u", "f"}, {"v", "g"}},
                                {{"0", "e"}, {"1", "h"}}));
    return s;
}

LimitSketch sketch_two_cover_sheaf() {
    auto d = make_category({"T", "U", "V", "W"},
                           {{"rU", "T", "U"},
                            {"rV", "T", "V"},
                            {"rW", "T", "W"},
                            {"sU", "U", "W"},
                            {"sV", "V", "W"}},
                           {{"sU", "rU", "rW"}, {"sV", "rV", "rW"}});
    auto shape = free_category({"u", "v", "w"}, {{"i", "u", "w"}, {"j", "v", "w"}});
    LimitSketch s{d, {}};
    s.cones.push_back(make_cone("cover", d, "T", shape, {{"u", "U"}, {"v", "V"}, {"w", "W"}},
                                {{"id_u", "id_U"}, {"id_v", "id_V"}, {"id_w", "id_W"},
                                 {"i", "sU"}, {"j", "sV"}},
                                {{"u", "rU"}, {"v", "rV"}, {"w", "rW"}}));
    return s;
}

CategoryPresentation monoid_category_presentation() {
    CategoryPresentation p;
    p.objects = {"g0", "g1", "g2", "g3"};
    p.generators = {
        {"mu", "g2", "g1"},     {"eta", "g0", "g1"},    {"p1", "g2", "g1"},
        {"p2", "g2", "g1"},     {"p_1u2", "g3", "g1"},  {"p_12u", "g3", "g2"},
        {"p_2u1", "g3", "g1"},  {"p_21u", "g3", "g2"},  {"mu_up", "g3", "g2"},
        {"mu_lo", "g3", "g2"},  {"eta_up", "g1", "g2"}, {"eta_lo", "g1", "g2"},
        {"bang", "g1", "g0"},
    };
    // A triple (x, y, z) in g3: p_1u2 picks x, p_12u picks (y, z), p_2u1
    // picks z, p_21u picks (x, y). mu_up is x(yz), mu_lo is (xy)z.
    p.relations = {
        {{"p1", "mu_up"}, {"p_1u2"}},
        {{"p2", "mu_up"}, {"mu", "p_12u"}},
        {{"p1", "mu_lo"}, {"mu", "p_21u"}},
        {{"p2", "mu_lo"}, {"p_2u1"}},
        {{"mu", "mu_lo"}, {"mu", "mu_up"}},
        {{"p1", "eta_up"}, {}},
        {{"p2", "eta_up"}, {"eta", "bang"}},
        {{"p1", "eta_lo"}, {"eta", "bang"}},
        {{"p2", "eta_lo"}, {}},
        {{"mu", "eta_up"}, {}},
        {{"mu", "eta_lo"}, {}},
    };
    p.terminal = "g0";
    return p;
}

LimitSketch sketch_monoid_budgeted(std::size_t budget) {
    if (budget == 0) throw InputError("monoid builder needs a positive budget");
    auto d = materialize_category(monoid_category_presentation(), budget);
    auto empty = discrete_category({});
    auto two = discrete_category({"1", "2"});
    LimitSketch s{d, {}};
    s.cones.push_back(make_cone("unit", d, "g0", empty, {}, {}, {}));
    s.cones.push_back(make_cone("pair", d, "g2", two, {{"1", "g1"}, {"2", "g1"}},
                                {{"id_1", "id_g1"}, {"id_2", "id_g1"}},
                                {{"1", "p1"}, {"2", "p2"}}));
    s.cones.push_back(make_cone("triple_l", d, "g3", two, {{"1", "g2"}, {"2", "g1"}},
                                {{"id_1", "id_g2"}, {"id_2", "id_g1"}},
                                {{"1", "p_21u"}, {"2", "p_2u1"}}));
    s.cones.push_back(make_cone("triple_r", d, "g3", two, {{"1", "g1"}, {"2", "g2"}},
                                {{"id_1", "id_g1"}, {"id_2", "id_g2"}},
                                {{"1", "p_1u2"}, {"2", "p_12u"}}));
    return s;
}

LimitSketch sketch_disjoint_union(const LimitSketch& left, const std::string& left_prefix,
                                  const LimitSketch& right, const std::string& right_prefix) {
    std::vector<std::string> objects;
    std::vector<ArrowSpec> arrows;
    std::map<std::string, std::string> ids;
    std::vector<CompositionEntry> table;
    for (const auto* part : {&left, &right}) {
        const auto& pre = part == &left ? left_prefix : right_prefix;
        const auto& c = *part->base;
        for (const auto& o : c.objects()) objects.push_back(pre + o);
        for (const auto& a : c.arrow_specs()) arrows.push_back({pre + a.id, pre + a.dom, pre + a.cod});
        for (const auto& [o, a] : c.identity_specs()) ids[pre + o] = pre + a;
        for (const auto& e : c.composition_specs()) table.push_back({pre + e.g, pre + e.f, pre + e.gf});
    }
    auto d = std::make_shared<const FinCategory>(objects, arrows, ids, table);
    LimitSketch s{d, {}};
    for (const auto* part : {&left, &right}) {
        const auto& pre = part == &left ? left_prefix : right_prefix;
        const auto& c = *part->base;
        for (const auto& cone : part->cones) {
            std::vector<ObjectIx> om;
            std::vector<ArrowIx> am;
            for (ObjectIx z = 0; z < cone.shape().object_count(); ++z) {
                om.push_back(d->object_index(pre + c.object_name(cone.diagram.on_object(z))));
            }
            for (ArrowIx t = 0; t < cone.shape().arrow_count(); ++t) {
                am.push_back(d->arrow_index(pre + c.arrow_name(cone.diagram.on_arrow(t))));
            }
            std::vector<ArrowIx> legs;
            for (ArrowIx l : cone.legs) legs.push_back(d->arrow_index(pre + c.arrow_name(l)));
            s.cones.push_back(Cone{pre + cone.name,
                                   d->object_index(pre + c.object_name(cone.peak)),
                                   CatFunctor(cone.diagram.source_ptr(), d, om, am),
                                   std::move(legs)});
        }
    }
    return s;
}

std::vector<std::string> builder_names() {
    return {"binary_product", "equalizer", "iso_forcing", "monoid", "two_cover_sheaf"};
}

LimitSketch build_sketch(const std::string& name) {
    if (name == "iso_forcing") return sketch_iso_forcing();
    if (name == "binary_product") return sketch_binary_product();
    if (name == "equalizer") return sketch_equalizer();
    if (name == "two_cover_sheaf") return sketch_two_cover_sheaf();
    if (name == "monoid") return sketch_monoid_budgeted(8);
    throw InputError("unknown builder '" + name + "'");
}

}  // namespace limsketch
