#include "limsketch/elim.hpp"

#include "limsketch/error.hpp"

namespace limsketch {

std::string to_string(ElimMode m) { return m == ElimMode::faithful ? "faithful" : "pruned"; }

ElimMode parse_elim_mode(const std::string& s) {
    if (s == "faithful") return ElimMode::faithful;
    if (s == "pruned") return ElimMode::pruned;
    throw InputError("unknown mode '" + s + "' (expected faithful or pruned)");
}

std::string tagged_element_name(const std::string& tag, const Cone& c, const FinCategory& base,
                                ArrowIx t, const std::vector<std::string>& components) {
    std::string s = tag + "(" + c.name + "," + base.arrow_name(t) + ",[";
    for (std::size_t k = 0; k < components.size(); ++k) {
        if (k) s += ',';
        s += components[k];
    }
    return s + "])";
}

std::vector<GapMap> stage_gaps(const SetPresentation& s, const LimitSketch& k, std::size_t stage,
                               const ElimOptions& opts) {
    std::vector<GapMap> out;
    out.reserve(k.cones.size());
    for (const auto& c : k.cones) {
        LimitOptions lo{opts.max_tuples, "cone " + c.name + " at stage " + std::to_string(stage)};
        out.push_back(gap_map(s, c, lo));
    }
    return out;
}

ElimStage initial_stage(const SetPresentation& x, const LimitSketch& k) {
    if (!(x.base() == *k.base)) throw InputError("presentation is not over the sketch category");
    ElimStage s;
    s.index = 0;
    s.B = x;
    s.E = empty_presentation(x.base_ptr());
    s.S = x;
    const auto n = x.base().object_count();
    s.free.resize(n);
    s.redundant.resize(n);
    s.core.resize(n);
    for (ObjectIx o = 0; o < n; ++o) {
        for (Elem e = 0; e < x.size(o); ++e) s.core[o].push_back(e);
    }
    return s;
}

PairList relation_one(const ElimStage& s, const LimitSketch& k) {
    const auto& base = *k.base;
    PairList pairs(base.object_count());
    // A stage that has not been stepped yet carries no gap maps.
    const auto gaps = s.gaps.empty() ? stage_gaps(s.S, k, s.index, ElimOptions{}) : s.gaps;
    for (std::size_t ci = 0; ci < k.cones.size(); ++ci) {
        const auto& c = k.cones[ci];
        const auto& gap = gaps.at(ci);
        const std::size_t lim = gap.limit.size();
        const std::vector<Elem> image(gap.image.begin(), gap.image.end());
        for (ObjectIx d = 0; d < base.object_count(); ++d) {
            for (ArrowIx t : base.hom(c.peak, d)) {
                const auto part = pushout_classes(image, lim, s.S.action(t), s.S.size(d));
                std::vector<std::optional<Elem>> first(part.class_count);
                for (Elem x = 0; x < s.S.size(d); ++x) {
                    auto& f = first[part.class_of[lim + x]];
                    if (f) {
                        pairs[d].emplace_back(*f, x);
                    } else {
                        f = x;
                    }
                }
            }
        }
    }
    return pairs;
}

PairList relation_two(const ElimStage& prev, const ElimStage& s, const LimitSketch& k) {
    const auto& base = *k.base;
    PairList pairs(base.object_count());
    if (!prev.p) throw ConstructionError("rule 2 needs the previous quotient map");
    for (std::size_t ci = 0; ci < k.cones.size(); ++ci) {
        const auto& c = k.cones[ci];
        const auto& lim = prev.gaps.at(ci).limit;
        const auto& unit = prev.kan_unit.at(ci);
        for (ObjectIx z = 0; z < c.shape().object_count(); ++z) {
            const ObjectIx dz = c.diagram.on_object(z);
            for (ObjectIx d = 0; d < base.object_count(); ++d) {
                for (ArrowIx t : base.hom(dz, d)) {
                    const ArrowIx tl = base.compose_checked(t, c.legs[z]);
                    for (std::size_t w = 0; w < lim.size(); ++w) {
                        if (!unit[w]) continue;
                        const Elem free = s.E.apply(tl, *unit[w]);
                        const Elem b = prev.p->projection(d, prev.S.apply(t, lim.tuples[w][z]));
                        pairs[d].emplace_back(s.e_offset(d) + free, b);
                    }
                }
            }
        }
    }
    return pairs;
}

ElimStage elim_stage(ElimStage& s, const ElimStage* prev, const LimitSketch& k,
                     const ElimOptions& opts) {
    const auto& base = *k.base;
    const std::size_t n_obj = base.object_count();
    const std::size_t next_index = s.index + 1;
    if (s.gaps.empty()) s.gaps = stage_gaps(s.S, k, s.index, opts);

    PairList pairs = relation_one(s, k);
    for (const auto& v : pairs) s.rule1_pairs += v.size();
    if (s.index >= 1) {
        if (!prev) throw ConstructionError("rule 2 needs the previous stage");
        PairList two = relation_two(*prev, s, k);
        for (ObjectIx o = 0; o < n_obj; ++o) {
            s.rule2_pairs += two[o].size();
            pairs[o].insert(pairs[o].end(), two[o].begin(), two[o].end());
        }
    }
    s.p = functorial_quotient(s.S, pairs);

    ElimStage next;
    next.index = next_index;
    next.B = s.p->target;

    // A tuple is redundant once its image is already hit by the new base.
    std::vector<std::vector<bool>> tuple_redundant(k.cones.size());
    for (std::size_t ci = 0; ci < k.cones.size(); ++ci) {
        const auto& c = k.cones[ci];
        LimitOptions lo{opts.max_tuples,
                        "cone " + c.name + " at stage " + std::to_string(next_index)};
        const GapMap gb = gap_map(next.B, c, lo);
        std::vector<bool> hit(gb.limit.size(), false);
        for (auto v : gb.image) hit[v] = true;
        const auto& lim = s.gaps[ci].limit;
        tuple_redundant[ci].resize(lim.size());
        LimitTuple image(c.legs.size());
        for (std::size_t w = 0; w < lim.size(); ++w) {
            for (ObjectIx z = 0; z < image.size(); ++z) {
                image[z] = s.p->projection(c.diagram.on_object(z), lim.tuples[w][z]);
            }
            auto idx = gb.limit.find(image);
            if (!idx) throw ConstructionError("projected tuple is not compatible");
            tuple_redundant[ci][w] = hit[*idx];
        }
    }

    // Count first so an oversized stage fails before anything is built.
    std::vector<std::uint64_t> e_count(n_obj, 0);
    for (std::size_t ci = 0; ci < k.cones.size(); ++ci) {
        std::uint64_t kept = 0;
        for (bool r : tuple_redundant[ci]) {
            if (!r || opts.mode == ElimMode::faithful) ++kept;
        }
        for (ObjectIx d = 0; d < n_obj; ++d) {
            e_count[d] += kept * base.hom(k.cones[ci].peak, d).size();
        }
    }
    for (ObjectIx d = 0; d < n_obj; ++d) {
        if (e_count[d] + next.B.size(d) > opts.max_elements) {
            throw BudgetExceeded("stage " + std::to_string(next_index) + " exceeds the element cap (" +
                                 std::to_string(opts.max_elements) + ") at object " +
                                 base.object_name(d));
        }
    }

    std::vector<std::vector<std::string>> names(n_obj);
    next.free.resize(n_obj);
    next.redundant.resize(n_obj);
    // index[cone][t][w]: position in E(cod t), or -1 when pruned.
    std::vector<std::vector<std::vector<std::int64_t>>> index(k.cones.size());
    for (std::size_t ci = 0; ci < k.cones.size(); ++ci) {
        const auto& c = k.cones[ci];
        const auto& lim = s.gaps[ci].limit;
        index[ci].resize(base.arrow_count());
        for (ObjectIx d = 0; d < n_obj; ++d) {
            for (ArrowIx t : base.hom(c.peak, d)) {
                auto& slot = index[ci][t];
                slot.assign(lim.size(), -1);
                for (std::size_t w = 0; w < lim.size(); ++w) {
                    const bool red = tuple_redundant[ci][w];
                    if (red && opts.mode == ElimMode::pruned) continue;
                    std::vector<std::string> comps;
                    comps.reserve(lim.tuples[w].size());
                    for (ObjectIx z = 0; z < lim.tuples[w].size(); ++z) {
                        comps.push_back(s.S.name(c.diagram.on_object(z), lim.tuples[w][z]));
                    }
                    slot[w] = static_cast<std::int64_t>(names[d].size());
                    names[d].push_back(tagged_element_name("F" + std::to_string(next_index), c, base, t, comps));
                    next.free[d].push_back({ci, t, w});
                    next.redundant[d].push_back(red);
                }
            }
        }
    }
    std::vector<std::vector<Elem>> actions(base.arrow_count());
    for (ArrowIx u = 0; u < base.arrow_count(); ++u) {
        for (const auto& fe : next.free[base.dom(u)]) {
            const ArrowIx ut = base.compose_checked(u, fe.arrow);
            actions[u].push_back(static_cast<Elem>(index[fe.cone][ut][fe.tuple]));
        }
    }
    next.E = SetPresentation(k.base, std::move(names), std::move(actions));

    s.kan_unit.assign(k.cones.size(), {});
    for (std::size_t ci = 0; ci < k.cones.size(); ++ci) {
        const auto& slot = index[ci][base.identity(k.cones[ci].peak)];
        for (auto v : slot) {
            s.kan_unit[ci].push_back(v < 0 ? std::nullopt : std::optional<Elem>(static_cast<Elem>(v)));
        }
    }

    next.S = disjoint_sum(next.B, next.E, SumNaming{"", ""}).sum;

    next.core.resize(n_obj);
    for (ObjectIx o = 0; o < n_obj; ++o) {
        const auto& classes = s.p->classes[o];
        for (Elem cls = 0; cls < classes.size(); ++cls) {
            for (Elem m : classes[cls]) {
                const bool from_base = m < s.e_offset(o);
                if (from_base || !s.redundant[o][m - s.e_offset(o)]) {
                    next.core[o].push_back(cls);
                    break;
                }
            }
        }
    }
    return next;
}

namespace {

bool injective_on_core(const ElimStage& prev, const ElimStage& next) {
    for (ObjectIx o = 0; o < prev.core.size(); ++o) {
        std::vector<bool> hit(next.B.size(o), false);
        for (Elem e : prev.core[o]) {
            const Elem v = prev.p->projection(o, e);
            if (hit[v]) return false;
            hit[v] = true;
        }
    }
    return true;
}

}  // namespace

ElimTrace reflect_elim(const SetPresentation& x, const LimitSketch& k, const ElimOptions& opts) {
    ElimTrace trace;
    trace.mode = opts.mode;
    trace.stages.push_back(initial_stage(x, k));
    const LimitOptions lo{opts.max_tuples, {}};

    std::optional<std::size_t> found;
    if (is_model(x, k, lo).is_model()) found = 0;
    for (std::size_t step = 0; step < opts.budget; ++step) {
        if (found && opts.stop_at_convergence) break;
        auto& cur = trace.stages.back();
        const ElimStage* prev = trace.stages.size() >= 2 ? &trace.stages[trace.stages.size() - 2] : nullptr;
        ElimStage next = elim_stage(cur, prev, k, opts);
        if (!found && injective_on_core(cur, next) &&
            is_model(subpresentation(next.B, next.core), k, lo).is_model()) {
            found = next.index;
        }
        trace.stages.push_back(std::move(next));
    }

    trace.converged = found.has_value();
    trace.converged_at = found.value_or(0);
    trace.core_stage = found.value_or(trace.stages.size() - 1);
    const auto& final_stage = trace.stages[trace.core_stage];
    trace.core = subpresentation(final_stage.B, final_stage.core);

    // rho: follow each element of X through the quotients, then into the core.
    NatTrans rho = identity_nat(x);
    for (std::size_t i = 0; i < trace.core_stage; ++i) {
        rho = compose_nat(trace.stages[i].p->projection, rho);
    }
    for (ObjectIx o = 0; o < rho.components.size(); ++o) {
        std::vector<std::int64_t> pos(final_stage.B.size(o), -1);
        for (Elem kx = 0; kx < final_stage.core[o].size(); ++kx) pos[final_stage.core[o][kx]] = kx;
        for (auto& v : rho.components[o]) {
            if (pos[v] < 0) throw ConstructionError("reflection leaves the core");
            v = static_cast<Elem>(pos[v]);
        }
    }
    trace.rho = std::move(rho);
    return trace;
}

}  // namespace limsketch
