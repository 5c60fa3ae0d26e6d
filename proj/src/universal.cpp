#include "limsketch/universal.hpp"

#include <limits>

#include "limsketch/error.hpp"

namespace limsketch {

std::string to_string(Uniqueness u) {
    switch (u) {
        case Uniqueness::unique: return "unique";
        case Uniqueness::counterexample: return "counterexample";
        case Uniqueness::none: return "none";
        case Uniqueness::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

constexpr std::size_t kLogLimit = 64;

// Inverse gap maps of a model, per cone.
struct ModelInverse {
    std::vector<GapMap> gaps;
    std::vector<std::vector<Elem>> inverse;  // per cone: limit index -> peak element

    ModelInverse(const SetPresentation& m, const LimitSketch& k, const LimitOptions& opts) {
        const auto report = is_model(m, k, opts);
        for (std::size_t ci = 0; ci < report.cones.size(); ++ci) {
            const auto& v = report.cones[ci];
            if (v.injective && v.surjective) continue;
            std::string why = v.injective ? "gap map not surjective" : "gap map not injective";
            throw PreconditionError("codomain is not a model: cone " + v.cone + ", " + why);
        }
        for (const auto& c : k.cones) {
            gaps.push_back(gap_map(m, c, opts));
            std::vector<Elem> inv(gaps.back().limit.size(), 0);
            for (Elem e = 0; e < gaps.back().image.size(); ++e) inv[gaps.back().image[e]] = e;
            inverse.push_back(std::move(inv));
        }
    }

    // The peak element of M over a tuple of M elements, then moved along t.
    Elem value(std::size_t ci, const LimitTuple& tuple, ArrowIx t, const SetPresentation& m) const {
        auto idx = gaps[ci].limit.find(tuple);
        if (!idx) throw ConstructionError("image tuple is not compatible in the codomain");
        return m.apply(t, inverse[ci][*idx]);
    }
};

void check_source(const SetPresentation& x, const NatTrans& f, const SetPresentation& m) {
    if (!(x.base() == m.base())) throw InputError("map codomain is over a different category");
    const auto report = validate_nat_trans(x, m, f);
    if (!report.ok()) throw InputError("map is not a natural transformation: " + report.violations[0].message);
}

void finish(FactorisationResult& out, const SetPresentation& core, const NatTrans& rho,
            const NatTrans& f, const SetPresentation& m) {
    out.natural = validate_nat_trans(core, m, out.g).ok();
    out.commutes = compose_nat(out.g, rho) == f;
    if (!out.natural) throw ConstructionError("constructed factorisation is not natural");
    if (!out.commutes) throw ConstructionError("constructed factorisation does not commute with rho");
}

void note(FactorisationResult& out, const std::string& line) {
    ++out.free_resolved;
    if (out.log.size() < kLogLimit) out.log.push_back(line);
}

}  // namespace

FactorisationResult solve_factorisation(const ElimTrace& trace, const NatTrans& f,
                                        const SetPresentation& m, const LimitSketch& k,
                                        const LimitOptions& opts) {
    if (!trace.converged) throw PreconditionError("reflection trace did not converge");
    const auto& x = trace.stages.at(0).B;
    check_source(x, f, m);
    const ModelInverse inv(m, k, opts);
    const auto& base = *k.base;
    const std::size_t n_obj = base.object_count();

    FactorisationResult out;
    NatTrans g = f;  // on S_0 = X
    for (std::size_t i = 0; i < trace.core_stage; ++i) {
        const auto& cur = trace.stages[i];
        const auto& next = trace.stages[i + 1];
        NatTrans h;
        h.components.resize(n_obj);
        for (ObjectIx o = 0; o < n_obj; ++o) {
            for (const auto& members : cur.p->classes[o]) {
                const Elem v = g(o, members[0]);
                for (Elem mbr : members) {
                    if (g(o, mbr) != v) {
                        throw ConstructionError("class image conflict at " + base.object_name(o) +
                                                ": '" + cur.S.name(o, members[0]) + "' and '" +
                                                cur.S.name(o, mbr) + "' have different images");
                    }
                }
                h.components[o].push_back(v);
            }
            for (Elem e = 0; e < next.free[o].size(); ++e) {
                const auto& fe = next.free[o][e];
                const auto& c = k.cones[fe.cone];
                const auto& w = cur.gaps[fe.cone].limit.tuples[fe.tuple];
                LimitTuple image(w.size());
                for (ObjectIx z = 0; z < w.size(); ++z) image[z] = g(c.diagram.on_object(z), w[z]);
                const Elem val = inv.value(fe.cone, image, fe.arrow, m);
                h.components[o].push_back(val);
                note(out, next.E.name(o, e) + " -> " + m.name(o, val));
            }
        }
        g = std::move(h);
    }
    const auto& last = trace.stages[trace.core_stage];
    out.g.components.resize(n_obj);
    for (ObjectIx o = 0; o < n_obj; ++o) {
        for (Elem b : last.core[o]) out.g.components[o].push_back(g(o, b));
    }
    finish(out, trace.core, trace.rho, f, m);
    return out;
}

FactorisationResult solve_factorisation(const KellyTrace& trace, const NatTrans& f,
                                        const SetPresentation& m, const LimitSketch& k,
                                        const LimitOptions& opts) {
    if (!trace.converged) throw PreconditionError("Kelly trace did not converge");
    const auto& x = trace.objects.at(0);
    check_source(x, f, m);
    const ModelInverse inv(m, k, opts);
    const auto& base = *k.base;
    const std::size_t n_obj = base.object_count();

    FactorisationResult out;
    NatTrans g = f;
    for (std::size_t n = 0; n < trace.converged_at; ++n) {
        const auto& cur = trace.objects[n];
        const auto& step = trace.steps[n];
        const auto& next = trace.objects[n + 1];
        if (step.parts.empty()) continue;  // no cones: P is the identity
        std::vector<std::vector<std::optional<Elem>>> value(n_obj);
        for (ObjectIx o = 0; o < n_obj; ++o) value[o].resize(next.size(o));
        auto assign = [&](ObjectIx o, Elem target, Elem v, const std::string& from) {
            auto& slot = value[o][target];
            if (slot && *slot != v) {
                throw ConstructionError("class image conflict at " + base.object_name(o) + " on '" +
                                        next.name(o, target) + "' (via '" + from + "')");
            }
            slot = v;
        };
        for (std::size_t ci = 0; ci < step.parts.size(); ++ci) {
            const auto& part = step.parts[ci];
            const auto& c = k.cones[ci];
            const auto& lim = part.sum.gap.limit;
            auto to_next = [&](ObjectIx o, Elem s) {
                const Elem pc = part.quotient.projection(o, s);
                return step.inject.empty() ? pc : step.inject[ci](o, pc);
            };
            for (ObjectIx o = 0; o < n_obj; ++o) {
                for (Elem e = 0; e < cur.size(o); ++e) assign(o, to_next(o, e), g(o, e), cur.name(o, e));
                for (ArrowIx t : base.hom(c.peak, o)) {
                    for (std::size_t w = 0; w < lim.size(); ++w) {
                        LimitTuple image(lim.tuples[w].size());
                        for (ObjectIx z = 0; z < image.size(); ++z) {
                            image[z] = g(c.diagram.on_object(z), lim.tuples[w][z]);
                        }
                        const Elem val = inv.value(ci, image, t, m);
                        const Elem s = part.sum.summand[t][w];
                        assign(o, to_next(o, s), val, part.sum.sum.name(o, s));
                        note(out, part.sum.sum.name(o, s) + " -> " + m.name(o, val));
                    }
                }
            }
        }
        NatTrans h;
        h.components.resize(n_obj);
        for (ObjectIx o = 0; o < n_obj; ++o) {
            for (Elem e = 0; e < next.size(o); ++e) {
                if (!value[o][e]) {
                    throw ConstructionError("element '" + next.name(o, e) + "' has no preimage");
                }
                h.components[o].push_back(*value[o][e]);
            }
        }
        g = std::move(h);
    }
    out.g = std::move(g);
    finish(out, trace.result(), trace.rho, f, m);
    return out;
}

EnumerationResult enumerate_nat_trans(const SetPresentation& y, const SetPresentation& m,
                                      std::uint64_t cap,
                                      const std::function<bool(const NatTrans&)>& filter,
                                      std::size_t stop_after) {
    if (!(y.base() == m.base())) throw InputError("enumeration over different categories");
    const auto& base = y.base();
    const std::size_t n_obj = base.object_count();
    EnumerationResult out;

    std::uint64_t space = 1;
    for (ObjectIx o = 0; o < n_obj && space != 0; ++o) {
        const std::uint64_t b = m.size(o);
        for (std::size_t r = 0; r < y.size(o); ++r) {
            if (b == 0) {
                space = 0;
                break;
            }
            if (space > std::numeric_limits<std::uint64_t>::max() / b) {
                space = std::numeric_limits<std::uint64_t>::max();
            } else {
                space *= b;
            }
        }
    }
    out.search_space = space;
    if (space > cap) {
        out.conclusive = false;
        return out;
    }
    if (space == 0) return out;

    // Positions in object-major order; each naturality equation is checked
    // at the later of its two positions.
    std::vector<std::size_t> offset(n_obj + 1, 0);
    for (ObjectIx o = 0; o < n_obj; ++o) offset[o + 1] = offset[o] + y.size(o);
    const std::size_t total = offset[n_obj];
    std::vector<ObjectIx> obj_at(total);
    for (ObjectIx o = 0; o < n_obj; ++o) {
        for (std::size_t p = offset[o]; p < offset[o + 1]; ++p) obj_at[p] = o;
    }
    struct Check {
        ArrowIx arrow;
        std::size_t from;
        std::size_t to;
    };
    std::vector<std::vector<Check>> checks(total);
    for (ArrowIx a = 0; a < base.arrow_count(); ++a) {
        if (base.is_identity(a)) continue;
        const auto d = base.dom(a);
        const auto e = base.cod(a);
        for (Elem x = 0; x < y.size(d); ++x) {
            const std::size_t from = offset[d] + x;
            const std::size_t to = offset[e] + y.apply(a, x);
            checks[std::max(from, to)].push_back({a, from, to});
        }
    }

    std::vector<Elem> value(total, 0);
    auto build = [&] {
        NatTrans t;
        t.components.resize(n_obj);
        for (ObjectIx o = 0; o < n_obj; ++o) {
            t.components[o].assign(value.begin() + static_cast<std::ptrdiff_t>(offset[o]),
                                   value.begin() + static_cast<std::ptrdiff_t>(offset[o + 1]));
        }
        return t;
    };
    std::function<bool(std::size_t)> descend = [&](std::size_t p) {
        if (p == total) {
            NatTrans t = build();
            if (!filter || filter(t)) out.found.push_back(std::move(t));
            return out.found.size() < stop_after;
        }
        const ObjectIx o = obj_at[p];
        for (Elem v = 0; v < m.size(o); ++v) {
            value[p] = v;
            bool ok = true;
            for (const auto& c : checks[p]) {
                if (m.apply(c.arrow, value[c.from]) != value[c.to]) {
                    ok = false;
                    break;
                }
            }
            if (ok && !descend(p + 1)) return false;
        }
        return true;
    };
    descend(0);
    return out;
}

UniquenessVerdict check_uniqueness(const SetPresentation& core, const NatTrans& rho,
                                   const NatTrans& f, const SetPresentation& m, std::uint64_t cap) {
    auto commutes = [&](const NatTrans& g) { return compose_nat(g, rho) == f; };
    auto res = enumerate_nat_trans(core, m, cap, commutes, 2);
    UniquenessVerdict v;
    v.search_space = res.search_space;
    if (!res.conclusive) {
        v.verdict = Uniqueness::inconclusive;
        return v;
    }
    v.witnesses = std::move(res.found);
    if (v.witnesses.empty()) {
        v.verdict = Uniqueness::none;
    } else if (v.witnesses.size() == 1) {
        v.verdict = Uniqueness::unique;
    } else {
        v.verdict = Uniqueness::counterexample;
    }
    return v;
}

UniquenessVerdict check_uniqueness(const ElimTrace& trace, const NatTrans& f,
                                   const SetPresentation& m, std::uint64_t cap) {
    return check_uniqueness(trace.core, trace.rho, f, m, cap);
}

}  // namespace limsketch
