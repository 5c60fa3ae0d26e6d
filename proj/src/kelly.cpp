#include "limsketch/kelly.hpp"

#include "limsketch/elim.hpp"
#include "limsketch/error.hpp"

namespace limsketch {

namespace {

void check_cap(const std::vector<std::vector<std::string>>& names, const FinCategory& base,
               const KellyOptions& opts, const std::string& what) {
    for (ObjectIx o = 0; o < names.size(); ++o) {
        if (names[o].size() > opts.max_elements) {
            throw BudgetExceeded(what + " exceeds the element cap (" +
                                 std::to_string(opts.max_elements) + ") at object " +
                                 base.object_name(o));
        }
    }
}

}  // namespace

KellySum kelly_sum(const SetPresentation& x, const Cone& c, const std::string& tag,
                   const KellyOptions& opts) {
    const auto& base = x.base();
    const std::size_t n_obj = base.object_count();
    KellySum out;
    out.gap = gap_map(x, c, LimitOptions{opts.max_tuples, "cone " + c.name});
    const auto& lim = out.gap.limit;

    std::uint64_t per_arrow = lim.size();
    for (ObjectIx d = 0; d < n_obj; ++d) {
        if (x.size(d) + per_arrow * base.hom(c.peak, d).size() > opts.max_elements) {
            throw BudgetExceeded("sum for cone " + c.name + " exceeds the element cap (" +
                                 std::to_string(opts.max_elements) + ") at object " +
                                 base.object_name(d));
        }
    }

    std::vector<std::vector<std::string>> names(n_obj);
    for (ObjectIx d = 0; d < n_obj; ++d) names[d] = x.carrier(d);
    out.summand.resize(base.arrow_count());
    struct Origin {
        ArrowIx t;
        std::size_t w;
    };
    std::vector<std::vector<Origin>> origin(n_obj);
    for (ObjectIx d = 0; d < n_obj; ++d) {
        for (ArrowIx t : base.hom(c.peak, d)) {
            for (std::size_t w = 0; w < lim.size(); ++w) {
                std::vector<std::string> comps;
                for (ObjectIx z = 0; z < lim.tuples[w].size(); ++z) {
                    comps.push_back(x.name(c.diagram.on_object(z), lim.tuples[w][z]));
                }
                out.summand[t].push_back(static_cast<Elem>(names[d].size()));
                names[d].push_back(tagged_element_name(tag, c, base, t, comps));
                origin[d].push_back({t, w});
            }
        }
    }
    std::vector<std::vector<Elem>> actions(base.arrow_count());
    for (ArrowIx u = 0; u < base.arrow_count(); ++u) {
        actions[u] = x.action(u);
        for (const auto& [t, w] : origin[base.dom(u)]) {
            actions[u].push_back(out.summand[base.compose_checked(u, t)][w]);
        }
    }
    out.sum = SetPresentation(x.base_ptr(), std::move(names), std::move(actions));

    out.r0.resize(n_obj);
    out.r1.resize(n_obj);
    for (ObjectIx d = 0; d < n_obj; ++d) {
        for (ArrowIx t : base.hom(c.peak, d)) {
            for (Elem a = 0; a < x.size(c.peak); ++a) {
                out.r0[d].emplace_back(out.summand[t][out.gap.image[a]], x.apply(t, a));
            }
        }
    }
    for (ObjectIx z = 0; z < c.shape().object_count(); ++z) {
        const ObjectIx dz = c.diagram.on_object(z);
        for (ObjectIx d = 0; d < n_obj; ++d) {
            for (ArrowIx t : base.hom(dz, d)) {
                const ArrowIx tl = base.compose_checked(t, c.legs[z]);
                for (std::size_t w = 0; w < lim.size(); ++w) {
                    out.r1[d].emplace_back(out.summand[tl][w], x.apply(t, lim.tuples[w][z]));
                }
            }
        }
    }
    return out;
}

KellyPc kelly_Pc(const SetPresentation& x, const Cone& c, const std::string& tag,
                 const KellyOptions& opts) {
    KellyPc out;
    out.sum = kelly_sum(x, c, tag, opts);
    PairList pairs = out.sum.r0;
    for (ObjectIx d = 0; d < pairs.size(); ++d) {
        pairs[d].insert(pairs[d].end(), out.sum.r1[d].begin(), out.sum.r1[d].end());
    }
    out.quotient = functorial_quotient(out.sum.sum, pairs);
    out.unit.components.resize(x.base().object_count());
    for (ObjectIx d = 0; d < out.unit.components.size(); ++d) {
        for (Elem e = 0; e < x.size(d); ++e) {
            out.unit.components[d].push_back(out.quotient.projection(d, e));
        }
    }
    return out;
}

KellyStep kelly_P(const SetPresentation& x, const LimitSketch& k, const std::string& tag,
                  const KellyOptions& opts) {
    const auto& base = x.base();
    const std::size_t n_obj = base.object_count();
    KellyStep out;
    for (const auto& c : k.cones) out.parts.push_back(kelly_Pc(x, c, tag, opts));

    if (out.parts.empty()) {
        out.result = x;
        out.unit = identity_nat(x);
        return out;
    }
    if (out.parts.size() == 1) {
        out.result = out.parts[0].result();
        out.unit = out.parts[0].unit;
        out.inject.push_back(identity_nat(out.result));
        return out;
    }

    // Tagged sum of all P_c(X), then glue the copies of X together.
    std::vector<std::vector<std::string>> names(n_obj);
    std::vector<std::vector<Elem>> offset(out.parts.size(), std::vector<Elem>(n_obj, 0));
    for (std::size_t ci = 0; ci < out.parts.size(); ++ci) {
        const auto& pc = out.parts[ci].result();
        for (ObjectIx d = 0; d < n_obj; ++d) {
            offset[ci][d] = static_cast<Elem>(names[d].size());
            for (const auto& nm : pc.carrier(d)) names[d].push_back(std::to_string(ci) + "|" + nm);
        }
    }
    check_cap(names, base, opts, "wide pushout");
    std::vector<std::vector<Elem>> actions(base.arrow_count());
    for (ArrowIx u = 0; u < base.arrow_count(); ++u) {
        const ObjectIx e = base.cod(u);
        for (std::size_t ci = 0; ci < out.parts.size(); ++ci) {
            for (Elem v : out.parts[ci].result().action(u)) actions[u].push_back(offset[ci][e] + v);
        }
    }
    const SetPresentation wide(x.base_ptr(), std::move(names), std::move(actions));
    PairList pairs(n_obj);
    for (ObjectIx d = 0; d < n_obj; ++d) {
        for (Elem e = 0; e < x.size(d); ++e) {
            const Elem first = offset[0][d] + out.parts[0].unit(d, e);
            for (std::size_t ci = 1; ci < out.parts.size(); ++ci) {
                pairs[d].emplace_back(first, offset[ci][d] + out.parts[ci].unit(d, e));
            }
        }
    }
    QuotientMap q = functorial_quotient(wide, pairs);

    std::vector<std::vector<std::string>> stripped(n_obj);
    for (ObjectIx d = 0; d < n_obj; ++d) {
        for (const auto& nm : q.target.carrier(d)) stripped[d].push_back(nm.substr(nm.find('|') + 1));
    }
    out.result = rename_elements(q.target, stripped);
    for (std::size_t ci = 0; ci < out.parts.size(); ++ci) {
        NatTrans j;
        j.components.resize(n_obj);
        for (ObjectIx d = 0; d < n_obj; ++d) {
            for (Elem e = 0; e < out.parts[ci].result().size(d); ++e) {
                j.components[d].push_back(q.projection(d, offset[ci][d] + e));
            }
        }
        out.inject.push_back(std::move(j));
    }
    out.unit = compose_nat(out.inject[0], out.parts[0].unit);
    return out;
}

const SetPresentation& KellyTrace::result() const {
    return converged ? objects.at(converged_at) : objects.back();
}

namespace {

std::string stage_tag(std::size_t n) { return "K" + std::to_string(n + 1); }

}  // namespace

KellyTrace kelly_sequence(const SetPresentation& x, const LimitSketch& k, std::size_t n,
                          const KellyOptions& opts) {
    KellyTrace trace;
    trace.objects.push_back(x);
    trace.rho = identity_nat(x);
    for (std::size_t i = 0; i < n; ++i) {
        trace.steps.push_back(kelly_P(trace.objects.back(), k, stage_tag(i), opts));
        trace.objects.push_back(trace.steps.back().result);
        trace.rho = compose_nat(trace.steps.back().unit, trace.rho);
    }
    return trace;
}

KellyTrace reflect_kelly(const SetPresentation& x, const LimitSketch& k, const KellyOptions& opts) {
    if (!(x.base() == *k.base)) throw InputError("presentation is not over the sketch category");
    KellyTrace trace;
    trace.objects.push_back(x);
    const LimitOptions lo{opts.max_tuples, {}};
    auto ensure_step = [&](std::size_t n) {
        if (trace.steps.size() > n) return;
        trace.steps.push_back(kelly_P(trace.objects[n], k, stage_tag(n), opts));
        trace.objects.push_back(trace.steps.back().result);
    };
    std::size_t n = 0;
    for (;;) {
        if (is_model(trace.objects[n], k, lo).is_model()) {
            ensure_step(n);
            if (is_bijective(trace.steps[n].unit, trace.objects[n + 1])) {
                trace.converged = true;
                trace.converged_at = n;
                break;
            }
        }
        if (n == opts.budget) break;
        ensure_step(n);
        ++n;
    }
    const std::size_t last = trace.converged ? trace.converged_at : trace.objects.size() - 1;
    trace.rho = identity_nat(x);
    for (std::size_t i = 0; i < last; ++i) trace.rho = compose_nat(trace.steps[i].unit, trace.rho);
    return trace;
}

}  // namespace limsketch
