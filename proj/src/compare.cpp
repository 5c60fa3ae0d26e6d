#include "limsketch/compare.hpp"

#include <algorithm>

#include "limsketch/error.hpp"
#include "limsketch/universal.hpp"

namespace limsketch {

bool AlphaTrace::ok() const {
    if (!alpha0_identity) return false;
    for (const auto& s : naturality) {
        if (!s.ok) return false;
    }
    for (const auto& s : commutation) {
        if (!s.ok) return false;
    }
    return true;
}

namespace {

SquareCheck naturality_check(const SetPresentation& s, const SetPresentation& p, const NatTrans& a) {
    const auto report = validate_nat_trans(s, p, a);
    if (report.ok()) return {};
    return {false, report.violations[0].message};
}

}  // namespace

AlphaTrace build_alpha(const ElimTrace& elim, const KellyTrace& kelly, const LimitSketch& k,
                       std::size_t max_stage) {
    if (elim.mode != ElimMode::faithful) {
        throw PreconditionError("alpha comparison needs a faithful elimination trace");
    }
    const auto& base = *k.base;
    const std::size_t n_obj = base.object_count();
    const std::size_t last =
        std::min({max_stage, elim.stages.size() - 1, kelly.objects.size() - 1});

    AlphaTrace out;
    out.alpha.push_back(identity_nat(elim.stages[0].S));
    out.alpha0_identity = elim.stages[0].S == kelly.objects[0];
    out.naturality.push_back(naturality_check(elim.stages[0].S, kelly.objects[0], out.alpha[0]));

    for (std::size_t i = 0; i < last; ++i) {
        const auto& cur = elim.stages[i];
        const auto& next = elim.stages[i + 1];
        const auto& step = kelly.steps[i];
        const auto& a = out.alpha[i];
        NatTrans b;
        b.components.resize(n_obj);
        for (ObjectIx o = 0; o < n_obj; ++o) {
            for (const auto& members : cur.p->classes[o]) {
                b.components[o].push_back(step.unit(o, a(o, members[0])));
            }
            for (const auto& fe : next.free[o]) {
                const auto& c = k.cones[fe.cone];
                const auto& part = step.parts[fe.cone];
                const auto& w = cur.gaps[fe.cone].limit.tuples[fe.tuple];
                LimitTuple image(w.size());
                for (ObjectIx z = 0; z < w.size(); ++z) image[z] = a(c.diagram.on_object(z), w[z]);
                const auto idx = part.sum.gap.limit.find(image);
                if (!idx) {
                    throw ConstructionError("alpha construction failed: stage " + std::to_string(i + 1) +
                                            " tuple of cone " + c.name + " has no Kelly counterpart");
                }
                const Elem pc = part.quotient.projection(o, part.sum.summand[fe.arrow][*idx]);
                b.components[o].push_back(step.inject[fe.cone](o, pc));
            }
        }
        out.naturality.push_back(naturality_check(next.S, kelly.objects[i + 1], b));

        SquareCheck sq;
        for (ObjectIx o = 0; o < n_obj && sq.ok; ++o) {
            for (Elem x = 0; x < cur.S.size(o); ++x) {
                if (b(o, cur.p->projection(o, x)) != step.unit(o, a(o, x))) {
                    sq = {false, "stage " + std::to_string(i) + " element '" + cur.S.name(o, x) +
                                     "' at " + base.object_name(o)};
                    break;
                }
            }
        }
        out.commutation.push_back(sq);
        out.alpha.push_back(std::move(b));
    }
    return out;
}

namespace {

template <class TraceA, class TraceB>
IsoVerdict iso_check(const TraceA& a, const SetPresentation& core_a, const NatTrans& rho_a,
                     const TraceB& b, const SetPresentation& core_b, const NatTrans& rho_b,
                     const LimitSketch& k, const LimitOptions& opts) {
    IsoVerdict v;
    v.forward = solve_factorisation(a, rho_b, core_b, k, opts).g;
    v.backward = solve_factorisation(b, rho_a, core_a, k, opts).g;
    const bool left = compose_nat(v.backward, v.forward) == identity_nat(core_a);
    const bool right = compose_nat(v.forward, v.backward) == identity_nat(core_b);
    v.iso = left && right;
    if (!left) v.detail = "backward o forward is not the identity";
    if (!right) v.detail += std::string(v.detail.empty() ? "" : "; ") + "forward o backward is not the identity";
    return v;
}

}  // namespace

IsoVerdict reflector_iso_check(const ElimTrace& a, const KellyTrace& b, const LimitSketch& k,
                               const LimitOptions& opts) {
    if (!a.converged || !b.converged) throw PreconditionError("both constructions must converge");
    return iso_check(a, a.core, a.rho, b, b.result(), b.rho, k, opts);
}

IsoVerdict reflector_iso_check(const ElimTrace& a, const ElimTrace& b, const LimitSketch& k,
                               const LimitOptions& opts) {
    if (!a.converged || !b.converged) throw PreconditionError("both constructions must converge");
    return iso_check(a, a.core, a.rho, b, b.core, b.rho, k, opts);
}

}  // namespace limsketch
