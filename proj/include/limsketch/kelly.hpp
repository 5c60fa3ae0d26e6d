#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "limsketch/setops.hpp"
#include "limsketch/sketch.hpp"

namespace limsketch {

struct KellyOptions {
    std::size_t budget = 8;               // number of applications of P
    std::size_t max_elements = 200'000;   // per object
    std::uint64_t max_tuples = 1'000'000;
};

// X(d) + hom(peak, d) x X[c] before the quotient, with the literal R0 and R1
// pair lists. X's elements come first at every object.
struct KellySum {
    SetPresentation sum;
    GapMap gap;                                   // X(peak) -> X[c]
    // summand[t][w]: sum element at cod(t) for (t, w); empty unless dom(t) = peak.
    std::vector<std::vector<Elem>> summand;
    PairList r0;
    PairList r1;
};

KellySum kelly_sum(const SetPresentation& x, const Cone& c, const std::string& tag,
                   const KellyOptions& opts = {});

struct KellyPc {
    KellySum sum;
    QuotientMap quotient;  // sum -> P_c(X)
    NatTrans unit;         // X => P_c(X)

    const SetPresentation& result() const { return quotient.target; }
};

// P_c(X) = (X + hom(peak, -) x X[c]) / (R0 + R1). Summand elements are named
// "<tag>(<cone>,<arrow>,[<components>])".
KellyPc kelly_Pc(const SetPresentation& x, const Cone& c, const std::string& tag = "K",
                 const KellyOptions& opts = {});

// Wide pushout of every P_c(X) under X.
struct KellyStep {
    std::vector<KellyPc> parts;
    SetPresentation result;
    NatTrans unit;                 // X => P(X)
    std::vector<NatTrans> inject;  // per cone: P_c(X) => P(X)
};

KellyStep kelly_P(const SetPresentation& x, const LimitSketch& k, const std::string& tag = "K",
                  const KellyOptions& opts = {});

struct KellyTrace {
    std::vector<SetPresentation> objects;  // P^0 = X, P^1, ...
    std::vector<KellyStep> steps;          // steps[n]: P^n -> P^{n+1}
    bool converged = false;
    std::size_t converged_at = 0;
    NatTrans rho;                          // X => P^converged_at (or the last object)

    const SetPresentation& result() const;
};

// P^0 .. P^n without any convergence test.
KellyTrace kelly_sequence(const SetPresentation& x, const LimitSketch& k, std::size_t n,
                          const KellyOptions& opts = {});

// Iterate P until P^n is a model and the unit P^n -> P^{n+1} is bijective.
// The extra application used by that test is not counted against the budget.
KellyTrace reflect_kelly(const SetPresentation& x, const LimitSketch& k,
                         const KellyOptions& opts = {});

}  // namespace limsketch
