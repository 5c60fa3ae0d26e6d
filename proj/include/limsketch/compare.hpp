#pragma once

#include <string>
#include <vector>

#include "limsketch/elim.hpp"
#include "limsketch/kelly.hpp"
#include "limsketch/setops.hpp"
#include "limsketch/sketch.hpp"

namespace limsketch {

struct SquareCheck {
    bool ok = true;
    std::string witness;  // first failing element, empty when ok
};

// Stagewise comparison alpha_i: S_i => P^i(X).
struct AlphaTrace {
    std::vector<NatTrans> alpha;
    bool alpha0_identity = false;
    std::vector<SquareCheck> naturality;   // per stage i
    std::vector<SquareCheck> commutation;  // [i]: alpha_{i+1} o p_i = unit_i o alpha_i

    bool ok() const;
};

// Builds alpha_0 .. alpha_m with m the smallest of `max_stage` and the last
// stage of either trace. Requires a faithful elimination trace
// (PreconditionError otherwise); throws ConstructionError only when a tuple
// has no counterpart on the Kelly side. Failing squares are reported.
AlphaTrace build_alpha(const ElimTrace& elim, const KellyTrace& kelly, const LimitSketch& k,
                       std::size_t max_stage = 3);

struct IsoVerdict {
    bool iso = false;
    NatTrans forward;   // first core => second core
    NatTrans backward;  // second core => first core
    std::string detail;
};

// Solve the factorisation of each reflection through the other and check that
// the two composites are identities.
IsoVerdict reflector_iso_check(const ElimTrace& a, const KellyTrace& b, const LimitSketch& k,
                               const LimitOptions& opts = {});
IsoVerdict reflector_iso_check(const ElimTrace& a, const ElimTrace& b, const LimitSketch& k,
                               const LimitOptions& opts = {});

}  // namespace limsketch
