#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "limsketch/elim.hpp"
#include "limsketch/kelly.hpp"
#include "limsketch/setops.hpp"
#include "limsketch/sketch.hpp"

namespace limsketch {

struct FactorisationResult {
    NatTrans g;                    // reflection => M
    bool natural = false;
    bool commutes = false;         // g o rho = f
    std::size_t free_resolved = 0; // elements valued through an inverse gap map
    std::vector<std::string> log;  // first few of those steps
};

// Extend f: X => M along the staged construction, valuing each new element
// through M's inverse gap maps. Throws PreconditionError if M is not a model
// or the trace did not converge, ConstructionError on a class image conflict.
FactorisationResult solve_factorisation(const ElimTrace& trace, const NatTrans& f,
                                        const SetPresentation& m, const LimitSketch& k,
                                        const LimitOptions& opts = {});
FactorisationResult solve_factorisation(const KellyTrace& trace, const NatTrans& f,
                                        const SetPresentation& m, const LimitSketch& k,
                                        const LimitOptions& opts = {});

struct EnumerationResult {
    bool conclusive = true;
    std::uint64_t search_space = 0;  // prod over d of |M(d)|^|Y(d)|, saturated
    std::vector<NatTrans> found;
};

// Every natural transformation Y => M accepted by `filter`, by backtracking
// with naturality checks. Nothing is enumerated when the search space
// exceeds `cap`.
EnumerationResult enumerate_nat_trans(const SetPresentation& y, const SetPresentation& m,
                                      std::uint64_t cap,
                                      const std::function<bool(const NatTrans&)>& filter = {},
                                      std::size_t stop_after = std::numeric_limits<std::size_t>::max());

enum class Uniqueness { unique, counterexample, none, inconclusive };

std::string to_string(Uniqueness u);

struct UniquenessVerdict {
    Uniqueness verdict = Uniqueness::inconclusive;
    std::uint64_t search_space = 0;
    std::vector<NatTrans> witnesses;  // the factorisations found (at most two)
};

// Count the g: core => M with g o rho = f.
UniquenessVerdict check_uniqueness(const SetPresentation& core, const NatTrans& rho,
                                   const NatTrans& f, const SetPresentation& m, std::uint64_t cap);
UniquenessVerdict check_uniqueness(const ElimTrace& trace, const NatTrans& f,
                                   const SetPresentation& m, std::uint64_t cap);

}  // namespace limsketch
