#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limsketch/setops.hpp"
#include "limsketch/sketch.hpp"

namespace limsketch {

enum class ElimMode { faithful, pruned };

std::string to_string(ElimMode m);
ElimMode parse_elim_mode(const std::string& s);

struct ElimOptions {
    ElimMode mode = ElimMode::pruned;
    std::size_t budget = 8;               // number of stage steps allowed
    std::size_t max_elements = 200'000;   // per object and stage
    std::uint64_t max_tuples = 1'000'000; // per limit enumeration
    bool stop_at_convergence = true;
};

// Provenance of a freely added element Free(c, t, w) of E_i: cone index,
// arrow t out of the cone's peak, and w as a tuple of S_{i-1} elements
// (index into the previous stage's limit set for that cone).
struct FreeElement {
    std::size_t cone = 0;
    ArrowIx arrow = 0;
    std::size_t tuple = 0;
};

// One stage S_i = B_i + E_i. S lists B's elements first, then E's, with the
// same names. The fields after `core` relate stage i to stage i + 1 and are
// empty on the last stage.
struct ElimStage {
    std::size_t index = 0;
    SetPresentation B;
    SetPresentation E;
    SetPresentation S;
    std::vector<std::vector<FreeElement>> free;    // per object, per E element
    std::vector<std::vector<bool>> redundant;      // per object, per E element
    std::vector<std::vector<Elem>> core;           // per object: B elements of core_i

    std::vector<GapMap> gaps;                      // per cone: S_i(peak) -> lim S_i o in(c)
    std::optional<QuotientMap> p;                  // S_i -> B_{i+1}
    // Kan unit a_i per cone: tuple of lim S_i o in(c) -> E_{i+1}(peak), empty if pruned.
    std::vector<std::vector<std::optional<Elem>>> kan_unit;
    std::size_t rule1_pairs = 0;
    std::size_t rule2_pairs = 0;

    Elem e_offset(ObjectIx o) const { return static_cast<Elem>(B.size(o)); }
};

struct ElimTrace {
    ElimMode mode = ElimMode::pruned;
    std::vector<ElimStage> stages;
    bool converged = false;
    std::size_t converged_at = 0;
    std::size_t core_stage = 0;  // stage whose core is reported
    SetPresentation core;
    NatTrans rho;                // X => core
};

// Per-object pair lists of S_i elements produced by the two rules.
PairList relation_one(const ElimStage& s, const LimitSketch& k);
PairList relation_two(const ElimStage& prev, const ElimStage& s, const LimitSketch& k);

// Gap maps of S_i for every cone.
std::vector<GapMap> stage_gaps(const SetPresentation& s, const LimitSketch& k,
                               std::size_t stage, const ElimOptions& opts);

// Stage 0: B_0 = X, E_0 empty.
ElimStage initial_stage(const SetPresentation& x, const LimitSketch& k);

// Compute p_i, B_{i+1}, E_{i+1}. Fills the "next" fields of `s` (and needs
// `prev` for rule 2 when s.index >= 1).
ElimStage elim_stage(ElimStage& s, const ElimStage* prev, const LimitSketch& k,
                     const ElimOptions& opts);

ElimTrace reflect_elim(const SetPresentation& x, const LimitSketch& k, const ElimOptions& opts = {});

// "<tag>(<cone>,<arrow>,[<components>])"; free elements of E_i use tag "F<i>".
std::string tagged_element_name(const std::string& tag, const Cone& c, const FinCategory& base,
                                ArrowIx t, const std::vector<std::string>& components);

}  // namespace limsketch
