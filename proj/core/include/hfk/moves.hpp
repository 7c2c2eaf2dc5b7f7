#pragma once

#include <vector>

#include "hfk/cell_complex.hpp"

namespace hfk {

// Result of an elementary rewrite. `new_vertices` counts 0-simplices added
// (negative for removals); this is the algorithmic time unit. `iota` maps
// regions of the new diagram to the regions of the input they came from
// (identity away from the rewrite locus).
struct MoveOutcome {
    Diagram diagram;
    int new_vertices = 0;
    std::vector<int> iota;
};

// Isotopes the beta arc owning `start_beta_dart` across the listed alpha
// edges. `start_beta_dart` must have the first pushed-across region on its
// left; each crossing dart must have on its left the region the finger is in
// when it reaches it. Every crossed alpha edge gains two vertices; a bigon
// appears at the tip inside the last region entered.
MoveOutcome push_finger(const Diagram& d, int start_beta_dart,
                        const std::vector<int>& crossing_darts);

// Reverse length-1 finger: removes the bigon's two vertices.
MoveOutcome eliminate_bigon(const Diagram& d, int bigon_region);

// Replaces beta curve `slide` by its band sum with a parallel push-off of
// beta curve `over`. The band is an embedded arc in the region both corner
// tokens lie on; each token must sit on its named curve.
MoveOutcome handleslide(const Diagram& d, int slide, int over, Corner on_slide, Corner on_over);

// Cuts a region with ugliness >= 1 by a shortest finger from one boundary
// component to another, extended to terminate inside an existing bigon when
// the diagram has one. Ugliness drops by exactly one.
MoveOutcome cut_nondisk(const Diagram& d, int region);

// Theorem-4.2 handle attachment: a new alpha curve follows the Heegaard path
// of the target (one new vertex per crossed beta edge), a new beta curve is
// the handle meridian. Requires an all-disk diagram and distance(target) > 1.
MoveOutcome attach_handle(const Diagram& d, int target_region);

// Plain stabilization: adds a one-vertex handle whose face is glued into
// `region`. The result has a non-disk region; follow with cut_nondisk.
MoveOutcome stabilize(const Diagram& d, int region);

}  // namespace hfk
