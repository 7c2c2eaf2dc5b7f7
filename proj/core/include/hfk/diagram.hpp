#pragma once

#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include "hfk/errors.hpp"

namespace hfk {

// A corner token (vertex, quadrant). Quadrant q is the sector counterclockwise
// between the q-th and (q+1)-th half-edge end at the vertex. Corner tokens are
// the stable way to point at a region across rewrites.
struct Corner {
    int vertex = -1;
    int quadrant = -1;

    friend bool operator==(const Corner& a, const Corner& b) {
        return a.vertex == b.vertex && a.quadrant == b.quadrant;
    }
    friend bool operator!=(const Corner& a, const Corner& b) { return !(a == b); }
    friend bool operator<(const Corner& a, const Corner& b) {
        return std::tie(a.vertex, a.quadrant) < std::tie(b.vertex, b.quadrant);
    }
};

// sign +1 fixes the ccw order of half-edge ends as (a-out, b-out, a-in, b-in),
// sign -1 as (a-out, b-in, a-in, b-out).
struct VertexData {
    int alpha_curve = -1;
    int beta_curve = -1;
    int sign = 0;
};

// Combinatorial doubly pointed Heegaard diagram. Curves are cyclic vertex
// sequences; the rotation system is derived from them plus the signs.
//
// `glue` lists groups of corner tokens: the trace cycles carrying those
// corners bound a single (planar) region with several boundary components.
// Rotation data alone can only describe all-disk diagrams, so non-disk
// regions need this extra gluing datum.
struct Diagram {
    std::vector<VertexData> vertices;
    std::vector<std::vector<int>> alpha_curves;
    std::vector<std::vector<int>> beta_curves;
    Corner z;
    Corner w;
    std::vector<std::vector<Corner>> glue;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int curve_count() const { return static_cast<int>(alpha_curves.size()); }
};

Diagram parse_hd(std::istream& in);
Diagram parse_hd_string(const std::string& text);
Diagram load_hd(const std::string& path);

// Canonical form: each alpha curve rotated to start at its smallest vertex,
// vertices renumbered 0..V-1 in first-use order over alpha curves, betas
// rotated likewise, glue groups sorted.
Diagram canonicalized(const Diagram& d);

// Serializes the canonical form. `comment` lines (without '#') are emitted
// at the top of the file.
std::string serialize_hd(const Diagram& d, const std::vector<std::string>& comments = {});
void save_hd(const Diagram& d, const std::string& path,
             const std::vector<std::string>& comments = {});

}  // namespace hfk
