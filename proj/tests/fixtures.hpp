#pragma once

#include <string>

#include "hfk/diagram.hpp"

namespace hfk::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(HFK_FIXTURE_DIR) + "/" + name;
}

inline Diagram load_fixture(const std::string& name) { return load_hd(fixture_path(name)); }

// Torus unknot: one alpha, one beta, a single positive crossing; the lone
// region is a rectangle carrying both basepoints.
inline Diagram make_u1() {
    Diagram d;
    d.vertices = {VertexData{0, 0, 1}};
    d.alpha_curves = {{0}};
    d.beta_curves = {{0}};
    d.z = Corner{0, 0};
    d.w = Corner{0, 2};
    return d;
}

}  // namespace hfk::testing
