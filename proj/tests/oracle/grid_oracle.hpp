#pragma once

#include <map>
#include <utility>
#include <vector>

// Brute-force HFK-hat from a toroidal grid diagram: enumerate all n!
// generators, build the fully blocked empty-rectangle differential over F2,
// take homology per bigrading, and strip the (n-1)-fold tensor factor.
//
// This is ground truth for the tests and deliberately shares no code with
// the main library.
namespace gridhfk {

struct GridDiagram {
    // Marker rows per column: X in column i sits in cell (i, x_row[i]).
    std::vector<int> x_row;
    std::vector<int> o_row;

    int size() const { return static_cast<int>(x_row.size()); }
    bool is_knot() const;  // single component
};

struct RankTable {
    // (alexander, maslov) -> rank, absolute gradings
    std::map<std::pair<long long, long long>, long long> ranks;
    long long total() const;
    std::map<long long, long long> euler() const;  // alexander power -> coefficient
};

RankTable grid_hfk(const GridDiagram& g);

}  // namespace gridhfk
