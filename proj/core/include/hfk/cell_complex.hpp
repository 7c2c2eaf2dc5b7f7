#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hfk/diagram.hpp"
#include "hfk/rational.hpp"

namespace hfk {

// Edges are derived from the curves: curve entry i yields the edge from
// vertex c[i] to c[(i+1) % len]. Darts are directed edges, id = 2*edge + r
// with r = 0 the forward (curve-oriented) dart.
struct EdgeRec {
    bool alpha = false;
    int curve = -1;
    int pos = -1;  // index of the tail within the curve cycle
    int tail = -1;
    int head = -1;
};

// A derived face. `boundary` holds one dart cycle per boundary component,
// counterclockwise (region on the left of each dart). Regions are planar:
// chi = 2 - boundary_components.
struct RegionRec {
    std::vector<std::vector<int>> boundary;
    std::vector<Corner> corners;
    int side_count = 0;             // total edge-sides, = 2n
    int boundary_components = 1;
    bool is_disk = true;
    bool is_bigon = false;
    bool is_rectangle = false;
    bool is_bad = false;            // neither bigon nor rectangle
    int badness = 0;                // max(n-2, 0)
    int ugliness = 0;               // boundary_components - 1
    Rational euler_measure;         // chi(R) - corners/4
    int distance = -1;              // beta-edge crossings to Z
};

struct MetricsSnapshot {
    int genus = 0;
    int vertex_count = 0;
    int region_count = 0;
    int bigon_count = 0;
    long long total_badness = 0;    // sum over regions != Z
    long long z_badness = 0;
    std::map<int, long long> badness_at_distance;  // regions != Z only
    int distance = 0;               // max over bad regions != Z, 0 if none
    bool all_disk = true;
    bool nice = false;              // total_badness == 0
    long long total_ugliness = 0;
};

// Distance-d complexity: (sum of badness of bad distance-d regions,
// -b(D_1), ..., -b(D_n)) with b(D_1) >= ... >= b(D_n), lexicographic.
struct CdTuple {
    std::vector<long long> entries;
    friend bool operator<(const CdTuple& a, const CdTuple& b) {
        return std::lexicographical_compare(a.entries.begin(), a.entries.end(),
                                            b.entries.begin(), b.entries.end());
    }
    friend bool operator==(const CdTuple& a, const CdTuple& b) { return a.entries == b.entries; }
};

struct PathStep {
    int edge = -1;         // beta edge crossed
    int from_region = -1;  // region on the far-from-Z side
    int to_region = -1;
    int from_dart = -1;    // dart of `edge` with from_region on its left
};

struct ChainWalk {
    std::vector<int> rectangles;   // regions crossed, in order
    std::vector<int> crossed_edges;  // alpha edges crossed, one per step incl. entry
    int terminal_region = -1;
    int terminal_entry_dart = -1;  // dart of the last crossed edge, terminal on its left
};

class CellComplex {
public:
    // Derives faces, regions and metrics; throws MalformedDiagram listing all
    // violated invariants. With strict_glue, a glue group that joins corners
    // already on one trace cycle is an error (used for parsed input).
    static CellComplex build(Diagram d, bool strict_glue = false);

    const Diagram& diagram() const { return d_; }

    // --- darts ---------------------------------------------------------
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const EdgeRec& edge(int e) const { return edges_[e]; }
    const std::vector<EdgeRec>& edges() const { return edges_; }
    static int dart_edge(int dart) { return dart >> 1; }
    static bool dart_forward(int dart) { return (dart & 1) == 0; }
    static int dart_reverse(int dart) { return dart ^ 1; }
    int dart_origin(int dart) const;
    int dart_target(int dart) const;
    int target_slot(int dart) const;
    int next_dart_ccw(int dart) const { return next_[dart]; }
    // Corner claimed when traversing `dart`: (target, (target_slot+3)%4).
    Corner dart_corner(int dart) const;
    int left_region(int dart) const { return region_of_dart_[dart]; }

    // Half-edge end sitting in slot `slot` (0..3, ccw) at vertex v, as the
    // dart leaving the vertex from that end.
    int dart_leaving(int vertex, int slot) const { return leaving_[4 * vertex + slot]; }

    // Edge of the given curve with this (tail, head) pair, if present.
    std::optional<int> find_edge(bool alpha, int curve, int tail, int head) const;

    // --- regions -------------------------------------------------------
    int region_count() const { return static_cast<int>(regions_.size()); }
    const RegionRec& region(int r) const { return regions_[r]; }
    const std::vector<RegionRec>& regions() const { return regions_; }
    int region_of_corner(Corner c) const;
    int z_region() const { return z_region_; }
    int w_region() const { return w_region_; }

    const MetricsSnapshot& metrics() const { return metrics_; }
    CdTuple complexity_at(int dist) const;

    // One shortest crossing sequence region -> Z (ties: lowest region id,
    // then lowest edge id). Empty for Z itself.
    std::vector<PathStep> heegaard_path(int region) const;

    // From an alpha edge-side of a region, steps across the alpha edge, runs
    // through rectangles of distance >= floor, and stops at the first region
    // that fails that test.
    ChainWalk walk_rectangle_chain(int entry_dart, int distance_floor) const;

private:
    Diagram d_;
    std::vector<EdgeRec> edges_;
    std::vector<int> leaving_;        // 4V slots -> dart leaving from that end
    std::vector<int> next_;           // ccw face-trace successor
    std::vector<int> cycle_of_dart_;  // trace cycle index
    std::vector<int> region_of_dart_;
    std::vector<RegionRec> regions_;
    std::vector<int> parent_region_;  // BFS parent toward Z
    std::vector<int> parent_edge_;
    MetricsSnapshot metrics_;
    int z_region_ = -1;
    int w_region_ = -1;
};

// Normalizes glue bookkeeping: rebuilds the groups from the actual
// multi-component regions (one canonical corner per boundary cycle).
Diagram with_normalized_glue(const Diagram& d);

}  // namespace hfk
