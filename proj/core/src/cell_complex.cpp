#include "hfk/cell_complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace hfk {

namespace {

// Slot layout (ccw) at a vertex: 0 = a-out, 2 = a-in; the beta slots depend
// on the sign: +1 puts b-out at 1 and b-in at 3, -1 swaps them.
int beta_out_slot(int sign) { return sign > 0 ? 1 : 3; }
int beta_in_slot(int sign) { return sign > 0 ? 3 : 1; }

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[b] = a;
        return true;
    }
};

}  // namespace

int CellComplex::dart_origin(int dart) const {
    const EdgeRec& e = edges_[dart_edge(dart)];
    return dart_forward(dart) ? e.tail : e.head;
}

int CellComplex::dart_target(int dart) const {
    const EdgeRec& e = edges_[dart_edge(dart)];
    return dart_forward(dart) ? e.head : e.tail;
}

int CellComplex::target_slot(int dart) const {
    const EdgeRec& e = edges_[dart_edge(dart)];
    int v = dart_target(dart);
    int s = d_.vertices[v].sign;
    if (e.alpha) return dart_forward(dart) ? 2 : 0;
    return dart_forward(dart) ? beta_in_slot(s) : beta_out_slot(s);
}

Corner CellComplex::dart_corner(int dart) const {
    return Corner{dart_target(dart), (target_slot(dart) + 3) % 4};
}

std::optional<int> CellComplex::find_edge(bool alpha, int curve, int tail, int head) const {
    for (int e = 0; e < edge_count(); ++e) {
        const EdgeRec& r = edges_[e];
        if (r.alpha == alpha && r.curve == curve && r.tail == tail && r.head == head)
            return e;
    }
    return std::nullopt;
}

int CellComplex::region_of_corner(Corner c) const {
    // Corner (v, q) is claimed by the dart arriving at slot (q+1)%4.
    int v = c.vertex;
    if (v < 0 || v >= d_.vertex_count() || c.quadrant < 0 || c.quadrant > 3)
        throw Error("corner token out of range");
    int arriving = dart_reverse(leaving_[4 * v + (c.quadrant + 1) % 4]);
    return region_of_dart_[arriving];
}

CellComplex CellComplex::build(Diagram d, bool strict_glue) {
    CellComplex cx;
    std::vector<std::string> bad;

    const int V = d.vertex_count();
    const int g_alpha = static_cast<int>(d.alpha_curves.size());
    const int g_beta = static_cast<int>(d.beta_curves.size());

    if (V == 0) bad.push_back("diagram has no vertices");
    for (int i = 0; i < V; ++i)
        if (d.vertices[i].sign != 1 && d.vertices[i].sign != -1)
            bad.push_back("vertex " + std::to_string(i) + " has no sign");

    std::vector<int> alpha_of(V, -1), beta_of(V, -1);
    auto scan_curves = [&](const std::vector<std::vector<int>>& curves, std::vector<int>& owner,
                           const char* kind) {
        for (int c = 0; c < (int)curves.size(); ++c) {
            if (curves[c].empty()) {
                bad.push_back(std::string(kind) + " curve " + std::to_string(c) +
                              " has no intersections");
                continue;
            }
            for (int vid : curves[c]) {
                if (vid < 0 || vid >= V) {
                    bad.push_back(std::string(kind) + " curve " + std::to_string(c) +
                                  " references unknown vertex " + std::to_string(vid));
                    continue;
                }
                if (owner[vid] != -1)
                    bad.push_back("vertex " + std::to_string(vid) + " appears twice among " +
                                  kind + " curves");
                owner[vid] = c;
            }
        }
    };
    scan_curves(d.alpha_curves, alpha_of, "alpha");
    scan_curves(d.beta_curves, beta_of, "beta");
    for (int i = 0; i < V; ++i) {
        if (alpha_of[i] == -1) bad.push_back("vertex " + std::to_string(i) + " is on no alpha curve");
        if (beta_of[i] == -1) bad.push_back("vertex " + std::to_string(i) + " is on no beta curve");
    }
    if (!bad.empty()) throw MalformedDiagram(bad);
    for (int i = 0; i < V; ++i) {
        d.vertices[i].alpha_curve = alpha_of[i];
        d.vertices[i].beta_curve = beta_of[i];
    }

    auto check_corner = [&](const Corner& c, const char* name) {
        if (c.vertex < 0 || c.vertex >= V || c.quadrant < 0 || c.quadrant > 3)
            bad.push_back(std::string(name) + " corner token out of range");
    };
    check_corner(d.z, "z");
    check_corner(d.w, "w");
    for (const auto& grp : d.glue) {
        if (grp.size() < 2) bad.push_back("glue group with fewer than two corners");
        for (const Corner& c : grp) check_corner(c, "glue");
    }
    if (!bad.empty()) throw MalformedDiagram(bad);

    cx.d_ = d;

    // Edges: curve entry i gives the edge c[i] -> c[i+1 mod len].
    auto add_edges = [&](const std::vector<std::vector<int>>& curves, bool alpha) {
        for (int c = 0; c < (int)curves.size(); ++c) {
            int L = static_cast<int>(curves[c].size());
            for (int i = 0; i < L; ++i)
                cx.edges_.push_back(EdgeRec{alpha, c, i, curves[c][i], curves[c][(i + 1) % L]});
        }
    };
    add_edges(d.alpha_curves, true);
    add_edges(d.beta_curves, false);
    const int E = cx.edge_count();
    // E = 2V by construction: each vertex contributes two alpha and two beta
    // half-edges.
    require(E == 2 * V, "edge count must equal 2V");

    cx.leaving_.assign(4 * V, -1);
    for (int e = 0; e < E; ++e) {
        const EdgeRec& r = cx.edges_[e];
        int t_slot = r.alpha ? 0 : beta_out_slot(d.vertices[r.tail].sign);
        int h_slot = r.alpha ? 2 : beta_in_slot(d.vertices[r.head].sign);
        int& t_ref = cx.leaving_[4 * r.tail + t_slot];
        int& h_ref = cx.leaving_[4 * r.head + h_slot];
        require(t_ref == -1 && h_ref == -1, "half-edge slot filled twice");
        t_ref = 2 * e;      // forward dart leaves the tail
        h_ref = 2 * e + 1;  // reverse dart leaves the head
    }
    for (int s : cx.leaving_) require(s != -1, "unfilled half-edge slot");

    // ccw face tracing: after arriving at slot q, leave from slot q-1.
    const int ND = 2 * E;
    cx.next_.assign(ND, -1);
    for (int dart = 0; dart < ND; ++dart) {
        int v = cx.dart_target(dart);
        int q = cx.target_slot(dart);
        cx.next_[dart] = cx.leaving_[4 * v + (q + 3) % 4];
    }

    cx.cycle_of_dart_.assign(ND, -1);
    std::vector<std::vector<int>> cycles;
    for (int dart = 0; dart < ND; ++dart) {
        if (cx.cycle_of_dart_[dart] != -1) continue;
        int cid = static_cast<int>(cycles.size());
        std::vector<int> cyc;
        int cur = dart;
        while (cx.cycle_of_dart_[cur] == -1) {
            cx.cycle_of_dart_[cur] = cid;
            cyc.push_back(cur);
            cur = cx.next_[cur];
        }
        require(cur == dart, "face trace did not close up");
        cycles.push_back(std::move(cyc));
    }

    // Glue groups join trace cycles into one multi-boundary region.
    Dsu dsu(static_cast<int>(cycles.size()));
    auto cycle_of_corner = [&](Corner c) {
        int arriving = dart_reverse(cx.leaving_[4 * c.vertex + (c.quadrant + 1) % 4]);
        return cx.cycle_of_dart_[arriving];
    };
    for (const auto& grp : d.glue) {
        int first = cycle_of_corner(grp[0]);
        for (size_t i = 1; i < grp.size(); ++i) {
            int other = cycle_of_corner(grp[i]);
            if (!dsu.unite(first, other) && strict_glue)
                bad.push_back("glue group joins corners already on one boundary cycle");
        }
    }
    if (!bad.empty()) throw MalformedDiagram(bad);

    // Regions in order of their smallest trace cycle.
    std::map<int, std::vector<int>> groups;  // dsu root -> cycle ids
    for (int c = 0; c < (int)cycles.size(); ++c) groups[dsu.find(c)].push_back(c);
    std::vector<std::vector<int>> region_cycles;
    for (int c = 0; c < (int)cycles.size(); ++c) {
        auto it = groups.find(dsu.find(c));
        if (it != groups.end() && it->second.front() == c) region_cycles.push_back(it->second);
    }

    cx.region_of_dart_.assign(ND, -1);
    for (int r = 0; r < (int)region_cycles.size(); ++r) {
        RegionRec reg;
        for (int cid : region_cycles[r]) {
            reg.boundary.push_back(cycles[cid]);
            for (int dart : cycles[cid]) {
                cx.region_of_dart_[dart] = r;
                reg.corners.push_back(cx.dart_corner(dart));
            }
        }
        reg.boundary_components = static_cast<int>(reg.boundary.size());
        reg.side_count = 0;
        for (const auto& c : reg.boundary) reg.side_count += static_cast<int>(c.size());
        require(reg.side_count % 2 == 0, "odd region side count");
        int n = reg.side_count / 2;
        reg.is_disk = reg.boundary_components == 1;
        reg.is_bigon = reg.is_disk && reg.side_count == 2;
        reg.is_rectangle = reg.is_disk && reg.side_count == 4;
        reg.is_bad = !reg.is_bigon && !reg.is_rectangle;
        reg.badness = std::max(n - 2, 0);
        reg.ugliness = reg.boundary_components - 1;
        // chi(R) = 2 - #boundary components (regions are planar);
        // e(R) = chi(R) - corners/4, and corners == side_count.
        reg.euler_measure = Rational(2 - reg.boundary_components) - Rational(reg.side_count, 4);
        cx.regions_.push_back(std::move(reg));
    }

    // Every corner lands in exactly one region (darts <-> corners bijectively).
    {
        std::vector<int> seen(4 * V, 0);
        for (int r = 0; r < cx.region_count(); ++r)
            for (const Corner& c : cx.regions_[r].corners) seen[4 * c.vertex + c.quadrant]++;
        for (int i = 0; i < 4 * V; ++i)
            require(seen[i] == 1, "corner not assigned to exactly one region");
    }

    // Surface connectivity: vertices joined by edges, plus glued regions
    // bridging the cycles they own.
    {
        Dsu comp(V);
        for (const EdgeRec& e : cx.edges_) comp.unite(e.tail, e.head);
        for (const auto& reg : cx.regions_)
            for (size_t i = 1; i < reg.boundary.size(); ++i)
                comp.unite(cx.dart_target(reg.boundary[0][0]), cx.dart_target(reg.boundary[i][0]));
        int root = comp.find(0);
        for (int v = 1; v < V; ++v)
            if (comp.find(v) != root) {
                bad.push_back("underlying surface is disconnected");
                break;
            }
    }

    // chi = V - E + sum chi(R); genus must match the curve count.
    long long chi = V - E;
    for (const auto& reg : cx.regions_) chi += 2 - reg.boundary_components;
    if (chi % 2 != 0 || chi > 2) bad.push_back("Euler characteristic " + std::to_string(chi) +
                                               " is not an even number <= 2");
    long long genus = (2 - chi) / 2;
    if (genus < 1) bad.push_back("genus must be >= 1, got " + std::to_string(genus));
    if (g_alpha != g_beta)
        bad.push_back("unequal curve counts: " + std::to_string(g_alpha) + " alpha vs " +
                      std::to_string(g_beta) + " beta");
    if (genus != g_alpha)
        bad.push_back("genus " + std::to_string(genus) + " does not match curve count " +
                      std::to_string(g_alpha));
    if (!bad.empty()) throw MalformedDiagram(bad);

    cx.z_region_ = cx.region_of_corner(d.z);
    cx.w_region_ = cx.region_of_corner(d.w);

    // Distances: BFS from Z; arcs are shared beta edge-sides, cost one per
    // crossing. Alpha adjacencies are not traversable.
    const int R = cx.region_count();
    std::vector<std::vector<std::pair<int, int>>> beta_adj(R), alpha_adj(R);
    for (int e = 0; e < E; ++e) {
        int a = cx.region_of_dart_[2 * e];
        int b = cx.region_of_dart_[2 * e + 1];
        auto& adj = cx.edges_[e].alpha ? alpha_adj : beta_adj;
        adj[a].push_back({e, b});
        adj[b].push_back({e, a});
    }
    for (auto& v : beta_adj) std::sort(v.begin(), v.end());
    for (auto& v : alpha_adj) std::sort(v.begin(), v.end());

    cx.parent_region_.assign(R, -1);
    cx.parent_edge_.assign(R, -1);
    {
        std::vector<int> dist(R, -1);
        dist[cx.z_region_] = 0;
        std::vector<int> frontier{cx.z_region_};
        int level = 0;
        while (!frontier.empty()) {
            std::sort(frontier.begin(), frontier.end());
            std::vector<int> next_frontier;
            for (int r : frontier)
                for (auto [e, s] : beta_adj[r])
                    if (dist[s] == -1) {
                        dist[s] = level + 1;
                        cx.parent_region_[s] = r;
                        cx.parent_edge_[s] = e;
                        next_frontier.push_back(s);
                    }
            frontier = std::move(next_frontier);
            ++level;
        }
        for (int r = 0; r < R; ++r) {
            if (dist[r] == -1) bad.push_back("Sigma minus alpha is disconnected (region " +
                                             std::to_string(r) + " unreachable from Z)");
            cx.regions_[r].distance = dist[r];
        }
    }
    {
        std::vector<char> seen(R, 0);
        std::deque<int> q{0};
        seen[0] = 1;
        while (!q.empty()) {
            int r = q.front();
            q.pop_front();
            for (auto [e, s] : alpha_adj[r])
                if (!seen[s]) {
                    seen[s] = 1;
                    q.push_back(s);
                }
        }
        for (int r = 0; r < R; ++r)
            if (!seen[r]) {
                bad.push_back("Sigma minus beta is disconnected");
                break;
            }
    }
    if (!bad.empty()) throw MalformedDiagram(bad);

    MetricsSnapshot m;
    m.genus = static_cast<int>(genus);
    m.vertex_count = V;
    m.region_count = R;
    Rational euler_sum = 0;
    for (int r = 0; r < R; ++r) {
        const RegionRec& reg = cx.regions_[r];
        euler_sum += reg.euler_measure;
        m.total_ugliness += reg.ugliness;
        if (reg.is_bigon) ++m.bigon_count;
        if (r == cx.z_region_) {
            m.z_badness = reg.badness;
            continue;
        }
        m.total_badness += reg.badness;
        if (reg.is_bad) {
            m.badness_at_distance[reg.distance] += reg.badness;
            m.distance = std::max(m.distance, reg.distance);
        }
        m.all_disk = m.all_disk && reg.is_disk;
    }
    m.all_disk = m.all_disk && cx.regions_[cx.z_region_].is_disk;
    m.nice = m.total_badness == 0;
    require(euler_sum == Rational(2 - 2 * genus), "total Euler measure must be 2-2g");
    cx.metrics_ = m;
    return cx;
}

CdTuple CellComplex::complexity_at(int dist) const {
    std::vector<long long> b;
    for (int r = 0; r < region_count(); ++r) {
        if (r == z_region_) continue;
        const RegionRec& reg = regions_[r];
        if (reg.is_bad && reg.distance == dist) b.push_back(reg.badness);
    }
    std::sort(b.rbegin(), b.rend());
    CdTuple t;
    t.entries.push_back(std::accumulate(b.begin(), b.end(), 0LL));
    for (long long x : b) t.entries.push_back(-x);
    return t;
}

std::vector<PathStep> CellComplex::heegaard_path(int region) const {
    std::vector<PathStep> steps;
    int cur = region;
    while (cur != z_region_) {
        int e = parent_edge_[cur];
        int to = parent_region_[cur];
        require(e >= 0, "no Heegaard path parent");
        int from_dart = region_of_dart_[2 * e] == cur ? 2 * e : 2 * e + 1;
        require(region_of_dart_[from_dart] == cur, "path dart does not bound its region");
        steps.push_back(PathStep{e, cur, to, from_dart});
        cur = to;
    }
    return steps;
}

ChainWalk CellComplex::walk_rectangle_chain(int entry_dart, int distance_floor) const {
    require(entry_dart >= 0 && entry_dart < 2 * edge_count(), "bad entry dart");
    require(edges_[dart_edge(entry_dart)].alpha, "chain entry must be an alpha edge-side");
    ChainWalk walk;
    std::set<int> visited;
    int cur = entry_dart;
    for (int guard = 0; guard <= region_count() + 1; ++guard) {
        int far = dart_reverse(cur);
        int r = region_of_dart_[far];
        walk.crossed_edges.push_back(dart_edge(cur));
        const RegionRec& reg = regions_[r];
        if (!(reg.is_rectangle && reg.distance >= distance_floor)) {
            walk.terminal_region = r;
            walk.terminal_entry_dart = far;
            return walk;
        }
        require(!visited.count(r), "rectangle chain revisited a rectangle");
        visited.insert(r);
        walk.rectangles.push_back(r);
        int exit_dart = -1;
        for (int dart : reg.boundary[0])
            if (edges_[dart_edge(dart)].alpha && dart != far) {
                require(exit_dart == -1, "rectangle with more than two alpha sides");
                exit_dart = dart;
            }
        require(exit_dart != -1, "rectangle without opposite alpha side");
        cur = exit_dart;
    }
    throw AssertionError("rectangle chain failed to terminate");
}

Diagram with_normalized_glue(const Diagram& d) {
    CellComplex cx = CellComplex::build(d, false);
    Diagram out = cx.diagram();
    out.glue.clear();
    for (const auto& reg : cx.regions()) {
        if (reg.boundary_components < 2) continue;
        std::vector<Corner> group;
        for (const auto& cyc : reg.boundary) {
            Corner least{INT32_MAX, INT32_MAX};
            for (int dart : cyc) least = std::min(least, cx.dart_corner(dart));
            group.push_back(least);
        }
        std::sort(group.begin(), group.end());
        out.glue.push_back(std::move(group));
    }
    std::sort(out.glue.begin(), out.glue.end());
    return out;
}

}  // namespace hfk
