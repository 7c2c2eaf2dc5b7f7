#include "hfk/moves.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace hfk {

namespace {

// Maps each region of `nxt` to the region of `prev` its pre-existing corners
// lived in. A region with only new corners is the finger tip; it maps to
// `tip_fallback`. When `strict`, mixed origins are a bug.
std::vector<int> compute_iota(const CellComplex& prev, const CellComplex& nxt, int tip_fallback,
                              bool strict) {
    int old_v = prev.diagram().vertex_count();
    std::vector<int> iota(nxt.region_count(), -1);
    for (int r = 0; r < nxt.region_count(); ++r) {
        int found = -1;
        for (const Corner& c : nxt.region(r).corners) {
            if (c.vertex >= old_v) continue;
            int o = prev.region_of_corner(c);
            if (found == -1) {
                found = o;
                if (!strict) break;
            } else if (strict) {
                require(found == o, "iota: region with corners from two source regions");
            }
        }
        if (found == -1) {
            require(tip_fallback >= 0, "iota: region with no pre-existing corners");
            found = tip_fallback;
        }
        iota[r] = found;
    }
    return iota;
}

std::vector<int> compose_iota(const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> out(inner.size());
    for (size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
    return out;
}

// One length-1 finger: pushes the beta edge of `beta_dart` across the alpha
// edge of `alpha_dart`. Both darts must have the traversed region on their
// left. Returns the rewritten diagram plus the ids of the inbound (x) and
// outbound (y) crossing.
struct L1Result {
    Diagram diagram;
    int x, y;
};

L1Result l1_apply(const CellComplex& cx, int beta_dart, int alpha_dart) {
    const EdgeRec eb = cx.edge(CellComplex::dart_edge(beta_dart));
    const EdgeRec ea = cx.edge(CellComplex::dart_edge(alpha_dart));
    require(!eb.alpha && ea.alpha, "l1: need a beta start and an alpha crossing");

    Diagram d = cx.diagram();
    const int x = d.vertex_count();
    const int y = x + 1;
    const bool fwd_b = CellComplex::dart_forward(beta_dart);
    const bool fwd_a = CellComplex::dart_forward(alpha_dart);

    // The inbound strand crosses the alpha edge out of the region on the
    // dart's left; its crossing sign follows from the slot layout.
    const int sign_x = fwd_a ? -1 : 1;
    d.vertices.push_back(VertexData{ea.curve, eb.curve, sign_x});
    d.vertices.push_back(VertexData{ea.curve, eb.curve, -sign_x});

    auto& bc = d.beta_curves[eb.curve];
    bc.insert(bc.begin() + eb.pos + 1, {x, y});

    // Order along the alpha edge is forced by embeddability of the two
    // parallel strands inside the region.
    auto& ac = d.alpha_curves[ea.curve];
    if (fwd_b == fwd_a)
        ac.insert(ac.begin() + ea.pos + 1, {y, x});
    else
        ac.insert(ac.begin() + ea.pos + 1, {x, y});
    return L1Result{std::move(d), x, y};
}

struct FingerResult {
    Diagram diagram;
    std::vector<int> iota;
    int crossings = 0;
};

// Runs a composite finger move: start at `start_beta_dart`, cross the listed
// alpha edges in order. Crossing darts are given in the coordinates of `cx0`
// and re-resolved in each intermediate diagram by endpoints.
FingerResult run_finger(const CellComplex& cx0, int start_beta_dart,
                        const std::vector<int>& crossing_darts) {
    if (crossing_darts.empty()) throw IllegalFinger("finger needs at least one crossing");
    if (cx0.edge(CellComplex::dart_edge(start_beta_dart)).alpha)
        throw IllegalFinger("finger start must be a beta edge-side");

    struct Tok {
        int curve, tail, head;
    };
    std::vector<Tok> toks;
    for (int dart : crossing_darts) {
        const EdgeRec& e = cx0.edge(CellComplex::dart_edge(dart));
        if (!e.alpha) throw IllegalFinger("finger crossings must be alpha edges");
        toks.push_back(Tok{e.curve, e.tail, e.head});
    }
    for (size_t i = 0; i < toks.size(); ++i)
        for (size_t j = i + 1; j < toks.size(); ++j)
            if (toks[i].curve == toks[j].curve && toks[i].tail == toks[j].tail &&
                toks[i].head == toks[j].head)
                throw IllegalFinger("finger crosses the same alpha edge twice");

    int expected = cx0.left_region(start_beta_dart);
    if (cx0.left_region(crossing_darts[0]) != expected)
        throw IllegalFinger("first crossing is not an alpha edge-side of the start region");

    CellComplex cur = cx0;
    int beta_dart = start_beta_dart;
    std::vector<int> iota;
    bool have_iota = false;

    for (size_t i = 0; i < toks.size(); ++i) {
        auto e = cur.find_edge(true, toks[i].curve, toks[i].tail, toks[i].head);
        if (!e) throw IllegalFinger("crossing edge not present");
        int ad = 2 * *e;
        if (cur.left_region(ad) != expected) ad = CellComplex::dart_reverse(ad);
        if (cur.left_region(ad) != expected)
            throw IllegalFinger("crossing does not bound the region the finger is in");
        require(cur.left_region(beta_dart) == expected, "finger start left the expected region");

        int terminal_prev = cur.left_region(CellComplex::dart_reverse(ad));
        L1Result res = l1_apply(cur, beta_dart, ad);
        CellComplex nxt = CellComplex::build(std::move(res.diagram));
        std::vector<int> step = compute_iota(cur, nxt, terminal_prev, true);
        iota = have_iota ? compose_iota(iota, step) : step;
        have_iota = true;

        // The tip edge (x -> y) is the next finger front; the region to push
        // on from is the non-bigon side of it.
        int beta_curve = nxt.diagram().vertices[res.x].beta_curve;
        auto tip_edge = nxt.find_edge(false, beta_curve, res.x, res.y);
        require(tip_edge.has_value(), "tip edge missing after l1");
        int d0 = 2 * *tip_edge;
        int d1 = CellComplex::dart_reverse(d0);
        int r0 = nxt.left_region(d0);
        int r1 = nxt.left_region(d1);
        bool bigon0 = nxt.region(r0).is_bigon;
        bool bigon1 = nxt.region(r1).is_bigon;
        require(bigon0 != bigon1, "exactly one side of the tip edge must be the tip bigon");
        beta_dart = bigon0 ? d1 : d0;
        expected = bigon0 ? r1 : r0;
        cur = std::move(nxt);
    }

    return FingerResult{cur.diagram(), std::move(iota), static_cast<int>(toks.size())};
}

MoveOutcome finish_move(const CellComplex& before, Diagram after, std::vector<int> iota,
                        int expected_delta) {
    after = with_normalized_glue(after);
    CellComplex check = CellComplex::build(after);
    int delta = check.diagram().vertex_count() - before.diagram().vertex_count();
    require(delta == expected_delta, "0-simplex accounting mismatch");
    return MoveOutcome{std::move(after), expected_delta, std::move(iota)};
}

Corner smallest_corner(const RegionRec& reg) {
    Corner least{INT32_MAX, INT32_MAX};
    for (const Corner& c : reg.corners) least = std::min(least, c);
    return least;
}

}  // namespace

MoveOutcome push_finger(const Diagram& d, int start_beta_dart,
                        const std::vector<int>& crossing_darts) {
    CellComplex cx = CellComplex::build(d);
    FingerResult res = run_finger(cx, start_beta_dart, crossing_darts);
    return finish_move(cx, std::move(res.diagram), std::move(res.iota), 2 * res.crossings);
}

MoveOutcome eliminate_bigon(const Diagram& d, int bigon_region) {
    CellComplex cx = CellComplex::build(d);
    if (bigon_region < 0 || bigon_region >= cx.region_count()) throw NotABigon("no such region");
    const RegionRec& B = cx.region(bigon_region);
    if (!B.is_bigon) throw NotABigon("region is not a bigon");
    for (const Corner& c : B.corners)
        if (c == d.z || c == d.w) throw ContainsBasepoint("bigon contains a basepoint");

    int u = B.corners[0].vertex;
    int v = B.corners[1].vertex;
    if (u == v) throw WouldStrandCurve("bigon on a single vertex; removal would empty its curves");
    const VertexData& vu = d.vertices[u];
    if (d.alpha_curves[vu.alpha_curve].size() <= 2 || d.beta_curves[vu.beta_curve].size() <= 2)
        throw WouldStrandCurve("removal would leave a curve with no intersections");

    Diagram nd = d;
    // Re-anchor basepoints whose vertex dies to another corner of the same
    // region; refuse if the region has no surviving corner.
    auto reanchor = [&](Corner& anchor) {
        if (anchor.vertex != u && anchor.vertex != v) return;
        int reg = cx.region_of_corner(anchor);
        Corner best{INT32_MAX, INT32_MAX};
        for (const Corner& c : cx.region(reg).corners)
            if (c.vertex != u && c.vertex != v) best = std::min(best, c);
        if (best.vertex == INT32_MAX)
            throw ContainsBasepoint("bigon removal would orphan a basepoint anchor");
        anchor = best;
    };
    reanchor(nd.z);
    reanchor(nd.w);
    for (auto& grp : nd.glue)
        for (Corner& c : grp)
            if (c.vertex == u || c.vertex == v) {
                // Re-point glue bookkeeping at a surviving corner of the same
                // boundary cycle.
                int reg = cx.region_of_corner(c);
                Corner repl{INT32_MAX, INT32_MAX};
                for (const auto& cyc : cx.region(reg).boundary) {
                    bool here = false;
                    Corner least{INT32_MAX, INT32_MAX};
                    for (int dart : cyc) {
                        Corner cc = cx.dart_corner(dart);
                        if (cc == c) here = true;
                        if (cc.vertex != u && cc.vertex != v) least = std::min(least, cc);
                    }
                    if (here) repl = least;
                }
                if (repl.vertex == INT32_MAX)
                    throw MoveError("bigon removal would lose a glue group");
                c = repl;
            }

    auto strip = [&](std::vector<int>& cyc) {
        cyc.erase(std::remove_if(cyc.begin(), cyc.end(), [&](int x) { return x == u || x == v; }),
                  cyc.end());
    };
    strip(nd.alpha_curves[vu.alpha_curve]);
    strip(nd.beta_curves[vu.beta_curve]);

    // Compact vertex ids.
    std::vector<int> remap(d.vertex_count(), -1);
    int next = 0;
    for (int i = 0; i < d.vertex_count(); ++i)
        if (i != u && i != v) remap[i] = next++;
    Diagram out;
    out.vertices.reserve(next);
    for (int i = 0; i < d.vertex_count(); ++i)
        if (remap[i] != -1) out.vertices.push_back(nd.vertices[i]);
    for (auto& c : nd.alpha_curves) {
        for (int& x : c) x = remap[x];
        out.alpha_curves.push_back(c);
    }
    for (auto& c : nd.beta_curves) {
        for (int& x : c) x = remap[x];
        out.beta_curves.push_back(c);
    }
    out.z = Corner{remap[nd.z.vertex], nd.z.quadrant};
    out.w = Corner{remap[nd.w.vertex], nd.w.quadrant};
    for (auto& grp : nd.glue) {
        for (Corner& c : grp) c.vertex = remap[c.vertex];
        out.glue.push_back(grp);
    }

    // Merged regions map to one representative source region.
    CellComplex check = CellComplex::build(out);
    std::vector<int> iota = compute_iota(cx, check, -1, false);
    return finish_move(cx, std::move(out), std::move(iota), -2);
}

MoveOutcome handleslide(const Diagram& d, int slide, int over, Corner on_slide, Corner on_over) {
    CellComplex cx = CellComplex::build(d);
    int g = d.curve_count();
    if (slide < 0 || slide >= g || over < 0 || over >= g || slide == over)
        throw IllegalBand("need two distinct beta curves");
    int reg_i = cx.region_of_corner(on_slide);
    int reg_j = cx.region_of_corner(on_over);
    if (reg_i != reg_j) throw IllegalBand("band corners lie in different regions");

    // The beta edge-side flanking a corner, with the corner's region on its
    // left: one of the two darts meeting at the corner.
    auto flank_beta = [&](Corner c) {
        int dep = cx.dart_leaving(c.vertex, c.quadrant);
        int arr = CellComplex::dart_reverse(cx.dart_leaving(c.vertex, (c.quadrant + 1) % 4));
        return cx.edge(CellComplex::dart_edge(arr)).alpha ? dep : arr;
    };
    int bd_i = flank_beta(on_slide);
    int bd_j = flank_beta(on_over);
    const EdgeRec ei = cx.edge(CellComplex::dart_edge(bd_i));
    const EdgeRec ej = cx.edge(CellComplex::dart_edge(bd_j));
    if (ei.curve != slide) throw IllegalBand("slide corner is not on the slide curve");
    if (ej.curve != over) throw IllegalBand("over corner is not on the over curve");

    // The push-off copies `over` on the side the band attaches to.
    const bool push_left = CellComplex::dart_forward(bd_j);
    const auto& eta = d.beta_curves[over];
    const int L = static_cast<int>(eta.size());
    const int base = d.vertex_count();

    Diagram nd = d;
    std::vector<int> copy_ids(L);
    std::map<int, std::pair<int, bool>> alpha_ins;  // anchor vertex -> (new id, after?)
    for (int k = 0; k < L; ++k) {
        int w = eta[(ej.pos + 1 + k) % L];  // walk eta forward from the band foot
        int id = base + k;
        copy_ids[k] = id;
        int sw = d.vertices[w].sign;
        nd.vertices.push_back(VertexData{d.vertices[w].alpha_curve, slide, sw});
        bool after = push_left ? (sw == -1) : (sw == 1);
        alpha_ins[w] = {id, after};
    }
    // Splice the copy into the slide curve at the band foot.
    nd.beta_curves[slide].insert(nd.beta_curves[slide].begin() + ei.pos + 1, copy_ids.begin(),
                                 copy_ids.end());
    // Each copy vertex sits immediately before or after its source along the
    // source's alpha curve.
    for (auto& cyc : nd.alpha_curves) {
        std::vector<int> rebuilt;
        rebuilt.reserve(cyc.size() * 2);
        for (int vtx : cyc) {
            auto it = alpha_ins.find(vtx);
            if (it != alpha_ins.end() && !it->second.second) rebuilt.push_back(it->second.first);
            rebuilt.push_back(vtx);
            if (it != alpha_ins.end() && it->second.second) rebuilt.push_back(it->second.first);
        }
        cyc = std::move(rebuilt);
    }

    CellComplex check = CellComplex::build(nd);
    std::vector<int> iota = compute_iota(cx, check, -1, true);
    return finish_move(cx, std::move(nd), std::move(iota), L);
}

MoveOutcome cut_nondisk(const Diagram& d, int region) {
    CellComplex cx = CellComplex::build(d);
    if (region < 0 || region >= cx.region_count()) throw NotNonDisk("no such region");
    const RegionRec& R = cx.region(region);
    if (R.ugliness < 1) throw NotNonDisk("region has a single boundary component");
    long long ugliness_before = cx.metrics().total_ugliness;

    // Nearest bigon from each region along alpha-edge adjacency, for the
    // finger extension that reuses an existing bigon.
    const int nR = cx.region_count();
    std::vector<std::vector<std::pair<int, int>>> alpha_adj(nR);
    for (int e = 0; e < cx.edge_count(); ++e) {
        if (!cx.edge(e).alpha) continue;
        int a = cx.left_region(2 * e);
        int b = cx.left_region(2 * e + 1);
        alpha_adj[a].push_back({e, b});
        alpha_adj[b].push_back({e, a});
    }
    for (auto& v : alpha_adj) std::sort(v.begin(), v.end());
    bool any_bigon = false;
    for (int r = 0; r < nR; ++r) any_bigon = any_bigon || cx.region(r).is_bigon;

    // Shortest extension from start region to a bigon, avoiding `banned`
    // (the cut edge, which is already subdivided by the time the extension
    // runs). Returns crossing edges, or nothing when no bigon is reachable.
    auto extension = [&](int start, int banned) -> std::optional<std::vector<int>> {
        if (!any_bigon) return std::vector<int>{};
        if (cx.region(start).is_bigon) return std::vector<int>{};
        std::vector<int> par_edge(nR, -1), par_reg(nR, -1), dist(nR, -1);
        dist[start] = 0;
        std::vector<int> frontier{start};
        while (!frontier.empty()) {
            std::sort(frontier.begin(), frontier.end());
            std::vector<int> nf;
            for (int r : frontier)
                for (auto [e, s] : alpha_adj[r]) {
                    if (e == banned || dist[s] != -1) continue;
                    dist[s] = dist[r] + 1;
                    par_edge[s] = e;
                    par_reg[s] = r;
                    if (cx.region(s).is_bigon) {
                        std::vector<int> edges;
                        for (int t = s; t != start; t = par_reg[t]) edges.push_back(par_edge[t]);
                        std::reverse(edges.begin(), edges.end());
                        return edges;
                    }
                    nf.push_back(s);
                }
            frontier = std::move(nf);
        }
        return std::nullopt;
    };

    // Candidate starts: beta side on one boundary component, first crossing
    // an alpha side on a different component. Deterministic: shortest total,
    // then lowest dart ids.
    struct Plan {
        int len;
        int phi, e1;
        std::vector<int> ext;
    };
    std::optional<Plan> best;
    for (size_t ci = 0; ci < R.boundary.size(); ++ci)
        for (int phi : R.boundary[ci]) {
            if (cx.edge(CellComplex::dart_edge(phi)).alpha) continue;
            for (size_t cj = 0; cj < R.boundary.size(); ++cj) {
                if (cj == ci) continue;
                for (int e1 : R.boundary[cj]) {
                    if (!cx.edge(CellComplex::dart_edge(e1)).alpha) continue;
                    int far = cx.left_region(CellComplex::dart_reverse(e1));
                    auto ext = extension(far, CellComplex::dart_edge(e1));
                    if (!ext) continue;
                    Plan p{1 + (int)ext->size(), phi, e1, *ext};
                    if (!best || std::tie(p.len, p.phi, p.e1) < std::tie(best->len, best->phi, best->e1))
                        best = p;
                }
            }
        }
    if (!best) throw MoveError("no usable cut for this region");

    std::vector<int> crossings{best->e1};
    int cur_region = cx.left_region(CellComplex::dart_reverse(best->e1));
    for (int e : best->ext) {
        // Resolve the dart whose left region is the one the finger occupies.
        int dart = cx.left_region(2 * e) == cur_region ? 2 * e : 2 * e + 1;
        require(cx.left_region(dart) == cur_region, "cut extension left the expected region");
        crossings.push_back(dart);
        cur_region = cx.left_region(CellComplex::dart_reverse(dart));
    }

    FingerResult res = run_finger(cx, best->phi, crossings);
    MoveOutcome out = finish_move(cx, std::move(res.diagram), std::move(res.iota),
                                  2 * res.crossings);
    CellComplex after = CellComplex::build(out.diagram);
    require(after.metrics().total_ugliness == ugliness_before - 1,
            "cut must reduce total ugliness by exactly one");
    return out;
}

MoveOutcome attach_handle(const Diagram& d, int target_region) {
    CellComplex cx = CellComplex::build(d);
    if (target_region < 0 || target_region >= cx.region_count())
        throw AlreadyClose("no such region");
    if (!cx.metrics().all_disk) throw MoveError("attach_handle requires an all-disk diagram");
    const int dist = cx.region(target_region).distance;
    if (dist <= 1) throw AlreadyClose("target region already has distance <= 1");

    auto path = cx.heegaard_path(target_region);
    require((int)path.size() == dist, "Heegaard path length must equal the distance");

    Diagram nd = d;
    const int base = d.vertex_count();
    const int g = d.curve_count();
    // u_i rides the i-th crossed beta edge; u_{d+1} is the meridian crossing.
    std::map<int, std::vector<std::pair<int, int>>> per_curve;  // curve -> (pos, id)
    for (int i = 0; i < dist; ++i) {
        const EdgeRec& e = cx.edge(path[i].edge);
        int id = base + i;
        // Crossing direction is out of the region on the path dart's left.
        int sign = CellComplex::dart_forward(path[i].from_dart) ? 1 : -1;
        nd.vertices.push_back(VertexData{g, e.curve, sign});
        per_curve[e.curve].push_back({e.pos, id});
    }
    nd.vertices.push_back(VertexData{g, g, 1});
    for (auto& [curve, v] : per_curve) {
        std::sort(v.rbegin(), v.rend());
        for (auto [pos, id] : v)
            nd.beta_curves[curve].insert(nd.beta_curves[curve].begin() + pos + 1, id);
    }
    std::vector<int> new_alpha;
    for (int i = 0; i < dist; ++i) new_alpha.push_back(base + i);
    new_alpha.push_back(base + dist);
    nd.alpha_curves.push_back(std::move(new_alpha));
    nd.beta_curves.push_back({base + dist});

    CellComplex after = CellComplex::build(nd);
    std::vector<int> iota = compute_iota(cx, after, -1, true);

    // Theorem postconditions, asserted on every call.
    require(after.metrics().genus == cx.metrics().genus + 1, "handle must raise genus by one");
    int rstar_new = -1;
    for (int r = 0; r < after.region_count(); ++r)
        if (iota[r] == target_region) {
            require(rstar_new == -1, "target region split by handle attachment");
            rstar_new = r;
        }
    require(rstar_new != -1 && after.region(rstar_new).distance == 1,
            "handle must bring the target to distance 1");
    std::map<int, long long> fiber_badness;
    for (int r = 0; r < after.region_count(); ++r) {
        require(after.region(r).distance <= cx.region(iota[r]).distance,
                "handle must not raise any region's distance");
        fiber_badness[iota[r]] += after.region(r).badness;
    }
    for (int r = 0; r < cx.region_count(); ++r) {
        if (r == target_region || r == cx.z_region()) continue;
        require(fiber_badness[r] == cx.region(r).badness,
                "handle must preserve badness fiberwise away from target and Z");
    }
    require(after.metrics().total_badness == cx.metrics().total_badness + 2,
            "handle must raise total badness by exactly two");
    auto badness_above_1 = [](const CellComplex& c) {
        long long b = 0;
        for (const auto& [dd, bb] : c.metrics().badness_at_distance)
            if (dd > 1) b += bb;
        return b;
    };
    require(badness_above_1(after) < badness_above_1(cx),
            "handle must strictly lower badness beyond distance 1");

    return finish_move(cx, std::move(nd), std::move(iota), dist + 1);
}

MoveOutcome stabilize(const Diagram& d, int region) {
    CellComplex cx = CellComplex::build(d);
    if (region < 0 || region >= cx.region_count()) throw MoveError("no such region");
    Diagram nd = d;
    const int u = d.vertex_count();
    const int g = d.curve_count();
    nd.vertices.push_back(VertexData{g, g, 1});
    nd.alpha_curves.push_back({u});
    nd.beta_curves.push_back({u});
    nd.glue.push_back({smallest_corner(cx.region(region)), Corner{u, 0}});

    CellComplex after = CellComplex::build(nd);
    require(after.metrics().genus == cx.metrics().genus + 1, "stabilization must raise genus");
    std::vector<int> iota = compute_iota(cx, after, -1, false);
    return finish_move(cx, std::move(nd), std::move(iota), 1);
}

}  // namespace hfk
