// Development helper that searches small diagrams for the shapes the test
// fixtures need. Fixture files in fixtures/ record which invocation produced
// them; regenerating is deterministic.

#include <algorithm>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hfk/cell_complex.hpp"
#include "hfk/homology.hpp"
#include "hfk/moves.hpp"
#include "hfk/nicefy.hpp"

using namespace hfk;

namespace {

std::string profile_of(const CellComplex& cx) {
    std::vector<std::string> parts;
    for (const auto& r : cx.regions()) {
        std::string p = std::to_string(r.side_count);
        if (!r.is_disk) p += "(" + std::to_string(r.boundary_components) + "c)";
        parts.push_back(p);
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += p + " ";
    return out;
}

// All genus-1 diagrams with V vertices: alpha fixed as 0..V-1, beta runs over
// cyclic orders starting at 0, signs over all patterns.
void enumerate_genus1(int V, const std::function<void(const Diagram&)>& visit) {
    std::vector<int> beta(V);
    std::iota(beta.begin(), beta.end(), 0);
    std::vector<int> rest(beta.begin() + 1, beta.end());
    std::sort(rest.begin(), rest.end());
    do {
        std::vector<int> b{0};
        b.insert(b.end(), rest.begin(), rest.end());
        for (int mask = 0; mask < (1 << V); ++mask) {
            Diagram d;
            d.vertices.resize(V);
            for (int i = 0; i < V; ++i) d.vertices[i] = VertexData{0, 0, (mask >> i) & 1 ? 1 : -1};
            std::vector<int> a(V);
            std::iota(a.begin(), a.end(), 0);
            d.alpha_curves = {a};
            d.beta_curves = {b};
            d.z = Corner{0, 0};
            d.w = Corner{0, 1};
            visit(d);
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
}

int cmd_enum1(int V) {
    std::map<std::string, std::pair<int, std::string>> profiles;
    int valid = 0;
    enumerate_genus1(V, [&](const Diagram& d) {
        try {
            CellComplex cx = CellComplex::build(d);
            ++valid;
            std::string key = profile_of(cx);
            if (!profiles.count(key)) profiles[key] = {0, serialize_hd(d)};
            profiles[key].first++;
        } catch (const MalformedDiagram&) {
        }
    });
    std::cout << valid << " valid diagrams\n";
    for (const auto& [key, v] : profiles) {
        std::cout << "profile [" << key << "] x" << v.first << "\n";
        std::cout << v.second << "\n";
    }
    return 0;
}

int cmd_probe_u1() {
    Diagram u1;
    u1.vertices = {VertexData{0, 0, 1}};
    u1.alpha_curves = {{0}};
    u1.beta_curves = {{0}};
    u1.z = Corner{0, 0};
    u1.w = Corner{0, 2};
    // beta edge 1 (edge ids: alpha edge 0, beta edge 1), darts 2,3; alpha darts 0,1.
    for (int bd : {2, 3})
        for (int ad : {0, 1}) {
            try {
                MoveOutcome out = push_finger(u1, bd, {ad});
                CellComplex cx = CellComplex::build(out.diagram);
                std::cout << "push bd=" << bd << " ad=" << ad << " -> [" << profile_of(cx)
                          << "]\n"
                          << serialize_hd(out.diagram) << "\n";
            } catch (const Error& e) {
                std::cout << "push bd=" << bd << " ad=" << ad << " FAILED: " << e.what() << "\n";
            }
        }
    return 0;
}

// Scan anchor placements of a genus-1 nice diagram and report the HFK table
// for each inequivalent (Z, W) region pair.
int cmd_hfk_anchors(const std::string& path) {
    Diagram d = load_hd(path);
    CellComplex cx = CellComplex::build(d);
    std::set<std::pair<int, int>> seen;
    for (int zr = 0; zr < cx.region_count(); ++zr)
        for (int wr = 0; wr < cx.region_count(); ++wr) {
            Diagram dd = d;
            Corner zc, wc;
            for (int v = 0; v < d.vertex_count() && (zc.vertex == -1 || wc.vertex == -1); ++v)
                for (int q = 0; q < 4; ++q) {
                    Corner c{v, q};
                    if (zc.vertex == -1 && cx.region_of_corner(c) == zr) zc = c;
                    if (wc.vertex == -1 && cx.region_of_corner(c) == wr) wc = c;
                }
            if (zc.vertex == -1 || wc.vertex == -1) continue;
            dd.z = zc;
            dd.w = wc;
            try {
                auto [nice, rep] = nicefy(dd);
                HfkResult res = compute_hfk(nice);
                std::ostringstream key;
                key << res.to_table();
                std::cout << "z in r" << zr << " w in r" << wr << " anchors z=(" << zc.vertex
                          << "," << zc.quadrant << ") w=(" << wc.vertex << "," << wc.quadrant
                          << ")\n"
                          << key.str() << "\n";
            } catch (const Error& e) {
                std::cout << "z r" << zr << " w r" << wr << ": " << e.what() << "\n";
            }
        }
    return 0;
}

// Exhaustive scan of nice genus-1 diagrams with V vertices: prints the HFK
// table, differential arrow count and Euler polynomial per anchor placement.
int cmd_find_nice_knots(int V, bool nice_only) {
    std::set<std::string> seen;
    long long n_valid = 0, n_nice = 0, n_s3 = 0;
    enumerate_genus1(V, [&](const Diagram& d0) {
        std::optional<CellComplex> built;
        try {
            built = CellComplex::build(d0);
        } catch (const MalformedDiagram&) {
            return;
        }
        ++n_valid;
        const CellComplex& cx0 = *built;
        for (int zr = 0; zr < cx0.region_count(); ++zr) {
            for (int wr = 0; wr < cx0.region_count(); ++wr) {
                Diagram d = d0;
                Corner zc{-1, -1}, wc{-1, -1};
                for (int v = 0; v < V; ++v)
                    for (int q = 0; q < 4; ++q) {
                        Corner c{v, q};
                        if (zc.vertex == -1 && cx0.region_of_corner(c) == zr) zc = c;
                        if (wc.vertex == -1 && cx0.region_of_corner(c) == wr) wc = c;
                    }
                d.z = zc;
                d.w = wc;
                CellComplex cx = CellComplex::build(d);
                bool is_nice = cx.metrics().nice && cx.metrics().all_disk;
                if (is_nice) ++n_nice;
                if (nice_only && !is_nice) continue;
                try {
                    HfkResult res;
                    int v_nice = V;
                    if (is_nice) {
                        res = compute_hfk(d);
                    } else {
                        auto [nice_diag, rep] = nicefy(d);
                        res = compute_hfk(nice_diag);
                        v_nice = CellComplex::build(nice_diag).metrics().vertex_count;
                    }
                    ++n_s3;
                    std::ostringstream key;
                    key << "rank=" << res.total_rank() << " euler:";
                    for (const auto& [p, c] : res.normalized_symmetric().euler())
                        key << " " << c << "t^" << p;
                    if (seen.insert(key.str()).second) {
                        std::cout << key.str() << "  (v_nice=" << v_nice << ")\n"
                                  << serialize_hd(d) << "\n";
                    }
                } catch (const Error&) {
                }
            }
        }
    });
    std::cout << "valid=" << n_valid << " nice-anchored=" << n_nice << " s3=" << n_s3 << "\n";
    return 0;
}

// Scan all-disk genus-1 diagrams whose graded Euler characteristic matches
// the given pattern (cheap Alexander-polynomial filter), then confirm the
// rank table through the full pipeline.
int cmd_find_by_euler(int V, const std::string& spec) {
    // spec: "a:c,a:c,...", matched up to shift and overall sign.
    std::map<long long, long long> target;
    {
        std::istringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto colon = tok.find(':');
            target[std::stoll(tok.substr(0, colon))] = std::stoll(tok.substr(colon + 1));
        }
    }
    auto normalize = [](std::map<long long, long long> chi) {
        if (chi.empty()) return chi;
        long long lo = chi.begin()->first, hi = chi.rbegin()->first;
        long long shift = (lo + hi) / 2;
        std::map<long long, long long> out;
        for (auto& [a, c] : chi) out[a - shift] = c;
        if (out.begin()->second < 0)
            for (auto& [a, c] : out) c = -c;
        return out;
    };
    std::map<long long, long long> want = normalize(target);

    int found = 0;
    enumerate_genus1(V, [&](const Diagram& d0) {
        if (found >= 3) return;
        std::optional<CellComplex> built;
        try {
            built = CellComplex::build(d0);
        } catch (const MalformedDiagram&) {
            return;
        }
        const CellComplex& cx = *built;
        if (!cx.metrics().all_disk) return;
        for (int zr = 0; zr < cx.region_count() && found < 3; ++zr) {
            Diagram d = d0;
            for (int v = 0; v < V && d.z.vertex == -1; ++v)
                for (int q = 0; q < 4; ++q)
                    if (cx.region_of_corner(Corner{v, q}) == zr) {
                        d.z = Corner{v, q};
                        break;
                    }
            d.z = d.z.vertex == -1 ? Corner{0, 0} : d.z;
            // recompute: need z film region == zr
            {
                bool ok = false;
                for (int v = 0; v < V && !ok; ++v)
                    for (int q = 0; q < 4; ++q)
                        if (cx.region_of_corner(Corner{v, q}) == zr) {
                            d.z = Corner{v, q};
                            ok = true;
                            break;
                        }
                if (!ok) continue;
            }
            d.w = d.z;
            std::optional<ConnectionSolver> solver;
            std::vector<Generator> gens;
            std::vector<Domain> doms;
            try {
                solver = ConnectionSolver::build(d, /*require_nice=*/false);
                auto matchings = enumerate_matchings(cx);
                std::sort(matchings.begin(), matchings.end());
                const auto& base = matchings.front();
                for (const auto& x : matchings) {
                    auto D = solver->domain_between(x, base);
                    if (!D) throw SingularSystem("not S^3");
                    Rational mu = solver->euler_of(*D);
                    for (int v : x) mu += solver->point_measure(*D, v);
                    for (int v : base) mu += solver->point_measure(*D, v);
                    if (!is_integer(mu)) throw NonIntegralGrading("bad mu");
                    Generator g;
                    g.points = x;
                    g.rel_maslov = (long long)numerator(mu);
                    gens.push_back(g);
                    doms.push_back(*D);
                }
            } catch (const Error&) {
                continue;
            }
            for (int wr = 0; wr < cx.region_count() && found < 3; ++wr) {
                std::map<long long, long long> chi;
                for (size_t i = 0; i < gens.size(); ++i) {
                    long long a = wr == zr ? 0 : (long long)doms[i].coeff[wr];
                    chi[a] += (((gens[i].rel_maslov % 2) + 2) % 2 == 0) ? 1 : -1;
                }
                std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
                if (normalize(chi) != want) continue;
                // Confirm through the pipeline.
                Diagram dd = d;
                bool ok = false;
                for (int v = 0; v < V && !ok; ++v)
                    for (int q = 0; q < 4; ++q)
                        if (cx.region_of_corner(Corner{v, q}) == wr) {
                            dd.w = Corner{v, q};
                            ok = true;
                            break;
                        }
                if (!ok) continue;
                try {
                    auto [nice_diag, rep] = nicefy(dd);
                    HfkResult res = compute_hfk(nice_diag);
                    std::cout << "euler match, rank=" << res.total_rank() << " v_nice="
                              << CellComplex::build(nice_diag).metrics().vertex_count << "\n"
                              << res.to_table() << serialize_hd(dd) << "\n";
                    ++found;
                } catch (const Error& e) {
                    std::cout << "candidate failed pipeline: " << e.what() << "\n"
                              << serialize_hd(dd) << "\n";
                    ++found;
                }
            }
        }
    });
    std::cout << "matches printed: " << found << "\n";
    return 0;
}

int cmd_swprobe(const std::string& path, const std::string& mode) {
    Diagram d = load_hd(path);
    for (int step = 0; step < 50; ++step) {
        CellComplex cx = CellComplex::build(d);
        if (cx.metrics().total_badness == 0) {
            std::cout << "nice after " << step << " steps\n";
            return 0;
        }
        int lvl = cx.metrics().distance;
        std::cout << "== step " << step << " at level " << lvl << ", c_d = (";
        for (long long e : cx.complexity_at(lvl).entries) std::cout << e << " ";
        std::cout << ")\n";
        {
            // Show the boundary of the region sw_step will choose.
            int D = -1;
            for (int r = 0; r < cx.region_count(); ++r) {
                if (r == cx.z_region()) continue;
                const RegionRec& reg = cx.region(r);
                if (!reg.is_bad || reg.distance != lvl) continue;
                if (D == -1 || reg.badness < cx.region(D).badness) D = r;
            }
            if (D != -1) {
                std::cout << "   dD (r" << D << "):";
                for (int dart : cx.region(D).boundary[0]) {
                    const EdgeRec& e = cx.edge(CellComplex::dart_edge(dart));
                    std::cout << " " << (e.alpha ? "a" : "b") << CellComplex::dart_edge(dart)
                              << (CellComplex::dart_forward(dart) ? "+" : "-") << "[far r"
                              << cx.left_region(CellComplex::dart_reverse(dart)) << " d"
                              << cx.region(cx.left_region(CellComplex::dart_reverse(dart))).distance
                              << "]";
                }
                std::cout << "\n";
            }
        }
        try {
            SwStepResult res = sw_step(d, sw_mode_from_string(mode));
            std::cout << "   D=r" << res.log.region << " D*=r" << res.log.dstar << " phi=e"
                      << res.log.phi_edge << " case=" << res.log.case_taken << "\n";
            d = res.diagram;
        } catch (const Error& e) {
            std::cout << "   FAILED: " << e.what() << "\n";
            // show state
            for (int r = 0; r < cx.region_count(); ++r) {
                const RegionRec& reg = cx.region(r);
                std::cout << "   r" << r << ": sides=" << reg.side_count
                          << " badness=" << reg.badness << " dist=" << reg.distance
                          << (r == cx.z_region() ? " [Z]" : "") << "\n";
            }
            return 1;
        }
    }
    return 0;
}

int cmd_regions(const std::string& path) {
    CellComplex cx = CellComplex::build(load_hd(path));
    const MetricsSnapshot& m = cx.metrics();
    std::cout << "g=" << m.genus << " v=" << m.vertex_count << " rho=" << m.region_count
              << " B=" << m.bigon_count << " b=" << m.total_badness << " b_z=" << m.z_badness
              << " d=" << m.distance << " nice=" << m.nice << " all_disk=" << m.all_disk << "\n";
    for (int r = 0; r < cx.region_count(); ++r) {
        const RegionRec& reg = cx.region(r);
        std::cout << "r" << r << ": sides=" << reg.side_count << " comps="
                  << reg.boundary_components << " badness=" << reg.badness
                  << " dist=" << reg.distance << " e=" << reg.euler_measure
                  << (r == cx.z_region() ? " [Z]" : "") << (r == cx.w_region() ? " [W]" : "")
                  << " corners:";
        for (const Corner& c : reg.corners) std::cout << " (" << c.vertex << "," << c.quadrant << ")";
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixture search helper"};
    app.require_subcommand(1);
    int V = 3;
    std::string path;
    auto* e1 = app.add_subcommand("enum1", "enumerate genus-1 diagrams with V vertices");
    e1->add_option("V", V)->required();
    auto* pu = app.add_subcommand("probe-u1-push", "push a length-1 finger on U1 all ways");
    auto* ha = app.add_subcommand("hfk-anchors", "HFK per anchor placement of a .hd file");
    ha->add_option("path", path)->required();
    auto* rg = app.add_subcommand("regions", "dump derived regions of a .hd file");
    rg->add_option("path", path)->required();
    std::string sw_mode_str = "modified";
    auto* sp = app.add_subcommand("swprobe", "run sw steps verbosely");
    sp->add_option("path", path)->required();
    sp->add_option("--mode", sw_mode_str);
    int knotV = 5;
    auto* fk = app.add_subcommand("find-nice-knots", "scan nice genus-1 diagrams for knots");
    fk->add_option("V", knotV)->required();
    bool nice_only = false;
    fk->add_flag("--nice-only", nice_only, "skip anchorings that are not already nice");
    std::string euler_spec;
    int eulerV = 7;
    auto* fe = app.add_subcommand("find-by-euler", "find genus-1 diagrams by Euler characteristic");
    fe->add_option("V", eulerV)->required();
    fe->add_option("spec", euler_spec, "a:c,a:c,... matched up to shift and sign")->required();
    CLI11_PARSE(app, argc, argv);
    try {
        if (e1->parsed()) return cmd_enum1(V);
        if (pu->parsed()) return cmd_probe_u1();
        if (ha->parsed()) return cmd_hfk_anchors(path);
        if (rg->parsed()) return cmd_regions(path);
        if (sp->parsed()) return cmd_swprobe(path, sw_mode_str);
        if (fk->parsed()) return cmd_find_nice_knots(knotV, nice_only);
        if (fe->parsed()) return cmd_find_by_euler(eulerV, euler_spec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
