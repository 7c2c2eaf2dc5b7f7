#include "hfk/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace hfk {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::string no_comment = line.substr(0, line.find('#'));
    // Colons separate the curve index from the vertex list; treat as blank.
    std::replace(no_comment.begin(), no_comment.end(), ':', ' ');
    std::istringstream ss(no_comment);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, std::string("expected ") + what + ", got '" + tok + "'");
    }
}

}  // namespace

Diagram parse_hd(std::istream& in) {
    std::string line;
    int line_no = 0;
    bool saw_header = false;

    std::map<int, std::pair<std::vector<int>, int>> alphas;  // k -> (cycle, line)
    std::map<int, std::pair<std::vector<int>, int>> betas;
    std::map<int, std::pair<int, int>> signs;  // vid -> (sign, line)
    bool saw_z = false, saw_w = false;
    Corner z, w;
    std::vector<std::vector<Corner>> glue;

    auto parse_curve_line = [&](const std::vector<std::string>& toks,
                                std::map<int, std::pair<std::vector<int>, int>>& dst,
                                const char* kind) {
        int k = parse_int(toks[1], line_no, "curve index");
        if (k < 0) throw ParseError(line_no, "negative curve index");
        if (dst.count(k))
            throw ParseError(line_no, std::string(kind) + " " + std::to_string(k) +
                                          " already defined at line " +
                                          std::to_string(dst[k].second));
        std::vector<int> cyc;
        for (size_t i = 2; i < toks.size(); ++i) {
            int vid = parse_int(toks[i], line_no, "vertex id");
            if (vid < 0) throw ParseError(line_no, "negative vertex id");
            cyc.push_back(vid);
        }
        if (cyc.empty())
            throw ParseError(line_no, std::string(kind) +
                                          " curve has no intersections (length >= 1 required)");
        dst[k] = {cyc, line_no};
    };

    auto parse_corner = [&](const std::vector<std::string>& toks, size_t at) -> Corner {
        int vid = parse_int(toks[at], line_no, "vertex id");
        int q = parse_int(toks[at + 1], line_no, "quadrant");
        if (q < 0 || q > 3) throw ParseError(line_no, "quadrant must be 0..3");
        return Corner{vid, q};
    };

    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (!saw_header) {
            if (toks.size() == 2 && toks[0] == "heegaard" && toks[1] == "v1") {
                saw_header = true;
                continue;
            }
            throw ParseError(line_no, "expected header 'heegaard v1'");
        }
        const std::string& kw = toks[0];
        if (kw == "alpha" || kw == "beta") {
            if (toks.size() < 3) throw ParseError(line_no, kw + " line needs an index and vertices");
            parse_curve_line(toks, kw == "alpha" ? alphas : betas, kw.c_str());
        } else if (kw == "sign") {
            if (toks.size() != 3) throw ParseError(line_no, "sign line: sign <vid> +|-");
            int vid = parse_int(toks[1], line_no, "vertex id");
            int s;
            if (toks[2] == "+") s = 1;
            else if (toks[2] == "-") s = -1;
            else throw ParseError(line_no, "sign must be + or -");
            if (signs.count(vid))
                throw ParseError(line_no, "vertex " + std::to_string(vid) +
                                              " already has a sign at line " +
                                              std::to_string(signs[vid].second));
            signs[vid] = {s, line_no};
        } else if (kw == "z" || kw == "w") {
            if (toks.size() != 3) throw ParseError(line_no, kw + " line: " + kw + " <vid> <quadrant>");
            Corner c = parse_corner(toks, 1);
            if (kw == "z") {
                if (saw_z) throw ParseError(line_no, "duplicate z anchor");
                z = c;
                saw_z = true;
            } else {
                if (saw_w) throw ParseError(line_no, "duplicate w anchor");
                w = c;
                saw_w = true;
            }
        } else if (kw == "glue") {
            if (toks.size() < 5 || (toks.size() - 1) % 2 != 0)
                throw ParseError(line_no, "glue line: glue <vid> <q> <vid> <q> [...]");
            std::vector<Corner> group;
            for (size_t i = 1; i + 1 < toks.size(); i += 2) group.push_back(parse_corner(toks, i));
            glue.push_back(std::move(group));
        } else {
            throw ParseError(line_no, "unknown directive '" + kw + "'");
        }
    }
    if (!saw_header) throw ParseError(line_no ? line_no : 1, "empty input, expected 'heegaard v1'");
    if (!saw_z) throw ParseError(line_no, "missing z anchor");
    if (!saw_w) throw ParseError(line_no, "missing w anchor");
    if (alphas.empty()) throw ParseError(line_no, "no alpha curves");
    if (alphas.size() != betas.size())
        throw ParseError(line_no, "need equally many alpha and beta curves");

    auto check_dense = [&](const std::map<int, std::pair<std::vector<int>, int>>& m,
                           const char* kind) {
        int expect = 0;
        for (const auto& [k, v] : m) {
            if (k != expect)
                throw ParseError(v.second, std::string(kind) + " indices must be 0..g-1 without gaps");
            ++expect;
        }
    };
    check_dense(alphas, "alpha");
    check_dense(betas, "beta");

    // Vertex ids must be dense 0..V-1.
    int max_vid = -1;
    for (const auto& [k, v] : alphas)
        for (int vid : v.first) max_vid = std::max(max_vid, vid);
    for (const auto& [k, v] : betas)
        for (int vid : v.first) max_vid = std::max(max_vid, vid);
    int V = max_vid + 1;

    Diagram d;
    d.vertices.assign(V, VertexData{});
    for (auto& [k, v] : alphas) d.alpha_curves.push_back(std::move(v.first));
    for (auto& [k, v] : betas) d.beta_curves.push_back(std::move(v.first));
    d.z = z;
    d.w = w;
    d.glue = std::move(glue);

    std::vector<int> alpha_of(V, -1), beta_of(V, -1);
    for (int c = 0; c < (int)d.alpha_curves.size(); ++c)
        for (int vid : d.alpha_curves[c]) {
            if (alpha_of[vid] != -1)
                throw ParseError(0, "vertex " + std::to_string(vid) +
                                        " appears on more than one alpha curve or twice on one");
            alpha_of[vid] = c;
        }
    for (int c = 0; c < (int)d.beta_curves.size(); ++c)
        for (int vid : d.beta_curves[c]) {
            if (beta_of[vid] != -1)
                throw ParseError(0, "vertex " + std::to_string(vid) +
                                        " appears on more than one beta curve or twice on one");
            beta_of[vid] = c;
        }
    for (int vid = 0; vid < V; ++vid) {
        if (alpha_of[vid] == -1)
            throw ParseError(0, "vertex " + std::to_string(vid) + " is on no alpha curve");
        if (beta_of[vid] == -1)
            throw ParseError(0, "vertex " + std::to_string(vid) + " is on no beta curve");
        auto it = signs.find(vid);
        if (it == signs.end())
            throw ParseError(0, "vertex " + std::to_string(vid) + " has no sign line");
        d.vertices[vid] = VertexData{alpha_of[vid], beta_of[vid], it->second.first};
    }
    for (const auto& [vid, sl] : signs)
        if (vid >= V) throw ParseError(sl.second, "sign for unknown vertex " + std::to_string(vid));

    auto check_anchor = [&](const Corner& c, const char* name) {
        if (c.vertex < 0 || c.vertex >= V)
            throw ParseError(0, std::string(name) + " anchor references unknown vertex");
    };
    check_anchor(d.z, "z");
    check_anchor(d.w, "w");
    for (const auto& g : d.glue)
        for (const Corner& c : g)
            if (c.vertex < 0 || c.vertex >= V)
                throw ParseError(0, "glue corner references unknown vertex");

    return d;
}

Diagram parse_hd_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_hd(ss);
}

Diagram load_hd(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    return parse_hd(f);
}

namespace {

std::vector<int> rotate_to_min(const std::vector<int>& cyc) {
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::vector<int> out(it, cyc.end());
    out.insert(out.end(), cyc.begin(), it);
    return out;
}

}  // namespace

Diagram canonicalized(const Diagram& d) {
    int V = d.vertex_count();
    // New ids in first-use order over alpha curves, each rotated to its
    // smallest original vertex first.
    std::vector<std::vector<int>> rotated_alphas;
    for (const auto& c : d.alpha_curves) rotated_alphas.push_back(rotate_to_min(c));
    std::vector<int> remap(V, -1);
    int next = 0;
    for (const auto& c : rotated_alphas)
        for (int vid : c)
            if (remap[vid] == -1) remap[vid] = next++;

    Diagram out;
    out.vertices.assign(V, VertexData{});
    for (int vid = 0; vid < V; ++vid) out.vertices[remap[vid]] = d.vertices[vid];
    for (const auto& c : rotated_alphas) {
        std::vector<int> nc;
        for (int vid : c) nc.push_back(remap[vid]);
        out.alpha_curves.push_back(std::move(nc));
    }
    for (const auto& c : d.beta_curves) {
        std::vector<int> nc;
        for (int vid : c) nc.push_back(remap[vid]);
        out.beta_curves.push_back(rotate_to_min(nc));
    }
    out.z = Corner{remap[d.z.vertex], d.z.quadrant};
    out.w = Corner{remap[d.w.vertex], d.w.quadrant};
    for (const auto& g : d.glue) {
        std::vector<Corner> ng;
        for (const Corner& c : g) ng.push_back(Corner{remap[c.vertex], c.quadrant});
        std::sort(ng.begin(), ng.end());
        out.glue.push_back(std::move(ng));
    }
    std::sort(out.glue.begin(), out.glue.end());
    return out;
}

std::string serialize_hd(const Diagram& d0, const std::vector<std::string>& comments) {
    Diagram d = canonicalized(d0);
    std::ostringstream out;
    out << "heegaard v1\n";
    for (const auto& c : comments) out << "# " << c << "\n";
    for (int k = 0; k < (int)d.alpha_curves.size(); ++k) {
        out << "alpha " << k << ":";
        for (int vid : d.alpha_curves[k]) out << " " << vid;
        out << "\n";
    }
    for (int k = 0; k < (int)d.beta_curves.size(); ++k) {
        out << "beta " << k << ":";
        for (int vid : d.beta_curves[k]) out << " " << vid;
        out << "\n";
    }
    for (int vid = 0; vid < d.vertex_count(); ++vid)
        out << "sign " << vid << " " << (d.vertices[vid].sign > 0 ? "+" : "-") << "\n";
    out << "z " << d.z.vertex << " " << d.z.quadrant << "\n";
    out << "w " << d.w.vertex << " " << d.w.quadrant << "\n";
    for (const auto& g : d.glue) {
        out << "glue";
        for (const Corner& c : g) out << " " << c.vertex << " " << c.quadrant;
        out << "\n";
    }
    return out.str();
}

void save_hd(const Diagram& d, const std::string& path, const std::vector<std::string>& comments) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << serialize_hd(d, comments);
}

}  // namespace hfk
