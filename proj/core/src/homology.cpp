#include "hfk/homology.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hfk {

namespace {

// Exact Gauss-Jordan inverse; nullopt when singular.
std::optional<std::vector<std::vector<Rational>>> invert(std::vector<std::vector<Rational>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv == -1) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational lead = a[col][col];
        for (int c = 0; c < n; ++c) {
            a[col][c] /= lead;
            inv[col][c] /= lead;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational factor = a[r][col];
            for (int c = 0; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    return inv;
}

long long f2_rank(std::vector<std::vector<char>> m) {
    long long rank = 0;
    size_t rows = m.size();
    if (rows == 0) return 0;
    size_t cols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && !m[piv][col]) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        for (size_t r = 0; r < rows; ++r)
            if (r != row && m[r][col])
                for (size_t c = col; c < cols; ++c) m[r][c] ^= m[row][c];
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace

std::vector<std::vector<int>> enumerate_matchings(const CellComplex& cx) {
    const Diagram& d = cx.diagram();
    const int g = d.curve_count();
    std::vector<std::vector<int>> per_alpha(g);
    for (int c = 0; c < g; ++c) {
        per_alpha[c] = d.alpha_curves[c];
        std::sort(per_alpha[c].begin(), per_alpha[c].end());
    }
    std::vector<std::vector<int>> out;
    std::vector<int> pick(g, -1);
    std::vector<char> beta_used(g, 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == g) {
            out.push_back(pick);
            return;
        }
        for (int v : per_alpha[i]) {
            int b = d.vertices[v].beta_curve;
            if (beta_used[b]) continue;
            beta_used[b] = 1;
            pick[i] = v;
            self(self, i + 1);
            beta_used[b] = 0;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

ConnectionSolver ConnectionSolver::build(const Diagram& d, bool require_nice) {
    CellComplex cx = CellComplex::build(d);
    const MetricsSnapshot& m = cx.metrics();
    if (!m.all_disk || (require_nice && !m.nice))
        throw Error("connection solver needs a nice, all-disk diagram");

    ConnectionSolver s(std::move(cx));
    const CellComplex& c = s.cx_;
    const int nu = c.diagram().vertex_count();
    const int rho = c.region_count();
    const int g = c.diagram().curve_count();
    s.nu_ = nu;
    require(nu == rho + 2 * g - 2, "dimension count nu = rho + 2g - 2 failed");

    s.region_col_.assign(rho, -1);
    for (int r = 0; r < rho; ++r) {
        if (r == c.z_region()) continue;
        s.region_col_.at(r) = static_cast<int>(s.col_region_.size());
        s.col_region_.push_back(r);
    }
    s.region_cols_ = static_cast<int>(s.col_region_.size());

    // g-matrix columns: f1 on the non-Z regions, then f2 on the alpha curves
    // and all beta curves but the last.
    std::vector<std::vector<Rational>> G(nu, std::vector<Rational>(nu, 0));
    for (int col = 0; col < s.region_cols_; ++col) {
        const RegionRec& reg = c.region(s.col_region_[col]);
        for (const auto& cyc : reg.boundary)
            for (int dart : cyc) {
                if (!c.edge(CellComplex::dart_edge(dart)).alpha) continue;
                G[c.dart_target(dart)][col] += 1;
                G[c.dart_origin(dart)][col] -= 1;
            }
    }
    int col = s.region_cols_;
    auto curve_col = [&](const std::vector<int>& curve) {
        for (int v : curve) G[v][col] += 1;
        ++col;
    };
    for (int a = 0; a < g; ++a) curve_col(c.diagram().alpha_curves[a]);
    for (int b = 0; b + 1 < g; ++b) curve_col(c.diagram().beta_curves[b]);
    require(col == nu, "g-matrix has the wrong number of columns");

    // Im(f1) and Im(f2) are orthogonal under the standard inner product.
    for (int rc = 0; rc < s.region_cols_; ++rc)
        for (int cc = s.region_cols_; cc < nu; ++cc) {
            Rational dot = 0;
            for (int v = 0; v < nu; ++v) dot += G[v][rc] * G[v][cc];
            require(dot == 0, "Im(f1) not orthogonal to Im(f2)");
        }

    auto inv = invert(G);
    if (!inv)
        throw SingularSystem(
            "connection map is singular; the diagram does not present a knot in S^3");
    s.h_ = std::move(*inv);
    return s;
}

std::optional<Domain> ConnectionSolver::domain_between(const std::vector<int>& x,
                                                       const std::vector<int>& y) const {
    std::vector<Rational> vec(nu_, 0);
    for (int v : y) vec[v] += 1;
    for (int v : x) vec[v] -= 1;
    std::vector<Rational> u(nu_, 0);
    for (int r = 0; r < nu_; ++r) {
        Rational acc = 0;
        for (int c = 0; c < nu_; ++c)
            if (vec[c] != 0) acc += h_[r][c] * vec[c];
        u[r] = acc;
    }
    for (int r = region_cols_; r < nu_; ++r)
        if (u[r] != 0) return std::nullopt;  // h2 component obstructs
    Domain D;
    D.coeff.assign(cx_.region_count(), 0);
    for (int r = 0; r < region_cols_; ++r) {
        if (!is_integer(u[r])) return std::nullopt;
        D.coeff[col_region_[r]] = numerator(u[r]);
    }
    // Re-verify del(del_alpha D) = y - x directly on the complex.
    std::vector<BigInt> chain(nu_, 0);
    for (int r = 0; r < cx_.region_count(); ++r) {
        if (D.coeff[r] == 0) continue;
        for (const auto& cyc : cx_.region(r).boundary)
            for (int dart : cyc) {
                if (!cx_.edge(CellComplex::dart_edge(dart)).alpha) continue;
                chain[cx_.dart_target(dart)] += D.coeff[r];
                chain[cx_.dart_origin(dart)] -= D.coeff[r];
            }
    }
    std::vector<BigInt> want(nu_, 0);
    for (int v : y) want[v] += 1;
    for (int v : x) want[v] -= 1;
    require(chain == want, "solver domain fails del(del_alpha D) = y - x");
    return D;
}

Rational ConnectionSolver::euler_of(const Domain& D) const {
    Rational e = 0;
    for (int r = 0; r < cx_.region_count(); ++r)
        if (D.coeff[r] != 0) e += Rational(D.coeff[r]) * cx_.region(r).euler_measure;
    return e;
}

Rational ConnectionSolver::point_measure(const Domain& D, int vertex) const {
    Rational acc = 0;
    for (int q = 0; q < 4; ++q)
        acc += Rational(D.coeff[cx_.region_of_corner(Corner{vertex, q})]);
    return acc / 4;
}

std::optional<Rational> ConnectionSolver::maslov(const std::vector<int>& x,
                                                 const std::vector<int>& y) const {
    auto D = domain_between(x, y);
    if (!D) return std::nullopt;
    Rational mu = euler_of(*D);
    for (int v : x) mu += point_measure(*D, v);
    for (int v : y) mu += point_measure(*D, v);
    return mu;
}

std::vector<Generator> relative_gradings(const ConnectionSolver& solver,
                                         std::vector<std::vector<int>> matchings) {
    std::sort(matchings.begin(), matchings.end());
    std::vector<Generator> gens;
    if (matchings.empty()) return gens;
    const std::vector<int>& base = matchings.front();
    const int w_region = solver.complex().w_region();
    for (const auto& x : matchings) {
        auto D = solver.domain_between(x, base);  // domain from x to base
        if (!D)
            throw SingularSystem(
                "no domain connecting a generator to the base; diagram is not an S^3 knot diagram");
        Rational mu = solver.euler_of(*D);
        for (int v : x) mu += solver.point_measure(*D, v);
        for (int v : base) mu += solver.point_measure(*D, v);
        if (!is_integer(mu)) throw NonIntegralGrading("Maslov grading is not an integer");
        BigInt a = w_region == solver.complex().z_region() ? BigInt(0) : D->coeff[w_region];
        Generator gi;
        gi.points = x;
        gi.rel_maslov = static_cast<long long>(numerator(mu));
        gi.rel_alexander = static_cast<long long>(a);
        gens.push_back(std::move(gi));
    }
    return gens;
}

std::vector<std::vector<int>> differential(const ConnectionSolver& solver,
                                           const std::vector<Generator>& gens) {
    const int z = solver.complex().z_region();
    const int w = solver.complex().w_region();
    const int m = static_cast<int>(gens.size());
    std::vector<std::vector<int>> out(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const Generator& x = gens[i];
            const Generator& y = gens[j];
            if (x.rel_maslov != y.rel_maslov + 1) continue;
            if (x.rel_alexander != y.rel_alexander) continue;
            int distinct = 0;
            for (size_t k = 0; k < x.points.size(); ++k)
                if (x.points[k] != y.points[k]) ++distinct;
            if (distinct == 0 || distinct > 2) continue;
            auto D = solver.domain_between(x.points, y.points);
            if (!D) continue;
            bool positive = true;
            for (const BigInt& c : D->coeff) positive = positive && c >= 0;
            if (!positive || D->coeff[z] != 0 || D->coeff[w] != 0) continue;
            // The Maslov-1 filter plus positivity encodes emptiness: an
            // interior matching point would raise n_x + n_y by two.
            Rational mu = solver.euler_of(*D);
            for (int v : x.points) mu += solver.point_measure(*D, v);
            for (int v : y.points) mu += solver.point_measure(*D, v);
            require(mu == 1, "differential pair with non-unit Maslov index");
            out[i].push_back(j);
        }
    }
    // d o d = 0 over F2.
    for (int i = 0; i < m; ++i) {
        std::map<int, int> hits;
        for (int j : out[i])
            for (int k : out[j]) hits[k] ^= 1;
        for (const auto& [k, parity] : hits) require(parity == 0, "d o d != 0");
    }
    return out;
}

HfkResult hfk_ranks(const std::vector<Generator>& gens,
                    const std::vector<std::vector<int>>& arrows) {
    using Key = std::pair<long long, long long>;
    std::map<Key, std::vector<int>> classes;
    for (int i = 0; i < (int)gens.size(); ++i)
        classes[{gens[i].rel_alexander, gens[i].rel_maslov}].push_back(i);

    // Rank of the boundary map out of each class.
    std::map<Key, long long> out_rank;
    for (const auto& [key, rows] : classes) {
        Key tgt{key.first, key.second - 1};
        auto it = classes.find(tgt);
        if (it == classes.end()) continue;
        std::map<int, int> col_of;
        for (int k = 0; k < (int)it->second.size(); ++k) col_of[it->second[k]] = k;
        std::vector<std::vector<char>> mat(rows.size(),
                                           std::vector<char>(it->second.size(), 0));
        bool any = false;
        for (int r = 0; r < (int)rows.size(); ++r)
            for (int j : arrows[rows[r]]) {
                mat[r][col_of.at(j)] ^= 1;
                any = true;
            }
        out_rank[key] = any ? f2_rank(std::move(mat)) : 0;
    }

    HfkResult res;
    res.generator_count = static_cast<long long>(gens.size());
    for (const auto& [key, members] : classes) {
        long long rank = static_cast<long long>(members.size());
        auto ito = out_rank.find(key);
        if (ito != out_rank.end()) rank -= ito->second;
        auto iti = out_rank.find(Key{key.first, key.second + 1});
        if (iti != out_rank.end()) rank -= iti->second;
        require(rank >= 0, "negative homology rank");
        if (rank > 0) res.ranks[key] = rank;
    }
    return res;
}

long long HfkResult::total_rank() const {
    long long t = 0;
    for (const auto& [k, r] : ranks) t += r;
    return t;
}

std::map<long long, long long> HfkResult::euler() const {
    std::map<long long, long long> chi;
    for (const auto& [k, r] : ranks) {
        long long sign = ((k.second % 2) + 2) % 2 == 0 ? 1 : -1;
        chi[k.first] += sign * r;
    }
    std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
    return chi;
}

HfkResult HfkResult::normalized_symmetric() const {
    if (ranks.empty()) return *this;
    long long total = 0, weighted = 0;
    for (const auto& [k, r] : ranks) {
        total += r;
        weighted += r * k.first;
    }
    // Nearest integer to the rank-weighted mean of the Alexander grading.
    long long shift = std::llround(static_cast<double>(weighted) / static_cast<double>(total));
    HfkResult out;
    out.generator_count = generator_count;
    for (const auto& [k, r] : ranks) out.ranks[{k.first - shift, k.second}] = r;
    return out;
}

std::string HfkResult::to_table() const {
    if (ranks.empty()) return "(empty homology)\n";
    long long amin = INT64_MAX, amax = INT64_MIN, mmin = INT64_MAX, mmax = INT64_MIN;
    for (const auto& [k, r] : ranks) {
        amin = std::min(amin, k.first);
        amax = std::max(amax, k.first);
        mmin = std::min(mmin, k.second);
        mmax = std::max(mmax, k.second);
    }
    std::ostringstream out;
    out << "rank table (rows = rel Maslov, cols = rel Alexander)\n";
    out << "      ";
    for (long long a = amin; a <= amax; ++a) out << " A=" << a << (a < 10 && a > -1 ? "  " : " ");
    out << "\n";
    for (long long m = mmax; m >= mmin; --m) {
        out << "M=" << m << (m < 10 && m > -1 ? "   " : "  ");
        for (long long a = amin; a <= amax; ++a) {
            auto it = ranks.find({a, m});
            long long r = it == ranks.end() ? 0 : it->second;
            out << "  " << r << "   ";
        }
        out << "\n";
    }
    out << "total rank " << total_rank() << "\n";
    out << "euler";
    for (const auto& [p, c] : euler()) out << " " << c << "*t^" << p;
    out << "\n";
    return out.str();
}

std::string HfkResult::to_json(const std::string& normalization) const {
    nlohmann::json j;
    j["generators"] = generator_count;
    j["normalization"] = normalization;
    j["ranks"] = nlohmann::json::array();
    for (const auto& [k, r] : ranks)
        j["ranks"].push_back({{"a", k.first}, {"m", k.second}, {"rank", r}});
    j["euler"] = nlohmann::json::array();
    for (const auto& [p, c] : euler()) j["euler"].push_back({c, p});
    j["total_rank"] = total_rank();
    return j.dump(2);
}

bool HfkResult::equal_up_to_shift(const HfkResult& other) const {
    if (ranks.size() != other.ranks.size()) return false;
    if (ranks.empty()) return true;
    auto k0 = ranks.begin()->first;
    auto k1 = other.ranks.begin()->first;
    long long da = k0.first - k1.first;
    long long dm = k0.second - k1.second;
    for (const auto& [k, r] : other.ranks) {
        auto it = ranks.find({k.first + da, k.second + dm});
        if (it == ranks.end() || it->second != r) return false;
    }
    return true;
}

HfkResult compute_hfk(const Diagram& d) {
    ConnectionSolver solver = ConnectionSolver::build(d);
    auto matchings = enumerate_matchings(solver.complex());
    auto gens = relative_gradings(solver, std::move(matchings));
    auto arrows = differential(solver, gens);
    return hfk_ranks(gens, arrows);
}

}  // namespace hfk
