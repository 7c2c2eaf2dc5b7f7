#include "oracle/grid_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gridhfk {

namespace {

// I(P, Q): pairs strictly increasing in both coordinates. Coordinates are
// doubled so markers can sit at cell centers.
long long pair_count(const std::vector<std::pair<int, int>>& p,
                     const std::vector<std::pair<int, int>>& q) {
    long long c = 0;
    for (const auto& a : p)
        for (const auto& b : q)
            if (a.first < b.first && a.second < b.second) ++c;
    return c;
}

std::vector<std::pair<int, int>> doubled_points(const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i < (int)perm.size(); ++i) pts.push_back({2 * i, 2 * perm[i]});
    return pts;
}

std::vector<std::pair<int, int>> doubled_markers(const std::vector<int>& rows) {
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i < (int)rows.size(); ++i) pts.push_back({2 * i + 1, 2 * rows[i] + 1});
    return pts;
}

long long maslov_against(const std::vector<int>& perm, const std::vector<int>& markers) {
    auto x = doubled_points(perm);
    auto o = doubled_markers(markers);
    return pair_count(x, x) - pair_count(x, o) - pair_count(o, x) + pair_count(o, o) + 1;
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

long long f2_rank(std::vector<std::vector<char>> m) {
    if (m.empty()) return 0;
    long long rank = 0;
    size_t rows = m.size(), cols = m[0].size(), row = 0;
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

bool GridDiagram::is_knot() const {
    // Follow X -> O vertically, O -> X horizontally.
    const int n = size();
    std::vector<int> x_col_of_row(n, -1), o_col_of_row(n, -1);
    for (int c = 0; c < n; ++c) {
        if (x_row[c] < 0 || x_row[c] >= n || o_row[c] < 0 || o_row[c] >= n) return false;
        if (x_col_of_row[x_row[c]] != -1 || o_col_of_row[o_row[c]] != -1) return false;
        x_col_of_row[x_row[c]] = c;
        o_col_of_row[o_row[c]] = c;
        if (x_row[c] == o_row[c] && n > 1) return false;
    }
    int col = 0, steps = 0;
    do {
        int row = o_row[col];       // column's O
        col = x_col_of_row[row];    // row's X
        ++steps;
    } while (col != 0 && steps <= n);
    return steps == n;
}

RankTable grid_hfk(const GridDiagram& g) {
    const int n = g.size();
    if (!g.is_knot()) throw std::runtime_error("grid diagram is not a knot");

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> gens;
    do gens.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    const int m = static_cast<int>(gens.size());

    std::map<std::vector<int>, int> index;
    for (int i = 0; i < m; ++i) index[gens[i]] = i;

    std::vector<long long> maslov(m), alex(m);
    for (int i = 0; i < m; ++i) {
        long long mo = maslov_against(gens[i], g.o_row);
        long long mx = maslov_against(gens[i], g.x_row);
        long long a2 = mo - mx - (n - 1);
        if (a2 % 2 != 0) throw std::runtime_error("half-integer Alexander grading");
        maslov[i] = mo;
        alex[i] = a2 / 2;
    }

    // A rectangle between columns i < j is blocked by any marker or free
    // generator point in its interior; two of the four torus rectangles point
    // from x to y.
    auto arrows = [&](int gi) {
        const std::vector<int>& x = gens[gi];
        std::vector<int> out;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int lo = std::min(x[i], x[j]), hi = std::max(x[i], x[j]);
                bool swap_up = x[i] < x[j];
                // cols_in: strictly between columns i and j; rows_in: strictly
                // between rows lo and hi. Marker in column c occupies the cell
                // strip (c, c+1).
                auto blocked = [&](bool cols_in, bool rows_in) {
                    for (int c = 0; c < n; ++c) {
                        bool cin = c >= i && c < j;
                        if (cin != cols_in) continue;
                        for (int row : {g.x_row[c], g.o_row[c]}) {
                            bool rin = row >= lo && row < hi;
                            if (rin == rows_in) return true;
                        }
                    }
                    for (int k = 0; k < n; ++k) {
                        if (k == i || k == j) continue;
                        bool cin = k > i && k < j;
                        if (cin != cols_in) continue;
                        bool rin = x[k] > lo && x[k] < hi;
                        if (rin == rows_in) return true;
                    }
                    return false;
                };
                // For x[i] < x[j] the x->y rectangles are (in, in) and
                // (out, out); otherwise (in, out) and (out, in).
                int count = 0;
                if (swap_up) {
                    if (!blocked(true, true)) ++count;
                    if (!blocked(false, false)) ++count;
                } else {
                    if (!blocked(true, false)) ++count;
                    if (!blocked(false, true)) ++count;
                }
                if (count % 2 == 1) {
                    std::vector<int> y = x;
                    std::swap(y[i], y[j]);
                    out.push_back(index.at(y));
                }
            }
        return out;
    };

    std::vector<std::vector<int>> d(m);
    for (int i = 0; i < m; ++i) d[i] = arrows(i);

    using Key = std::pair<long long, long long>;
    std::map<Key, std::vector<int>> classes;
    for (int i = 0; i < m; ++i) classes[{alex[i], maslov[i]}].push_back(i);

    std::map<Key, long long> out_rank;
    for (const auto& [key, rows] : classes) {
        auto tgt = classes.find(Key{key.first, key.second - 1});
        if (tgt == classes.end()) continue;
        std::map<int, int> col_of;
        for (int k = 0; k < (int)tgt->second.size(); ++k) col_of[tgt->second[k]] = k;
        std::vector<std::vector<char>> mat(rows.size(), std::vector<char>(tgt->second.size(), 0));
        for (int r = 0; r < (int)rows.size(); ++r)
            for (int j : d[rows[r]]) mat[r][col_of.at(j)] ^= 1;
        out_rank[key] = f2_rank(std::move(mat));
    }

    std::map<Key, long long> blocked;
    for (const auto& [key, members] : classes) {
        long long rank = static_cast<long long>(members.size());
        auto ito = out_rank.find(key);
        if (ito != out_rank.end()) rank -= ito->second;
        auto iti = out_rank.find(Key{key.first, key.second + 1});
        if (iti != out_rank.end()) rank -= iti->second;
        if (rank < 0) throw std::runtime_error("negative blocked rank");
        if (rank > 0) blocked[key] = rank;
    }

    // blocked == HFK-hat tensor V^(n-1), V with generators at (0,0), (-1,-1).
    RankTable res;
    if (blocked.empty()) return res;
    long long amax = blocked.rbegin()->first.first;
    long long amin = blocked.begin()->first.first;
    for (long long a = amax; a >= amin; --a) {
        for (auto it = blocked.lower_bound(Key{a, INT64_MIN});
             it != blocked.end() && it->first.first == a;) {
            long long mm = it->first.second;
            long long r = it->second;
            ++it;
            if (r == 0) continue;
            if (r < 0) throw std::runtime_error("tensor factor unwrap went negative");
            res.ranks[{a, mm}] = r;
            for (int i = 0; i <= n - 1; ++i) {
                Key k{a - i, mm - i};
                blocked[k] -= r * binom(n - 1, i);
                if (blocked[k] == 0) blocked.erase(k);
            }
            it = blocked.lower_bound(Key{a, mm});
        }
    }
    for (const auto& [k, v] : blocked)
        if (v != 0) throw std::runtime_error("tensor factor unwrap left residue");
    return res;
}

long long RankTable::total() const {
    long long t = 0;
    for (const auto& [k, r] : ranks) t += r;
    return t;
}

std::map<long long, long long> RankTable::euler() const {
    std::map<long long, long long> chi;
    for (const auto& [k, r] : ranks) chi[k.first] += (((k.second % 2) + 2) % 2 == 0 ? 1 : -1) * r;
    std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
    return chi;
}

}  // namespace gridhfk
