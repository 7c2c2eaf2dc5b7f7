#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hfk/cell_complex.hpp"
#include "hfk/rational.hpp"

namespace hfk {

// A matching: one intersection point per alpha curve (index = alpha curve),
// hitting each beta curve once. Gradings are relative to a canonical base
// generator (the lexicographically smallest tuple).
struct Generator {
    std::vector<int> points;
    long long rel_maslov = 0;
    long long rel_alexander = 0;
};

// Integer chain of regions with zero Z coefficient.
struct Domain {
    std::vector<BigInt> coeff;  // indexed by region id; coeff[Z] == 0
};

// Exact inverse of g = f1 + f2 : X1 + X2 -> Y, where X1 is spanned by the
// regions other than Z, X2 by the alpha curves and all but one beta curve,
// and Y by the vertices. f1 is the boundary-of-alpha-boundary map, f2 sends
// a curve to the sum of its vertices.
class ConnectionSolver {
public:
    // The homology pipeline runs this on nice diagrams only; gradings make
    // sense on any all-disk S^3 diagram, which the fixture search exploits.
    static ConnectionSolver build(const Diagram& d, bool require_nice = true);

    const CellComplex& complex() const { return cx_; }
    int nu() const { return nu_; }

    // Domain D with del(del_alpha D) = y - x, if one exists.
    std::optional<Domain> domain_between(const std::vector<int>& x,
                                         const std::vector<int>& y) const;

    Rational euler_of(const Domain& D) const;
    // Average of the coefficients of the four corner regions at a vertex.
    Rational point_measure(const Domain& D, int vertex) const;
    // Maslov grading of the pair (x, y) via their connecting domain.
    std::optional<Rational> maslov(const std::vector<int>& x, const std::vector<int>& y) const;

private:
    CellComplex cx_;
    int nu_ = 0;
    int region_cols_ = 0;                     // dim X1
    std::vector<int> col_region_;             // X1 column -> region id
    std::vector<int> region_col_;             // region id -> column or -1
    std::vector<std::vector<Rational>> h_;    // nu x nu inverse
    explicit ConnectionSolver(CellComplex cx) : cx_(std::move(cx)) {}
};

std::vector<std::vector<int>> enumerate_matchings(const CellComplex& cx);

std::vector<Generator> relative_gradings(const ConnectionSolver& solver,
                                         std::vector<std::vector<int>> matchings);

// Arrow list of the hat differential over F2: out[i] holds the generator
// indices hit by d(gen i). d lowers rel_maslov by one, keeps rel_alexander.
std::vector<std::vector<int>> differential(const ConnectionSolver& solver,
                                           const std::vector<Generator>& gens);

struct HfkResult {
    long long generator_count = 0;
    // (rel_alexander, rel_maslov) -> rank
    std::map<std::pair<long long, long long>, long long> ranks;

    long long total_rank() const;
    // Euler characteristic coefficients: alexander power -> signed coefficient.
    std::map<long long, long long> euler() const;
    HfkResult normalized_symmetric() const;  // recenter A about 0 by rank weight
    std::string to_table() const;
    std::string to_json(const std::string& normalization) const;

    // Equal as tables after shifting the gradings of `other` by some offset.
    bool equal_up_to_shift(const HfkResult& other) const;
};

HfkResult hfk_ranks(const std::vector<Generator>& gens,
                    const std::vector<std::vector<int>>& arrows);

// Full pipeline on a nice, all-disk diagram.
HfkResult compute_hfk(const Diagram& d);

}  // namespace hfk
