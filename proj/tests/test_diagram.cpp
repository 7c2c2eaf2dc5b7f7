#include "doctest.h"
#include "fixtures.hpp"
#include "hfk/cell_complex.hpp"

using namespace hfk;
using hfk::testing::make_u1;

TEST_CASE("U1: one crossing on the torus derives to a single rectangle") {
    CellComplex cx = CellComplex::build(make_u1());
    const MetricsSnapshot& m = cx.metrics();
    CHECK(m.genus == 1);
    CHECK(m.vertex_count == 1);
    CHECK(cx.edge_count() == 2);
    CHECK(m.region_count == 1);
    REQUIRE(cx.region_count() == 1);
    const RegionRec& r = cx.region(0);
    CHECK(r.side_count == 4);  // each edge borders the region twice
    CHECK(r.is_rectangle);
    CHECK(r.badness == 0);
    CHECK(m.bigon_count == 0);
    // Eq.(1): b + b_z = 4(g-1) + B
    CHECK(m.total_badness + m.z_badness == 4 * (m.genus - 1) + m.bigon_count);
    CHECK(cx.z_region() == cx.w_region());
    CHECK(r.distance == 0);
    CHECK(m.distance == 0);
    CHECK(r.euler_measure == Rational(0));
}

TEST_CASE("U1 round-trips through the text format") {
    Diagram d = make_u1();
    std::string text = serialize_hd(d);
    Diagram back = parse_hd_string(text);
    CHECK(serialize_hd(back) == text);
    CellComplex a = CellComplex::build(d);
    CellComplex b = CellComplex::build(back);
    CHECK(a.metrics().genus == b.metrics().genus);
    CHECK(a.metrics().total_badness == b.metrics().total_badness);
}

TEST_CASE("parser reports line numbers and structural errors") {
    CHECK_THROWS_AS(parse_hd_string("alpha 0: 0\n"), ParseError);  // no header
    CHECK_THROWS_AS(parse_hd_string("heegaard v1\n"), ParseError); // nothing else
    // vertex on two alpha curves
    std::string twice =
        "heegaard v1\nalpha 0: 0\nalpha 1: 0\nbeta 0: 0\nbeta 1: 1\nsign 0 +\nsign 1 +\n"
        "z 0 0\nw 0 2\n";
    CHECK_THROWS_AS(parse_hd_string(twice), ParseError);
    try {
        parse_hd_string("heegaard v1\nalpha 0 0\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("distances and Heegaard paths on U1") {
    CellComplex cx = CellComplex::build(make_u1());
    CHECK(cx.heegaard_path(cx.z_region()).empty());
}
