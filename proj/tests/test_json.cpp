#include <catch2/catch.hpp>

#include <string>

#include "dukan/doldkan.hpp"
#include "dukan/dwyerkan.hpp"
#include "dukan/json_io.hpp"

using namespace dukan;

TEST_CASE("matrix json uses decimal strings and survives big entries", "[json]") {
    IntMatrix m{{1, -2}, {3, 4}};
    m.at(0, 0) = parse_int("123456789012345678901234567890");
    json j = matrix_to_json(m);
    CHECK(j[0][0] == "123456789012345678901234567890");
    IntMatrix back = matrix_from_json(j, 2, 2, "test");
    CHECK(back == m);

    CHECK(matrix_to_json(IntMatrix::zero(0, 3)).dump() == "[]");
    CHECK(matrix_from_json(json::array(), 0, 3, "empty") == IntMatrix::zero(0, 3));

    CHECK_THROWS_AS(matrix_from_json(json::parse("[[1]]"), 1, 1, "num"), JsonFormatError);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[[\"x\"]]"), 1, 1, "junk"), JsonFormatError);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[[\"1\",\"2\"]]"), 1, 1, "shape"),
                    JsonFormatError);
}

TEST_CASE("chain and duchain roundtrip", "[json]") {
    DuchainComplex b = gen_random_duchain(404, 4, 3, 2);
    json j = duchain_to_json(b);
    CHECK(json_kind(j) == "duchain");
    DuchainComplex back = duchain_from_json(j);
    CHECK(duchain_to_json(back).dump() == j.dump());
    CHECK(back.is_complex());

    json jc = chain_to_json(b.chain);
    ChainComplex c = chain_from_json(jc);
    CHECK(chain_to_json(c).dump() == jc.dump());

    json bad = jc;
    bad["d"] = json::array();
    CHECK_THROWS_AS(chain_from_json(bad), JsonFormatError);
}

TEST_CASE("simplicial and duplicial objects roundtrip", "[json]") {
    TruncatedSimplicialGroup x = linearized_simplex(2, 3);
    json j = simplicial_to_json(x);
    CHECK(json_kind(j) == "simplicial");
    TruncatedSimplicialGroup back = simplicial_from_json(j);
    CHECK(back.ranks == x.ranks);
    CHECK(back.faces == x.faces);
    CHECK(back.degeneracies == x.degeneracies);

    DuchainComplex b = gen_random_duchain(405, 3, 2, 2);
    TruncatedDuplicialGroup nx = dwyer_kan_nerve(b, 2).object;
    json jd = duplicial_to_json(nx);
    CHECK(json_kind(jd) == "duplicial");
    TruncatedDuplicialGroup dback = duplicial_from_json(jd);
    CHECK(dback.degeneracies == nx.degeneracies);

    // A duplicial file is not a valid simplicial file: degeneracy counts differ.
    CHECK_THROWS_AS(simplicial_from_json(jd), JsonFormatError);
}

TEST_CASE("ximap json", "[json]") {
    XiMap f = degeneracy(1, 2);
    json j = ximap_to_json(f);
    CHECK(j["flavor"] == "Xi");
    XiMap back = ximap_from_json(j);
    CHECK(back == f);
    CHECK(back.flavor == f.flavor);

    json bad = j;
    bad["values"] = json::parse("[1,0]");
    CHECK_THROWS_AS(ximap_from_json(bad), JsonFormatError);
}

TEST_CASE("kind dispatch", "[json]") {
    CHECK_THROWS_AS(json_kind(json::parse("[]")), JsonFormatError);
    CHECK_THROWS_AS(json_kind(json::parse("{\"kind\":3}")), JsonFormatError);
}
