#include <catch2/catch.hpp>

#include <cstdint>
#include <vector>

#include "dukan/functor.hpp"
#include "dukan/matrix.hpp"
#include "dukan/normal_form.hpp"
#include "dukan/rng.hpp"
#include "dukan/xi.hpp"

using namespace dukan;

namespace {

TruncatedSimplicialGroup zero_object(std::size_t trunc) {
    TruncatedSimplicialGroup x;
    x.trunc = trunc;
    x.ranks.assign(trunc + 1, 0);
    x.faces.resize(trunc + 1);
    for (std::size_t n = 1; n <= trunc; ++n) x.faces[n].assign(n + 1, IntMatrix::zero(0, 0));
    x.degeneracies.resize(trunc);
    for (std::size_t n = 0; n < trunc; ++n) x.degeneracies[n].assign(n + 1, IntMatrix::zero(0, 0));
    return x;
}

}  // namespace

TEST_CASE("linearized simplex ranks and validity", "[functor]") {
    TruncatedSimplicialGroup x = linearized_simplex(2, 4);
    CHECK(x.ranks == std::vector<std::size_t>{3, 6, 10, 15, 21});
    CHECK(validate(x).ok());

    TruncatedSimplicialGroup pt = linearized_simplex(0, 3);
    CHECK(pt.ranks == std::vector<std::size_t>{1, 1, 1, 1});
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t i = 0; i <= n; ++i) CHECK(pt.faces[n][i] == IntMatrix::identity(1));
}

TEST_CASE("evaluate on generators and identities", "[functor]") {
    TruncatedSimplicialGroup x = linearized_simplex(2, 3);
    CHECK(evaluate(x, xi_identity(2)) == IntMatrix::identity(x.ranks[2]));
    CHECK(evaluate(x, face(2, 1)) == x.faces[2][1]);
    CHECK(evaluate(x, degeneracy(1, 0)) == x.degeneracies[1][0]);
    CHECK_THROWS_AS(evaluate(x, face(4, 0)), OutOfTruncation);
    // A shift at the top degree factors through degree trunc + 1.
    CHECK_THROWS_AS(evaluate(x, shift(3, 1)), OutOfTruncation);
    // Simplicial objects have no extra degeneracy to evaluate.
    CHECK_THROWS_AS(evaluate(x, degeneracy(1, 2)), std::invalid_argument);
}

TEST_CASE("evaluate respects composition contravariantly", "[functor][property]") {
    TruncatedSimplicialGroup x = linearized_simplex(2, 4);
    Rng rng(99);
    int done = 0;
    while (done < 60) {
        auto [w, start] = detail::random_word(rng, x.trunc, false, 5);
        std::size_t cut = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(w.size())));
        GeneratorWord w1(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
        GeneratorWord w2(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
        XiMap f = compose_word(w1, start);
        XiMap g = compose_word(w2, f.tgt);
        CHECK(evaluate(x, compose(g, f)) == evaluate(x, f) * evaluate(x, g));
        ++done;
    }
}

TEST_CASE("validate flags a corrupted face", "[functor]") {
    TruncatedSimplicialGroup x = linearized_simplex(1, 3);
    REQUIRE(validate(x).ok());
    x.faces[2][1] = -x.faces[2][1];
    CHECK_FALSE(validate(x).ok());
}

TEST_CASE("validate accepts the zero object", "[functor]") {
    CHECK(validate(zero_object(3)).ok());
}

TEST_CASE("alternating differential squares to zero", "[functor]") {
    TruncatedSimplicialGroup x = linearized_simplex(2, 4);
    CHECK(alternating_differential(x, 1) == x.faces[1][1] - x.faces[1][0]);
    for (std::size_t n = 1; n + 1 <= x.trunc; ++n)
        CHECK((alternating_differential(x, n) * alternating_differential(x, n + 1)).is_zero());
    CHECK_THROWS_AS(alternating_differential(x, 0), std::out_of_range);
    CHECK_THROWS_AS(alternating_differential(x, 9), std::out_of_range);

    TruncatedSimplicialGroup z = zero_object(2);
    CHECK(alternating_differential(z, 1).rows() == 0);
}

TEST_CASE("degenerate subgroup of the linearized simplex", "[functor]") {
    TruncatedSimplicialGroup x = linearized_simplex(2, 3);
    // Degree 1: the three non-injective monotone [1] -> [2].
    Subgroup d1 = degenerate_subgroup(x, 1);
    CHECK(d1.rank() == 3);

    // d(D_n) lies in D_{n-1}.
    for (std::size_t n = 2; n <= x.trunc; ++n) {
        Subgroup dn = degenerate_subgroup(x, n);
        Subgroup dlow = degenerate_subgroup(x, n - 1);
        IntMatrix mapped = alternating_differential(x, n) * dn.basis;
        CHECK(solve_matrix(dlow.basis, mapped).has_value());
    }
}

TEST_CASE("pi projects onto normalized chains", "[functor]") {
    TruncatedSimplicialGroup x = linearized_simplex(2, 3);
    CHECK(pi_matrix(x, 0) == IntMatrix::identity(x.ranks[0]));
    // pi_1 = I - s_0 d_0 (the nontrivial cube vertex is del_0 o sigma_0).
    CHECK(pi_matrix(x, 1) ==
          IntMatrix::identity(x.ranks[1]) - x.degeneracies[0][0] * x.faces[1][0]);

    for (std::size_t n = 1; n <= x.trunc; ++n) {
        IntMatrix pi = pi_matrix(x, n);
        CHECK(pi * pi == pi);  // idempotent
        for (std::size_t i = 0; i < n; ++i) CHECK((x.faces[n][i] * pi).is_zero());
        // ker pi == D(X)_n as canonical subgroups
        CHECK(kernel_basis(pi).basis == degenerate_subgroup(x, n).basis);
    }
}

TEST_CASE("pi splitting: C + D spans X with unimodular change of basis", "[functor]") {
    TruncatedSimplicialGroup x = linearized_simplex(2, 3);
    for (std::size_t n = 1; n <= x.trunc; ++n) {
        IntMatrix pi = pi_matrix(x, n);
        IntMatrix stacked(0, x.ranks[n]);
        for (std::size_t i = 0; i < n; ++i)
            stacked = IntMatrix::vstack(stacked, x.faces[n][i]);
        IntMatrix c_basis = kernel_basis(stacked).basis;
        IntMatrix d_basis = degenerate_subgroup(x, n).basis;
        REQUIRE(c_basis.cols() + d_basis.cols() == x.ranks[n]);
        CHECK(is_unimodular(IntMatrix::hstack(c_basis, d_basis)));
        // pi restricted to C is the identity.
        CHECK(pi * c_basis == c_basis);
    }
}

TEST_CASE("morphism validation", "[functor]") {
    TruncatedSimplicialGroup x = linearized_simplex(1, 3);
    SimplicialMorphism id_morphism{x, x, {}};
    for (std::size_t n = 0; n <= x.trunc; ++n)
        id_morphism.components.push_back(IntMatrix::identity(x.ranks[n]));
    CHECK(validate_morphism(id_morphism).ok());

    id_morphism.components[1] = id_morphism.components[1].scaled(2);
    CHECK_FALSE(validate_morphism(id_morphism).ok());
}
