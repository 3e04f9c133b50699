#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dukan/int.hpp"
#include "dukan/matrix.hpp"
#include "dukan/normal_form.hpp"
#include "dukan/rng.hpp"
#include "dukan/xi.hpp"

namespace dukan {

// Contravariance convention used throughout: a functor X : Xi^op -> Ab sends
// h : <a> -> <b> to the matrix X(h) : X_b -> X_a (shape r_a x r_b), so
// X(g o f) = X(f) * X(g). In particular d_i = X(del_i) : X_n -> X_{n-1} is
// faces[n][i] and s_i = X(sigma_i) : X_n -> X_{n+1} is degeneracies[n][i].

/// Levelwise-free simplicial abelian group up to degree trunc, stored as
/// generator matrices. faces[n][i] for 1 <= n <= trunc, 0 <= i <= n
/// (faces[0] stays empty so indices line up with degrees); degeneracies[n][i]
/// for 0 <= n < trunc, 0 <= i <= n.
struct TruncatedSimplicialGroup {
    std::size_t trunc = 0;
    std::vector<std::size_t> ranks;                 // trunc + 1
    std::vector<std::vector<IntMatrix>> faces;        // faces[n]: n + 1 matrices
    std::vector<std::vector<IntMatrix>> degeneracies; // degeneracies[n]: n + 1 matrices

    std::size_t rank(std::size_t n) const { return ranks.at(n); }
    static constexpr bool has_extra_degeneracy = false;
};

/// Duplicial variant: degeneracies[n] additionally holds the extra
/// degeneracy at index n + 1.
struct TruncatedDuplicialGroup {
    std::size_t trunc = 0;
    std::vector<std::size_t> ranks;
    std::vector<std::vector<IntMatrix>> faces;        // as simplicial
    std::vector<std::vector<IntMatrix>> degeneracies; // degeneracies[n]: n + 2 matrices

    std::size_t rank(std::size_t n) const { return ranks.at(n); }
    static constexpr bool has_extra_degeneracy = true;

    TruncatedSimplicialGroup underlying() const {
        TruncatedSimplicialGroup s;
        s.trunc = trunc;
        s.ranks = ranks;
        s.faces = faces;
        s.degeneracies.resize(degeneracies.size());
        for (std::size_t n = 0; n < degeneracies.size(); ++n)
            s.degeneracies[n].assign(degeneracies[n].begin(),
                                     degeneracies[n].begin() + static_cast<std::ptrdiff_t>(n) + 1);
        return s;
    }
};

/// A failed identity, with both evaluated sides for reporting.
struct IdentityFailure {
    std::string name;
    IntMatrix lhs;
    IntMatrix rhs;
};

struct ValidationReport {
    std::vector<IdentityFailure> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

template <class Obj>
void check_object_shapes(const Obj& x) {
    if (x.ranks.size() != x.trunc + 1) throw std::invalid_argument("object: ranks size");
    if (x.faces.size() != x.trunc + 1) throw std::invalid_argument("object: faces size");
    if (x.degeneracies.size() != x.trunc) throw std::invalid_argument("object: degeneracies size");
    for (std::size_t n = 1; n <= x.trunc; ++n) {
        if (x.faces[n].size() != n + 1)
            throw std::invalid_argument("object: faces[" + std::to_string(n) + "] count");
        for (const auto& m : x.faces[n])
            if (m.rows() != x.ranks[n - 1] || m.cols() != x.ranks[n])
                throw std::invalid_argument("object: face shape at degree " + std::to_string(n));
    }
    const std::size_t extra = Obj::has_extra_degeneracy ? 1 : 0;
    for (std::size_t n = 0; n < x.trunc; ++n) {
        if (x.degeneracies[n].size() != n + 1 + extra)
            throw std::invalid_argument("object: degeneracies[" + std::to_string(n) + "] count");
        for (const auto& m : x.degeneracies[n])
            if (m.rows() != x.ranks[n + 1] || m.cols() != x.ranks[n])
                throw std::invalid_argument("object: degeneracy shape at degree " +
                                            std::to_string(n));
    }
}

}  // namespace detail

/// Matrix of X applied to one generator token.
template <class Obj>
IntMatrix generator_matrix(const Obj& x, const GenToken& t) {
    switch (t.kind) {
        case GenToken::Kind::Face: {
            if (t.level < 1 || static_cast<std::size_t>(t.level) > x.trunc)
                throw OutOfTruncation("face level " + std::to_string(t.level) +
                                      " outside truncation " + std::to_string(x.trunc));
            return x.faces[static_cast<std::size_t>(t.level)].at(static_cast<std::size_t>(t.arg));
        }
        case GenToken::Kind::Degeneracy: {
            if (t.level < 0 || static_cast<std::size_t>(t.level) >= x.trunc)
                throw OutOfTruncation("degeneracy level " + std::to_string(t.level) +
                                      " outside truncation " + std::to_string(x.trunc));
            const auto& ds = x.degeneracies[static_cast<std::size_t>(t.level)];
            if (static_cast<std::size_t>(t.arg) >= ds.size())
                throw std::invalid_argument("object has no degeneracy index " +
                                            std::to_string(t.arg) + " at level " +
                                            std::to_string(t.level));
            return ds[static_cast<std::size_t>(t.arg)];
        }
        case GenToken::Kind::Shift: {
            // X(t_n) = d_0 o s_{n+1}, which passes through degree n + 1.
            if (t.arg < 0) throw std::invalid_argument("negative shift power is not evaluable");
            if (static_cast<std::size_t>(t.level) + 1 > x.trunc)
                throw OutOfTruncation("shift at level " + std::to_string(t.level) +
                                      " needs degree " + std::to_string(t.level + 1));
            GenToken f{GenToken::Kind::Face, t.level + 1, 0};
            GenToken s{GenToken::Kind::Degeneracy, t.level, t.level + 1};
            IntMatrix tn = generator_matrix(x, f) * generator_matrix(x, s);
            return tn.pow(static_cast<std::size_t>(t.arg));
        }
    }
    throw std::logic_error("bad token");
}

/// Product of generator matrices along a word in application order.
template <class Obj>
IntMatrix word_matrix(const Obj& x, const GeneratorWord& w, std::int64_t src) {
    IntMatrix acc = IntMatrix::identity(x.rank(static_cast<std::size_t>(src)));
    for (const GenToken& t : w) acc = acc * generator_matrix(x, t);
    return acc;
}

/// Matrix of X(h) for any Delta or Xi morphism within truncation, via the
/// factorization of h into generators. Words whose canonical factorization
/// passes through degree trunc + 1 (a shift power at the top level) raise
/// OutOfTruncation rather than guessing.
template <class Obj>
IntMatrix evaluate(const Obj& x, const XiMap& h) {
    if (static_cast<std::size_t>(h.src) > x.trunc || static_cast<std::size_t>(h.tgt) > x.trunc)
        throw OutOfTruncation("morphism degrees exceed truncation");
    return word_matrix(x, factorize(h), h.src);
}

/// Sum_{i=0}^{n} (-1)^{n-i} d_i : X_n -> X_{n-1}.
template <class Obj>
IntMatrix alternating_differential(const Obj& x, std::size_t n) {
    if (n < 1 || n > x.trunc) throw std::out_of_range("alternating_differential degree");
    IntMatrix acc = IntMatrix::zero(x.ranks[n - 1], x.ranks[n]);
    for (std::size_t i = 0; i <= n; ++i) {
        if ((n - i) % 2 == 0)
            acc = acc + x.faces[n][i];
        else
            acc = acc - x.faces[n][i];
    }
    return acc;
}

/// Chain-level codifferential of a duplicial group:
/// delta = sum_{i=0}^{n+1} (-1)^{n+1-i} s_i : X_n -> X_{n+1}, including the
/// extra degeneracy with coefficient +1. It squares to zero, preserves D,
/// and agrees with s_{n+1} modulo D.
inline IntMatrix alternating_codifferential(const TruncatedDuplicialGroup& x, std::size_t n) {
    if (n >= x.trunc) throw std::out_of_range("alternating_codifferential degree");
    IntMatrix acc = IntMatrix::zero(x.ranks[n + 1], x.ranks[n]);
    for (std::size_t i = 0; i <= n + 1; ++i) {
        if ((n + 1 - i) % 2 == 0)
            acc = acc + x.degeneracies[n][i];
        else
            acc = acc - x.degeneracies[n][i];
    }
    return acc;
}

/// D(X)_n: the subgroup of X_n generated by the images of the ordinary
/// degeneracies s_0, ..., s_{n-1} from degree n - 1.
template <class Obj>
Subgroup degenerate_subgroup(const Obj& x, std::size_t n) {
    if (n < 1 || n > x.trunc) throw std::out_of_range("degenerate_subgroup degree");
    IntMatrix stack(x.ranks[n], 0);
    for (std::size_t i = 0; i < n; ++i)
        stack = IntMatrix::hstack(stack, x.degeneracies[n - 1][i]);
    return span(stack);
}

/// The projection pi_n = sum over cube vertices a of (-1)^{|a|} X(f_n(a)),
/// which projects X_n onto C(X)_n along D(X)_n.
template <class Obj>
IntMatrix pi_matrix(const Obj& x, std::size_t n) {
    if (n > x.trunc) throw std::out_of_range("pi degree");
    IntMatrix acc = IntMatrix::zero(x.ranks[n], x.ranks[n]);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<int> bits(n);
        int weight = 0;
        for (std::size_t j = 0; j < n; ++j) {
            bits[j] = static_cast<int>((mask >> j) & 1);
            weight += bits[j];
        }
        IntMatrix term = evaluate(x, cube_f(static_cast<std::int64_t>(n), bits));
        acc = (weight % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/// The linearization Z Delta^n truncated at `trunc`: degree m has one basis
/// element per monotone [m] -> [n], and the structure maps act by
/// precomposition.
inline TruncatedSimplicialGroup linearized_simplex(std::int64_t n, std::size_t trunc) {
    TruncatedSimplicialGroup x;
    x.trunc = trunc;
    std::vector<std::vector<XiMap>> basis(trunc + 1);
    std::vector<std::map<std::vector<std::int64_t>, std::size_t>> index(trunc + 1);
    for (std::size_t m = 0; m <= trunc; ++m) {
        basis[m] = enumerate_monotone(static_cast<std::int64_t>(m), n);
        for (std::size_t k = 0; k < basis[m].size(); ++k) index[m][basis[m][k].values] = k;
        x.ranks.push_back(basis[m].size());
    }
    auto precompose = [&](std::size_t from_deg, std::size_t to_deg, const XiMap& g) {
        IntMatrix mat(x.ranks[to_deg], x.ranks[from_deg]);
        for (std::size_t k = 0; k < basis[from_deg].size(); ++k) {
            XiMap composed = compose(basis[from_deg][k], g);
            mat.at(index[to_deg].at(composed.values), k) = 1;
        }
        return mat;
    };
    x.faces.resize(trunc + 1);
    for (std::size_t m = 1; m <= trunc; ++m)
        for (std::size_t i = 0; i <= m; ++i)
            x.faces[m].push_back(precompose(m, m - 1,
                                            face(static_cast<std::int64_t>(m),
                                                 static_cast<std::int64_t>(i))));
    x.degeneracies.resize(trunc);
    for (std::size_t m = 0; m < trunc; ++m)
        for (std::size_t i = 0; i <= m; ++i)
            x.degeneracies[m].push_back(precompose(m, m + 1,
                                                   degeneracy(static_cast<std::int64_t>(m),
                                                              static_cast<std::int64_t>(i))));
    return x;
}

namespace detail {

/// Random composable generator word staying inside the truncation, returned
/// with its start degree. Used by the seeded functoriality probes.
inline std::pair<GeneratorWord, std::int64_t> random_word(Rng& rng, std::size_t trunc,
                                                          bool duplicial, std::size_t max_len) {
    const std::int64_t top = static_cast<std::int64_t>(trunc);
    std::int64_t deg = rng.next_in(0, top);
    const std::int64_t start = deg;
    GeneratorWord w;
    const std::size_t len = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(max_len)));
    for (std::size_t step = 0; step < len; ++step) {
        const bool can_up = deg + 1 <= top;
        const bool can_down = deg >= 1;
        if (!can_up && !can_down) break;
        bool up = can_up && (!can_down || rng.next_bool());
        if (up) {
            std::int64_t i = rng.next_in(0, deg + 1);
            w.push_back({GenToken::Kind::Face, deg + 1, i});
            ++deg;
        } else {
            std::int64_t max_idx = duplicial ? deg : deg - 1;
            std::int64_t i = rng.next_in(0, max_idx);
            w.push_back({GenToken::Kind::Degeneracy, deg - 1, i});
            --deg;
        }
    }
    return {w, start};
}

template <class Obj>
void relation_pair_check(const Obj& x, ValidationReport& report) {
    // Every composable pair of stored generators must agree with the
    // canonical factorization of its composite. This covers all simplicial
    // identity instances expressible within the truncation.
    std::vector<GenToken> tokens;
    for (std::size_t n = 1; n <= x.trunc; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            tokens.push_back({GenToken::Kind::Face, static_cast<std::int64_t>(n),
                              static_cast<std::int64_t>(i)});
    for (std::size_t n = 0; n < x.trunc; ++n)
        for (std::size_t i = 0; i < x.degeneracies[n].size(); ++i)
            tokens.push_back({GenToken::Kind::Degeneracy, static_cast<std::int64_t>(n),
                              static_cast<std::int64_t>(i)});
    for (const GenToken& u : tokens)
        for (const GenToken& w : tokens) {
            if (u.tgt_degree() != w.src_degree()) continue;
            XiMap h = compose(w.to_map(), u.to_map());
            IntMatrix lhs = generator_matrix(x, u) * generator_matrix(x, w);
            IntMatrix rhs = word_matrix(x, factorize(h), h.src);
            if (lhs != rhs)
                report.failures.push_back({"relation failure: " + u.to_string() + " then " +
                                               w.to_string() + " != canonical word for " +
                                               h.to_string(),
                                           lhs, rhs});
        }
}

template <class Obj>
void functoriality_probes(const Obj& x, ValidationReport& report, std::uint64_t seed,
                          std::size_t count) {
    Rng rng(seed);
    std::size_t done = 0, attempts = 0;
    while (done < count && attempts < count * 40) {
        ++attempts;
        auto [w, start] = detail::random_word(rng, x.trunc, Obj::has_extra_degeneracy, 6);
        std::size_t cut = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(w.size())));
        GeneratorWord w1(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
        GeneratorWord w2(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
        XiMap f1 = compose_word(w1, start);
        XiMap f2 = compose_word(w2, f1.tgt);
        try {
            IntMatrix lhs = evaluate(x, compose(f2, f1));
            IntMatrix rhs = evaluate(x, f1) * evaluate(x, f2);
            if (lhs != rhs)
                report.failures.push_back({"functoriality failure on " + f1.to_string() +
                                               " then " + f2.to_string(),
                                           lhs, rhs});
            ++done;
        } catch (const OutOfTruncation&) {
            // factorization needed one degree more than stored; draw again
        }
    }
}

}  // namespace detail

/// Checks all generator relations expressible within truncation. For
/// duplicial objects the extra degeneracies take part in the pairwise checks
/// and in 50 seeded composable-word functoriality probes; there is no short
/// closed list of duplicial relations, functoriality is the ground truth.
template <class Obj>
ValidationReport validate(const Obj& x) {
    ValidationReport report;
    try {
        detail::check_object_shapes(x);
    } catch (const std::invalid_argument& e) {
        report.failures.push_back({e.what(), IntMatrix(), IntMatrix()});
        return report;
    }
    detail::relation_pair_check(x, report);
    if (Obj::has_extra_degeneracy) detail::functoriality_probes(x, report, 0x5eed, 50);
    return report;
}

/// Morphism of truncated (du)plicial groups: one matrix per degree,
/// components[n] : X_n -> Y_n.
template <class Obj>
struct ObjectMorphism {
    Obj source;
    Obj target;
    std::vector<IntMatrix> components;
};

using SimplicialMorphism = ObjectMorphism<TruncatedSimplicialGroup>;
using DuplicialMorphism = ObjectMorphism<TruncatedDuplicialGroup>;

/// Naturality against every stored generator: components[a] * X(h) ==
/// Y(h) * components[b] for h : <a> -> <b>.
template <class Obj>
ValidationReport validate_morphism(const ObjectMorphism<Obj>& f) {
    ValidationReport report;
    const Obj& x = f.source;
    const Obj& y = f.target;
    if (x.trunc != y.trunc || f.components.size() != x.trunc + 1) {
        report.failures.push_back({"morphism: truncation/component mismatch", {}, {}});
        return report;
    }
    for (std::size_t n = 1; n <= x.trunc; ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            IntMatrix lhs = f.components[n - 1] * x.faces[n][i];
            IntMatrix rhs = y.faces[n][i] * f.components[n];
            if (lhs != rhs)
                report.failures.push_back({"morphism fails to commute with face " +
                                               std::to_string(i) + " at degree " +
                                               std::to_string(n),
                                           lhs, rhs});
        }
    for (std::size_t n = 0; n < x.trunc; ++n)
        for (std::size_t i = 0; i < x.degeneracies[n].size(); ++i) {
            IntMatrix lhs = f.components[n + 1] * x.degeneracies[n][i];
            IntMatrix rhs = y.degeneracies[n][i] * f.components[n];
            if (lhs != rhs)
                report.failures.push_back({"morphism fails to commute with degeneracy " +
                                               std::to_string(i) + " at degree " +
                                               std::to_string(n),
                                           lhs, rhs});
        }
    return report;
}

}  // namespace dukan
