#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dukan {

/// Delta < Xi < ParaCyclic as nested categories; the enum order matches the
/// nesting so the join of two flavors is std::max.
enum class Flavor { Delta, Xi, ParaCyclic };

inline const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Delta: return "Delta";
        case Flavor::Xi: return "Xi";
        case Flavor::ParaCyclic: return "ParaCyclic";
    }
    return "?";
}

/// A morphism <m> -> <n> of Delta, Xi or the paracyclic category, stored by
/// its values on the fundamental domain {0, ..., m}. The full map Z -> Z is
/// the unique extension with f(a + m + 1) = f(a) + n + 1; it is weakly
/// increasing iff the stored values are and f(m) <= f(0) + n + 1.
struct XiMap {
    Flavor flavor = Flavor::Delta;
    std::int64_t src = 0;  // degree m
    std::int64_t tgt = 0;  // degree n
    std::vector<std::int64_t> values;  // f(0), ..., f(m)

    XiMap() = default;

    XiMap(Flavor fl, std::int64_t m, std::int64_t n, std::vector<std::int64_t> vals)
        : flavor(fl), src(m), tgt(n), values(std::move(vals)) {
        if (m < 0 || n < 0) throw std::invalid_argument("negative degree");
        if (values.size() != static_cast<std::size_t>(m) + 1)
            throw std::invalid_argument("value vector length must be src + 1");
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            if (values[i] > values[i + 1])
                throw std::invalid_argument("values must be weakly increasing");
        if (values.back() > values.front() + n + 1)
            throw std::invalid_argument("periodic boundedness f(m) <= f(0) + n + 1 violated");
        if (fl != Flavor::ParaCyclic && values.front() < 0)
            throw std::invalid_argument("Xi and Delta maps require f(0) >= 0");
        if (fl == Flavor::Delta && values.back() > n)
            throw std::invalid_argument("Delta maps require f(m) <= n");
    }

    /// Equality is src/tgt/values; the flavor tag records category membership
    /// and does not affect which function Z -> Z this is.
    bool operator==(const XiMap& o) const {
        return src == o.src && tgt == o.tgt && values == o.values;
    }
    bool operator!=(const XiMap& o) const { return !(*this == o); }

    /// Value of the periodic extension at any a in Z.
    std::int64_t eval_at(std::int64_t a) const {
        const std::int64_t period = src + 1;
        std::int64_t q = a >= 0 ? a / period : -((-a + period - 1) / period);
        std::int64_t r = a - q * period;
        return values[static_cast<std::size_t>(r)] + q * (tgt + 1);
    }

    std::string to_string() const {
        std::string s = std::string(flavor_name(flavor)) + " <" + std::to_string(src) +
                        ">-><" + std::to_string(tgt) + "> (";
        for (std::size_t i = 0; i < values.size(); ++i)
            s += (i ? "," : "") + std::to_string(values[i]);
        return s + ")";
    }
};

inline XiMap xi_identity(std::int64_t n, Flavor fl = Flavor::Delta) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
    return XiMap(fl, n, n, std::move(v));
}

/// Face map del_i : <n-1> -> <n>, 0 <= i <= n, skipping the value i.
inline XiMap face(std::int64_t n, std::int64_t i) {
    if (n < 1 || i < 0 || i > n) throw std::out_of_range("face(n, i) needs 0 <= i <= n, n >= 1");
    std::vector<std::int64_t> v;
    v.reserve(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j <= n - 1; ++j) v.push_back(j < i ? j : j + 1);
    return XiMap(Flavor::Delta, n - 1, n, std::move(v));
}

/// Degeneracy sigma_i : <n+1> -> <n>, 0 <= i <= n + 1. Indices up to n are the
/// classical degeneracies (value i repeats); i = n + 1 is the extra duplicial
/// degeneracy with fundamental-domain values (0, 1, ..., n, n + 1), which
/// collapses n + 1 and n + 2 once extended periodically.
inline XiMap degeneracy(std::int64_t n, std::int64_t i) {
    if (n < 0 || i < 0 || i > n + 1)
        throw std::out_of_range("degeneracy(n, i) needs 0 <= i <= n + 1");
    std::vector<std::int64_t> v;
    v.reserve(static_cast<std::size_t>(n) + 2);
    if (i == n + 1) {
        for (std::int64_t j = 0; j <= n + 1; ++j) v.push_back(j);
        return XiMap(Flavor::Xi, n + 1, n, std::move(v));
    }
    for (std::int64_t j = 0; j <= n + 1; ++j) v.push_back(j <= i ? j : j - 1);
    return XiMap(Flavor::Delta, n + 1, n, std::move(v));
}

/// Shift power t_n^k : <n> -> <n>, i -> i + k. Nonnegative k lives in Xi,
/// negative k only in the paracyclic category.
inline XiMap shift(std::int64_t n, std::int64_t k) {
    std::vector<std::int64_t> v;
    v.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t j = 0; j <= n; ++j) v.push_back(j + k);
    Flavor fl = k < 0 ? Flavor::ParaCyclic : (k == 0 ? Flavor::Delta : Flavor::Xi);
    return XiMap(fl, n, n, std::move(v));
}

/// g after f. The result carries the weakest (largest) of the two flavors.
inline XiMap compose(const XiMap& g, const XiMap& f) {
    if (f.tgt != g.src)
        throw std::invalid_argument("compose: degree mismatch " + f.to_string() + " then " +
                                    g.to_string());
    std::vector<std::int64_t> v;
    v.reserve(f.values.size());
    for (std::int64_t x : f.values) v.push_back(g.eval_at(x));
    return XiMap(std::max(f.flavor, g.flavor), f.src, g.tgt, std::move(v));
}

/// Pointwise comparison on the fundamental domain (periodicity extends it to
/// all of Z). No flavor requirement; see two_morphism_leq for the strict
/// 2-morphism predicate.
inline bool pointwise_leq(const XiMap& f, const XiMap& g) {
    if (f.src != g.src || f.tgt != g.tgt)
        throw std::invalid_argument("pointwise_leq: shape mismatch");
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] > g.values[i]) return false;
    return true;
}

/// There is a 2-morphism f => g iff f <= g pointwise.
inline bool two_morphism_leq(const XiMap& f, const XiMap& g) {
    if (f.flavor != g.flavor) throw std::invalid_argument("two_morphism_leq: flavor mismatch");
    return pointwise_leq(f, g);
}

/// l -| r in the poset-enriched 2-category: counit l o r <= id and unit
/// id <= r o l. Triangle identities are automatic since every diagram in a
/// poset commutes.
inline bool verify_adjunction(const XiMap& l, const XiMap& r) {
    if (l.tgt != r.src || r.tgt != l.src)
        throw std::invalid_argument("verify_adjunction: degree mismatch");
    XiMap lr = compose(l, r);
    XiMap rl = compose(r, l);
    return pointwise_leq(lr, xi_identity(lr.src, lr.flavor)) &&
           pointwise_leq(xi_identity(rl.src, rl.flavor), rl);
}

/// Strictly increasing on {0, ..., m}; globally such a map can still collapse
/// across the fundamental-domain boundary.
inline bool is_injective_on_fd(const XiMap& f) {
    for (std::size_t i = 0; i + 1 < f.values.size(); ++i)
        if (f.values[i] == f.values[i + 1]) return false;
    return true;
}

inline bool is_delta(const XiMap& f) {
    return f.values.front() >= 0 && f.values.back() <= f.tgt;
}

/// Vertex a of the cube: the endo-simplex [n] -> [n], j -> j + a_j with the
/// convention a_n = 0. a must have length n with 0/1 entries.
inline XiMap cube_f(std::int64_t n, const std::vector<int>& a) {
    if (a.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("cube: |a| != n");
    std::vector<std::int64_t> v;
    v.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t j = 0; j < n; ++j) {
        if (a[static_cast<std::size_t>(j)] != 0 && a[static_cast<std::size_t>(j)] != 1)
            throw std::invalid_argument("cube: entries must be bits");
        v.push_back(j + a[static_cast<std::size_t>(j)]);
    }
    v.push_back(n);
    return XiMap(Flavor::Delta, n, n, std::move(v));
}

// ---------------------------------------------------------------------------
// Generator words

struct GenToken {
    enum class Kind { Face, Degeneracy, Shift };
    Kind kind;
    std::int64_t level;  // the n of face(n, i) / degeneracy(n, i) / shift(n, k)
    std::int64_t arg;    // index i, or power k for shifts

    std::int64_t src_degree() const {
        switch (kind) {
            case Kind::Face: return level - 1;
            case Kind::Degeneracy: return level + 1;
            case Kind::Shift: return level;
        }
        return 0;
    }
    std::int64_t tgt_degree() const { return level; }

    XiMap to_map() const {
        switch (kind) {
            case Kind::Face: return face(level, arg);
            case Kind::Degeneracy: return degeneracy(level, arg);
            case Kind::Shift: return shift(level, arg);
        }
        throw std::logic_error("bad token");
    }

    bool operator==(const GenToken& o) const {
        return kind == o.kind && level == o.level && arg == o.arg;
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Face: return "d[" + std::to_string(level) + "," + std::to_string(arg) + "]";
            case Kind::Degeneracy:
                return "s[" + std::to_string(level) + "," + std::to_string(arg) + "]";
            case Kind::Shift: return "t[" + std::to_string(level) + "]^" + std::to_string(arg);
        }
        return "?";
    }
};

using GeneratorWord = std::vector<GenToken>;

/// Composite of a word read in application order (first token acts first).
/// The empty word is the identity of `src`.
inline XiMap compose_word(const GeneratorWord& w, std::int64_t src) {
    XiMap acc = xi_identity(src);
    for (const GenToken& t : w) acc = compose(t.to_map(), acc);
    return acc;
}

/// Factors a Delta or Xi map into generators, in application order. Greedy
/// peeling: collapse an adjacent equal pair with an ordinary degeneracy;
/// else, if the map wraps (f(m) = f(0) + n + 1), peel the extra degeneracy;
/// else peel faces for the values missed inside the window; what remains is a
/// pure shift power. Each step lowers src + tgt, so this terminates. Delta
/// inputs never reach the wrap or shift cases, so their words use classical
/// generators only.
inline GeneratorWord factorize(const XiMap& f0) {
    if (f0.flavor == Flavor::ParaCyclic || f0.values.front() < 0)
        throw std::invalid_argument("factorize is defined for Delta and Xi maps only");
    GeneratorWord prefix;  // degeneracies, innermost first
    GeneratorWord faces_reversed;
    XiMap f = f0;
    for (;;) {
        const std::int64_t m = f.src, n = f.tgt;
        // Ordinary degeneracy: f factors through sigma_i collapsing {i, i+1}.
        std::int64_t dup = -1;
        for (std::int64_t i = 0; i < m; ++i)
            if (f.values[static_cast<std::size_t>(i)] == f.values[static_cast<std::size_t>(i) + 1]) {
                dup = i;
                break;
            }
        if (dup >= 0) {
            prefix.push_back({GenToken::Kind::Degeneracy, m - 1, dup});
            std::vector<std::int64_t> v = f.values;
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(dup) + 1);
            f = XiMap(f.flavor, m - 1, n, std::move(v));
            continue;
        }
        // Wrap: f identifies m with m + 1 once extended, i.e. it factors
        // through the extra degeneracy at level m - 1.
        if (m >= 1 && f.values.back() == f.values.front() + n + 1) {
            prefix.push_back({GenToken::Kind::Degeneracy, m - 1, m});
            std::vector<std::int64_t> v(f.values.begin(), f.values.end() - 1);
            f = XiMap(Flavor::Xi, m - 1, n, std::move(v));
            continue;
        }
        // Injective, no wrap: image misses whole residue classes; peel a face
        // for the first missed value in the window.
        std::int64_t missed = -1;
        for (std::int64_t v = f.values.front() + 1; v <= f.values.front() + n; ++v)
            if (!std::binary_search(f.values.begin(), f.values.end(), v)) {
                missed = v;
                break;
            }
        if (missed >= 0) {
            const std::int64_t i = ((missed % (n + 1)) + n + 1) % (n + 1);
            faces_reversed.push_back({GenToken::Kind::Face, n, i});
            // Pull back through del_i: delete the missed residue class and
            // renumber. For w = q(n+1) + r with r != i: preimage q*n + (r<i ? r : r-1).
            std::vector<std::int64_t> v;
            v.reserve(f.values.size());
            for (std::int64_t w : f.values) {
                std::int64_t q = w >= 0 ? w / (n + 1) : -((-w + n) / (n + 1));
                std::int64_t r = w - q * (n + 1);
                v.push_back(q * n + (r < i ? r : r - 1));
            }
            f = XiMap(f.flavor == Flavor::Delta ? Flavor::Delta : Flavor::Xi, m, n - 1,
                      std::move(v));
            continue;
        }
        // Full window: f = t_n^k with k = f(0).
        if (f.values.front() > 0)
            prefix.push_back({GenToken::Kind::Shift, n, f.values.front()});
        break;
    }
    prefix.insert(prefix.end(), faces_reversed.rbegin(), faces_reversed.rend());
    return prefix;
}

// ---------------------------------------------------------------------------
// Enumeration helpers (finite hom-set slices; Xi hom-sets are infinite, so
// callers always supply a bound).

/// All strictly increasing (m+1)-tuples in [lo, hi], lexicographic.
inline std::vector<std::vector<std::int64_t>> increasing_tuples(std::int64_t m, std::int64_t lo,
                                                                std::int64_t hi) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur;
    auto rec = [&](auto&& self, std::int64_t next_min, std::int64_t remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t v = next_min; v + remaining - 1 <= hi; ++v) {
            cur.push_back(v);
            self(self, v + 1, remaining - 1);
            cur.pop_back();
        }
    };
    rec(rec, lo, m + 1);
    return out;
}

/// Injective monotone maps [m] -> [n], lexicographic on values.
inline std::vector<XiMap> enumerate_injective_delta(std::int64_t m, std::int64_t n) {
    std::vector<XiMap> out;
    for (auto& v : increasing_tuples(m, 0, n)) out.emplace_back(Flavor::Delta, m, n, v);
    return out;
}

/// All monotone maps [m] -> [n], lexicographic on values.
inline std::vector<XiMap> enumerate_monotone(std::int64_t m, std::int64_t n) {
    std::vector<XiMap> out;
    std::vector<std::int64_t> cur;
    auto rec = [&](auto&& self, std::int64_t next_min, std::int64_t remaining) -> void {
        if (remaining == 0) {
            out.emplace_back(Flavor::Delta, m, n, cur);
            return;
        }
        for (std::int64_t v = next_min; v <= n; ++v) {
            cur.push_back(v);
            self(self, v, remaining - 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, m + 1);
    return out;
}

/// Xi maps <m> -> <n> injective on the fundamental domain with
/// 0 <= f(0) and f(m) <= level. Such maps have m <= n + 1.
inline std::vector<XiMap> enumerate_xi_injective_fd(std::int64_t m, std::int64_t n,
                                                    std::int64_t level) {
    std::vector<XiMap> out;
    if (m > n + 1) return out;
    for (std::int64_t f0 = 0; f0 <= level; ++f0) {
        const std::int64_t hi = std::min(level, f0 + n + 1);
        for (auto& rest : increasing_tuples(m - 1, f0 + 1, hi)) {
            std::vector<std::int64_t> v;
            v.reserve(static_cast<std::size_t>(m) + 1);
            v.push_back(f0);
            v.insert(v.end(), rest.begin(), rest.end());
            out.emplace_back(Flavor::Xi, m, n, std::move(v));
        }
    }
    return out;
}

}  // namespace dukan
