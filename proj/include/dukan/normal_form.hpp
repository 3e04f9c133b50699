#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dukan/int.hpp"
#include "dukan/matrix.hpp"

namespace dukan {

/// Subgroup of Z^ambient_rank given by a basis in canonical column Hermite
/// form. Canonical means: pivot rows strictly increase column by column,
/// pivots are positive, and in each pivot row the entries left of the pivot
/// satisfy 0 <= entry < pivot. Two subgroups are equal iff their canonical
/// bases are equal matrices.
struct Subgroup {
    std::size_t ambient_rank = 0;
    IntMatrix basis;  // ambient_rank x rank, full column rank, column HNF

    std::size_t rank() const { return basis.cols(); }
};

struct SmithDecomposition {
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix S;  // rows x cols, diagonal, d_1 | d_2 | ..., zeros trailing
    IntMatrix V;  // cols x cols, unimodular
    std::vector<Int> invariant_factors;  // the nonzero diagonal entries
};

/// Column-style Hermite normal form. Column operations only, so the column
/// span over Z is preserved. Same shape as the input; zero columns trail.
inline IntMatrix hnf(const IntMatrix& a) {
    IntMatrix h = a;
    const std::size_t rows = h.rows(), cols = h.cols();
    std::size_t pivot_col = 0;
    for (std::size_t row = 0; row < rows && pivot_col < cols; ++row) {
        // Clear row `row` on columns > pivot_col by gcd descent.
        for (;;) {
            std::size_t best = cols;
            for (std::size_t j = pivot_col; j < cols; ++j) {
                if (h.at(row, j) == 0) continue;
                if (best == cols || abs(h.at(row, j)) < abs(h.at(row, best))) best = j;
            }
            if (best == cols) break;  // row empty from pivot_col on
            h.swap_cols(pivot_col, best);
            bool clean = true;
            for (std::size_t j = pivot_col + 1; j < cols; ++j) {
                if (h.at(row, j) == 0) continue;
                Int q = h.at(row, j) / h.at(row, pivot_col);  // truncated is fine here
                h.add_col_multiple(j, pivot_col, -q);
                if (h.at(row, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (pivot_col < cols && h.at(row, pivot_col) != 0) {
            if (h.at(row, pivot_col) < 0) h.negate_col(pivot_col);
            // Reduce the entries left of the pivot into [0, pivot).
            for (std::size_t j = 0; j < pivot_col; ++j) {
                Int q = floor_div(h.at(row, j), h.at(row, pivot_col));
                h.add_col_multiple(j, pivot_col, -q);
            }
            ++pivot_col;
        }
    }
    return h;
}

/// Smith normal form with transforms: U * A * V == S. Pivot selection is
/// minimum absolute value, which keeps intermediate growth tame at the sizes
/// this library works at.
inline SmithDecomposition snf(const IntMatrix& a) {
    SmithDecomposition out;
    out.S = a;
    out.U = IntMatrix::identity(a.rows());
    out.V = IntMatrix::identity(a.cols());
    IntMatrix& s = out.S;
    IntMatrix& u = out.U;
    IntMatrix& v = out.V;
    const std::size_t rows = s.rows(), cols = s.cols();

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Min-abs nonzero pivot in the trailing block.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (s.at(i, j) == 0) continue;
                if (pi == rows || abs(s.at(i, j)) < abs(s.at(pi, pj))) { pi = i; pj = j; }
            }
        if (pi == rows) break;  // trailing block is zero
        s.swap_rows(t, pi); u.swap_rows(t, pi);
        s.swap_cols(t, pj); v.swap_cols(t, pj);

        for (;;) {
            // Clear column t below the pivot.
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s.at(i, t) == 0) continue;
                Int q = s.at(i, t) / s.at(t, t);
                s.add_row_multiple(i, t, -q); u.add_row_multiple(i, t, -q);
                if (s.at(i, t) != 0) {
                    s.swap_rows(t, i); u.swap_rows(t, i);  // remainder is smaller
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Clear row t right of the pivot.
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s.at(t, j) == 0) continue;
                Int q = s.at(t, j) / s.at(t, t);
                s.add_col_multiple(j, t, -q); v.add_col_multiple(j, t, -q);
                if (s.at(t, j) != 0) {
                    s.swap_cols(t, j); v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Pivot now divides its row and column. Enforce divisibility of the
            // whole trailing block; if some entry resists, fold its column in
            // and eliminate again.
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols && fixed; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        s.add_col_multiple(t, j, 1); v.add_col_multiple(t, j, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (s.at(t, t) < 0) { s.negate_row(t); u.negate_row(t); }
        ++t;
    }
    for (std::size_t i = 0; i < t; ++i) out.invariant_factors.push_back(s.at(i, i));
    return out;
}

/// Signed determinant by fraction-free (Bareiss) elimination. det of the 0x0
/// matrix is 1.
inline Int det(const IntMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("det of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t piv = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { piv = i; break; }
            if (piv == n) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
                check_entry_limit(m.at(i, j));
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

/// True iff a is a square matrix with determinant +-1, i.e. an isomorphism of
/// free Z-modules.
inline bool is_unimodular(const IntMatrix& a) {
    if (!a.is_square()) return false;
    Int d = det(a);
    return d == 1 || d == -1;
}

/// Drops zero columns (used to turn an HNF image into a basis).
inline IntMatrix drop_zero_columns(const IntMatrix& a) {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        bool nonzero = false;
        for (std::size_t i = 0; i < a.rows() && !nonzero; ++i) nonzero = a.at(i, j) != 0;
        if (nonzero) keep.push_back(j);
    }
    IntMatrix r(a.rows(), keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) r.at(i, j) = a.at(i, keep[j]);
    return r;
}

/// Subgroup spanned by the columns of m (not necessarily independent).
inline Subgroup span(const IntMatrix& m) {
    return Subgroup{m.rows(), drop_zero_columns(hnf(m))};
}

/// Z-basis of {v : A v = 0}, canonicalized. The kernel of an integer matrix
/// is a saturated subgroup, so the columns of V beyond the Smith rank are a
/// basis of it.
inline Subgroup kernel_basis(const IntMatrix& a) {
    SmithDecomposition sd = snf(a);
    const std::size_t r = sd.invariant_factors.size();
    IntMatrix gens = sd.V.submatrix(0, a.cols(), r, a.cols());
    return Subgroup{a.cols(), drop_zero_columns(hnf(gens))};
}

/// Solves A X = B over Z for a full matrix of right-hand sides; std::nullopt
/// if any column has no integral solution.
inline std::optional<IntMatrix> solve_matrix(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve: row mismatch " + a.shape_string() + " vs " +
                                    b.shape_string());
    SmithDecomposition sd = snf(a);
    const std::size_t r = sd.invariant_factors.size();
    IntMatrix ub = sd.U * b;
    IntMatrix y(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i < r) {
                if (ub.at(i, j) % sd.S.at(i, i) != 0) return std::nullopt;
                y.at(i, j) = ub.at(i, j) / sd.S.at(i, i);
            } else if (ub.at(i, j) != 0) {
                return std::nullopt;
            }
        }
    }
    return sd.V * y;
}

/// Solves A x = b over Z; std::nullopt means b is not in the Z-column span.
inline std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& b) {
    auto x = solve_matrix(a, col_vector(b));
    if (!x) return std::nullopt;
    std::vector<Int> out(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) out[i] = x->at(i, 0);
    return out;
}

/// Is v in the subgroup?
inline bool contains(const Subgroup& g, const std::vector<Int>& v) {
    if (v.size() != g.ambient_rank) throw std::invalid_argument("membership: rank mismatch");
    return solve(g.basis, v).has_value();
}

/// Invariant factors of Z^ambient / span(sub): nontrivial torsion factors in
/// divisibility order, then one 0 per free summand.
inline std::vector<Int> quotient_presentation(std::size_t ambient_rank, const Subgroup& sub) {
    if (sub.ambient_rank != ambient_rank)
        throw std::invalid_argument("quotient: ambient rank mismatch");
    SmithDecomposition sd = snf(sub.basis);
    std::vector<Int> out;
    for (const Int& d : sd.invariant_factors)
        if (d != 1) out.push_back(d);
    for (std::size_t i = sd.invariant_factors.size(); i < ambient_rank; ++i) out.emplace_back(0);
    return out;
}

/// Invariant factors of ker(d_low) / im(d_high); requires d_low * d_high == 0.
inline std::vector<Int> homology(const IntMatrix& d_low, const IntMatrix& d_high) {
    if (d_low.cols() != d_high.rows())
        throw std::invalid_argument("homology: differentials not composable");
    if (!(d_low * d_high).is_zero())
        throw std::invalid_argument("homology: d_low * d_high != 0");
    Subgroup ker = kernel_basis(d_low);
    // The kernel is saturated, so the cycles hit by d_high have integral
    // coordinates in the kernel basis.
    auto in_kernel_coords = solve_matrix(ker.basis, d_high);
    if (!in_kernel_coords)
        throw std::logic_error("homology: image does not lie in the kernel lattice");
    return quotient_presentation(ker.rank(), span(*in_kernel_coords));
}

}  // namespace dukan
