#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dukan/complex.hpp"
#include "dukan/functor.hpp"
#include "dukan/matrix.hpp"
#include "dukan/normal_form.hpp"
#include "dukan/xi.hpp"

namespace dukan {

/// Normalized chains C(X)_n = intersection of ker d_i for 0 <= i < n, with
/// the final face as differential. inclusions[n] holds a basis of C(X)_n as
/// columns inside X_n.
struct NormalizedChainsResult {
    ChainComplex complex;
    std::vector<IntMatrix> inclusions;
};

inline NormalizedChainsResult normalized_chains(const TruncatedSimplicialGroup& x) {
    NormalizedChainsResult out;
    out.complex.trunc = x.trunc;
    out.inclusions.resize(x.trunc + 1);
    out.inclusions[0] = IntMatrix::identity(x.ranks[0]);
    out.complex.ranks.push_back(x.ranks[0]);
    out.complex.d.resize(x.trunc + 1);
    for (std::size_t n = 1; n <= x.trunc; ++n) {
        IntMatrix stacked(0, x.ranks[n]);
        for (std::size_t i = 0; i < n; ++i) stacked = IntMatrix::vstack(stacked, x.faces[n][i]);
        out.inclusions[n] = kernel_basis(stacked).basis;
        out.complex.ranks.push_back(out.inclusions[n].cols());
        // The final face preserves C; express its restriction in the bases.
        auto dn = solve_matrix(out.inclusions[n - 1], x.faces[n][n] * out.inclusions[n]);
        if (!dn)
            throw std::invalid_argument(
                "normalized_chains: final face does not preserve the kernel subgroup; "
                "input is not simplicial");
        out.complex.d[n] = *dn;
    }
    return out;
}

/// Dold-Kan nerve data. Degree n of the nerve is realized as the kernel of
/// the cell-equation constraints inside the ambient sum V_n over all
/// injective monotone tau : [m] -> [n] of one copy of B_m. The tau are
/// enumerated by m ascending, then lexicographically on values; this order is
/// part of the wire format.
struct DoldKanNerve {
    TruncatedSimplicialGroup object;
    ChainComplex source;
    std::vector<std::vector<XiMap>> cells;                       // per degree
    std::vector<std::vector<std::size_t>> offsets;               // block offset per cell
    std::vector<std::size_t> ambient_dims;                       // dim V_n
    std::vector<std::map<std::vector<std::int64_t>, std::size_t>> cell_index;
    std::vector<IntMatrix> kernels;                              // V_n x rank(N_n)

    std::size_t block_offset(std::size_t degree, const XiMap& tau) const {
        return offsets[degree][cell_index[degree].at(tau.values)];
    }
};

namespace detail {

/// Ambient matrix V_from -> V_to of "precompose the family with g", where
/// g : [to] -> [from] and coordinates at non-injective composites are zero.
inline IntMatrix nerve_ambient_action(const DoldKanNerve& nv, std::size_t from, std::size_t to,
                                      const XiMap& g) {
    IntMatrix amb(nv.ambient_dims[to], nv.ambient_dims[from]);
    for (std::size_t c = 0; c < nv.cells[to].size(); ++c) {
        const XiMap& sigma = nv.cells[to][c];
        XiMap composed = compose(g, sigma);
        if (!is_injective_on_fd(composed)) continue;
        const std::size_t rank_m = nv.source.ranks[static_cast<std::size_t>(sigma.src)];
        amb.set_block(nv.offsets[to][c], nv.block_offset(from, composed),
                      IntMatrix::identity(rank_m));
    }
    return amb;
}

}  // namespace detail

/// Builds the Dold-Kan nerve of a chain complex up to degree m_trunc
/// (requires b.trunc >= m_trunc; level n touches B only up to degree n).
inline DoldKanNerve dold_kan_nerve(const ChainComplex& b, std::size_t m_trunc) {
    if (m_trunc > b.trunc)
        throw std::invalid_argument("dold_kan_nerve: truncation " + std::to_string(m_trunc) +
                                    " exceeds complex truncation " + std::to_string(b.trunc));
    DoldKanNerve nv;
    nv.source = b;
    nv.object.trunc = m_trunc;
    nv.cells.resize(m_trunc + 1);
    nv.offsets.resize(m_trunc + 1);
    nv.ambient_dims.resize(m_trunc + 1);
    nv.cell_index.resize(m_trunc + 1);
    nv.kernels.resize(m_trunc + 1);
    for (std::size_t n = 0; n <= m_trunc; ++n) {
        auto& cells = nv.cells[n];
        for (std::size_t m = 0; m <= n; ++m) {
            auto injective = enumerate_injective_delta(static_cast<std::int64_t>(m),
                                                       static_cast<std::int64_t>(n));
            cells.insert(cells.end(), injective.begin(), injective.end());
        }
        std::size_t off = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            nv.offsets[n].push_back(off);
            nv.cell_index[n][cells[c].values] = c;
            off += b.ranks[static_cast<std::size_t>(cells[c].src)];
        }
        nv.ambient_dims[n] = off;

        // One constraint block d(b_tau) = sum_i (-1)^{m-i} b_{tau o del_i}
        // per cell with m >= 1.
        std::size_t constraint_rows = 0;
        for (const XiMap& tau : cells)
            if (tau.src >= 1) constraint_rows += b.ranks[static_cast<std::size_t>(tau.src) - 1];
        IntMatrix constraints(constraint_rows, nv.ambient_dims[n]);
        std::size_t row = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const XiMap& tau = cells[c];
            const std::int64_t m = tau.src;
            if (m < 1) continue;
            constraints.set_block(row, nv.offsets[n][c], b.d[static_cast<std::size_t>(m)]);
            for (std::int64_t i = 0; i <= m; ++i) {
                XiMap boundary = compose(tau, face(m, i));
                const Int coeff = ((m - i) % 2 == 0) ? Int(-1) : Int(1);
                constraints.add_block(row, nv.block_offset(n, boundary),
                                      IntMatrix::identity(b.ranks[static_cast<std::size_t>(m) - 1]),
                                      coeff);
            }
            row += b.ranks[static_cast<std::size_t>(m) - 1];
        }
        nv.kernels[n] = kernel_basis(constraints).basis;
        nv.object.ranks.push_back(nv.kernels[n].cols());
    }

    // Structure maps per generator; generic morphisms go through factorize.
    nv.object.faces.resize(m_trunc + 1);
    for (std::size_t n = 1; n <= m_trunc; ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            IntMatrix amb = detail::nerve_ambient_action(
                nv, n, n - 1, face(static_cast<std::int64_t>(n), static_cast<std::int64_t>(i)));
            auto mat = solve_matrix(nv.kernels[n - 1], amb * nv.kernels[n]);
            if (!mat) throw std::logic_error("nerve face does not preserve cell equations");
            nv.object.faces[n].push_back(*mat);
        }
    nv.object.degeneracies.resize(m_trunc);
    for (std::size_t n = 0; n < m_trunc; ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            IntMatrix amb = detail::nerve_ambient_action(
                nv, n, n + 1,
                degeneracy(static_cast<std::int64_t>(n), static_cast<std::int64_t>(i)));
            auto mat = solve_matrix(nv.kernels[n + 1], amb * nv.kernels[n]);
            if (!mat) throw std::logic_error("nerve degeneracy does not preserve cell equations");
            nv.object.degeneracies[n].push_back(*mat);
        }
    return nv;
}

/// Classical rank of N(B)_n: one monotone surjection [n] ->> [m] per
/// C(n, m), each contributing a copy of B_m.
inline std::size_t nerve_rank_formula(const ChainComplex& b, std::size_t n) {
    std::size_t total = 0;
    for (std::size_t m = 0; m <= n && m <= b.trunc; ++m) {
        // binomial C(n, m)
        std::size_t binom = 1;
        for (std::size_t i = 0; i < m; ++i) binom = binom * (n - i) / (i + 1);
        total += binom * b.ranks[m];
    }
    return total;
}

/// Counit C(N(B))_n -> B_n: project a normalized family to its coordinate at
/// the identity cell. Every degree matrix is unimodular.
inline std::vector<IntMatrix> counit(const DoldKanNerve& nv) {
    NormalizedChainsResult nc = normalized_chains(nv.object);
    std::vector<IntMatrix> out;
    for (std::size_t n = 0; n <= nv.object.trunc; ++n) {
        const std::size_t off =
            nv.block_offset(n, xi_identity(static_cast<std::int64_t>(n)));
        IntMatrix embedded = nv.kernels[n] * nc.inclusions[n];
        out.push_back(embedded.submatrix(off, off + nv.source.ranks[n], 0, embedded.cols()));
    }
    return out;
}

/// Unit X_n -> N(C(X))_n: x goes to the family (pi_m(tau^*(x)))_tau,
/// expressed in the nerve kernel basis.
struct UnitResult {
    NormalizedChainsResult chains;
    DoldKanNerve nerve;
    std::vector<IntMatrix> components;
};

inline UnitResult unit(const TruncatedSimplicialGroup& x, std::size_t m_trunc) {
    if (m_trunc > x.trunc) throw std::invalid_argument("unit: truncation exceeds object");
    UnitResult out;
    out.chains = normalized_chains(x);
    out.nerve = dold_kan_nerve(out.chains.complex, m_trunc);
    std::vector<IntMatrix> pi;
    for (std::size_t m = 0; m <= m_trunc; ++m) pi.push_back(pi_matrix(x, m));
    for (std::size_t n = 0; n <= m_trunc; ++n) {
        IntMatrix ambient(out.nerve.ambient_dims[n], x.ranks[n]);
        for (std::size_t c = 0; c < out.nerve.cells[n].size(); ++c) {
            const XiMap& tau = out.nerve.cells[n][c];
            const std::size_t m = static_cast<std::size_t>(tau.src);
            IntMatrix in_x = pi[m] * evaluate(x, tau);
            auto in_c = solve_matrix(out.chains.inclusions[m], in_x);
            if (!in_c) throw std::logic_error("unit: pi image not in normalized chains");
            ambient.set_block(out.nerve.offsets[n][c], 0, *in_c);
        }
        auto comp = solve_matrix(out.nerve.kernels[n], ambient);
        if (!comp) throw std::logic_error("unit: family violates cell equations");
        out.components.push_back(*comp);
    }
    return out;
}

/// N(g) for a per-degree chain map g : B -> B2, acting blockwise on families.
/// Both nerves must have the same truncation.
inline std::vector<IntMatrix> nerve_of_chain_map(const DoldKanNerve& src, const DoldKanNerve& tgt,
                                                 const std::vector<IntMatrix>& g) {
    if (src.object.trunc != tgt.object.trunc)
        throw std::invalid_argument("nerve_of_chain_map: truncation mismatch");
    std::vector<IntMatrix> out;
    for (std::size_t n = 0; n <= src.object.trunc; ++n) {
        IntMatrix block(tgt.ambient_dims[n], src.ambient_dims[n]);
        for (std::size_t c = 0; c < src.cells[n].size(); ++c) {
            const std::size_t m = static_cast<std::size_t>(src.cells[n][c].src);
            block.set_block(tgt.offsets[n][c], src.offsets[n][c], g.at(m));
        }
        auto comp = solve_matrix(tgt.kernels[n], block * src.kernels[n]);
        if (!comp) throw std::logic_error("nerve_of_chain_map: not a chain map");
        out.push_back(*comp);
    }
    return out;
}

}  // namespace dukan
