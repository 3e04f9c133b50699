#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "dukan/matrix.hpp"
#include "dukan/normal_form.hpp"

namespace dukan {

/// Connective chain complex of free abelian groups, truncated at degree
/// trunc. d[n] : degree n -> degree n-1 is stored at index n (index 0 is an
/// unused placeholder so indices match degrees).
struct ChainComplex {
    std::size_t trunc = 0;
    std::vector<std::size_t> ranks;  // trunc + 1 entries
    std::vector<IntMatrix> d;        // d[n] for 1 <= n <= trunc, shape r_{n-1} x r_n

    std::size_t rank(std::size_t n) const { return ranks.at(n); }

    void check_shapes() const {
        if (ranks.size() != trunc + 1) throw std::invalid_argument("chain: ranks size");
        if (d.size() != trunc + 1) throw std::invalid_argument("chain: d size");
        for (std::size_t n = 1; n <= trunc; ++n)
            if (d[n].rows() != ranks[n - 1] || d[n].cols() != ranks[n])
                throw std::invalid_argument("chain: d[" + std::to_string(n) + "] has shape " +
                                            d[n].shape_string());
    }

    /// d^2 == 0 wherever both factors exist.
    bool is_complex() const {
        for (std::size_t n = 1; n + 1 <= trunc; ++n)
            if (!(d[n] * d[n + 1]).is_zero()) return false;
        return true;
    }
};

/// Chain complex with an extra degree-raising differential delta, delta^2 = 0.
/// No compatibility between d and delta is imposed. delta[n] : degree n ->
/// degree n+1 for 0 <= n < trunc.
struct DuchainComplex {
    ChainComplex chain;
    std::vector<IntMatrix> delta;  // trunc entries, delta[n] shape r_{n+1} x r_n

    std::size_t trunc() const { return chain.trunc; }
    std::size_t rank(std::size_t n) const { return chain.rank(n); }

    void check_shapes() const {
        chain.check_shapes();
        if (delta.size() != chain.trunc) throw std::invalid_argument("duchain: delta size");
        for (std::size_t n = 0; n < chain.trunc; ++n)
            if (delta[n].rows() != chain.ranks[n + 1] || delta[n].cols() != chain.ranks[n])
                throw std::invalid_argument("duchain: delta[" + std::to_string(n) +
                                            "] has shape " + delta[n].shape_string());
    }

    bool is_complex() const {
        if (!chain.is_complex()) return false;
        for (std::size_t n = 0; n + 1 < chain.trunc; ++n)
            if (!(delta[n + 1] * delta[n]).is_zero()) return false;
        return true;
    }
};

/// Invariant factors of H_n for 0 <= n <= trunc. The top degree is relative
/// to the truncation: no differential from degree trunc + 1 is assumed.
inline std::vector<std::vector<Int>> homology_of(const ChainComplex& c) {
    std::vector<std::vector<Int>> out;
    for (std::size_t n = 0; n <= c.trunc; ++n) {
        IntMatrix low = n == 0 ? IntMatrix::zero(0, c.ranks[0]) : c.d[n];
        IntMatrix high = n == c.trunc ? IntMatrix::zero(c.ranks[n], 0) : c.d[n + 1];
        out.push_back(homology(low, high));
    }
    return out;
}

}  // namespace dukan
