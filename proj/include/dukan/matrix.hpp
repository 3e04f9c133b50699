#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dukan/int.hpp"

namespace dukan {

/// Dense matrix over the integers, row-major. Dimensions of zero are
/// first-class: 0xN and Nx0 matrices occur at every truncation boundary and
/// all operations accept them.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw std::invalid_argument("entry count does not match dimensions");
    }

    /// Convenience for literals in tests: {{1,2},{3,4}}.
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged initializer");
            for (long long v : r) entries_.emplace_back(v);
        }
    }

    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const Int& v : entries_)
            if (v != 0) return false;
        return true;
    }

    bool is_square() const { return rows_ == cols_; }

    IntMatrix operator+(const IntMatrix& o) const {
        require_same_shape(o, "+");
        IntMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            r.entries_[i] = entries_[i] + o.entries_[i];
            check_entry_limit(r.entries_[i]);
        }
        return r;
    }

    IntMatrix operator-(const IntMatrix& o) const {
        require_same_shape(o, "-");
        IntMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            r.entries_[i] = entries_[i] - o.entries_[i];
            check_entry_limit(r.entries_[i]);
        }
        return r;
    }

    IntMatrix operator-() const {
        IntMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = -entries_[i];
        return r;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix product shape mismatch: " + shape_string() +
                                        " * " + o.shape_string());
        IntMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Int& b = o.at(k, j);
                    if (b != 0) r.at(i, j) += a * b;
                }
            }
        for (const Int& v : r.entries_) check_entry_limit(v);
        return r;
    }

    IntMatrix scaled(const Int& c) const {
        IntMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            r.entries_[i] = entries_[i] * c;
            check_entry_limit(r.entries_[i]);
        }
        return r;
    }

    /// Power of a square matrix, k >= 0.
    IntMatrix pow(std::size_t k) const {
        if (!is_square()) throw std::invalid_argument("pow of non-square matrix");
        IntMatrix acc = identity(rows_);
        for (std::size_t i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    IntMatrix transposed() const {
        IntMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    IntMatrix submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
        if (r1 < r0 || c1 < c0 || r1 > rows_ || c1 > cols_)
            throw std::out_of_range("submatrix range");
        IntMatrix r(r1 - r0, c1 - c0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j) r.at(i - r0, j - c0) = at(i, j);
        return r;
    }

    IntMatrix column(std::size_t j) const { return submatrix(0, rows_, j, j + 1); }

    void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
            throw std::out_of_range("set_block range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
    }

    void add_block(std::size_t r0, std::size_t c0, const IntMatrix& b, const Int& scale) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
            throw std::out_of_range("add_block range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) += b.at(i, j) * scale;
    }

    /// [A | B] side by side.
    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
        IntMatrix r(a.rows_, a.cols_ + b.cols_);
        r.set_block(0, 0, a);
        r.set_block(0, a.cols_, b);
        return r;
    }

    /// A on top of B.
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
        IntMatrix r(a.rows_ + b.rows_, a.cols_);
        r.set_block(0, 0, a);
        r.set_block(a.rows_, 0, b);
        return r;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
    }

    // row_i += c * row_j
    void add_row_multiple(std::size_t i, std::size_t j, const Int& c) {
        if (c == 0) return;
        for (std::size_t k = 0; k < cols_; ++k) {
            at(i, k) += c * at(j, k);
            check_entry_limit(at(i, k));
        }
    }

    // col_i += c * col_j
    void add_col_multiple(std::size_t i, std::size_t j, const Int& c) {
        if (c == 0) return;
        for (std::size_t k = 0; k < rows_; ++k) {
            at(k, i) += c * at(k, j);
            check_entry_limit(at(k, i));
        }
    }

    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
    }

    void negate_col(std::size_t j) {
        for (std::size_t k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
    }

    std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i == 0 ? "[" : " [");
            for (std::size_t j = 0; j < cols_; ++j) os << (j == 0 ? "" : " ") << at(i, j);
            os << "]" << (i + 1 == rows_ ? "" : "\n");
        }
        os << "] (" << shape_string() << ")";
        return os.str();
    }

private:
    void require_same_shape(const IntMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("shape mismatch for ") + op + ": " +
                                        shape_string() + " vs " + o.shape_string());
    }

    std::size_t rows_, cols_;
    std::vector<Int> entries_;
};

/// Column vector as a single-column matrix.
inline IntMatrix col_vector(const std::vector<Int>& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

}  // namespace dukan
