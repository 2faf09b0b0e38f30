#pragma once
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pendtop::homology {

using Int = boost::multiprecision::cpp_int;

/**
 * Sparse matrix over the integers with arbitrary-precision entries.
 *
 * Rows are kept as column-sorted entry lists. All arithmetic is exact;
 * there is no overflow path anywhere in the public API.
 */
class IntegerMatrix {
public:
    using Entry = std::pair<std::int32_t, Int>;   // (column, value), value != 0

    IntegerMatrix() = default;
    IntegerMatrix(int rows, int cols);

    static IntegerMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    /// Insert or overwrite a single entry (value 0 erases).
    void set(int r, int c, Int value);
    /// Accumulate into an entry.
    void add(int r, int c, const Int& value);
    /// Entry value; zero when absent.
    Int at(int r, int c) const;

    const std::vector<Entry>& row(int r) const { return data_[r]; }
    std::size_t nonzero_count() const;
    bool is_zero() const { return nonzero_count() == 0; }

    IntegerMatrix transposed() const;
    IntegerMatrix multiplied_by(const IntegerMatrix& other) const;

    /**
     * Exact rank over the rationals.
     *
     * Sparse fraction-free elimination: structural (singleton) pivots are
     * eliminated first, then Markowitz-style pivoting with cross-multiply
     * updates and row-content removal. A 64-bit fast path is tried first
     * and the computation restarts with arbitrary precision on overflow.
     */
    int rank() const;

    bool operator==(const IntegerMatrix& other) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::vector<Entry>> data_;

    void check_bounds(int r, int c) const;
};

/// Exact determinant of a square matrix (fraction-free elimination).
Int determinant(const IntegerMatrix& a);

}  // namespace pendtop::homology
