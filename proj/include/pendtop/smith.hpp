#pragma once
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pendtop/integer_matrix.hpp"

namespace pendtop::homology {

struct MatrixTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Default nonzero-count cutoff above which smith_normal_form refuses to
/// run; rank-only questions on larger matrices go through IntegerMatrix::rank.
constexpr std::size_t kSmithNonzeroCutoff = 20000;

/**
 * Smith normal form U * A * V = D with unimodular U, V and diagonal
 * divisors d1 | d2 | ... | dr (all positive).
 */
struct SmithForm {
    std::vector<Int> divisors;
    IntegerMatrix u;   // rows(A) x rows(A)
    IntegerMatrix v;   // cols(A) x cols(A)

    int rank() const { return static_cast<int>(divisors.size()); }
    /// The diagonal matrix D with the stored divisors.
    IntegerMatrix diagonal(int rows, int cols) const;
};

SmithForm smith_normal_form(const IntegerMatrix& a,
                            std::size_t nonzero_cutoff = kSmithNonzeroCutoff);

}  // namespace pendtop::homology
