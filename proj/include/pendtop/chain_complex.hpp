#pragma once
#include <stdexcept>
#include <vector>

#include "pendtop/integer_matrix.hpp"

namespace pendtop::homology {

struct InvalidComplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Graded chain complex of free abelian groups, given by its integer
 * boundary matrices. boundary(k) maps degree-k chains to degree k-1 and
 * has shape dim(k-1) x dim(k). Construction checks the chain identity
 * d(k) * d(k+1) = 0 and throws InvalidComplexError on failure.
 */
class ChainComplex {
public:
    ChainComplex(std::vector<int> dims, std::vector<IntegerMatrix> boundaries,
                 bool validate = true);

    int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
    /// Rank of the degree-k chain group; zero outside [0, top].
    int dim(int k) const;
    /// Boundary matrix d(k), k in [1, top].
    const IntegerMatrix& boundary(int k) const;

    /// Ranks of all boundary maps over the rationals (index k holds rank d(k);
    /// index 0 and top+1 are zero). Computed lazily once.
    const std::vector<int>& boundary_ranks() const;

private:
    std::vector<int> dims_;
    std::vector<IntegerMatrix> boundaries_;   // boundaries_[k-1] = d(k)
    mutable std::vector<int> ranks_;
};

}  // namespace pendtop::homology
