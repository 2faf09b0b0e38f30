#include "pendtop/chain_complex.hpp"

#include <string>

namespace pendtop::homology {

ChainComplex::ChainComplex(std::vector<int> dims, std::vector<IntegerMatrix> boundaries,
                           bool validate)
    : dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
    if (dims_.empty()) throw InvalidComplexError("chain complex has no degrees");
    if (boundaries_.size() + 1 != dims_.size())
        throw InvalidComplexError("boundary count does not match degree count");
    for (int k = 1; k <= top_degree(); ++k) {
        const auto& b = boundaries_[k - 1];
        if (b.rows() != dims_[k - 1] || b.cols() != dims_[k])
            throw InvalidComplexError("boundary " + std::to_string(k) + " has wrong shape");
    }
    if (validate) {
        for (int k = 1; k + 1 <= top_degree(); ++k) {
            if (!boundary(k).multiplied_by(boundary(k + 1)).is_zero())
                throw InvalidComplexError("d(" + std::to_string(k) + ") * d(" +
                                          std::to_string(k + 1) + ") != 0");
        }
    }
}

int ChainComplex::dim(int k) const {
    if (k < 0 || k > top_degree()) return 0;
    return dims_[k];
}

const IntegerMatrix& ChainComplex::boundary(int k) const {
    if (k < 1 || k > top_degree())
        throw std::out_of_range("ChainComplex::boundary: degree out of range");
    return boundaries_[k - 1];
}

const std::vector<int>& ChainComplex::boundary_ranks() const {
    if (ranks_.empty()) {
        ranks_.assign(top_degree() + 2, 0);
        for (int k = 1; k <= top_degree(); ++k) ranks_[k] = boundaries_[k - 1].rank();
    }
    return ranks_;
}

}  // namespace pendtop::homology
