#pragma once
#include <stdexcept>
#include <string>
#include <vector>

#include "pendtop/chain_complex.hpp"
#include "pendtop/integer_matrix.hpp"

namespace pendtop::homology {

struct NotASubcomplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TorsionPresentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotClosedConnectedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Coefficients { Integers, Rationals };

/**
 * Per-degree homology data: free ranks (Betti numbers) and, over the
 * integers, the torsion divisor chain of each degree. Queries outside
 * [0, top_degree] return rank zero and empty torsion.
 */
class HomologyProfile {
public:
    HomologyProfile() = default;
    explicit HomologyProfile(std::vector<int> betti,
                             std::vector<std::vector<Int>> torsion = {});

    static HomologyProfile point();
    static HomologyProfile sphere(int n);

    int top_degree() const { return static_cast<int>(betti_.size()) - 1; }
    int betti(int k) const;
    const std::vector<Int>& torsion(int k) const;

    bool torsion_free() const;
    bool is_zero() const;
    /// Betti numbers in degrees 0..up_to inclusive.
    std::vector<int> betti_vector(int up_to) const;

    void set_betti(int k, int value);
    void set_torsion(int k, std::vector<Int> divisors);

    bool operator==(const HomologyProfile& other) const;

private:
    std::vector<int> betti_;
    std::vector<std::vector<Int>> torsion_;
    void ensure_degree(int k);
};

/// Homology of a chain complex. Integer coefficients add torsion divisors
/// (Smith normal form of each boundary map); rational coefficients report
/// free ranks only.
HomologyProfile homology(const ChainComplex& c, Coefficients coeffs);

/// Per-degree cell selection describing a subcomplex of a chain complex.
struct SubcomplexSelection {
    std::vector<std::vector<int>> cells;   // cells[k]: sorted indices in degree k
    const std::vector<int>& at(int k) const;
};

/// Quotient complex C(X)/C(A). Throws NotASubcomplexError when A is not
/// closed under the boundary maps.
ChainComplex quotient_complex(const ChainComplex& x, const SubcomplexSelection& a);

/// Relative homology H(X, A) computed on the quotient complex.
HomologyProfile relative_homology(const ChainComplex& x, const SubcomplexSelection& a,
                                  Coefficients coeffs);

/**
 * Rank-level exactness check for the long exact sequence of a pair:
 * given the profiles of A, X and (X, A), decide whether connecting-map
 * ranks exist making the sequence exact.
 */
bool pair_sequence_consistent(const HomologyProfile& sub, const HomologyProfile& total,
                              const HomologyProfile& relative);

/// Betti numbers of a product space (field coefficients). Both inputs must
/// be torsion-free; throws TorsionPresentError otherwise.
HomologyProfile kunneth(const HomologyProfile& p, const HomologyProfile& q);

/// Betti numbers of a connected sum of two closed connected orientable
/// n-manifolds: middle degrees add, ends stay 1.
HomologyProfile connected_sum(const HomologyProfile& p, const HomologyProfile& q, int n);

long long euler_characteristic(const HomologyProfile& p);

/// True when betti(i) == betti(n-i) for all i (closed orientable duality).
bool poincare_dual_check(const HomologyProfile& p, int n);

}  // namespace pendtop::homology
