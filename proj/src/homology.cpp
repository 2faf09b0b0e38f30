#include "pendtop/homology.hpp"

#include <algorithm>

#include "pendtop/smith.hpp"

namespace pendtop::homology {

namespace {
const std::vector<Int> kNoTorsion{};
}

HomologyProfile::HomologyProfile(std::vector<int> betti,
                                 std::vector<std::vector<Int>> torsion)
    : betti_(std::move(betti)), torsion_(std::move(torsion)) {
    torsion_.resize(betti_.size());
    for (int b : betti_)
        if (b < 0) throw std::invalid_argument("negative Betti number");
}

HomologyProfile HomologyProfile::point() { return HomologyProfile({1}); }

HomologyProfile HomologyProfile::sphere(int n) {
    if (n < 0) throw std::invalid_argument("sphere: negative dimension");
    if (n == 0) return HomologyProfile({2});   // two points
    std::vector<int> betti(n + 1, 0);
    betti[0] = betti[n] = 1;
    return HomologyProfile(std::move(betti));
}

int HomologyProfile::betti(int k) const {
    if (k < 0 || k > top_degree()) return 0;
    return betti_[k];
}

const std::vector<Int>& HomologyProfile::torsion(int k) const {
    if (k < 0 || k > top_degree()) return kNoTorsion;
    return torsion_[k];
}

bool HomologyProfile::torsion_free() const {
    for (const auto& t : torsion_)
        if (!t.empty()) return false;
    return true;
}

bool HomologyProfile::is_zero() const {
    for (int b : betti_)
        if (b != 0) return false;
    return torsion_free();
}

std::vector<int> HomologyProfile::betti_vector(int up_to) const {
    std::vector<int> out(up_to + 1, 0);
    for (int k = 0; k <= up_to; ++k) out[k] = betti(k);
    return out;
}

void HomologyProfile::ensure_degree(int k) {
    if (k >= static_cast<int>(betti_.size())) {
        betti_.resize(k + 1, 0);
        torsion_.resize(k + 1);
    }
}

void HomologyProfile::set_betti(int k, int value) {
    if (k < 0 || value < 0) throw std::invalid_argument("set_betti: bad arguments");
    ensure_degree(k);
    betti_[k] = value;
}

void HomologyProfile::set_torsion(int k, std::vector<Int> divisors) {
    if (k < 0) throw std::invalid_argument("set_torsion: negative degree");
    ensure_degree(k);
    torsion_[k] = std::move(divisors);
}

bool HomologyProfile::operator==(const HomologyProfile& other) const {
    int top = std::max(top_degree(), other.top_degree());
    for (int k = 0; k <= top; ++k)
        if (betti(k) != other.betti(k) || torsion(k) != other.torsion(k)) return false;
    return true;
}

HomologyProfile homology(const ChainComplex& c, Coefficients coeffs) {
    const int n = c.top_degree();
    const auto& ranks = c.boundary_ranks();

    std::vector<int> betti(n + 1);
    for (int k = 0; k <= n; ++k) {
        // dim ker d(k) - rank d(k+1); d(0) and d(n+1) are zero maps.
        betti[k] = c.dim(k) - ranks[k] - ranks[k + 1];
        if (betti[k] < 0)
            throw InvalidComplexError("negative Betti number: boundary ranks inconsistent");
    }
    HomologyProfile profile(std::move(betti));

    if (coeffs == Coefficients::Integers) {
        for (int k = 0; k < n; ++k) {
            const auto& b = c.boundary(k + 1);
            if (b.nonzero_count() == 0) continue;
            SmithForm snf = smith_normal_form(b);
            std::vector<Int> divisors;
            for (const auto& d : snf.divisors)
                if (d > 1) divisors.push_back(d);
            if (!divisors.empty()) profile.set_torsion(k, std::move(divisors));
        }
    }
    return profile;
}

const std::vector<int>& SubcomplexSelection::at(int k) const {
    static const std::vector<int> empty;
    if (k < 0 || k >= static_cast<int>(cells.size())) return empty;
    return cells[k];
}

namespace {

// Membership mask of the selection in degree k, validating index bounds.
std::vector<char> selection_mask(const ChainComplex& x, const SubcomplexSelection& a, int k) {
    std::vector<char> mask(x.dim(k), 0);
    for (int idx : a.at(k)) {
        if (idx < 0 || idx >= x.dim(k))
            throw NotASubcomplexError("subcomplex selection index out of range");
        mask[idx] = 1;
    }
    return mask;
}

}  // namespace

ChainComplex quotient_complex(const ChainComplex& x, const SubcomplexSelection& a) {
    const int n = x.top_degree();
    std::vector<std::vector<char>> in_a(n + 1);
    for (int k = 0; k <= n; ++k) in_a[k] = selection_mask(x, a, k);

    // Face closure: boundaries of selected cells must stay selected.
    for (int k = 1; k <= n; ++k) {
        const auto& b = x.boundary(k);
        auto bt = b.transposed();   // rows of bt = columns of d(k)
        for (int j = 0; j < x.dim(k); ++j) {
            if (!in_a[k][j]) continue;
            for (const auto& [face, v] : bt.row(j)) {
                if (!in_a[k - 1][face])
                    throw NotASubcomplexError("selection is not closed under boundaries");
            }
        }
    }

    std::vector<std::vector<int>> keep_index(n + 1);
    std::vector<int> dims(n + 1, 0);
    for (int k = 0; k <= n; ++k) {
        keep_index[k].assign(x.dim(k), -1);
        for (int j = 0; j < x.dim(k); ++j)
            if (!in_a[k][j]) keep_index[k][j] = dims[k]++;
    }

    std::vector<IntegerMatrix> boundaries;
    for (int k = 1; k <= n; ++k) {
        IntegerMatrix q(dims[k - 1], dims[k]);
        const auto bt = x.boundary(k).transposed();
        for (int j = 0; j < x.dim(k); ++j) {
            int col = keep_index[k][j];
            if (col < 0) continue;
            for (const auto& [face, v] : bt.row(j)) {
                int row = keep_index[k - 1][face];
                if (row >= 0) q.set(row, col, v);
            }
        }
        boundaries.push_back(std::move(q));
    }
    // The quotient of a valid complex is a complex; skip the O(n^2) recheck.
    return ChainComplex(std::move(dims), std::move(boundaries), false);
}

HomologyProfile relative_homology(const ChainComplex& x, const SubcomplexSelection& a,
                                  Coefficients coeffs) {
    return homology(quotient_complex(x, a), coeffs);
}

bool pair_sequence_consistent(const HomologyProfile& sub, const HomologyProfile& total,
                              const HomologyProfile& relative) {
    int top = std::max({sub.top_degree(), total.top_degree(), relative.top_degree()});
    // ... -> H_k(A) -> H_k(X) -> H_k(X,A) -> H_{k-1}(A) -> ...
    // Propagate connecting-map ranks from the top; all must be non-negative
    // and the bottom connecting rank must vanish.
    int boundary_rank = 0;   // rank of H_{k+1}(X,A) -> H_k(A)
    for (int k = top; k >= 0; --k) {
        int inclusion = sub.betti(k) - boundary_rank;        // rank H_k(A) -> H_k(X)
        if (inclusion < 0) return false;
        int project = total.betti(k) - inclusion;            // rank H_k(X) -> H_k(X,A)
        if (project < 0) return false;
        boundary_rank = relative.betti(k) - project;         // rank H_k(X,A) -> H_{k-1}(A)
        if (boundary_rank < 0) return false;
    }
    return boundary_rank == 0;
}

HomologyProfile kunneth(const HomologyProfile& p, const HomologyProfile& q) {
    if (!p.torsion_free() || !q.torsion_free())
        throw TorsionPresentError("kunneth: field-coefficient rule needs torsion-free input");
    int top = p.top_degree() + q.top_degree();
    std::vector<int> betti(top + 1, 0);
    for (int i = 0; i <= p.top_degree(); ++i)
        for (int j = 0; j <= q.top_degree(); ++j) betti[i + j] += p.betti(i) * q.betti(j);
    return HomologyProfile(std::move(betti));
}

HomologyProfile connected_sum(const HomologyProfile& p, const HomologyProfile& q, int n) {
    if (n < 1 || p.top_degree() > n || q.top_degree() > n)
        throw DimensionMismatchError("connected_sum: profiles exceed dimension");
    for (const auto* m : {&p, &q}) {
        if (m->betti(0) != 1 || m->betti(n) != 1)
            throw NotClosedConnectedError(
                "connected_sum: summand is not a closed connected n-manifold profile");
    }
    std::vector<int> betti(n + 1, 0);
    betti[0] = betti[n] = 1;
    for (int i = 1; i < n; ++i) betti[i] = p.betti(i) + q.betti(i);
    return HomologyProfile(std::move(betti));
}

long long euler_characteristic(const HomologyProfile& p) {
    long long chi = 0;
    for (int k = 0; k <= p.top_degree(); ++k)
        chi += (k % 2 == 0) ? p.betti(k) : -p.betti(k);
    return chi;
}

bool poincare_dual_check(const HomologyProfile& p, int n) {
    for (int i = 0; i <= std::max(n, p.top_degree()); ++i)
        if (p.betti(i) != p.betti(n - i)) return false;
    return true;
}

}  // namespace pendtop::homology
