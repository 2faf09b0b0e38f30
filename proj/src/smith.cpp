#include "pendtop/smith.hpp"

#include <algorithm>
#include <string>

namespace pendtop::homology {

IntegerMatrix SmithForm::diagonal(int rows, int cols) const {
    IntegerMatrix d(rows, cols);
    for (std::size_t i = 0; i < divisors.size(); ++i)
        d.set(static_cast<int>(i), static_cast<int>(i), divisors[i]);
    return d;
}

namespace {

using Dense = std::vector<std::vector<Int>>;

void add_row_multiple(Dense& m, int dst, int src, const Int& q) {
    if (q == 0) return;
    auto& d = m[dst];
    const auto& s = m[src];
    for (std::size_t j = 0; j < d.size(); ++j) d[j] += q * s[j];
}

void add_col_multiple(Dense& m, int dst, int src, const Int& q) {
    if (q == 0) return;
    for (auto& row : m) row[dst] += q * row[src];
}

void swap_cols(Dense& m, int a, int b) {
    if (a == b) return;
    for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& a, std::size_t nonzero_cutoff) {
    if (a.nonzero_count() > nonzero_cutoff)
        throw MatrixTooLargeError("smith_normal_form: " + std::to_string(a.nonzero_count()) +
                                  " nonzeros exceeds cutoff " + std::to_string(nonzero_cutoff));

    // Work on the submatrix of rows/columns that carry nonzeros; zero rows
    // and columns only contribute identity blocks to the transforms.
    std::vector<int> act_rows, act_cols;
    {
        std::vector<char> col_used(a.cols(), 0);
        for (int r = 0; r < a.rows(); ++r) {
            if (!a.row(r).empty()) act_rows.push_back(r);
            for (const auto& [c, v] : a.row(r)) col_used[c] = 1;
        }
        for (int c = 0; c < a.cols(); ++c)
            if (col_used[c]) act_cols.push_back(c);
    }
    const int m = static_cast<int>(act_rows.size());
    const int n = static_cast<int>(act_cols.size());
    if (static_cast<long long>(m) * n > 4'000'000)
        throw MatrixTooLargeError("smith_normal_form: active block too large for dense reduction");

    Dense w(m, std::vector<Int>(n, Int(0)));
    {
        std::vector<int> col_pos(a.cols(), -1);
        for (int j = 0; j < n; ++j) col_pos[act_cols[j]] = j;
        for (int i = 0; i < m; ++i)
            for (const auto& [c, v] : a.row(act_rows[i])) w[i][col_pos[c]] = v;
    }
    Dense u(m, std::vector<Int>(m, Int(0))), v(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < m; ++i) u[i][i] = 1;
    for (int j = 0; j < n; ++j) v[j][j] = 1;

    auto find_min_pivot = [&](int t) -> std::pair<int, int> {
        int bi = -1, bj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (w[i][j] == 0) continue;
                if (bi < 0 || boost::multiprecision::abs(w[i][j]) <
                                  boost::multiprecision::abs(w[bi][bj])) {
                    bi = i;
                    bj = j;
                }
            }
        return {bi, bj};
    };

    int t = 0;
    while (t < m && t < n) {
        auto [pi, pj] = find_min_pivot(t);
        if (pi < 0) break;
        std::swap(w[t], w[pi]);
        std::swap(u[t], u[pi]);
        swap_cols(w, t, pj);
        swap_cols(v, t, pj);

        bool settled = false;
        while (!settled) {
            settled = true;
            // Clear the pivot column; a nonzero remainder becomes the new,
            // strictly smaller pivot.
            for (int i = t + 1; i < m && settled; ++i) {
                if (w[i][t] == 0) continue;
                Int q = w[i][t] / w[t][t];
                add_row_multiple(w, i, t, -q);
                add_row_multiple(u, i, t, -q);
                if (w[i][t] != 0) {
                    std::swap(w[t], w[i]);
                    std::swap(u[t], u[i]);
                    settled = false;
                }
            }
            if (!settled) continue;
            // Clear the pivot row.
            for (int j = t + 1; j < n && settled; ++j) {
                if (w[t][j] == 0) continue;
                Int q = w[t][j] / w[t][t];
                add_col_multiple(w, j, t, -q);
                add_col_multiple(v, j, t, -q);
                if (w[t][j] != 0) {
                    swap_cols(w, t, j);
                    swap_cols(v, t, j);
                    settled = false;
                }
            }
            if (!settled) continue;
            // Recheck the column: clearing the row may have disturbed it.
            for (int i = t + 1; i < m; ++i)
                if (w[i][t] != 0) { settled = false; break; }
            if (!settled) continue;
            // Divisibility sweep: fold a non-divisible entry into the pivot
            // row so the reduction continues with a smaller pivot.
            for (int i = t + 1; i < m && settled; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (w[i][j] % w[t][t] != 0) {
                        add_row_multiple(w, t, i, Int(1));
                        add_row_multiple(u, t, i, Int(1));
                        settled = false;
                        break;
                    }
        }
        ++t;
    }

    SmithForm out;
    for (int i = 0; i < t; ++i) {
        if (w[i][i] < 0) {
            for (auto& x : w[i]) x = -x;
            for (auto& x : u[i]) x = -x;
        }
        out.divisors.push_back(w[i][i]);
    }

    // Embed the dense transforms: active rows are permuted to the front,
    // untouched rows/columns contribute identity.
    out.u = IntegerMatrix(a.rows(), a.rows());
    out.v = IntegerMatrix(a.cols(), a.cols());
    {
        std::vector<char> row_active(a.rows(), 0), col_active(a.cols(), 0);
        for (int r : act_rows) row_active[r] = 1;
        for (int c : act_cols) col_active[c] = 1;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (u[i][j] != 0) out.u.set(i, act_rows[j], u[i][j]);
        int next = m;
        for (int r = 0; r < a.rows(); ++r)
            if (!row_active[r]) out.u.set(next++, r, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (v[i][j] != 0) out.v.set(act_cols[i], j, v[i][j]);
        next = n;
        for (int c = 0; c < a.cols(); ++c)
            if (!col_active[c]) out.v.set(c, next++, 1);
    }
    return out;
}

}  // namespace pendtop::homology
