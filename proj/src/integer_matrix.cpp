#include "pendtop/integer_matrix.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>

namespace pendtop::homology {

IntegerMatrix::IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("IntegerMatrix: negative dimension");
}

IntegerMatrix IntegerMatrix::identity(int n) {
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void IntegerMatrix::check_bounds(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("IntegerMatrix: index out of range");
}

void IntegerMatrix::set(int r, int c, Int value) {
    check_bounds(r, c);
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
        if (value == 0)
            row.erase(it);
        else
            it->second = std::move(value);
    } else if (value != 0) {
        row.insert(it, Entry{static_cast<std::int32_t>(c), std::move(value)});
    }
}

void IntegerMatrix::add(int r, int c, const Int& value) {
    if (value == 0) return;
    check_bounds(r, c);
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
        it->second += value;
        if (it->second == 0) row.erase(it);
    } else {
        row.insert(it, Entry{static_cast<std::int32_t>(c), value});
    }
}

Int IntegerMatrix::at(int r, int c) const {
    check_bounds(r, c);
    const auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Int(0);
}

std::size_t IntegerMatrix::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& row : data_) n += row.size();
    return n;
}

IntegerMatrix IntegerMatrix::transposed() const {
    IntegerMatrix t(cols_, rows_);
    std::vector<std::size_t> counts(cols_, 0);
    for (const auto& row : data_)
        for (const auto& [c, v] : row) ++counts[c];
    for (int c = 0; c < cols_; ++c) t.data_[c].reserve(counts[c]);
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r])
            t.data_[c].emplace_back(static_cast<std::int32_t>(r), v);
    return t;
}

IntegerMatrix IntegerMatrix::multiplied_by(const IntegerMatrix& other) const {
    if (cols_ != other.rows_)
        throw std::invalid_argument("IntegerMatrix: dimension mismatch in product");
    IntegerMatrix out(rows_, other.cols_);
    std::vector<Int> acc(other.cols_, Int(0));
    std::vector<int> touched;
    for (int r = 0; r < rows_; ++r) {
        touched.clear();
        for (const auto& [k, v] : data_[r]) {
            for (const auto& [c, w] : other.data_[k]) {
                if (acc[c] == 0) touched.push_back(c);
                acc[c] += v * w;
            }
        }
        std::sort(touched.begin(), touched.end());
        auto& row = out.data_[r];
        for (int c : touched) {
            if (acc[c] != 0) row.emplace_back(static_cast<std::int32_t>(c), acc[c]);
            acc[c] = 0;
        }
    }
    return out;
}

bool IntegerMatrix::operator==(const IntegerMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

namespace {

struct Int64Overflow {};

// Arithmetic shims shared by the checked 64-bit fast path and the
// arbitrary-precision fallback.
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw Int64Overflow{};
    return out;
}
inline std::int64_t cross(std::int64_t p, std::int64_t a, std::int64_t f, std::int64_t b) {
    std::int64_t out;
    if (__builtin_sub_overflow(mul(p, a), mul(f, b), &out)) throw Int64Overflow{};
    return out;
}
inline Int mul(const Int& a, const Int& b) { return a * b; }
inline Int cross(const Int& p, const Int& a, const Int& f, const Int& b) {
    return p * a - f * b;
}

inline std::int64_t gcd_of(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline Int gcd_of(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
inline bool is_unit(const Int& v) { return v == 1 || v == -1; }

inline std::int64_t neg(std::int64_t v) {
    if (v == std::numeric_limits<std::int64_t>::min()) throw Int64Overflow{};
    return -v;
}
inline Int neg(const Int& v) { return -v; }

/**
 * Sparse fraction-free rank eliminator.
 *
 * Structural pivots (rows or columns with a single nonzero) are peeled
 * off through worklists, since they need no arithmetic. Remaining pivots
 * are chosen from a minimum-fill column bucket queue with a preference
 * for unit entries. Row updates use the cross-multiplication rule
 * row_i <- p*row_i - a*row_p with content (gcd) removal, which keeps
 * entries integral without rational arithmetic.
 */
template <typename T>
class RankEliminator {
public:
    explicit RankEliminator(const IntegerMatrix& a)
        : nrows_(a.rows()), ncols_(a.cols()), rows_(a.rows()),
          row_count_(a.rows(), 0), col_count_(a.cols(), 0),
          row_active_(a.rows(), true), col_active_(a.cols(), true),
          col_rows_(a.cols()), buckets_(kBucketCap + 1) {
        for (int r = 0; r < nrows_; ++r) {
            const auto& src = a.row(r);
            rows_[r].reserve(src.size());
            for (const auto& [c, v] : src) {
                rows_[r].emplace_back(c, checked_cast(v));
                ++col_count_[c];
                col_rows_[c].push_back(r);
            }
            row_count_[r] = static_cast<int>(src.size());
            if (row_count_[r] == 1) pending_rows_.push_back(r);
            if (row_count_[r] == 0) row_active_[r] = false;
        }
        for (int c = 0; c < ncols_; ++c) {
            if (col_count_[c] == 0)
                col_active_[c] = false;
            else
                push_bucket(c);
            if (col_count_[c] == 1) pending_cols_.push_back(c);
        }
    }

    int run() {
        int rank = 0;
        for (;;) {
            rank += drain_singletons();
            auto pivot = select_pivot();
            if (!pivot) break;
            eliminate(pivot->first, pivot->second);
            ++rank;
        }
        return rank;
    }

private:
    using Entry = std::pair<std::int32_t, T>;
    static constexpr int kBucketCap = 48;

    int nrows_, ncols_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<int> row_count_, col_count_;
    std::vector<char> row_active_, col_active_;
    std::vector<std::vector<int>> col_rows_;   // candidate rows per column (lazy)
    std::vector<std::vector<int>> buckets_;    // columns keyed by nonzero count (lazy)
    int bucket_min_ = 1;
    std::vector<int> pending_rows_, pending_cols_;

    static T checked_cast(const Int& v) {
        if constexpr (std::is_same_v<T, Int>) {
            return v;
        } else {
            if (v > std::numeric_limits<std::int64_t>::max() ||
                v < std::numeric_limits<std::int64_t>::min() + 1)
                throw Int64Overflow{};
            return static_cast<std::int64_t>(v);
        }
    }

    void push_bucket(int c) {
        int b = std::min(col_count_[c], kBucketCap);
        buckets_[b].push_back(c);
        if (b < bucket_min_) bucket_min_ = b;
    }

    void col_count_changed(int c) {
        if (!col_active_[c]) return;
        if (col_count_[c] == 1) pending_cols_.push_back(c);
        push_bucket(c);
    }

    void row_count_changed(int r) {
        if (row_active_[r] && row_count_[r] == 1) pending_rows_.push_back(r);
        if (row_active_[r] && row_count_[r] == 0) row_active_[r] = false;
    }

    void drop_row(int r) {
        row_active_[r] = false;
        for (const auto& [c, v] : rows_[r]) {
            if (!col_active_[c]) continue;
            --col_count_[c];
            col_count_changed(c);
        }
        rows_[r].clear();
        rows_[r].shrink_to_fit();
        row_count_[r] = 0;
    }

    void drop_col(int c) {
        col_active_[c] = false;
        for (int r : col_rows_[c]) {
            if (!row_active_[r]) continue;
            auto& row = rows_[r];
            auto it = std::lower_bound(row.begin(), row.end(), c,
                                       [](const Entry& e, int col) { return e.first < col; });
            if (it != row.end() && it->first == c) {
                row.erase(it);
                --row_count_[r];
                row_count_changed(r);
            }
        }
        col_rows_[c].clear();
        col_rows_[c].shrink_to_fit();
        col_count_[c] = 0;
    }

    int drain_singletons() {
        int rank = 0;
        while (!pending_cols_.empty() || !pending_rows_.empty()) {
            if (!pending_cols_.empty()) {
                int c = pending_cols_.back();
                pending_cols_.pop_back();
                if (!col_active_[c] || col_count_[c] != 1) continue;
                if (!resync_column(c) || col_count_[c] != 1) continue;
                int r = col_rows_[c][0];
                col_active_[c] = false;
                col_rows_[c].clear();
                col_count_[c] = 0;
                drop_row(r);
                ++rank;
                continue;
            }
            int r = pending_rows_.back();
            pending_rows_.pop_back();
            if (!row_active_[r] || row_count_[r] != 1) continue;
            int c = rows_[r][0].first;
            if (!col_active_[c]) continue;   // cannot happen: entry implies live column
            row_active_[r] = false;
            rows_[r].clear();
            row_count_[r] = 0;
            --col_count_[c];
            drop_col(c);
            ++rank;
        }
        return rank;
    }

    std::optional<std::pair<int, int>> select_pivot() {
        int c = pop_min_column();
        if (c < 0) return std::nullopt;
        int best_row = -1;
        bool best_unit = false;
        for (int r : col_rows_[c]) {
            const T& v = value_at(r, c);
            bool unit = is_unit(v);
            if (best_row < 0 || (unit && !best_unit) ||
                (unit == best_unit && row_count_[r] < row_count_[best_row])) {
                best_row = r;
                best_unit = unit;
            }
        }
        return std::make_pair(best_row, c);
    }

    int pop_min_column() {
        for (int b = bucket_min_; b <= kBucketCap; ++b) {
            auto& bucket = buckets_[b];
            while (!bucket.empty()) {
                int c = bucket.back();
                bucket.pop_back();
                if (!col_active_[c]) continue;
                if (std::min(col_count_[c], kBucketCap) != b) continue;   // stale
                if (!resync_column(c)) continue;
                if (std::min(col_count_[c], kBucketCap) != b) continue;   // count moved
                bucket_min_ = b;
                return c;
            }
        }
        // Buckets exhausted by lazy deletion; rescan for leftovers.
        int best = -1;
        for (int c = 0; c < ncols_; ++c) {
            if (!col_active_[c]) continue;
            if (!resync_column(c)) continue;
            if (best < 0 || col_count_[c] < col_count_[best]) best = c;
        }
        bucket_min_ = 1;
        return best;
    }

    // Compact a column's candidate list and make its count authoritative.
    // Returns false when the column turned out to be empty.
    bool resync_column(int c) {
        auto& cand = col_rows_[c];
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        std::size_t w = 0;
        for (std::size_t i = 0; i < cand.size(); ++i)
            if (row_active_[cand[i]] && row_has(cand[i], c)) cand[w++] = cand[i];
        cand.resize(w);
        col_count_[c] = static_cast<int>(w);
        if (w == 0) {
            col_active_[c] = false;
            return false;
        }
        return true;
    }

    bool row_has(int r, int c) const {
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, int col) { return e.first < col; });
        return it != row.end() && it->first == c;
    }

    const T& value_at(int r, int c) const {
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, int col) { return e.first < col; });
        return it->second;
    }

    void eliminate(int pr, int pc) {
        const T pivot = value_at(pr, pc);
        std::vector<Entry> pivot_row = std::move(rows_[pr]);
        rows_[pr].clear();
        row_active_[pr] = false;
        row_count_[pr] = 0;
        for (const auto& [c, v] : pivot_row) {
            if (!col_active_[c]) continue;
            --col_count_[c];
            // defer singleton checks until after the updates below
        }

        std::vector<int> victims = col_rows_[pc];
        for (int r : victims) {
            if (!row_active_[r] || !row_has(r, pc)) continue;
            const T factor = value_at(r, pc);
            merge_rows(r, pivot, factor, pivot_row, pc);
        }
        col_active_[pc] = false;
        col_count_[pc] = 0;
        col_rows_[pc].clear();

        for (const auto& [c, v] : pivot_row)
            col_count_changed(c);
    }

    // row_r <- pivot*row_r - factor*pivot_row, content removed afterwards.
    void merge_rows(int r, const T& pivot, const T& factor,
                    const std::vector<Entry>& pivot_row, int pc) {
        std::vector<Entry> merged;
        merged.reserve(rows_[r].size() + pivot_row.size());
        auto a = rows_[r].begin(), ae = rows_[r].end();
        auto b = pivot_row.begin(), be = pivot_row.end();
        while (a != ae || b != be) {
            if (b == be || (a != ae && a->first < b->first)) {
                merged.emplace_back(a->first, mul(pivot, a->second));
                ++a;
            } else if (a == ae || b->first < a->first) {
                if (b->first != pc) merged.emplace_back(b->first, mul(neg(factor), b->second));
                ++b;
            } else {
                if (a->first != pc) {
                    T v = cross(pivot, a->second, factor, b->second);
                    if (v != 0) merged.emplace_back(a->first, std::move(v));
                }
                ++a;
                ++b;
            }
        }
        normalize_content(merged);
        apply_row_update(r, std::move(merged));
    }

    void normalize_content(std::vector<Entry>& row) {
        if (row.empty()) return;
        T g(0);
        for (const auto& [c, v] : row) {
            g = gcd_of(g, v);
            if (is_unit(g)) return;
        }
        if (g == 1 || g == 0) return;
        for (auto& [c, v] : row) v /= g;
    }

    void apply_row_update(int r, std::vector<Entry> next) {
        auto& cur = rows_[r];
        auto a = cur.begin(), ae = cur.end();
        auto b = next.begin(), be = next.end();
        while (a != ae || b != be) {
            if (b == be || (a != ae && a->first < b->first)) {
                if (col_active_[a->first]) {
                    --col_count_[a->first];
                    col_count_changed(a->first);
                }
                ++a;
            } else if (a == ae || b->first < a->first) {
                if (col_active_[b->first]) {
                    ++col_count_[b->first];
                    col_rows_[b->first].push_back(r);
                    col_count_changed(b->first);
                }
                ++b;
            } else {
                ++a;
                ++b;
            }
        }
        row_count_[r] = static_cast<int>(next.size());
        cur = std::move(next);
        row_count_changed(r);
    }
};

}  // namespace

int IntegerMatrix::rank() const {
    try {
        RankEliminator<std::int64_t> fast(*this);
        return fast.run();
    } catch (const Int64Overflow&) {
        RankEliminator<Int> exact(*this);
        return exact.run();
    }
}

Int determinant(const IntegerMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("determinant: matrix is not square");
    const int n = a.rows();
    if (n == 0) return Int(1);

    // Dense Bareiss elimination; entries stay integral (minors of the input).
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (int r = 0; r < n; ++r)
        for (const auto& [c, v] : a.row(r)) m[r][c] = v;

    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) { swap_row = r; break; }
            if (swap_row < 0) return Int(0);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                m[r][c] = (m[k][k] * m[r][c] - m[r][k] * m[k][c]) / prev;
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace pendtop::homology
