#include "supersheaf/linalg.hpp"

#include <algorithm>
#include <map>

namespace supersheaf {

// ---------------------------------------------------------------- SparseVec

SparseVec::SparseVec(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& [idx, val] : entries) {
        if (!entries_.empty() && entries_.back().first == idx)
            entries_.back().second += val;
        else
            entries_.emplace_back(idx, std::move(val));
    }
    std::erase_if(entries_, [](const Entry& e) { return is_zero(e.second); });
}

SparseVec SparseVec::unit(std::size_t index) {
    SparseVec v;
    v.entries_.emplace_back(index, Rational(1));
    return v;
}

Rational SparseVec::at(std::size_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) return it->second;
    return Rational(0);
}

void SparseVec::axpy(const Rational& factor, const SparseVec& other) {
    if (is_zero(factor) || other.empty()) return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            merged.push_back(std::move(*a));
            ++a;
        } else if (a == entries_.end() || b->first < a->first) {
            merged.emplace_back(b->first, factor * b->second);
            ++b;
        } else {
            Rational sum = a->second + factor * b->second;
            if (!is_zero(sum)) merged.emplace_back(a->first, std::move(sum));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(merged);
}

void SparseVec::scale(const Rational& factor) {
    if (is_zero(factor)) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_) e.second *= factor;
}

SparseVec operator+(const SparseVec& a, const SparseVec& b) {
    SparseVec r = a;
    r.axpy(Rational(1), b);
    return r;
}

SparseVec operator-(const SparseVec& a, const SparseVec& b) {
    SparseVec r = a;
    r.axpy(Rational(-1), b);
    return r;
}

SparseVec operator*(const Rational& c, const SparseVec& v) {
    SparseVec r = v;
    r.scale(c);
    return r;
}

// ------------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_data_(rows), col_data_(cols) {}

Matrix Matrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
    Matrix m(rows, cols);
    std::vector<std::vector<SparseVec::Entry>> by_row(rows);
    for (auto& t : triplets) {
        if (t.row >= rows || t.col >= cols) throw std::out_of_range("matrix triplet index out of range");
        by_row[t.row].emplace_back(t.col, std::move(t.value));
    }
    std::vector<std::vector<SparseVec::Entry>> by_col(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        m.row_data_[r] = SparseVec(std::move(by_row[r]));
        for (const auto& [c, v] : m.row_data_[r]) by_col[c].emplace_back(r, v);
    }
    for (std::size_t c = 0; c < cols; ++c) m.col_data_[c] = SparseVec(std::move(by_col[c]));
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::vector<SparseVec> columns) {
    std::vector<Triplet> trip;
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [r, v] : columns[c]) trip.push_back({r, c, v});
    return from_triplets(rows, columns.size(), std::move(trip));
}

Matrix Matrix::identity(std::size_t n) {
    std::vector<Triplet> trip;
    for (std::size_t i = 0; i < n; ++i) trip.push_back({i, i, Rational(1)});
    return from_triplets(n, n, std::move(trip));
}

Rational Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    return row_data_[r].at(c);
}

std::size_t Matrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : row_data_) n += r.nnz();
    return n;
}

SparseVec Matrix::apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [c, v] : x) {
        if (c >= cols_) throw std::out_of_range("vector longer than matrix width");
        y.axpy(v, col_data_[c]);
    }
    return y;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    t.row_data_ = col_data_;
    t.col_data_ = row_data_;
    return t;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& row_ids, const std::vector<std::size_t>& col_ids) const {
    std::vector<long> new_row(rows_, -1);
    for (std::size_t i = 0; i < row_ids.size(); ++i) new_row[row_ids[i]] = static_cast<long>(i);
    std::vector<Triplet> trip;
    for (std::size_t j = 0; j < col_ids.size(); ++j)
        for (const auto& [r, v] : col_data_[col_ids[j]])
            if (new_row[r] >= 0) trip.push_back({static_cast<std::size_t>(new_row[r]), j, v});
    return from_triplets(row_ids.size(), col_ids.size(), std::move(trip));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    std::vector<SparseVec> cols;
    cols.reserve(b.cols_);
    for (std::size_t c = 0; c < b.cols_; ++c) cols.push_back(a.apply(b.col_data_[c]));
    return Matrix::from_columns(a.rows_, std::move(cols));
}

// ------------------------------------------------------------------ Echelon

SparseVec Echelon::reduce(const SparseVec& v) const {
    SparseVec r = v;
    if (row_of_pivot_.empty()) return r;
    // Subtracting a row never touches another row's pivot column, so the
    // pivot coefficients of v can be read off once.
    for (const auto& [idx, val] : v) {
        const long row = row_of_pivot_[idx];
        if (row >= 0) r.axpy(-val, rows_[static_cast<std::size_t>(row)]);
    }
    return r;
}

bool Echelon::insert(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    if (row_of_pivot_.empty()) row_of_pivot_.assign(ambient_, -1);
    const std::size_t pivot = r.leading_index();
    if (pivot >= ambient_) throw std::out_of_range("vector exceeds ambient dimension");
    Rational inv = 1 / r.leading_value();
    r.scale(inv);
    for (auto& row : rows_) {
        Rational c = row.at(pivot);
        if (!is_zero(c)) row.axpy(-c, r);
    }
    row_of_pivot_[pivot] = static_cast<long>(rows_.size());
    pivot_of_row_.push_back(pivot);
    rows_.push_back(std::move(r));
    return true;
}

std::vector<SparseVec> Echelon::sorted_rows() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivot_of_row_[a] < pivot_of_row_[b]; });
    std::vector<SparseVec> out;
    out.reserve(order.size());
    for (auto i : order) out.push_back(rows_[i]);
    return out;
}

// ----------------------------------------------------------------- Subspace

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<SparseVec>& vectors) {
    Echelon e(ambient_dim);
    for (const auto& v : vectors) e.insert(v);
    Subspace s(ambient_dim);
    s.basis_ = e.sorted_rows();
    return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) s.basis_.push_back(SparseVec::unit(i));
    return s;
}

bool Subspace::contains(const SparseVec& v) const {
    // basis_ is in reduced echelon form: reduce by pivot coefficients.
    SparseVec r = v;
    for (const auto& b : basis_) {
        Rational c = v.at(b.leading_index());
        if (!is_zero(c)) r.axpy(-c, b);
    }
    return r.empty();
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) return false;
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const SparseVec& v) { return contains(v); });
}

Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw std::invalid_argument("subspace sum across different ambient spaces");
    std::vector<SparseVec> all = a.basis_;
    all.insert(all.end(), b.basis_.begin(), b.basis_.end());
    return Subspace::span(a.ambient_, all);
}

// --------------------------------------------------------------- operations

std::size_t rank(const Matrix& m) {
    // Eliminate along the shorter side.
    Echelon e(m.rows() <= m.cols() ? m.rows() : m.cols());
    if (m.rows() <= m.cols()) {
        for (std::size_t c = 0; c < m.cols(); ++c) e.insert(m.column(c));
    } else {
        for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    }
    return e.rank();
}

Subspace kernel(const Matrix& m) {
    Echelon e(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    const auto rows = e.sorted_rows();
    std::vector<bool> is_pivot(m.cols(), false);
    for (const auto& row : rows) is_pivot[row.leading_index()] = true;
    // For each free column f: e_f - sum_row row[f] * e_pivot(row).
    std::vector<std::vector<SparseVec::Entry>> kernel_entries(m.cols());
    for (std::size_t f = 0; f < m.cols(); ++f)
        if (!is_pivot[f]) kernel_entries[f].emplace_back(f, Rational(1));
    for (const auto& row : rows) {
        const std::size_t p = row.leading_index();
        for (const auto& [c, v] : row)
            if (c != p) kernel_entries[c].emplace_back(p, -v);
    }
    std::vector<SparseVec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f)
        if (!is_pivot[f]) basis.emplace_back(std::move(kernel_entries[f]));
    return Subspace::span(m.cols(), basis);
}

Subspace image(const Matrix& m) {
    std::vector<SparseVec> cols;
    cols.reserve(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
    return Subspace::span(m.rows(), cols);
}

namespace {

// Echelon form that remembers each row as a combination of the inserted
// generators.
class TrackedEchelon {
public:
    explicit TrackedEchelon(std::size_t ambient) : row_of_pivot_(ambient, -1) {}

    bool insert(const SparseVec& v, std::size_t generator) {
        SparseVec r = v;
        SparseVec track = SparseVec::unit(generator);
        for (const auto& [idx, val] : v) {
            const long row = row_of_pivot_[idx];
            if (row >= 0) {
                r.axpy(-val, rows_[static_cast<std::size_t>(row)]);
                track.axpy(-val, tracks_[static_cast<std::size_t>(row)]);
            }
        }
        if (r.empty()) return false;
        const std::size_t pivot = r.leading_index();
        Rational inv = 1 / r.leading_value();
        r.scale(inv);
        track.scale(inv);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Rational c = rows_[i].at(pivot);
            if (!is_zero(c)) {
                rows_[i].axpy(-c, r);
                tracks_[i].axpy(-c, track);
            }
        }
        row_of_pivot_[pivot] = static_cast<long>(rows_.size());
        pivots_.push_back(pivot);
        rows_.push_back(std::move(r));
        tracks_.push_back(std::move(track));
        return true;
    }

    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const SparseVec& track(std::size_t i) const { return tracks_[i]; }

private:
    std::vector<long> row_of_pivot_;
    std::vector<std::size_t> pivots_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> tracks_;
};

}  // namespace

Subquotient subquotient(const Subspace& z, const Subspace& b) {
    if (z.ambient_dim() != b.ambient_dim()) throw NotContained("subquotient across different ambient spaces");
    if (!z.contains(b)) throw NotContained("subquotient: B is not contained in Z");
    const std::size_t n = z.ambient_dim();
    TrackedEchelon tracked(n);
    const std::size_t nb = b.dim();
    for (std::size_t i = 0; i < nb; ++i) tracked.insert(b.basis()[i], i);
    // Generators nb + j are the chosen complement vectors.
    std::vector<SparseVec> complement;
    for (const auto& v : z.basis())
        if (tracked.insert(v, nb + complement.size())) complement.push_back(v);

    Subquotient q;
    q.dim = complement.size();
    q.section = Matrix::from_columns(n, complement);
    std::vector<Triplet> proj;
    const auto& pivots = tracked.pivots();
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (const auto& [g, v] : tracked.track(i))
            if (g >= nb) proj.push_back({g - nb, pivots[i], v});
    q.projector = Matrix::from_triplets(q.dim, n, std::move(proj));
    return q;
}

}  // namespace supersheaf
