#include "supersheaf/spectral.hpp"

#include <stdexcept>
#include <string>

namespace supersheaf {

FilteredComplex FilteredComplex::from_cech(const CechComplex& cx) {
    FilteredComplex fc;
    for (int k = 0; k <= 1; ++k)
        for (const auto& b : cx.basis(k)) {
            fc.filtration[static_cast<std::size_t>(k)].push_back(b.filtration());
            fc.parity[static_cast<std::size_t>(k)].push_back(b.parity);
        }
    fc.d = cx.differential();
    fc.max_filtration = cx.sheaf().m();
    return fc;
}

ParityDims SpectralPage::dims(Bidegree pq) const {
    auto it = cells.find(pq);
    return it == cells.end() ? ParityDims{} : it->second.dims;
}

namespace {

std::vector<std::size_t> select(const std::vector<int>& filt, auto pred) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < filt.size(); ++i)
        if (pred(filt[i])) out.push_back(i);
    return out;
}

// Kernel of a column-restricted submatrix, lifted back to ambient coordinates.
Subspace lift_kernel(const Matrix& sub, const std::vector<std::size_t>& cols, std::size_t ambient) {
    std::vector<SparseVec> vecs;
    const Subspace ker = kernel(sub);
    for (const auto& v : ker.basis()) {
        std::vector<SparseVec::Entry> e;
        for (const auto& [i, q] : v) e.emplace_back(cols[i], q);
        vecs.emplace_back(std::move(e));
    }
    return Subspace::span(ambient, vecs);
}

class PageBuilder {
public:
    explicit PageBuilder(const FilteredComplex& fc) : fc_(fc) {}

    // C^p_r ∩ C^k.
    const Subspace& cycles(int k, int p, int r) {
        auto key = std::tuple{k, p, r};
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const auto& filt = fc_.filtration[static_cast<std::size_t>(k)];
        const auto cols = select(filt, [p](int f) { return f >= p; });
        Subspace s;
        if (k == 1) {
            std::vector<SparseVec> units;
            for (auto c : cols) units.push_back(SparseVec::unit(c));
            s = Subspace::span(fc_.dim(1), units);
        } else {
            const auto rows = select(fc_.filtration[1], [p, r](int f) { return f < p + r; });
            s = lift_kernel(fc_.d.submatrix(rows, cols), cols, fc_.dim(0));
        }
        return cache_.emplace(key, std::move(s)).first->second;
    }

    PageCell cell(int k, int p, int r) {
        const Subspace& z = cycles(k, p, r);
        std::vector<SparseVec> b = cycles(k, p + 1, r - 1).basis();
        if (k == 1)
            for (const auto& v : cycles(0, p - r + 1, r - 1).basis()) b.push_back(fc_.d.apply(v));
        PageCell c;
        c.quotient = subquotient(z, Subspace::span(fc_.dim(k), b));
        const auto& par = fc_.parity[static_cast<std::size_t>(k)];
        for (std::size_t j = 0; j < c.quotient.dim; ++j) {
            const SparseVec& col = c.quotient.section.column(j);
            const Parity first = par[col.leading_index()];
            for (const auto& [i, q] : col)
                if (par[i] != first) throw std::logic_error("page representative is not parity-homogeneous");
            c.parities.push_back(first);
            (first == Parity::even ? c.dims.even : c.dims.odd) += 1;
        }
        return c;
    }

private:
    const FilteredComplex& fc_;
    std::map<std::tuple<int, int, int>, Subspace> cache_;
};

std::size_t parity_rank(const Matrix& m, const std::vector<Parity>& row_par, const std::vector<Parity>& col_par,
                        Parity which) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < row_par.size(); ++i)
        if (row_par[i] == which) rows.push_back(i);
    for (std::size_t j = 0; j < col_par.size(); ++j)
        if (col_par[j] == which) cols.push_back(j);
    return rank(m.submatrix(rows, cols));
}

ParityDims& slot(std::map<Bidegree, ParityDims>& m, Bidegree k) { return m[k]; }

std::size_t& pick(ParityDims& d, Parity p) { return p == Parity::even ? d.even : d.odd; }

}  // namespace

SpectralPage page(const FilteredComplex& fc, int r) {
    if (r < 0) throw std::invalid_argument("page index must be >= 0");
    PageBuilder builder(fc);
    SpectralPage pg;
    pg.r = r;
    for (int k = 0; k <= 1; ++k)
        for (int p = 0; p <= fc.max_filtration; ++p) pg.cells.emplace(Bidegree{p, k - p}, builder.cell(k, p, r));
    return pg;
}

bool PageDifferential::is_zero() const {
    for (const auto& [pq, m] : blocks)
        if (!m.is_zero()) return false;
    return true;
}

std::size_t PageDifferential::rank() const {
    std::size_t total = 0;
    for (const auto& [pq, m] : blocks) total += supersheaf::rank(m);
    return total;
}

PageDifferential differential(const FilteredComplex& fc, const SpectralPage& pg) {
    PageDifferential out;
    out.r = pg.r;
    const int r = pg.r;
    for (const auto& [pq, src] : pg.cells) {
        const auto [p, q] = pq;
        if (p + q != 0) continue;  // d vanishes on C^1
        const Bidegree tgt{p + r, q - r + 1};
        auto it = pg.cells.find(tgt);
        std::vector<SparseVec> cols;
        for (std::size_t j = 0; j < src.quotient.dim; ++j) {
            const SparseVec v = fc.d.apply(src.quotient.section.column(j));
            for (const auto& [i, c] : v)
                if (fc.filtration[1][i] < p + r)
                    throw std::logic_error("d_" + std::to_string(r) + " leaves F_" + std::to_string(p + r) +
                                           " on cell (" + std::to_string(p) + "," + std::to_string(q) + ")");
            if (it != pg.cells.end()) cols.push_back(it->second.quotient.projector.apply(v));
        }
        if (it != pg.cells.end()) out.blocks.emplace(pq, Matrix::from_columns(it->second.quotient.dim, std::move(cols)));
    }
    return out;
}

std::map<Bidegree, ParityDims> page_homology(const SpectralPage& pg, const PageDifferential& d) {
    std::map<Bidegree, ParityDims> out;
    for (const auto& [pq, cell] : pg.cells) out[pq] = cell.dims;
    for (const auto& [src, m] : d.blocks) {
        const Bidegree tgt{src.first + d.r, src.second - d.r + 1};
        const auto& sp = pg.cells.at(src).parities;
        const auto& tp = pg.cells.at(tgt).parities;
        for (Parity par : {Parity::even, Parity::odd}) {
            const std::size_t rk = parity_rank(m, tp, sp, par);
            pick(slot(out, src), par) -= rk;
            pick(slot(out, tgt), par) -= rk;
        }
    }
    return out;
}

bool differential_is_odd(const SpectralPage& source, const PageDifferential& d) {
    for (const auto& [src, m] : d.blocks) {
        const Bidegree tgt{src.first + d.r, src.second - d.r + 1};
        const auto& sp = source.cells.at(src).parities;
        const auto& tp = source.cells.at(tgt).parities;
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (const auto& [i, c] : m.column(j))
                if (tp[i] != sp[j]) return false;
    }
    return true;
}

std::array<ParityDims, 2> direct_cohomology(const FilteredComplex& fc) {
    std::array<ParityDims, 2> h;
    for (Parity par : {Parity::even, Parity::odd}) {
        std::size_t n0 = 0, n1 = 0;
        for (auto x : fc.parity[0]) n0 += x == par;
        for (auto x : fc.parity[1]) n1 += x == par;
        const std::size_t rk = parity_rank(fc.d, fc.parity[1], fc.parity[0], par);
        pick(h[0], par) = n0 - rk;
        pick(h[1], par) = n1 - rk;
    }
    return h;
}

ConvergenceReport converge(const FilteredComplex& fc) {
    ConvergenceReport rep;
    const int m = fc.max_filtration;
    rep.m = m;
    const int last = m + 3;
    for (int r = 0; r <= last; ++r) rep.pages.push_back(page(fc, r));

    rep.page_law_ok = true;
    for (int r = 0; r < last; ++r) {
        const auto d = differential(fc, rep.pages[static_cast<std::size_t>(r)]);
        const auto h = page_homology(rep.pages[static_cast<std::size_t>(r)], d);
        for (const auto& [pq, dims] : h)
            if (!(dims == rep.pages[static_cast<std::size_t>(r + 1)].dims(pq))) rep.page_law_ok = false;
    }

    rep.stable_ok = true;
    for (const auto& [pq, cell] : rep.pages.front().cells) {
        const int r0 = pq.second + m + 2;
        rep.stabilization[pq.second] = r0;
        const ParityDims inf = rep.pages[static_cast<std::size_t>(r0)].dims(pq);
        rep.e_infinity[pq] = inf;
        for (int r = r0; r <= last; ++r)
            if (!(rep.pages[static_cast<std::size_t>(r)].dims(pq) == inf)) rep.stable_ok = false;
    }

    rep.direct_h = direct_cohomology(fc);

    // gr_p H^k straight from the filtered complex.
    for (Parity par : {Parity::even, Parity::odd}) {
        std::vector<Parity> all0 = fc.parity[0], all1 = fc.parity[1];
        const std::size_t rk_full = parity_rank(fc.d, all1, all0, par);
        auto f_h0 = [&](int p) {
            std::vector<std::size_t> rows, cols;
            for (std::size_t i = 0; i < all1.size(); ++i)
                if (all1[i] == par) rows.push_back(i);
            std::size_t n = 0;
            for (std::size_t j = 0; j < all0.size(); ++j)
                if (all0[j] == par && fc.filtration[0][j] >= p) cols.push_back(j), ++n;
            return n - rank(fc.d.submatrix(rows, cols));
        };
        auto f_h1 = [&](int p) {
            std::vector<std::size_t> rows, cols;
            std::size_t n = 0;
            for (std::size_t i = 0; i < all1.size(); ++i) {
                if (all1[i] != par) continue;
                if (fc.filtration[1][i] >= p) ++n;
                else rows.push_back(i);
            }
            for (std::size_t j = 0; j < all0.size(); ++j)
                if (all0[j] == par) cols.push_back(j);
            return n + rank(fc.d.submatrix(rows, cols)) - rk_full;
        };
        for (int p = 0; p <= m; ++p) {
            pick(rep.graded_h[{p, 0}], par) = f_h0(p) - f_h0(p + 1);
            pick(rep.graded_h[{p, 1}], par) = f_h1(p) - f_h1(p + 1);
        }
    }

    rep.graded_ok = true;
    std::array<ParityDims, 2> sums{};
    for (const auto& [pq, inf] : rep.e_infinity) {
        const int k = pq.first + pq.second;
        sums[static_cast<std::size_t>(k)].even += inf.even;
        sums[static_cast<std::size_t>(k)].odd += inf.odd;
        if (!(rep.graded_h[{pq.first, k}] == inf)) rep.graded_ok = false;
    }
    rep.totals_ok = sums == rep.direct_h;
    return rep;
}

namespace {

FiberVector u1_component(const CechComplex& cx, const SparseVec& c0) {
    FiberVector y;
    const auto& basis = cx.basis(0);
    for (const auto& [i, q] : c0) {
        const auto& b = basis[i];
        if (b.chart == Chart::u1) y[FiberKey{b.summand, b.zeta, b.laurent_exp}] += q;
    }
    return y;
}

Matrix project_columns(const Matrix& projector, const std::vector<SparseVec>& vecs) {
    std::vector<SparseVec> cols;
    for (const auto& v : vecs) cols.push_back(projector.apply(v));
    return Matrix::from_columns(projector.rows(), std::move(cols));
}

std::vector<SparseVec> columns_of(const Matrix& m) {
    std::vector<SparseVec> out;
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
    return out;
}

}  // namespace

SymbolPageReport symbol_page_check(const SplitSheaf& sheaf, const GluingCocycle& a) {
    SymbolPageReport rep;
    const OrderResult ord = order(sheaf, a);
    rep.k = ord.k;
    const CechComplex tw = twisted_complex(sheaf, ord.representative);
    const CechComplex split = build_split_complex(sheaf);
    const FilteredComplex fc_tw = FilteredComplex::from_cech(tw);
    const FilteredComplex fc_split = FilteredComplex::from_cech(split);
    const int m = sheaf.m();

    std::vector<SpectralPage> pages;
    std::vector<PageDifferential> diffs;
    pages.push_back(page(fc_tw, 0));
    diffs.push_back(differential(fc_tw, pages.back()));
    for (int r = 1; r <= m + 3; ++r) {
        pages.push_back(page(fc_tw, r));
        diffs.push_back(differential(fc_tw, pages.back()));
        if (!rep.first_nonzero_page && !diffs.back().is_zero()) rep.first_nonzero_page = r;
    }
    if (!ord.k) return rep;
    const int k = *ord.k;
    if (k > m + 3) return rep;

    rep.lower_pages_vanish = true;
    for (int r = 1; r < k; ++r)
        if (!diffs[static_cast<std::size_t>(r)].is_zero()) rep.lower_pages_vanish = false;
    const SpectralPage& pk = pages[static_cast<std::size_t>(k)];
    const PageDifferential& dk = diffs[static_cast<std::size_t>(k)];
    rep.dk_rank = dk.rank();

    const SpectralPage e1 = page(fc_split, 1);
    const EndoMatrix symbol = log(ord.representative).degree_component(k);
    const EndoMatrix id = EndoMatrix::identity(sheaf.rank());

    bool match = rep.lower_pages_vanish;
    for (int p = 0; p <= m && match; ++p) {
        const Bidegree src{p, -p};
        const Bidegree tgt{p + k, 1 - p - k};
        const PageCell& s1 = e1.cells.at(src);
        if (p + k > m) {
            if (dk.blocks.count(src)) match = false;
            continue;
        }
        const PageCell& t1 = e1.cells.at(tgt);
        const std::vector<SparseVec> src_reps = columns_of(s1.quotient.section);
        const std::vector<SparseVec> tgt_reps = columns_of(t1.quotient.section);

        // Route B: the symbol acting on the U1 component of split cocycles.
        std::vector<SparseVec> images;
        for (const auto& c : src_reps)
            images.push_back(project_to_window(split, id, apply_endomorphism(symbol, u1_component(split, c))));
        const Matrix m_sym = project_columns(t1.quotient.projector, images);

        // E_1 of gr E sits inside E_k of the twisted complex when d_1..d_{k-1} vanish.
        for (const auto& c : src_reps)
            for (const auto& [i, q] : fc_tw.d.apply(c))
                if (fc_tw.filtration[1][i] < p + k) match = false;
        if (!match) break;
        const Matrix t_src = project_columns(pk.cells.at(src).quotient.projector, src_reps);
        const Matrix t_tgt = project_columns(pk.cells.at(tgt).quotient.projector, tgt_reps);
        if (t_src.rows() != t_src.cols() || rank(t_src) != t_src.cols()) match = false;
        if (t_tgt.rows() != t_tgt.cols() || rank(t_tgt) != t_tgt.cols()) match = false;
        if (!match) break;
        const Matrix& block = dk.blocks.at(src);
        if (!(block * t_src == t_tgt * m_sym)) match = false;
    }
    rep.symbol_match = match;
    return rep;
}

}  // namespace supersheaf
