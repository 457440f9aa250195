#include "supersheaf/cech.hpp"

#include <algorithm>
#include <limits>

namespace supersheaf {

SplitSheaf SplitSheaf::from_descriptor(const SheafDescriptor& desc) {
    if (desc.space().n != 1) throw std::invalid_argument("explicit Čech complexes need n = 1");
    return SplitSheaf{ChartModel::projective(desc.space().m), desc.summands()};
}

int SplitSheaf::min_effective_twist() const {
    int best = std::numeric_limits<int>::max();
    for (const auto& s : summands)
        for (auto zeta : all_monomials(m())) best = std::min(best, chart.effective_twist(s.twist, zeta));
    return summands.empty() ? 0 : best;
}

int SplitSheaf::max_effective_twist() const {
    int best = std::numeric_limits<int>::min();
    for (const auto& s : summands)
        for (auto zeta : all_monomials(m())) best = std::max(best, chart.effective_twist(s.twist, zeta));
    return summands.empty() ? 0 : best;
}

Window auto_window(const SplitSheaf& sheaf) {
    const int m = sheaf.m();
    return {std::min(sheaf.min_effective_twist(), 0) - m - 1, std::max(sheaf.max_effective_twist(), 0) + m + 1};
}

bool window_is_exact(const SplitSheaf& sheaf, Window window) {
    return window.lo <= std::min(0, sheaf.min_effective_twist() + 1) && window.hi >= std::max(0, sheaf.max_effective_twist());
}

CechComplex::CechComplex(SplitSheaf sheaf, Window window, std::vector<CochainBasisVector> basis0,
                         std::vector<CochainBasisVector> basis1, Matrix differential, bool split)
    : sheaf_(std::move(sheaf)),
      window_(window),
      basis0_(std::move(basis0)),
      basis1_(std::move(basis1)),
      d_(std::move(differential)),
      split_(split) {
    if (d_.rows() != basis1_.size() || d_.cols() != basis0_.size())
        throw std::logic_error("differential shape does not match the cochain bases");
}

FiberVector apply_endomorphism(const EndoMatrix& a, const FiberVector& v) {
    FiberVector out;
    for (const auto& [key, c] : v) {
        const GradedCoefficient f = GradedCoefficient::term(c, key.exp, key.zeta);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto& entry = a.at(i, key.summand);
            if (entry.is_zero()) continue;
            const GradedCoefficient prod = f * entry;
            for (const auto& [tk, q] : prod.terms()) {
                auto& slot = out[FiberKey{i, tk.zeta, tk.z_exp}];
                slot += q;
                if (is_zero(slot)) out.erase(FiberKey{i, tk.zeta, tk.z_exp});
            }
        }
    }
    return out;
}

BasisIndex::BasisIndex(const CechComplex& cx, int cech_degree) {
    const auto& basis = cx.basis(cech_degree);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto& b = basis[k];
        index_.emplace(std::pair{b.chart, FiberKey{b.summand, b.zeta, b.laurent_exp}}, k);
    }
}

std::optional<std::size_t> BasisIndex::find(Chart chart, const FiberKey& key) const {
    auto it = index_.find({chart, key});
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

// Walks terms in increasing exterior degree. Terms below the window are
// absorbed by a·x, whose correction a − I only produces higher degrees.
SparseVec project_with(const Window& w, const BasisIndex& idx, const EndoMatrix& a, FiberVector work) {
    const EndoMatrix nil = a - EndoMatrix::identity(a.size());
    std::vector<SparseVec::Entry> out;
    while (!work.empty()) {
        auto it = work.begin();
        const FiberKey key = it->first;
        const Rational c = it->second;
        work.erase(it);
        if (key.exp < w.lo) {
            const FiberVector corr = apply_endomorphism(nil, FiberVector{{key, c}});
            for (const auto& [k2, q] : corr) {
                auto& slot = work[k2];
                slot -= q;
                if (is_zero(slot)) work.erase(k2);
            }
        } else if (key.exp <= w.hi) {
            auto pos = idx.find(Chart::u01, key);
            if (!pos) throw std::logic_error("window cochain missing from the basis");
            out.emplace_back(*pos, c);
        }
    }
    return SparseVec(std::move(out));
}

CechComplex build(const SplitSheaf& sheaf, const EndoMatrix& a, Window w, bool split) {
    if (w.lo > w.hi) throw WindowTooSmall("weight window [" + std::to_string(w.lo) + "," + std::to_string(w.hi) + "] is empty");
    const auto monomials = all_monomials(sheaf.m());
    std::vector<CochainBasisVector> basis0;
    std::vector<CochainBasisVector> basis1;
    for (auto zeta : monomials)
        for (std::size_t j = 0; j < sheaf.rank(); ++j) {
            const Parity par = sheaf.line_parity(j, zeta);
            const int t = sheaf.chart.effective_twist(sheaf.summands[j].twist, zeta);
            for (Chart ch : {Chart::u0, Chart::u1}) {
                if (ch == Chart::u0 ? w.hi < 0 : t < w.lo) continue;
                for (int e : ChartModel::chart_sections(ch, t, w)) basis0.push_back({0, ch, j, e, zeta, par});
            }
            for (int e : ChartModel::chart_sections(Chart::u01, t, w)) basis1.push_back({1, Chart::u01, j, e, zeta, par});
        }

    CechComplex shell(sheaf, w, basis0, basis1, Matrix(basis1.size(), basis0.size()), split);
    const BasisIndex idx1(shell, 1);
    std::vector<SparseVec> columns;
    columns.reserve(basis0.size());
    for (const auto& b : basis0) {
        const FiberKey key{b.summand, b.zeta, b.laurent_exp};
        if (b.chart == Chart::u0) {
            auto pos = idx1.find(Chart::u01, key);
            if (!pos) throw std::logic_error("U0 section outside the U01 window");
            columns.push_back(SparseVec({{*pos, Rational(-1)}}));
        } else {
            columns.push_back(project_with(w, idx1, a, apply_endomorphism(a, FiberVector{{key, Rational(1)}})));
        }
    }
    return CechComplex(sheaf, w, std::move(basis0), std::move(basis1),
                       Matrix::from_columns(basis1.size(), std::move(columns)), split);
}

}  // namespace

SparseVec project_to_window(const CechComplex& cx, const EndoMatrix& a, const FiberVector& y) {
    return project_with(cx.window(), BasisIndex(cx, 1), a, y);
}

CechComplex build_split_complex(const SplitSheaf& sheaf, std::optional<Window> window) {
    return build(sheaf, EndoMatrix::identity(sheaf.rank()), window.value_or(auto_window(sheaf)), true);
}

CechComplex build_split_complex(const SheafDescriptor& desc, std::optional<Window> window) {
    return build_split_complex(SplitSheaf::from_descriptor(desc), window);
}

CechComplex build_glued_complex(const SplitSheaf& sheaf, const EndoMatrix& a, std::optional<Window> window) {
    if (a.size() != sheaf.rank()) throw std::invalid_argument("cocycle size does not match the sheaf rank");
    if (!(a.degree_component(0) == EndoMatrix::identity(a.size())))
        throw std::invalid_argument("gluing automorphism is not unipotent");
    if (auto d = a.min_degree(); d && *d < 0) throw std::invalid_argument("gluing automorphism is not unipotent");
    return build(sheaf, a, window.value_or(auto_window(sheaf)), a.is_identity());
}

CohomologyTable cohomology(const CechComplex& cx) {
    CohomologyTable table;
    const auto& b0 = cx.basis(0);
    const auto& b1 = cx.basis(1);
    // d preserves sheaf parity, and for split complexes also the exterior degree,
    // so it is block diagonal in the corresponding keys.
    auto block_key = [&](const CochainBasisVector& v) {
        return std::pair{cx.is_split() ? v.filtration() : 0, v.parity};
    };
    std::map<std::pair<int, Parity>, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> blocks;
    for (std::size_t k = 0; k < b0.size(); ++k) blocks[block_key(b0[k])].first.push_back(k);
    for (std::size_t k = 0; k < b1.size(); ++k) blocks[block_key(b1[k])].second.push_back(k);
    if (cx.is_split())
        for (int p = 0; p <= cx.sheaf().m(); ++p)
            for (int k = 0; k <= 1; ++k) table.bigraded[{p, k - p}] = 0;
    for (const auto& [key, ids] : blocks) {
        const auto& [cols, rows] = ids;
        const std::size_t r = rank(cx.differential().submatrix(rows, cols));
        const std::size_t h0 = cols.size() - r;
        const std::size_t h1 = rows.size() - r;
        auto& d0 = key.second == Parity::even ? table.h[0].even : table.h[0].odd;
        auto& d1 = key.second == Parity::even ? table.h[1].even : table.h[1].odd;
        d0 += h0;
        d1 += h1;
        if (cx.is_split()) {
            table.bigraded[{key.first, -key.first}] += h0;
            table.bigraded[{key.first, 1 - key.first}] += h1;
        }
    }
    return table;
}

bool window_stability_check(const SplitSheaf& sheaf, Window window, int padding, const EndoMatrix* cocycle) {
    if (padding < 1) throw std::invalid_argument("padding must be at least 1");
    const Window wide{window.lo - padding, window.hi + padding};
    auto dims = [&](Window w) {
        const CechComplex cx = cocycle ? build_glued_complex(sheaf, *cocycle, w) : build_split_complex(sheaf, w);
        return cohomology(cx).h;
    };
    return dims(window) == dims(wide);
}

bool window_stability_check(const SheafDescriptor& desc, Window window, int padding) {
    return window_stability_check(SplitSheaf::from_descriptor(desc), window, padding);
}

}  // namespace supersheaf
