#pragma once

// Weight-windowed Čech complexes of gr E, and of sheaves glued from gr E by a
// unipotent cocycle, on the two-chart cover of CP^1.
//
// C^0 = E(U0) ⊕ E(U1) and C^1 = E(U01), all written in the U0 frame. The
// differential is (c0, c1) ↦ a·c1 − c0; for the split sheaf a = id.
//
// Truncation. For a window [lo, hi] with lo <= min(0, t_min + 1) and
// hi >= max(0, t_max) (t ranging over the effective twists of gr E) the
// truncated complex is a filtered subquotient of the full one whose removed
// pieces are acyclic already on the associated graded, so cohomology and every
// spectral page E_r, r >= 1, are computed exactly. Cochains of U01 below lo are
// split off along a·C^1_{<lo} rather than by coordinate projection, which is
// what keeps this exact for arbitrary Laurent cocycles.

#include "supersheaf/endomorphism.hpp"
#include "supersheaf/linalg.hpp"
#include "supersheaf/sheaf_model.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace supersheaf {

/// gr E = ∧(⊕ O(g_a)) ⊗ ⊕ summands over CP^1, in chart form.
struct SplitSheaf {
    ChartModel chart;
    std::vector<Summand> summands;

    /// Requires n = 1; throws std::invalid_argument otherwise.
    static SplitSheaf from_descriptor(const SheafDescriptor& desc);

    [[nodiscard]] int m() const { return chart.m(); }
    [[nodiscard]] std::size_t rank() const { return summands.size(); }
    /// Smallest / largest effective twist over all (summand, monomial) lines.
    [[nodiscard]] int min_effective_twist() const;
    [[nodiscard]] int max_effective_twist() const;
    /// Sheaf parity of the line zeta_I e_j.
    [[nodiscard]] Parity line_parity(std::size_t summand, ExteriorMonomial zeta) const {
        return summands[summand].parity + zeta.parity();
    }
};

class WindowTooSmall : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// [min(t_min, 0) − m − 1, max(t_max, 0) + m + 1].
Window auto_window(const SplitSheaf& sheaf);
/// True when the window satisfies the exactness bounds in the header comment.
bool window_is_exact(const SplitSheaf& sheaf, Window window);

struct CochainBasisVector {
    int cech_degree = 0;
    Chart chart = Chart::u0;
    std::size_t summand = 0;
    int laurent_exp = 0;
    ExteriorMonomial zeta;
    Parity parity = Parity::even;  // sheaf parity of the line

    [[nodiscard]] int filtration() const { return zeta.degree(); }
    friend bool operator==(const CochainBasisVector&, const CochainBasisVector&) = default;
};

class CechComplex {
public:
    CechComplex(SplitSheaf sheaf, Window window, std::vector<CochainBasisVector> basis0,
                std::vector<CochainBasisVector> basis1, Matrix differential, bool split);

    [[nodiscard]] const SplitSheaf& sheaf() const { return sheaf_; }
    [[nodiscard]] Window window() const { return window_; }
    [[nodiscard]] const std::vector<CochainBasisVector>& basis(int cech_degree) const {
        return cech_degree == 0 ? basis0_ : basis1_;
    }
    /// C^0 -> C^1.
    [[nodiscard]] const Matrix& differential() const { return d_; }
    [[nodiscard]] bool is_split() const { return split_; }
    [[nodiscard]] bool empty() const { return basis0_.empty() && basis1_.empty(); }

    friend bool operator==(const CechComplex& a, const CechComplex& b) {
        return a.sheaf_.summands == b.sheaf_.summands && a.sheaf_.chart == b.sheaf_.chart &&
               a.window_ == b.window_ && a.basis0_ == b.basis0_ && a.basis1_ == b.basis1_ && a.d_ == b.d_ &&
               a.split_ == b.split_;
    }

private:
    SplitSheaf sheaf_;
    Window window_;
    std::vector<CochainBasisVector> basis0_;
    std::vector<CochainBasisVector> basis1_;
    Matrix d_;
    bool split_ = true;
};

/// Split complex of gr E. Throws WindowTooSmall for an empty window.
CechComplex build_split_complex(const SplitSheaf& sheaf, std::optional<Window> window = std::nullopt);
CechComplex build_split_complex(const SheafDescriptor& desc, std::optional<Window> window = std::nullopt);

/// Complex of the sheaf glued by the unipotent U01 automorphism `a` of gr E.
/// Throws std::invalid_argument when a is not unipotent or has the wrong size.
CechComplex build_glued_complex(const SplitSheaf& sheaf, const EndoMatrix& a,
                                std::optional<Window> window = std::nullopt);

struct ParityDims {
    std::size_t even = 0;
    std::size_t odd = 0;

    [[nodiscard]] std::size_t total() const { return even + odd; }
    friend bool operator==(const ParityDims&, const ParityDims&) = default;
};

/// dim H^k(M, E_even) and dim H^k(M, E_odd) for k = 0, 1; for split complexes
/// also dim H^{p+q}(M, gr E_p) keyed by (p, q).
struct CohomologyTable {
    std::array<ParityDims, 2> h;
    std::map<std::pair<int, int>, std::size_t> bigraded;

    friend bool operator==(const CohomologyTable&, const CohomologyTable&) = default;
};

CohomologyTable cohomology(const CechComplex& cx);

/// True iff cohomology dims do not change when the window is widened by
/// `padding` on both sides. An optional gluing cocycle may be supplied.
bool window_stability_check(const SplitSheaf& sheaf, Window window, int padding,
                            const EndoMatrix* cocycle = nullptr);
bool window_stability_check(const SheafDescriptor& desc, Window window, int padding);

/// Sparse element of a Čech space: (summand, monomial, exponent) -> coefficient.
struct FiberKey {
    std::size_t summand = 0;
    ExteriorMonomial zeta;
    int exp = 0;

    friend std::strong_ordering operator<=>(const FiberKey& a, const FiberKey& b) {
        if (auto c = a.zeta.degree() <=> b.zeta.degree(); c != 0) return c;
        if (auto c = a.summand <=> b.summand; c != 0) return c;
        if (auto c = a.zeta <=> b.zeta; c != 0) return c;
        return a.exp <=> b.exp;
    }
    friend bool operator==(const FiberKey&, const FiberKey&) = default;
};
using FiberVector = std::map<FiberKey, Rational>;

/// a applied to a cochain given fiberwise.
FiberVector apply_endomorphism(const EndoMatrix& a, const FiberVector& v);

/// Index lookup of (summand, monomial, exponent) in a complex's basis.
class BasisIndex {
public:
    BasisIndex(const CechComplex& cx, int cech_degree);
    /// For degree 0 pass the chart as well.
    [[nodiscard]] std::optional<std::size_t> find(Chart chart, const FiberKey& key) const;

private:
    std::map<std::pair<Chart, FiberKey>, std::size_t> index_;
};

/// Coordinates in C^1 of the window of a U01 cochain, splitting off components
/// below the window along a·C^1_{<lo} and dropping those above it.
SparseVec project_to_window(const CechComplex& cx, const EndoMatrix& a, const FiberVector& y);

}  // namespace supersheaf
