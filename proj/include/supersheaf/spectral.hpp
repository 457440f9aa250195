#pragma once

// Spectral sequence of the exterior-degree filtration on a two-term Čech
// complex. Pages are built straight from the subquotients
//   E_r^p = C^p_r / (C^{p+1}_{r-1} + d C^{p-r+1}_{r-1}),
//   C^p_r = { c in F_p : dc in F_{p+r} },
// with q = (Čech degree) - p.

#include "supersheaf/cech.hpp"
#include "supersheaf/gluing.hpp"
#include "supersheaf/linalg.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace supersheaf {

using Bidegree = std::pair<int, int>;  // (p, q)

struct FilteredComplex {
    std::array<std::vector<int>, 2> filtration;
    std::array<std::vector<Parity>, 2> parity;  // sheaf parity per basis vector
    Matrix d;                                   // degree 0 -> degree 1
    int max_filtration = 0;

    static FilteredComplex from_cech(const CechComplex& cx);
    [[nodiscard]] std::size_t dim(int cech_degree) const {
        return (cech_degree == 0 || cech_degree == 1) ? filtration[static_cast<std::size_t>(cech_degree)].size() : 0;
    }
};

struct PageCell {
    ParityDims dims;
    Subquotient quotient;
    /// Sheaf parity of each quotient basis vector.
    std::vector<Parity> parities;
};

struct SpectralPage {
    int r = 0;
    std::map<Bidegree, PageCell> cells;

    [[nodiscard]] ParityDims dims(Bidegree pq) const;
};

/// Throws std::invalid_argument for r < 0.
SpectralPage page(const FilteredComplex& fc, int r);

/// Matrices of d_r: (p, q) -> (p + r, q - r + 1), one block per source cell
/// with a nonzero target. Throws std::logic_error when d of a cell
/// representative leaves F_{p+r} (the bidegree law).
struct PageDifferential {
    int r = 0;
    std::map<Bidegree, Matrix> blocks;  // keyed by source cell

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] std::size_t rank() const;
};

PageDifferential differential(const FilteredComplex& fc, const SpectralPage& page);

/// Homology dims of (E_r, d_r) per cell.
std::map<Bidegree, ParityDims> page_homology(const SpectralPage& page, const PageDifferential& d);

/// True iff every block of d_r maps sheaf-even vectors to sheaf-even ones and
/// sheaf-odd to sheaf-odd, i.e. d_r is odd for the total parity.
bool differential_is_odd(const SpectralPage& source, const PageDifferential& d);

/// Direct kernel/cokernel dims of the complex, per sheaf parity.
std::array<ParityDims, 2> direct_cohomology(const FilteredComplex& fc);

struct ConvergenceReport {
    int m = 0;
    std::vector<SpectralPage> pages;  // r = 0 .. m + 3
    std::map<int, int> stabilization;  // q -> r0(q) = q + m + 2
    std::map<Bidegree, ParityDims> e_infinity;
    std::map<std::pair<int, int>, ParityDims> graded_h;  // (p, k) -> dim gr_p H^k
    std::array<ParityDims, 2> direct_h;
    bool totals_ok = false;      // sum over p + q = k of E_inf = dim H^k
    bool graded_ok = false;       // E_inf^{p,q} = gr_p H^{p+q}
    bool page_law_ok = false;     // E_{r+1} = H(E_r, d_r)
    bool stable_ok = false;       // E_r = E_inf for r >= r0(q)
};

ConvergenceReport converge(const FilteredComplex& fc);

struct SymbolPageReport {
    std::optional<int> k;                   // order of the cocycle
    std::optional<int> first_nonzero_page;  // least r >= 1 with d_r != 0
    bool lower_pages_vanish = false;        // d_r = 0 for 1 <= r < k
    bool symbol_match = false;              // d_k agrees with the action of mu_k
    std::size_t dk_rank = 0;
};

/// Compares d_k of the twisted complex of the order-k representative with the
/// map induced on E_1 = H(gr E) by the degree-k symbol.
SymbolPageReport symbol_page_check(const SplitSheaf& sheaf, const GluingCocycle& a);

}  // namespace supersheaf
