#pragma once

// Non-split sheaves over the split base: a gluing automorphism a of gr E on
// U01, its logarithm A (a quasi-derivation raising exterior degree), the order
// of a, the symbol classes in H^1(End_k gr E), and the twisted Čech complex.

#include "supersheaf/cech.hpp"
#include "supersheaf/endomorphism.hpp"

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace supersheaf {

class NotUnipotent : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotInFiltration : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Cochain A on U01 with values in End_(1) gr E.
class EndomorphismCochain {
public:
    EndomorphismCochain() = default;
    /// Checks that every term has exterior degree >= 1 and that the parity of
    /// entry (i, j) is |e_i| + |e_j|. Throws std::invalid_argument naming the entry.
    EndomorphismCochain(const SplitSheaf& sheaf, EndoMatrix matrix);

    [[nodiscard]] const EndoMatrix& matrix() const { return matrix_; }
    /// nullopt for the zero cochain.
    [[nodiscard]] std::optional<int> min_degree() const { return matrix_.min_degree(); }

    friend bool operator==(const EndomorphismCochain&, const EndomorphismCochain&) = default;

private:
    EndoMatrix matrix_;
};

/// a = exp(A): identity in exterior degree 0.
struct GluingCocycle {
    EndoMatrix a;

    friend bool operator==(const GluingCocycle&, const GluingCocycle&) = default;
};

GluingCocycle exp(const EndomorphismCochain& cochain);
/// Throws NotUnipotent when the degree-0 part of a is not the identity.
EndoMatrix log(const GluingCocycle& cocycle);

/// Twist of the line carrying term z^e zeta_K in entry (i, j) of End gr E.
int entry_twist(const SplitSheaf& sheaf, std::size_t row, std::size_t col, ExteriorMonomial zeta);
/// Regular on U0 (all exponents >= 0) / on U1 (exponent <= entry twist).
bool is_u0_regular(const SplitSheaf& sheaf, const EndoMatrix& m);
bool is_u1_regular(const SplitSheaf& sheaf, const EndoMatrix& m);

/// A coordinate of H^1 of End gr E: the basis class z^exp zeta_K of entry (row, col).
struct GapTerm {
    std::size_t row = 0;
    std::size_t col = 0;
    ExteriorMonomial zeta;
    int exp = 0;
    Rational coeff;

    friend bool operator==(const GapTerm&, const GapTerm&) = default;
};

struct SymbolClass {
    int k = 0;
    /// Exterior-degree-k layer of log(a).
    EndoMatrix cochain;
    /// Its class in H^1(M, End_k gr E), in the monomial basis z^e with twist < e < 0.
    std::vector<GapTerm> coordinates;

    [[nodiscard]] bool is_zero() const { return coordinates.empty(); }
};

/// Class of a U01 endomorphism cochain in H^1 of End gr E.
std::vector<GapTerm> h1_class(const SplitSheaf& sheaf, const EndoMatrix& cochain);

SymbolClass mu_k(const SplitSheaf& sheaf, const GluingCocycle& a, int k);
/// Throws NotInFiltration when log(a) has a component below degree p.
SymbolClass lambda_p(const SplitSheaf& sheaf, const GluingCocycle& a, int p);

struct OrderResult {
    /// nullopt: the cocycle reduces to the identity ("split-representative").
    std::optional<int> k;
    /// Adjusted representative Phi0^{-1} ∘ a ∘ Phi1; its log starts in degree k.
    GluingCocycle representative;
    /// U0-regular and U1-regular changes of frame with a ∘ Phi1 = Phi0 ∘ representative.
    EndoMatrix phi0;
    EndoMatrix phi1;
    /// Nonzero symbol of the representative in degree k (empty when split).
    std::optional<SymbolClass> symbol;
    int absorptions = 0;
};

/// Degree-wise coboundary absorption. At each degree the symbol splits into a
/// U0-regular part, a U1-regular part and its class; if the class vanishes the
/// regular parts are absorbed into the chart frames and the next degree is tried.
OrderResult order(const SplitSheaf& sheaf, const GluingCocycle& a);

/// The Čech complex of the sheaf glued by a. Identical to the split complex for a = id.
CechComplex twisted_complex(const SheafDescriptor& desc, const GluingCocycle& a,
                            std::optional<Window> window = std::nullopt);
CechComplex twisted_complex(const SplitSheaf& sheaf, const GluingCocycle& a,
                            std::optional<Window> window = std::nullopt);

struct RandomCocycleOptions {
    int max_terms = 3;
    int exp_spread = 2;  // exponents drawn from [twist - spread, spread]
    int coeff_bound = 3;
};

/// Random even End_(1)-valued cochain A (the cocycle is exp(A)). May be zero
/// when no entry admits a nonzero term.
EndomorphismCochain random_cochain(const SplitSheaf& sheaf, std::mt19937_64& rng,
                                   const RandomCocycleOptions& options = {});

/// Random global even automorphism g of gr E of exterior degree 0, with its inverse.
std::pair<EndoMatrix, EndoMatrix> random_global_automorphism(const SplitSheaf& sheaf, std::mt19937_64& rng);

/// The cocycle g ∘ a ∘ g^{-1} describing the same sheaf after a global change of frame.
GluingCocycle conjugate(const GluingCocycle& a, const EndoMatrix& g, const EndoMatrix& g_inverse);

}  // namespace supersheaf
