#pragma once

// Locally free sheaves on CP^{n|m} described by their retract data, and the
// twisted-line-bundle decompositions of gr E, End_p gr E and the graded
// pieces of the tangent sheaf.

#include "supersheaf/supergeometry.hpp"

#include <utility>
#include <vector>

namespace supersheaf {

/// One summand O(twist) or ΠO(twist) of E_red = S.
struct Summand {
    int twist = 0;
    Parity parity = Parity::even;

    friend bool operator==(const Summand&, const Summand&) = default;
};

/// gr E = gr O ⊗ S with S = ⊕ O(a_i) ⊕ ⊕ ΠO(b_j).
///
/// Twist lists are kept sorted descending. The S-basis used by cocycle
/// matrices lists the even summands first, then the odd ones, each in that
/// order.
class SheafDescriptor {
public:
    SheafDescriptor() = default;
    /// Throws std::invalid_argument when the total rank is zero.
    SheafDescriptor(SuperSpace space, std::vector<int> even_twists, std::vector<int> odd_twists);

    [[nodiscard]] const SuperSpace& space() const { return space_; }
    [[nodiscard]] const std::vector<int>& even_twists() const { return even_; }
    [[nodiscard]] const std::vector<int>& odd_twists() const { return odd_; }
    [[nodiscard]] int even_rank() const { return static_cast<int>(even_.size()); }
    [[nodiscard]] int odd_rank() const { return static_cast<int>(odd_.size()); }
    [[nodiscard]] int rank() const { return even_rank() + odd_rank(); }
    [[nodiscard]] std::vector<Summand> summands() const;

    friend bool operator==(const SheafDescriptor&, const SheafDescriptor&) = default;

private:
    SuperSpace space_;
    std::vector<int> even_;
    std::vector<int> odd_;
};

/// gr E_p with each entry's parity following the parity rule for gr E.
struct GradedPiece {
    int degree = 0;
    TwistList twists;

    friend bool operator==(const GradedPiece&, const GradedPiece&) = default;
};

struct EndBlock {
    int p = 0;
    TwistList twists;
};

/// gr E_p for p = 0..m; total rank 2^m * rank(S).
std::vector<GradedPiece> retract_decomposition(const SheafDescriptor& desc);

/// End_p gr E as a sum of line bundles: odd p pairs the even and odd halves of
/// S, even p pairs each half with itself. Empty outside 0..m.
EndBlock end_block(const SheafDescriptor& desc, int p);

/// (p, dim H^1(M, End_p gr E)) for p = 1..m.
std::vector<std::pair<int, Integer>> obstruction_dims(const SheafDescriptor& desc);

/// Both ends of 0 -> ∧^{p+1}G ⊗ G* -> T_p -> ∧^p G ⊗ Θ -> 0 over CP^1 (Θ = O(2)).
struct TangentTerms {
    int p = 0;
    TwistList sub;
    TwistList quot;
};

/// Throws std::invalid_argument for p < -1.
TangentTerms tangent_terms(const std::vector<int>& g_twists, int p);

/// The sheaf O_{target} ⊗ E pulled back along CP^{1|target} -> CP^{1|k}: same twists, larger m.
SheafDescriptor extend_descriptor(const SheafDescriptor& desc, int target_m);
/// Restriction along the standard embedding CP^{1|k} -> CP^{1|m}, k <= m.
SheafDescriptor restrict_descriptor(const SheafDescriptor& desc, int k);

}  // namespace supersheaf
