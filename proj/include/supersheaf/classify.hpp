#pragma once

// Classification outputs: the abelian obstruction ladder, constructive
// reduction of cocycles to the identity, the Atiyah class of a split
// (CP^1, ∧G), holomorphic connections on G and their induced connections on
// exterior powers.

#include "supersheaf/gluing.hpp"
#include "supersheaf/sheaf_model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace supersheaf {

struct LadderRung {
    int p = 0;
    Integer h0;
    Integer h1;
};

struct ObstructionLadder {
    std::vector<LadderRung> rungs;  // p = 1..m
    bool rigid_split = true;        // every H^1(End_p) vanishes

    [[nodiscard]] std::string verdict() const { return rigid_split ? "rigid-split" : "non-rigid"; }
};

ObstructionLadder ladder(const SheafDescriptor& desc);

/// Either frames (phi0 on U0, phi1 on U1) with a ∘ phi1 = phi0, or the first
/// nonvanishing symbol class.
struct SplittingCertificate {
    std::optional<std::pair<EndoMatrix, EndoMatrix>> frames;
    std::optional<SymbolClass> obstruction;
    /// Set when the certificate branch re-checks: identity holds, phi0 is
    /// U0-regular, phi1 is U1-regular, and the twisted cohomology equals the split one.
    bool verified = false;

    [[nodiscard]] bool split() const { return frames.has_value(); }
};

SplittingCertificate reduce_cocycle(const SplitSheaf& sheaf, const GluingCocycle& a);
SplittingCertificate reduce_cocycle(const SheafDescriptor& desc, const GluingCocycle& a);

/// For G = ⊕ O(g_i): the class of the i-th diagonal log-derivative cochain
/// g_i z^{-1} in H^1(CP^1, O(-2)), as a multiple of the class of z^{-1}.
std::vector<Rational> atiyah_obstruction(const std::vector<int>& g_twists);

class NoConnection : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Chartwise dz-coefficient matrices of ∇ = d + ω, both written in the U0
/// frame coordinate z. omega0 is regular on U0, omega1 on U1 (1-form
/// coefficient exponents <= -2 relative to the frame twists).
struct Connection {
    std::vector<int> twists;
    EndoMatrix omega0;
    EndoMatrix omega1;
};

/// Solves the chart compatibility equation for a diagonal connection.
/// Throws NoConnection when no solution exists.
Connection construct_connection(const std::vector<int>& g_twists);

/// Matrix of the derivation induced by omega on ∧^p, in the basis of sorted
/// p-subsets (lexicographic).
EndoMatrix wedge_matrix(const EndoMatrix& omega, int p);
/// ∧^p ∇ chartwise. Throws NoConnection if the connection does not exist.
Connection wedge_connection(const std::vector<int>& g_twists, int p);
Connection wedge_connection(const Connection& conn, int p);

/// R(∂_z, ∂_z) = ∇∇ - ∇∇ - ∇_{[∂_z,∂_z]} on one chart, evaluated literally.
EndoMatrix curvature(const EndoMatrix& omega);

struct ConnectionReport {
    std::vector<int> g_twists;
    bool tangent_class_trivial = false;  // gluing of T reduces to gr T
    bool extension_splits = false;      // all Atiyah classes vanish
    bool connection_exists = false;      // chart equations solvable
    [[nodiscard]] bool all_equal() const {
        return tangent_class_trivial == extension_splits && extension_splits == connection_exists;
    }
};

/// Gluing cocycle of the tangent sheaf of (CP^1, ∧G) relative to gr T, on the
/// frame (Θ, G_1*, ..., G_r*).
std::pair<SplitSheaf, GluingCocycle> tangent_cocycle(const std::vector<int>& g_twists);

ConnectionReport connection_equivalence_check(const std::vector<int>& g_twists);

}  // namespace supersheaf
