#pragma once

// The projective superspace CP^{n|m}: line-bundle cohomology in closed form
// for every n, and the explicit two-chart model of the base CP^1 used by the
// Čech engine.

#include "supersheaf/graded_coeff.hpp"

#include <string>
#include <vector>

namespace supersheaf {

/// CP^{n|m}, whose structure sheaf is the exterior algebra of O(-1)^m.
struct SuperSpace {
    int n = 1;
    int m = 0;

    SuperSpace() = default;
    /// Throws std::invalid_argument unless n >= 1 and 0 <= m <= ExteriorMonomial::max_generators.
    SuperSpace(int n_, int m_);

    friend bool operator==(const SuperSpace&, const SuperSpace&) = default;
};

struct TwistEntry {
    int twist = 0;
    Parity parity = Parity::even;
    int multiplicity = 1;

    friend bool operator==(const TwistEntry&, const TwistEntry&) = default;
};

/// Direct sum of O(d) and ΠO(d) summands with multiplicities, kept in
/// canonical (twist, parity) order with merged duplicates.
class TwistList {
public:
    TwistList() = default;
    explicit TwistList(std::vector<TwistEntry> entries);

    void add(int twist, Parity parity, int multiplicity = 1);

    [[nodiscard]] const std::vector<TwistEntry>& entries() const { return entries_; }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] int rank() const;
    /// Every twist repeated by multiplicity, ascending.
    [[nodiscard]] std::vector<int> twists() const;

    friend bool operator==(const TwistList&, const TwistList&) = default;

private:
    std::vector<TwistEntry> entries_;
};

Integer binomial(long n, long k);

/// dim H^q(CP^n, O(d)).
Integer bott_dim(int n, int d, int q);

/// gr O_p = O(-p)^{C(m,p)}, parity p mod 2; empty when p > m.
TwistList structure_sheaf_component(const SuperSpace& space, int p);

enum class Chart { u0, u1, u01 };
std::string to_string(Chart c);

/// Inclusive range of Laurent exponents kept in a truncated cochain space.
struct Window {
    int lo = 0;
    int hi = 0;

    friend bool operator==(const Window&, const Window&) = default;
};

/// Two-chart cover of CP^1 with coordinate z on U0 and 1/z on U1.
///
/// Every section is written in the U0 frame. A summand O(t) has U1 frame
/// e^{(1)} = z^t e^{(0)}, so the U1-regular sections are z^k with k <= t.
/// Odd generator zeta_a is a section of O(zeta_twists[a-1]); on CP^{1|m} every
/// entry is -1, i.e. zeta^{(1)} = z^{-1} zeta^{(0)}.
class ChartModel {
public:
    /// CP^{1|m}.
    static ChartModel projective(int m);
    /// The split supermanifold (CP^1, ∧G) with G = ⊕ O(g_a).
    static ChartModel split_curve(std::vector<int> zeta_twists);

    [[nodiscard]] int m() const { return static_cast<int>(zeta_twists_.size()); }
    [[nodiscard]] const std::vector<int>& zeta_twists() const { return zeta_twists_; }

    /// Twist of the line bundle spanned by zeta_I.
    [[nodiscard]] int monomial_twist(ExteriorMonomial zeta) const;
    /// Twist of the line spanned by zeta_I e where e frames O(summand_twist).
    [[nodiscard]] int effective_twist(int summand_twist, ExteriorMonomial zeta) const {
        return summand_twist + monomial_twist(zeta);
    }

    /// Laurent exponents of the section basis of O(twist) over a chart, clipped to the window.
    [[nodiscard]] static std::vector<int> chart_sections(Chart chart, int twist, Window window);

    friend bool operator==(const ChartModel&, const ChartModel&) = default;

private:
    std::vector<int> zeta_twists_;
};

}  // namespace supersheaf
