#pragma once

// Coefficients of cochains on one affine chart of CP^{1|m}: Laurent
// polynomials in the chart coordinate z tensored with the exterior algebra on
// the odd coordinates zeta_1..zeta_m.

#include "supersheaf/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace supersheaf {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
constexpr Parity parity_of(long degree) { return (degree % 2 == 0) ? Parity::even : Parity::odd; }
std::string to_string(Parity p);

/// Product zeta_{i1} ... zeta_{ik} with i1 < ... < ik, stored as a bit set
/// (bit a-1 set iff zeta_a occurs).
class ExteriorMonomial {
public:
    static constexpr int max_generators = 30;

    constexpr ExteriorMonomial() = default;
    /// Throws std::invalid_argument unless indices are strictly increasing in 1..max_generators.
    static ExteriorMonomial from_indices(const std::vector<int>& indices);
    static constexpr ExteriorMonomial from_mask(std::uint32_t mask) {
        ExteriorMonomial e;
        e.mask_ = mask;
        return e;
    }

    [[nodiscard]] constexpr std::uint32_t mask() const { return mask_; }
    [[nodiscard]] int degree() const;
    [[nodiscard]] Parity parity() const { return parity_of(degree()); }
    [[nodiscard]] std::vector<int> indices() const;
    [[nodiscard]] bool contains(int index) const { return (mask_ >> (index - 1)) & 1U; }

    /// Koszul sign of this ^ other (0 if they share a generator).
    [[nodiscard]] int wedge_sign(ExteriorMonomial other) const;
    [[nodiscard]] ExteriorMonomial operator|(ExteriorMonomial other) const { return from_mask(mask_ | other.mask_); }

    /// Orders by degree, then lexicographically by index list.
    friend std::strong_ordering operator<=>(ExteriorMonomial a, ExteriorMonomial b);
    friend bool operator==(ExteriorMonomial a, ExteriorMonomial b) = default;

private:
    std::uint32_t mask_ = 0;
};

/// Every monomial in zeta_1..zeta_m of the given degree, in canonical order.
std::vector<ExteriorMonomial> monomials_of_degree(int m, int degree);
/// All 2^m monomials, sorted by (degree, indices).
std::vector<ExteriorMonomial> all_monomials(int m);

struct TermKey {
    ExteriorMonomial zeta;
    int z_exp = 0;

    friend std::strong_ordering operator<=>(const TermKey& a, const TermKey& b) {
        if (auto c = a.zeta <=> b.zeta; c != 0) return c;
        return a.z_exp <=> b.z_exp;
    }
    friend bool operator==(const TermKey&, const TermKey&) = default;
};

/// Sum of q * z^k * zeta_I with exact rational q. Stored coefficients are never zero.
class GradedCoefficient {
public:
    using Terms = std::map<TermKey, Rational>;

    GradedCoefficient() = default;
    GradedCoefficient(const Rational& constant);  // NOLINT: constants convert implicitly
    static GradedCoefficient term(const Rational& coeff, int z_exp, ExteriorMonomial zeta = {});
    static GradedCoefficient zeta(int index);

    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] Rational coefficient(int z_exp, ExteriorMonomial zeta) const;

    void add_term(const Rational& coeff, int z_exp, ExteriorMonomial zeta);

    GradedCoefficient& operator+=(const GradedCoefficient& other);
    GradedCoefficient& operator-=(const GradedCoefficient& other);
    GradedCoefficient& operator*=(const Rational& scalar);

    friend GradedCoefficient operator+(GradedCoefficient a, const GradedCoefficient& b) { return a += b; }
    friend GradedCoefficient operator-(GradedCoefficient a, const GradedCoefficient& b) { return a -= b; }
    friend GradedCoefficient operator-(GradedCoefficient a) { return a *= Rational(-1); }
    friend GradedCoefficient operator*(const Rational& s, GradedCoefficient a) { return a *= s; }
    /// Super-commutative product: exponents add, monomials wedge with Koszul sign.
    friend GradedCoefficient operator*(const GradedCoefficient& a, const GradedCoefficient& b);
    friend bool operator==(const GradedCoefficient&, const GradedCoefficient&) = default;

    /// Sum of the terms of exterior degree exactly p.
    [[nodiscard]] GradedCoefficient degree_component(int p) const;
    /// Least exterior degree present, nullopt for zero.
    [[nodiscard]] std::optional<int> min_degree() const;
    [[nodiscard]] std::optional<int> max_degree() const;
    /// Parity when every term has the same parity; nullopt for mixed (zero counts as even).
    [[nodiscard]] std::optional<Parity> parity() const;
    /// Common torus weight k + zeta_twist * |I|, nullopt when terms disagree (zero has weight 0).
    [[nodiscard]] std::optional<int> weight(int zeta_twist) const;

    /// Terms as "q z^k ζ1ζ2", joined by " + "; "0" for zero.
    [[nodiscard]] std::string to_string() const;

private:
    Terms terms_;
};

}  // namespace supersheaf
