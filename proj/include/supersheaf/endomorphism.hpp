#pragma once

// Even O-linear endomorphisms of a free module ⊕ O e_j over one chart,
// written as square matrices with GradedCoefficient entries.

#include "supersheaf/graded_coeff.hpp"

#include <optional>
#include <vector>

namespace supersheaf {

/// Entry (i, j) is the coefficient of e_i in A(e_j). Coefficients sit to the
/// left of frame vectors: A(sum_j f_j e_j) = sum_{i,j} f_j A_ij e_i. Hence
/// composition reads (A∘B)_ij = sum_k B_kj · A_ik in the superalgebra.
class EndoMatrix {
public:
    EndoMatrix() = default;
    explicit EndoMatrix(std::size_t size) : size_(size), entries_(size * size) {}

    static EndoMatrix identity(std::size_t size);

    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] const GradedCoefficient& at(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
    GradedCoefficient& at(std::size_t i, std::size_t j) { return entries_[i * size_ + j]; }

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_identity() const { return *this == identity(size_); }
    [[nodiscard]] std::optional<int> min_degree() const;
    [[nodiscard]] EndoMatrix degree_component(int p) const;
    /// Least and greatest Laurent exponent over all entries; nullopt for zero.
    [[nodiscard]] std::optional<std::pair<int, int>> laurent_span() const;

    /// A applied to the section sum_j coeffs[j] e_j.
    [[nodiscard]] std::vector<GradedCoefficient> apply(const std::vector<GradedCoefficient>& coeffs) const;

    EndoMatrix& operator+=(const EndoMatrix& other);
    EndoMatrix& operator-=(const EndoMatrix& other);
    EndoMatrix& operator*=(const Rational& scalar);
    friend EndoMatrix operator+(EndoMatrix a, const EndoMatrix& b) { return a += b; }
    friend EndoMatrix operator-(EndoMatrix a, const EndoMatrix& b) { return a -= b; }
    friend EndoMatrix operator*(const Rational& s, EndoMatrix a) { return a *= s; }
    friend bool operator==(const EndoMatrix&, const EndoMatrix&) = default;

private:
    std::size_t size_ = 0;
    std::vector<GradedCoefficient> entries_;
};

/// A ∘ B.
EndoMatrix compose(const EndoMatrix& a, const EndoMatrix& b);

/// exp of a nilpotent endomorphism (min degree >= 1); the series stops once
/// powers vanish. Throws std::invalid_argument if A has a degree-0 part.
EndoMatrix exp_nilpotent(const EndoMatrix& a);
/// log of a unipotent endomorphism (degree-0 part = identity). Returns nullopt
/// when the degree-0 part is not the identity.
std::optional<EndoMatrix> log_unipotent(const EndoMatrix& a);

}  // namespace supersheaf
