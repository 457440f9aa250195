#include "supersheaf/graded_coeff.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace supersheaf {

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

ExteriorMonomial ExteriorMonomial::from_indices(const std::vector<int>& indices) {
    std::uint32_t mask = 0;
    int previous = 0;
    for (int i : indices) {
        if (i <= previous || i > max_generators)
            throw std::invalid_argument("exterior monomial indices must be strictly increasing in 1.." +
                                        std::to_string(max_generators));
        mask |= 1U << (i - 1);
        previous = i;
    }
    return from_mask(mask);
}

int ExteriorMonomial::degree() const { return std::popcount(mask_); }

std::vector<int> ExteriorMonomial::indices() const {
    std::vector<int> out;
    for (int i = 0; i < max_generators; ++i)
        if ((mask_ >> i) & 1U) out.push_back(i + 1);
    return out;
}

int ExteriorMonomial::wedge_sign(ExteriorMonomial other) const {
    if (mask_ & other.mask_) return 0;
    // Each generator of `other` must pass every larger generator of `this`.
    int transpositions = 0;
    for (int j : other.indices()) {
        const std::uint32_t larger = mask_ & ~((1U << j) - 1U);
        transpositions += std::popcount(larger);
    }
    return (transpositions % 2 == 0) ? 1 : -1;
}

std::strong_ordering operator<=>(ExteriorMonomial a, ExteriorMonomial b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    const auto ia = a.indices();
    const auto ib = b.indices();
    return std::lexicographical_compare_three_way(ia.begin(), ia.end(), ib.begin(), ib.end());
}

std::vector<ExteriorMonomial> all_monomials(int m) {
    if (m < 0 || m > ExteriorMonomial::max_generators) throw std::invalid_argument("odd dimension out of range");
    std::vector<ExteriorMonomial> out;
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) out.push_back(ExteriorMonomial::from_mask(mask));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ExteriorMonomial> monomials_of_degree(int m, int degree) {
    std::vector<ExteriorMonomial> out;
    for (auto e : all_monomials(m))
        if (e.degree() == degree) out.push_back(e);
    return out;
}

// -------------------------------------------------------- GradedCoefficient

GradedCoefficient::GradedCoefficient(const Rational& constant) {
    if (!supersheaf::is_zero(constant)) terms_.emplace(TermKey{}, constant);
}

GradedCoefficient GradedCoefficient::term(const Rational& coeff, int z_exp, ExteriorMonomial zeta) {
    GradedCoefficient g;
    g.add_term(coeff, z_exp, zeta);
    return g;
}

GradedCoefficient GradedCoefficient::zeta(int index) {
    return term(Rational(1), 0, ExteriorMonomial::from_indices({index}));
}

Rational GradedCoefficient::coefficient(int z_exp, ExteriorMonomial zeta) const {
    auto it = terms_.find(TermKey{zeta, z_exp});
    return it == terms_.end() ? Rational(0) : it->second;
}

void GradedCoefficient::add_term(const Rational& coeff, int z_exp, ExteriorMonomial zeta) {
    if (supersheaf::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(TermKey{zeta, z_exp}, coeff);
    if (!inserted) {
        it->second += coeff;
        if (supersheaf::is_zero(it->second)) terms_.erase(it);
    }
}

GradedCoefficient& GradedCoefficient::operator+=(const GradedCoefficient& other) {
    for (const auto& [key, c] : other.terms_) add_term(c, key.z_exp, key.zeta);
    return *this;
}

GradedCoefficient& GradedCoefficient::operator-=(const GradedCoefficient& other) {
    for (const auto& [key, c] : other.terms_) add_term(-c, key.z_exp, key.zeta);
    return *this;
}

GradedCoefficient& GradedCoefficient::operator*=(const Rational& scalar) {
    if (supersheaf::is_zero(scalar)) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, c] : terms_) c *= scalar;
    return *this;
}

GradedCoefficient operator*(const GradedCoefficient& a, const GradedCoefficient& b) {
    GradedCoefficient out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            const int sign = ka.zeta.wedge_sign(kb.zeta);
            if (sign == 0) continue;
            Rational c = ca * cb;
            if (sign < 0) c = -c;
            out.add_term(c, ka.z_exp + kb.z_exp, ka.zeta | kb.zeta);
        }
    return out;
}

GradedCoefficient GradedCoefficient::degree_component(int p) const {
    GradedCoefficient out;
    for (const auto& [key, c] : terms_)
        if (key.zeta.degree() == p) out.terms_.emplace(key, c);
    return out;
}

std::optional<int> GradedCoefficient::min_degree() const {
    if (terms_.empty()) return std::nullopt;
    // Map order is by monomial degree first.
    return terms_.begin()->first.zeta.degree();
}

std::optional<int> GradedCoefficient::max_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.zeta.degree();
}

std::optional<Parity> GradedCoefficient::parity() const {
    if (terms_.empty()) return Parity::even;
    const Parity first = terms_.begin()->first.zeta.parity();
    for (const auto& [key, c] : terms_)
        if (key.zeta.parity() != first) return std::nullopt;
    return first;
}

std::optional<int> GradedCoefficient::weight(int zeta_twist) const {
    std::optional<int> w;
    for (const auto& [key, c] : terms_) {
        const int wt = key.z_exp + zeta_twist * key.zeta.degree();
        if (w && *w != wt) return std::nullopt;
        w = wt;
    }
    return w.value_or(0);
}

std::string GradedCoefficient::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += supersheaf::to_string(c);
        if (key.z_exp != 0) out += " z^" + std::to_string(key.z_exp);
        if (key.zeta.degree() > 0) {
            out += ' ';
            for (int i : key.zeta.indices()) out += "ζ" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace supersheaf
