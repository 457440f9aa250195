#include "supersheaf/endomorphism.hpp"

#include <algorithm>
#include <stdexcept>

namespace supersheaf {

EndoMatrix EndoMatrix::identity(std::size_t size) {
    EndoMatrix e(size);
    for (std::size_t i = 0; i < size; ++i) e.at(i, i) = GradedCoefficient(Rational(1));
    return e;
}

bool EndoMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& c) { return c.is_zero(); });
}

std::optional<int> EndoMatrix::min_degree() const {
    std::optional<int> best;
    for (const auto& c : entries_)
        if (auto d = c.min_degree(); d && (!best || *d < *best)) best = d;
    return best;
}

EndoMatrix EndoMatrix::degree_component(int p) const {
    EndoMatrix out(size_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].degree_component(p);
    return out;
}

std::optional<std::pair<int, int>> EndoMatrix::laurent_span() const {
    std::optional<std::pair<int, int>> span;
    for (const auto& c : entries_)
        for (const auto& [key, v] : c.terms()) {
            if (!span) span = std::pair{key.z_exp, key.z_exp};
            span->first = std::min(span->first, key.z_exp);
            span->second = std::max(span->second, key.z_exp);
        }
    return span;
}

std::vector<GradedCoefficient> EndoMatrix::apply(const std::vector<GradedCoefficient>& coeffs) const {
    if (coeffs.size() != size_) throw std::invalid_argument("section rank does not match endomorphism size");
    std::vector<GradedCoefficient> out(size_);
    for (std::size_t j = 0; j < size_; ++j) {
        if (coeffs[j].is_zero()) continue;
        for (std::size_t i = 0; i < size_; ++i)
            if (!at(i, j).is_zero()) out[i] += coeffs[j] * at(i, j);
    }
    return out;
}

EndoMatrix& EndoMatrix::operator+=(const EndoMatrix& other) {
    if (other.size_ != size_) throw std::invalid_argument("endomorphism size mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

EndoMatrix& EndoMatrix::operator-=(const EndoMatrix& other) {
    if (other.size_ != size_) throw std::invalid_argument("endomorphism size mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

EndoMatrix& EndoMatrix::operator*=(const Rational& scalar) {
    for (auto& c : entries_) c *= scalar;
    return *this;
}

EndoMatrix compose(const EndoMatrix& a, const EndoMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("endomorphism size mismatch");
    const std::size_t n = a.size();
    EndoMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!b.at(k, j).is_zero() && !a.at(i, k).is_zero()) out.at(i, j) += b.at(k, j) * a.at(i, k);
    return out;
}

EndoMatrix exp_nilpotent(const EndoMatrix& a) {
    if (auto d = a.min_degree(); d && *d < 1)
        throw std::invalid_argument("exp needs an endomorphism raising exterior degree");
    EndoMatrix sum = EndoMatrix::identity(a.size());
    EndoMatrix term = EndoMatrix::identity(a.size());  // a^n / n!
    for (long n = 1;; ++n) {
        term = compose(term, a);
        if (term.is_zero()) break;
        term *= make_rational(1, n);
        sum += term;
    }
    return sum;
}

std::optional<EndoMatrix> log_unipotent(const EndoMatrix& a) {
    const EndoMatrix id = EndoMatrix::identity(a.size());
    if (!(a.degree_component(0) == id)) return std::nullopt;
    const EndoMatrix nil = a - id;
    EndoMatrix sum(a.size());
    EndoMatrix power = id;
    for (long n = 1;; ++n) {
        power = compose(power, nil);
        if (power.is_zero()) break;
        EndoMatrix term = power;
        term *= make_rational(n % 2 == 1 ? 1 : -1, n);
        sum += term;
    }
    return sum;
}

}  // namespace supersheaf
