#include "supersheaf/supergeometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace supersheaf {

SuperSpace::SuperSpace(int n_, int m_) : n(n_), m(m_) {
    if (n < 1) throw std::invalid_argument("CP^{n|m} needs n >= 1");
    if (m < 0 || m > ExteriorMonomial::max_generators) throw std::invalid_argument("CP^{n|m} needs 0 <= m <= 30");
}

TwistList::TwistList(std::vector<TwistEntry> entries) {
    for (const auto& e : entries) add(e.twist, e.parity, e.multiplicity);
}

void TwistList::add(int twist, Parity parity, int multiplicity) {
    if (multiplicity < 0) throw std::invalid_argument("negative multiplicity");
    if (multiplicity == 0) return;
    auto key = [](const TwistEntry& e) { return std::tuple(e.twist, static_cast<int>(e.parity)); };
    TwistEntry entry{twist, parity, multiplicity};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), entry,
                               [&](const TwistEntry& a, const TwistEntry& b) { return key(a) < key(b); });
    if (it != entries_.end() && key(*it) == key(entry))
        it->multiplicity += multiplicity;
    else
        entries_.insert(it, entry);
}

int TwistList::rank() const {
    int r = 0;
    for (const auto& e : entries_) r += e.multiplicity;
    return r;
}

std::vector<int> TwistList::twists() const {
    std::vector<int> out;
    for (const auto& e : entries_) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.twist);
    std::sort(out.begin(), out.end());
    return out;
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer bott_dim(int n, int d, int q) {
    if (n < 1) throw std::invalid_argument("bott_dim needs n >= 1");
    if (q < 0) throw std::invalid_argument("bott_dim needs q >= 0");
    if (q == 0 && d >= 0) return binomial(n + d, n);
    if (q == n && d <= -n - 1) return binomial(-d - 1, n);
    return 0;
}

TwistList structure_sheaf_component(const SuperSpace& space, int p) {
    TwistList out;
    if (p < 0 || p > space.m) return out;
    out.add(-p, parity_of(p), static_cast<int>(binomial(space.m, p).get_si()));
    return out;
}

std::string to_string(Chart c) {
    switch (c) {
        case Chart::u0: return "U0";
        case Chart::u1: return "U1";
        case Chart::u01: return "U01";
    }
    return "?";
}

ChartModel ChartModel::projective(int m) {
    if (m < 0 || m > ExteriorMonomial::max_generators) throw std::invalid_argument("odd dimension out of range");
    ChartModel c;
    c.zeta_twists_.assign(static_cast<std::size_t>(m), -1);
    return c;
}

ChartModel ChartModel::split_curve(std::vector<int> zeta_twists) {
    if (zeta_twists.size() > static_cast<std::size_t>(ExteriorMonomial::max_generators))
        throw std::invalid_argument("too many odd generators");
    ChartModel c;
    c.zeta_twists_ = std::move(zeta_twists);
    return c;
}

int ChartModel::monomial_twist(ExteriorMonomial zeta) const {
    int t = 0;
    for (int a : zeta.indices()) {
        if (a > m()) throw std::out_of_range("odd generator index exceeds m");
        t += zeta_twists_[static_cast<std::size_t>(a - 1)];
    }
    return t;
}

std::vector<int> ChartModel::chart_sections(Chart chart, int twist, Window window) {
    if (window.lo > window.hi) throw std::invalid_argument("empty weight window");
    int lo = window.lo;
    int hi = window.hi;
    if (chart == Chart::u0) lo = std::max(lo, 0);
    if (chart == Chart::u1) hi = std::min(hi, twist);
    std::vector<int> out;
    for (int k = lo; k <= hi; ++k) out.push_back(k);
    return out;
}

}  // namespace supersheaf
