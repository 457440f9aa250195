#include "supersheaf/gluing.hpp"

#include <string>

namespace supersheaf {

EndomorphismCochain::EndomorphismCochain(const SplitSheaf& sheaf, EndoMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.size() != sheaf.rank()) throw std::invalid_argument("cocycle size does not match the sheaf rank");
    for (std::size_t i = 0; i < matrix_.size(); ++i)
        for (std::size_t j = 0; j < matrix_.size(); ++j) {
            const Parity want = sheaf.summands[i].parity + sheaf.summands[j].parity;
            for (const auto& [key, q] : matrix_.at(i, j).terms()) {
                const std::string where = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                if (key.zeta.degree() < 1) throw std::invalid_argument(where + " has a term of exterior degree 0");
                if ((key.zeta.mask() >> sheaf.m()) != 0U) throw std::invalid_argument(where + " uses an odd generator beyond m");
                if (key.zeta.parity() != want) throw std::invalid_argument(where + " has the wrong parity");
            }
        }
}

GluingCocycle exp(const EndomorphismCochain& cochain) { return GluingCocycle{exp_nilpotent(cochain.matrix())}; }

EndoMatrix log(const GluingCocycle& cocycle) {
    auto out = log_unipotent(cocycle.a);
    if (!out) throw NotUnipotent("degree-0 part of the gluing automorphism is not the identity");
    return *out;
}

int entry_twist(const SplitSheaf& sheaf, std::size_t row, std::size_t col, ExteriorMonomial zeta) {
    return sheaf.summands[row].twist - sheaf.summands[col].twist + sheaf.chart.monomial_twist(zeta);
}

bool is_u0_regular(const SplitSheaf&, const EndoMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            for (const auto& [key, q] : m.at(i, j).terms())
                if (key.z_exp < 0) return false;
    return true;
}

bool is_u1_regular(const SplitSheaf& sheaf, const EndoMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            for (const auto& [key, q] : m.at(i, j).terms())
                if (key.z_exp > entry_twist(sheaf, i, j, key.zeta)) return false;
    return true;
}

namespace {

struct Split3 {
    EndoMatrix u0;   // exponents >= 0
    EndoMatrix u1;   // exponent <= twist, negative
    EndoMatrix gap;  // twist < exponent < 0
};

Split3 split_regular(const SplitSheaf& sheaf, const EndoMatrix& m) {
    Split3 s{EndoMatrix(m.size()), EndoMatrix(m.size()), EndoMatrix(m.size())};
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            for (const auto& [key, q] : m.at(i, j).terms()) {
                const int tau = entry_twist(sheaf, i, j, key.zeta);
                auto& target = key.z_exp >= 0 ? s.u0 : (key.z_exp <= tau ? s.u1 : s.gap);
                target.at(i, j).add_term(q, key.z_exp, key.zeta);
            }
    return s;
}

}  // namespace

std::vector<GapTerm> h1_class(const SplitSheaf& sheaf, const EndoMatrix& cochain) {
    const EndoMatrix gap = split_regular(sheaf, cochain).gap;
    std::vector<GapTerm> out;
    for (std::size_t i = 0; i < gap.size(); ++i)
        for (std::size_t j = 0; j < gap.size(); ++j)
            for (const auto& [key, q] : gap.at(i, j).terms()) out.push_back({i, j, key.zeta, key.z_exp, q});
    return out;
}

SymbolClass mu_k(const SplitSheaf& sheaf, const GluingCocycle& a, int k) {
    SymbolClass s;
    s.k = k;
    s.cochain = log(a).degree_component(k);
    s.coordinates = h1_class(sheaf, s.cochain);
    return s;
}

SymbolClass lambda_p(const SplitSheaf& sheaf, const GluingCocycle& a, int p) {
    if (auto d = log(a).min_degree(); d && *d < p)
        throw NotInFiltration("log of the cocycle has a component of degree " + std::to_string(*d) + " < " +
                              std::to_string(p));
    return mu_k(sheaf, a, p);
}

OrderResult order(const SplitSheaf& sheaf, const GluingCocycle& a) {
    const std::size_t n = a.a.size();
    OrderResult res;
    res.phi0 = EndoMatrix::identity(n);
    res.phi1 = EndoMatrix::identity(n);
    GluingCocycle cur = a;
    for (;;) {
        const EndoMatrix big_a = log(cur);
        const auto k = big_a.min_degree();
        if (!k) break;
        const Split3 parts = split_regular(sheaf, big_a.degree_component(*k));
        if (!parts.gap.is_zero()) {
            res.k = *k;
            res.symbol = SymbolClass{*k, big_a.degree_component(*k), h1_class(sheaf, parts.gap)};
            break;
        }
        // A_k = B0 - B1 with B0 = u0 part, B1 = -(u1 part).
        const EndoMatrix b0 = parts.u0;
        const EndoMatrix b1 = Rational(-1) * parts.u1;
        cur.a = compose(compose(exp_nilpotent(Rational(-1) * b0), cur.a), exp_nilpotent(b1));
        res.phi0 = compose(res.phi0, exp_nilpotent(b0));
        res.phi1 = compose(res.phi1, exp_nilpotent(b1));
        ++res.absorptions;
    }
    res.representative = cur;
    return res;
}

CechComplex twisted_complex(const SplitSheaf& sheaf, const GluingCocycle& a, std::optional<Window> window) {
    return build_glued_complex(sheaf, a.a, window);
}

CechComplex twisted_complex(const SheafDescriptor& desc, const GluingCocycle& a, std::optional<Window> window) {
    return twisted_complex(SplitSheaf::from_descriptor(desc), a, window);
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational nonzero_rational(std::mt19937_64& rng, int bound) {
    int num = 0;
    while (num == 0) num = uniform(rng, -bound, bound);
    return make_rational(num, uniform(rng, 1, 2));
}

}  // namespace

EndomorphismCochain random_cochain(const SplitSheaf& sheaf, std::mt19937_64& rng, const RandomCocycleOptions& options) {
    const std::size_t n = sheaf.rank();
    EndoMatrix m(n);
    const auto monomials = all_monomials(sheaf.m());
    struct Slot {
        std::size_t i, j;
        ExteriorMonomial zeta;
    };
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (auto zeta : monomials)
                if (zeta.degree() >= 1 && zeta.parity() == sheaf.summands[i].parity + sheaf.summands[j].parity)
                    slots.push_back({i, j, zeta});
    if (!slots.empty()) {
        const int terms = uniform(rng, 1, options.max_terms);
        for (int t = 0; t < terms; ++t) {
            const Slot& s = slots[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(slots.size()) - 1))];
            const int tau = entry_twist(sheaf, s.i, s.j, s.zeta);
            const int lo = std::min(tau, 0) - options.exp_spread;
            const int e = uniform(rng, lo, options.exp_spread);
            m.at(s.i, s.j).add_term(nonzero_rational(rng, options.coeff_bound), e, s.zeta);
        }
    }
    return EndomorphismCochain(sheaf, std::move(m));
}

std::pair<EndoMatrix, EndoMatrix> random_global_automorphism(const SplitSheaf& sheaf, std::mt19937_64& rng) {
    const std::size_t n = sheaf.rank();
    // g = D (I + N): D diagonal constants, N supported on pairs with twist_i > twist_j
    // of equal parity, so N is nilpotent and every entry is a global section.
    EndoMatrix d(n), d_inv(n), nil(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational c = nonzero_rational(rng, 3);
        d.at(i, i) = GradedCoefficient(c);
        d_inv.at(i, i) = GradedCoefficient(Rational(1 / c));
        for (std::size_t j = 0; j < n; ++j) {
            const int gap = sheaf.summands[i].twist - sheaf.summands[j].twist;
            if (gap <= 0 || sheaf.summands[i].parity != sheaf.summands[j].parity) continue;
            if (uniform(rng, 0, 1) == 0) continue;
            nil.at(i, j).add_term(nonzero_rational(rng, 3), uniform(rng, 0, gap), {});
        }
    }
    const EndoMatrix id = EndoMatrix::identity(n);
    EndoMatrix u_inv = id;
    EndoMatrix power = id;
    for (std::size_t k = 1; k <= n; ++k) {
        power = compose(power, Rational(-1) * nil);
        if (power.is_zero()) break;
        u_inv += power;
    }
    return {compose(d, id + nil), compose(u_inv, d_inv)};
}

GluingCocycle conjugate(const GluingCocycle& a, const EndoMatrix& g, const EndoMatrix& g_inverse) {
    return GluingCocycle{compose(compose(g, a.a), g_inverse)};
}

}  // namespace supersheaf
