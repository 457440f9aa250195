// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "supersheaf/classify.hpp"
#include "supersheaf/spectral.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace supersheaf;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Tally {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failures_.size() < 3) failures_.push_back(what);
        if (!ok) ++failed_;
    }
    [[nodiscard]] Outcome outcome() const {
        std::ostringstream s;
        s << (checks_ - failed_) << "/" << checks_ << " checks";
        for (const auto& f : failures_) s << "; failed: " << f;
        return {failed_ == 0 && checks_ > 0, s.str()};
    }

private:
    int checks_ = 0;
    int failed_ = 0;
    std::vector<std::string> failures_;
};

SheafDescriptor desc(int n, int m, std::vector<int> even, std::vector<int> odd) {
    return SheafDescriptor(SuperSpace(n, m), std::move(even), std::move(odd));
}

SheafDescriptor random_descriptor(std::mt19937_64& rng, int n, int m) {
    std::uniform_int_distribution<int> tw(-3, 3), cnt(0, 2);
    std::vector<int> ev(static_cast<std::size_t>(cnt(rng))), od(static_cast<std::size_t>(cnt(rng)));
    for (int& t : ev) t = tw(rng);
    for (int& t : od) t = tw(rng);
    if (ev.empty() && od.empty()) ev.push_back(tw(rng));
    return desc(n, m, ev, od);
}

std::string show(const SheafDescriptor& d) {
    std::ostringstream s;
    s << "CP^{" << d.space().n << "|" << d.space().m << "} even=[";
    for (int t : d.even_twists()) s << t << " ";
    s << "] odd=[";
    for (int t : d.odd_twists()) s << t << " ";
    s << "]";
    return s.str();
}

GluingCocycle single(const SplitSheaf& s, std::size_t i, std::size_t j, int z, std::vector<int> zetas) {
    EndoMatrix m(s.rank());
    m.at(i, j) = GradedCoefficient::term(1, z, ExteriorMonomial::from_indices(zetas));
    return exp(EndomorphismCochain(s, std::move(m)));
}

std::array<ParityDims, 2> e_infinity_totals(const ConvergenceReport& rep) {
    std::array<ParityDims, 2> out{};
    for (const auto& [pq, dims] : rep.e_infinity) {
        const int k = pq.first + pq.second;
        if (k < 0 || k > 1) continue;
        out[static_cast<std::size_t>(k)].even += dims.even;
        out[static_cast<std::size_t>(k)].odd += dims.odd;
    }
    return out;
}

// Page-level laws for one complex: bidegree support (differential() throws
// when d_r of a representative leaves F_{p+r}), oddness, page homology.
void page_laws(const FilteredComplex& fc, Tally& t, const std::string& name) {
    SpectralPage cur = page(fc, 0);
    for (int r = 0; r < fc.max_filtration + 3; ++r) {
        PageDifferential d;
        try {
            d = differential(fc, cur);
        } catch (const std::logic_error& e) {
            t.expect(false, name + ": " + e.what());
            return;
        }
        for (const auto& [src, block] : d.blocks)
            t.expect(cur.cells.count({src.first + r, src.second - r + 1}) == 1 && src.first + src.second == 0,
                     name + ": d_" + std::to_string(r) + " off its bidegree");
        t.expect(differential_is_odd(cur, d), name + ": d_" + std::to_string(r) + " not odd");
        SpectralPage next = page(fc, r + 1);
        const auto h = page_homology(cur, d);
        bool same = h.size() == next.cells.size();
        for (const auto& [pq, cell] : next.cells) same = same && h.at(pq) == cell.dims;
        t.expect(same, name + ": E_" + std::to_string(r + 1) + " != H(E_" + std::to_string(r) + ")");
        cur = std::move(next);
    }
}

void cech_laws(const CechComplex& cx, Tally& t, const std::string& name) {
    bool filt = true, odd = true;
    const Matrix& d = cx.differential();
    for (std::size_t j = 0; j < d.cols(); ++j)
        for (const auto& [i, q] : d.column(j)) {
            filt = filt && cx.basis(1)[i].filtration() >= cx.basis(0)[j].filtration();
            // Čech degree rises by one, sheaf parity is kept: total parity flips.
            odd = odd && cx.basis(1)[i].parity == cx.basis(0)[j].parity;
        }
    t.expect(filt, name + ": d lowers the filtration");
    t.expect(odd, name + ": d is not odd");
}

Outcome bott_equivalence(std::mt19937_64&) {
    Tally t;
    for (int d = -6; d <= 6; ++d) {
        const auto h = cohomology(build_split_complex(desc(1, 0, {d}, {})));
        for (int q = 0; q <= 1; ++q)
            t.expect(h.h[q].total() == bott_dim(1, d, q), "d=" + std::to_string(d) + " q=" + std::to_string(q));
    }
    return t.outcome();
}

Outcome flagship_obstruction(std::mt19937_64&) {
    Tally t;
    const auto dims = obstruction_dims(desc(1, 1, {0}, {-1}));
    t.expect(dims.size() == 1 && dims[0].first == 1 && dims[0].second == 1, "dim H^1(End_1) != 1");
    t.expect(ladder(desc(1, 1, {0}, {-1})).verdict() == "non-rigid", "verdict");
    return t.outcome();
}

Outcome higher_dimensional_vanishing(std::mt19937_64& rng) {
    Tally t;
    for (int n = 2; n <= 3; ++n)
        for (int m = 1; m <= 2; ++m)
            for (int trial = 0; trial < 20; ++trial) {
                const auto d = random_descriptor(rng, n, m);
                bool zero = true;
                for (const auto& [p, h1] : obstruction_dims(d)) zero = zero && h1 == 0;
                t.expect(zero && ladder(d).rigid_split, show(d));
            }
    return t.outcome();
}

Outcome line_bundles(std::mt19937_64&) {
    Tally t;
    for (int tw = -3; tw <= 3; ++tw)
        for (const auto& d : {desc(1, 1, {tw}, {}), desc(1, 1, {}, {tw})}) {
            const auto l = ladder(d);
            bool zero = true;
            for (const auto& r : l.rungs) zero = zero && r.h0 == 0 && r.h1 == 0;
            t.expect(zero && l.verdict() == "rigid-split", show(d));
        }
    return t.outcome();
}

Outcome flagship_cohomology(std::mt19937_64&) {
    Tally t;
    const auto s = SplitSheaf::from_descriptor(desc(1, 1, {0}, {-1}));
    const auto split = cohomology(build_split_complex(s)).h;
    const auto tw = twisted_complex(s, single(s, 1, 0, -1, {1}));
    const auto direct = cohomology(tw).h;
    const auto spectral = e_infinity_totals(converge(FilteredComplex::from_cech(tw)));
    t.expect(direct == spectral, "twisted H != E_inf totals");
    t.expect(split[0] == ParityDims{1, 0} && split[1] == ParityDims{1, 0}, "split dims");
    t.expect(direct != split, "twisted equals split");
    if (direct == spectral)
        t.expect(direct[0] == ParityDims{0, 0} && direct[1] == ParityDims{0, 0}, "twisted dims");
    return t.outcome();
}

Outcome symbol_pages(std::mt19937_64&) {
    Tally t;
    const auto s1 = SplitSheaf::from_descriptor(desc(1, 1, {0}, {-1}));
    const auto r1 = symbol_page_check(s1, single(s1, 1, 0, -1, {1}));
    t.expect(r1.k == 1 && r1.first_nonzero_page == 1 && r1.dk_rank > 0, "order-1: d_1 == 0");
    t.expect(r1.symbol_match, "order-1: symbol mismatch");

    const auto d2 = desc(1, 2, {0}, {0});
    const auto dims = obstruction_dims(d2);
    t.expect(dims.size() == 2 && dims[1].second != 0, "H^1(End_2) == 0");
    const auto s2 = SplitSheaf::from_descriptor(d2);
    const auto r2 = symbol_page_check(s2, single(s2, 0, 0, -1, {1, 2}));
    t.expect(r2.k == 2 && r2.lower_pages_vanish && r2.first_nonzero_page == 2 && r2.dk_rank > 0,
             "order-2: page pattern");
    t.expect(r2.symbol_match, "order-2: symbol mismatch");
    return t.outcome();
}

std::vector<std::pair<SplitSheaf, GluingCocycle>> random_cocycles(std::mt19937_64& rng, int count) {
    std::vector<std::pair<SplitSheaf, GluingCocycle>> out;
    for (int i = 0; i < count; ++i) {
        const auto s = SplitSheaf::from_descriptor(random_descriptor(rng, 1, 1 + i % 3));
        out.emplace_back(s, exp(random_cochain(s, rng)));
    }
    return out;
}

Outcome convergence_identity(std::mt19937_64& rng) {
    Tally t;
    int i = 0;
    for (const auto& [s, a] : random_cocycles(rng, 20)) {
        const auto cx = twisted_complex(s, a);
        const auto rep = converge(FilteredComplex::from_cech(cx));
        t.expect(e_infinity_totals(rep) == cohomology(cx).h && rep.totals_ok, "cocycle " + std::to_string(i++));
    }
    return t.outcome();
}

Outcome e1_identification(std::mt19937_64& rng) {
    Tally t;
    auto cases = random_cocycles(rng, 20);
    const auto s1 = SplitSheaf::from_descriptor(desc(1, 1, {0}, {-1}));
    cases.emplace_back(s1, single(s1, 1, 0, -1, {1}));
    const auto s2 = SplitSheaf::from_descriptor(desc(1, 2, {0}, {0}));
    cases.emplace_back(s2, single(s2, 0, 0, -1, {1, 2}));
    int i = 0;
    for (const auto& [s, a] : cases) {
        const auto split = cohomology(build_split_complex(s)).bigraded;
        const auto e1 = page(FilteredComplex::from_cech(twisted_complex(s, a)), 1);
        bool same = true;
        for (const auto& [pq, dim] : split) same = same && e1.dims(pq).total() == dim;
        t.expect(same, "complex " + std::to_string(i++));
    }
    return t.outcome();
}

Outcome connection_sweep(std::mt19937_64&) {
    Tally t;
    for (int g = -2; g <= 2; ++g) {
        const auto rep = connection_equivalence_check({g});
        t.expect(rep.all_equal(), "g=" + std::to_string(g) + " booleans disagree");
        t.expect(rep.connection_exists == (g == 0), "g=" + std::to_string(g) + " wrong truth value");
    }
    return t.outcome();
}

Outcome constructive_reduction(std::mt19937_64& rng) {
    Tally t;
    const auto s = SplitSheaf::from_descriptor(desc(1, 1, {0}, {0}));
    for (int i = 0; i < 50; ++i) {
        const auto a = exp(random_cochain(s, rng));
        const auto cert = reduce_cocycle(s, a);
        t.expect(cert.split() && cert.verified, "cocycle " + std::to_string(i));
    }
    return t.outcome();
}

GradedCoefficient random_homogeneous(std::mt19937_64& rng, int m, Parity parity) {
    std::uniform_int_distribution<int> val(-3, 3), ex(-3, 3), count(1, 4);
    const auto monos = all_monomials(m);
    GradedCoefficient out;
    for (int k = count(rng); k > 0; --k) {
        const auto zeta = monos[std::uniform_int_distribution<std::size_t>(0, monos.size() - 1)(rng)];
        if (zeta.parity() == parity) out.add_term(val(rng), ex(rng), zeta);
    }
    return out;
}

Outcome property_suites(std::mt19937_64& rng) {
    Tally t;
    for (int m = 1; m <= 3; ++m)
        for (int i = 0; i < 30; ++i) {
            const auto s = SplitSheaf::from_descriptor(random_descriptor(rng, 1, m));
            const auto a = random_cochain(s, rng);
            const auto c = exp(a);
            t.expect(log(c) == a.matrix() && exp(EndomorphismCochain(s, log(c))) == c, "exp/log m=" + std::to_string(m));
        }
    for (int i = 0; i < 100; ++i) {
        const int m = 1 + i % 4;
        const Parity pa = parity_of(i), pb = parity_of(i / 2);
        const auto a = random_homogeneous(rng, m, pa), b = random_homogeneous(rng, m, pb),
                   c = random_homogeneous(rng, m, parity_of(i / 3));
        const Rational sign = pa == Parity::odd && pb == Parity::odd ? -1 : 1;
        t.expect(a * b == sign * (b * a), "super-commutativity");
        t.expect((a * b) * c == a * (b * c), "associativity");
    }
    // Test grid: single summands for m <= 3 and twists in [-4, 4], random
    // descriptors, plus random and example cocycles.
    std::vector<std::pair<SplitSheaf, GluingCocycle>> grid;
    for (int m = 0; m <= 3; ++m)
        for (int tw = -4; tw <= 4; ++tw)
            for (const auto& d : {desc(1, m, {tw}, {}), desc(1, m, {}, {tw})}) {
                const auto s = SplitSheaf::from_descriptor(d);
                grid.emplace_back(s, GluingCocycle{EndoMatrix::identity(s.rank())});
            }
    for (auto& c : random_cocycles(rng, 20)) grid.push_back(std::move(c));
    const auto s1 = SplitSheaf::from_descriptor(desc(1, 1, {0}, {-1}));
    grid.emplace_back(s1, single(s1, 1, 0, -1, {1}));
    const auto s2 = SplitSheaf::from_descriptor(desc(1, 2, {0}, {0}));
    grid.emplace_back(s2, single(s2, 0, 0, -1, {1, 2}));
    int i = 0;
    for (const auto& [s, a] : grid) {
        const std::string name = "grid " + std::to_string(i++);
        const auto cx = twisted_complex(s, a);
        cech_laws(cx, t, name);
        page_laws(FilteredComplex::from_cech(cx), t, name);
        t.expect(window_stability_check(s, auto_window(s), 2, &a.a), name + ": window not stable");
    }
    return t.outcome();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance suite"};
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "seed for the randomized criteria");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome(std::mt19937_64&)>>> criteria{
        {"Bott oracle equivalence", bott_equivalence},
        {"obstruction of the non-split rank 1|1 example", flagship_obstruction},
        {"vanishing of obstructions for n >= 2", higher_dimensional_vanishing},
        {"line bundles on CP^{1|1} are rigid", line_bundles},
        {"flagship non-split sheaf", flagship_cohomology},
        {"first nonzero differential is the symbol", symbol_pages},
        {"convergence identity", convergence_identity},
        {"page 1 equals cohomology of gr E", e1_identification},
        {"connection sweep", connection_sweep},
        {"constructive reduction", constructive_reduction},
        {"structural property suites", property_suites},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::mt19937_64 rng(seed + i);
        Outcome o;
        try {
            o = criteria[i].second(rng);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " (" << o.detail
                  << ")\n";
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed in "
              << ms.count() << " ms\n";
    return failed == 0 ? 0 : 1;
}
