#include "supersheaf/gluing.hpp"
#include "supersheaf/spectral.hpp"

#include <doctest.h>

#include <random>

using namespace supersheaf;

namespace {

SplitSheaf sheaf(int m, std::vector<int> even, std::vector<int> odd) {
    return SplitSheaf::from_descriptor(SheafDescriptor(SuperSpace(1, m), std::move(even), std::move(odd)));
}

SplitSheaf random_sheaf(std::mt19937_64& rng, int m) {
    std::uniform_int_distribution<int> tw(-3, 3), cnt(0, 2);
    std::vector<int> ev(static_cast<std::size_t>(cnt(rng))), od(static_cast<std::size_t>(cnt(rng)));
    for (int& t : ev) t = tw(rng);
    for (int& t : od) t = tw(rng);
    if (ev.empty() && od.empty()) od.push_back(tw(rng));
    return sheaf(m, ev, od);
}

GluingCocycle single(const SplitSheaf& s, std::size_t i, std::size_t j, int z, std::vector<int> zetas) {
    EndoMatrix m(s.rank());
    m.at(i, j) = GradedCoefficient::term(1, z, ExteriorMonomial::from_indices(zetas));
    return exp(EndomorphismCochain(s, std::move(m)));
}

// Page-homology law, oddness and bidegree support for every page of fc.
void check_page_laws(const FilteredComplex& fc) {
    const int last = fc.max_filtration + 3;
    SpectralPage cur = page(fc, 0);
    for (int r = 0; r < last; ++r) {
        const PageDifferential d = differential(fc, cur);
        CHECK(differential_is_odd(cur, d));
        for (const auto& [src, block] : d.blocks) {
            CHECK(src.first + src.second == 0);
            CHECK(cur.cells.count({src.first + r, src.second - r + 1}) == 1);
        }
        SpectralPage next = page(fc, r + 1);
        const auto h = page_homology(cur, d);
        for (const auto& [pq, cell] : next.cells) CHECK(h.at(pq) == cell.dims);
        CHECK(h.size() == next.cells.size());
        cur = std::move(next);
    }
}

// Page 1 bigraded dims against the split complex's graded cohomology.
void check_e1(const FilteredComplex& fc, const SplitSheaf& s) {
    const auto split = cohomology(build_split_complex(s));
    const SpectralPage e1 = page(fc, 1);
    for (const auto& [pq, dim] : split.bigraded) CHECK(e1.dims(pq).total() == dim);
}

}  // namespace

TEST_CASE("zero complex has zero pages") {
    const auto fc = FilteredComplex::from_cech(build_split_complex(SplitSheaf{ChartModel::projective(2), {}}));
    for (int r = 0; r <= 4; ++r)
        for (const auto& [pq, cell] : page(fc, r).cells) CHECK(cell.dims.total() == 0);
    const auto rep = converge(fc);
    CHECK(rep.totals_ok);
    CHECK_THROWS_AS((void)page(fc, -1), std::invalid_argument);
}

TEST_CASE("split complexes degenerate at page 1") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 15; ++trial) {
        const auto s = random_sheaf(rng, trial % 4);
        const auto fc = FilteredComplex::from_cech(twisted_complex(s, GluingCocycle{EndoMatrix::identity(s.rank())}));
        for (int r = 1; r <= s.m() + 3; ++r) CHECK(differential(fc, page(fc, r)).is_zero());
        const auto rep = converge(fc);
        const auto e1 = page(fc, 1);
        for (const auto& [pq, dims] : rep.e_infinity) CHECK(e1.dims(pq) == dims);
        const auto bott = cohomology(build_split_complex(s));
        CHECK(rep.direct_h == bott.h);
        check_e1(fc, s);
    }
}

TEST_CASE("flagship pages") {
    const auto s = sheaf(1, {0}, {-1});
    const auto a = single(s, 1, 0, -1, {1});
    const auto fc = FilteredComplex::from_cech(twisted_complex(s, a));
    const auto e1 = page(fc, 1);
    CHECK(e1.dims({0, 0}) == ParityDims{1, 0});
    CHECK(e1.dims({1, 0}) == ParityDims{1, 0});
    CHECK(e1.dims({0, 1}).total() == 0);
    CHECK(e1.dims({1, -1}).total() == 0);
    const auto d1 = differential(fc, e1);
    CHECK(d1.rank() == 1);
    REQUIRE(d1.blocks.count({0, 0}) == 1);
    CHECK(d1.blocks.at({0, 0}).rows() == 1);
    CHECK(d1.blocks.at({0, 0}).cols() == 1);

    const auto rep = converge(fc);
    for (const auto& [pq, dims] : rep.e_infinity) CHECK(dims.total() == 0);
    CHECK(rep.direct_h[0].total() == 0);
    CHECK(rep.direct_h[1].total() == 0);
    CHECK(rep.totals_ok);
    CHECK(rep.graded_ok);
    CHECK(rep.page_law_ok);
    CHECK(rep.stable_ok);
    check_page_laws(fc);
    check_e1(fc, s);
}

TEST_CASE("order-2 example pages") {
    const auto s = sheaf(2, {0}, {0});
    const auto fc = FilteredComplex::from_cech(twisted_complex(s, single(s, 0, 0, -1, {1, 2})));
    const auto e1 = page(fc, 1);
    CHECK(e1.dims({0, 0}) == ParityDims{1, 1});
    CHECK(e1.dims({2, -1}) == ParityDims{1, 1});
    CHECK(differential(fc, e1).is_zero());
    const auto e2 = page(fc, 2);
    CHECK(differential(fc, e2).rank() == 1);
    const auto e3 = page(fc, 3);
    CHECK(e3.dims({0, 0}) == ParityDims{0, 1});
    CHECK(e3.dims({2, -1}) == ParityDims{0, 1});
    const auto rep = converge(fc);
    CHECK(rep.direct_h[0] == ParityDims{0, 1});
    CHECK(rep.direct_h[1] == ParityDims{0, 1});
    check_page_laws(fc);
}

TEST_CASE("random cocycles: convergence identity and page laws") {
    std::mt19937_64 rng(72);
    int nonsplit = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_sheaf(rng, 1 + trial % 3);
        const auto a = exp(random_cochain(s, rng));
        const auto cx = twisted_complex(s, a);
        const auto fc = FilteredComplex::from_cech(cx);
        const auto rep = converge(fc);
        CHECK(rep.totals_ok);
        CHECK(rep.graded_ok);
        CHECK(rep.page_law_ok);
        CHECK(rep.stable_ok);
        // Independent path: ranks of the Čech differential itself.
        CHECK(rep.direct_h == cohomology(cx).h);
        for (int k = 0; k <= 1; ++k) {
            ParityDims sum;
            for (const auto& [pq, dims] : rep.e_infinity)
                if (pq.first + pq.second == k) {
                    sum.even += dims.even;
                    sum.odd += dims.odd;
                }
            CHECK(sum == cohomology(cx).h[k]);
        }
        check_page_laws(fc);
        check_e1(fc, s);
        if (order(s, a).k) ++nonsplit;
    }
    CHECK(nonsplit > 0);
}

TEST_CASE("symbol pages of the examples") {
    const auto flag_sheaf = sheaf(1, {0}, {-1});
    const auto flag = symbol_page_check(flag_sheaf, single(flag_sheaf, 1, 0, -1, {1}));
    CHECK(flag.k == 1);
    CHECK(flag.first_nonzero_page == 1);
    CHECK(flag.symbol_match);
    CHECK(flag.dk_rank == 1);

    const auto s2 = sheaf(2, {0}, {0});
    const auto two = symbol_page_check(s2, single(s2, 0, 0, -1, {1, 2}));
    CHECK(two.k == 2);
    CHECK(two.first_nonzero_page == 2);
    CHECK(two.lower_pages_vanish);
    CHECK(two.symbol_match);

    const auto id = symbol_page_check(flag_sheaf, GluingCocycle{EndoMatrix::identity(2)});
    CHECK_FALSE(id.k.has_value());
    CHECK_FALSE(id.first_nonzero_page.has_value());
}

TEST_CASE("random cocycles: lower differentials vanish below the order") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = random_sheaf(rng, 1 + trial % 3);
        const auto rep = symbol_page_check(s, exp(random_cochain(s, rng)));
        if (!rep.k) {
            CHECK_FALSE(rep.first_nonzero_page.has_value());
            continue;
        }
        CHECK(rep.lower_pages_vanish);
        CHECK(rep.symbol_match);
    }
}
