#include "supersheaf/sheaf_model.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace supersheaf {

SheafDescriptor::SheafDescriptor(SuperSpace space, std::vector<int> even_twists, std::vector<int> odd_twists)
    : space_(space), even_(std::move(even_twists)), odd_(std::move(odd_twists)) {
    if (even_.empty() && odd_.empty()) throw std::invalid_argument("sheaf descriptor of rank 0|0");
    std::sort(even_.begin(), even_.end(), std::greater<>());
    std::sort(odd_.begin(), odd_.end(), std::greater<>());
}

std::vector<Summand> SheafDescriptor::summands() const {
    std::vector<Summand> out;
    for (int a : even_) out.push_back({a, Parity::even});
    for (int b : odd_) out.push_back({b, Parity::odd});
    return out;
}

std::vector<GradedPiece> retract_decomposition(const SheafDescriptor& desc) {
    std::vector<GradedPiece> pieces;
    const int m = desc.space().m;
    for (int p = 0; p <= m; ++p) {
        const int copies = static_cast<int>(binomial(m, p).get_si());
        GradedPiece piece{p, {}};
        for (const auto& s : desc.summands()) piece.twists.add(s.twist - p, s.parity + parity_of(p), copies);
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

EndBlock end_block(const SheafDescriptor& desc, int p) {
    EndBlock block{p, {}};
    const int m = desc.space().m;
    if (p < 0 || p > m) return block;
    const int copies = static_cast<int>(binomial(m, p).get_si());
    const auto& ev = desc.even_twists();
    const auto& od = desc.odd_twists();
    if (p % 2 == 1) {
        for (int a : ev)
            for (int b : od) {
                block.twists.add(-p + a - b, Parity::even, copies);
                block.twists.add(-p + b - a, Parity::even, copies);
            }
    } else {
        for (int a : ev)
            for (int a2 : ev) block.twists.add(-p + a - a2, Parity::even, copies);
        for (int b : od)
            for (int b2 : od) block.twists.add(-p + b - b2, Parity::even, copies);
    }
    return block;
}

std::vector<std::pair<int, Integer>> obstruction_dims(const SheafDescriptor& desc) {
    std::vector<std::pair<int, Integer>> out;
    const int n = desc.space().n;
    for (int p = 1; p <= desc.space().m; ++p) {
        Integer h1 = 0;
        const EndBlock block = end_block(desc, p);
        for (const auto& e : block.twists.entries()) h1 += e.multiplicity * bott_dim(n, e.twist, 1);
        out.emplace_back(p, h1);
    }
    return out;
}

namespace {

// Twists of ∧^k G: sums over k-element subsets.
std::vector<int> wedge_twists(const std::vector<int>& g, int k) {
    std::vector<int> out;
    const int r = static_cast<int>(g.size());
    if (k < 0 || k > r) return out;
    std::vector<int> choose(static_cast<std::size_t>(r), 0);
    std::fill(choose.end() - k, choose.end(), 1);
    do {
        int t = 0;
        for (int i = 0; i < r; ++i)
            if (choose[static_cast<std::size_t>(i)]) t += g[static_cast<std::size_t>(i)];
        out.push_back(t);
    } while (std::next_permutation(choose.begin(), choose.end()));
    return out;
}

}  // namespace

TangentTerms tangent_terms(const std::vector<int>& g_twists, int p) {
    if (p < -1) throw std::invalid_argument("tangent sheaf degrees start at -1");
    constexpr int theta_twist = 2;
    TangentTerms terms{p, {}, {}};
    const Parity par = parity_of(p);
    for (int w : wedge_twists(g_twists, p + 1))
        for (int g : g_twists) terms.sub.add(w - g, par);
    if (p >= 0)
        for (int w : wedge_twists(g_twists, p)) terms.quot.add(w + theta_twist, par);
    return terms;
}

SheafDescriptor extend_descriptor(const SheafDescriptor& desc, int target_m) {
    if (target_m < desc.space().m) throw std::invalid_argument("extension target must have at least as many odd coordinates");
    return SheafDescriptor(SuperSpace(desc.space().n, target_m), desc.even_twists(), desc.odd_twists());
}

SheafDescriptor restrict_descriptor(const SheafDescriptor& desc, int k) {
    if (k < 0 || k > desc.space().m) throw std::invalid_argument("restriction needs 0 <= k <= m");
    return SheafDescriptor(SuperSpace(desc.space().n, k), desc.even_twists(), desc.odd_twists());
}

}  // namespace supersheaf
