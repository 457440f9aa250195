#include "supersheaf/classify.hpp"

#include "supersheaf/cech.hpp"

#include <algorithm>

namespace supersheaf {

ObstructionLadder ladder(const SheafDescriptor& desc) {
    ObstructionLadder out;
    const int n = desc.space().n;
    for (int p = 1; p <= desc.space().m; ++p) {
        LadderRung rung{p, 0, 0};
        const EndBlock block = end_block(desc, p);
        for (const auto& e : block.twists.entries()) {
            rung.h0 += e.multiplicity * bott_dim(n, e.twist, 0);
            rung.h1 += e.multiplicity * bott_dim(n, e.twist, 1);
        }
        if (rung.h1 != 0) out.rigid_split = false;
        out.rungs.push_back(rung);
    }
    return out;
}

SplittingCertificate reduce_cocycle(const SplitSheaf& sheaf, const GluingCocycle& a) {
    SplittingCertificate cert;
    const OrderResult ord = order(sheaf, a);
    if (ord.k) {
        cert.obstruction = ord.symbol;
        return cert;
    }
    cert.frames = std::pair{ord.phi0, ord.phi1};
    cert.verified = compose(a.a, ord.phi1) == ord.phi0 && is_u0_regular(sheaf, ord.phi0) &&
                    is_u1_regular(sheaf, ord.phi1) &&
                    cohomology(twisted_complex(sheaf, a)).h == cohomology(build_split_complex(sheaf)).h;
    return cert;
}

SplittingCertificate reduce_cocycle(const SheafDescriptor& desc, const GluingCocycle& a) {
    return reduce_cocycle(SplitSheaf::from_descriptor(desc), a);
}

std::vector<Rational> atiyah_obstruction(const std::vector<int>& g_twists) {
    // H^1(O(-2)) through the Čech quotient C^1 / d C^0.
    const CechComplex cx = build_split_complex(SheafDescriptor(SuperSpace(1, 0), {-2}, {}));
    const Subquotient h1 = subquotient(Subspace::full(cx.basis(1).size()), image(cx.differential()));
    const BasisIndex idx(cx, 1);
    const auto pos = idx.find(Chart::u01, FiberKey{0, {}, -1});
    if (!pos || h1.dim != 1) throw std::logic_error("H^1(O(-2)) is not spanned by z^-1");
    const Rational unit = h1.projector.apply(SparseVec::unit(*pos)).at(0);
    std::vector<Rational> out;
    for (int g : g_twists) {
        const SparseVec cochain({{*pos, Rational(g)}});
        out.push_back(h1.projector.apply(cochain).at(0) / unit);
    }
    return out;
}

namespace {

// Some x with m x = rhs, or nullopt.
std::optional<SparseVec> solve(const Matrix& m, const SparseVec& rhs) {
    std::vector<Triplet> t;
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& [i, q] : m.column(j)) t.push_back({i, j, q});
    for (const auto& [i, q] : rhs) t.push_back({i, m.cols(), -q});
    const Matrix aug = Matrix::from_triplets(m.rows(), m.cols() + 1, std::move(t));
    const Subspace ker = kernel(aug);
    for (const auto& v : ker.basis()) {
        const Rational last = v.at(m.cols());
        if (is_zero(last)) continue;
        std::vector<SparseVec::Entry> x;
        for (const auto& [i, q] : v)
            if (i < m.cols()) x.emplace_back(i, q / last);
        return SparseVec(std::move(x));
    }
    return std::nullopt;
}

GradedCoefficient derivative(const GradedCoefficient& f) {
    GradedCoefficient out;
    for (const auto& [key, q] : f.terms())
        if (key.z_exp != 0) out.add_term(q * key.z_exp, key.z_exp - 1, key.zeta);
    return out;
}

EndoMatrix derivative(const EndoMatrix& m) {
    EndoMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out.at(i, j) = derivative(m.at(i, j));
    return out;
}

std::vector<std::vector<int>> subsets(int r, int p) {
    std::vector<std::vector<int>> out;
    if (p < 0 || p > r) return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == p) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < r; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

Connection construct_connection(const std::vector<int>& g_twists) {
    // Frames e^(1) = z^g e^(0) force omega1 = omega0 + g z^{-1} on each diagonal
    // entry; omega0 has exponents >= 0 and omega1 exponents <= -2.
    constexpr int reach = 4;
    const std::size_t r = g_twists.size();
    Connection conn{g_twists, EndoMatrix(r), EndoMatrix(r)};
    for (std::size_t i = 0; i < r; ++i) {
        // Unknowns: omega0 exps 0..reach, omega1 exps -reach..-2. Equations: exps -reach..reach.
        std::vector<int> x_exps, y_exps;
        for (int e = 0; e <= reach; ++e) x_exps.push_back(e);
        for (int e = -reach; e <= -2; ++e) y_exps.push_back(e);
        auto row_of = [](int e) { return static_cast<std::size_t>(e + reach); };
        std::vector<Triplet> t;
        for (std::size_t c = 0; c < x_exps.size(); ++c) t.push_back({row_of(x_exps[c]), c, Rational(-1)});
        for (std::size_t c = 0; c < y_exps.size(); ++c) t.push_back({row_of(y_exps[c]), x_exps.size() + c, Rational(1)});
        const Matrix m = Matrix::from_triplets(2 * reach + 1, x_exps.size() + y_exps.size(), std::move(t));
        const SparseVec rhs = g_twists[i] == 0 ? SparseVec() : SparseVec({{row_of(-1), Rational(g_twists[i])}});
        const auto x = solve(m, rhs);
        if (!x) throw NoConnection("no holomorphic connection on O(" + std::to_string(g_twists[i]) + ")");
        for (const auto& [c, q] : *x) {
            if (c < x_exps.size()) conn.omega0.at(i, i).add_term(q, x_exps[c], {});
            else conn.omega1.at(i, i).add_term(q, y_exps[c - x_exps.size()], {});
        }
    }
    return conn;
}

EndoMatrix wedge_matrix(const EndoMatrix& omega, int p) {
    const int r = static_cast<int>(omega.size());
    const auto basis = subsets(r, p);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;
    EndoMatrix out(basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto& s = basis[col];
        for (std::size_t slot = 0; slot < s.size(); ++slot)
            for (int i = 0; i < r; ++i) {
                const auto& w = omega.at(static_cast<std::size_t>(i), static_cast<std::size_t>(s[slot]));
                if (w.is_zero()) continue;
                std::vector<int> word = s;
                word[slot] = i;
                if (i != s[slot] && std::count(s.begin(), s.end(), i)) continue;
                int inversions = 0;
                for (std::size_t a = 0; a < word.size(); ++a)
                    for (std::size_t b = a + 1; b < word.size(); ++b) inversions += word[a] > word[b];
                std::sort(word.begin(), word.end());
                out.at(index.at(word), col) += Rational(inversions % 2 ? -1 : 1) * w;
            }
    }
    return out;
}

Connection wedge_connection(const Connection& conn, int p) {
    std::vector<int> twists;
    for (const auto& s : subsets(static_cast<int>(conn.twists.size()), p)) {
        int t = 0;
        for (int i : s) t += conn.twists[static_cast<std::size_t>(i)];
        twists.push_back(t);
    }
    return Connection{twists, wedge_matrix(conn.omega0, p), wedge_matrix(conn.omega1, p)};
}

Connection wedge_connection(const std::vector<int>& g_twists, int p) {
    for (const auto& c : atiyah_obstruction(g_twists))
        if (!is_zero(c)) throw NoConnection("Atiyah class of G is nonzero");
    return wedge_connection(construct_connection(g_twists), p);
}

EndoMatrix curvature(const EndoMatrix& omega) {
    // ∇_X s = X(s) + omega(X) s with X = Y = ∂_z and [X, Y] = 0.
    const EndoMatrix xy = derivative(omega) + compose(omega, omega);
    const EndoMatrix yx = derivative(omega) + compose(omega, omega);
    const EndoMatrix bracket(omega.size());
    EndoMatrix r = xy - yx - bracket;
    if (!r.is_zero()) throw std::logic_error("curvature of a connection on a curve is nonzero");
    return r;
}

std::pair<SplitSheaf, GluingCocycle> tangent_cocycle(const std::vector<int>& g_twists) {
    SplitSheaf sheaf{ChartModel::split_curve(g_twists), {}};
    sheaf.summands.push_back({2, Parity::even});
    for (int g : g_twists) sheaf.summands.push_back({-g, Parity::odd});
    EndoMatrix big_a(sheaf.rank());
    for (std::size_t i = 0; i < g_twists.size(); ++i)
        if (g_twists[i] != 0)
            big_a.at(i + 1, 0) = GradedCoefficient::term(Rational(-g_twists[i]), -1,
                                                         ExteriorMonomial::from_indices({static_cast<int>(i) + 1}));
    const EndomorphismCochain cochain(sheaf, std::move(big_a));
    return {sheaf, exp(cochain)};
}

ConnectionReport connection_equivalence_check(const std::vector<int>& g_twists) {
    ConnectionReport rep;
    rep.g_twists = g_twists;
    const auto [sheaf, a] = tangent_cocycle(g_twists);
    rep.tangent_class_trivial = !order(sheaf, a).k.has_value();
    const auto classes = atiyah_obstruction(g_twists);
    rep.extension_splits = std::all_of(classes.begin(), classes.end(), [](const Rational& q) { return is_zero(q); });
    try {
        (void)construct_connection(g_twists);
        rep.connection_exists = true;
    } catch (const NoConnection&) {
        rep.connection_exists = false;
    }
    return rep;
}

}  // namespace supersheaf
