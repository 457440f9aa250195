// supersheaf: command-line front end for the sheaf cohomology engine.
//
// Exit codes: 0 success, 2 invalid input, 1 internal invariant failure.

#include "supersheaf/classify.hpp"
#include "supersheaf/io.hpp"
#include "supersheaf/spectral.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

using namespace supersheaf;

namespace {

struct Options {
    std::optional<int> n, m, d, q;
    std::string file;
    std::string cocycle;
    std::string window = "auto";
    bool json = false;
    std::uint64_t seed = 1;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::optional<Window> parse_window(const std::string& text) {
    if (text == "auto") return std::nullopt;
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("--window: expected lo:hi or auto, got '" + text + "'");
    try {
        std::size_t used_lo = 0, used_hi = 0;
        const int lo = std::stoi(text.substr(0, colon), &used_lo);
        const int hi = std::stoi(text.substr(colon + 1), &used_hi);
        if (used_lo != colon || used_hi != text.size() - colon - 1) throw std::invalid_argument("trailing text");
        if (lo > hi) throw UsageError("--window: lo must not exceed hi");
        return Window{lo, hi};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("--window: expected lo:hi or auto, got '" + text + "'");
    }
}

SheafDescriptor load_descriptor(const Options& o) {
    if (!o.file.empty()) return descriptor_from_json(read_json_file(o.file));
    if (!o.d) throw UsageError("give a descriptor with --file, or a line bundle with --d (and --n, --m)");
    return SheafDescriptor(SuperSpace(o.n.value_or(1), o.m.value_or(0)), {*o.d}, {});
}

GluingCocycle load_cocycle(const Options& o, const SplitSheaf& sheaf) {
    if (o.cocycle.empty()) return GluingCocycle{EndoMatrix::identity(sheaf.rank())};
    if (o.cocycle == "random") {
        std::mt19937_64 rng(o.seed);
        return exp(random_cochain(sheaf, rng));
    }
    return exp(cochain_from_json(read_json_file(o.cocycle), sheaf));
}

std::string dims_text(const ParityDims& d) { return std::to_string(d.even) + "|" + std::to_string(d.odd); }

void emit(const Options& o, const Json& j, const std::string& text) {
    if (o.json) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

void print_pages(std::ostream& os, const ConvergenceReport& rep) {
    for (const auto& pg : rep.pages) {
        os << "E_" << pg.r << ":";
        for (const auto& [pq, cell] : pg.cells) os << "  (" << bidegree_key(pq) << ") " << dims_text(cell.dims);
        os << "\n";
    }
    os << "E_inf:";
    for (const auto& [pq, d] : rep.e_infinity) os << "  (" << bidegree_key(pq) << ") " << dims_text(d);
    os << "\n";
    os << "direct H^0 " << dims_text(rep.direct_h[0]) << "  H^1 " << dims_text(rep.direct_h[1]) << "\n";
    os << "sum of E_inf equals H: " << (rep.totals_ok ? "yes" : "NO") << "\n";
    os << "E_inf equals gr H: " << (rep.graded_ok ? "yes" : "NO") << "\n";
    os << "page homology law: " << (rep.page_law_ok ? "yes" : "NO") << "\n";
}

void print_symbol_report(std::ostream& os, const SymbolPageReport& r) {
    os << "order: " << (r.k ? std::to_string(*r.k) : "split-representative") << "\n";
    os << "first nonzero differential: " << (r.first_nonzero_page ? "d_" + std::to_string(*r.first_nonzero_page) : "none")
       << "\n";
    if (r.k) {
        os << "d_r = 0 below the order: " << (r.lower_pages_vanish ? "yes" : "no") << "\n";
        os << "rank d_" << *r.k << ": " << r.dk_rank << "\n";
        os << "symbol match: " << (r.symbol_match ? "yes" : "no") << "\n";
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error(what);
}

int cmd_bott(const Options& o) {
    if (!o.d || !o.q) throw UsageError("bott needs --d and --q");
    const int n = o.n.value_or(1);
    if (n < 1) throw UsageError("--n must be at least 1");
    if (*o.q < 0) throw UsageError("--q must be non-negative");
    const Integer dim = bott_dim(n, *o.d, *o.q);
    emit(o, Json{{"n", n}, {"d", *o.d}, {"q", *o.q}, {"dim", dim.get_str()}}, dim.get_str() + "\n");
    return 0;
}

int cmd_decompose(const Options& o) {
    const SheafDescriptor desc = load_descriptor(o);
    const auto pieces = retract_decomposition(desc);
    std::ostringstream os;
    for (const auto& piece : pieces) {
        os << "gr E_" << piece.degree << ":";
        for (const auto& e : piece.twists.entries())
            os << "  " << (e.parity == Parity::odd ? "ΠO(" : "O(") << e.twist << ")^" << e.multiplicity;
        os << "\n";
    }
    emit(o, Json{{"descriptor", to_json(desc)}, {"pieces", to_json(pieces)}}, os.str());
    return 0;
}

int cmd_obstructions(const Options& o) {
    const SheafDescriptor desc = load_descriptor(o);
    const ObstructionLadder lad = ladder(desc);
    const auto dims = obstruction_dims(desc);
    for (std::size_t k = 0; k < dims.size(); ++k) require(dims[k].second == lad.rungs[k].h1, "ladder disagrees with obstruction dims");
    std::ostringstream os;
    os << "p  h0(End_p)  h1(End_p)\n";
    for (const auto& r : lad.rungs) os << r.p << "  " << r.h0.get_str() << "  " << r.h1.get_str() << "\n";
    os << "verdict: " << lad.verdict() << "\n";
    emit(o, to_json(lad), os.str());
    return 0;
}

int cmd_cohomology(const Options& o, const std::optional<Window>& window) {
    const SheafDescriptor desc = load_descriptor(o);
    const SplitSheaf sheaf = SplitSheaf::from_descriptor(desc);
    const GluingCocycle a = load_cocycle(o, sheaf);
    const CechComplex cx = twisted_complex(sheaf, a, window);
    const CohomologyTable table = cohomology(cx);
    const bool stable = window_stability_check(sheaf, cx.window(), 2, &a.a);
    std::ostringstream os;
    os << "window: [" << cx.window().lo << "," << cx.window().hi << "]\n";
    os << "H^0 " << dims_text(table.h[0]) << "\nH^1 " << dims_text(table.h[1]) << "\n";
    for (const auto& [pq, dim] : table.bigraded) os << "H^" << pq.first + pq.second << "(gr E_" << pq.first << ") " << dim << "\n";
    os << "stable under padding 2: " << (stable ? "yes" : "no") << "\n";
    Json j = to_json(table);
    j["window"] = {cx.window().lo, cx.window().hi};
    j["stable"] = stable;
    emit(o, j, os.str());
    return 0;
}

int cmd_spectral(const Options& o, const std::optional<Window>& window, bool with_symbol) {
    const SheafDescriptor desc = load_descriptor(o);
    const SplitSheaf sheaf = SplitSheaf::from_descriptor(desc);
    const GluingCocycle a = load_cocycle(o, sheaf);
    const ConvergenceReport rep = converge(FilteredComplex::from_cech(twisted_complex(sheaf, a, window)));
    require(rep.page_law_ok, "page homology law");
    require(rep.totals_ok, "sum of E_inf equals dim H");
    require(rep.graded_ok, "E_inf equals gr H");
    std::optional<SymbolPageReport> sym;
    if (with_symbol) sym = symbol_page_check(sheaf, a);
    std::ostringstream os;
    if (!with_symbol) print_pages(os, rep);
    if (sym) print_symbol_report(os, *sym);
    if (with_symbol) emit(o, to_json(*sym), os.str());
    else emit(o, to_json(rep, sym ? &*sym : nullptr), os.str());
    return 0;
}

int cmd_connection(const Options& o) {
    std::vector<int> g;
    if (!o.file.empty()) {
        const Json j = read_json_file(o.file);
        if (!j.is_object() || !j.contains("g_twists") || !j["g_twists"].is_array())
            throw ParseError("connection file: missing array field 'g_twists'");
        for (const auto& v : j["g_twists"]) {
            if (!v.is_number_integer()) throw ParseError("connection file: g_twists entries must be integers");
            g.push_back(v.get<int>());
        }
    } else if (o.d) {
        g.push_back(*o.d);
    } else {
        throw UsageError("connection needs --d g or --file with g_twists");
    }
    const ConnectionReport rep = connection_equivalence_check(g);
    require(rep.all_equal(), "tangent class, extension splitting and connection existence disagree");
    const auto classes = atiyah_obstruction(g);
    std::ostringstream os;
    os << "G =";
    for (int t : g) os << " O(" << t << ")";
    os << "\nAtiyah classes (multiples of [z^-1] in H^1(O(-2))):";
    Json cls = Json::array();
    for (const auto& c : classes) {
        os << " " << to_string(c);
        cls.push_back(to_string(c));
    }
    os << "\ntangent gluing reduces to gr T: " << (rep.tangent_class_trivial ? "yes" : "no") << "\n";
    os << "Atiyah extension splits: " << (rep.extension_splits ? "yes" : "no") << "\n";
    os << "connection exists: " << (rep.connection_exists ? "yes" : "no") << "\n";
    Json j = to_json(rep);
    j["atiyah_classes"] = cls;
    if (rep.connection_exists) {
        const Connection conn = construct_connection(g);
        require(curvature(conn.omega0).is_zero() && curvature(conn.omega1).is_zero(), "curvature vanishes on a curve");
        j["omega0"] = cochain_to_json(conn.omega0);
        j["omega1"] = cochain_to_json(conn.omega1);
        os << "curvature: 0\n";
    }
    emit(o, j, os.str());
    return 0;
}

int cmd_demo(const Options& o) {
    const SheafDescriptor desc(SuperSpace(1, 1), {0}, {-1});
    const SplitSheaf sheaf = SplitSheaf::from_descriptor(desc);
    EndoMatrix big_a(2);
    big_a.at(1, 0) = GradedCoefficient::term(Rational(1), -1, ExteriorMonomial::from_indices({1}));
    const GluingCocycle a = exp(EndomorphismCochain(sheaf, big_a));

    const auto dims = obstruction_dims(desc);
    const CohomologyTable split = cohomology(build_split_complex(sheaf));
    const CohomologyTable twisted = cohomology(twisted_complex(sheaf, a));
    const ConvergenceReport rep = converge(FilteredComplex::from_cech(twisted_complex(sheaf, a)));
    const SymbolPageReport sym = symbol_page_check(sheaf, a);

    bool ok = dims.size() == 1 && dims[0].second == 1;
    ok = ok && split.h[0] == ParityDims{1, 0} && split.h[1] == ParityDims{1, 0};
    ok = ok && twisted.h == rep.direct_h && rep.totals_ok && rep.graded_ok && rep.page_law_ok;
    ok = ok && twisted.h[0].total() == 0 && twisted.h[1].total() == 0;
    ok = ok && sym.k == 1 && sym.first_nonzero_page == 1 && sym.symbol_match;

    std::ostringstream os;
    os << "descriptor: CP^{1|1}, even [0], odd [-1]\n";
    os << "cocycle: exp(" << big_a.at(1, 0).to_string() << " e->f)\n";
    os << "H^1(End_1 gr E): " << dims[0].second.get_str() << "\n";
    os << "split   H^0 " << dims_text(split.h[0]) << "  H^1 " << dims_text(split.h[1]) << "\n";
    os << "twisted H^0 " << dims_text(twisted.h[0]) << "  H^1 " << dims_text(twisted.h[1]) << "\n";
    print_pages(os, rep);
    print_symbol_report(os, sym);
    os << "all cross-checks: " << (ok ? "pass" : "FAIL") << "\n";
    Json j;
    j["descriptor"] = to_json(desc);
    j["cocycle"] = cochain_to_json(big_a);
    j["obstruction_dims"] = Json::array({Json{{"p", 1}, {"h1", dims[0].second.get_str()}}});
    j["split"] = to_json(split);
    j["twisted"] = to_json(twisted);
    j["spectral"] = to_json(rep, &sym);
    j["ok"] = ok;
    emit(o, j, os.str());
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Čech cohomology and spectral sequences of sheaves on CP^{n|m}"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--n", o.n, "even dimension");
        sub->add_option("--m", o.m, "odd dimension");
        sub->add_option("--d", o.d, "twist");
        sub->add_option("--q", o.q, "cohomological degree");
        sub->add_option("--file", o.file, "descriptor JSON");
        sub->add_option("--cocycle", o.cocycle, "cocycle JSON (log of the gluing automorphism) or 'random'");
        sub->add_option("--window", o.window, "weight window lo:hi or auto");
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->add_option("--seed", o.seed, "seed for --cocycle random");
    };
    auto* bott = app.add_subcommand("bott", "dim H^q(CP^n, O(d))");
    auto* decompose = app.add_subcommand("decompose", "graded pieces of gr E");
    auto* obstructions = app.add_subcommand("obstructions", "H^0, H^1 of End_p gr E and the verdict");
    auto* coh = app.add_subcommand("cohomology", "Čech cohomology of gr E or of a glued sheaf");
    auto* spectral = app.add_subcommand("spectral", "spectral sequence pages and convergence");
    auto* symbol = app.add_subcommand("theorem8", "first nonzero differential versus the symbol of the cocycle");
    auto* connection = app.add_subcommand("connection", "Atiyah class, tangent gluing and connections for (CP^1, ∧G)");
    auto* demo = app.add_subcommand("demo-cp11", "flagship non-split rank 1|1 sheaf on CP^{1|1}");
    for (auto* s : {bott, decompose, obstructions, coh, spectral, symbol, connection, demo}) common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const std::optional<Window> window = parse_window(o.window);
        if (bott->parsed()) return cmd_bott(o);
        if (decompose->parsed()) return cmd_decompose(o);
        if (obstructions->parsed()) return cmd_obstructions(o);
        if (coh->parsed()) return cmd_cohomology(o, window);
        if (spectral->parsed()) return cmd_spectral(o, window, false);
        if (symbol->parsed()) {
            if (o.cocycle.empty()) throw UsageError("theorem8 needs --cocycle");
            return cmd_spectral(o, window, true);
        }
        if (connection->parsed()) return cmd_connection(o);
        if (demo->parsed()) return cmd_demo(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
