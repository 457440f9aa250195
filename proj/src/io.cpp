#include "supersheaf/io.hpp"

#include <fstream>
#include <sstream>

namespace supersheaf {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

namespace {

const Json& field(const Json& obj, const std::string& name, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    auto it = obj.find(name);
    if (it == obj.end()) throw ParseError(where + ": missing field '" + name + "'");
    return *it;
}

int int_field(const Json& obj, const std::string& name, const std::string& where) {
    const Json& v = field(obj, name, where);
    if (!v.is_number_integer()) throw ParseError(where + ": field '" + name + "' must be an integer");
    return v.get<int>();
}

std::vector<int> int_array(const Json& obj, const std::string& name, const std::string& where) {
    const Json& v = field(obj, name, where);
    if (!v.is_array()) throw ParseError(where + ": field '" + name + "' must be an array");
    std::vector<int> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_number_integer())
            throw ParseError(where + ": " + name + "[" + std::to_string(k) + "] must be an integer");
        out.push_back(v[k].get<int>());
    }
    return out;
}

}  // namespace

SheafDescriptor descriptor_from_json(const Json& j) {
    const std::string where = "descriptor";
    const int n = int_field(j, "n", where);
    const int m = int_field(j, "m", where);
    auto even = int_array(j, "even_twists", where);
    auto odd = int_array(j, "odd_twists", where);
    try {
        return SheafDescriptor(SuperSpace(n, m), std::move(even), std::move(odd));
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

Json to_json(const SheafDescriptor& desc) {
    Json j;
    j["n"] = desc.space().n;
    j["m"] = desc.space().m;
    j["even_twists"] = desc.even_twists();
    j["odd_twists"] = desc.odd_twists();
    return j;
}

EndomorphismCochain cochain_from_json(const Json& j, const SplitSheaf& sheaf) {
    if (!j.is_array()) throw ParseError("cocycle: expected an array of matrix entries");
    EndoMatrix m(sheaf.rank());
    for (std::size_t e = 0; e < j.size(); ++e) {
        const std::string where = "cocycle[" + std::to_string(e) + "]";
        const int row = int_field(j[e], "row", where);
        const int col = int_field(j[e], "col", where);
        if (row < 0 || col < 0 || static_cast<std::size_t>(row) >= sheaf.rank() ||
            static_cast<std::size_t>(col) >= sheaf.rank())
            throw ParseError(where + ": row/col outside 0.." + std::to_string(sheaf.rank() - 1));
        const Json& terms = field(j[e], "terms", where);
        if (!terms.is_array()) throw ParseError(where + ": field 'terms' must be an array");
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string tw = where + ".terms[" + std::to_string(t) + "]";
            const int z = int_field(terms[t], "z", tw);
            const auto zetas = int_array(terms[t], "zetas", tw);
            const Json& c = field(terms[t], "coeff", tw);
            Rational q;
            try {
                if (c.is_string()) q = parse_rational(c.get<std::string>());
                else if (c.is_number_integer()) q = Rational(c.get<long>());
                else throw std::invalid_argument("not a rational");
            } catch (const std::invalid_argument&) {
                throw ParseError(tw + ": field 'coeff' must be a rational \"p/q\"");
            }
            ExteriorMonomial zeta;
            try {
                zeta = ExteriorMonomial::from_indices(zetas);
            } catch (const std::invalid_argument& ex) {
                throw ParseError(tw + ": field 'zetas': " + ex.what());
            }
            for (int i : zetas)
                if (i > sheaf.m()) throw ParseError(tw + ": field 'zetas' uses zeta" + std::to_string(i) + " beyond m");
            m.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col)).add_term(q, z, zeta);
        }
    }
    try {
        return EndomorphismCochain(sheaf, std::move(m));
    } catch (const std::invalid_argument& ex) {
        throw ParseError(std::string("cocycle: ") + ex.what());
    }
}

Json cochain_to_json(const EndoMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m.at(i, j).is_zero()) continue;
            Json terms = Json::array();
            for (const auto& [key, q] : m.at(i, j).terms())
                terms.push_back({{"z", key.z_exp}, {"zetas", key.zeta.indices()}, {"coeff", to_string(q)}});
            out.push_back({{"row", i}, {"col", j}, {"terms", terms}});
        }
    return out;
}

std::string bidegree_key(Bidegree pq) { return std::to_string(pq.first) + "," + std::to_string(pq.second); }

Json to_json(const ParityDims& d) { return Json{{"even", d.even}, {"odd", d.odd}}; }

Json to_json(const CohomologyTable& table) {
    Json j;
    j["h"] = Json::array({to_json(table.h[0]), to_json(table.h[1])});
    if (!table.bigraded.empty()) {
        Json b = Json::object();
        for (const auto& [pq, dim] : table.bigraded) b[bidegree_key(pq)] = dim;
        j["bigraded"] = b;
    }
    return j;
}

Json to_json(const ObstructionLadder& ladder) {
    Json rungs = Json::array();
    for (const auto& r : ladder.rungs) rungs.push_back({{"p", r.p}, {"h0", r.h0.get_str()}, {"h1", r.h1.get_str()}});
    return Json{{"rungs", rungs}, {"verdict", ladder.verdict()}};
}

Json to_json(const std::vector<GradedPiece>& pieces) {
    Json out = Json::array();
    for (const auto& piece : pieces) {
        Json entries = Json::array();
        for (const auto& e : piece.twists.entries())
            entries.push_back({{"twist", e.twist}, {"parity", to_string(e.parity)}, {"multiplicity", e.multiplicity}});
        out.push_back({{"p", piece.degree}, {"twists", entries}});
    }
    return out;
}

namespace {

Json cells_json(const std::map<Bidegree, ParityDims>& cells) {
    Json j = Json::object();
    for (const auto& [pq, d] : cells) j[bidegree_key(pq)] = to_json(d);
    return j;
}

Json opt_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const SymbolPageReport& rep) {
    return Json{{"k", opt_int(rep.k)},
                {"first_nonzero_page", opt_int(rep.first_nonzero_page)},
                {"lower_pages_vanish", rep.lower_pages_vanish},
                {"symbol_match", rep.symbol_match},
                {"dk_rank", rep.dk_rank}};
}

Json to_json(const ConvergenceReport& rep, const SymbolPageReport* symbol_report) {
    Json pages = Json::array();
    for (const auto& pg : rep.pages) {
        std::map<Bidegree, ParityDims> dims;
        for (const auto& [pq, cell] : pg.cells) dims[pq] = cell.dims;
        pages.push_back({{"r", pg.r}, {"cells", cells_json(dims)}});
    }
    Json j;
    j["pages"] = pages;
    j["e_infinity"] = cells_json(rep.e_infinity);
    j["direct_h"] = Json::array({to_json(rep.direct_h[0]), to_json(rep.direct_h[1])});
    j["corollary_ok"] = rep.totals_ok;
    j["graded_ok"] = rep.graded_ok;
    j["page_law_ok"] = rep.page_law_ok;
    j["stable_ok"] = rep.stable_ok;
    if (symbol_report) j["theorem8"] = to_json(*symbol_report);
    return j;
}

Json to_json(const ConnectionReport& rep) {
    return Json{{"g_twists", rep.g_twists},
                {"tangent_class_trivial", rep.tangent_class_trivial},
                {"extension_splits", rep.extension_splits},
                {"connection_exists", rep.connection_exists},
                {"all_equal", rep.all_equal()}};
}

Json to_json(const SymbolClass& s) {
    Json coords = Json::array();
    for (const auto& g : s.coordinates)
        coords.push_back({{"row", g.row}, {"col", g.col}, {"z", g.exp}, {"zetas", g.zeta.indices()}, {"coeff", to_string(g.coeff)}});
    return Json{{"k", s.k}, {"cochain", cochain_to_json(s.cochain)}, {"class", coords}};
}

}  // namespace supersheaf
