#pragma once

// JSON reading and writing for descriptors, cocycles and reports.

#include "supersheaf/classify.hpp"
#include "supersheaf/spectral.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace supersheaf {

using Json = nlohmann::ordered_json;

/// Input that does not match a file format. The message names the field.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Reads a file and parses it as JSON; syntax errors report line and column.
Json read_json_file(const std::string& path);

SheafDescriptor descriptor_from_json(const Json& j);
Json to_json(const SheafDescriptor& desc);

/// Entries {row, col, terms: [{z, zetas, coeff}]} describing log(a).
EndomorphismCochain cochain_from_json(const Json& j, const SplitSheaf& sheaf);
Json cochain_to_json(const EndoMatrix& m);

Json to_json(const ParityDims& d);
Json to_json(const CohomologyTable& table);
Json to_json(const ObstructionLadder& ladder);
Json to_json(const std::vector<GradedPiece>& pieces);
Json to_json(const ConvergenceReport& rep, const SymbolPageReport* symbol_report = nullptr);
Json to_json(const SymbolPageReport& rep);
Json to_json(const ConnectionReport& rep);
Json to_json(const SymbolClass& s);

std::string bidegree_key(Bidegree pq);

}  // namespace supersheaf
