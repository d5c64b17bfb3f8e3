#pragma once

// Record syntax for spaces, sets, ideals, models and reports. Records are JSON
// objects; ordinals are literal strings such as "w^2*3+w+4".

#include "adlab/colength.hpp"
#include "adlab/definable_set.hpp"
#include "adlab/domain_model.hpp"
#include "adlab/group_lab.hpp"
#include "adlab/ideal_map.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace adlab::io {

using json = nlohmann::json;

/// Parses record text; malformed JSON raises ParseError naming the position.
json parse_text(const std::string& text, const std::string& source);
json read_file(const std::string& path);

// Readers. Every ParseError names the offending field as a dotted path.
Ordinal ordinal_from(const json& j, const std::string& path);
Cell cell_from(const json& j, const std::string& path);
DefinableSet set_from(const json& j, const Ordinal& top, const std::string& path);
/// {top, carrier?}; a missing carrier is the whole interval.
Space space_from(const json& j, const std::string& path = "space");
/// {space, pieces, overrides}. Inside a larger record the space may be
/// inherited from the parent.
IdealMap ideal_from(const json& j, const std::string& path = "ideal",
                    const Space* inherited = nullptr);
/// {space, chain, terminal}, or {space, kind: "sharp" | "sp"}.
DomainModel model_from(const json& j, const std::string& path = "model");
ColengthModel colength_from(const json& j, const std::string& path = "colength");
/// {space, generators: [ideal...]}.
std::vector<IdealMap> generators_from(const json& j, const std::string& path = "generators");

// Writers.
json to_json(const Ordinal& x);
json to_json(const Cell& c);
json to_json(const DefinableSet& s);
json to_json(const Space& s);
json to_json(const IdealMap& v);
json to_json(const DomainModel& m);
json to_json(const ValidationError& e);
json to_json(const StratTuple& t);
json to_json(const std::vector<lattice::Int>& xs);
json to_json(const ExactnessReport& r);
json to_json(const SigmaRReport& r);
json to_json(const MiVerdict& v);

} // namespace adlab::io
