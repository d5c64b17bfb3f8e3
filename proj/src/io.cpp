#include "adlab/io.hpp"

#include "adlab/errors.hpp"

#include <fstream>
#include <sstream>

namespace adlab::io {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& path) { throw ParseError(what, path); }

const json& field(const json& j, const char* name, const std::string& path) {
    if (!j.is_object()) bad("expected a record", path);
    auto it = j.find(name);
    if (it == j.end()) bad("missing field", path + "." + name);
    return *it;
}

const json* optional_field(const json& j, const char* name) {
    auto it = j.find(name);
    return it == j.end() ? nullptr : &*it;
}

const json& array_at(const json& j, const std::string& path) {
    if (!j.is_array()) bad("expected a list", path);
    return j;
}

int64_t int_from(const json& j, const std::string& path) {
    if (!j.is_number_integer()) bad("expected an integer", path);
    if (j.is_number_unsigned() && j.get<uint64_t>() > static_cast<uint64_t>(INT64_MAX))
        bad("integer out of range", path);
    return j.get<int64_t>();
}

uint32_t nat_from(const json& j, const std::string& path) {
    const auto v = int_from(j, path);
    if (v < 0 || v > UINT32_MAX) bad("expected a natural number", path);
    return static_cast<uint32_t>(v);
}

std::string idx(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

} // namespace

json parse_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed record: " + std::string(e.what()),
                         source + ":byte " + std::to_string(e.byte));
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file", path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

Ordinal ordinal_from(const json& j, const std::string& path) {
    if (j.is_number_unsigned()) return Ordinal(j.get<uint64_t>());
    if (!j.is_string()) bad("expected an ordinal literal", path);
    try {
        return parse_ordinal(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(e.what(), path);
    }
}

Cell cell_from(const json& j, const std::string& path) {
    Cell c;
    const auto& lo = field(j, "lo", path);
    if (!(lo.is_string() && lo.get<std::string>() == "-")) c.lo = ordinal_from(lo, path + ".lo");
    c.hi = ordinal_from(field(j, "hi", path), path + ".hi");
    if (auto d = optional_field(j, "dmin")) c.dmin = nat_from(*d, path + ".dmin");
    if (auto d = optional_field(j, "dmax")) {
        if (d->is_string() && d->get<std::string>() == "inf") c.dmax.reset();
        else c.dmax = nat_from(*d, path + ".dmax");
    }
    if (c.dmax && *c.dmax < c.dmin) bad("dmax below dmin", path + ".dmax");
    if (c.lo && !(*c.lo < c.hi)) bad("empty interval: lo must be below hi", path + ".lo");
    return c;
}

DefinableSet set_from(const json& j, const Ordinal& top, const std::string& path) {
    std::vector<Cell> cells;
    const auto& arr = array_at(j, path);
    for (size_t i = 0; i < arr.size(); ++i) {
        auto c = cell_from(arr[i], idx(path, i));
        if (top < c.hi) bad("cell reaches beyond top", idx(path, i) + ".hi");
        cells.push_back(std::move(c));
    }
    return DefinableSet::of_cells(top, cells);
}

Space space_from(const json& j, const std::string& path) {
    const auto top = ordinal_from(field(j, "top", path), path + ".top");
    const json* carrier = optional_field(j, "carrier");
    if (!carrier) return Space::interval(top);
    return Space::with_carrier(top, set_from(*carrier, top, path + ".carrier"));
}

IdealMap ideal_from(const json& j, const std::string& path, const Space* inherited) {
    if (!j.is_object()) bad("expected a record", path);
    Space space;
    if (optional_field(j, "space") || !inherited) space = space_from(field(j, "space", path), path + ".space");
    else space = *inherited;

    std::vector<IdealMap::Piece> pieces;
    if (auto p = optional_field(j, "pieces")) {
        const auto& arr = array_at(*p, path + ".pieces");
        for (size_t i = 0; i < arr.size(); ++i) {
            const auto at = idx(path + ".pieces", i);
            IdealMap::Piece piece{cell_from(field(arr[i], "cell", at), at + ".cell"),
                                  int_from(field(arr[i], "value", at), at + ".value")};
            pieces.push_back(std::move(piece));
        }
    }
    std::vector<IdealMap::Override> overrides;
    if (auto o = optional_field(j, "overrides")) {
        const auto& arr = array_at(*o, path + ".overrides");
        for (size_t i = 0; i < arr.size(); ++i) {
            const auto at = idx(path + ".overrides", i);
            if (!arr[i].is_array() || arr[i].size() != 2) bad("expected [ordinal, value]", at);
            overrides.emplace_back(ordinal_from(arr[i][0], at + "[0]"), int_from(arr[i][1], at + "[1]"));
        }
    }
    return IdealMap::from_pieces(std::move(space), pieces, overrides);
}

DomainModel model_from(const json& j, const std::string& path) {
    const auto space = space_from(field(j, "space", path), path + ".space");
    if (auto kind = optional_field(j, "kind")) {
        if (*kind == "sharp") return model_sharp(space);
        if (*kind == "sp") return model_sp(space);
        bad("expected \"sharp\" or \"sp\"", path + ".kind");
    }
    const auto& arr = array_at(field(j, "chain", path), path + ".chain");
    std::vector<DefinableSet> chain;
    for (size_t i = 0; i < arr.size(); ++i) chain.push_back(set_from(arr[i], space.top, idx(path + ".chain", i)));
    Terminal terminal = Terminal::empty;
    if (auto t = optional_field(j, "terminal")) {
        if (*t == "stalled") terminal = Terminal::stalled;
        else if (*t != "empty") bad("expected \"empty\" or \"stalled\"", path + ".terminal");
    }
    return model_custom(space, std::move(chain), terminal);
}

ColengthModel colength_from(const json& j, const std::string& path) {
    auto space = space_from(field(j, "space", path), path + ".space");
    auto delta = set_from(field(j, "delta", path), space.top, path + ".delta");
    return ColengthModel::make(std::move(space), std::move(delta));
}

std::vector<IdealMap> generators_from(const json& j, const std::string& path) {
    const auto space = space_from(field(j, "space", path), path + ".space");
    const auto& arr = array_at(field(j, "generators", path), path + ".generators");
    std::vector<IdealMap> out;
    for (size_t i = 0; i < arr.size(); ++i) {
        out.push_back(ideal_from(arr[i], idx(path + ".generators", i), &space));
        if (!same_space(out.back().space(), space)) throw SpaceMismatch("generator on a different space");
    }
    return out;
}

json to_json(const Ordinal& x) { return x.to_string(); }

json to_json(const Cell& c) {
    json j;
    j["lo"] = c.lo ? to_json(*c.lo) : json("-");
    j["hi"] = to_json(c.hi);
    j["dmin"] = c.dmin;
    j["dmax"] = c.dmax ? json(*c.dmax) : json("inf");
    return j;
}

json to_json(const DefinableSet& s) {
    json arr = json::array();
    for (const auto& c : s.cells()) arr.push_back(to_json(c));
    return arr;
}

json to_json(const Space& s) {
    json j;
    j["top"] = to_json(s.top);
    j["carrier"] = to_json(s.carrier);
    return j;
}

json to_json(const IdealMap& v) {
    json j;
    j["space"] = to_json(v.space());
    json pieces = json::array();
    for (const auto& p : v.pieces()) pieces.push_back({{"cell", to_json(p.cell)}, {"value", p.value}});
    j["pieces"] = pieces;
    json overrides = json::array();
    for (const auto& [x, value] : v.overrides()) overrides.push_back({to_json(x), value});
    j["overrides"] = overrides;
    return j;
}

json to_json(const DomainModel& m) {
    json j;
    j["space"] = to_json(m.space());
    json chain = json::array();
    for (const auto& c : m.chain()) chain.push_back(to_json(c));
    j["chain"] = chain;
    j["terminal"] = to_string(m.terminal());
    return j;
}

json to_json(const ValidationError& e) {
    json j;
    j["condition"] = e.condition();
    j["stage"] = e.stage() ? json(*e.stage()) : json(nullptr);
    j["witness"] = e.witness();
    return j;
}

json to_json(const StratTuple& t) {
    json arr = json::array();
    for (const auto& c : t.components) arr.push_back(to_json(c));
    return arr;
}

json to_json(const std::vector<lattice::Int>& xs) {
    json arr = json::array();
    for (const auto& x : xs) {
        if (x >= INT64_MIN && x <= INT64_MAX) arr.push_back(x.convert_to<int64_t>());
        else arr.push_back(lattice::to_string(x));
    }
    return arr;
}

json to_json(const ExactnessReport& r) {
    return {{"stage", r.stage},
            {"ranks", {{"total", r.total_rank}, {"kernel", r.kernel_rank}, {"image", r.image_rank}}},
            {"additive", r.additive},
            {"divisors", to_json(r.quotient_divisors)},
            {"torsion_free", r.torsion_free},
            {"kernel_matches_vanishing", r.kernel_matches_vanishing},
            {"verified", r.ok()}};
}

json to_json(const SigmaRReport& r) {
    return {{"ranks",
             {{"total", r.total_rank},
              {"avoiding", r.avoiding_rank},
              {"image", r.image_rank},
              {"quotient", r.quotient_rank}}},
            {"divisors", to_json(r.quotient_divisors)},
            {"torsion_free", r.torsion_free},
            {"critical_points", r.critical_points ? json(*r.critical_points) : json("inf")},
            {"achievable_rank", r.achievable_rank ? json(*r.achievable_rank) : json("unbounded")},
            {"verified", r.ok()}};
}

json to_json(const MiVerdict& v) {
    json j{{"accepted", v.accepted}};
    if (!v.accepted) {
        j["condition"] = std::string(1, v.condition);
        j["stage"] = v.stage;
        j["witness"] = v.witness ? json(v.witness->to_string()) : json(nullptr);
        j["detail"] = v.detail;
    }
    return j;
}

} // namespace adlab::io
