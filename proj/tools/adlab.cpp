#include "adlab/colength.hpp"
#include "adlab/domain_model.hpp"
#include "adlab/errors.hpp"
#include "adlab/group_lab.hpp"
#include "adlab/ideal_map.hpp"
#include "adlab/io.hpp"
#include "adlab/suites.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace adlab;
using io::json;

namespace {

enum Exit { ok = 0, parse_failure = 2, validation_failure = 3, witness_found = 4 };

struct Output {
    bool machine = false;

    void record(const json& j) const {
        if (machine) std::cout << j.dump() << '\n';
    }
    void text(const std::string& line) const {
        if (!machine) std::cout << line << '\n';
    }
    int error(Exit code, const std::string& kind, const std::string& message, json extra = json::object()) const {
        extra["error"] = kind;
        extra["message"] = message;
        if (machine) std::cout << extra.dump() << '\n';
        else std::cerr << "error (" << kind << "): " << message << '\n';
        return code;
    }
};

std::string render(const DefinableSet& s) { return s.to_string(); }

int cmd_factor(const Output& out, const std::string& path) {
    const auto v = io::ideal_from(io::read_file(path));
    try {
        const auto factors = radical_factor(v);
        json arr = json::array();
        for (size_t i = 0; i < factors.size(); ++i) {
            arr.push_back(io::to_json(factors[i]));
            out.text("X_" + std::to_string(i + 1) + " = " + render(factors[i]));
        }
        if (factors.empty()) out.text("no factors (unit ideal)");
        out.record({{"factors", arr}, {"count", factors.size()}});
        return ok;
    } catch (const NotContinuous& e) {
        return out.error(witness_found, "not-continuous", e.what(),
                         {{"level", e.level()}, {"witness", io::to_json(e.witness())}});
    }
}

void report_model(const Output& out, const DomainModel& m) {
    const auto st = strata(m);
    json strata_json = json::array();
    for (size_t i = 0; i < m.chain().size(); ++i) {
        out.text("C_" + std::to_string(i) + " = " + render(m.chain()[i]));
        strata_json.push_back(io::to_json(st[i]));
    }
    for (size_t i = 0; i < st.size(); ++i) out.text("S_" + std::to_string(i) + " = " + render(st[i]));
    out.text("terminal: " + to_string(m.terminal()));
    out.text("sp_rank: " + std::to_string(sp_rank(m)));
    out.text(std::string("sp_scattered: ") + (is_sp_scattered(m) ? "yes" : "no"));
    auto j = io::to_json(m);
    j["strata"] = strata_json;
    j["sp_rank"] = sp_rank(m);
    j["sp_scattered"] = is_sp_scattered(m);
    out.record(j);
}

int cmd_model(const Output& out, const std::string& space_path, bool sharp, bool sp,
              const std::string& chain_path, const std::string& terminal) {
    const auto space = io::space_from(io::read_file(space_path));
    DomainModel m;
    if (!chain_path.empty()) {
        const auto j = io::read_file(chain_path);
        const auto& arr = j.is_object() && j.contains("chain") ? j["chain"] : j;
        if (!arr.is_array()) throw ParseError("expected a list of sets", "chain");
        std::vector<DefinableSet> chain;
        for (size_t i = 0; i < arr.size(); ++i)
            chain.push_back(io::set_from(arr[i], space.top, "chain[" + std::to_string(i) + "]"));
        m = model_custom(space, std::move(chain), terminal == "stalled" ? Terminal::stalled : Terminal::empty);
    } else if (sp) {
        m = model_sp(space);
    } else {
        (void)sharp;
        m = model_sharp(space);
    }
    report_model(out, m);
    return ok;
}

int cmd_rank(const Output& out, const std::string& path) {
    const auto m = io::model_from(io::read_file(path));
    out.text("sp_rank: " + std::to_string(sp_rank(m)));
    out.text(std::string("sp_scattered: ") + (is_sp_scattered(m) ? "yes" : "no"));
    out.record({{"sp_rank", sp_rank(m)}, {"sp_scattered", is_sp_scattered(m)}, {"sp_domain", is_sp_domain(m)}});
    return ok;
}

int cmd_decompose(const Output& out, const std::string& model_path, const std::string& ideal_path) {
    const auto m = io::model_from(io::read_file(model_path));
    const auto v = io::ideal_from(io::read_file(ideal_path), "ideal", &m.space());
    try {
        const auto t = unglue(m, v);
        for (size_t i = 0; i < t.components.size(); ++i)
            out.text("t_" + std::to_string(i) + " = " + t.components[i].to_string());
        const auto verdict = mi_check(m, v);
        out.text(verdict.accepted ? "mi_check: accepted"
                                  : std::string("mi_check: rejected by (") + verdict.condition + ") at stage " +
                                        std::to_string(verdict.stage) + ": " + verdict.detail);
        out.record({{"components", io::to_json(t)}, {"mi_check", io::to_json(verdict)}});
        return ok;
    } catch (const UnglueError& e) {
        return out.error(witness_found, "unglue", e.what(),
                         {{"stratum", e.stratum()}, {"witness", io::to_json(e.witness())}});
    }
}

int cmd_member(const Output& out, const std::string& gens_path, const std::string& target_path) {
    const auto gens_json = io::read_file(gens_path);
    const auto gens = io::generators_from(gens_json);
    const auto space = io::space_from(gens_json["space"]);
    const auto h = io::ideal_from(io::read_file(target_path), "target", &space);
    const auto basis = subgroup_basis(gens);
    const auto r = subgroup_member(gens, h);
    out.text("rank: " + std::to_string(basis.rank));
    std::string divisors;
    for (const auto& d : basis.divisors) divisors += (divisors.empty() ? "" : " ") + lattice::to_string(d);
    out.text("divisors: " + (divisors.empty() ? std::string("-") : divisors));
    out.text(std::string("member: ") + (r.member ? "yes" : "no"));
    if (r.member) {
        std::string cert;
        for (const auto& c : r.certificate) cert += (cert.empty() ? "" : " ") + lattice::to_string(c);
        out.text("certificate: " + cert);
    }
    out.record({{"ranks", {{"span", basis.rank}}},
                {"divisors", io::to_json(basis.divisors)},
                {"member", r.member},
                {"certificate", io::to_json(r.certificate)}});
    return ok;
}

int cmd_sigma_r(const Output& out, const std::string& model_path, const std::string& gens_path) {
    const auto m = io::model_from(io::read_file(model_path));
    const auto gens = io::generators_from(io::read_file(gens_path));
    const auto r = sigma_r_report(m, gens);
    out.text("total rank: " + std::to_string(r.total_rank));
    out.text("avoiding C_1: " + std::to_string(r.avoiding_rank));
    out.text("restriction image rank: " + std::to_string(r.image_rank));
    out.text("quotient rank: " + std::to_string(r.quotient_rank));
    out.text(std::string("torsion free: ") + (r.torsion_free ? "yes" : "no"));
    out.text("critical points: " + (r.critical_points ? std::to_string(*r.critical_points) : std::string("infinite")));
    if (r.achievable_rank) out.text("achievable rank: " + std::to_string(*r.achievable_rank));
    out.record(io::to_json(r));
    return r.ok() ? ok : witness_found;
}

int cmd_colength(const Output& out, const std::string& cm_path, const std::string& ideal_path,
                 const std::string& model_path, std::optional<size_t> stage) {
    const auto cm = io::colength_from(io::read_file(cm_path));
    const auto v = io::ideal_from(io::read_file(ideal_path), "ideal", &cm.space);
    json j{{"colength", colength(cm, v).to_string()}};
    out.text("tau = " + colength(cm, v).to_string());
    if (stage) {
        if (model_path.empty()) throw PreconditionError("--stage needs --model");
        const auto m = io::model_from(io::read_file(model_path));
        const auto t = colength_stage(cm, m, *stage, v);
        out.text("tau at stage " + std::to_string(*stage) + " = " + t.to_string());
        j["stage"] = *stage;
        j["colength_stage"] = t.to_string();
        j["length_identity"] = check_length_identity(cm, m, *stage, v);
    }
    out.record(j);
    return ok;
}

int cmd_suite(const Output& out, const std::string& name, uint64_t seed, size_t count) {
    if (!is_suite(name)) {
        std::string known;
        for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
        return out.error(parse_failure, "unknown-suite", "unknown suite '" + name + "' (known: " + known + ")");
    }
    const auto r = run_suite(name, seed, count);
    for (const auto& f : r.failures) {
        out.record({{"case", f.index}, {"witness", f.witness}});
        out.text("case " + std::to_string(f.index) + ": " + f.witness);
    }
    out.record({{"suite", r.name}, {"seed", r.seed}, {"cases", r.cases}, {"skipped", r.skipped},
                {"failures", r.failures.size()}});
    out.text(r.name + ": " + std::to_string(r.cases) + " cases, " + std::to_string(r.skipped) + " skipped, " +
             std::to_string(r.failures.size()) + " failures");
    return r.ok() ? ok : witness_found;
}

int cmd_demo(const Output& out, uint64_t seed, size_t count) {
    const auto m = model_sharp(Space::interval(Ordinal::omega_pow(1)));
    const auto ex = order_mismatch_demo(m, seed, count);
    out.text("t1 = " + ex.t1.components[0].to_string() + " | " + ex.t1.components[1].to_string());
    out.text("t2 = " + ex.t2.components[0].to_string() + " | " + ex.t2.components[1].to_string());
    out.text(std::string("incomparable: ") + (ex.incomparable ? "yes" : "no"));
    out.text(std::string("glue(t1) >= glue(t2): ") + (ex.glued_not_above ? "no" : "yes"));
    out.text(std::string("glue(t1) rejected by mi_check: ") + (ex.glued_t1_rejected ? "yes" : "no"));
    size_t dominated = 0;
    json cases = json::array();
    for (const auto& c : ex.cases) {
        dominated += c.dominates;
        cases.push_back({{"v", c.v.to_string()}, {"witness", c.witness.to_string()}, {"dominates", c.dominates}});
    }
    out.text("accepted maps dominating some chi({y}): " + std::to_string(dominated) + "/" +
             std::to_string(ex.cases.size()));
    out.record({{"t1", io::to_json(ex.t1)},
                {"t2", io::to_json(ex.t2)},
                {"incomparable", ex.incomparable},
                {"glued_not_above", ex.glued_not_above},
                {"glued_t1_rejected", ex.glued_t1_rejected},
                {"cases", cases},
                {"verified", ex.ok()}});
    return ex.ok() ? ok : witness_found;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ideal maps on ordinal spaces: factorization, critical chains, group ranks, colengths"};
    app.require_subcommand(1);

    std::string format = "text";
    uint64_t seed = 42;
    size_t count = 100;
    std::optional<size_t> stage;
    app.add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--seed", seed, "seed for randomized runs");
    app.add_option("--count", count, "number of random cases")->check(CLI::PositiveNumber);
    app.add_option("--stage", stage, "chain stage");

    std::string a, b, chain_path, model_path, terminal = "empty";
    bool sharp = false, sp = false;

    auto* factor = app.add_subcommand("factor", "radical factorization of an ideal");
    factor->add_option("ideal", a)->required();
    auto* model = app.add_subcommand("model", "build and validate a critical chain");
    model->add_option("space", a)->required();
    auto* sharp_flag = model->add_flag("--sharp", sharp, "derived-set chain (default)");
    auto* sp_flag = model->add_flag("--sp", sp, "no critical points");
    auto* chain_opt = model->add_option("--chain", chain_path, "file with an explicit chain");
    model->add_option("--terminal", terminal)->check(CLI::IsMember({"empty", "stalled"}));
    sharp_flag->excludes(sp_flag)->excludes(chain_opt);
    sp_flag->excludes(chain_opt);
    auto* rank = app.add_subcommand("rank", "sp rank of a model");
    rank->add_option("model", a)->required();
    auto* decompose = app.add_subcommand("decompose", "split a map into stratum components");
    decompose->add_option("model", a)->required();
    decompose->add_option("ideal", b)->required();
    auto* member = app.add_subcommand("member", "subgroup basis and membership");
    member->add_option("generators", a)->required();
    member->add_option("target", b)->required();
    auto* sigma = app.add_subcommand("sigma-r", "restriction to the critical set");
    sigma->add_option("model", a)->required();
    sigma->add_option("generators", b)->required();
    auto* col = app.add_subcommand("colength", "singular colength of an ideal");
    col->add_option("colength", a)->required();
    col->add_option("ideal", b)->required();
    col->add_option("--model", model_path);
    auto* suite = app.add_subcommand("suite", "run a property suite");
    suite->add_option("name", a)->required();
    auto* demo = app.add_subcommand("demo-order-mismatch", "order mismatch on the sharp model of [0,w]");

    // Global options are also accepted after the subcommand.
    for (auto* sub : {factor, model, rank, decompose, member, sigma, col, suite, demo}) sub->fallthrough();

    Output out;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        out.machine = format == "machine";
        return out.error(parse_failure, "usage", e.what());
    }
    out.machine = format == "machine";

    try {
        if (*factor) return cmd_factor(out, a);
        if (*model) return cmd_model(out, a, sharp, sp, chain_path, terminal);
        if (*rank) return cmd_rank(out, a);
        if (*decompose) return cmd_decompose(out, a, b);
        if (*member) return cmd_member(out, a, b);
        if (*sigma) return cmd_sigma_r(out, a, b);
        if (*col) return cmd_colength(out, a, b, model_path, stage);
        if (*suite) return cmd_suite(out, a, seed, count);
        if (*demo) return cmd_demo(out, seed, count);
    } catch (const ParseError& e) {
        return out.error(parse_failure, "parse", e.what(), {{"field", e.token()}});
    } catch (const ValidationError& e) {
        return out.error(validation_failure, "validation", e.what(), io::to_json(e));
    } catch (const SpaceMismatch& e) {
        return out.error(validation_failure, "space-mismatch", e.what());
    } catch (const PreconditionError& e) {
        return out.error(validation_failure, "precondition", e.what());
    } catch (const std::exception& e) {
        return out.error(validation_failure, "internal", e.what());
    }
    return ok;
}
