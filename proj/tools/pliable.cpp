// Command-line front door: construct, check, express, certify, realize,
// partition.  Exit codes: 0 = holds / feasible / found, 1 = refuted /
// infeasible / no partition, 2 = bad input or exhausted budget.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pliable/certificate.hpp"
#include "pliable/checkers.hpp"
#include "pliable/config.hpp"
#include "pliable/construct.hpp"
#include "pliable/core.hpp"
#include "pliable/decompose.hpp"
#include "pliable/errors.hpp"
#include "pliable/family.hpp"
#include "pliable/lp.hpp"
#include "pliable/report.hpp"

using nlohmann::ordered_json;
using namespace pliable;

namespace {

constexpr const char* kReportVersion = "0.1.0";

struct OutputOpts {
    std::string out;              // empty = stdout
    std::string format = "text";  // or "structured"
};

void add_output_flags(CLI::App* cmd, OutputOpts& o) {
    cmd->add_option("--out", o.out, "write the result to this file");
    cmd->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"text", "structured"}));
}

// Same-directory temp file plus rename, so readers never see a torn write.
void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        os << content;
        if (!os) throw Error("cannot write " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("cannot move " + tmp + " onto " + path);
    }
}

void emit(const OutputOpts& o, const ordered_json& doc,
          const std::string& text) {
    std::string body =
        o.format == "structured" ? doc.dump(2) + "\n" : text;
    if (o.out.empty()) {
        std::cout << body;
    } else {
        write_file_atomic(o.out, body);
    }
}

ordered_json make_report(const std::string& command, ordered_json inputs,
                         const std::string& outcome) {
    ordered_json doc;
    doc["version"] = kReportVersion;
    doc["command"] = command;
    doc["inputs"] = std::move(inputs);
    doc["outcome"] = outcome;
    return doc;
}

Family load_family(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot open family file " + path);
    nlohmann::json doc;
    try {
        is >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("family file " + path + ": " + e.what());
    }
    std::vector<std::string> warnings;
    Family f = Family::from_json(doc, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    return f;
}

ESet parse_set(const GroundSet& g, const std::string& spec) {
    ESet s = ESet::empty(g);
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long id = 0;
        try {
            id = std::stoul(item, &pos);
        } catch (const std::exception&) {
            throw ParseError("--set: '" + item + "' is not an element id");
        }
        if (pos != item.size()) {
            throw ParseError("--set: '" + item + "' is not an element id");
        }
        if (id >= g.n()) {
            throw ParseError("--set: element " + item + " out of range for k=" +
                             std::to_string(g.k()));
        }
        s.set(static_cast<Element>(id));
    }
    return s;
}

std::string render_terms(const std::vector<SignedTerm>& terms) {
    std::string out;
    for (const SignedTerm& t : terms) {
        if (!out.empty()) out += " ";
        out += (t.sign > 0 ? "+" : "-");
        out += t.set.to_string();
    }
    return out;
}

// ---------------------------------------------------------------- construct

int cmd_construct(int k, const std::string& tiebreak, int max_k,
                  long member_budget, const OutputOpts& o) {
    TieBreak tb =
        tiebreak == "max" ? TieBreak::MaxBitmask : TieBreak::MinBitmask;
    Family f = construct_family(k, tb, max_k, {}, member_budget);

    ordered_json inputs;
    inputs["k"] = k;
    inputs["tiebreak"] = tiebreak;
    ordered_json doc = make_report("construct", std::move(inputs), "ok");
    doc["payload"]["size"] = f.size();
    doc["payload"]["generation_sizes"] = f.generation_sizes();

    std::ostringstream text;
    text << "constructed family: k=" << k << ", " << f.size() << " sets\n";
    std::vector<std::size_t> sizes = f.generation_sizes();
    for (std::size_t gen = 0; gen < sizes.size(); ++gen) {
        text << "generation " << gen << ": " << sizes[gen] << " sets\n";
    }

    if (!o.out.empty()) {
        // --out receives the family file; the report goes to stdout
        write_file_atomic(o.out, f.to_json().dump(2) + "\n");
        doc["payload"]["file"] = o.out;
        std::cout << (o.format == "structured" ? doc.dump(2) + "\n"
                                               : text.str());
    } else {
        doc["payload"]["family"] = f.to_json();
        if (o.format == "structured") {
            std::cout << doc.dump(2) << "\n";
        } else {
            for (std::size_t i = 0; i < f.size(); ++i) {
                text << "gen " << f[i].generation << " "
                     << f[i].set.to_string() << "\n";
            }
            std::cout << text.str();
        }
    }
    return 0;
}

// -------------------------------------------------------------------- check

int cmd_check(const std::string& family_path, const std::string& property,
              const OutputOpts& o) {
    Family f = load_family(family_path);
    ViolationReport report;
    if (property == "pliable") {
        report = is_pliable(f);
    } else if (property == "structural") {
        report = is_structurally_submodular(f);
    } else if (property == "uncrossable") {
        report = is_uncrossable(f);
    } else if (property == "gamma") {
        report = satisfies_gamma(f);
    } else if (property == "lemmas") {
        report = validate_construction(f);
    } else {
        throw ParseError("unknown property '" + property + "'");
    }

    ordered_json inputs;
    inputs["family"] = family_path;
    inputs["property"] = property;
    ordered_json doc =
        make_report("check", std::move(inputs), report.ok ? "ok" : "violated");
    doc["payload"] = report.to_json();
    emit(o, doc, report.to_text());
    return report.ok ? 0 : 1;
}

// ------------------------------------------------------------------ express

int cmd_express(const std::string& family_path, const std::string& set_spec,
                const OutputOpts& o) {
    Family f = load_family(family_path);
    ESet s = parse_set(f.ground(), set_spec);
    std::optional<std::size_t> idx = f.find(s);
    if (!idx) {
        throw FamilyError("express: " + s.to_string() + " is not a member");
    }
    ExpressionTree tree = express(f, *idx);

    std::vector<int> units = unit_indices_in(f.ground(), s);
    int i = units.at(0);
    ExpressionCheck check = verify_expression(tree, s, i, f.ground());
    if (!check.ok) {
        std::string why;
        for (const std::string& r : check.reasons) why += " " + r;
        throw std::logic_error("express emitted an invalid tree:" + why);
    }

    ordered_json inputs;
    inputs["family"] = family_path;
    inputs["set"] = s.elements();
    ordered_json doc = make_report("express", std::move(inputs), "found");
    doc["payload"]["member_index"] = *idx;
    doc["payload"]["coordinate"] = i;
    doc["payload"]["expression"] = tree.to_text();
    doc["payload"]["tree"] = tree.to_json();
    doc["payload"]["verified"] = true;

    std::ostringstream text;
    text << tree.to_text() << "\n"
         << "set: " << s.to_string() << ", coordinate: " << i
         << ", verified: ok\n";
    emit(o, doc, text.str());
    return 0;
}

// ------------------------------------------------------------------ certify

int cmd_certify(int k, const std::string& tiebreak, int max_k,
                long member_budget, const OutputOpts& o) {
    TieBreak tb =
        tiebreak == "max" ? TieBreak::MaxBitmask : TieBreak::MinBitmask;
    Family f = construct_family(k, tb, max_k, {}, member_budget);
    Certificate cert = build_certificate(k);
    ViolationReport verification = verify_certificate(f, cert);

    ordered_json inputs;
    inputs["k"] = k;
    inputs["tiebreak"] = tiebreak;
    ordered_json doc = make_report("certify", std::move(inputs),
                                   verification.ok ? "ok" : "violated");
    doc["payload"]["certificate"] = cert.to_json(&f);
    doc["payload"]["verification"] = verification.to_json();

    std::ostringstream text;
    std::vector<std::pair<ESet, ESet>> pairs = cert.all_pairs();
    text << "certificate k=" << k << ": " << pairs.size()
         << " crossing pairs\n";
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        text << "pair " << (p + 1) << ": A=" << pairs[p].first.to_string()
             << " B=" << pairs[p].second.to_string() << "\n";
    }
    text << "sum: " << render_terms(cert.summed.terms()) << "\n";
    text << verification.to_text();
    emit(o, doc, text.str());
    return verification.ok ? 0 : 1;
}

// ------------------------------------------------------------------ realize

int cmd_realize(const std::string& family_path, const std::string& mode_name,
                const LpLimits& lim, const OutputOpts& o) {
    Family f = load_family(family_path);
    RealizeMode mode = mode_name == "literal" ? RealizeMode::Literal
                                              : RealizeMode::Complemented;

    ordered_json inputs;
    inputs["family"] = family_path;
    inputs["mode"] = mode_name;

    std::variant<LPProblem, TrivialRejection> built =
        build_realizability_lp(f, mode, lim);
    if (const auto* rej = std::get_if<TrivialRejection>(&built)) {
        ordered_json doc =
            make_report("realize", std::move(inputs), "infeasible");
        doc["payload"]["trivial"] = true;
        doc["payload"]["witness"] = rej->witness.elements();
        doc["payload"]["reason"] = rej->reason;
        emit(o, doc,
             "infeasible (trivially): " + rej->reason + "\n");
        return 1;
    }

    const LPProblem& p = std::get<LPProblem>(built);
    LPOutcome outcome = solve_feasibility(p, lim);

    if (const auto* feas = std::get_if<LpFeasible>(&outcome)) {
        ordered_json doc =
            make_report("realize", std::move(inputs), "feasible");
        doc["payload"]["trivial"] = false;
        doc["payload"]["lambda"] = to_string(feas->values[kLambdaVar]);
        ordered_json values = ordered_json::array();
        for (std::size_t v = 1; v < p.variable_count(); ++v) {
            ordered_json entry;
            entry["set"] = p.class_rep(v).elements();
            entry["value"] = to_string(feas->values[v]);
            values.push_back(std::move(entry));
        }
        doc["payload"]["values"] = std::move(values);
        emit(o, doc,
             "feasible: lambda = " + to_string(feas->values[kLambdaVar]) +
                 ", " + std::to_string(p.class_count()) + " classes\n");
        return 0;
    }
    if (const auto* infeas = std::get_if<LpInfeasible>(&outcome)) {
        ordered_json doc =
            make_report("realize", std::move(inputs), "infeasible");
        doc["payload"]["trivial"] = false;
        ordered_json rows = ordered_json::array();
        std::size_t nonzero = 0;
        const std::vector<Rational>& y = infeas->certificate.multipliers;
        for (std::size_t r = 0; r < y.size(); ++r) {
            if (y[r] == 0) continue;
            ++nonzero;
            const LPRow& row = p.rows()[r];
            ordered_json entry;
            entry["row"] = r;
            switch (row.kind) {
                case LPRow::Kind::Submodularity:
                    entry["kind"] = "submodularity";
                    entry["a"] = row.a.elements();
                    entry["b"] = row.b.elements();
                    break;
                case LPRow::Kind::Membership:
                    entry["kind"] = "membership";
                    entry["a"] = row.a.elements();
                    break;
                case LPRow::Kind::NonMembership:
                    entry["kind"] = "non-membership";
                    entry["a"] = row.a.elements();
                    break;
            }
            entry["multiplier"] = to_string(y[r]);
            rows.push_back(std::move(entry));
        }
        doc["payload"]["farkas"] = std::move(rows);
        emit(o, doc,
             "infeasible: Farkas certificate with " +
                 std::to_string(nonzero) + " nonzero multipliers\n");
        return 1;
    }
    const auto& budget = std::get<LpBudgetExhausted>(outcome);
    ordered_json doc =
        make_report("realize", std::move(inputs), "budget-exhausted");
    doc["payload"]["pivots"] = budget.pivots;
    doc["payload"]["detail"] = budget.detail;
    emit(o, doc, "budget exhausted: " + budget.detail + "\n");
    return 2;
}

// ---------------------------------------------------------------- partition

int cmd_partition(const std::string& family_path, int d, long node_budget,
                  const OutputOpts& o) {
    Family f = load_family(family_path);
    std::optional<std::vector<std::vector<std::size_t>>> blocks =
        partition_uncrossable(f, d, node_budget);

    ordered_json inputs;
    inputs["family"] = family_path;
    inputs["d"] = d;

    if (!blocks) {
        ordered_json doc = make_report("partition", std::move(inputs), "none");
        doc["payload"] = ordered_json::object();
        emit(o, doc,
             "no partition into " + std::to_string(d) +
                 " uncrossable blocks exists\n");
        return 1;
    }

    ordered_json doc = make_report("partition", std::move(inputs), "found");
    ordered_json out_blocks = ordered_json::array();
    std::ostringstream text;
    text << "partition into " << blocks->size() << " uncrossable blocks\n";
    for (std::size_t b = 0; b < blocks->size(); ++b) {
        ordered_json block = ordered_json::array();
        text << "block " << b << ":";
        for (std::size_t idx : (*blocks)[b]) {
            block.push_back(f[idx].set.elements());
            text << " " << f[idx].set.to_string();
        }
        text << "\n";
        out_blocks.push_back(std::move(block));
    }
    doc["payload"]["blocks"] = std::move(out_blocks);
    emit(o, doc, text.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pliable set-family toolkit"};
    app.require_subcommand(1);

    int max_k = static_cast<int>(
        limits::env_override("PLIABLE_MAX_K", limits::kDefaultMaxK));
    LpLimits lp;
    lp.max_k = static_cast<int>(
        limits::env_override("PLIABLE_LP_MAX_K", limits::kDefaultLpMaxK));
    lp.max_rows =
        limits::env_override("PLIABLE_LP_MAX_ROWS", limits::kDefaultLpMaxRows);
    lp.pivot_budget = limits::env_override("PLIABLE_LP_PIVOT_BUDGET",
                                           limits::kDefaultLpPivotBudget);
    long node_budget = limits::env_override(
        "PLIABLE_PARTITION_NODE_BUDGET", limits::kDefaultPartitionNodeBudget);
    long member_budget =
        limits::env_override("PLIABLE_CONSTRUCT_MEMBER_BUDGET", 0);

    int k = 0;
    int d = 0;
    std::string tiebreak = "min";
    std::string family_path;
    std::string property;
    std::string mode_name;
    std::string set_spec;
    OutputOpts out_construct, out_check, out_express, out_certify,
        out_realize, out_partition;

    CLI::App* c_construct =
        app.add_subcommand("construct", "build the family for dimension k");
    c_construct->add_option("--k", k, "hypercube dimension")->required();
    c_construct->add_option("--tiebreak", tiebreak, "rule (b)(iii) policy")
        ->check(CLI::IsMember({"min", "max"}));
    c_construct->add_option("--max-k", max_k, "dimension cap");
    c_construct->add_option("--member-budget", member_budget,
                            "abort once this many members are staged");
    add_output_flags(c_construct, out_construct);

    CLI::App* c_check =
        app.add_subcommand("check", "test a family against a property");
    c_check->add_option("--family", family_path, "family file")->required();
    c_check->add_option("--property", property, "property name")
        ->required()
        ->check(CLI::IsMember(
            {"pliable", "structural", "uncrossable", "gamma", "lemmas"}));
    add_output_flags(c_check, out_check);

    CLI::App* c_express = app.add_subcommand(
        "express", "decompose a unit-vector member into coordinate sets");
    c_express->add_option("--family", family_path, "family file")->required();
    c_express->add_option("--set", set_spec, "member, comma-separated ids")
        ->required();
    add_output_flags(c_express, out_express);

    CLI::App* c_certify = app.add_subcommand(
        "certify", "build and verify the impossibility certificate");
    c_certify->add_option("--k", k, "hypercube dimension")->required();
    c_certify->add_option("--tiebreak", tiebreak, "rule (b)(iii) policy")
        ->check(CLI::IsMember({"min", "max"}));
    c_certify->add_option("--max-k", max_k, "dimension cap");
    c_certify->add_option("--member-budget", member_budget,
                          "abort once this many members are staged");
    add_output_flags(c_certify, out_certify);

    CLI::App* c_realize = app.add_subcommand(
        "realize", "decide symmetric submodular realizability exactly");
    c_realize->add_option("--family", family_path, "family file")->required();
    c_realize->add_option("--mode", mode_name, "complement handling")
        ->required()
        ->check(CLI::IsMember({"literal", "complemented"}));
    c_realize->add_option("--lp-max-k", lp.max_k, "LP dimension cap");
    c_realize->add_option("--lp-max-rows", lp.max_rows, "LP row cap");
    c_realize->add_option("--lp-pivot-budget", lp.pivot_budget,
                          "simplex pivot budget");
    add_output_flags(c_realize, out_realize);

    CLI::App* c_partition = app.add_subcommand(
        "partition", "search for a partition into uncrossable blocks");
    c_partition->add_option("--family", family_path, "family file")
        ->required();
    c_partition->add_option("--d", d, "number of blocks")->required();
    c_partition->add_option("--node-budget", node_budget,
                            "search node budget");
    add_output_flags(c_partition, out_partition);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_construct->parsed()) {
            return cmd_construct(k, tiebreak, max_k, member_budget,
                                 out_construct);
        }
        if (c_check->parsed()) {
            return cmd_check(family_path, property, out_check);
        }
        if (c_express->parsed()) {
            return cmd_express(family_path, set_spec, out_express);
        }
        if (c_certify->parsed()) {
            return cmd_certify(k, tiebreak, max_k, member_budget, out_certify);
        }
        if (c_realize->parsed()) {
            return cmd_realize(family_path, mode_name, lp, out_realize);
        }
        if (c_partition->parsed()) {
            return cmd_partition(family_path, d, node_budget, out_partition);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
