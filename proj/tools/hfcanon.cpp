#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "canon/json_io.hpp"
#include "canon/oracle.hpp"

namespace {

using canon::Bijection;
using canon::CanonContext;
using canon::GroundSetPtr;
using canon::LabelingCoset;
using canon::ObjectDag;
using canon::Perm;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw canon::ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CanonOutcome {
    ObjectDag natural_object;   // over the input ground set
    LabelingCoset result;       // Aut * pi
};

CanonOutcome canonize_file(const std::string& kind, const std::string& path, bool oracle,
                           const CanonContext& ctx) {
    std::string text = read_file(path);
    CanonOutcome out;
    if (kind == "hyper" || kind == "graph") {
        canon::ParsedHypergraph h = canon::parse_hypergraph(text, kind == "graph");
        out.natural_object = canon::hypergraph_object(h);
        if (!oracle) out.result = canon::cl_colored_hypergraph(h.edges, h.colors, h.vertices, ctx).coset;
    } else if (kind == "code") {
        canon::Code code = canon::parse_code(text);
        out.natural_object = canon::code_object(code);
        if (!oracle) out.result = canon::cl_code(code, ctx).coset;
    } else if (kind == "group") {
        canon::PermGroup g = canon::parse_group(text);
        out.natural_object = canon::permgroup_object(g);
        if (!oracle) out.result = canon::cl_permgroup(g, ctx).coset;
    } else if (kind == "object") {
        out.natural_object = canon::parse_object(text);
        if (!oracle) out.result = canon::cl_object(
            out.natural_object, LabelingCoset::full(out.natural_object.ground()), ctx).coset;
    } else {
        throw canon::ParseError("unknown kind \"" + kind + "\" (hyper|graph|code|group|object)");
    }
    if (oracle) {
        // Differential path: exhaustive canonical form and automorphisms.
        canon::PermGroup aut = canon::brute_aut(out.natural_object);
        const int n = out.natural_object.ground()->size();
        canon::GroundSetPtr ord = canon::GroundSet::ordered(n);
        bool have = false;
        Perm best_lab;
        ObjectDag best;
        for (const Perm& lab : canon::all_labelings(n)) {
            ObjectDag img = canon::apply_map(out.natural_object,
                                             Bijection{out.natural_object.ground(), ord, lab});
            if (!have || canon::ordered_compare(img, best) < 0) {
                best = std::move(img);
                best_lab = lab;
                have = true;
            }
        }
        out.result = LabelingCoset::make(aut, best_lab);
    }
    return out;
}

std::string canonical_encoding(const CanonOutcome& oc) {
    const auto& g = oc.natural_object.ground();
    ObjectDag cf = canon::apply_map(
        oc.natural_object, Bijection{g, canon::GroundSet::ordered(g->size()), oc.result.rep()});
    return canon::encode(cf);
}

nlohmann::json labeling_json(const GroundSetPtr& g, const Perm& lab) {
    nlohmann::json out = nlohmann::json::object();
    for (int i = 0; i < g->size(); ++i) out[g->name(i)] = lab[i] + 1;
    return out;
}

nlohmann::json perm_json(const GroundSetPtr& g, const Perm& p) {
    nlohmann::json out = nlohmann::json::object();
    for (int i = 0; i < g->size(); ++i) out[g->name(i)] = g->name(p[i]);
    return out;
}

int run_canon(const std::string& kind, const std::string& path, const std::string& emit,
              bool oracle, int threads) {
    CanonContext ctx;
    ctx.threads = threads;
    auto t0 = std::chrono::steady_clock::now();
    CanonOutcome oc = canonize_file(kind, path, oracle, ctx);
    std::string enc = canonical_encoding(oc);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    nlohmann::json report = nlohmann::json::object();
    bool all = emit == "all";
    if (all || emit == "encoding") report["encoding"] = canon::to_hex(enc);
    if (all || emit == "labeling")
        report["labeling"] = labeling_json(oc.natural_object.ground(), oc.result.lexmin());
    if (all || emit == "aut") {
        nlohmann::json gens = nlohmann::json::array();
        for (const Perm& p : oc.result.group().generators())
            gens.push_back(perm_json(oc.natural_object.ground(), p));
        report["aut_generators"] = gens;
        report["aut_order"] = oc.result.group().order().str();
    }
    if (all) report["wall_ms"] = ms;
    std::cout << report.dump() << "\n";
    return 0;
}

int run_iso(const std::string& kind, const std::string& path_a, const std::string& path_b,
            bool oracle, int threads) {
    CanonContext ctx;
    ctx.threads = threads;
    CanonOutcome a = canonize_file(kind, path_a, oracle, ctx);
    CanonOutcome b = canonize_file(kind, path_b, oracle, ctx);
    std::string ea = canonical_encoding(a);
    std::string eb = canonical_encoding(b);
    nlohmann::json report = nlohmann::json::object();
    report["encodingA"] = canon::to_hex(ea);
    report["encodingB"] = canon::to_hex(eb);
    bool iso = ea == eb;
    report["verdict"] = iso ? "isomorphic" : "non-isomorphic";
    std::cout << report.dump() << "\n";
    return iso ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical labelings, forms, and encodings for combinatorial objects"};
    app.require_subcommand(1);

    std::string kind, path, path_b, emit = "all";
    bool oracle = false;
    int threads = 1;

    CLI::App* canon_cmd = app.add_subcommand("canon", "canonize one input file");
    canon_cmd->add_option("kind", kind, "hyper|graph|code|group|object")->required();
    canon_cmd->add_option("file", path, "input JSON file")->required();
    canon_cmd->add_option("--emit", emit, "encoding|labeling|aut|all")
        ->check(CLI::IsMember({"encoding", "labeling", "aut", "all"}));
    canon_cmd->add_flag("--oracle", oracle, "route through the brute-force oracle");
    canon_cmd->add_option("--threads", threads, "parallel branch evaluation");

    CLI::App* iso_cmd = app.add_subcommand("iso", "compare two inputs up to isomorphism");
    iso_cmd->add_option("kind", kind, "hyper|graph|code|group|object")->required();
    iso_cmd->add_option("fileA", path, "first input")->required();
    iso_cmd->add_option("fileB", path_b, "second input")->required();
    iso_cmd->add_flag("--oracle", oracle, "route through the brute-force oracle");
    iso_cmd->add_option("--threads", threads, "parallel branch evaluation");

    try {
        app.parse(argc, argv);
        if (canon_cmd->parsed()) return run_canon(kind, path, emit, oracle, threads);
        return run_iso(kind, path, path_b, oracle, threads);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const canon::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const canon::ParseError& e) {
        std::cerr << "parse error at byte " << e.byte_offset() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
