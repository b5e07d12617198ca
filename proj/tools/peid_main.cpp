// Command-line front end: compile network specs to transition matrices,
// decompose effective information, build causal hypergraphs, analyze
// downward causation and coarse-grainings, and run the bundled demos.
//
// State indexing convention everywhere: joint states are mixed-radix with
// variable 0 most significant. All information quantities are in bits.
// Exit codes: 0 success, 2 usage/validation error, 3 numerical failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "peid/continuous.hpp"
#include "peid/demos.hpp"
#include "peid/downward.hpp"
#include "peid/ei.hpp"
#include "peid/errors.hpp"
#include "peid/graph.hpp"
#include "peid/multiscale.hpp"
#include "peid/network.hpp"
#include "peid/numeric.hpp"
#include "peid/tpm.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw peid::ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw peid::ValidationError("cannot write file: " + path);
    out << content;
}

// Every artifact written by a command embeds one of these.
nlohmann::json make_manifest(const std::string& command,
                             const std::vector<std::pair<std::string, std::string>>& inputs,
                             const nlohmann::json& config, std::uint64_t seed) {
    nlohmann::json manifest;
    manifest["command"] = command;
    nlohmann::json digests = nlohmann::json::object();
    for (const auto& [path, content] : inputs) {
        digests[path] = peid::fnv1a_hex(content);
    }
    manifest["inputs"] = std::move(digests);
    manifest["config"] = config;
    manifest["tool_version"] = kToolVersion;
    manifest["seed"] = seed;
    return manifest;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_file(out_path, content);
    }
}

peid::IndexSubset parse_name_list(const std::string& text, const peid::VariableSchema& schema) {
    peid::IndexSubset subset;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        const int idx = schema.find(tok);
        if (idx < 0) throw peid::ValidationError("unknown variable '" + tok + "'");
        subset.push_back(idx);
    }
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    return subset;
}

// Blocks separated by '/', members by ','.
peid::SourcePartition parse_partition(const std::string& text,
                                      const peid::VariableSchema& schema) {
    peid::SourcePartition partition;
    std::istringstream in(text);
    std::string block;
    while (std::getline(in, block, '/')) {
        if (block.empty()) continue;
        partition.push_back(parse_name_list(block, schema));
    }
    return partition;
}

int run(int argc, char** argv) {
    CLI::App app{
        "peid - effective information decomposition for discrete mechanisms and\n"
        "sampled continuous dynamics.\n\n"
        "Joint states are mixed-radix indexed with variable 0 most significant;\n"
        "all information quantities are reported in bits."};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for randomized paths (default 0)");

    // --- compile ---------------------------------------------------------------
    auto* compile = app.add_subcommand("compile", "compile a network spec into a TPM file");
    std::string compile_in, compile_out;
    bool compile_json = false;
    compile->add_option("spec", compile_in, "network-spec JSON document")->required();
    compile->add_option("-o,--out", compile_out, "output path (default stdout)");
    compile->add_flag("--json", compile_json, "emit the TPM as JSON instead of text");

    // --- decompose -------------------------------------------------------------
    auto* decompose_cmd =
        app.add_subcommand("decompose", "unique/synergy decomposition of a mechanism");
    std::string dec_tpm, dec_sources, dec_targets, dec_partition, dec_out;
    decompose_cmd->add_option("tpm", dec_tpm, "TPM file")->required();
    decompose_cmd->add_option("--sources", dec_sources,
                              "comma-separated source variables (default: all)");
    decompose_cmd->add_option("--targets", dec_targets,
                              "comma-separated target variables (default: all)");
    decompose_cmd->add_option("--partition", dec_partition,
                              "source blocks, e.g. a,b/c (default: singletons)");
    decompose_cmd->add_option("-o,--out", dec_out, "output path (default stdout)");

    // --- graph -----------------------------------------------------------------
    auto* graph_cmd = app.add_subcommand("graph", "build the EI causal hypergraph");
    std::string graph_tpm, graph_out, graph_format = "json", graph_targets = "singletons";
    double graph_epsilon = peid::kDefaultEdgeEpsilon;
    int graph_max_order = 3;
    std::uint64_t graph_budget = 1'000'000;
    bool graph_pairwise_only = false;
    graph_cmd->add_option("tpm", graph_tpm, "TPM file")->required();
    graph_cmd->add_option("--epsilon", graph_epsilon, "edge existence threshold in bits");
    graph_cmd->add_option("--max-order", graph_max_order, "largest source subset size");
    graph_cmd->add_option("--target-mode", graph_targets, "singletons | all-subsets");
    graph_cmd->add_option("--budget", graph_budget, "cap on evaluated source/target pairs");
    graph_cmd->add_flag("--pairwise-only", graph_pairwise_only, "skip hyperedge enumeration");
    graph_cmd->add_option("--format", graph_format, "json | dot");
    graph_cmd->add_option("-o,--out", graph_out, "output path (default stdout)");

    // --- downward ----------------------------------------------------------------
    auto* down_cmd = app.add_subcommand("downward", "downward causation reports");
    std::string down_tpm, down_out;
    int down_target = -1;
    bool down_all = false;
    down_cmd->add_option("tpm", down_tpm, "TPM file")->required();
    down_cmd->add_option("--target", down_target, "target variable index");
    down_cmd->add_flag("--all", down_all, "report every target (table on stdout)");
    down_cmd->add_option("-o,--out", down_out, "output path (default stdout)");

    // --- multiscale ----------------------------------------------------------------
    auto* multi_cmd = app.add_subcommand("multiscale", "coarse-graining reports and search");
    std::string multi_tpm, multi_map, multi_search, multi_out;
    int multi_top = 8;
    std::uint64_t multi_budget = 1'000'000;
    multi_cmd->add_option("tpm", multi_tpm, "TPM file")->required();
    multi_cmd->add_option("--map", multi_map, "coarse-graining map JSON file");
    multi_cmd->add_option("--search", multi_search,
                          "state-lumpings | variable-groupings (EI-ranked search)");
    multi_cmd->add_option("--top", multi_top, "ranked results to report");
    multi_cmd->add_option("--budget", multi_budget, "candidate budget for the search");
    multi_cmd->add_option("-o,--out", multi_out, "output path (default stdout)");

    // --- demo -------------------------------------------------------------------------
    auto* demo_cmd = app.add_subcommand("demo", "run a bundled benchmark demo");
    std::string demo_name, demo_out;
    demo_cmd->add_option("name", demo_name,
                         "xor-and | motif | multiscale-6node | multiscale-nonopt | "
                         "downward | phi-bench | alpha-sweep")
        ->required();
    demo_cmd->add_option("-o,--out", demo_out, "write the full report JSON here");

    // --- sweep ------------------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "alpha sweep of the coupled-sine family");
    std::string sweep_out, sweep_csv, sweep_correction = "none";
    std::vector<double> sweep_alphas = {0.0, 0.25, 0.5, 0.75, 1.0};
    double sweep_sigma = 0.05;
    std::size_t sweep_draws = 100'000;
    sweep_cmd->add_option("--alphas", sweep_alphas, "alpha grid");
    sweep_cmd->add_option("--sigma", sweep_sigma, "noise scale sigma_eps");
    sweep_cmd->add_option("--draws", sweep_draws, "samples per alpha (>= 10000)");
    sweep_cmd->add_option("--correction", sweep_correction, "none | wishart");
    sweep_cmd->add_option("-o,--out", sweep_out, "JSON output path (default stdout)");
    sweep_cmd->add_option("--csv", sweep_csv, "also write a CSV table here");

    CLI11_PARSE(app, argc, argv);

    if (compile->parsed()) {
        const std::string text = read_file(compile_in);
        const peid::BooleanNetwork net = peid::parse_network(text);
        const peid::TransitionMatrix tpm = peid::compile_tpm(net);
        const nlohmann::json manifest =
            make_manifest("compile", {{compile_in, text}},
                          {{"json", compile_json}}, seed);
        if (compile_json) {
            nlohmann::json doc = peid::tpm_to_json(tpm);
            doc["manifest"] = manifest;
            emit(compile_out, doc.dump(2) + "\n");
        } else {
            emit(compile_out, peid::tpm_to_text(tpm, {"manifest: " + manifest.dump()}));
        }
        return 0;
    }

    if (decompose_cmd->parsed()) {
        const std::string text = read_file(dec_tpm);
        const peid::TransitionMatrix tpm = peid::parse_tpm_document(text);
        peid::IndexSubset sources;
        if (dec_sources.empty()) {
            for (int i = 0; i < tpm.source().size(); ++i) sources.push_back(i);
        } else {
            sources = parse_name_list(dec_sources, tpm.source());
        }
        peid::IndexSubset targets;
        if (dec_targets.empty()) {
            for (int i = 0; i < tpm.target().size(); ++i) targets.push_back(i);
        } else {
            targets = parse_name_list(dec_targets, tpm.target());
        }
        const peid::SourcePartition partition =
            dec_partition.empty() ? peid::singleton_partition(sources)
                                  : parse_partition(dec_partition, tpm.source());
        const peid::DecompositionReport report =
            peid::decompose(tpm, sources, partition, targets);
        nlohmann::json doc = peid::decomposition_to_json(report, tpm.source());
        doc["manifest"] = make_manifest(
            "decompose", {{dec_tpm, text}},
            {{"sources", dec_sources}, {"targets", dec_targets}, {"partition", dec_partition}},
            seed);
        emit(dec_out, doc.dump(2) + "\n");
        return 0;
    }

    if (graph_cmd->parsed()) {
        const std::string text = read_file(graph_tpm);
        const peid::TransitionMatrix tpm = peid::parse_tpm_document(text);
        peid::CausalHypergraph graph;
        if (graph_pairwise_only) {
            graph = peid::build_pairwise_graph(tpm, graph_epsilon);
        } else {
            peid::HypergraphOptions options;
            options.epsilon = graph_epsilon;
            options.max_source_order = graph_max_order;
            options.max_pairs = graph_budget;
            if (graph_targets == "singletons") {
                options.target_mode = peid::TargetMode::Singletons;
            } else if (graph_targets == "all-subsets") {
                options.target_mode = peid::TargetMode::AllSubsets;
            } else {
                throw peid::ValidationError("unknown target mode '" + graph_targets + "'");
            }
            graph = peid::build_hypergraph(tpm, options);
        }
        const nlohmann::json manifest = make_manifest(
            "graph", {{graph_tpm, text}},
            {{"epsilon", graph_epsilon},
             {"max_order", graph_max_order},
             {"target_mode", graph_targets},
             {"pairwise_only", graph_pairwise_only}},
            seed);
        if (graph_format == "dot") {
            emit(graph_out, peid::graph_to_dot(graph, {"manifest: " + manifest.dump()}));
        } else if (graph_format == "json") {
            nlohmann::json doc = peid::graph_to_json(graph);
            doc["manifest"] = manifest;
            emit(graph_out, doc.dump(2) + "\n");
        } else {
            throw peid::ValidationError("unknown format '" + graph_format + "'");
        }
        return 0;
    }

    if (down_cmd->parsed()) {
        const std::string text = read_file(down_tpm);
        const peid::TransitionMatrix tpm = peid::parse_tpm_document(text);
        if (!down_all && down_target < 0) {
            throw peid::ValidationError("downward: pass --target j or --all");
        }
        const nlohmann::json manifest =
            make_manifest("downward", {{down_tpm, text}},
                          {{"target", down_target}, {"all", down_all}}, seed);
        if (down_all) {
            nlohmann::json reports = nlohmann::json::array();
            std::string table = "target  dc        flexibility  env_synergy\n";
            for (int j = 0; j < tpm.target().size(); ++j) {
                const peid::DownwardReport r = peid::dc_decomposition(tpm, j);
                reports.push_back(peid::downward_report_to_json(r, tpm.source()));
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%-7s %-9.6f %-12.6f %-9.6f\n",
                              tpm.target().name(j).c_str(), r.dc, r.flexibility,
                              r.env_synergy);
                table += buf;
            }
            nlohmann::json doc;
            doc["reports"] = std::move(reports);
            doc["manifest"] = manifest;
            if (down_out.empty()) {
                std::cout << table;
            } else {
                write_file(down_out, doc.dump(2) + "\n");
                std::cout << table;
            }
        } else {
            const peid::DownwardReport r = peid::dc_decomposition(tpm, down_target);
            nlohmann::json doc = peid::downward_report_to_json(r, tpm.source());
            doc["manifest"] = manifest;
            emit(down_out, doc.dump(2) + "\n");
        }
        return 0;
    }

    if (multi_cmd->parsed()) {
        const std::string text = read_file(multi_tpm);
        const peid::TransitionMatrix tpm = peid::parse_tpm_document(text);
        if (multi_map.empty() == multi_search.empty()) {
            throw peid::ValidationError("multiscale: pass exactly one of --map or --search");
        }
        if (!multi_map.empty()) {
            const std::string map_text = read_file(multi_map);
            const peid::CoarseGrainingMap map = peid::load_map_file(multi_map);
            const peid::MultiscaleReport report = peid::multiscale_report(tpm, map);
            nlohmann::json doc = peid::multiscale_report_to_json(report, map);
            doc["manifest"] = make_manifest(
                "multiscale", {{multi_tpm, text}, {multi_map, map_text}}, {}, seed);
            emit(multi_out, doc.dump(2) + "\n");
        } else {
            peid::SearchSpec spec;
            if (multi_search == "state-lumpings") {
                spec.family = peid::SearchSpec::Family::StateLumpings;
            } else if (multi_search == "variable-groupings") {
                spec.family = peid::SearchSpec::Family::VariableGroupings;
            } else {
                throw peid::ValidationError("unknown search family '" + multi_search + "'");
            }
            spec.top_k = multi_top;
            spec.budget = multi_budget;
            const auto results = peid::search_coarse_graining(tpm, spec);
            nlohmann::json ranked = nlohmann::json::array();
            for (const auto& r : results) {
                ranked.push_back(
                    {{"macro_ei", r.macro_ei}, {"map", peid::map_to_json(r.map)}});
            }
            nlohmann::json doc;
            doc["family"] = multi_search;
            doc["ranked"] = std::move(ranked);
            doc["manifest"] = make_manifest("multiscale", {{multi_tpm, text}},
                                            {{"search", multi_search},
                                             {"top", multi_top},
                                             {"budget", multi_budget}},
                                            seed);
            emit(multi_out, doc.dump(2) + "\n");
        }
        return 0;
    }

    if (demo_cmd->parsed()) {
        const peid::DemoResult result = peid::run_demo(demo_name, seed);
        std::cout << peid::demo_result_table(result);
        if (!demo_out.empty()) {
            nlohmann::json doc = peid::demo_result_to_json(result);
            doc["manifest"] = make_manifest("demo", {}, {{"name", demo_name}}, seed);
            write_file(demo_out, doc.dump(2) + "\n");
        }
        if (!result.all_pass) {
            throw peid::NumericalError("demo '" + demo_name + "' has failing checks");
        }
        return 0;
    }

    if (sweep_cmd->parsed()) {
        peid::SweepConfig config;
        config.alphas = sweep_alphas;
        config.sigma_eps = sweep_sigma;
        config.draws = sweep_draws;
        config.seed = seed;
        if (sweep_correction == "wishart") {
            config.correction = peid::BiasCorrection::Wishart;
        } else if (sweep_correction != "none") {
            throw peid::ValidationError("unknown correction '" + sweep_correction + "'");
        }
        const peid::SweepResult result = peid::run_alpha_sweep(config);
        const nlohmann::json manifest = make_manifest("sweep", {},
                                                      {{"sigma", sweep_sigma},
                                                       {"draws", sweep_draws},
                                                       {"correction", sweep_correction}},
                                                      seed);
        nlohmann::json doc = peid::sweep_to_json(result);
        doc["manifest"] = manifest;
        emit(sweep_out, doc.dump(2) + "\n");
        if (!sweep_csv.empty()) {
            write_file(sweep_csv,
                       peid::sweep_to_csv(result) + "# manifest: " + manifest.dump() + "\n");
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const peid::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const peid::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
