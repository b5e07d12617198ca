#include "peid/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "peid/ei.hpp"
#include "peid/errors.hpp"

namespace peid {

namespace {

void require_square(const TransitionMatrix& tpm, const char* op) {
    if (!tpm.is_square_system()) {
        throw ValidationError(std::string(op) + ": requires a square full-system mechanism");
    }
}

// Subsets of {0..n-1} with the given size, lexicographic.
void for_each_subset(int n, int size, const std::function<void(const IndexSubset&)>& fn) {
    IndexSubset current(static_cast<std::size_t>(size));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == size) {
            fn(current);
            return;
        }
        for (int i = start; i <= n - (size - depth); ++i) {
            current[static_cast<std::size_t>(depth)] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

std::string format_weight(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", w);
    return std::string(buf);
}

} // namespace

CausalHypergraph build_pairwise_graph(const TransitionMatrix& tpm, double epsilon) {
    require_square(tpm, "build_pairwise_graph");
    CausalHypergraph graph;
    graph.schema = tpm.source();
    graph.epsilon = epsilon;
    const int n = tpm.source().size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double w = unique_ei(tpm, {i}, {j});
            if (w > epsilon) graph.edges.push_back({i, j, w});
        }
    }
    return graph;
}

CausalHypergraph build_hypergraph(const TransitionMatrix& tpm, const HypergraphOptions& options) {
    require_square(tpm, "build_hypergraph");
    if (options.max_source_order < 2) {
        throw ValidationError("build_hypergraph: max_source_order must be >= 2");
    }
    CausalHypergraph graph = build_pairwise_graph(tpm, options.epsilon);
    const int n = tpm.source().size();
    const int max_order = std::min(options.max_source_order, n);

    std::vector<IndexSubset> target_sets;
    if (options.target_mode == TargetMode::Singletons) {
        for (int j = 0; j < n; ++j) target_sets.push_back({j});
    } else {
        for (int size = 1; size <= n; ++size) {
            for_each_subset(n, size, [&](const IndexSubset& b) { target_sets.push_back(b); });
        }
    }

    std::uint64_t evaluated = 0;
    for (int order = 2; order <= max_order; ++order) {
        for_each_subset(n, order, [&](const IndexSubset& sources) {
            for (const auto& targets : target_sets) {
                if (++evaluated > options.max_pairs) {
                    throw NumericalError(
                        "build_hypergraph: evaluation budget exceeded (" +
                        std::to_string(options.max_pairs) + " source/target pairs)");
                }
                const double w =
                    synergy(tpm, sources, singleton_partition(sources), targets);
                if (w > options.epsilon) {
                    graph.hyperedges.push_back({sources, targets, w});
                }
            }
        });
    }
    // Enumeration order is already lexicographic by (order, sources, targets);
    // keep the canonical sort anyway so merged or hand-built graphs compare.
    std::sort(graph.hyperedges.begin(), graph.hyperedges.end(),
              [](const SynHyperedge& a, const SynHyperedge& b) {
                  if (a.sources != b.sources) return a.sources < b.sources;
                  return a.targets < b.targets;
              });
    return graph;
}

nlohmann::json graph_to_json(const CausalHypergraph& graph) {
    nlohmann::json doc;
    doc["version"] = 1;
    doc["variables"] = graph.schema.names();
    doc["cardinalities"] = graph.schema.cardinalities();
    doc["epsilon"] = graph.epsilon;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : graph.edges) {
        edges.push_back({{"src", e.source}, {"dst", e.target}, {"bits", e.weight}});
    }
    doc["edges"] = std::move(edges);
    nlohmann::json hyper = nlohmann::json::array();
    for (const auto& h : graph.hyperedges) {
        hyper.push_back({{"srcs", h.sources}, {"dsts", h.targets}, {"bits", h.weight}});
    }
    doc["hyperedges"] = std::move(hyper);
    return doc;
}

CausalHypergraph graph_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || doc.value("version", 0) != 1) {
        throw ValidationError("graph json: expected version 1 object");
    }
    CausalHypergraph graph;
    std::vector<std::string> names = doc.at("variables").get<std::vector<std::string>>();
    std::vector<int> cards;
    if (doc.contains("cardinalities")) {
        cards = doc.at("cardinalities").get<std::vector<int>>();
    } else {
        cards.assign(names.size(), 2);
    }
    graph.schema = VariableSchema(std::move(names), std::move(cards));
    graph.epsilon = doc.value("epsilon", kDefaultEdgeEpsilon);
    for (const auto& e : doc.at("edges")) {
        graph.edges.push_back(
            {e.at("src").get<int>(), e.at("dst").get<int>(), e.at("bits").get<double>()});
    }
    for (const auto& h : doc.at("hyperedges")) {
        graph.hyperedges.push_back({h.at("srcs").get<IndexSubset>(),
                                    h.at("dsts").get<IndexSubset>(),
                                    h.at("bits").get<double>()});
    }
    for (std::size_t i = 1; i < graph.edges.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (graph.edges[i].source == graph.edges[j].source &&
                graph.edges[i].target == graph.edges[j].target) {
                throw ValidationError("graph json: duplicate edge key");
            }
        }
    }
    for (std::size_t i = 1; i < graph.hyperedges.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (graph.hyperedges[i].sources == graph.hyperedges[j].sources &&
                graph.hyperedges[i].targets == graph.hyperedges[j].targets) {
                throw ValidationError("graph json: duplicate hyperedge key");
            }
        }
    }
    return graph;
}

std::string graph_to_dot(const CausalHypergraph& graph,
                         const std::vector<std::string>& comment_lines) {
    const int n = graph.schema.size();
    double max_weight = 0.0;
    for (const auto& e : graph.edges) max_weight = std::max(max_weight, e.weight);
    for (const auto& h : graph.hyperedges) max_weight = std::max(max_weight, h.weight);
    if (max_weight <= 0.0) max_weight = 1.0;
    auto penwidth = [&](double w) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", 0.5 + 3.0 * w / max_weight);
        return std::string(buf);
    };

    std::string out;
    for (const auto& c : comment_lines) out += "// " + c + "\n";
    out += "digraph peid {\n";
    out += "  rankdir=LR;\n";
    out += "  subgraph cluster_t {\n    label=\"t\";\n";
    for (int i = 0; i < n; ++i) {
        out += "    s" + std::to_string(i) + " [label=\"" + graph.schema.name(i) + "\"];\n";
    }
    out += "  }\n";
    out += "  subgraph cluster_t1 {\n    label=\"t+1\";\n";
    for (int i = 0; i < n; ++i) {
        out += "    d" + std::to_string(i) + " [label=\"" + graph.schema.name(i) + "'\"];\n";
    }
    out += "  }\n";
    for (const auto& e : graph.edges) {
        out += "  s" + std::to_string(e.source) + " -> d" + std::to_string(e.target) +
               " [penwidth=" + penwidth(e.weight) + ", label=\"" + format_weight(e.weight) +
               "\"];\n";
    }
    int hyper_id = 0;
    for (const auto& h : graph.hyperedges) {
        const std::string node = "syn" + std::to_string(hyper_id++);
        out += "  " + node + " [shape=circle, style=dashed, label=\"" +
               format_weight(h.weight) + "\"];\n";
        for (int s : h.sources) {
            out += "  s" + std::to_string(s) + " -> " + node + " [style=dashed, dir=none];\n";
        }
        for (int t : h.targets) {
            out += "  " + node + " -> d" + std::to_string(t) + " [style=dashed];\n";
        }
    }
    out += "}\n";
    return out;
}

} // namespace peid
