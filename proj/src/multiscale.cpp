#include "peid/multiscale.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "peid/ei.hpp"
#include "peid/errors.hpp"

namespace peid {

void check_map(const CoarseGrainingMap& map) {
    if (map.table.size() != map.micro.joint_count()) {
        throw ValidationError("coarse-graining map: table length " +
                              std::to_string(map.table.size()) + " != micro state count " +
                              std::to_string(map.micro.joint_count()));
    }
    const std::uint64_t macro_states = map.macro.joint_count();
    std::vector<char> hit(static_cast<std::size_t>(macro_states), 0);
    for (std::uint32_t z : map.table) {
        if (z >= macro_states) {
            throw ValidationError("coarse-graining map: entry " + std::to_string(z) +
                                  " outside macro state space");
        }
        hit[z] = 1;
    }
    for (std::uint64_t z = 0; z < macro_states; ++z) {
        if (!hit[static_cast<std::size_t>(z)]) {
            throw ValidationError("coarse-graining map: macro state " + std::to_string(z) +
                                  " has empty preimage cell");
        }
    }
}

CoarseGrainingMap identity_map(const VariableSchema& schema) {
    CoarseGrainingMap map;
    map.micro = schema;
    map.macro = schema;
    map.table.resize(static_cast<std::size_t>(schema.joint_count()));
    for (std::size_t i = 0; i < map.table.size(); ++i) {
        map.table[i] = static_cast<std::uint32_t>(i);
    }
    return map;
}

CoarseGrainingMap all_to_one_map(const VariableSchema& schema) {
    CoarseGrainingMap map;
    map.micro = schema;
    map.macro = VariableSchema({"Z"}, {1});
    map.table.assign(static_cast<std::size_t>(schema.joint_count()), 0);
    return map;
}

const char* encoder_name(BlockEncoder e) {
    switch (e) {
        case BlockEncoder::AllZeroVsNot: return "allzero";
        case BlockEncoder::Parity: return "parity";
        case BlockEncoder::Identity: return "identity";
    }
    return "?";
}

CoarseGrainingMap grouped_map(const VariableSchema& micro,
                              const std::vector<IndexSubset>& blocks,
                              const std::vector<BlockEncoder>& encoders) {
    if (blocks.size() != encoders.size()) {
        throw ValidationError("grouped_map: one encoder per block required");
    }
    IndexSubset all(static_cast<std::size_t>(micro.size()));
    for (int i = 0; i < micro.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    check_partition(blocks, all, micro);

    std::vector<std::string> macro_names;
    std::vector<int> macro_cards;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::string name;
        for (int v : blocks[b]) {
            if (!name.empty()) name += '+';
            name += micro.name(v);
        }
        std::uint64_t block_states = 1;
        for (int v : blocks[b]) block_states *= static_cast<std::uint64_t>(micro.cardinality(v));
        switch (encoders[b]) {
            case BlockEncoder::AllZeroVsNot:
            case BlockEncoder::Parity:
                macro_cards.push_back(2);
                break;
            case BlockEncoder::Identity:
                macro_cards.push_back(static_cast<int>(block_states));
                break;
        }
        macro_names.push_back(std::move(name));
    }

    CoarseGrainingMap map;
    map.micro = micro;
    map.macro = VariableSchema(std::move(macro_names), std::move(macro_cards));
    map.table.resize(static_cast<std::size_t>(micro.joint_count()));

    std::vector<int> digits(static_cast<std::size_t>(micro.size()));
    std::vector<int> macro_digits(blocks.size());
    for (std::uint64_t s = 0; s < micro.joint_count(); ++s) {
        micro.digits_of(s, digits);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            int value = 0;
            switch (encoders[b]) {
                case BlockEncoder::AllZeroVsNot: {
                    for (int v : blocks[b]) {
                        if (digits[static_cast<std::size_t>(v)] != 0) {
                            value = 1;
                            break;
                        }
                    }
                    break;
                }
                case BlockEncoder::Parity: {
                    int sum = 0;
                    for (int v : blocks[b]) sum += digits[static_cast<std::size_t>(v)];
                    value = sum % 2;
                    break;
                }
                case BlockEncoder::Identity: {
                    for (int v : blocks[b]) {
                        value = value * micro.cardinality(v) +
                                digits[static_cast<std::size_t>(v)];
                    }
                    break;
                }
            }
            macro_digits[b] = value;
        }
        map.table[static_cast<std::size_t>(s)] =
            static_cast<std::uint32_t>(map.macro.index_of(macro_digits));
    }

    CoarseGrainingMap::Grouping g;
    g.blocks = blocks;
    for (auto e : encoders) g.encoders.emplace_back(encoder_name(e));
    map.grouping = std::move(g);
    check_map(map);
    return map;
}

nlohmann::json map_to_json(const CoarseGrainingMap& map) {
    nlohmann::json doc;
    doc["micro_variables"] = map.micro.names();
    doc["micro_cardinalities"] = map.micro.cardinalities();
    doc["macro_variables"] = map.macro.names();
    doc["macro_cardinalities"] = map.macro.cardinalities();
    doc["table"] = map.table;
    if (map.grouping) {
        nlohmann::json g;
        g["blocks"] = map.grouping->blocks;
        g["encoders"] = map.grouping->encoders;
        doc["grouping"] = std::move(g);
    }
    return doc;
}

CoarseGrainingMap map_from_json(const nlohmann::json& doc) {
    CoarseGrainingMap map;
    std::vector<std::string> micro_names =
        doc.at("micro_variables").get<std::vector<std::string>>();
    std::vector<int> micro_cards;
    if (doc.contains("micro_cardinalities")) {
        micro_cards = doc.at("micro_cardinalities").get<std::vector<int>>();
    } else {
        micro_cards.assign(micro_names.size(), 2);
    }
    map.micro = VariableSchema(std::move(micro_names), std::move(micro_cards));

    std::vector<std::string> macro_names =
        doc.at("macro_variables").get<std::vector<std::string>>();
    std::vector<int> macro_cards;
    if (doc.contains("macro_cardinalities")) {
        macro_cards = doc.at("macro_cardinalities").get<std::vector<int>>();
    } else {
        macro_cards.assign(macro_names.size(), 2);
    }
    map.macro = VariableSchema(std::move(macro_names), std::move(macro_cards));
    map.table = doc.at("table").get<std::vector<std::uint32_t>>();
    check_map(map);
    return map;
}

CoarseGrainingMap load_map_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return map_from_json(nlohmann::json::parse(buf.str()));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("map file " + path + ": " + e.what());
    }
}

namespace {

void check_compatible(const CoarseGrainingMap& map, const VariableSchema& schema,
                      const char* side) {
    check_map(map);
    if (!(map.micro == schema)) {
        throw ValidationError(std::string("coarse-graining map incompatible with ") + side +
                              " schema");
    }
}

std::vector<std::vector<std::uint32_t>> preimage_cells(const CoarseGrainingMap& map) {
    std::vector<std::vector<std::uint32_t>> cells(
        static_cast<std::size_t>(map.macro.joint_count()));
    for (std::size_t x = 0; x < map.table.size(); ++x) {
        cells[map.table[x]].push_back(static_cast<std::uint32_t>(x));
    }
    return cells;
}

} // namespace

TransitionMatrix macro_tpm(const TransitionMatrix& tpm, const CoarseGrainingMap& map_source,
                           const CoarseGrainingMap& map_target) {
    check_compatible(map_source, tpm.source(), "source");
    check_compatible(map_target, tpm.target(), "target");

    const auto cells = preimage_cells(map_source);
    TransitionMatrix out = TransitionMatrix::zeros(map_source.macro, map_target.macro);
    for (std::size_t z = 0; z < cells.size(); ++z) {
        double* out_row = &out.at(z, 0);
        for (std::uint32_t x : cells[z]) {
            for (std::size_t xp = 0; xp < tpm.cols(); ++xp) {
                out_row[map_target.table[xp]] += tpm.at(x, xp);
            }
        }
        const double cell_size = static_cast<double>(cells[z].size());
        for (std::size_t j = 0; j < out.cols(); ++j) {
            out_row[j] = snap_unit_interval(out_row[j] / cell_size);
        }
    }
    return out;
}

TransitionMatrix one_sided_macro_mechanism(const TransitionMatrix& tpm,
                                           const CoarseGrainingMap& map_source) {
    check_compatible(map_source, tpm.source(), "source");
    const auto cells = preimage_cells(map_source);
    TransitionMatrix out = TransitionMatrix::zeros(map_source.macro, tpm.target());
    for (std::size_t z = 0; z < cells.size(); ++z) {
        double* out_row = &out.at(z, 0);
        for (std::uint32_t x : cells[z]) {
            for (std::size_t xp = 0; xp < tpm.cols(); ++xp) {
                out_row[xp] += tpm.at(x, xp);
            }
        }
        const double cell_size = static_cast<double>(cells[z].size());
        for (std::size_t j = 0; j < out.cols(); ++j) {
            out_row[j] = snap_unit_interval(out_row[j] / cell_size);
        }
    }
    return out;
}

double macro_ei(const TransitionMatrix& tpm, const CoarseGrainingMap& map_source,
                const CoarseGrainingMap& map_target) {
    return effective_information(macro_tpm(tpm, map_source, map_target));
}

MultiscaleReport multiscale_report(const TransitionMatrix& tpm, const CoarseGrainingMap& map,
                                   const HypergraphOptions& graph_options) {
    MultiscaleReport report;
    report.micro_graph = build_hypergraph(tpm, graph_options);
    const TransitionMatrix macro = macro_tpm(tpm, map, map);
    report.macro_graph = build_hypergraph(macro, graph_options);
    report.macro_ei = effective_information(macro);
    report.macro_phi = macro.source().size() > 1 ? phi_eid(macro) : 0.0;
    report.source_cells = preimage_cells(map);
    report.target_cells = report.source_cells;
    report.grouping = map.grouping;
    return report;
}

nlohmann::json multiscale_report_to_json(const MultiscaleReport& report,
                                         const CoarseGrainingMap& map) {
    nlohmann::json doc;
    doc["micro_graph"] = graph_to_json(report.micro_graph);
    doc["macro_graph"] = graph_to_json(report.macro_graph);
    doc["macro_ei"] = report.macro_ei;
    doc["macro_phi"] = report.macro_phi;
    doc["map"] = map_to_json(map);
    doc["source_cells"] = report.source_cells;
    doc["target_cells"] = report.target_cells;
    return doc;
}

// --- search ---------------------------------------------------------------------

namespace {

void rank_results(std::vector<SearchResult>& results, int top_k) {
    std::sort(results.begin(), results.end(), [](const SearchResult& a, const SearchResult& b) {
        if (a.macro_ei != b.macro_ei) return a.macro_ei > b.macro_ei;
        const auto sa = a.map.macro.joint_count();
        const auto sb = b.map.macro.joint_count();
        if (sa != sb) return sa < sb;
        return a.map.table < b.map.table;
    });
    if (top_k > 0 && results.size() > static_cast<std::size_t>(top_k)) {
        results.resize(static_cast<std::size_t>(top_k));
    }
}

std::vector<SearchResult> search_state_lumpings(const TransitionMatrix& tpm,
                                                const SearchSpec& spec) {
    const std::uint64_t m = tpm.source().joint_count();
    if (m > 16) {
        throw ValidationError("state-lumping search requires at most 16 micro states");
    }
    const auto partitions = enumerate_set_partitions(static_cast<int>(m), spec.budget);
    std::vector<SearchResult> results;
    results.reserve(partitions.size());
    for (const auto& rgs : partitions) {
        const int macro_states = 1 + *std::max_element(rgs.begin(), rgs.end());
        CoarseGrainingMap map;
        map.micro = tpm.source();
        map.macro = VariableSchema({"Z"}, {macro_states});
        map.table.assign(rgs.begin(), rgs.end());
        SearchResult r;
        r.macro_ei = macro_ei(tpm, map, map);
        r.map = std::move(map);
        results.push_back(std::move(r));
    }
    rank_results(results, spec.top_k);
    return results;
}

std::vector<SearchResult> search_variable_groupings(const TransitionMatrix& tpm,
                                                    const SearchSpec& spec) {
    if (tpm.source().joint_count() > 4096) {
        throw ValidationError("variable-grouping search requires at most 4096 micro states");
    }
    const int n = tpm.source().size();
    const auto partitions = enumerate_set_partitions(n, spec.budget);
    static constexpr BlockEncoder kEncoders[] = {
        BlockEncoder::AllZeroVsNot, BlockEncoder::Parity, BlockEncoder::Identity};

    std::vector<SearchResult> results;
    std::uint64_t candidates = 0;
    for (const auto& rgs : partitions) {
        const int num_blocks = 1 + *std::max_element(rgs.begin(), rgs.end());
        std::vector<IndexSubset> blocks(static_cast<std::size_t>(num_blocks));
        for (int v = 0; v < n; ++v) {
            blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(v)])].push_back(v);
        }
        // encoder choices per block; singleton blocks always encode as
        // identity (the three encoders coincide on one binary variable)
        std::vector<int> choice(static_cast<std::size_t>(num_blocks), 0);
        while (true) {
            std::vector<BlockEncoder> encoders;
            encoders.reserve(blocks.size());
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                encoders.push_back(blocks[b].size() == 1 ? BlockEncoder::Identity
                                                         : kEncoders[choice[b]]);
            }
            if (++candidates > spec.budget) {
                throw NumericalError("variable-grouping search exceeds budget of " +
                                     std::to_string(spec.budget));
            }
            SearchResult r;
            r.map = grouped_map(tpm.source(), blocks, encoders);
            r.macro_ei = macro_ei(tpm, r.map, r.map);
            results.push_back(std::move(r));

            // next choice vector, skipping blocks pinned to identity
            std::size_t b = 0;
            for (; b < blocks.size(); ++b) {
                if (blocks[b].size() == 1) continue;
                if (++choice[b] < 3) break;
                choice[b] = 0;
            }
            if (b == blocks.size()) break;
        }
    }
    rank_results(results, spec.top_k);
    return results;
}

} // namespace

std::vector<SearchResult> search_coarse_graining(const TransitionMatrix& tpm,
                                                 const SearchSpec& spec) {
    if (!tpm.is_square_system()) {
        throw ValidationError("search_coarse_graining: requires a square full-system mechanism");
    }
    switch (spec.family) {
        case SearchSpec::Family::StateLumpings:
            return search_state_lumpings(tpm, spec);
        case SearchSpec::Family::VariableGroupings:
            return search_variable_groupings(tpm, spec);
    }
    throw ValidationError("unknown search family");
}

} // namespace peid
