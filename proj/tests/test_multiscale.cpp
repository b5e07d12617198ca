#include <doctest.h>

#include <cmath>

#include "peid/demos.hpp"
#include "peid/ei.hpp"
#include "peid/errors.hpp"
#include "peid/multiscale.hpp"
#include "peid/network.hpp"

#include "oracles.hpp"

using namespace peid;

namespace {

TransitionMatrix six_node_tpm() {
    return compile_tpm(parse_network(builtin_network_spec("multiscale-6node")));
}

CoarseGrainingMap or_pair_map(const VariableSchema& schema) {
    return grouped_map(schema, {{0, 1}, {2, 3}, {4, 5}},
                       {BlockEncoder::AllZeroVsNot, BlockEncoder::AllZeroVsNot,
                        BlockEncoder::AllZeroVsNot});
}

} // namespace

TEST_SUITE_BEGIN("multiscale");

TEST_CASE("identity maps leave the mechanism bit-identical") {
    Rng rng(31);
    const TransitionMatrix tpm = oracle::random_tpm(3, rng);
    const CoarseGrainingMap id = identity_map(tpm.source());
    const TransitionMatrix same = macro_tpm(tpm, id, id);
    CHECK(tpm.data() == same.data());
    CHECK(one_sided_macro_mechanism(tpm, id).data() == tpm.data());
    CHECK(macro_ei(tpm, id, id) == effective_information(tpm));
}

TEST_CASE("lumping everything to one macro state gives the 1x1 unit matrix") {
    Rng rng(32);
    const TransitionMatrix tpm = oracle::random_tpm(2, rng);
    const CoarseGrainingMap one = all_to_one_map(tpm.source());
    const TransitionMatrix macro = macro_tpm(tpm, one, one);
    CHECK(macro.rows() == 1);
    CHECK(macro.cols() == 1);
    CHECK(macro.at(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(macro_ei(tpm, one, one) == doctest::Approx(0.0));
    CHECK(effective_information(one_sided_macro_mechanism(tpm, one)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("six-node system: the OR grouping induces the 3-bit cycle") {
    const TransitionMatrix tpm = six_node_tpm();
    const CoarseGrainingMap map = or_pair_map(tpm.source());
    const TransitionMatrix macro = macro_tpm(tpm, map, map);

    // full enumeration oracle: every micro state in a preimage cell must
    // land (deterministically) in the same macro image, and that image is
    // the left-rotation (A,B,C) -> (B,C,A)
    REQUIRE(macro.rows() == 8);
    std::vector<int> z(3), znext(3);
    for (std::size_t zi = 0; zi < 8; ++zi) {
        map.macro.digits_of(zi, z);
        znext[0] = z[1];
        znext[1] = z[2];
        znext[2] = z[0];
        const auto target = map.macro.index_of(znext);
        for (std::size_t zj = 0; zj < 8; ++zj) {
            CHECK(macro.at(zi, zj) == (zj == target ? 1.0 : 0.0));
        }
    }
    CHECK(effective_information(macro) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(phi_eid(macro) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("six-node one-sided mechanism is 8x64 with EI at the 3-bit cap") {
    const TransitionMatrix tpm = six_node_tpm();
    const TransitionMatrix one = one_sided_macro_mechanism(tpm, or_pair_map(tpm.source()));
    CHECK(one.rows() == 8);
    CHECK(one.cols() == 64);
    CHECK(validate(one).empty());
    const double ei = effective_information(one);
    CHECK(ei <= 3.0 + 1e-12);
    CHECK(ei == doctest::Approx(3.0).epsilon(1e-12)); // deterministic given the macro state
}

TEST_CASE("multiscale report: optimal map absorbs all synergy") {
    const TransitionMatrix tpm = six_node_tpm();
    const MultiscaleReport report = multiscale_report(tpm, or_pair_map(tpm.source()));
    CHECK(report.macro_ei == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(report.macro_phi == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.macro_graph.hyperedges.empty());
    CHECK(report.macro_graph.edges.size() == 3);
    CHECK_FALSE(report.micro_graph.hyperedges.empty()); // micro side is synergistic
    CHECK(report.source_cells.size() == 8);
}

TEST_CASE("multiscale report with the identity map reproduces the micro graph") {
    const TransitionMatrix tpm = compile_tpm(parse_network(builtin_network_spec("motif")));
    const MultiscaleReport report = multiscale_report(tpm, identity_map(tpm.source()));
    CHECK(report.micro_graph == report.macro_graph);
    CHECK(report.macro_ei == effective_information(tpm));
}

TEST_CASE("non-surjective maps are rejected") {
    const VariableSchema micro = VariableSchema::binary({"a", "b"});
    CoarseGrainingMap map;
    map.micro = micro;
    map.macro = VariableSchema({"Z"}, {3});
    map.table = {0, 0, 1, 1}; // macro state 2 unreachable
    CHECK_THROWS_AS(check_map(map), ValidationError);
    Rng rng(1);
    const TransitionMatrix tpm = oracle::random_tpm(2, rng);
    CHECK_THROWS_AS(macro_tpm(tpm, map, map), ValidationError);
}

TEST_CASE("map json round-trip") {
    const TransitionMatrix tpm = six_node_tpm();
    const CoarseGrainingMap map = or_pair_map(tpm.source());
    const CoarseGrainingMap back = map_from_json(map_to_json(map));
    CHECK(map == back);
}

TEST_CASE("grouped maps honor encoder ranges and block order") {
    const VariableSchema micro = VariableSchema::binary({"a", "b", "c"});
    const CoarseGrainingMap map =
        grouped_map(micro, {{0, 2}, {1}}, {BlockEncoder::Identity, BlockEncoder::Parity});
    CHECK(map.macro.cardinality(0) == 4);
    CHECK(map.macro.cardinality(1) == 2);
    CHECK(map.macro.name(0) == "a+c");
    // micro state (a,b,c) = (1,0,1) -> identity block (a,c) = 3, parity(b) = 0
    const std::vector<int> digits = {1, 0, 1};
    const auto idx = micro.index_of(digits);
    CHECK(map.table[idx] == map.macro.index_of(std::vector<int>{3, 0}));
}

TEST_CASE("search over a 2-state identity chain ranks the identity map first") {
    const VariableSchema s = VariableSchema::binary({"a"});
    const TransitionMatrix chain(s, s, {1, 0, 0, 1});
    SearchSpec spec;
    spec.family = SearchSpec::Family::StateLumpings;
    const auto results = search_coarse_graining(chain, spec);
    REQUIRE(results.size() == 2); // identity and all-to-one
    CHECK(results[0].macro_ei == doctest::Approx(1.0));
    CHECK(results[0].map.macro.joint_count() == 2);
    CHECK(results[1].macro_ei == doctest::Approx(0.0));
}

TEST_CASE("variable-grouping search finds the 3-bit macro dynamics") {
    const TransitionMatrix tpm = six_node_tpm();
    SearchSpec spec;
    spec.family = SearchSpec::Family::VariableGroupings;
    spec.top_k = 4;
    const auto results = search_coarse_graining(tpm, spec);
    REQUIRE_FALSE(results.empty());
    CHECK(results[0].macro_ei == doctest::Approx(3.0).epsilon(1e-12));
    REQUIRE(results[0].map.grouping.has_value());
    CHECK(results[0].map.grouping->blocks ==
          std::vector<IndexSubset>{{0, 1}, {2, 3}, {4, 5}});
}

TEST_CASE("all-to-one never outranks the identity unless identity EI is zero") {
    Rng rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        const TransitionMatrix tpm = oracle::random_tpm(2, rng); // 4 micro states
        SearchSpec spec;
        spec.family = SearchSpec::Family::StateLumpings;
        spec.top_k = 0; // keep all
        const auto results = search_coarse_graining(tpm, spec);
        std::size_t rank_identity = results.size(), rank_one = results.size();
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].map.macro.joint_count() == tpm.rows() &&
                rank_identity == results.size()) {
                rank_identity = i;
            }
            if (results[i].map.macro.joint_count() == 1) rank_one = i;
        }
        REQUIRE(rank_identity < results.size());
        REQUIRE(rank_one < results.size());
        const double identity_ei = effective_information(tpm);
        if (identity_ei > 1e-12) CHECK(rank_identity < rank_one);
    }
}

TEST_CASE("macro EI never exceeds the macro state capacity") {
    Rng rng(55);
    const TransitionMatrix tpm = oracle::random_tpm(3, rng);
    SearchSpec spec;
    spec.family = SearchSpec::Family::VariableGroupings;
    spec.top_k = 0;
    for (const auto& r : search_coarse_graining(tpm, spec)) {
        CHECK(r.macro_ei <= std::log2(static_cast<double>(r.map.macro.joint_count())) + 1e-9);
    }
}

TEST_CASE("search budget violations raise errors") {
    Rng rng(2);
    const TransitionMatrix tpm = oracle::random_tpm(3, rng);
    SearchSpec spec;
    spec.family = SearchSpec::Family::StateLumpings;
    spec.budget = 10; // Bell(8) = 4140 candidates
    CHECK_THROWS_AS(search_coarse_graining(tpm, spec), NumericalError);
    spec.family = SearchSpec::Family::VariableGroupings;
    spec.budget = 2;
    CHECK_THROWS_AS(search_coarse_graining(tpm, spec), NumericalError);
}

TEST_CASE("row-stochasticity is preserved by macro constructions") {
    Rng rng(8);
    const TransitionMatrix tpm = oracle::random_tpm(3, rng);
    const CoarseGrainingMap map =
        grouped_map(tpm.source(), {{0, 1}, {2}},
                    {BlockEncoder::Parity, BlockEncoder::Identity});
    CHECK(validate(macro_tpm(tpm, map, map)).empty());
    CHECK(validate(one_sided_macro_mechanism(tpm, map)).empty());
}

TEST_SUITE_END();
