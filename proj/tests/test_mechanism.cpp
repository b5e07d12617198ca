#include <doctest.h>

#include <cmath>

#include "peid/demos.hpp"
#include "peid/ei.hpp"
#include "peid/errors.hpp"
#include "peid/network.hpp"
#include "peid/numeric.hpp"
#include "peid/tpm.hpp"

using namespace peid;

TEST_SUITE_BEGIN("mechanism");

TEST_CASE("parse_network maps a gate declaration") {
    const auto net = parse_network(R"json({
        "variables": ["x1", "x2", "y"],
        "rules": {"y": {"gate": "XOR(x1,x2)"}}
    })json");
    CHECK(net.schema.size() == 3);
    CHECK(net.rules[0] == std::nullopt);
    CHECK(net.rules[1] == std::nullopt);
    REQUIRE(net.rules[2].has_value());
    const auto& gate = std::get<GateExpr>(*net.rules[2]);
    CHECK(gate.op == GateExpr::Op::Xor);
    REQUIRE(gate.args.size() == 2);
    CHECK(gate.args[0].var == 0);
    CHECK(gate.args[1].var == 1);
}

TEST_CASE("parse_network rejects a rule for an undeclared node") {
    const char* text = R"json({
        "variables": ["x1", "x2"],
        "rules": {"z": {"gate": "AND(x1,x2)"}}
    })json";
    CHECK_THROWS_WITH_AS(parse_network(text), doctest::Contains("'z'"), ValidationError);
}

TEST_CASE("parse_network rejects unknown variable references with position") {
    const char* text = R"json({
        "variables": ["x1"],
        "rules": {"x1": {"gate": "AND(x1,zz)"}}
    })json";
    CHECK_THROWS_WITH_AS(parse_network(text), doctest::Contains("zz"), ValidationError);
}

TEST_CASE("parse_network rejects trailing garbage in gate expressions") {
    const char* text = R"json({
        "variables": ["x1"],
        "rules": {"x1": {"gate": "COPY(x1) x1"}}
    })json";
    CHECK_THROWS_AS(parse_network(text), ValidationError);
}

TEST_CASE("parse_network rejects wrong gate arity") {
    CHECK_THROWS_AS(parse_network(R"json({"variables": ["a"],
        "rules": {"a": {"gate": "NOT(a,a)"}}})json"),
                    ValidationError);
    CHECK_THROWS_AS(parse_network(R"json({"variables": ["a"],
        "rules": {"a": {"gate": "AND(a)"}}})json"),
                    ValidationError);
}

TEST_CASE("parse_network rejects duplicate rules") {
    const char* text = R"json({
        "variables": ["a", "b"],
        "rules": {"a": {"gate": "COPY(b)"}, "a": {"gate": "COPY(a)"}}
    })json";
    CHECK_THROWS_WITH_AS(parse_network(text), doctest::Contains("duplicate"), ValidationError);
}

TEST_CASE("parse_network handles the copy/AND motif") {
    const auto net = parse_network(builtin_network_spec("motif"));
    CHECK(net.schema.names() == std::vector<std::string>{"x0", "x1", "x2"});
    for (const auto& rule : net.rules) CHECK(rule.has_value());
}

TEST_CASE("compile_tpm: XOR truth table via restriction") {
    const auto net = parse_network(R"json({
        "variables": ["x1", "x2", "y"],
        "rules": {"y": {"gate": "XOR(x1,x2)"}}
    })json");
    const TransitionMatrix tpm = compile_tpm(net);
    CHECK(tpm.rows() == 8);
    CHECK(tpm.cols() == 8);
    CHECK(validate(tpm).empty());

    // restricted to the gate output the mechanism is the XOR truth table
    const TransitionMatrix gate = sub_mechanism(tpm, {0, 1}, {2});
    const double expected[4][2] = {{1, 0}, {0, 1}, {0, 1}, {1, 0}};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(gate.at(i, j) == expected[i][j]);
        }
    }

    // unruled nodes copy themselves, so the (x1,x2) -> full restriction is
    // the deterministic two-source-variable, three-target-variable mechanism
    const TransitionMatrix part = sub_mechanism(tpm, {0, 1}, {0, 1, 2});
    CHECK(part.rows() == 4);
    CHECK(part.cols() == 8);
    std::vector<int> digits(2), image(3);
    for (std::size_t s = 0; s < 4; ++s) {
        part.source().digits_of(s, digits);
        image[0] = digits[0];
        image[1] = digits[1];
        image[2] = digits[0] ^ digits[1];
        const auto t = part.target().index_of(image);
        for (std::size_t j = 0; j < 8; ++j) {
            CHECK(part.at(s, j) == (j == t ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("compile_tpm: motif matches its truth table") {
    const auto net = parse_network(builtin_network_spec("motif"));
    const TransitionMatrix tpm = compile_tpm(net);
    REQUIRE(tpm.rows() == 8);
    REQUIRE(tpm.cols() == 8);
    // x' = (x2, x0 AND x1, x0 AND x1), variable 0 most significant
    std::vector<int> digits(3), image(3);
    for (std::size_t s = 0; s < 8; ++s) {
        tpm.source().digits_of(s, digits);
        image[0] = digits[2];
        image[1] = digits[0] & digits[1];
        image[2] = digits[0] & digits[1];
        const auto t = tpm.target().index_of(image);
        for (std::size_t j = 0; j < 8; ++j) {
            CHECK(tpm.at(s, j) == (j == t ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("compile_tpm: free sigmoid node gives coin-flip rows") {
    const auto net = parse_network(R"json({
        "variables": ["a"],
        "rules": {"a": {"sigmoid": {"b": 0}}}
    })json");
    const TransitionMatrix tpm = compile_tpm(net);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(tpm.at(i, 0) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(tpm.at(i, 1) == doctest::Approx(0.5).epsilon(1e-15));
    }
}

TEST_CASE("compile_tpm is deterministic") {
    const auto net = parse_network(builtin_network_spec("multiscale-6node"));
    const TransitionMatrix a = compile_tpm(net);
    const TransitionMatrix b = compile_tpm(net);
    CHECK(a == b);
}

TEST_CASE("gate-rule networks compile to 0/1 rows with a single 1") {
    const auto net = parse_network(builtin_network_spec("motif"));
    const TransitionMatrix tpm = compile_tpm(net);
    for (std::size_t i = 0; i < tpm.rows(); ++i) {
        int ones = 0;
        for (std::size_t j = 0; j < tpm.cols(); ++j) {
            const double p = tpm.at(i, j);
            CHECK((p == 0.0 || p == 1.0));
            if (p == 1.0) ++ones;
        }
        CHECK(ones == 1);
    }
}

TEST_CASE("sigmoid probabilities stay strictly inside (0,1)") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        SigmoidRule rule;
        rule.bias = rng.uniform(-10.0, 10.0);
        rule.alpha = rng.uniform(-10.0, 10.0);
        rule.beta = rng.uniform(-10.0, 10.0);
        rule.gamma = rng.uniform(-10.0, 10.0);
        rule.copy_inputs = {{0, rng.uniform(-2.0, 2.0)}, {1, 1.0}};
        rule.coop_inputs = {0, 2};
        rule.parity_inputs = {1, 2};
        for (int s = 0; s < 8; ++s) {
            const int state[3] = {s & 1, (s >> 1) & 1, (s >> 2) & 1};
            const double p = rule.prob_one(std::span<const int>(state, 3));
            CHECK(p > 0.0);
            CHECK(p < 1.0);
        }
    }
}

TEST_CASE("empty sigmoid input sets are inert") {
    SigmoidRule rule;
    rule.bias = 0.0;
    rule.alpha = 5.0;
    rule.beta = 7.0;
    rule.gamma = 9.0; // would contribute -9*eta if the empty parity sum leaked through
    const int state[2] = {0, 1};
    CHECK(rule.prob_one(std::span<const int>(state, 2)) == doctest::Approx(0.5));
}

TEST_CASE("render/parse round-trip is structural identity") {
    for (const char* name : {"motif", "multiscale-6node", "downward-parity",
                             "downward-andxor"}) {
        const BooleanNetwork net = parse_network(builtin_network_spec(name));
        const BooleanNetwork back = parse_network(render_network(net));
        CHECK(net == back);
    }
}

TEST_CASE("validate reports rows that do not sum to one") {
    const VariableSchema s = VariableSchema::binary({"a"});
    TransitionMatrix tpm(s, s, {0.5, 0.499, 0.0, 1.0});
    const auto violations = validate(tpm);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("row 0") != std::string::npos);
}

TEST_CASE("validate reports entries outside [0,1]") {
    const VariableSchema s = VariableSchema::binary({"a"});
    TransitionMatrix tpm(s, s, {1.5, -0.5, 0.0, 1.0});
    CHECK(validate(tpm).size() >= 2);
    TransitionMatrix nan_tpm(s, s, {std::nan(""), 1.0, 0.0, 1.0});
    CHECK_FALSE(validate(nan_tpm).empty());
}

TEST_CASE("compiled networks always validate cleanly") {
    for (const char* name : {"motif", "multiscale-6node", "downward-parity",
                             "downward-andxor"}) {
        const TransitionMatrix tpm = compile_tpm(parse_network(builtin_network_spec(name)));
        CHECK(validate(tpm).empty());
    }
}

TEST_CASE("tpm text round-trip preserves every bit") {
    const TransitionMatrix tpm = compile_tpm(parse_network(builtin_network_spec("downward-andxor")));
    const TransitionMatrix back = tpm_from_text(tpm_to_text(tpm, {"comment line"}));
    CHECK(tpm == back);
}

TEST_CASE("tpm json round-trip preserves every bit") {
    const TransitionMatrix tpm = compile_tpm(parse_network(builtin_network_spec("motif")));
    const TransitionMatrix back = tpm_from_json(tpm_to_json(tpm));
    CHECK(tpm == back);
    // document sniffing picks the right reader
    const TransitionMatrix sniffed = parse_tpm_document(tpm_to_json(tpm).dump());
    CHECK(tpm == sniffed);
}

TEST_CASE("compile_tpm refuses systems whose joint state table cannot be allocated") {
    std::vector<std::string> names;
    for (int i = 0; i < 14; ++i) names.push_back("n" + std::to_string(i));
    BooleanNetwork net;
    net.schema = VariableSchema::binary(names);
    net.rules.assign(14, std::nullopt);
    CHECK_THROWS_WITH_AS(compile_tpm(net), doctest::Contains("overflow"), ValidationError);
}

TEST_CASE("schema construction rejects overflowing joint state counts") {
    std::vector<std::string> names;
    for (int i = 0; i < 64; ++i) names.push_back("v" + std::to_string(i));
    CHECK_THROWS_AS(VariableSchema::binary(names), ValidationError);
    CHECK_THROWS_AS(VariableSchema({"a", "a"}, {2, 2}), ValidationError);
    CHECK_THROWS_AS(VariableSchema({"a"}, {0}), ValidationError);
}

TEST_CASE("tpm reader rejects malformed documents") {
    CHECK_THROWS_AS(tpm_from_text("not a tpm"), ValidationError);
    CHECK_THROWS_AS(parse_tpm_document("{\"format\": \"something-else\"}"), ValidationError);
    CHECK_THROWS_AS(tpm_from_text("# peid-tpm v1\nsource: a:2\ntarget: a:2\n0.5 0.4\n0 1\n"),
                    ValidationError);
}

TEST_SUITE_END();
