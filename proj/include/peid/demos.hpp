#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "peid/network.hpp"

namespace peid {

// Bundled benchmark systems. Available names:
//   motif             three-node copy/AND motif
//   multiscale-6node  six-node context-gated cycle
//   downward-parity   three-node system, node 0 is the parity of all three
//   downward-andxor   three-node system, node 0 = (x0 AND x1) XOR x2
std::string builtin_network_spec(const std::string& name);

// The eight-node integration benchmark family: six sigmoid networks with
// the same node count but different local mechanisms and topologies.
std::vector<std::pair<std::string, BooleanNetwork>> phi_benchmark_networks();

struct DemoCheck {
    std::string name;
    std::string provenance; // "published" | "derived" | "exact"
    std::string expected;
    double actual = 0.0;
    bool pass = false;
};

struct DemoResult {
    std::string name;
    bool all_pass = true;
    std::vector<DemoCheck> checks;
    nlohmann::json artifacts;
};

// Demo names: xor-and, motif, multiscale-6node, multiscale-nonopt,
// downward, phi-bench, alpha-sweep.
std::vector<std::string> demo_names();

// Runs a demo and compares against the stored expected values (see
// demo_fixtures). Throws ValidationError for an unknown name.
DemoResult run_demo(const std::string& name, std::uint64_t seed = 0);

// Expected values with tolerances and provenance, embedded so demo checks
// run offline. The top-level "version" field tracks fixture revisions.
const nlohmann::json& demo_fixtures();

nlohmann::json demo_result_to_json(const DemoResult& result);
std::string demo_result_table(const DemoResult& result);

} // namespace peid
