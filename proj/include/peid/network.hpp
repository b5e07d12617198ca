#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "peid/tpm.hpp"

namespace peid {

// Deterministic update expressed as an expression tree over node values at
// time t. Grammar accepted by the parser:
//
//   expr := NAME | '0' | '1'
//         | NOT '(' expr ')'
//         | COPY '(' expr ')'
//         | (AND|OR|XOR) '(' expr (',' expr)+ ')'
//
// AND/OR/XOR take two or more arguments (XOR folds as parity); NOT and COPY
// are strictly unary.
struct GateExpr {
    enum class Op { Var, Const, Not, Copy, And, Or, Xor };

    Op op = Op::Const;
    int var = -1;   // Op::Var
    int value = 0;  // Op::Const
    std::vector<GateExpr> args;

    static GateExpr variable(int index);
    static GateExpr constant(int v);
    static GateExpr apply(Op op, std::vector<GateExpr> args);

    int eval(std::span<const int> state) const;

    bool operator==(const GateExpr& other) const;
};

// Stochastic update: P(next = 1 | x) = sigmoid(bias + alpha*copy_term
// + beta*coop_term + gamma*parity_term), where
//   copy_term   = sum over copy inputs of weight * (2x - 1)
//   coop_term   = product of coop inputs - 2^-|coop|
//   parity_term = eta * (2 * (sum of parity inputs mod 2) - 1)
// An empty input set contributes 0 to its term, so absent mechanisms are
// inert (note this overrides the -eta value a literal empty parity sum
// would give).
struct SigmoidRule {
    double bias = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double eta = 1.0;
    std::vector<std::pair<int, double>> copy_inputs; // (node index, weight)
    std::vector<int> coop_inputs;
    std::vector<int> parity_inputs;

    double prob_one(std::span<const int> state) const;

    bool operator==(const SigmoidRule& other) const;
};

using UpdateRule = std::variant<GateExpr, SigmoidRule>;

// Binary dynamical system: one update rule per node. A node without a
// declared rule keeps its value (identity copy of itself).
struct BooleanNetwork {
    VariableSchema schema; // all cardinalities 2
    std::vector<std::optional<UpdateRule>> rules;

    bool operator==(const BooleanNetwork& other) const;
};

// Parse the network-spec document (JSON object with `variables` and
// `rules`). Errors carry the offending rule name and, for gate
// expressions, the character position inside the expression.
BooleanNetwork parse_network(const std::string& text);

// Inverse of parse_network: parse_network(render_network(net)) == net.
std::string render_network(const BooleanNetwork& net);

// Gate-expression helpers, exposed for building networks in code.
GateExpr parse_gate_expr(const std::string& text, const VariableSchema& schema);
std::string render_gate_expr(const GateExpr& expr, const VariableSchema& schema);

// Compile the one-step mechanism into a 2^n x 2^n transition matrix. Node
// updates are conditionally independent given x_t, so each row is the
// product of per-node conditional probabilities.
TransitionMatrix compile_tpm(const BooleanNetwork& net);

} // namespace peid
