#include "peid/network.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "peid/errors.hpp"

namespace peid {

// --- gate expressions ---------------------------------------------------------

GateExpr GateExpr::variable(int index) {
    GateExpr e;
    e.op = Op::Var;
    e.var = index;
    return e;
}

GateExpr GateExpr::constant(int v) {
    GateExpr e;
    e.op = Op::Const;
    e.value = v;
    return e;
}

GateExpr GateExpr::apply(Op op, std::vector<GateExpr> args) {
    const std::size_t n = args.size();
    if ((op == Op::Not || op == Op::Copy) && n != 1) {
        throw ValidationError("gate: NOT/COPY take exactly one argument");
    }
    if ((op == Op::And || op == Op::Or || op == Op::Xor) && n < 2) {
        throw ValidationError("gate: AND/OR/XOR take at least two arguments");
    }
    if (op == Op::Var || op == Op::Const) {
        throw ValidationError("gate: leaf nodes take no arguments");
    }
    GateExpr e;
    e.op = op;
    e.args = std::move(args);
    return e;
}

int GateExpr::eval(std::span<const int> state) const {
    switch (op) {
        case Op::Var:
            return state[static_cast<std::size_t>(var)];
        case Op::Const:
            return value;
        case Op::Not:
            return 1 - args[0].eval(state);
        case Op::Copy:
            return args[0].eval(state);
        case Op::And: {
            for (const auto& a : args) {
                if (a.eval(state) == 0) return 0;
            }
            return 1;
        }
        case Op::Or: {
            for (const auto& a : args) {
                if (a.eval(state) == 1) return 1;
            }
            return 0;
        }
        case Op::Xor: {
            int acc = 0;
            for (const auto& a : args) acc ^= a.eval(state);
            return acc;
        }
    }
    return 0;
}

bool GateExpr::operator==(const GateExpr& other) const {
    return op == other.op && var == other.var && value == other.value && args == other.args;
}

namespace {

// Recursive-descent parser over a single expression string. Positions are
// zero-based character offsets, reported in errors.
class GateParser {
public:
    GateParser(const std::string& text, const VariableSchema& schema)
        : text_(text), schema_(schema) {}

    GateExpr parse() {
        GateExpr e = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing content");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ValidationError("gate expression, column " + std::to_string(pos_ + 1) + ": " +
                              msg + " in '" + text_ + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ == start) fail("expected identifier or constant");
        return text_.substr(start, pos_ - start);
    }

    GateExpr expr() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const std::size_t at = pos_;
        const std::string tok = ident();
        if (tok == "0") return GateExpr::constant(0);
        if (tok == "1") return GateExpr::constant(1);
        GateExpr::Op op;
        bool is_op = true;
        if (tok == "NOT") {
            op = GateExpr::Op::Not;
        } else if (tok == "COPY") {
            op = GateExpr::Op::Copy;
        } else if (tok == "AND") {
            op = GateExpr::Op::And;
        } else if (tok == "OR") {
            op = GateExpr::Op::Or;
        } else if (tok == "XOR") {
            op = GateExpr::Op::Xor;
        } else {
            is_op = false;
            op = GateExpr::Op::Var;
        }
        if (is_op) {
            if (!eat('(')) fail("expected '(' after " + tok);
            std::vector<GateExpr> args;
            args.push_back(expr());
            while (eat(',')) args.push_back(expr());
            if (!eat(')')) fail("expected ')' or ','");
            if ((op == GateExpr::Op::Not || op == GateExpr::Op::Copy) && args.size() != 1) {
                pos_ = at;
                fail(tok + " takes exactly one argument");
            }
            if ((op == GateExpr::Op::And || op == GateExpr::Op::Or ||
                 op == GateExpr::Op::Xor) &&
                args.size() < 2) {
                pos_ = at;
                fail(tok + " takes at least two arguments");
            }
            return GateExpr::apply(op, std::move(args));
        }
        const int idx = schema_.find(tok);
        if (idx < 0) {
            pos_ = at;
            fail("unknown variable '" + tok + "'");
        }
        return GateExpr::variable(idx);
    }

    const std::string& text_;
    const VariableSchema& schema_;
    std::size_t pos_ = 0;
};

} // namespace

GateExpr parse_gate_expr(const std::string& text, const VariableSchema& schema) {
    return GateParser(text, schema).parse();
}

std::string render_gate_expr(const GateExpr& expr, const VariableSchema& schema) {
    switch (expr.op) {
        case GateExpr::Op::Var:
            return schema.name(expr.var);
        case GateExpr::Op::Const:
            return expr.value ? "1" : "0";
        case GateExpr::Op::Not:
        case GateExpr::Op::Copy:
        case GateExpr::Op::And:
        case GateExpr::Op::Or:
        case GateExpr::Op::Xor: {
            const char* name = "";
            switch (expr.op) {
                case GateExpr::Op::Not: name = "NOT"; break;
                case GateExpr::Op::Copy: name = "COPY"; break;
                case GateExpr::Op::And: name = "AND"; break;
                case GateExpr::Op::Or: name = "OR"; break;
                case GateExpr::Op::Xor: name = "XOR"; break;
                default: break;
            }
            std::string out = name;
            out += '(';
            for (std::size_t i = 0; i < expr.args.size(); ++i) {
                if (i) out += ',';
                out += render_gate_expr(expr.args[i], schema);
            }
            out += ')';
            return out;
        }
    }
    return "0";
}

// --- sigmoid rules ------------------------------------------------------------

double SigmoidRule::prob_one(std::span<const int> state) const {
    double copy_term = 0.0;
    for (const auto& [idx, w] : copy_inputs) {
        copy_term += w * (2.0 * state[static_cast<std::size_t>(idx)] - 1.0);
    }
    double coop_term = 0.0;
    if (!coop_inputs.empty()) {
        double prod = 1.0;
        for (int idx : coop_inputs) prod *= state[static_cast<std::size_t>(idx)];
        coop_term = prod - std::pow(2.0, -static_cast<double>(coop_inputs.size()));
    }
    double parity_term = 0.0;
    if (!parity_inputs.empty()) {
        int sum = 0;
        for (int idx : parity_inputs) sum += state[static_cast<std::size_t>(idx)];
        parity_term = eta * (2.0 * (sum % 2) - 1.0);
    }
    const double z = bias + alpha * copy_term + beta * coop_term + gamma * parity_term;
    return 1.0 / (1.0 + std::exp(-z));
}

bool SigmoidRule::operator==(const SigmoidRule& other) const {
    return bias == other.bias && alpha == other.alpha && beta == other.beta &&
           gamma == other.gamma && eta == other.eta && copy_inputs == other.copy_inputs &&
           coop_inputs == other.coop_inputs && parity_inputs == other.parity_inputs;
}

bool BooleanNetwork::operator==(const BooleanNetwork& other) const {
    return schema == other.schema && rules == other.rules;
}

// --- network-spec document ----------------------------------------------------

namespace {

// nlohmann keeps the last value for duplicate keys, so duplicates are
// caught during the parse callback instead.
void check_duplicate_keys(const std::string& text) {
    std::vector<std::set<std::string>> stack;
    auto cb = [&stack](int /*depth*/, nlohmann::json::parse_event_t event,
                       nlohmann::json& parsed) -> bool {
        if (event == nlohmann::json::parse_event_t::object_start) {
            stack.emplace_back();
        } else if (event == nlohmann::json::parse_event_t::object_end) {
            stack.pop_back();
        } else if (event == nlohmann::json::parse_event_t::key) {
            const std::string key = parsed.get<std::string>();
            if (!stack.empty() && !stack.back().insert(key).second) {
                throw ValidationError("network spec: duplicate rule or key '" + key + "'");
            }
        }
        return true;
    };
    try {
        const auto parsed = nlohmann::json::parse(text, cb);
        (void)parsed;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("network spec: ") + e.what());
    }
}

int require_node(const nlohmann::json& v, const VariableSchema& schema,
                 const std::string& rule_name) {
    const std::string name = v.get<std::string>();
    const int idx = schema.find(name);
    if (idx < 0) {
        throw ValidationError("network spec: rule '" + rule_name +
                              "' references unknown variable '" + name + "'");
    }
    return idx;
}

SigmoidRule parse_sigmoid(const nlohmann::json& node, const VariableSchema& schema,
                          const std::string& rule_name) {
    SigmoidRule rule;
    rule.bias = node.value("b", 0.0);
    rule.alpha = node.value("alpha", 0.0);
    rule.beta = node.value("beta", 0.0);
    rule.gamma = node.value("gamma", 0.0);
    rule.eta = node.value("eta", 1.0);
    if (node.contains("copy")) {
        for (const auto& c : node.at("copy")) {
            if (c.is_string()) {
                rule.copy_inputs.emplace_back(require_node(c, schema, rule_name), 1.0);
            } else {
                const int idx = require_node(c.at("from"), schema, rule_name);
                rule.copy_inputs.emplace_back(idx, c.value("weight", 1.0));
            }
        }
    }
    if (node.contains("coop")) {
        for (const auto& c : node.at("coop")) {
            rule.coop_inputs.push_back(require_node(c, schema, rule_name));
        }
    }
    if (node.contains("parity")) {
        for (const auto& c : node.at("parity")) {
            rule.parity_inputs.push_back(require_node(c, schema, rule_name));
        }
    }
    return rule;
}

} // namespace

BooleanNetwork parse_network(const std::string& text) {
    check_duplicate_keys(text);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("network spec: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("variables")) {
        throw ValidationError("network spec: expected object with 'variables'");
    }
    VariableSchema schema =
        VariableSchema::binary(doc.at("variables").get<std::vector<std::string>>());

    BooleanNetwork net;
    net.schema = schema;
    net.rules.assign(static_cast<std::size_t>(schema.size()), std::nullopt);

    if (doc.contains("rules")) {
        const auto& rules = doc.at("rules");
        if (!rules.is_object()) throw ValidationError("network spec: 'rules' must be an object");
        for (auto it = rules.begin(); it != rules.end(); ++it) {
            const std::string& name = it.key();
            const int idx = schema.find(name);
            if (idx < 0) {
                throw ValidationError("network spec: rule for undeclared node '" + name + "'");
            }
            auto& slot = net.rules[static_cast<std::size_t>(idx)];
            if (slot.has_value()) {
                throw ValidationError("network spec: duplicate rule for node '" + name + "'");
            }
            const auto& body = it.value();
            if (body.contains("gate")) {
                try {
                    slot = parse_gate_expr(body.at("gate").get<std::string>(), schema);
                } catch (const ValidationError& e) {
                    throw ValidationError("rule '" + name + "': " + e.what());
                }
            } else if (body.contains("sigmoid")) {
                slot = parse_sigmoid(body.at("sigmoid"), schema, name);
            } else {
                throw ValidationError("network spec: rule '" + name +
                                      "' must have 'gate' or 'sigmoid'");
            }
        }
    }
    return net;
}

std::string render_network(const BooleanNetwork& net) {
    nlohmann::ordered_json doc;
    doc["variables"] = net.schema.names();
    nlohmann::ordered_json rules = nlohmann::ordered_json::object();
    for (int i = 0; i < net.schema.size(); ++i) {
        const auto& slot = net.rules[static_cast<std::size_t>(i)];
        if (!slot.has_value()) continue;
        nlohmann::ordered_json body;
        if (const auto* gate = std::get_if<GateExpr>(&*slot)) {
            body["gate"] = render_gate_expr(*gate, net.schema);
        } else {
            const auto& s = std::get<SigmoidRule>(*slot);
            nlohmann::ordered_json sj;
            sj["b"] = s.bias;
            sj["alpha"] = s.alpha;
            sj["beta"] = s.beta;
            sj["gamma"] = s.gamma;
            sj["eta"] = s.eta;
            nlohmann::ordered_json copies = nlohmann::ordered_json::array();
            for (const auto& [idx, w] : s.copy_inputs) {
                copies.push_back({{"from", net.schema.name(idx)}, {"weight", w}});
            }
            sj["copy"] = std::move(copies);
            nlohmann::ordered_json coop = nlohmann::ordered_json::array();
            for (int idx : s.coop_inputs) coop.push_back(net.schema.name(idx));
            sj["coop"] = std::move(coop);
            nlohmann::ordered_json parity = nlohmann::ordered_json::array();
            for (int idx : s.parity_inputs) parity.push_back(net.schema.name(idx));
            sj["parity"] = std::move(parity);
            body["sigmoid"] = std::move(sj);
        }
        rules[net.schema.name(i)] = std::move(body);
    }
    doc["rules"] = std::move(rules);
    return doc.dump(2) + "\n";
}

// --- compilation ----------------------------------------------------------------

TransitionMatrix compile_tpm(const BooleanNetwork& net) {
    const int n = net.schema.size();
    for (int c : net.schema.cardinalities()) {
        if (c != 2) throw ValidationError("compile_tpm: schema must be all-binary");
    }
    if (static_cast<std::size_t>(net.rules.size()) != static_cast<std::size_t>(n)) {
        throw ValidationError("compile_tpm: rule table size mismatch");
    }
    if (n > 13) {
        throw ValidationError("compile_tpm: joint state count overflow (" +
                              std::to_string(n) + " variables)");
    }
    const std::size_t m = static_cast<std::size_t>(1) << n;

    TransitionMatrix tpm = TransitionMatrix::zeros(net.schema, net.schema);
    std::vector<int> state(static_cast<std::size_t>(n));
    std::vector<double> p_one(static_cast<std::size_t>(n));
    std::vector<int> target(static_cast<std::size_t>(n));

    for (std::size_t row = 0; row < m; ++row) {
        net.schema.digits_of(row, state);
        for (int k = 0; k < n; ++k) {
            const auto& slot = net.rules[static_cast<std::size_t>(k)];
            if (!slot.has_value()) {
                p_one[static_cast<std::size_t>(k)] =
                    static_cast<double>(state[static_cast<std::size_t>(k)]);
            } else if (const auto* gate = std::get_if<GateExpr>(&*slot)) {
                p_one[static_cast<std::size_t>(k)] = static_cast<double>(gate->eval(state));
            } else {
                p_one[static_cast<std::size_t>(k)] =
                    std::get<SigmoidRule>(*slot).prob_one(state);
            }
        }
        for (std::size_t col = 0; col < m; ++col) {
            net.schema.digits_of(col, target);
            double p = 1.0;
            for (int k = 0; k < n && p != 0.0; ++k) {
                const double pk = p_one[static_cast<std::size_t>(k)];
                p *= target[static_cast<std::size_t>(k)] ? pk : 1.0 - pk;
            }
            tpm.at(row, col) = p;
        }
    }
    return tpm;
}

} // namespace peid
