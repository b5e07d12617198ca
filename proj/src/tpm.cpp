#include "peid/tpm.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "peid/errors.hpp"

namespace peid {

namespace {

constexpr const char* kTextHeader = "# peid-tpm v1";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

std::string schema_line(const char* side, const VariableSchema& s) {
    std::string line = side;
    line += ":";
    for (int i = 0; i < s.size(); ++i) {
        line += " " + s.name(i) + ":" + std::to_string(s.cardinality(i));
    }
    return line;
}

VariableSchema parse_schema_line(const std::string& line, const char* side, int lineno) {
    std::istringstream in(line);
    std::string head;
    in >> head;
    if (head != std::string(side) + ":") {
        throw ValidationError("tpm line " + std::to_string(lineno) + ": expected '" +
                              side + ":' schema line");
    }
    std::vector<std::string> names;
    std::vector<int> cards;
    std::string tok;
    while (in >> tok) {
        const auto colon = tok.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= tok.size()) {
            throw ValidationError("tpm line " + std::to_string(lineno) +
                                  ": malformed variable token '" + tok + "'");
        }
        names.push_back(tok.substr(0, colon));
        try {
            cards.push_back(std::stoi(tok.substr(colon + 1)));
        } catch (const std::exception&) {
            throw ValidationError("tpm line " + std::to_string(lineno) +
                                  ": bad cardinality in '" + tok + "'");
        }
    }
    if (names.empty()) {
        throw ValidationError("tpm line " + std::to_string(lineno) + ": empty schema");
    }
    return VariableSchema(std::move(names), std::move(cards));
}

} // namespace

TransitionMatrix::TransitionMatrix(VariableSchema source, VariableSchema target,
                                   std::vector<double> probs)
    : source_(std::move(source)), target_(std::move(target)), probs_(std::move(probs)) {
    rows_ = static_cast<std::size_t>(source_.joint_count());
    cols_ = static_cast<std::size_t>(target_.joint_count());
    if (probs_.size() != rows_ * cols_) {
        throw ValidationError("tpm: expected " + std::to_string(rows_ * cols_) +
                              " probabilities, got " + std::to_string(probs_.size()));
    }
}

TransitionMatrix TransitionMatrix::zeros(VariableSchema source, VariableSchema target) {
    const std::size_t n = static_cast<std::size_t>(source.joint_count()) *
                          static_cast<std::size_t>(target.joint_count());
    return TransitionMatrix(std::move(source), std::move(target), std::vector<double>(n, 0.0));
}

bool TransitionMatrix::is_square_system() const {
    return source_.size() == target_.size() &&
           source_.cardinalities() == target_.cardinalities();
}

std::vector<std::string> validate(const TransitionMatrix& tpm) {
    std::vector<std::string> violations;
    for (std::size_t i = 0; i < tpm.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < tpm.cols(); ++j) {
            const double p = tpm.at(i, j);
            if (!(p >= 0.0) || p > 1.0 || !std::isfinite(p)) {
                violations.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") = " + format_double(p) + " outside [0,1]");
            }
            sum += p;
        }
        if (std::fabs(sum - 1.0) > kRowSumTolerance) {
            violations.push_back("row " + std::to_string(i) + " sums to " + format_double(sum));
        }
    }
    return violations;
}

void require_valid(const TransitionMatrix& tpm) {
    const auto violations = validate(tpm);
    if (violations.empty()) return;
    std::string msg = "invalid transition matrix:";
    const std::size_t shown = violations.size() > 4 ? 4 : violations.size();
    for (std::size_t i = 0; i < shown; ++i) msg += "\n  " + violations[i];
    if (violations.size() > shown) {
        msg += "\n  (+" + std::to_string(violations.size() - shown) + " more)";
    }
    throw ValidationError(msg);
}

std::string tpm_to_text(const TransitionMatrix& tpm,
                        const std::vector<std::string>& comment_lines) {
    std::string out = kTextHeader;
    out += "\n";
    for (const auto& c : comment_lines) {
        out += "# " + c + "\n";
    }
    out += schema_line("source", tpm.source()) + "\n";
    out += schema_line("target", tpm.target()) + "\n";
    for (std::size_t i = 0; i < tpm.rows(); ++i) {
        for (std::size_t j = 0; j < tpm.cols(); ++j) {
            if (j) out += ' ';
            out += format_double(tpm.at(i, j));
        }
        out += '\n';
    }
    return out;
}

TransitionMatrix tpm_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto next_content_line = [&](bool allow_comment) -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            if (allow_comment && line[0] == '#') continue;
            return true;
        }
        return false;
    };

    if (!std::getline(in, line)) throw ValidationError("tpm: empty document");
    ++lineno;
    // tolerate trailing whitespace/CR on the header line
    std::string header = line;
    while (!header.empty() && (header.back() == '\r' || header.back() == ' ')) header.pop_back();
    if (header != kTextHeader) {
        throw ValidationError("tpm: missing '# peid-tpm v1' header");
    }
    if (!next_content_line(true)) throw ValidationError("tpm: missing source schema line");
    VariableSchema source = parse_schema_line(line, "source", lineno);
    if (!next_content_line(false)) throw ValidationError("tpm: missing target schema line");
    VariableSchema target = parse_schema_line(line, "target", lineno);

    const std::uint64_t rows = source.joint_count();
    const std::uint64_t cols = target.joint_count();
    std::vector<double> probs;
    probs.reserve(static_cast<std::size_t>(rows * cols));
    for (std::uint64_t r = 0; r < rows; ++r) {
        if (!next_content_line(false)) {
            throw ValidationError("tpm: expected " + std::to_string(rows) +
                                  " probability rows, got " + std::to_string(r));
        }
        std::istringstream row(line);
        for (std::uint64_t c = 0; c < cols; ++c) {
            double v;
            if (!(row >> v)) {
                throw ValidationError("tpm line " + std::to_string(lineno) + ": expected " +
                                      std::to_string(cols) + " probabilities");
            }
            probs.push_back(v);
        }
        std::string extra;
        if (row >> extra) {
            throw ValidationError("tpm line " + std::to_string(lineno) +
                                  ": trailing content '" + extra + "'");
        }
    }
    TransitionMatrix tpm(std::move(source), std::move(target), std::move(probs));
    require_valid(tpm);
    return tpm;
}

nlohmann::json tpm_to_json(const TransitionMatrix& tpm) {
    nlohmann::json doc;
    doc["format"] = "peid-tpm";
    doc["version"] = 1;
    doc["source"] = {{"variables", tpm.source().names()},
                     {"cardinalities", tpm.source().cardinalities()}};
    doc["target"] = {{"variables", tpm.target().names()},
                     {"cardinalities", tpm.target().cardinalities()}};
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < tpm.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < tpm.cols(); ++j) row.push_back(tpm.at(i, j));
        rows.push_back(std::move(row));
    }
    doc["probs"] = std::move(rows);
    return doc;
}

namespace {

VariableSchema schema_from_json(const nlohmann::json& node, const char* what) {
    if (!node.is_object() || !node.contains("variables")) {
        throw ValidationError(std::string("tpm json: missing ") + what + " schema");
    }
    std::vector<std::string> names = node.at("variables").get<std::vector<std::string>>();
    std::vector<int> cards;
    if (node.contains("cardinalities")) {
        cards = node.at("cardinalities").get<std::vector<int>>();
    } else {
        cards.assign(names.size(), 2);
    }
    return VariableSchema(std::move(names), std::move(cards));
}

} // namespace

TransitionMatrix tpm_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || doc.value("format", "") != "peid-tpm") {
        throw ValidationError("tpm json: expected object with format 'peid-tpm'");
    }
    if (doc.value("version", 0) != 1) {
        throw ValidationError("tpm json: unsupported version");
    }
    VariableSchema source = schema_from_json(doc.at("source"), "source");
    VariableSchema target = schema_from_json(doc.at("target"), "target");
    const auto& rows = doc.at("probs");
    if (!rows.is_array() || rows.size() != source.joint_count()) {
        throw ValidationError("tpm json: probs must have one row per source state");
    }
    std::vector<double> probs;
    probs.reserve(static_cast<std::size_t>(source.joint_count() * target.joint_count()));
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != target.joint_count()) {
            throw ValidationError("tpm json: row length mismatch");
        }
        for (const auto& v : row) probs.push_back(v.get<double>());
    }
    TransitionMatrix tpm(std::move(source), std::move(target), std::move(probs));
    require_valid(tpm);
    return tpm;
}

TransitionMatrix parse_tpm_document(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '{') {
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(text);
            } catch (const nlohmann::json::parse_error& e) {
                throw ValidationError(std::string("tpm json: ") + e.what());
            }
            return tpm_from_json(doc);
        }
        break;
    }
    return tpm_from_text(text);
}

TransitionMatrix load_tpm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open tpm file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tpm_document(buf.str());
}

} // namespace peid
