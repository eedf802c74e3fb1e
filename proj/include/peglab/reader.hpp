#pragma once

#include "peglab/grammar.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace peglab {

// Raised by read_grammar on malformed input. Positions are 1-based.
class GrammarSyntaxError : public std::runtime_error {
public:
    GrammarSyntaxError(int line, int col, const std::string& msg);
    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& message() const { return msg_; }

private:
    int line_;
    int col_;
    std::string msg_;
};

// Parses the rule-file format:
//
//   name    <- expression            first rule is the start rule
//   NAME    <- expression            all-caps head marks a token rule
//   recover label <- expression      recovery expression for a label
//   message label "text"             error message for a label
//
// Expressions use / ! & * + ? ( ) '...' ^label and [e]^label. Character
// classes and '.' are only accepted in token rules, recovery expressions,
// and the eatToken rule, where '[' always opens a class.
Grammar read_grammar(const std::string& text);
Grammar read_grammar_file(const std::string& path);

struct ValidationIssue {
    std::string kind;   // undefined-nonterminal | duplicate-rule |
                        // left-recursive | bad-label | reserved-fail
    std::string where;  // rule name or label
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Structural checks a grammar must pass before analysis or matching:
// every referenced rule defined, no rule defined twice, no left recursion
// (predicates and nullable prefixes included) and no repetition whose body
// can succeed without consuming, recovery/message entries only for labels
// the rules actually throw, and the reserved result name kept out of the
// label set.
ValidationReport validate(const Grammar& g);

// Renders a grammar back to the rule-file format. The output parses back
// to a structurally identical grammar.
std::string pretty_print(const Grammar& g);

} // namespace peglab
