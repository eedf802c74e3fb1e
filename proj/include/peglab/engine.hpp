#pragma once

#include "peglab/analysis.hpp"
#include "peglab/grammar.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace peglab {

// One error repaired mid-parse: the label that was thrown, where it was
// thrown, and the byte range the recovery expression consumed.
struct RecoveredError {
    std::string label;
    std::size_t position = 0;
    std::size_t skip_begin = 0;
    std::size_t skip_end = 0;
};

// Outcome of matching an expression: success with an end offset, or failure
// carrying a label ("fail" for ordinary failure) and the offset it was
// raised at. recovered lists repaired errors in the order they were hit.
struct MatchResult {
    bool ok = false;
    std::size_t end = 0;
    std::string fail_label;
    std::size_t fail_pos = 0;
    std::vector<RecoveredError> recovered;
};

inline const std::string kFailLabel = "fail";

// Successful matches of token rules and bare literals in syntactical
// context, in match order. Entries inside predicates are not recorded.
struct TokenLogEntry {
    bool is_literal = false;
    std::string name; // token rule name, or the literal text
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct TreeNode;
using TreePtr = std::shared_ptr<const TreeNode>;

struct TreeNode {
    enum class Kind { NonTerminal, Token, Error };
    Kind kind = Kind::NonTerminal;
    std::string name;  // rule name (NonTerminal, Token) or label (Error)
    std::string text;  // matched text (Token only)
    std::size_t begin = 0;
    std::size_t end = 0;
    std::vector<TreePtr> children; // NonTerminal only
};

struct ErrorReport {
    std::string file;
    int line = 1;
    int column = 1;
    std::string label;
    std::string message; // empty means use the default rendering
};

struct ParseResult {
    TreePtr tree; // null on failure
    MatchResult outcome;
    std::vector<ErrorReport> reports;
    bool matched() const { return outcome.ok; }
    bool clean() const { return outcome.ok && outcome.recovered.empty(); }
};

// The matching interpreter. Single-use state per call; one instance may be
// reused sequentially. Lexical rules match raw characters; in syntactical
// context every literal and token-rule reference first skips spaces, tabs,
// newlines and "--"-to-end-of-line comments. The skip is backtracked with
// the attempt and never counted in token spans.
class Engine {
public:
    explicit Engine(const Grammar& g, bool use_recovery = true);

    // Raw matching semantics from an arbitrary expression; builds no tree.
    MatchResult match_expr(const ExprPtr& e, std::string_view input,
                           std::size_t pos = 0);

    // Match a single rule by name (skip state as if referenced from a
    // syntactical rule when the rule is lexical).
    MatchResult match_rule(const std::string& rule, std::string_view input,
                           std::size_t pos = 0);

    // Full parse from the start rule: trees, reports, token log. The whole
    // input must be consumed (trailing skippable text aside); leftover input
    // turns a successful match into an ordinary failure at the leftover
    // offset.
    ParseResult parse(std::string_view input, const std::string& file = "input");

    // Token log of the most recent call.
    const std::vector<TokenLogEntry>& token_log() const { return log_; }

private:
    const Grammar* g_;
    bool use_recovery_;
    std::vector<TokenLogEntry> log_;
    friend struct Matcher;
};

// Advance over layout as syntactical context does: blanks, tabs, newlines,
// and "--" comments running to end of line.
std::size_t skip_layout(std::string_view in, std::size_t pos);

// line/column (1-based) of a byte offset.
std::pair<int, int> line_col_of(std::string_view input, std::size_t offset);

// "<file>:<line>: syntax error, <message>"; the default message for a bare
// label is "[<label>]". with_column inserts ":<column>" after the line.
std::string format_error(const ErrorReport& r, bool with_column = false);

// Renders a tree as nested s-expressions, token text included; used by tests
// and the CLI's JSON emitter is built on the same traversal.
std::string tree_to_string(const TreePtr& t);

} // namespace peglab
