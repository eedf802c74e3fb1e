#pragma once

#include "peglab/grammar.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace peglab {

// The token alphabet the static analyses range over: lexical rule names,
// literal text appearing directly in syntactical rules, the end-of-input
// marker, and a catch-all for raw any-char matches.
struct TokenId {
    enum class Kind { Lexical, Literal, End, AnyChar };
    Kind kind = Kind::Lexical;
    std::string text;

    auto operator<=>(const TokenId&) const = default;

    static TokenId lexical(std::string name) { return {Kind::Lexical, std::move(name)}; }
    static TokenId literal(std::string text) { return {Kind::Literal, std::move(text)}; }
    static TokenId end() { return {Kind::End, {}}; }
    static TokenId any_char() { return {Kind::AnyChar, {}}; }

    std::string display() const;
};

struct TokenSet {
    std::set<TokenId> tokens;
    bool epsilon = false;

    bool contains(const TokenId& t) const { return tokens.count(t) != 0; }
    bool disjoint_with(const TokenSet& other) const;
    void add(const TokenSet& other); // tokens only; epsilon untouched
    std::string display() const;
};

struct OccurrenceKey {
    std::string rule;
    Path path;
    auto operator<=>(const OccurrenceKey&) const = default;
};

struct UniquenessInfo {
    // Lexical rules referenced exactly once across all syntactical bodies.
    std::set<std::string> unique_lexical;
    // Syntactical rules reachable only along committed paths (the start rule
    // always qualifies).
    std::set<std::string> unique_syntactical;
    // Occurrences of non-unique lexical rules that are still committed, by
    // preceding-context disjointness or the last-of-a-shared-context
    // same-rule refinement.
    std::set<OccurrenceKey> unique_occurrences;
    // Preceding-token set per lexical occurrence, for reporting.
    std::map<OccurrenceKey, TokenSet> preceding;

    bool occurrence_unique(const std::string& rule, const Path& path) const {
        return unique_occurrences.count({rule, path}) != 0;
    }
};

struct TokenPrefixViolation {
    std::string input;
    std::string rule_a;
    std::string rule_b;
};

struct TokenPrefixReport {
    std::vector<TokenPrefixViolation> violations;
    // Static heads-up: pairs of lexical rules whose possible first characters
    // overlap. Not violations by themselves.
    std::vector<std::pair<std::string, std::string>> first_char_warnings;
    bool ok() const { return violations.empty(); }
};

// Static analyses over a validated grammar. Lexical rules are opaque token
// atoms at this level: a reference to one contributes its own identity, never
// the characters inside it.
class Analysis {
public:
    explicit Analysis(const Grammar& g);

    const Grammar& grammar() const { return *g_; }

    // Token-level nullability of an expression in syntactical context.
    bool nullable(const ExprPtr& e) const;
    bool rule_nullable(const std::string& name) const;

    // Character-level nullability of a lexical rule's body; used to keep
    // zero-width token rules out of eatToken.
    bool lexical_nullable(const std::string& name) const;

    TokenSet first(const ExprPtr& e) const;
    TokenSet rule_first(const std::string& name) const;

    // Tokens an expression can end with; the mirror image of first.
    TokenSet last(const ExprPtr& e) const;

    // FOLLOW of a syntactical rule; the start rule is followed by the
    // end-of-input marker.
    TokenSet follow(const std::string& name) const;

    // first(p) when p consumes, otherwise (first(p) minus epsilon) union flw.
    TokenSet calck(const ExprPtr& e, const TokenSet& flw) const;

    // Whether a match of e can end in ordinary failure / in a thrown label.
    bool can_fail(const ExprPtr& e) const;
    bool can_throw(const ExprPtr& e) const;

    UniquenessInfo compute_uniqueness() const;

    // True when matching p always consumes at least one committed token:
    // a unique lexical reference, a sequence with a committed side, a choice
    // committed on both sides, or a plus of a committed body. host/base give
    // p's position so occurrence-level uniqueness applies.
    bool match_uni(const ExprPtr& p, const UniquenessInfo& info,
                   const std::string& host, const Path& base) const;

    // Syntactical rules inside non-disjoint choices or repetitions, closed
    // transitively over everything their bodies reference.
    std::set<std::string> ban_set() const;

private:
    const Grammar* g_;
    std::map<std::string, bool> syn_nullable_;
    std::map<std::string, bool> lex_nullable_;
    std::map<std::string, TokenSet> first_;
    std::map<std::string, TokenSet> follow_;
    std::map<std::string, TokenSet> last_;
    std::map<std::string, bool> can_fail_;
    std::map<std::string, bool> can_throw_;

    bool is_syntactical_host(const std::string& name) const;
    friend struct AnalysisBuilder;
};

// Empirical check that at most one lexical rule matches a prefix of each
// corpus string, plus static first-character overlap warnings.
TokenPrefixReport unique_token_prefix_report(const Grammar& g,
                                             const std::vector<std::string>& corpus);

} // namespace peglab
