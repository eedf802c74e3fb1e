#pragma once

#include "peglab/expr.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace peglab {

struct Rule {
    std::string name;
    ExprPtr body;
};

// Where a label annotation came from. Manual labels are kept verbatim by the
// annotators; generated ones carry the strategy that produced them.
enum class LabelOrigin {
    Manual,
    Standard,
    Unique,
    Banning,
    StartRule,
};

const char* label_origin_name(LabelOrigin o);

struct Grammar {
    // Definition order matters: the first rule is the start rule and token
    // alternatives are rendered in this order. Duplicates are representable
    // so validation can report them.
    std::vector<Rule> rules;

    // recover <label> <- expr
    std::map<std::string, ExprPtr> recovery;

    // message <label> "text"
    std::map<std::string, std::string> messages;

    std::map<std::string, LabelOrigin> label_origin;

    const Rule* find_rule(const std::string& name) const;
    bool has_rule(const std::string& name) const;
    const Rule& start() const;

    // Replaces the body of an existing rule, appends the rule otherwise.
    void set_rule(const std::string& name, ExprPtr body);
};

// Rule-name capitalization decides the tier: names without lowercase letters
// are lexical (token level), everything else is syntactical.
bool is_lexical_name(const std::string& name);

// Name of the synthesized token-skipping rule used by recovery expressions.
inline const char* eat_token_rule_name() { return "eatToken"; }

// All labels thrown anywhere in the grammar (Throw and Labeled nodes).
std::set<std::string> thrown_labels(const Grammar& g);

// True if the grammar contains no Throw/Labeled node at all.
bool is_unlabeled(const Grammar& g);

struct Usage {
    std::string rule; // rule whose body contains the reference
    Path path;        // path of the NonTerminal node within that body
};

// Every reference to `name` from syntactical rule bodies, in definition order
// then left to right. Predicate interiors count; lexical rule bodies and the
// eatToken rule do not.
std::vector<Usage> rule_usages(const Grammar& g, const std::string& name);

// Names of all non-terminals referenced anywhere in the grammar.
std::set<std::string> referenced_names(const Grammar& g);

} // namespace peglab
