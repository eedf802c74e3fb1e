#pragma once

#include <memory>
#include <string>
#include <vector>
#include <functional>

namespace peglab {

// Parsing expression tree. Nodes are immutable and shared; rewrites build new
// spines and reuse untouched subtrees.
enum class ExprKind {
    Empty,        // matches nothing, always succeeds
    Any,          // '.'  one arbitrary byte
    Literal,      // 'text'
    CharClass,    // [a-z0-9_]
    NonTerminal,  // reference to a rule
    Sequence,     // p1 p2       (binary, right folded)
    Choice,       // p1 / p2     (binary, right folded)
    Star,         // p*
    Plus,         // p+          sugar for p p*
    Optional,     // p?          sugar for p / ''
    Not,          // !p
    And,          // &p          sugar for !!p
    Throw,        // ^label
    Labeled,      // [p]^label   sugar for p / ^label
};

struct CharRange {
    unsigned char lo = 0;
    unsigned char hi = 0;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    std::string text;               // literal text, rule name, or label
    std::vector<CharRange> ranges;  // CharClass only
    ExprPtr left;                   // first child
    ExprPtr right;                  // second child (Sequence/Choice)

    bool leaf() const { return !left && !right; }
};

ExprPtr empty_expr();
ExprPtr any_expr();
ExprPtr lit(std::string text);
ExprPtr charclass(std::vector<CharRange> ranges);
ExprPtr nonterminal(std::string name);
ExprPtr seq(ExprPtr a, ExprPtr b);
ExprPtr choice(ExprPtr a, ExprPtr b);
ExprPtr star(ExprPtr p);
ExprPtr plus(ExprPtr p);
ExprPtr optional(ExprPtr p);
ExprPtr not_pred(ExprPtr p);
ExprPtr and_pred(ExprPtr p);
ExprPtr throw_label(std::string label);
ExprPtr labeled(ExprPtr p, std::string label);

// Right-folded n-ary builders: {a,b,c} -> a op (b op c). Empty input yields
// Empty for seq_all and a never-matching !'' for choice_all.
ExprPtr seq_all(const std::vector<ExprPtr>& parts);
ExprPtr choice_all(const std::vector<ExprPtr>& parts);

bool expr_equal(const Expr& a, const Expr& b);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Rewrites all sugar: Labeled -> Choice(p, Throw), Plus -> Sequence(p, Star p),
// Optional -> Choice(p, Empty), And -> Not(Not p).
ExprPtr desugar(const ExprPtr& e);

// Same as desugar but keeps Labeled nodes intact. Used wherever label sites
// must stay addressable (diffing, merging) while shapes are normalized.
ExprPtr desugar_keep_labels(const ExprPtr& e);

// Expands only Plus. The annotators run this first so both halves of p+ get
// their own treatment.
ExprPtr desugar_plus(const ExprPtr& e);

// Drops annotations: Labeled(p, l) and the desugared Choice(p, Throw(l))
// both become erase(p). A Throw outside those shapes is kept as-is.
ExprPtr erase_labels(const ExprPtr& e);

// Path into an expression tree: child indices from the root (0 = left/only,
// 1 = right).
using Path = std::vector<int>;

std::string path_to_string(const Path& p);

const Expr* at_path(const Expr& root, const Path& p);

// Preorder walk with the path of every node.
void visit_expr(const ExprPtr& root,
                const std::function<void(const ExprPtr&, const Path&)>& fn);

// Concrete syntax, parenthesized by precedence; read_grammar accepts it back.
std::string expr_to_string(const Expr& e);
std::string expr_to_string(const ExprPtr& e);

} // namespace peglab
