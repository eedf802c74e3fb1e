#include <doctest.h>

#include "peglab/analysis.hpp"
#include "peglab/reader.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

using namespace peglab;

// ---------------------------------------------------------------------------
// Independent reference implementation of the token-level analyses, written
// against the definitions rather than the library code: string-encoded
// tokens, whole-table recomputation, and a fixed iteration cap instead of
// change tracking. Used to cross-check the library on every grammar below.
// ---------------------------------------------------------------------------
namespace oracle {

using SSet = std::set<std::string>;

struct Tables {
    std::map<std::string, bool> nullable;
    std::map<std::string, SSet> first;
    std::map<std::string, SSet> last;
    std::map<std::string, SSet> follow;
};

inline std::string lex(const std::string& n) { return "T:" + n; }
inline std::string lit(const std::string& t) { return "L:" + t; }
inline const std::string kEnd = "$";
inline const std::string kAny = "?";

inline bool is_token_rule(const std::string& n) { return is_lexical_name(n); }

bool nul(const Expr& e, const Tables& t) {
    switch (e.kind) {
    case ExprKind::Empty: return true;
    case ExprKind::Any:
    case ExprKind::Literal:
    case ExprKind::CharClass: return false;
    case ExprKind::NonTerminal: {
        if (is_token_rule(e.text)) return false;
        auto it = t.nullable.find(e.text);
        return it != t.nullable.end() && it->second;
    }
    case ExprKind::Sequence: return nul(*e.left, t) && nul(*e.right, t);
    case ExprKind::Choice: return nul(*e.left, t) || nul(*e.right, t);
    case ExprKind::Star:
    case ExprKind::Optional:
    case ExprKind::Not:
    case ExprKind::And: return true;
    case ExprKind::Plus:
    case ExprKind::Labeled: return nul(*e.left, t);
    case ExprKind::Throw: return false;
    }
    return false;
}

SSet fst(const Expr& e, const Tables& t) {
    switch (e.kind) {
    case ExprKind::Empty: return {};
    case ExprKind::Any:
    case ExprKind::CharClass: return {kAny};
    case ExprKind::Literal: return {lit(e.text)};
    case ExprKind::NonTerminal: {
        if (is_token_rule(e.text)) return {lex(e.text)};
        auto it = t.first.find(e.text);
        return it != t.first.end() ? it->second : SSet{};
    }
    case ExprKind::Sequence: {
        SSet out = fst(*e.left, t);
        if (nul(*e.left, t)) {
            SSet r = fst(*e.right, t);
            out.insert(r.begin(), r.end());
        }
        return out;
    }
    case ExprKind::Choice: {
        SSet out = fst(*e.left, t);
        SSet r = fst(*e.right, t);
        out.insert(r.begin(), r.end());
        return out;
    }
    case ExprKind::Star:
    case ExprKind::Optional:
    case ExprKind::Plus:
    case ExprKind::Labeled: return fst(*e.left, t);
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Throw: return {};
    }
    return {};
}

SSet lst(const Expr& e, const Tables& t) {
    switch (e.kind) {
    case ExprKind::Empty: return {};
    case ExprKind::Any:
    case ExprKind::CharClass: return {kAny};
    case ExprKind::Literal: return {lit(e.text)};
    case ExprKind::NonTerminal: {
        if (is_token_rule(e.text)) return {lex(e.text)};
        auto it = t.last.find(e.text);
        return it != t.last.end() ? it->second : SSet{};
    }
    case ExprKind::Sequence: {
        SSet out = lst(*e.right, t);
        if (nul(*e.right, t)) {
            SSet l = lst(*e.left, t);
            out.insert(l.begin(), l.end());
        }
        return out;
    }
    case ExprKind::Choice: {
        SSet out = lst(*e.left, t);
        SSet r = lst(*e.right, t);
        out.insert(r.begin(), r.end());
        return out;
    }
    case ExprKind::Star:
    case ExprKind::Optional:
    case ExprKind::Plus:
    case ExprKind::Labeled: return lst(*e.left, t);
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Throw: return {};
    }
    return {};
}

// first(p) if p cannot be empty, otherwise first(p) plus flw.
SSet calck(const Expr& e, const SSet& flw, const Tables& t) {
    SSet out = fst(e, t);
    if (nul(e, t)) out.insert(flw.begin(), flw.end());
    return out;
}

void follow_walk(const Expr& e, const SSet& flw, Tables& t) {
    switch (e.kind) {
    case ExprKind::NonTerminal:
        if (!is_token_rule(e.text) && e.text != eat_token_rule_name() &&
            t.follow.count(e.text))
            t.follow[e.text].insert(flw.begin(), flw.end());
        return;
    case ExprKind::Sequence:
        follow_walk(*e.left, calck(*e.right, flw, t), t);
        follow_walk(*e.right, flw, t);
        return;
    case ExprKind::Choice:
        follow_walk(*e.left, flw, t);
        follow_walk(*e.right, flw, t);
        return;
    case ExprKind::Star:
    case ExprKind::Plus: {
        SSet inner = fst(*e.left, t);
        inner.insert(flw.begin(), flw.end());
        follow_walk(*e.left, inner, t);
        return;
    }
    case ExprKind::Optional:
    case ExprKind::Labeled:
        follow_walk(*e.left, flw, t);
        return;
    default:
        return;
    }
}

Tables build(const Grammar& g) {
    Tables t;
    for (const Rule& r : g.rules) {
        if (is_token_rule(r.name)) continue;
        t.nullable[r.name] = false;
        t.first[r.name] = {};
        t.last[r.name] = {};
        if (r.name != eat_token_rule_name()) t.follow[r.name] = {};
    }
    for (int round = 0; round < 100; ++round) {
        for (const Rule& r : g.rules) {
            if (is_token_rule(r.name)) continue;
            t.nullable[r.name] = nul(*r.body, t);
            t.first[r.name] = fst(*r.body, t);
            t.last[r.name] = lst(*r.body, t);
        }
    }
    if (!g.rules.empty() && t.follow.count(g.rules.front().name))
        t.follow[g.rules.front().name].insert(kEnd);
    for (int round = 0; round < 100; ++round) {
        for (const Rule& r : g.rules) {
            if (is_token_rule(r.name) || r.name == eat_token_rule_name()) continue;
            follow_walk(*r.body, t.follow[r.name], t);
        }
    }
    return t;
}

SSet enc(const TokenSet& s) {
    SSet out;
    for (const TokenId& t : s.tokens) {
        switch (t.kind) {
        case TokenId::Kind::Lexical: out.insert(lex(t.text)); break;
        case TokenId::Kind::Literal: out.insert(lit(t.text)); break;
        case TokenId::Kind::End: out.insert(kEnd); break;
        case TokenId::Kind::AnyChar: out.insert(kAny); break;
        }
    }
    return out;
}

} // namespace oracle

namespace {

const char* kToyGrammar = R"(
prog <- PUBLIC CLASS NAME LCUR PUBLIC STATIC VOID MAIN LPAR STRING LBRA RBRA NAME RPAR blockStmt RCUR
stmt <- ifStmt / whileStmt / printStmt / decStmt / assignStmt / blockStmt
ifStmt <- IF LPAR exp RPAR stmt (ELSE stmt / '')
whileStmt <- WHILE LPAR exp RPAR stmt
decStmt <- INT NAME (ASSIGN exp / '') SEMI
assignStmt <- NAME ASSIGN exp SEMI
printStmt <- PRINT LPAR exp RPAR SEMI
exp <- relExp (EQ relExp)*
relExp <- addExp (LT addExp)*
addExp <- mulExp ((PLUS / MINUS) mulExp)*
mulExp <- atomExp ((TIMES / DIV) atomExp)*
atomExp <- LPAR exp RPAR / NUMBER / NAME
blockStmt <- LCUR (stmt)* RCUR

PUBLIC <- 'public' ![a-zA-Z0-9_]
CLASS <- 'class' ![a-zA-Z0-9_]
STATIC <- 'static' ![a-zA-Z0-9_]
VOID <- 'void' ![a-zA-Z0-9_]
MAIN <- 'main' ![a-zA-Z0-9_]
STRING <- 'String' ![a-zA-Z0-9_]
IF <- 'if' ![a-zA-Z0-9_]
ELSE <- 'else' ![a-zA-Z0-9_]
WHILE <- 'while' ![a-zA-Z0-9_]
INT <- 'int' ![a-zA-Z0-9_]
PRINT <- 'System.out.println'
NAME <- !(('public' / 'class' / 'static' / 'void' / 'String' / 'if' / 'else' / 'while' / 'int') ![a-zA-Z0-9_]) [a-zA-Z_] [a-zA-Z0-9_]*
NUMBER <- [0-9]+
LPAR <- '('
RPAR <- ')'
LCUR <- '{'
RCUR <- '}'
LBRA <- '['
RBRA <- ']'
ASSIGN <- '=' !'='
SEMI <- ';'
EQ <- '=='
LT <- '<'
PLUS <- '+'
MINUS <- '-'
TIMES <- '*'
DIV <- '/'
)";

Grammar toy() {
    Grammar g = read_grammar(kToyGrammar);
    REQUIRE(validate(g).ok());
    return g;
}

TokenSet lexset(std::initializer_list<const char*> names) {
    TokenSet s;
    for (const char* n : names) s.tokens.insert(TokenId::lexical(n));
    return s;
}

void cross_check(const Grammar& g) {
    Analysis a(g);
    oracle::Tables t = oracle::build(g);
    for (const Rule& r : g.rules) {
        if (is_lexical_name(r.name)) continue;
        INFO("rule ", r.name);
        CHECK(a.rule_nullable(r.name) == t.nullable[r.name]);
        CHECK(oracle::enc(a.rule_first(r.name)) == t.first[r.name]);
        CHECK(oracle::enc(a.last(r.body)) == t.last[r.name]);
        if (r.name != eat_token_rule_name())
            CHECK(oracle::enc(a.follow(r.name)) == t.follow[r.name]);
        visit_expr(r.body, [&](const ExprPtr& e, const Path& p) {
            INFO("path ", path_to_string(p));
            CHECK(oracle::enc(a.first(e)) == oracle::fst(*e, t));
            CHECK(a.nullable(e) == oracle::nul(*e, t));
        });
    }
}

} // namespace

TEST_CASE("token-level first sets of the toy statement grammar") {
    Grammar g = toy();
    Analysis a(g);

    CHECK(oracle::enc(a.rule_first("stmt")) ==
          oracle::SSet{"T:IF", "T:WHILE", "T:PRINT", "T:INT", "T:NAME", "T:LCUR"});
    CHECK(oracle::enc(a.rule_first("atomExp")) ==
          oracle::SSet{"T:LPAR", "T:NUMBER", "T:NAME"});
    CHECK(oracle::enc(a.rule_first("exp")) ==
          oracle::SSet{"T:LPAR", "T:NUMBER", "T:NAME"});
    CHECK(oracle::enc(a.rule_first("prog")) == oracle::SSet{"T:PUBLIC"});

    CHECK_FALSE(a.rule_nullable("stmt"));
    CHECK_FALSE(a.rule_nullable("exp"));
    CHECK_FALSE(a.rule_first("stmt").epsilon);

    // A lexical rule is its own one-token alphabet entry.
    CHECK(oracle::enc(a.rule_first("NAME")) == oracle::SSet{"T:NAME"});
}

TEST_CASE("follow sets of the toy statement grammar") {
    Grammar g = toy();
    Analysis a(g);

    CHECK(oracle::enc(a.follow("prog")) == oracle::SSet{"$"});
    CHECK(oracle::enc(a.follow("exp")) == oracle::SSet{"T:RPAR", "T:SEMI"});
    CHECK(oracle::enc(a.follow("relExp")) ==
          oracle::SSet{"T:EQ", "T:RPAR", "T:SEMI"});
    CHECK(oracle::enc(a.follow("addExp")) ==
          oracle::SSet{"T:LT", "T:EQ", "T:RPAR", "T:SEMI"});
    CHECK(oracle::enc(a.follow("mulExp")) ==
          oracle::SSet{"T:PLUS", "T:MINUS", "T:LT", "T:EQ", "T:RPAR", "T:SEMI"});
    CHECK(oracle::enc(a.follow("atomExp")) ==
          oracle::SSet{"T:TIMES", "T:DIV", "T:PLUS", "T:MINUS", "T:LT", "T:EQ",
                       "T:RPAR", "T:SEMI"});

    // A statement can be followed by whatever starts one (block repetition),
    // by else, or by a closing brace.
    CHECK(oracle::enc(a.follow("stmt")) ==
          oracle::SSet{"T:ELSE", "T:RCUR", "T:IF", "T:WHILE", "T:PRINT",
                       "T:INT", "T:NAME", "T:LCUR"});
    CHECK(oracle::enc(a.follow("ifStmt")) == oracle::enc(a.follow("stmt")));
    CHECK(oracle::enc(a.follow("blockStmt")) == oracle::enc(a.follow("stmt")));
}

TEST_CASE("independent fixpoint agrees on every rule and subexpression") {
    cross_check(toy());

    cross_check(read_grammar(
        "s <- (item)* X\n"
        "item <- X Y\n"
        "X <- 'x'\nY <- 'y'\n"));

    cross_check(read_grammar(
        "s <- a b? (c / '')\n"
        "a <- A*\n"
        "b <- B\n"
        "c <- C s\n"
        "A <- 'a'\nB <- 'b'\nC <- 'c'\n"));
}

TEST_CASE("calck takes first of the head or merges the tail on emptiness") {
    Grammar g = toy();
    Analysis a(g);

    TokenSet flw = lexset({"SEMI"});
    CHECK(oracle::enc(a.calck(nonterminal("exp"), flw)) ==
          oracle::SSet{"T:LPAR", "T:NUMBER", "T:NAME"});

    ExprPtr opt = choice(seq(nonterminal("ELSE"), nonterminal("stmt")), empty_expr());
    CHECK(oracle::enc(a.calck(opt, lexset({"RCUR"}))) ==
          oracle::SSet{"T:ELSE", "T:RCUR"});

    CHECK(oracle::enc(a.calck(star(nonterminal("EQ")), lexset({"RPAR"}))) ==
          oracle::SSet{"T:EQ", "T:RPAR"});
}

TEST_CASE("failure and throw reachability") {
    Grammar g = toy();
    Analysis a(g);

    CHECK(a.can_fail(nonterminal("IF")));
    CHECK(a.can_fail(nonterminal("stmt")));
    CHECK_FALSE(a.can_throw(nonterminal("stmt")));

    // A labeled group converts failure into a throw.
    ExprPtr lab = labeled(nonterminal("exp"), "cond");
    CHECK_FALSE(a.can_fail(lab));
    CHECK(a.can_throw(lab));

    // An alternative guarded by a throw can never fall through quietly.
    ExprPtr c = choice(throw_label("boom"), nonterminal("NAME"));
    CHECK_FALSE(a.can_fail(c));
    CHECK(a.can_throw(c));

    // Repetitions absorb failure of the body.
    CHECK_FALSE(a.can_fail(star(nonterminal("stmt"))));
    CHECK_FALSE(a.can_fail(optional(nonterminal("stmt"))));
    CHECK(a.can_fail(plus(nonterminal("stmt"))));

    // Predicates turn any outcome into plain failure and swallow labels.
    CHECK(a.can_fail(not_pred(lab)));
    CHECK_FALSE(a.can_throw(not_pred(lab)));
    CHECK(a.can_fail(and_pred(lab)));
    CHECK_FALSE(a.can_throw(and_pred(lab)));

    CHECK_FALSE(a.can_fail(empty_expr()));
    CHECK_FALSE(a.can_fail(throw_label("x")));
    CHECK(a.can_throw(throw_label("x")));
}

TEST_CASE("character-level emptiness of token rules") {
    Grammar g = read_grammar(
        "s <- NUMBER EOF\n"
        "NUMBER <- [0-9]+\n"
        "WS <- [ ]*\n"
        "EOF <- !.\n");
    Analysis a(g);
    CHECK_FALSE(a.lexical_nullable("NUMBER"));
    CHECK(a.lexical_nullable("WS"));
    CHECK(a.lexical_nullable("EOF"));
}

TEST_CASE("name-level uniqueness of token rules") {
    Grammar g = toy();
    Analysis a(g);
    UniquenessInfo info = a.compute_uniqueness();

    for (const char* n : {"IF", "ELSE", "WHILE", "INT", "PRINT", "NUMBER",
                          "EQ", "LT", "PLUS", "MINUS", "TIMES", "DIV",
                          "CLASS", "STATIC", "VOID", "MAIN", "STRING",
                          "LBRA", "RBRA"})
        CHECK(info.unique_lexical.count(n));

    for (const char* n : {"PUBLIC", "NAME", "LPAR", "RPAR", "LCUR", "RCUR",
                          "ASSIGN", "SEMI"})
        CHECK_FALSE(info.unique_lexical.count(n));
}

TEST_CASE("preceding contexts separate token occurrences") {
    Grammar g = toy();
    Analysis a(g);
    UniquenessInfo info = a.compute_uniqueness();

    // Both uses of PUBLIC sit in prog: one at rule entry (widened to what can
    // follow prog, i.e. end of input), one after the opening brace.
    auto pub = rule_usages(g, "PUBLIC");
    REQUIRE(pub.size() == 2);
    CHECK(oracle::enc(info.preceding[{pub[0].rule, pub[0].path}]) ==
          oracle::SSet{"$"});
    CHECK(oracle::enc(info.preceding[{pub[1].rule, pub[1].path}]) ==
          oracle::SSet{"T:LCUR"});
    CHECK(info.occurrence_unique(pub[0].rule, pub[0].path));
    CHECK(info.occurrence_unique(pub[1].rule, pub[1].path));

    // The five LPAR uses are told apart by what precedes them.
    auto lp = rule_usages(g, "LPAR");
    REQUIRE(lp.size() == 5);
    for (const Usage& u : lp) {
        INFO("LPAR in ", u.rule);
        CHECK(info.occurrence_unique(u.rule, u.path));
    }
    CHECK(oracle::enc(info.preceding[{lp[1].rule, lp[1].path}]) ==
          oracle::SSet{"T:IF"});
    CHECK(oracle::enc(info.preceding[{lp[4].rule, lp[4].path}]) ==
          oracle::enc(a.follow("atomExp")));

    // NAME after int collides with NAME at the start of an assignment.
    auto nm = rule_usages(g, "NAME");
    REQUIRE(nm.size() == 5);
    std::map<std::string, bool> by_rule;
    for (const Usage& u : nm)
        by_rule[u.rule] = info.occurrence_unique(u.rule, u.path) ||
                          (by_rule.count(u.rule) && by_rule[u.rule]);
    CHECK(by_rule["prog"]);
    CHECK(by_rule["atomExp"]);
    CHECK_FALSE(by_rule["decStmt"]);
    CHECK_FALSE(by_rule["assignStmt"]);

    // Assignment tokens collide across rules; closing tokens collide too.
    for (const char* n : {"ASSIGN", "SEMI", "RPAR", "LCUR", "RCUR"})
        for (const Usage& u : rule_usages(g, n)) {
            INFO(n, " in ", u.rule);
            CHECK_FALSE(info.occurrence_unique(u.rule, u.path));
        }
}

TEST_CASE("shared context inside one rule marks the last use") {
    Grammar g = read_grammar(
        "s <- r C\n"
        "r <- IF A / IF B\n"
        "IF <- 'if'\nA <- 'a'\nB <- 'b'\nC <- 'c'\n");
    Analysis a(g);
    UniquenessInfo info = a.compute_uniqueness();

    auto u = rule_usages(g, "IF");
    REQUIRE(u.size() == 2);
    CHECK(oracle::enc(info.preceding[{u[0].rule, u[0].path}]) ==
          oracle::SSet{"T:C"});
    CHECK(oracle::enc(info.preceding[{u[1].rule, u[1].path}]) ==
          oracle::SSet{"T:C"});
    CHECK_FALSE(info.occurrence_unique(u[0].rule, u[0].path));
    CHECK(info.occurrence_unique(u[1].rule, u[1].path));

    // The same collision across two different rules resolves nothing.
    Grammar g2 = read_grammar(
        "s <- p C / q C\n"
        "p <- IF A\n"
        "q <- IF B\n"
        "IF <- 'if'\nA <- 'a'\nB <- 'b'\nC <- 'c'\n");
    UniquenessInfo info2 = Analysis(g2).compute_uniqueness();
    for (const Usage& uu : rule_usages(g2, "IF"))
        CHECK_FALSE(info2.occurrence_unique(uu.rule, uu.path));
}

TEST_CASE("committed rules grow from the start rule") {
    Grammar g = toy();
    UniquenessInfo info = Analysis(g).compute_uniqueness();
    CHECK(info.unique_syntactical == std::set<std::string>{"prog"});

    // A chain of rules committed by unique prefixes.
    Grammar g2 = read_grammar(
        "s <- A t B u\n"
        "t <- C / D\n"
        "u <- E t\n"
        "A <- 'a'\nB <- 'b'\nC <- 'c'\nD <- 'd'\nE <- 'e'\n");
    UniquenessInfo info2 = Analysis(g2).compute_uniqueness();
    CHECK(info2.unique_syntactical == std::set<std::string>{"s", "t", "u"});

    // A repetition whose body clashes with what follows it de-commits.
    Grammar g3 = read_grammar(
        "s <- (x)* A\n"
        "x <- A B\n"
        "A <- 'a'\nB <- 'b'\n");
    UniquenessInfo info3 = Analysis(g3).compute_uniqueness();
    CHECK(info3.unique_syntactical == std::set<std::string>{"s"});

    // The same shape with a disjoint body stays committed.
    Grammar g4 = read_grammar(
        "s <- (x)* A\n"
        "x <- C B\n"
        "A <- 'a'\nB <- 'b'\nC <- 'c'\n");
    UniquenessInfo info4 = Analysis(g4).compute_uniqueness();
    CHECK(info4.unique_syntactical == std::set<std::string>{"s", "x"});
}

TEST_CASE("committed-match shapes") {
    Grammar g = toy();
    Analysis a(g);
    UniquenessInfo info = a.compute_uniqueness();

    Path nowhere{9, 9};
    CHECK(a.match_uni(nonterminal("WHILE"), info, "whileStmt", nowhere));
    CHECK_FALSE(a.match_uni(nonterminal("SEMI"), info, "decStmt", nowhere));
    CHECK_FALSE(a.match_uni(nonterminal("stmt"), info, "prog", nowhere));

    // A sequence is committed if either side is; a choice needs both.
    CHECK(a.match_uni(seq(nonterminal("WHILE"), nonterminal("SEMI")), info,
                      "whileStmt", nowhere));
    CHECK(a.match_uni(seq(nonterminal("SEMI"), nonterminal("WHILE")), info,
                      "whileStmt", nowhere));
    CHECK_FALSE(a.match_uni(choice(nonterminal("WHILE"), nonterminal("SEMI")),
                            info, "whileStmt", nowhere));
    CHECK(a.match_uni(choice(nonterminal("WHILE"), nonterminal("IF")), info,
                      "whileStmt", nowhere));
    CHECK(a.match_uni(plus(nonterminal("IF")), info, "ifStmt", nowhere));
    CHECK_FALSE(a.match_uni(star(nonterminal("IF")), info, "ifStmt", nowhere));
    CHECK_FALSE(a.match_uni(optional(nonterminal("IF")), info, "ifStmt", nowhere));
    CHECK_FALSE(a.match_uni(lit("if"), info, "ifStmt", nowhere));

    // Occurrence-level commitment uses the position, not just the name.
    auto lp = rule_usages(g, "LPAR");
    CHECK(a.match_uni(nonterminal("LPAR"), info, lp[1].rule, lp[1].path));
}

TEST_CASE("rules reached through overlapping alternatives are set aside") {
    Grammar clash = read_grammar(
        "s <- a / b\n"
        "a <- X Y\n"
        "b <- X Z\n"
        "X <- 'x'\nY <- 'y'\nZ <- 'z'\n");
    CHECK(Analysis(clash).ban_set() == std::set<std::string>{"a", "b"});

    Grammar disjoint = read_grammar(
        "s <- a / b\n"
        "a <- X Y\n"
        "b <- Z Y\n"
        "X <- 'x'\nY <- 'y'\nZ <- 'z'\n");
    CHECK(Analysis(disjoint).ban_set().empty());

    Grammar rep = read_grammar(
        "s <- (item)* X\n"
        "item <- X Y\n"
        "X <- 'x'\nY <- 'y'\n");
    CHECK(Analysis(rep).ban_set() == std::set<std::string>{"item"});

    // Everything a set-aside rule references is set aside with it.
    Grammar chain = read_grammar(
        "s <- a / b\n"
        "a <- X c Y\n"
        "b <- X\n"
        "c <- W\n"
        "W <- 'w'\nX <- 'x'\nY <- 'y'\n");
    CHECK(Analysis(chain).ban_set() == std::set<std::string>{"a", "b", "c"});
}
