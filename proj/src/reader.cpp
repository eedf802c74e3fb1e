#include "peglab/reader.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace peglab {

GrammarSyntaxError::GrammarSyntaxError(int line, int col, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
      line_(line), col_(col), msg_(msg) {}

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    Grammar parse() {
        Grammar g;
        skip_ws();
        if (eof()) fail("grammar has no rules");
        while (!eof()) {
            parse_item(g);
            skip_ws();
        }
        if (g.rules.empty()) fail("grammar has no rules");
        return g;
    }

private:
    const std::string& src_;
    size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;

    struct State {
        size_t i;
        int line, col;
    };
    State save() const { return {i_, line_, col_}; }
    void restore(State s) { i_ = s.i; line_ = s.line; col_ = s.col; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw GrammarSyntaxError(line_, col_, msg);
    }

    bool eof() const { return i_ >= src_.size(); }
    char cur() const { return eof() ? '\0' : src_[i_]; }
    char peek(size_t k = 1) const {
        return i_ + k < src_.size() ? src_[i_ + k] : '\0';
    }

    void advance() {
        if (eof()) return;
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip_ws() {
        for (;;) {
            while (!eof() && std::isspace(static_cast<unsigned char>(cur()))) advance();
            if (cur() == '-' && peek() == '-') {
                while (!eof() && cur() != '\n') advance();
                continue;
            }
            break;
        }
    }

    bool at_arrow() const { return cur() == '<' && peek() == '-'; }

    void expect_arrow() {
        if (!at_arrow()) fail("expected '<-'");
        advance();
        advance();
    }

    std::string read_ident() {
        if (!ident_start(cur())) fail("expected a name");
        std::string s;
        while (ident_char(cur())) {
            s += cur();
            advance();
        }
        return s;
    }

    // True when the upcoming tokens open the next top-level item, which is
    // how a multi-line rule body knows where to stop.
    bool at_rule_boundary() {
        if (!ident_start(cur())) return false;
        State s = save();
        std::string id = read_ident();
        skip_ws();
        bool boundary = false;
        if (at_arrow()) {
            boundary = true;
        } else if (id == "recover" && ident_start(cur())) {
            read_ident();
            skip_ws();
            boundary = at_arrow();
        } else if (id == "message" && ident_start(cur())) {
            read_ident();
            skip_ws();
            boundary = cur() == '"';
        }
        restore(s);
        return boundary;
    }

    void parse_item(Grammar& g) {
        State head_pos = save();
        std::string head = read_ident();
        skip_ws();

        if (head == "recover") {
            State after = save();
            if (ident_start(cur())) {
                std::string label = read_ident();
                skip_ws();
                if (at_arrow()) {
                    expect_arrow();
                    g.recovery[label] = parse_expression(true);
                    return;
                }
            }
            restore(after);
        }
        if (head == "message") {
            State after = save();
            if (ident_start(cur())) {
                std::string label = read_ident();
                skip_ws();
                if (cur() == '"') {
                    g.messages[label] = parse_dstring();
                    return;
                }
            }
            restore(after);
        }

        if (!at_arrow()) {
            restore(head_pos);
            fail("expected a rule definition");
        }
        expect_arrow();
        bool lex = is_lexical_name(head) || head == eat_token_rule_name();
        g.rules.push_back({head, parse_expression(lex)});
    }

    ExprPtr parse_expression(bool lex) {
        std::vector<ExprPtr> alts;
        alts.push_back(parse_sequence(lex));
        skip_ws();
        while (cur() == '/') {
            advance();
            alts.push_back(parse_sequence(lex));
            skip_ws();
        }
        return choice_all(alts);
    }

    ExprPtr parse_sequence(bool lex) {
        std::vector<ExprPtr> parts;
        for (;;) {
            skip_ws();
            if (eof() || cur() == '/' || cur() == ')' || (!lex && cur() == ']')) break;
            if (at_rule_boundary()) break;
            parts.push_back(parse_prefix(lex));
        }
        if (parts.empty()) fail("expected an expression");
        return seq_all(parts);
    }

    ExprPtr parse_prefix(bool lex) {
        if (cur() == '!') {
            advance();
            skip_ws();
            return not_pred(parse_suffix(lex));
        }
        if (cur() == '&') {
            advance();
            skip_ws();
            return and_pred(parse_suffix(lex));
        }
        if (cur() == '^') {
            advance();
            return throw_label(read_ident());
        }
        return parse_suffix(lex);
    }

    ExprPtr parse_suffix(bool lex) {
        ExprPtr e = parse_primary(lex);
        for (;;) {
            skip_ws();
            if (cur() == '*') {
                advance();
                e = star(e);
            } else if (cur() == '+') {
                advance();
                e = plus(e);
            } else if (cur() == '?') {
                advance();
                e = optional(e);
            } else {
                break;
            }
        }
        return e;
    }

    ExprPtr parse_primary(bool lex) {
        skip_ws();
        char c = cur();
        if (c == '(') {
            advance();
            ExprPtr e = parse_expression(lex);
            skip_ws();
            if (cur() != ')') fail("expected ')'");
            advance();
            return e;
        }
        if (c == '\'') return parse_literal();
        if (c == '.') {
            if (!lex)
                fail("'.' is only allowed in token rules, recovery expressions, "
                     "and the eatToken rule");
            advance();
            return any_expr();
        }
        if (c == '[') {
            if (lex) return parse_class();
            advance();
            ExprPtr e = parse_expression(false);
            skip_ws();
            if (cur() != ']') fail("expected ']'");
            advance();
            if (cur() != '^') fail("expected '^label' after ']'");
            advance();
            return labeled(e, read_ident());
        }
        if (ident_start(c)) return nonterminal(read_ident());
        fail("expected an expression");
    }

    ExprPtr parse_literal() {
        advance(); // opening quote
        std::string text;
        for (;;) {
            if (eof() || cur() == '\n') fail("unterminated literal");
            if (cur() == '\'') {
                advance();
                break;
            }
            if (cur() == '\\') {
                advance();
                switch (cur()) {
                case 'n': text += '\n'; break;
                case 't': text += '\t'; break;
                case 'r': text += '\r'; break;
                case '\\': text += '\\'; break;
                case '\'': text += '\''; break;
                default: fail("unknown escape in literal");
                }
                advance();
            } else {
                text += cur();
                advance();
            }
        }
        if (text.empty()) return empty_expr();
        return lit(std::move(text));
    }

    unsigned char parse_class_char() {
        if (eof() || cur() == '\n') fail("unterminated character class");
        if (cur() == '\\') {
            advance();
            char c = cur();
            advance();
            switch (c) {
            case 'n': return '\n';
            case 't': return '\t';
            case 'r': return '\r';
            case '\\': return '\\';
            case ']': return ']';
            case '-': return '-';
            default: fail("unknown escape in character class");
            }
        }
        char c = cur();
        advance();
        return static_cast<unsigned char>(c);
    }

    ExprPtr parse_class() {
        advance(); // '['
        std::vector<CharRange> ranges;
        while (cur() != ']') {
            unsigned char lo = parse_class_char();
            if (cur() == '-' && peek() != ']') {
                advance();
                unsigned char hi = parse_class_char();
                if (hi < lo) fail("character range out of order");
                ranges.push_back({lo, hi});
            } else {
                ranges.push_back({lo, lo});
            }
        }
        advance(); // ']'
        if (ranges.empty()) fail("empty character class");
        return charclass(std::move(ranges));
    }

    std::string parse_dstring() {
        advance(); // opening quote
        std::string text;
        for (;;) {
            if (eof() || cur() == '\n') fail("unterminated string");
            if (cur() == '"') {
                advance();
                return text;
            }
            if (cur() == '\\') {
                advance();
                switch (cur()) {
                case 'n': text += '\n'; break;
                case 't': text += '\t'; break;
                case 'r': text += '\r'; break;
                case '\\': text += '\\'; break;
                case '"': text += '"'; break;
                default: fail("unknown escape in string");
                }
                advance();
            } else {
                text += cur();
                advance();
            }
        }
    }
};

} // namespace

Grammar read_grammar(const std::string& text) { return Parser(text).parse(); }

Grammar read_grammar_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_grammar(ss.str());
}

namespace {

// Rule-level nullability, conservative fixpoint. Undefined references count
// as non-nullable; predicates and throws follow the matcher (a predicate can
// succeed without consuming, a throw never succeeds).
bool expr_nullable(const Expr& e, const std::map<std::string, bool>& nul) {
    switch (e.kind) {
    case ExprKind::Empty: return true;
    case ExprKind::Any:
    case ExprKind::Literal:
    case ExprKind::CharClass: return false;
    case ExprKind::NonTerminal: {
        auto it = nul.find(e.text);
        return it != nul.end() && it->second;
    }
    case ExprKind::Sequence:
        return expr_nullable(*e.left, nul) && expr_nullable(*e.right, nul);
    case ExprKind::Choice:
        return expr_nullable(*e.left, nul) || expr_nullable(*e.right, nul);
    case ExprKind::Star:
    case ExprKind::Optional:
    case ExprKind::Not:
    case ExprKind::And: return true;
    case ExprKind::Plus:
    case ExprKind::Labeled: return expr_nullable(*e.left, nul);
    case ExprKind::Throw: return false;
    }
    return false;
}

std::map<std::string, bool> rule_nullability(const Grammar& g) {
    std::map<std::string, bool> nul;
    for (const Rule& r : g.rules) nul.emplace(r.name, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& r : g.rules) {
            if (nul[r.name]) continue;
            if (expr_nullable(*r.body, nul)) {
                nul[r.name] = true;
                changed = true;
            }
        }
    }
    return nul;
}

// Non-terminals invocable at the same input position the host rule started
// at. Predicate bodies run in place, so they count; both choice arms count;
// a sequence tail counts only past a nullable head.
void left_edge(const Expr& e, const std::map<std::string, bool>& nul,
               std::set<std::string>& out) {
    switch (e.kind) {
    case ExprKind::NonTerminal:
        out.insert(e.text);
        return;
    case ExprKind::Sequence:
        left_edge(*e.left, nul, out);
        if (expr_nullable(*e.left, nul)) left_edge(*e.right, nul, out);
        return;
    case ExprKind::Choice:
        left_edge(*e.left, nul, out);
        left_edge(*e.right, nul, out);
        return;
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::Optional:
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Labeled:
        left_edge(*e.left, nul, out);
        return;
    default:
        return;
    }
}

void collect_star_bodies(const Expr& e, const std::map<std::string, bool>& nul,
                         std::vector<const Expr*>& bad) {
    if (e.kind == ExprKind::Star || e.kind == ExprKind::Plus) {
        if (expr_nullable(*e.left, nul)) bad.push_back(&e);
    }
    if (e.left) collect_star_bodies(*e.left, nul, bad);
    if (e.right) collect_star_bodies(*e.right, nul, bad);
}

} // namespace

ValidationReport validate(const Grammar& g) {
    ValidationReport rep;
    auto add = [&](std::string kind, std::string where, std::string detail) {
        rep.issues.push_back({std::move(kind), std::move(where), std::move(detail)});
    };

    // Reserved result name used as a label.
    {
        std::set<std::string> flagged;
        for (const Rule& r : g.rules) {
            visit_expr(r.body, [&](const ExprPtr& e, const Path&) {
                if ((e->kind == ExprKind::Throw || e->kind == ExprKind::Labeled) &&
                    e->text == "fail" && flagged.insert(r.name).second) {
                    add("reserved-fail", r.name,
                        "'fail' is the failure result and cannot be a label");
                }
            });
        }
        if (g.recovery.count("fail"))
            add("reserved-fail", "fail", "'fail' cannot have a recovery expression");
        if (g.messages.count("fail"))
            add("reserved-fail", "fail", "'fail' cannot have a message");
    }

    // Duplicate definitions.
    {
        std::set<std::string> seen, reported;
        for (const Rule& r : g.rules) {
            if (!seen.insert(r.name).second && reported.insert(r.name).second)
                add("duplicate-rule", r.name, "rule is defined more than once");
        }
    }

    // Undefined references.
    {
        std::set<std::string> defined;
        for (const Rule& r : g.rules) defined.insert(r.name);
        std::set<std::string> reported;
        auto scan = [&](const std::string& host, const ExprPtr& body) {
            visit_expr(body, [&](const ExprPtr& e, const Path&) {
                if (e->kind == ExprKind::NonTerminal && !defined.count(e->text) &&
                    reported.insert(e->text).second)
                    add("undefined-nonterminal", e->text, "referenced from " + host);
            });
        };
        for (const Rule& r : g.rules) scan(r.name, r.body);
        for (const auto& [label, body] : g.recovery) scan("recover " + label, body);
    }

    auto nul = rule_nullability(g);

    // Left recursion, including cycles through predicates and nullable
    // prefixes.
    {
        std::map<std::string, std::set<std::string>> direct;
        for (const Rule& r : g.rules)
            if (!direct.count(r.name)) left_edge(*r.body, nul, direct[r.name]);

        std::set<std::string> reported;
        for (const Rule& r : g.rules) {
            if (reported.count(r.name)) continue;
            // BFS over the left-edge graph looking for a path back to r.
            std::map<std::string, std::string> parent;
            std::vector<std::string> queue;
            for (const std::string& n : direct[r.name]) {
                if (!parent.count(n)) {
                    parent[n] = r.name;
                    queue.push_back(n);
                }
            }
            bool cyclic = false;
            for (size_t q = 0; q < queue.size() && !cyclic; ++q) {
                if (queue[q] == r.name) {
                    cyclic = true;
                    break;
                }
                auto it = direct.find(queue[q]);
                if (it == direct.end()) continue;
                for (const std::string& n : it->second) {
                    if (!parent.count(n)) {
                        parent[n] = queue[q];
                        queue.push_back(n);
                    }
                }
            }
            if (cyclic || direct[r.name].count(r.name)) {
                std::vector<std::string> path{r.name};
                std::string cur = r.name;
                while (parent.count(cur) && parent[cur] != r.name) {
                    cur = parent[cur];
                    path.push_back(cur);
                }
                path.push_back(r.name);
                std::string cycle;
                for (size_t k = path.size(); k-- > 0;) {
                    if (!cycle.empty()) cycle += " -> ";
                    cycle += path[k];
                }
                add("left-recursive", r.name, "cycle: " + cycle);
                reported.insert(r.name);
            }
        }
    }

    // Repetitions whose body can succeed on nothing never advance; they are
    // rejected alongside left recursion since both stall the matcher.
    for (const Rule& r : g.rules) {
        std::vector<const Expr*> bad;
        collect_star_bodies(*r.body, nul, bad);
        for (const Expr* e : bad)
            add("left-recursive", r.name,
                "repetition body '" + expr_to_string(e->left) +
                    "' can succeed without consuming input");
    }

    // Recovery and messages must target labels the rules can throw.
    {
        std::set<std::string> thrown;
        for (const Rule& r : g.rules) {
            visit_expr(r.body, [&](const ExprPtr& e, const Path&) {
                if (e->kind == ExprKind::Throw || e->kind == ExprKind::Labeled)
                    thrown.insert(e->text);
            });
        }
        for (const auto& [label, body] : g.recovery) {
            if (label != "fail" && !thrown.count(label))
                add("bad-label", label, "recovery declared for a label no rule throws");
        }
        for (const auto& [label, text] : g.messages) {
            if (label != "fail" && !thrown.count(label))
                add("bad-label", label, "message declared for a label no rule throws");
        }
    }

    return rep;
}

std::string pretty_print(const Grammar& g) {
    size_t width = 0;
    for (const Rule& r : g.rules) width = std::max(width, r.name.size());

    std::ostringstream out;
    for (const Rule& r : g.rules) {
        out << r.name << std::string(width - r.name.size(), ' ') << " <- "
            << expr_to_string(r.body) << "\n";
    }
    if (!g.recovery.empty()) {
        out << "\n";
        size_t lw = 0;
        for (const auto& [label, body] : g.recovery) lw = std::max(lw, label.size());
        for (const auto& [label, body] : g.recovery) {
            out << "recover " << label << std::string(lw - label.size(), ' ')
                << " <- " << expr_to_string(body) << "\n";
        }
    }
    if (!g.messages.empty()) {
        out << "\n";
        for (const auto& [label, text] : g.messages) {
            out << "message " << label << " \"";
            for (char c : text) {
                switch (c) {
                case '\n': out << "\\n"; break;
                case '\t': out << "\\t"; break;
                case '\r': out << "\\r"; break;
                case '\\': out << "\\\\"; break;
                case '"': out << "\\\""; break;
                default: out << c;
                }
            }
            out << "\"\n";
        }
    }
    return out.str();
}

} // namespace peglab
