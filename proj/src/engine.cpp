#include "peglab/engine.hpp"

#include <algorithm>
#include <bitset>

namespace peglab {

namespace {

bool is_layout(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

} // namespace

// Layout skipped in syntactical context: blanks plus "--" line comments.
std::size_t skip_layout(std::string_view in, std::size_t pos) {
    for (;;) {
        while (pos < in.size() && is_layout(in[pos])) ++pos;
        if (pos + 1 < in.size() && in[pos] == '-' && in[pos + 1] == '-') {
            pos += 2;
            while (pos < in.size() && in[pos] != '\n') ++pos;
            continue;
        }
        return pos;
    }
}

struct Matcher {
    const Grammar& g;
    std::string_view in;
    bool recovery_on;
    std::vector<TokenLogEntry>& log;
    bool building = false;

    std::vector<std::vector<TreePtr>> frames = {};
    std::vector<RecoveredError> recovered = {};
    int pred_depth = 0;
    int rec_depth = 0;

    struct Out {
        bool ok;
        std::size_t pos;
        std::string label;
        std::size_t errpos;
    };

    static Out good(std::size_t pos) { return {true, pos, {}, 0}; }
    static Out failed(std::size_t pos) { return {false, 0, kFailLabel, pos}; }

    struct Mark {
        std::size_t log, rec, kids;
    };
    Mark mark() const {
        return {log.size(), recovered.size(),
                frames.empty() ? 0 : frames.back().size()};
    }
    void restore(const Mark& m) {
        log.resize(m.log);
        recovered.resize(m.rec);
        if (!frames.empty()) frames.back().resize(m.kids);
    }

    bool recording() const { return pred_depth == 0 && rec_depth == 0; }

    void leaf(TreeNode n) {
        if (building && recording() && !frames.empty())
            frames.back().push_back(std::make_shared<TreeNode>(std::move(n)));
    }

    Out call(const std::string& name, std::size_t pos, bool lex_ctx) {
        const Rule* r = g.find_rule(name);
        if (!r) return failed(pos); // validation rules this out
        bool lex_rule = is_lexical_name(name);
        if (lex_rule && !lex_ctx) {
            std::size_t s = skip_layout(in, pos);
            Out o = eval(*r->body, s, true);
            if (!o.ok) {
                if (o.label == kFailLabel) return failed(pos);
                return o;
            }
            if (recording()) {
                log.push_back({false, name, s, o.pos});
                leaf({TreeNode::Kind::Token, name,
                      std::string(in.substr(s, o.pos - s)), s, o.pos, {}});
            }
            return o;
        }
        if (lex_rule) return eval(*r->body, pos, true);

        bool make_node = building && !lex_ctx && recording();
        if (make_node) frames.emplace_back();
        Out o = eval(*r->body, pos, false);
        if (make_node) {
            std::vector<TreePtr> kids = std::move(frames.back());
            frames.pop_back();
            if (o.ok && recording() && !frames.empty())
                frames.back().push_back(std::make_shared<TreeNode>(TreeNode{
                    TreeNode::Kind::NonTerminal, name, {}, pos, o.pos,
                    std::move(kids)}));
        }
        return o;
    }

    Out do_throw(const std::string& l, std::size_t pos) {
        bool mapped =
            recovery_on && pred_depth == 0 && g.recovery.count(l) != 0;
        if (!mapped) return {false, 0, l, pos};
        recovered.push_back({l, pos, pos, pos});
        std::size_t idx = recovered.size() - 1;
        ++rec_depth;
        Out o = eval(*g.recovery.at(l), pos, false);
        --rec_depth;
        std::size_t reach = o.ok ? o.pos : pos;
        if (idx < recovered.size()) recovered[idx].skip_end = reach;
        leaf({TreeNode::Kind::Error, l, {}, pos, reach, {}});
        return o;
    }

    Out eval(const Expr& e, std::size_t pos, bool lex) {
        switch (e.kind) {
        case ExprKind::Empty:
            return good(pos);
        case ExprKind::Any:
            if (pos < in.size()) return good(pos + 1);
            return failed(pos);
        case ExprKind::CharClass: {
            if (pos < in.size()) {
                unsigned char c = static_cast<unsigned char>(in[pos]);
                for (const CharRange& r : e.ranges)
                    if (c >= r.lo && c <= r.hi) return good(pos + 1);
            }
            return failed(pos);
        }
        case ExprKind::Literal: {
            std::size_t s = lex ? pos : skip_layout(in, pos);
            if (in.size() - s < e.text.size() ||
                in.compare(s, e.text.size(), e.text) != 0)
                return failed(pos);
            std::size_t end = s + e.text.size();
            if (!lex && recording())
                log.push_back({true, e.text, s, end});
            return good(end);
        }
        case ExprKind::NonTerminal:
            return call(e.text, pos, lex);
        case ExprKind::Sequence: {
            Out a = eval(*e.left, pos, lex);
            if (!a.ok) return a;
            return eval(*e.right, a.pos, lex);
        }
        case ExprKind::Choice: {
            Mark m = mark();
            Out a = eval(*e.left, pos, lex);
            if (a.ok || a.label != kFailLabel) return a;
            restore(m);
            return eval(*e.right, pos, lex);
        }
        case ExprKind::Star: {
            std::size_t cur = pos;
            for (;;) {
                Mark m = mark();
                Out a = eval(*e.left, cur, lex);
                if (a.ok) {
                    if (a.pos == cur) return good(cur); // stalled body
                    cur = a.pos;
                    continue;
                }
                if (a.label != kFailLabel) return a;
                restore(m);
                return good(cur);
            }
        }
        case ExprKind::Plus: {
            Out a = eval(*e.left, pos, lex);
            if (!a.ok) return a;
            std::size_t cur = a.pos;
            for (;;) {
                Mark m = mark();
                Out b = eval(*e.left, cur, lex);
                if (b.ok) {
                    if (b.pos == cur) return good(cur);
                    cur = b.pos;
                    continue;
                }
                if (b.label != kFailLabel) return b;
                restore(m);
                return good(cur);
            }
        }
        case ExprKind::Optional: {
            Mark m = mark();
            Out a = eval(*e.left, pos, lex);
            if (a.ok || a.label != kFailLabel) return a;
            restore(m);
            return good(pos);
        }
        case ExprKind::Not: {
            Mark m = mark();
            ++pred_depth;
            Out a = eval(*e.left, pos, lex);
            --pred_depth;
            restore(m);
            if (a.ok) return failed(pos);
            return good(pos); // any label is absorbed
        }
        case ExprKind::And: {
            Mark m = mark();
            ++pred_depth;
            Out a = eval(*e.left, pos, lex);
            --pred_depth;
            restore(m);
            if (a.ok) return good(pos);
            return failed(pos);
        }
        case ExprKind::Throw:
            return do_throw(e.text, pos);
        case ExprKind::Labeled: {
            Mark m = mark();
            Out a = eval(*e.left, pos, lex);
            if (a.ok || a.label != kFailLabel) return a;
            restore(m);
            return do_throw(e.text, pos);
        }
        }
        return failed(pos);
    }
};

Engine::Engine(const Grammar& g, bool use_recovery)
    : g_(&g), use_recovery_(use_recovery) {}

namespace {

MatchResult to_result(const Matcher::Out& o,
                      std::vector<RecoveredError> recovered) {
    MatchResult r;
    r.ok = o.ok;
    if (o.ok) {
        r.end = o.pos;
    } else {
        r.fail_label = o.label;
        r.fail_pos = o.errpos;
    }
    r.recovered = std::move(recovered);
    return r;
}

} // namespace

MatchResult Engine::match_expr(const ExprPtr& e, std::string_view input,
                               std::size_t pos) {
    log_.clear();
    Matcher m{*g_, input, use_recovery_, log_};
    Matcher::Out o = m.eval(*e, pos, false);
    return to_result(o, std::move(m.recovered));
}

MatchResult Engine::match_rule(const std::string& rule, std::string_view input,
                               std::size_t pos) {
    log_.clear();
    Matcher m{*g_, input, use_recovery_, log_};
    Matcher::Out o = m.call(rule, pos, false);
    return to_result(o, std::move(m.recovered));
}

ParseResult Engine::parse(std::string_view input, const std::string& file) {
    ParseResult res;
    log_.clear();
    if (g_->rules.empty()) {
        res.outcome.fail_label = kFailLabel;
        return res;
    }
    Matcher m{*g_, input, use_recovery_, log_};
    m.building = true;
    m.frames.emplace_back();
    Matcher::Out o = m.call(g_->start().name, 0, false);
    if (o.ok) {
        std::size_t end = skip_layout(input, o.pos);
        if (end < input.size()) {
            o = Matcher::Out{false, 0, kFailLabel, end};
        } else {
            o.pos = end;
        }
    }
    res.outcome = to_result(o, std::move(m.recovered));
    if (res.outcome.ok && !m.frames.front().empty())
        res.tree = m.frames.front().front();

    for (const RecoveredError& e : res.outcome.recovered) {
        auto [line, col] = line_col_of(input, e.position);
        std::string msg;
        if (auto it = g_->messages.find(e.label); it != g_->messages.end())
            msg = it->second;
        res.reports.push_back({file, line, col, e.label, msg});
    }
    if (!res.outcome.ok) {
        auto [line, col] = line_col_of(input, res.outcome.fail_pos);
        std::string msg;
        if (auto it = g_->messages.find(res.outcome.fail_label);
            it != g_->messages.end())
            msg = it->second;
        res.reports.push_back(
            {file, line, col, res.outcome.fail_label, msg});
    }
    return res;
}

std::pair<int, int> line_col_of(std::string_view input, std::size_t offset) {
    int line = 1;
    std::size_t bol = 0;
    if (offset > input.size()) offset = input.size();
    for (std::size_t i = 0; i < offset; ++i) {
        if (input[i] == '\n') {
            ++line;
            bol = i + 1;
        }
    }
    return {line, static_cast<int>(offset - bol) + 1};
}

std::string format_error(const ErrorReport& r, bool with_column) {
    std::string out = r.file + ":" + std::to_string(r.line);
    if (with_column) out += ":" + std::to_string(r.column);
    out += ": syntax error, ";
    if (r.message.empty())
        out += "[" + r.label + "]";
    else
        out += r.message;
    return out;
}

namespace {

void render_tree(const TreePtr& t, std::string& out) {
    if (!t) {
        out += "<none>";
        return;
    }
    switch (t->kind) {
    case TreeNode::Kind::Token:
        out += t->name;
        out += ":'";
        out += t->text;
        out += "'";
        return;
    case TreeNode::Kind::Error:
        out += "<error:";
        out += t->name;
        out += ">";
        return;
    case TreeNode::Kind::NonTerminal:
        out += "(";
        out += t->name;
        for (const TreePtr& c : t->children) {
            out += " ";
            render_tree(c, out);
        }
        out += ")";
        return;
    }
}

// Possible first characters of a rule body, character-level.
struct CharFirst {
    const Grammar& g;
    std::map<std::string, std::bitset<256>> table;
    std::map<std::string, bool> nul;

    std::bitset<256> of(const Expr& e) const {
        std::bitset<256> out;
        switch (e.kind) {
        case ExprKind::Any:
            out.set();
            return out;
        case ExprKind::Literal:
            if (!e.text.empty())
                out.set(static_cast<unsigned char>(e.text[0]));
            return out;
        case ExprKind::CharClass:
            for (const CharRange& r : e.ranges)
                for (unsigned c = r.lo; c <= r.hi; ++c) out.set(c);
            return out;
        case ExprKind::NonTerminal: {
            auto it = table.find(e.text);
            return it != table.end() ? it->second : out;
        }
        case ExprKind::Sequence: {
            out = of(*e.left);
            if (char_null(*e.left)) out |= of(*e.right);
            return out;
        }
        case ExprKind::Choice:
            return of(*e.left) | of(*e.right);
        case ExprKind::Star:
        case ExprKind::Optional:
        case ExprKind::Plus:
        case ExprKind::Labeled:
            return of(*e.left);
        default:
            return out;
        }
    }

    bool char_null(const Expr& e) const {
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
            return char_null(*e.left) && char_null(*e.right);
        case ExprKind::Choice:
            return char_null(*e.left) || char_null(*e.right);
        case ExprKind::Star:
        case ExprKind::Optional:
        case ExprKind::Not:
        case ExprKind::And: return true;
        case ExprKind::Plus:
        case ExprKind::Labeled: return char_null(*e.left);
        case ExprKind::Throw: return false;
        }
        return false;
    }

    void build() {
        for (const Rule& r : g.rules) {
            table[r.name] = {};
            nul[r.name] = false;
        }
        for (int round = 0; round < 64; ++round) {
            bool changed = false;
            for (const Rule& r : g.rules) {
                bool n = char_null(*r.body);
                std::bitset<256> f = of(*r.body);
                if (n != nul[r.name] || f != table[r.name]) {
                    nul[r.name] = n;
                    table[r.name] = f;
                    changed = true;
                }
            }
            if (!changed) break;
        }
    }
};

} // namespace

std::string tree_to_string(const TreePtr& t) {
    std::string out;
    render_tree(t, out);
    return out;
}

TokenPrefixReport unique_token_prefix_report(const Grammar& g,
                                             const std::vector<std::string>& corpus) {
    TokenPrefixReport rep;

    std::vector<std::string> toks;
    for (const Rule& r : g.rules)
        if (is_lexical_name(r.name)) toks.push_back(r.name);

    CharFirst cf{g, {}, {}};
    cf.build();
    for (std::size_t i = 0; i < toks.size(); ++i)
        for (std::size_t j = i + 1; j < toks.size(); ++j)
            if ((cf.table[toks[i]] & cf.table[toks[j]]).any())
                rep.first_char_warnings.emplace_back(toks[i], toks[j]);

    Engine eng(g, false);
    for (const std::string& input : corpus) {
        std::size_t pos = 0;
        while (pos < input.size()) {
            std::size_t s = skip_layout(input, pos);
            if (s >= input.size()) break;
            std::vector<std::pair<std::string, std::size_t>> hits;
            for (const std::string& t : toks) {
                MatchResult r = eng.match_rule(t, input, s);
                if (r.ok && r.end > s) hits.emplace_back(t, r.end);
            }
            if (hits.size() >= 2) {
                std::size_t n = std::min<std::size_t>(input.size() - s, 24);
                rep.violations.push_back(
                    {input.substr(s, n), hits[0].first, hits[1].first});
            }
            std::size_t next = s + 1;
            for (const auto& h : hits) next = std::max(next, h.second);
            pos = next;
        }
    }
    return rep;
}

} // namespace peglab
