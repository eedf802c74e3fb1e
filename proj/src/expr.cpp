#include "peglab/expr.hpp"

#include <sstream>
#include <stdexcept>

namespace peglab {

namespace {

ExprPtr make(ExprKind k, std::string text = {}, std::vector<CharRange> ranges = {},
             ExprPtr left = nullptr, ExprPtr right = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->text = std::move(text);
    e->ranges = std::move(ranges);
    e->left = std::move(left);
    e->right = std::move(right);
    return e;
}

} // namespace

ExprPtr empty_expr() {
    static const ExprPtr e = make(ExprKind::Empty);
    return e;
}

ExprPtr any_expr() {
    static const ExprPtr e = make(ExprKind::Any);
    return e;
}

ExprPtr lit(std::string text) { return make(ExprKind::Literal, std::move(text)); }

ExprPtr charclass(std::vector<CharRange> ranges) {
    return make(ExprKind::CharClass, {}, std::move(ranges));
}

ExprPtr nonterminal(std::string name) {
    return make(ExprKind::NonTerminal, std::move(name));
}

ExprPtr seq(ExprPtr a, ExprPtr b) {
    return make(ExprKind::Sequence, {}, {}, std::move(a), std::move(b));
}

ExprPtr choice(ExprPtr a, ExprPtr b) {
    return make(ExprKind::Choice, {}, {}, std::move(a), std::move(b));
}

ExprPtr star(ExprPtr p) { return make(ExprKind::Star, {}, {}, std::move(p)); }

ExprPtr plus(ExprPtr p) { return make(ExprKind::Plus, {}, {}, std::move(p)); }

ExprPtr optional(ExprPtr p) { return make(ExprKind::Optional, {}, {}, std::move(p)); }

ExprPtr not_pred(ExprPtr p) { return make(ExprKind::Not, {}, {}, std::move(p)); }

ExprPtr and_pred(ExprPtr p) { return make(ExprKind::And, {}, {}, std::move(p)); }

ExprPtr throw_label(std::string label) {
    return make(ExprKind::Throw, std::move(label));
}

ExprPtr labeled(ExprPtr p, std::string label) {
    return make(ExprKind::Labeled, std::move(label), {}, std::move(p));
}

ExprPtr seq_all(const std::vector<ExprPtr>& parts) {
    if (parts.empty()) return empty_expr();
    ExprPtr acc = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) acc = seq(parts[i], acc);
    return acc;
}

ExprPtr choice_all(const std::vector<ExprPtr>& parts) {
    if (parts.empty()) return not_pred(empty_expr());
    ExprPtr acc = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) acc = choice(parts[i], acc);
    return acc;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    if (a.text != b.text) return false;
    if (a.ranges.size() != b.ranges.size()) return false;
    for (size_t i = 0; i < a.ranges.size(); ++i)
        if (a.ranges[i].lo != b.ranges[i].lo || a.ranges[i].hi != b.ranges[i].hi)
            return false;
    if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
    if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
    if (a.left && !expr_equal(*a.left, *b.left)) return false;
    if (a.right && !expr_equal(*a.right, *b.right)) return false;
    return true;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    return expr_equal(*a, *b);
}

namespace {

enum class SugarMode { Full, KeepLabels, PlusOnly };

ExprPtr rewrite_sugar(const ExprPtr& e, SugarMode mode) {
    if (!e) return e;
    auto rec = [&](const ExprPtr& c) { return rewrite_sugar(c, mode); };
    switch (e->kind) {
    case ExprKind::Plus: {
        ExprPtr inner = rec(e->left);
        return seq(inner, star(inner));
    }
    case ExprKind::Optional:
        if (mode == SugarMode::PlusOnly) return optional(rec(e->left));
        return choice(rec(e->left), empty_expr());
    case ExprKind::And:
        if (mode == SugarMode::PlusOnly) return and_pred(rec(e->left));
        return not_pred(not_pred(rec(e->left)));
    case ExprKind::Labeled:
        if (mode == SugarMode::Full)
            return choice(rec(e->left), throw_label(e->text));
        return labeled(rec(e->left), e->text);
    case ExprKind::Sequence:
        return seq(rec(e->left), rec(e->right));
    case ExprKind::Choice:
        return choice(rec(e->left), rec(e->right));
    case ExprKind::Star:
        return star(rec(e->left));
    case ExprKind::Not:
        return not_pred(rec(e->left));
    default:
        return e;
    }
}

} // namespace

ExprPtr desugar(const ExprPtr& e) { return rewrite_sugar(e, SugarMode::Full); }

ExprPtr desugar_keep_labels(const ExprPtr& e) {
    return rewrite_sugar(e, SugarMode::KeepLabels);
}

ExprPtr desugar_plus(const ExprPtr& e) {
    return rewrite_sugar(e, SugarMode::PlusOnly);
}

ExprPtr erase_labels(const ExprPtr& e) {
    if (!e) return e;
    switch (e->kind) {
    case ExprKind::Labeled:
        return erase_labels(e->left);
    case ExprKind::Choice:
        if (e->right && e->right->kind == ExprKind::Throw)
            return erase_labels(e->left);
        return choice(erase_labels(e->left), erase_labels(e->right));
    case ExprKind::Sequence:
        return seq(erase_labels(e->left), erase_labels(e->right));
    case ExprKind::Star:
        return star(erase_labels(e->left));
    case ExprKind::Plus:
        return plus(erase_labels(e->left));
    case ExprKind::Optional:
        return optional(erase_labels(e->left));
    case ExprKind::Not:
        return not_pred(erase_labels(e->left));
    case ExprKind::And:
        return and_pred(erase_labels(e->left));
    default:
        return e;
    }
}

std::string path_to_string(const Path& p) {
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(p[i]);
    }
    return s;
}

const Expr* at_path(const Expr& root, const Path& p) {
    const Expr* cur = &root;
    for (int step : p) {
        const Expr* next = nullptr;
        if (step == 0) next = cur->left.get();
        else if (step == 1) next = cur->right.get();
        if (!next) return nullptr;
        cur = next;
    }
    return cur;
}

namespace {

void visit_impl(const ExprPtr& e, Path& path,
                const std::function<void(const ExprPtr&, const Path&)>& fn) {
    if (!e) return;
    fn(e, path);
    if (e->left) {
        path.push_back(0);
        visit_impl(e->left, path, fn);
        path.pop_back();
    }
    if (e->right) {
        path.push_back(1);
        visit_impl(e->right, path, fn);
        path.pop_back();
    }
}

// Precedence for rendering: choice < sequence < prefix < suffix < atom.
int prec(ExprKind k) {
    switch (k) {
    case ExprKind::Choice: return 0;
    case ExprKind::Labeled: return 4; // renders bracketed, atom-like
    case ExprKind::Sequence: return 1;
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Throw: return 2;
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::Optional: return 3;
    default: return 4;
    }
}

void escape_into(std::string& out, char c, bool in_class) {
    switch (c) {
    case '\n': out += "\\n"; return;
    case '\t': out += "\\t"; return;
    case '\r': out += "\\r"; return;
    case '\\': out += "\\\\"; return;
    default: break;
    }
    if (!in_class && c == '\'') { out += "\\'"; return; }
    if (in_class && (c == ']' || c == '-')) { out += '\\'; out += c; return; }
    out += c;
}

void render(const Expr& e, std::string& out) {
    auto child = [&](const Expr& c, int min_prec) {
        bool paren = prec(c.kind) < min_prec;
        if (paren) out += '(';
        render(c, out);
        if (paren) out += ')';
    };
    switch (e.kind) {
    case ExprKind::Empty:
        out += "''";
        break;
    case ExprKind::Any:
        out += '.';
        break;
    case ExprKind::Literal:
        out += '\'';
        for (char c : e.text) escape_into(out, c, false);
        out += '\'';
        break;
    case ExprKind::CharClass:
        out += '[';
        for (const CharRange& r : e.ranges) {
            escape_into(out, static_cast<char>(r.lo), true);
            if (r.hi != r.lo) {
                out += '-';
                escape_into(out, static_cast<char>(r.hi), true);
            }
        }
        out += ']';
        break;
    case ExprKind::NonTerminal:
        out += e.text;
        break;
    case ExprKind::Sequence:
        child(*e.left, 2);
        out += ' ';
        child(*e.right, 1);
        break;
    case ExprKind::Choice:
        child(*e.left, 1);
        out += " / ";
        child(*e.right, 0);
        break;
    case ExprKind::Star:
        child(*e.left, 4);
        out += '*';
        break;
    case ExprKind::Plus:
        child(*e.left, 4);
        out += '+';
        break;
    case ExprKind::Optional:
        child(*e.left, 4);
        out += '?';
        break;
    case ExprKind::Not:
        out += '!';
        child(*e.left, 3);
        break;
    case ExprKind::And:
        out += '&';
        child(*e.left, 3);
        break;
    case ExprKind::Throw:
        out += '^';
        out += e.text;
        break;
    case ExprKind::Labeled:
        out += '[';
        render(*e.left, out);
        out += "]^";
        out += e.text;
        break;
    }
}

} // namespace

void visit_expr(const ExprPtr& root,
                const std::function<void(const ExprPtr&, const Path&)>& fn) {
    Path path;
    visit_impl(root, path, fn);
}

std::string expr_to_string(const Expr& e) {
    std::string out;
    render(e, out);
    return out;
}

std::string expr_to_string(const ExprPtr& e) {
    if (!e) return "";
    return expr_to_string(*e);
}

} // namespace peglab
