#include "peglab/analysis.hpp"

#include <algorithm>

namespace peglab {

std::string TokenId::display() const {
    switch (kind) {
    case Kind::Lexical: return text;
    case Kind::Literal: return "'" + text + "'";
    case Kind::End: return "<eof>";
    case Kind::AnyChar: return "<any>";
    }
    return "?";
}

bool TokenSet::disjoint_with(const TokenSet& other) const {
    const TokenSet& small = tokens.size() <= other.tokens.size() ? *this : other;
    const TokenSet& big = tokens.size() <= other.tokens.size() ? other : *this;
    for (const TokenId& t : small.tokens)
        if (big.tokens.count(t)) return false;
    return true;
}

void TokenSet::add(const TokenSet& other) {
    tokens.insert(other.tokens.begin(), other.tokens.end());
}

std::string TokenSet::display() const {
    std::string out = "{";
    bool first = true;
    for (const TokenId& t : tokens) {
        if (!first) out += ", ";
        out += t.display();
        first = false;
    }
    if (epsilon) {
        if (!first) out += ", ";
        out += "eps";
    }
    return out + "}";
}

namespace {

bool is_syn_host(const Rule& r) {
    return !is_lexical_name(r.name) && r.name != eat_token_rule_name();
}

// Character-level nullability used for lexical rule bodies.
bool char_nullable(const Expr& e, const std::map<std::string, bool>& nul) {
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
        return char_nullable(*e.left, nul) && char_nullable(*e.right, nul);
    case ExprKind::Choice:
        return char_nullable(*e.left, nul) || char_nullable(*e.right, nul);
    case ExprKind::Star:
    case ExprKind::Optional:
    case ExprKind::Not:
    case ExprKind::And: return true;
    case ExprKind::Plus:
    case ExprKind::Labeled: return char_nullable(*e.left, nul);
    case ExprKind::Throw: return false;
    }
    return false;
}

} // namespace

struct AnalysisBuilder {
    Analysis& a;
    const Grammar& g;

    bool nul(const Expr& e) const {
        switch (e.kind) {
        case ExprKind::Empty: return true;
        case ExprKind::Any:
        case ExprKind::Literal:
        case ExprKind::CharClass: return false;
        case ExprKind::NonTerminal: {
            if (is_lexical_name(e.text)) return false;
            auto it = a.syn_nullable_.find(e.text);
            return it != a.syn_nullable_.end() && it->second;
        }
        case ExprKind::Sequence: return nul(*e.left) && nul(*e.right);
        case ExprKind::Choice: return nul(*e.left) || nul(*e.right);
        case ExprKind::Star:
        case ExprKind::Optional:
        case ExprKind::Not:
        case ExprKind::And: return true;
        case ExprKind::Plus:
        case ExprKind::Labeled: return nul(*e.left);
        case ExprKind::Throw: return false;
        }
        return false;
    }

    TokenSet fst(const Expr& e) const {
        TokenSet out;
        switch (e.kind) {
        case ExprKind::Empty:
            out.epsilon = true;
            return out;
        case ExprKind::Any:
        case ExprKind::CharClass:
            out.tokens.insert(TokenId::any_char());
            return out;
        case ExprKind::Literal:
            out.tokens.insert(TokenId::literal(e.text));
            return out;
        case ExprKind::NonTerminal:
            if (is_lexical_name(e.text)) {
                out.tokens.insert(TokenId::lexical(e.text));
                return out;
            }
            if (auto it = a.first_.find(e.text); it != a.first_.end()) out = it->second;
            return out;
        case ExprKind::Sequence: {
            TokenSet l = fst(*e.left);
            out.tokens = l.tokens;
            if (l.epsilon) {
                TokenSet r = fst(*e.right);
                out.add(r);
                out.epsilon = r.epsilon;
            }
            return out;
        }
        case ExprKind::Choice: {
            out = fst(*e.left);
            TokenSet r = fst(*e.right);
            out.add(r);
            out.epsilon = out.epsilon || r.epsilon;
            return out;
        }
        case ExprKind::Star:
        case ExprKind::Optional:
            out = fst(*e.left);
            out.epsilon = true;
            return out;
        case ExprKind::Plus:
        case ExprKind::Labeled:
            return fst(*e.left);
        case ExprKind::Not:
        case ExprKind::And:
            out.epsilon = true;
            return out;
        case ExprKind::Throw:
            return out;
        }
        return out;
    }

    TokenSet lst(const Expr& e) const {
        TokenSet out;
        switch (e.kind) {
        case ExprKind::Empty:
            out.epsilon = true;
            return out;
        case ExprKind::Any:
        case ExprKind::CharClass:
            out.tokens.insert(TokenId::any_char());
            return out;
        case ExprKind::Literal:
            out.tokens.insert(TokenId::literal(e.text));
            return out;
        case ExprKind::NonTerminal:
            if (is_lexical_name(e.text)) {
                out.tokens.insert(TokenId::lexical(e.text));
                return out;
            }
            if (auto it = a.last_.find(e.text); it != a.last_.end()) out = it->second;
            return out;
        case ExprKind::Sequence: {
            TokenSet r = lst(*e.right);
            out.tokens = r.tokens;
            if (r.epsilon) {
                TokenSet l = lst(*e.left);
                out.add(l);
                out.epsilon = l.epsilon;
            }
            return out;
        }
        case ExprKind::Choice: {
            out = lst(*e.left);
            TokenSet r = lst(*e.right);
            out.add(r);
            out.epsilon = out.epsilon || r.epsilon;
            return out;
        }
        case ExprKind::Star:
        case ExprKind::Optional:
            out = lst(*e.left);
            out.epsilon = true;
            return out;
        case ExprKind::Plus:
        case ExprKind::Labeled:
            return lst(*e.left);
        case ExprKind::Not:
        case ExprKind::And:
            out.epsilon = true;
            return out;
        case ExprKind::Throw:
            return out;
        }
        return out;
    }

    bool cfail(const Expr& e) const {
        switch (e.kind) {
        case ExprKind::Empty:
        case ExprKind::Throw: return false;
        case ExprKind::Any:
        case ExprKind::Literal:
        case ExprKind::CharClass: return true;
        case ExprKind::NonTerminal: {
            auto it = a.can_fail_.find(e.text);
            return it != a.can_fail_.end() && it->second;
        }
        case ExprKind::Sequence: return cfail(*e.left) || cfail(*e.right);
        case ExprKind::Choice: return cfail(*e.left) && cfail(*e.right);
        case ExprKind::Star:
        case ExprKind::Optional: return false;
        case ExprKind::Plus: return cfail(*e.left);
        case ExprKind::Not: return true;
        case ExprKind::And: return cfail(*e.left) || cthrow(*e.left);
        case ExprKind::Labeled: return false;
        }
        return false;
    }

    bool cthrow(const Expr& e) const {
        switch (e.kind) {
        case ExprKind::Throw:
        case ExprKind::Labeled: return true;
        case ExprKind::NonTerminal: {
            auto it = a.can_throw_.find(e.text);
            return it != a.can_throw_.end() && it->second;
        }
        case ExprKind::Sequence:
        case ExprKind::Choice: return cthrow(*e.left) || cthrow(*e.right);
        case ExprKind::Star:
        case ExprKind::Plus:
        case ExprKind::Optional: return cthrow(*e.left);
        default: return false;
        }
    }

    void build() {
        // Character-level nullability of every rule, recorded for lexical ones.
        {
            std::map<std::string, bool> nulc;
            for (const Rule& r : g.rules) nulc.emplace(r.name, false);
            bool changed = true;
            while (changed) {
                changed = false;
                for (const Rule& r : g.rules) {
                    if (nulc[r.name]) continue;
                    if (char_nullable(*r.body, nulc)) {
                        nulc[r.name] = true;
                        changed = true;
                    }
                }
            }
            a.lex_nullable_ = std::move(nulc);
        }

        // Token-level nullable / FIRST / LAST over syntactical bodies.
        for (const Rule& r : g.rules) {
            if (is_lexical_name(r.name)) continue;
            a.syn_nullable_.emplace(r.name, false);
            a.first_.emplace(r.name, TokenSet{});
            a.last_.emplace(r.name, TokenSet{});
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Rule& r : g.rules) {
                if (is_lexical_name(r.name)) continue;
                bool n = nul(*r.body);
                if (n && !a.syn_nullable_[r.name]) {
                    a.syn_nullable_[r.name] = true;
                    changed = true;
                }
                TokenSet f = fst(*r.body);
                f.epsilon = n;
                TokenSet& curf = a.first_[r.name];
                if (f.tokens != curf.tokens || f.epsilon != curf.epsilon) {
                    curf = std::move(f);
                    changed = true;
                }
                TokenSet l = lst(*r.body);
                l.epsilon = n;
                TokenSet& curl = a.last_[r.name];
                if (l.tokens != curl.tokens || l.epsilon != curl.epsilon) {
                    curl = std::move(l);
                    changed = true;
                }
            }
        }

        // FOLLOW fixpoint; the start rule is followed by end-of-input.
        for (const Rule& r : g.rules)
            if (is_syn_host(r)) a.follow_.emplace(r.name, TokenSet{});
        if (!g.rules.empty() && a.follow_.count(g.rules.front().name))
            a.follow_[g.rules.front().name].tokens.insert(TokenId::end());
        changed = true;
        while (changed) {
            changed = false;
            for (const Rule& r : g.rules) {
                if (!is_syn_host(r)) continue;
                follow_walk(*r.body, a.follow_[r.name], changed);
            }
        }

        // Failure-mode reachability.
        for (const Rule& r : g.rules) {
            a.can_fail_.emplace(r.name, false);
            a.can_throw_.emplace(r.name, false);
        }
        changed = true;
        while (changed) {
            changed = false;
            for (const Rule& r : g.rules) {
                if (!a.can_fail_[r.name] && cfail(*r.body)) {
                    a.can_fail_[r.name] = true;
                    changed = true;
                }
                if (!a.can_throw_[r.name] && cthrow(*r.body)) {
                    a.can_throw_[r.name] = true;
                    changed = true;
                }
            }
        }
    }

    void follow_walk(const Expr& e, const TokenSet& flw, bool& changed) {
        switch (e.kind) {
        case ExprKind::NonTerminal: {
            if (is_lexical_name(e.text)) return;
            auto it = a.follow_.find(e.text);
            if (it == a.follow_.end()) return;
            size_t before = it->second.tokens.size();
            it->second.add(flw);
            if (it->second.tokens.size() != before) changed = true;
            return;
        }
        case ExprKind::Sequence: {
            TokenSet mid = a.calck(e.right, flw);
            follow_walk(*e.left, mid, changed);
            follow_walk(*e.right, flw, changed);
            return;
        }
        case ExprKind::Choice:
            follow_walk(*e.left, flw, changed);
            follow_walk(*e.right, flw, changed);
            return;
        case ExprKind::Star:
        case ExprKind::Plus: {
            TokenSet inner = fst(*e.left);
            inner.epsilon = false;
            inner.add(flw);
            follow_walk(*e.left, inner, changed);
            return;
        }
        case ExprKind::Optional:
        case ExprKind::Labeled:
            follow_walk(*e.left, flw, changed);
            return;
        default:
            return;
        }
    }
};

Analysis::Analysis(const Grammar& g) : g_(&g) {
    AnalysisBuilder b{*this, g};
    b.build();
}

bool Analysis::is_syntactical_host(const std::string& name) const {
    return !is_lexical_name(name) && name != eat_token_rule_name();
}

bool Analysis::nullable(const ExprPtr& e) const {
    AnalysisBuilder b{const_cast<Analysis&>(*this), *g_};
    return b.nul(*e);
}

bool Analysis::rule_nullable(const std::string& name) const {
    if (is_lexical_name(name)) return lexical_nullable(name);
    auto it = syn_nullable_.find(name);
    return it != syn_nullable_.end() && it->second;
}

bool Analysis::lexical_nullable(const std::string& name) const {
    auto it = lex_nullable_.find(name);
    return it != lex_nullable_.end() && it->second;
}

TokenSet Analysis::first(const ExprPtr& e) const {
    AnalysisBuilder b{const_cast<Analysis&>(*this), *g_};
    TokenSet out = b.fst(*e);
    out.epsilon = b.nul(*e);
    return out;
}

TokenSet Analysis::rule_first(const std::string& name) const {
    if (is_lexical_name(name)) {
        TokenSet out;
        out.tokens.insert(TokenId::lexical(name));
        return out;
    }
    auto it = first_.find(name);
    return it != first_.end() ? it->second : TokenSet{};
}

TokenSet Analysis::follow(const std::string& name) const {
    auto it = follow_.find(name);
    return it != follow_.end() ? it->second : TokenSet{};
}

TokenSet Analysis::calck(const ExprPtr& e, const TokenSet& flw) const {
    TokenSet f = first(e);
    if (!f.epsilon) {
        f.epsilon = false;
        return f;
    }
    TokenSet out;
    out.tokens = f.tokens;
    out.add(flw);
    out.epsilon = flw.epsilon;
    return out;
}

bool Analysis::can_fail(const ExprPtr& e) const {
    AnalysisBuilder b{const_cast<Analysis&>(*this), *g_};
    return b.cfail(*e);
}

bool Analysis::can_throw(const ExprPtr& e) const {
    AnalysisBuilder b{const_cast<Analysis&>(*this), *g_};
    return b.cthrow(*e);
}

TokenSet Analysis::last(const ExprPtr& e) const {
    AnalysisBuilder b{const_cast<Analysis&>(*this), *g_};
    TokenSet out = b.lst(*e);
    out.epsilon = b.nul(*e);
    return out;
}

namespace {

struct PrecWalker {
    const Analysis& a;
    const std::string& host;
    UniquenessInfo& info;

    // Walks e tracking which tokens can immediately precede the current
    // point; epsilon means "possibly still at rule entry", in which case a
    // recorded occurrence is widened by FOLLOW of the host.
    TokenSet walk(const ExprPtr& e, Path& path, TokenSet before) {
        switch (e->kind) {
        case ExprKind::NonTerminal: {
            if (is_lexical_name(e->text)) {
                TokenSet rec;
                rec.tokens = before.tokens;
                if (before.epsilon) rec.add(a.follow(host));
                info.preceding[{host, path}].add(rec);
                TokenSet after;
                after.tokens.insert(TokenId::lexical(e->text));
                return after;
            }
            TokenSet l = a.last(e);
            TokenSet after;
            after.tokens = l.tokens;
            if (l.epsilon) {
                after.add(before);
                after.epsilon = before.epsilon;
            }
            return after;
        }
        case ExprKind::Literal: {
            TokenSet after;
            after.tokens.insert(TokenId::literal(e->text));
            return after;
        }
        case ExprKind::Any:
        case ExprKind::CharClass: {
            TokenSet after;
            after.tokens.insert(TokenId::any_char());
            return after;
        }
        case ExprKind::Empty:
            return before;
        case ExprKind::Throw:
            return TokenSet{};
        case ExprKind::Sequence: {
            path.push_back(0);
            TokenSet mid = walk(e->left, path, before);
            path.back() = 1;
            TokenSet after = walk(e->right, path, std::move(mid));
            path.pop_back();
            return after;
        }
        case ExprKind::Choice: {
            path.push_back(0);
            TokenSet a1 = walk(e->left, path, before);
            path.back() = 1;
            TokenSet a2 = walk(e->right, path, before);
            path.pop_back();
            a1.add(a2);
            a1.epsilon = a1.epsilon || a2.epsilon;
            return a1;
        }
        case ExprKind::Star: {
            TokenSet body = before;
            body.add(a.last(e->left));
            path.push_back(0);
            walk(e->left, path, body);
            path.pop_back();
            return body;
        }
        case ExprKind::Plus: {
            path.push_back(0);
            TokenSet once = walk(e->left, path, before);
            TokenSet loop = once;
            loop.add(a.last(e->left));
            walk(e->left, path, loop);
            path.pop_back();
            return loop;
        }
        case ExprKind::Optional: {
            path.push_back(0);
            TokenSet inner = walk(e->left, path, before);
            path.pop_back();
            inner.add(before);
            inner.epsilon = inner.epsilon || before.epsilon;
            return inner;
        }
        case ExprKind::Not:
        case ExprKind::And: {
            path.push_back(0);
            walk(e->left, path, before);
            path.pop_back();
            return before;
        }
        case ExprKind::Labeled: {
            path.push_back(0);
            TokenSet after = walk(e->left, path, before);
            path.pop_back();
            return after;
        }
        }
        return before;
    }
};

struct UsageState {
    bool seen = false;
    bool all_after = true;
};

struct UniWalker {
    const Analysis& a;
    const UniquenessInfo& info;
    const std::string& host;
    std::map<std::string, UsageState>& usage;

    void walk(const ExprPtr& e, Path& path, bool afterU, const TokenSet& flw) {
        switch (e->kind) {
        case ExprKind::NonTerminal:
            if (!is_lexical_name(e->text) && e->text != eat_token_rule_name()) {
                usage[e->text].seen = true;
                usage[e->text].all_after = usage[e->text].all_after && afterU;
            }
            return;
        case ExprKind::Sequence: {
            path.push_back(0);
            walk(e->left, path, afterU, a.calck(e->right, flw));
            bool got = a.match_uni(e->left, info, host, path);
            path.back() = 1;
            walk(e->right, path, afterU || got, flw);
            path.pop_back();
            return;
        }
        case ExprKind::Choice: {
            bool disjoint = a.first(e->left).disjoint_with(a.calck(e->right, flw));
            path.push_back(0);
            walk(e->left, path, afterU && disjoint, flw);
            path.back() = 1;
            walk(e->right, path, afterU, flw);
            path.pop_back();
            return;
        }
        case ExprKind::Star: {
            bool disjoint = a.first(e->left).disjoint_with(flw);
            TokenSet inner = a.first(e->left);
            inner.epsilon = false;
            inner.add(flw);
            path.push_back(0);
            walk(e->left, path, afterU && disjoint, inner);
            path.pop_back();
            return;
        }
        case ExprKind::Plus: {
            path.push_back(0);
            TokenSet inner = a.first(e->left);
            inner.epsilon = false;
            inner.add(flw);
            walk(e->left, path, afterU, inner);
            bool disjoint = a.first(e->left).disjoint_with(flw);
            bool got = a.match_uni(e->left, info, host, path);
            walk(e->left, path, (afterU || got) && disjoint, inner);
            path.pop_back();
            return;
        }
        case ExprKind::Optional: {
            bool disjoint = a.first(e->left).disjoint_with(flw);
            path.push_back(0);
            walk(e->left, path, afterU && disjoint, flw);
            path.pop_back();
            return;
        }
        case ExprKind::Not:
        case ExprKind::And: {
            path.push_back(0);
            walk(e->left, path, false, flw);
            path.pop_back();
            return;
        }
        case ExprKind::Labeled: {
            path.push_back(0);
            walk(e->left, path, afterU, flw);
            path.pop_back();
            return;
        }
        default:
            return;
        }
    }
};

} // namespace

UniquenessInfo Analysis::compute_uniqueness() const {
    UniquenessInfo info;
    if (g_->rules.empty()) return info;

    std::map<std::string, std::vector<Usage>> lex_usages;
    for (const Rule& r : g_->rules) {
        if (!is_lexical_name(r.name)) continue;
        auto uses = rule_usages(*g_, r.name);
        if (uses.empty()) continue;
        if (uses.size() == 1) info.unique_lexical.insert(r.name);
        lex_usages[r.name] = std::move(uses);
    }

    // Preceding contexts for every lexical occurrence.
    for (const Rule& r : g_->rules) {
        if (!is_syntactical_host(r.name)) continue;
        PrecWalker w{*this, r.name, info};
        Path path;
        TokenSet entry;
        entry.epsilon = true;
        w.walk(r.body, path, entry);
    }

    // Context-unique occurrences, with the last-in-rule refinement for
    // occurrences that share a context inside one right-hand side.
    for (const auto& [name, uses] : lex_usages) {
        if (uses.size() < 2) continue;
        std::vector<const TokenSet*> prec;
        prec.reserve(uses.size());
        for (const Usage& u : uses)
            prec.push_back(&info.preceding[{u.rule, u.path}]);
        for (size_t i = 0; i < uses.size(); ++i) {
            std::vector<size_t> conflicts;
            for (size_t j = 0; j < uses.size(); ++j) {
                if (j == i) continue;
                if (!prec[i]->disjoint_with(*prec[j])) conflicts.push_back(j);
            }
            if (conflicts.empty()) {
                info.unique_occurrences.insert({uses[i].rule, uses[i].path});
                continue;
            }
            bool same_rule = std::all_of(conflicts.begin(), conflicts.end(),
                                         [&](size_t j) { return uses[j].rule == uses[i].rule; });
            bool last = std::all_of(conflicts.begin(), conflicts.end(),
                                    [&](size_t j) { return j < i; });
            if (same_rule && last)
                info.unique_occurrences.insert({uses[i].rule, uses[i].path});
        }
    }

    // Committed syntactical rules: grow from the start rule; a rule joins
    // once every reference to it sits on a committed path.
    std::set<std::string> uni_syn{g_->start().name};
    for (;;) {
        std::map<std::string, UsageState> usage;
        for (const Rule& r : g_->rules) {
            if (!is_syntactical_host(r.name)) continue;
            UniWalker w{*this, info, r.name, usage};
            Path path;
            w.walk(r.body, path, uni_syn.count(r.name) != 0, follow(r.name));
        }
        std::set<std::string> next{g_->start().name};
        for (const auto& [name, st] : usage)
            if (st.seen && st.all_after) next.insert(name);
        if (next == uni_syn) break;
        uni_syn = std::move(next);
    }
    info.unique_syntactical = std::move(uni_syn);

    return info;
}

bool Analysis::match_uni(const ExprPtr& p, const UniquenessInfo& info,
                         const std::string& host, const Path& base) const {
    switch (p->kind) {
    case ExprKind::NonTerminal:
        if (!is_lexical_name(p->text)) return false;
        return info.unique_lexical.count(p->text) != 0 ||
               info.occurrence_unique(host, base);
    case ExprKind::Sequence: {
        Path q = base;
        q.push_back(0);
        if (match_uni(p->left, info, host, q)) return true;
        q.back() = 1;
        return match_uni(p->right, info, host, q);
    }
    case ExprKind::Choice: {
        Path q = base;
        q.push_back(0);
        if (!match_uni(p->left, info, host, q)) return false;
        q.back() = 1;
        return match_uni(p->right, info, host, q);
    }
    case ExprKind::Plus: {
        Path q = base;
        q.push_back(0);
        return match_uni(p->left, info, host, q);
    }
    default:
        return false;
    }
}

namespace {

struct BanWalker {
    const Analysis& a;
    std::set<std::string>& banned;

    void walk(const ExprPtr& e, bool ctx, const TokenSet& flw) {
        switch (e->kind) {
        case ExprKind::NonTerminal:
            if (!is_lexical_name(e->text) && e->text != eat_token_rule_name() && ctx)
                banned.insert(e->text);
            return;
        case ExprKind::Sequence:
            walk(e->left, ctx, a.calck(e->right, flw));
            walk(e->right, ctx, flw);
            return;
        case ExprKind::Choice: {
            bool disjoint = a.first(e->left).disjoint_with(a.calck(e->right, flw));
            walk(e->left, ctx || !disjoint, flw);
            walk(e->right, ctx || !disjoint, flw);
            return;
        }
        case ExprKind::Star:
        case ExprKind::Plus: {
            bool disjoint = a.first(e->left).disjoint_with(flw);
            TokenSet inner = a.first(e->left);
            inner.epsilon = false;
            inner.add(flw);
            walk(e->left, ctx || !disjoint, inner);
            return;
        }
        case ExprKind::Optional: {
            bool disjoint = a.first(e->left).disjoint_with(flw);
            walk(e->left, ctx || !disjoint, flw);
            return;
        }
        case ExprKind::Not:
        case ExprKind::And:
        case ExprKind::Labeled:
            walk(e->left, ctx, flw);
            return;
        default:
            return;
        }
    }
};

} // namespace

std::set<std::string> Analysis::ban_set() const {
    std::set<std::string> banned;
    for (const Rule& r : g_->rules) {
        if (!is_syntactical_host(r.name)) continue;
        BanWalker w{*this, banned};
        w.walk(r.body, false, follow(r.name));
    }
    // Close over reachability: a banned rule taints everything its body uses.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const std::string& name : std::vector<std::string>(banned.begin(), banned.end())) {
            const Rule* r = g_->find_rule(name);
            if (!r) continue;
            visit_expr(r->body, [&](const ExprPtr& e, const Path&) {
                if (e->kind == ExprKind::NonTerminal && !is_lexical_name(e->text) &&
                    e->text != eat_token_rule_name() && banned.insert(e->text).second)
                    changed = true;
            });
        }
    }
    return banned;
}

} // namespace peglab
