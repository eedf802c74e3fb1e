#include "peglab/annotate.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace peglab {

const char* skip_reason_name(SkipReason r) {
    switch (r) {
    case SkipReason::NonDisjointChoice: return "non-disjoint-choice";
    case SkipReason::NonDisjointRepetition: return "non-disjoint-repetition";
    case SkipReason::NotAfterUnique: return "not-after-unique";
    case SkipReason::Banned: return "banned";
    case SkipReason::Nullable: return "nullable";
    }
    return "?";
}

namespace {

std::string lower_ident(const std::string& s) {
    std::string out;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '_')
            out += static_cast<char>(std::tolower(u));
    }
    return out.empty() ? "exp" : out;
}

std::string hint_of(const ExprPtr& e) {
    switch (e->kind) {
    case ExprKind::NonTerminal:
        return lower_ident(e->text);
    case ExprKind::Literal: {
        bool word = !e->text.empty();
        for (char c : e->text)
            word = word && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        return word ? lower_ident(e->text) : "lit";
    }
    case ExprKind::Choice:
        return "choice";
    case ExprKind::Sequence:
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::Optional:
    case ExprKind::Labeled:
        return hint_of(e->left);
    default:
        return "exp";
    }
}

struct PendingSite {
    std::string rule;
    Path path;
    TokenSet flw;
    std::string hint;
    LabelOrigin origin;
};

// Collects the places one annotation pass would wrap, without rewriting.
struct Walker {
    const Analysis& a;
    const UniquenessInfo* uni; // non-null in unique mode
    std::string host;
    LabelOrigin origin;
    std::vector<PendingSite>& sites;
    std::vector<SkippedSite>& skips;

    bool unique() const { return uni != nullptr; }

    void record(const ExprPtr& e, const Path& p, const TokenSet& flw) {
        sites.push_back({host, p, flw, hint_of(e), origin});
    }
    void skip(const Path& p, SkipReason r) { skips.push_back({host, p, r}); }

    void walk(const ExprPtr& e, Path& path, bool seq, bool afterU,
              const TokenSet& flw) {
        switch (e->kind) {
        case ExprKind::NonTerminal:
            if (!seq) return;
            if (unique() && !afterU) {
                skip(path, SkipReason::NotAfterUnique);
                return;
            }
            if (a.nullable(e)) {
                skip(path, SkipReason::Nullable);
                return;
            }
            record(e, path, flw);
            return;
        case ExprKind::Sequence: {
            path.push_back(0);
            walk(e->left, path, seq, afterU, a.calck(e->right, flw));
            bool nextAfter = afterU;
            if (unique())
                nextAfter = afterU || a.match_uni(e->left, *uni, host, path);
            path.back() = 1;
            walk(e->right, path, seq || !a.nullable(e->left), nextAfter, flw);
            path.pop_back();
            return;
        }
        case ExprKind::Choice: {
            bool disjoint =
                a.first(e->left).disjoint_with(a.calck(e->right, flw));
            path.push_back(0);
            if (unique()) {
                if (afterU && !disjoint)
                    skip(path, SkipReason::NonDisjointChoice);
                walk(e->left, path, false, afterU && disjoint, flw);
            } else if (disjoint) {
                walk(e->left, path, false, afterU, flw);
            } else {
                skip(path, SkipReason::NonDisjointChoice);
            }
            path.back() = 1;
            walk(e->right, path, false, afterU, flw);
            path.pop_back();
            if (!seq) return;
            if (unique() && !afterU) {
                skip(path, SkipReason::NotAfterUnique);
                return;
            }
            if (a.nullable(e)) {
                skip(path, SkipReason::Nullable);
                return;
            }
            record(e, path, flw);
            return;
        }
        case ExprKind::Star: {
            TokenSet f1 = a.first(e->left);
            bool disjoint = f1.disjoint_with(flw);
            TokenSet inner = f1;
            inner.epsilon = false;
            inner.add(flw);
            path.push_back(0);
            if (unique()) {
                if (afterU && !disjoint)
                    skip(path, SkipReason::NonDisjointRepetition);
                walk(e->left, path, false, afterU && disjoint, inner);
            } else if (disjoint) {
                walk(e->left, path, false, afterU, inner);
            } else {
                skip(path, SkipReason::NonDisjointRepetition);
            }
            path.pop_back();
            return;
        }
        case ExprKind::Optional: {
            bool disjoint = a.first(e->left).disjoint_with(flw);
            path.push_back(0);
            if (unique()) {
                if (afterU && !disjoint)
                    skip(path, SkipReason::NonDisjointChoice);
                walk(e->left, path, false, afterU && disjoint, flw);
            } else if (disjoint) {
                walk(e->left, path, false, afterU, flw);
            } else {
                skip(path, SkipReason::NonDisjointChoice);
            }
            path.pop_back();
            if (!seq) return;
            if (unique() && !afterU)
                skip(path, SkipReason::NotAfterUnique);
            else
                skip(path, SkipReason::Nullable);
            return;
        }
        default:
            return; // leaves, predicates, throws, existing labels
        }
    }
};

ExprPtr rebuild(const ExprPtr& e, ExprPtr l, ExprPtr r) {
    switch (e->kind) {
    case ExprKind::Sequence: return seq(std::move(l), std::move(r));
    case ExprKind::Choice: return choice(std::move(l), std::move(r));
    case ExprKind::Star: return star(std::move(l));
    case ExprKind::Plus: return plus(std::move(l));
    case ExprKind::Optional: return optional(std::move(l));
    case ExprKind::Not: return not_pred(std::move(l));
    case ExprKind::And: return and_pred(std::move(l));
    case ExprKind::Labeled: return labeled(std::move(l), e->text);
    default: return e;
    }
}

ExprPtr wrap_at(const ExprPtr& e, const Path& path, std::size_t i,
                const std::string& label) {
    if (i == path.size()) return labeled(e, label);
    if (path[i] == 0)
        return rebuild(e, wrap_at(e->left, path, i + 1, label), e->right);
    return rebuild(e, e->left, wrap_at(e->right, path, i + 1, label));
}

std::set<std::string> all_label_names(const Grammar& g) {
    std::set<std::string> out = thrown_labels(g);
    for (const auto& [l, _] : g.recovery) out.insert(l);
    for (const auto& [l, _] : g.messages) out.insert(l);
    return out;
}

struct Applier {
    Grammar g;
    std::set<std::string> taken = {};
    std::map<std::string, int> counters = {};
    std::vector<InsertedSite> inserted = {};
    bool wants_eat_token = false;

    std::vector<std::string> name_batch(const std::vector<PendingSite>& batch) {
        std::map<std::string, int> count;
        for (const PendingSite& s : batch)
            ++count[lower_ident(s.rule) + "_" + s.hint];
        std::vector<std::string> names;
        for (const PendingSite& s : batch) {
            std::string base = lower_ident(s.rule) + "_" + s.hint;
            std::string name;
            if (count[base] == 1 && counters[base] == 0 && !taken.count(base)) {
                name = base;
            } else {
                int& k = counters[base];
                do {
                    ++k;
                    name = base + "_" + std::to_string(k);
                } while (taken.count(name));
            }
            taken.insert(name);
            names.push_back(name);
        }
        return names;
    }

    void apply(const std::vector<PendingSite>& batch) {
        std::vector<std::string> names = name_batch(batch);
        std::map<std::string, std::vector<std::pair<Path, std::string>>> per_rule;
        for (std::size_t i = 0; i < batch.size(); ++i) {
            inserted.push_back(
                {names[i], batch[i].rule, batch[i].path, batch[i].flw});
            per_rule[batch[i].rule].emplace_back(batch[i].path, names[i]);
        }
        for (auto& [rule, wraps] : per_rule) {
            std::sort(wraps.begin(), wraps.end(),
                      [](const auto& x, const auto& y) {
                          if (x.first.size() != y.first.size())
                              return x.first.size() > y.first.size();
                          return x.first > y.first;
                      });
            const Rule* r = g.find_rule(rule);
            ExprPtr body = r->body;
            for (const auto& [path, name] : wraps)
                body = wrap_at(body, path, 0, name);
            g.set_rule(rule, body);
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (batch[i].origin == LabelOrigin::StartRule) {
                g.recovery[names[i]] = star(any_expr());
            } else {
                g.recovery[names[i]] = recovery_body(batch[i].flw, g);
                wants_eat_token = true;
            }
            g.label_origin[names[i]] = batch[i].origin;
        }
    }
};

std::vector<PendingSite> protect_sites(const Grammar& g, const Analysis& a) {
    std::vector<PendingSite> out;
    if (g.rules.empty()) return out;
    const Rule& s = g.start();
    Path path;
    ExprPtr cur = s.body;
    // Walk the top-level sequence spine; each left element is one unit.
    for (;;) {
        if (cur->kind == ExprKind::Sequence) {
            Path p = path;
            p.push_back(0);
            if (a.can_fail(cur->left))
                out.push_back({s.name, p, TokenSet{}, hint_of(cur->left),
                               LabelOrigin::StartRule});
            path.push_back(1);
            cur = cur->right;
            continue;
        }
        if (a.can_fail(cur))
            out.push_back(
                {s.name, path, TokenSet{}, hint_of(cur), LabelOrigin::StartRule});
        break;
    }
    return out;
}

} // namespace

ExprPtr recovery_body(const TokenSet& flw, const Grammar& g) {
    std::map<std::string, std::size_t> def_index;
    for (std::size_t i = 0; i < g.rules.size(); ++i)
        def_index.emplace(g.rules[i].name, i);

    std::vector<std::pair<std::size_t, ExprPtr>> lex;
    std::vector<std::string> lits;
    bool has_end = false, has_any = false;
    for (const TokenId& t : flw.tokens) {
        switch (t.kind) {
        case TokenId::Kind::Lexical: {
            auto it = def_index.find(t.text);
            std::size_t idx = it != def_index.end() ? it->second : g.rules.size();
            lex.emplace_back(idx, nonterminal(t.text));
            break;
        }
        case TokenId::Kind::Literal: lits.push_back(t.text); break;
        case TokenId::Kind::End: has_end = true; break;
        case TokenId::Kind::AnyChar: has_any = true; break;
        }
    }
    std::sort(lex.begin(), lex.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::sort(lits.begin(), lits.end());

    std::vector<ExprPtr> parts;
    for (auto& [_, e] : lex) parts.push_back(e);
    for (const std::string& t : lits) parts.push_back(lit(t));
    if (has_any) parts.push_back(any_expr());
    if (has_end) parts.push_back(not_pred(any_expr()));

    return star(seq(not_pred(choice_all(parts)),
                    nonterminal(eat_token_rule_name())));
}

Rule build_eat_token(const Grammar& g) {
    Analysis a(g);
    std::vector<ExprPtr> parts;
    for (const Rule& r : g.rules)
        if (is_lexical_name(r.name) && !a.lexical_nullable(r.name))
            parts.push_back(nonterminal(r.name));
    parts.push_back(any_expr());
    return {eat_token_rule_name(), choice_all(parts)};
}

namespace {

AnnotationResult annotate_fresh(const Grammar& g, const AnnotationConfig& cfg,
                                const std::set<std::string>& reserved) {
    Grammar base = g;
    for (const Rule& r : base.rules)
        if (!is_lexical_name(r.name) && r.name != eat_token_rule_name())
            base.set_rule(r.name, desugar_plus(r.body));

    Analysis a(base);
    AnnotationResult res;
    UniquenessInfo uni;

    auto syn_rules = [&]() {
        std::vector<const Rule*> out;
        for (const Rule& r : base.rules)
            if (!is_lexical_name(r.name) && r.name != eat_token_rule_name())
                out.push_back(&r);
        return out;
    }();

    auto run = [&](const Rule& r, bool unique_mode, LabelOrigin origin,
                   std::vector<PendingSite>& out) {
        Walker w{a, unique_mode ? &uni : nullptr, r.name, origin, out,
                 res.skipped};
        Path p;
        bool afterU0 = unique_mode && uni.unique_syntactical.count(r.name) != 0;
        w.walk(r.body, p, false, afterU0, a.follow(r.name));
    };

    std::vector<PendingSite> sites;
    switch (cfg.strategy) {
    case Strategy::Standard:
        for (const Rule* r : syn_rules)
            run(*r, false, LabelOrigin::Standard, sites);
        break;
    case Strategy::Unique:
        uni = a.compute_uniqueness();
        for (const Rule* r : syn_rules)
            run(*r, true, LabelOrigin::Unique, sites);
        break;
    case Strategy::Banning: {
        std::set<std::string> ban = a.ban_set();
        for (const Rule* r : syn_rules) {
            if (ban.count(r->name))
                res.skipped.push_back({r->name, {}, SkipReason::Banned});
            else
                run(*r, false, LabelOrigin::Banning, sites);
        }
        break;
    }
    case Strategy::UniqueBanning: {
        uni = a.compute_uniqueness();
        for (const Rule* r : syn_rules)
            run(*r, true, LabelOrigin::Unique, sites);
        std::set<std::string> ban = a.ban_set();
        std::vector<PendingSite> extra;
        for (const Rule* r : syn_rules) {
            if (ban.count(r->name))
                res.skipped.push_back({r->name, {}, SkipReason::Banned});
            else
                run(*r, false, LabelOrigin::Banning, extra);
        }
        std::set<std::pair<std::string, Path>> seen;
        for (const PendingSite& s : sites) seen.insert({s.rule, s.path});
        for (PendingSite& s : extra)
            if (seen.insert({s.rule, s.path}).second)
                sites.push_back(std::move(s));
        break;
    }
    }

    Applier ap{base};
    ap.taken = all_label_names(g);
    ap.taken.insert(reserved.begin(), reserved.end());
    ap.apply(sites);

    if (cfg.protect_start) {
        Analysis a2(ap.g);
        ap.apply(protect_sites(ap.g, a2));
    }

    if (ap.wants_eat_token && !ap.g.has_rule(eat_token_rule_name()))
        ap.g.rules.push_back(build_eat_token(ap.g));

    res.grammar = std::move(ap.g);
    res.inserted = std::move(ap.inserted);
    return res;
}

} // namespace

AnnotationResult annotate(const Grammar& g, const AnnotationConfig& cfg) {
    if (is_unlabeled(g)) return annotate_fresh(g, cfg, {});
    if (!cfg.preserve_existing)
        throw std::runtime_error(
            "grammar already carries labels; preserve_existing not set");

    // Annotate the label-erased skeleton, then lay the original labels back
    // over the result. Existing names are reserved so generated ones never
    // collide with them.
    Grammar stripped = g;
    for (const Rule& r : stripped.rules)
        stripped.set_rule(r.name, erase_labels(r.body));
    stripped.recovery.clear();
    stripped.messages.clear();
    stripped.label_origin.clear();

    AnnotationResult gen = annotate_fresh(stripped, cfg, all_label_names(g));
    AnnotationResult res;
    res.grammar = merge_annotations(gen.grammar, g);
    res.skipped = std::move(gen.skipped);
    std::set<std::string> kept = thrown_labels(res.grammar);
    for (InsertedSite& s : gen.inserted)
        if (kept.count(s.label)) res.inserted.push_back(std::move(s));
    return res;
}

AnnotationResult annotate_standard(const Grammar& g) {
    return annotate(g, {Strategy::Standard, false, false});
}
AnnotationResult annotate_unique(const Grammar& g) {
    return annotate(g, {Strategy::Unique, false, false});
}
AnnotationResult annotate_banning(const Grammar& g) {
    return annotate(g, {Strategy::Banning, false, false});
}

Grammar protect_start_rule(const Grammar& g) {
    Analysis a(g);
    Applier ap{g};
    ap.taken = all_label_names(g);
    ap.apply(protect_sites(g, a));
    return std::move(ap.g);
}

namespace {

struct Merger {
    std::set<std::string> kept_generated;
    // manual label taking over a generated site, by (manual, generated) name
    std::vector<std::pair<std::string, std::string>> overridden;

    ExprPtr align(const ExprPtr& m, const ExprPtr& g) {
        if (m->kind == ExprKind::Labeled) {
            if (g->kind == ExprKind::Labeled) {
                overridden.emplace_back(m->text, g->text);
                return labeled(align(m->left, g->left), m->text);
            }
            return labeled(align(m->left, g), m->text);
        }
        if (g->kind == ExprKind::Labeled) {
            kept_generated.insert(g->text);
            return labeled(align(m, g->left), g->text);
        }
        // Manual `p / ^l` is the desugared annotation form; the generated
        // side never produces a bare throw alternative, so align p alone.
        if (m->kind == ExprKind::Choice && m->right->kind == ExprKind::Throw)
            return choice(align(m->left, g), m->right);
        if (m->kind != g->kind)
            throw std::runtime_error("annotation skeletons differ");
        if (m->leaf()) return m;
        if (!m->right) return rebuild(m, align(m->left, g->left), nullptr);
        return rebuild(m, align(m->left, g->left), align(m->right, g->right));
    }
};

} // namespace

Grammar merge_annotations(const Grammar& generated, const Grammar& manual) {
    Grammar out;
    Merger merger;
    std::set<std::string> done;
    for (const Rule& mr : manual.rules) {
        const Rule* gr = generated.find_rule(mr.name);
        if (!gr) {
            out.rules.push_back(mr);
            done.insert(mr.name);
            continue;
        }
        if (expr_equal(mr.body, gr->body)) {
            out.rules.push_back(mr);
            done.insert(mr.name);
            continue;
        }
        ExprPtr m = desugar_plus(mr.body);
        ExprPtr gb = desugar_plus(gr->body);
        if (!expr_equal(erase_labels(m), erase_labels(gb)))
            throw std::runtime_error("annotation skeletons differ for rule " +
                                     mr.name);
        out.rules.push_back({mr.name, merger.align(m, gb)});
        done.insert(mr.name);
    }
    for (const Rule& gr : generated.rules)
        if (!done.count(gr.name)) out.rules.push_back(gr);

    out.recovery = manual.recovery;
    out.messages = manual.messages;
    for (const auto& [l, origin] : manual.label_origin)
        out.label_origin.emplace(l, origin);
    for (const std::string& l : merger.kept_generated) {
        if (auto it = generated.recovery.find(l); it != generated.recovery.end())
            out.recovery.emplace(l, it->second);
        if (auto it = generated.messages.find(l); it != generated.messages.end())
            out.messages.emplace(l, it->second);
        if (auto it = generated.label_origin.find(l);
            it != generated.label_origin.end())
            out.label_origin.emplace(l, it->second);
    }
    for (const auto& [ml, gl] : merger.overridden) {
        if (!out.recovery.count(ml)) {
            if (auto it = generated.recovery.find(gl);
                it != generated.recovery.end())
                out.recovery.emplace(ml, it->second);
        }
        out.label_origin.emplace(ml, LabelOrigin::Manual);
    }
    for (const std::string& l : thrown_labels(out))
        if (!out.label_origin.count(l))
            out.label_origin.emplace(l, LabelOrigin::Manual);
    return out;
}

} // namespace peglab
