#include "peglab/grammar.hpp"

#include <cctype>
#include <stdexcept>

namespace peglab {

const char* label_origin_name(LabelOrigin o) {
    switch (o) {
    case LabelOrigin::Manual: return "manual";
    case LabelOrigin::Standard: return "standard";
    case LabelOrigin::Unique: return "unique";
    case LabelOrigin::Banning: return "banning";
    case LabelOrigin::StartRule: return "start-rule";
    }
    return "?";
}

const Rule* Grammar::find_rule(const std::string& name) const {
    for (const Rule& r : rules)
        if (r.name == name) return &r;
    return nullptr;
}

bool Grammar::has_rule(const std::string& name) const {
    return find_rule(name) != nullptr;
}

const Rule& Grammar::start() const {
    if (rules.empty()) throw std::logic_error("grammar has no rules");
    return rules.front();
}

void Grammar::set_rule(const std::string& name, ExprPtr body) {
    for (Rule& r : rules) {
        if (r.name == name) {
            r.body = std::move(body);
            return;
        }
    }
    rules.push_back({name, std::move(body)});
}

bool is_lexical_name(const std::string& name) {
    for (char c : name)
        if (std::islower(static_cast<unsigned char>(c))) return false;
    return true;
}

std::set<std::string> thrown_labels(const Grammar& g) {
    std::set<std::string> out;
    auto scan = [&](const ExprPtr& body) {
        visit_expr(body, [&](const ExprPtr& e, const Path&) {
            if (e->kind == ExprKind::Throw || e->kind == ExprKind::Labeled)
                out.insert(e->text);
        });
    };
    for (const Rule& r : g.rules) scan(r.body);
    for (const auto& [label, body] : g.recovery) scan(body);
    return out;
}

bool is_unlabeled(const Grammar& g) {
    for (const Rule& r : g.rules) {
        bool found = false;
        visit_expr(r.body, [&](const ExprPtr& e, const Path&) {
            if (e->kind == ExprKind::Throw || e->kind == ExprKind::Labeled)
                found = true;
        });
        if (found) return false;
    }
    return true;
}

std::vector<Usage> rule_usages(const Grammar& g, const std::string& name) {
    std::vector<Usage> out;
    for (const Rule& r : g.rules) {
        if (is_lexical_name(r.name)) continue;
        if (r.name == eat_token_rule_name()) continue;
        visit_expr(r.body, [&](const ExprPtr& e, const Path& p) {
            if (e->kind == ExprKind::NonTerminal && e->text == name)
                out.push_back({r.name, p});
        });
    }
    return out;
}

std::set<std::string> referenced_names(const Grammar& g) {
    std::set<std::string> out;
    auto scan = [&](const ExprPtr& body) {
        visit_expr(body, [&](const ExprPtr& e, const Path&) {
            if (e->kind == ExprKind::NonTerminal) out.insert(e->text);
        });
    };
    for (const Rule& r : g.rules) scan(r.body);
    for (const auto& [label, body] : g.recovery) scan(body);
    return out;
}

} // namespace peglab
