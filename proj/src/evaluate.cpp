#include "peglab/evaluate.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace peglab {

namespace {

void collect_sites(const ExprPtr& e, const std::string& rule, Path& path,
                   std::vector<LabelSite>& out) {
    if (!e) return;
    switch (e->kind) {
    case ExprKind::Labeled:
        out.push_back({rule, path, e->text});
        collect_sites(e->left, rule, path, out);
        return;
    case ExprKind::Choice:
        if (e->right && e->right->kind == ExprKind::Throw) {
            // p /^l sugar: erasing the label leaves p at this position.
            out.push_back({rule, path, e->right->text});
            collect_sites(e->left, rule, path, out);
            return;
        }
        break;
    default:
        break;
    }
    int i = 0;
    for (const ExprPtr* c : {&e->left, &e->right}) {
        if (*c) {
            path.push_back(i);
            collect_sites(*c, rule, path, out);
            path.pop_back();
        }
        ++i;
    }
}

ExprPtr strip_label_expr(const ExprPtr& e, const std::string& label) {
    if (!e) return e;
    if (e->kind == ExprKind::Labeled && e->text == label)
        return strip_label_expr(e->left, label);
    if (e->kind == ExprKind::Choice && e->right &&
        e->right->kind == ExprKind::Throw && e->right->text == label)
        return strip_label_expr(e->left, label);
    auto l = strip_label_expr(e->left, label);
    auto r = strip_label_expr(e->right, label);
    if (l == e->left && r == e->right) return e;
    auto n = std::make_shared<Expr>(*e);
    n->left = l;
    n->right = r;
    return n;
}

void strip_label(Grammar& g, const std::string& label) {
    for (auto& r : g.rules) r.body = strip_label_expr(r.body, label);
    g.recovery.erase(label);
    g.messages.erase(label);
    g.label_origin.erase(label);
}

// ---- tree comparison ------------------------------------------------------

struct NodeKey {
    TreeNode::Kind kind;
    std::string name;
    std::string text;
    friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

void preorder_keys(const TreePtr& t, std::vector<NodeKey>& out) {
    if (!t || t->kind == TreeNode::Kind::Error) return;
    out.push_back({t->kind, t->name,
                   t->kind == TreeNode::Kind::Token ? t->text : std::string()});
    for (auto& c : t->children) preorder_keys(c, out);
}

bool has_token(const TreePtr& t) {
    if (!t || t->kind == TreeNode::Kind::Error) return false;
    if (t->kind == TreeNode::Kind::Token) return true;
    for (auto& c : t->children)
        if (has_token(c)) return true;
    return false;
}

bool iso(const TreePtr& a, const TreePtr& b);

// Children comparison where an Error leaf in `got` stands for zero or one
// subtree of `intended` at the same position.
bool iso_list(const std::vector<TreePtr>& xs, std::size_t i,
              const std::vector<TreePtr>& ys, std::size_t j) {
    if (i == xs.size()) return j == ys.size();
    const TreePtr& x = xs[i];
    if (x && x->kind == TreeNode::Kind::Error) {
        if (iso_list(xs, i + 1, ys, j)) return true;
        return j < ys.size() && iso_list(xs, i + 1, ys, j + 1);
    }
    if (j == ys.size()) return false;
    return iso(x, ys[j]) && iso_list(xs, i + 1, ys, j + 1);
}

bool iso(const TreePtr& a, const TreePtr& b) {
    if (!a || !b) return a == b;
    if (a->kind == TreeNode::Kind::Error)
        return b->kind == TreeNode::Kind::Error;
    if (a->kind != b->kind || a->name != b->name) return false;
    if (a->kind == TreeNode::Kind::Token) return a->text == b->text;
    return iso_list(a->children, 0, b->children, 0);
}

std::size_t lcs_length(const std::vector<NodeKey>& a,
                       const std::vector<NodeKey>& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1]
                         ? prev[j - 1] + 1
                         : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

std::vector<LabelSite> collect_label_sites(const Grammar& g) {
    std::vector<LabelSite> out;
    for (const auto& r : g.rules) {
        Path path;
        collect_sites(desugar_plus(r.body), r.name, path, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

LabelDiff diff_labels(const Grammar& generated, const Grammar& reference,
                      const std::vector<CorpusFile>& valid_corpus,
                      const std::set<std::string>& ignore_rules) {
    // The comparison only makes sense over a shared skeleton.
    for (const auto& gr : generated.rules) {
        const Rule* rr = reference.find_rule(gr.name);
        if (!rr) continue;
        if (!expr_equal(erase_labels(desugar_plus(gr.body)),
                        erase_labels(desugar_plus(rr->body))))
            throw std::runtime_error(
                "label diff requires matching rule skeletons; rule '" +
                gr.name + "' differs once labels are erased");
    }

    auto gen_sites = collect_label_sites(generated);
    auto ref_sites = collect_label_sites(reference);
    auto common = [&](const LabelSite& s) {
        return !ignore_rules.count(s.rule) && generated.find_rule(s.rule) &&
               reference.find_rule(s.rule);
    };

    LabelDiff d;
    auto ref_has = [&](const LabelSite& s) {
        return std::any_of(ref_sites.begin(), ref_sites.end(),
                           [&](const LabelSite& r) {
                               return r.rule == s.rule && r.path == s.path;
                           });
    };
    auto gen_has = [&](const LabelSite& s) {
        return std::any_of(gen_sites.begin(), gen_sites.end(),
                           [&](const LabelSite& r) {
                               return r.rule == s.rule && r.path == s.path;
                           });
    };
    for (const auto& s : gen_sites) {
        if (!common(s)) continue;
        (ref_has(s) ? d.equal : d.extra).push_back(s);
    }
    for (const auto& s : ref_sites) {
        if (!common(s)) continue;
        if (!gen_has(s)) d.missing.push_back(s);
    }

    // A label is wrong if a valid input makes it fire. Parsing stops at the
    // first throw, so fired labels are removed and the input retried until
    // it is accepted or fails without a label.
    Grammar work = generated;
    std::set<std::string> fired;
    std::size_t total_labels = gen_sites.size();
    for (const auto& f : valid_corpus) {
        for (std::size_t guard = 0; guard <= total_labels; ++guard) {
            Engine eng(work, false);
            auto res = eng.parse(f.text, f.name);
            if (res.clean()) break;
            const std::string& l = res.outcome.fail_label;
            if (l == kFailLabel || l.empty()) {
                d.rejected.push_back(f.name);
                break;
            }
            if (!fired.insert(l).second) break;
            d.wrong_detail.push_back({l, f.name, res.outcome.fail_pos});
            strip_label(work, l);
        }
    }
    for (const auto& s : gen_sites)
        if (fired.count(s.label)) d.wrong.push_back(s);
    return d;
}

const char* rating_name(Rating r) {
    switch (r) {
    case Rating::Excellent: return "excellent";
    case Rating::Good: return "good";
    case Rating::Poor: return "poor";
    case Rating::Awful: return "awful";
    }
    return "?";
}

RecoveryRating rate_recovery(const TreePtr& got, const TreePtr& intended,
                             double good_threshold) {
    std::vector<NodeKey> want, have;
    preorder_keys(intended, want);
    preorder_keys(got, have);

    RecoveryRating r;
    r.intended_nodes = want.size();
    r.got_nodes = have.size();
    // Bare nonterminal scaffolding carries no information: if the intended
    // tree has token content and the recovered one has none, nothing useful
    // survived, however the error leaves line up.
    if (!has_token(got) && has_token(intended)) {
        r.matched = lcs_length(want, have);
        r.similarity =
            want.empty() ? 1.0 : double(r.matched) / double(want.size());
        r.rating = Rating::Awful;
        return r;
    }
    if (iso(got, intended)) {
        // Error leaves stand in for whatever they displaced; content aside,
        // the tree carries everything the intended one does.
        r.rating = Rating::Excellent;
        r.similarity = 1.0;
        r.matched = want.size();
        return r;
    }
    r.matched = lcs_length(want, have);
    r.similarity = want.empty() ? 1.0 : double(r.matched) / double(want.size());
    r.rating = r.similarity >= good_threshold ? Rating::Good : Rating::Poor;
    return r;
}

CorpusSummary run_corpus(const Grammar& g, const std::string& invalid_dir,
                         const std::string& intended_dir,
                         double good_threshold) {
    namespace fs = std::filesystem;
    CorpusSummary s;
    std::vector<fs::path> files;
    if (fs::exists(invalid_dir))
        for (const auto& e : fs::directory_iterator(invalid_dir))
            if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());

    Engine eng(g);
    for (const auto& p : files) {
        fs::path twin = fs::path(intended_dir) / p.filename();
        if (!fs::exists(twin)) {
            s.unpaired.push_back(p.filename().string());
            continue;
        }
        auto got = eng.parse(slurp(p), p.filename().string());
        auto want = eng.parse(slurp(twin), p.filename().string());
        auto rating = rate_recovery(got.tree, want.tree, good_threshold);
        s.rows.push_back({p.filename().string(), rating.rating,
                          rating.similarity, got.reports.size()});
        switch (rating.rating) {
        case Rating::Excellent: ++s.count_excellent; break;
        case Rating::Good: ++s.count_good; break;
        case Rating::Poor: ++s.count_poor; break;
        case Rating::Awful: ++s.count_awful; break;
        }
    }
    return s;
}

std::string summary_to_text(const CorpusSummary& s) {
    std::ostringstream out;
    std::size_t w = 4;
    for (const auto& r : s.rows) w = std::max(w, r.file.size());
    out << std::left << std::setw(int(w) + 2) << "file"
        << std::setw(11) << "rating" << std::setw(12) << "similarity"
        << "errors\n";
    out << std::fixed << std::setprecision(2);
    for (const auto& r : s.rows)
        out << std::setw(int(w) + 2) << r.file << std::setw(11)
            << rating_name(r.rating) << std::setw(12) << r.similarity
            << r.errors << "\n";
    auto pct = [&](std::size_t n) {
        return s.total() == 0 ? 0.0 : 100.0 * double(n) / double(s.total());
    };
    out << std::setprecision(1);
    out << "total " << s.total() << ": excellent " << s.count_excellent << " ("
        << pct(s.count_excellent) << "%), good " << s.count_good << " ("
        << pct(s.count_good) << "%), poor " << s.count_poor << " ("
        << pct(s.count_poor) << "%), awful " << s.count_awful << " ("
        << pct(s.count_awful) << "%)\n";
    out << "good or better: " << 100.0 * s.good_or_better() << "%\n";
    for (const auto& u : s.unpaired)
        out << "unpaired: " << u << " (no intended twin)\n";
    return out.str();
}

std::string summary_to_json(const CorpusSummary& s) {
    nlohmann::ordered_json j;
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& r : s.rows)
        j["files"].push_back({{"file", r.file},
                              {"rating", rating_name(r.rating)},
                              {"similarity", r.similarity},
                              {"errors", r.errors}});
    j["counts"] = {{"excellent", s.count_excellent},
                   {"good", s.count_good},
                   {"poor", s.count_poor},
                   {"awful", s.count_awful}};
    j["total"] = s.total();
    j["good_or_better"] = s.good_or_better();
    j["unpaired"] = s.unpaired;
    return j.dump(2) + "\n";
}

} // namespace peglab
