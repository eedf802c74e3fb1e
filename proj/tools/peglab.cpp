// peglab: command-line front end over the library. Subcommands mirror the
// library's stages: check, analyze, annotate, parse, eval-labels,
// eval-recovery. Data goes to stdout or -o files, diagnostics to stderr.
//
// Exit codes: 0 success / clean parse; 1 validation or input errors;
// 2 grammar file syntax error; 3 parse with recovered errors; 4 parse
// failure; 64 usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include "peglab/analysis.hpp"
#include "peglab/annotate.hpp"
#include "peglab/engine.hpp"
#include "peglab/evaluate.hpp"
#include "peglab/reader.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace peglab;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "peglab 0.1.0";

[[noreturn]] void die(int code, const std::string& msg) {
    std::cerr << "peglab: " << msg << "\n";
    std::exit(code);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f.good()) die(1, "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Load and validate, mapping failures to the documented exit codes.
Grammar load_grammar(const std::string& path) {
    if (!fs::is_regular_file(path)) die(1, "cannot read " + path);
    Grammar g;
    try {
        g = read_grammar_file(path);
    } catch (const GrammarSyntaxError& e) {
        std::cerr << path << ":" << e.line() << ":" << e.col() << ": "
                  << e.message() << "\n";
        std::exit(2);
    }
    ValidationReport rep = validate(g);
    if (!rep.ok()) {
        for (const ValidationIssue& i : rep.issues)
            std::cerr << path << ": " << i.kind << " " << i.where
                      << (i.detail.empty() ? "" : ": " + i.detail) << "\n";
        std::exit(1);
    }
    return g;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f.good()) die(1, "cannot write " + path);
    f << content;
}

std::vector<CorpusFile> load_corpus(const std::string& dir) {
    if (!fs::is_directory(dir)) die(1, "not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<CorpusFile> out;
    for (const auto& p : files) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        out.push_back({p.filename().string(), ss.str()});
    }
    return out;
}

ojson tokens_json(const TokenSet& s) {
    ojson arr = ojson::array();
    for (const TokenId& t : s.tokens) arr.push_back(t.display());
    return arr;
}

ojson path_json(const Path& p) {
    ojson arr = ojson::array();
    for (int i : p) arr.push_back(i);
    return arr;
}

std::string path_text(const Path& p) {
    std::string s = "{";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + "}";
}

ojson tree_json(const TreePtr& t) {
    ojson n;
    switch (t->kind) {
    case TreeNode::Kind::NonTerminal: {
        n["kind"] = "nonterminal";
        n["name"] = t->name;
        n["span"] = ojson::array({t->begin, t->end});
        ojson kids = ojson::array();
        for (const TreePtr& c : t->children) kids.push_back(tree_json(c));
        n["children"] = std::move(kids);
        break;
    }
    case TreeNode::Kind::Token:
        n["kind"] = "token";
        n["name"] = t->name;
        n["text"] = t->text;
        n["span"] = ojson::array({t->begin, t->end});
        break;
    case TreeNode::Kind::Error:
        n["kind"] = "error";
        n["label"] = t->name;
        n["span"] = ojson::array({t->begin, t->end});
        break;
    }
    return n;
}

int run_check(const std::string& path) {
    load_grammar(path); // exits 1/2 on problems
    std::cout << "ok\n";
    return 0;
}

int run_analyze(const std::string& path, const std::string& out) {
    Grammar g = load_grammar(path);
    Analysis a(g);
    UniquenessInfo uni = a.compute_uniqueness();
    std::set<std::string> ban = a.ban_set();
    TokenPrefixReport tpr = unique_token_prefix_report(g, {});

    ojson j;
    j["start"] = g.start().name;
    ojson rules;
    ojson lexical = ojson::array();
    for (const Rule& r : g.rules) {
        if (is_lexical_name(r.name)) {
            lexical.push_back(r.name);
            continue;
        }
        ojson row;
        row["nullable"] = a.rule_nullable(r.name);
        row["first"] = tokens_json(a.rule_first(r.name));
        row["follow"] = tokens_json(a.follow(r.name));
        rules[r.name] = std::move(row);
    }
    j["rules"] = std::move(rules);
    j["lexical"] = std::move(lexical);

    ojson u;
    u["lexical"] = ojson(uni.unique_lexical);
    u["syntactical"] = ojson(uni.unique_syntactical);
    ojson occ = ojson::array();
    for (const OccurrenceKey& k : uni.unique_occurrences) {
        ojson row;
        row["rule"] = k.rule;
        row["path"] = path_json(k.path);
        auto it = uni.preceding.find(k);
        row["preceding"] =
            it == uni.preceding.end() ? ojson::array() : tokens_json(it->second);
        occ.push_back(std::move(row));
    }
    u["occurrences"] = std::move(occ);
    j["uniqueness"] = std::move(u);

    j["ban"] = ojson(ban);
    ojson warn = ojson::array();
    for (const auto& [x, y] : tpr.first_char_warnings)
        warn.push_back(ojson::array({x, y}));
    j["token_first_char_warnings"] = std::move(warn);

    write_output(out, j.dump(2) + "\n");
    return 0;
}

int run_annotate(const std::string& path, const std::string& strategy,
                 bool preserve, bool protect, const std::string& out,
                 const std::string& report_path) {
    Grammar g = load_grammar(path);
    AnnotationConfig cfg;
    if (strategy == "standard") cfg.strategy = Strategy::Standard;
    else if (strategy == "unique") cfg.strategy = Strategy::Unique;
    else if (strategy == "unique-banning") cfg.strategy = Strategy::UniqueBanning;
    else if (strategy == "banning") cfg.strategy = Strategy::Banning;
    else die(64, "unknown strategy " + strategy);
    cfg.preserve_existing = preserve;
    cfg.protect_start = protect;

    AnnotationResult res;
    try {
        res = annotate(g, cfg);
    } catch (const std::runtime_error& e) {
        die(1, e.what());
    }
    write_output(out, pretty_print(res.grammar));

    if (!report_path.empty()) {
        ojson j;
        ojson ins = ojson::array();
        for (const InsertedSite& s : res.inserted) {
            ojson row;
            row["label"] = s.label;
            row["rule"] = s.rule;
            row["path"] = path_json(s.path);
            row["follow"] = tokens_json(s.follow_used);
            ins.push_back(std::move(row));
        }
        ojson skip = ojson::array();
        for (const SkippedSite& s : res.skipped) {
            ojson row;
            row["rule"] = s.rule;
            row["path"] = path_json(s.path);
            row["reason"] = skip_reason_name(s.reason);
            skip.push_back(std::move(row));
        }
        j["inserted"] = std::move(ins);
        j["skipped"] = std::move(skip);
        write_output(report_path, j.dump(2) + "\n");
    }
    return 0;
}

int run_parse(const std::string& gpath, const std::string& ipath,
              const std::string& ast_out, const std::string& errors_fmt,
              bool no_recovery, bool columns) {
    Grammar g = load_grammar(gpath);
    std::string input = slurp(ipath);
    Engine eng(g, !no_recovery);
    ParseResult r = eng.parse(input, ipath);

    if (errors_fmt == "json") {
        ojson arr = ojson::array();
        for (const ErrorReport& rep : r.reports) {
            ojson row;
            row["file"] = rep.file;
            row["line"] = rep.line;
            row["column"] = rep.column;
            row["label"] = rep.label;
            row["message"] = rep.message;
            arr.push_back(std::move(row));
        }
        if (!arr.empty()) std::cerr << arr.dump(2) << "\n";
    } else {
        for (const ErrorReport& rep : r.reports)
            std::cerr << format_error(rep, columns) << "\n";
    }

    if (!r.matched()) return 4;
    if (!ast_out.empty()) write_output(ast_out, tree_json(r.tree).dump(2) + "\n");
    return r.clean() ? 0 : 3;
}

void print_sites(std::ostream& os, const char* tag,
                 const std::vector<LabelSite>& v) {
    for (const LabelSite& s : v)
        os << tag << " " << s.rule << " " << path_text(s.path) << " ^"
           << s.label << "\n";
}

ojson sites_json(const std::vector<LabelSite>& v) {
    ojson arr = ojson::array();
    for (const LabelSite& s : v) {
        ojson row;
        row["rule"] = s.rule;
        row["path"] = path_json(s.path);
        row["label"] = s.label;
        arr.push_back(std::move(row));
    }
    return arr;
}

int run_eval_labels(const std::string& gen_path, const std::string& ref_path,
                    const std::string& valid_dir,
                    const std::vector<std::string>& ignore, bool as_json,
                    const std::string& out) {
    Grammar gen = load_grammar(gen_path);
    Grammar ref = load_grammar(ref_path);
    auto corpus = load_corpus(valid_dir);
    std::set<std::string> ignore_set(ignore.begin(), ignore.end());

    LabelDiff d;
    try {
        d = diff_labels(gen, ref, corpus, ignore_set);
    } catch (const std::runtime_error& e) {
        die(1, e.what());
    }

    std::ostringstream os;
    if (as_json) {
        ojson j;
        j["equal"] = sites_json(d.equal);
        j["extra"] = sites_json(d.extra);
        j["missing"] = sites_json(d.missing);
        j["wrong"] = sites_json(d.wrong);
        ojson wit = ojson::array();
        for (const WrongLabel& w : d.wrong_detail) {
            ojson row;
            row["label"] = w.label;
            row["witness"] = w.witness;
            row["position"] = w.position;
            wit.push_back(std::move(row));
        }
        j["wrong_detail"] = std::move(wit);
        j["rejected"] = ojson(d.rejected);
        os << j.dump(2) << "\n";
    } else {
        os << "equal=" << d.equal.size() << " extra=" << d.extra.size()
           << " missing=" << d.missing.size() << " wrong=" << d.wrong.size()
           << " rejected=" << d.rejected.size() << "\n";
        print_sites(os, "equal", d.equal);
        print_sites(os, "extra", d.extra);
        print_sites(os, "missing", d.missing);
        print_sites(os, "wrong", d.wrong);
        for (const WrongLabel& w : d.wrong_detail)
            os << "witness " << w.label << " " << w.witness << ":"
               << w.position << "\n";
        for (const std::string& f : d.rejected) os << "rejected " << f << "\n";
    }
    write_output(out, os.str());
    return 0;
}

int run_eval_recovery(const std::string& gpath, const std::string& invalid_dir,
                      const std::string& intended_dir, double threshold,
                      bool as_json, const std::string& out) {
    Grammar g = load_grammar(gpath);
    if (!fs::is_directory(invalid_dir)) die(1, "not a directory: " + invalid_dir);
    if (!fs::is_directory(intended_dir)) die(1, "not a directory: " + intended_dir);
    CorpusSummary s = run_corpus(g, invalid_dir, intended_dir, threshold);
    write_output(out, as_json ? summary_to_json(s) : summary_to_text(s));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"labeled-failure PEG toolkit: validate, analyze, annotate,"
                 " parse, and evaluate grammars"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string g_path, i_path, out, report, ast_out;
    std::string strategy = "standard", errors_fmt = "text";
    std::string ref_path, valid_dir, invalid_dir, intended_dir;
    std::vector<std::string> ignore_rules;
    bool preserve = false, protect = false, no_recovery = false;
    bool columns = false, as_json = false;
    double threshold = 0.75;

    CLI::App* check = app.add_subcommand("check", "Validate a grammar file");
    check->add_option("grammar", g_path, "grammar file")->required();

    CLI::App* analyze = app.add_subcommand(
        "analyze", "Dump nullability, FIRST, FOLLOW, uniqueness and ban"
                   " tables as JSON");
    analyze->add_option("grammar", g_path, "grammar file")->required();
    analyze->add_option("-o,--output", out, "write to file instead of stdout");

    CLI::App* annotate_cmd = app.add_subcommand(
        "annotate", "Insert failure labels and recovery rules");
    annotate_cmd->add_option("grammar", g_path, "grammar file")->required();
    annotate_cmd->add_option("--strategy", strategy,
                             "standard|unique|unique-banning|banning")
        ->check(CLI::IsMember(
            {"standard", "unique", "unique-banning", "banning"}));
    annotate_cmd->add_flag("--preserve", preserve,
                           "keep labels already present in the input");
    annotate_cmd->add_flag("--protect-start", protect,
                           "wrap the start rule so any failure is reported");
    annotate_cmd->add_option("-o,--output", out, "write to file instead of stdout");
    annotate_cmd->add_option("--report", report,
                             "write inserted/skipped sites as JSON");

    CLI::App* parse = app.add_subcommand("parse", "Parse an input file");
    parse->add_option("grammar", g_path, "grammar file")->required();
    parse->add_option("input", i_path, "input file")->required();
    parse->add_option("--ast", ast_out, "write the tree as JSON ('-' = stdout)");
    parse->add_option("--errors", errors_fmt, "error report format")
        ->check(CLI::IsMember({"text", "json"}));
    parse->add_flag("--no-recovery", no_recovery,
                    "fail at the first error instead of recovering");
    parse->add_flag("--columns", columns, "include columns in text errors");

    CLI::App* eval_labels = app.add_subcommand(
        "eval-labels", "Compare generated labels against a reference"
                       " annotation over a valid corpus");
    eval_labels->add_option("generated", g_path, "generated grammar")->required();
    eval_labels->add_option("reference", ref_path, "reference grammar")->required();
    eval_labels->add_option("--valid", valid_dir, "directory of valid inputs")
        ->required();
    eval_labels->add_option("--ignore-rule", ignore_rules,
                            "rule name to leave out of the site comparison");
    eval_labels->add_flag("--json", as_json, "JSON output");
    eval_labels->add_option("-o,--output", out, "write to file instead of stdout");

    CLI::App* eval_recovery = app.add_subcommand(
        "eval-recovery", "Rate recovery quality against intended programs");
    eval_recovery->add_option("grammar", g_path, "annotated grammar")->required();
    eval_recovery->add_option("--invalid", invalid_dir,
                              "directory of erroneous inputs")->required();
    eval_recovery->add_option("--intended", intended_dir,
                              "directory of corrected twins")->required();
    eval_recovery->add_option("--good-threshold", threshold,
                              "recall needed for a good rating");
    eval_recovery->add_flag("--json", as_json, "JSON output");
    eval_recovery->add_option("-o,--output", out,
                              "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    }

    if (*check) return run_check(g_path);
    if (*analyze) return run_analyze(g_path, out);
    if (*annotate_cmd)
        return run_annotate(g_path, strategy, preserve, protect, out, report);
    if (*parse)
        return run_parse(g_path, i_path, ast_out, errors_fmt, no_recovery,
                         columns);
    if (*eval_labels)
        return run_eval_labels(g_path, ref_path, valid_dir, ignore_rules,
                               as_json, out);
    if (*eval_recovery)
        return run_eval_recovery(g_path, invalid_dir, intended_dir, threshold,
                                 as_json, out);
    return 64;
}
