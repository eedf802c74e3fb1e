#pragma once
#include "peglab/engine.hpp"
#include "peglab/grammar.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace peglab {

// A labeled position in a grammar. The path addresses the node in the
// *unlabeled* skeleton of the rule body (label wrappers are transparent),
// so the same site is found whether a label is written as [p]^l or p/⇑l,
// and two grammars that differ only in label names agree on sites.
struct LabelSite {
  std::string rule;
  Path path;
  std::string label;

  friend bool operator==(const LabelSite& a, const LabelSite& b) = default;
  friend auto operator<=>(const LabelSite& a, const LabelSite& b) = default;
};

// All labeled sites of a grammar, sorted by (rule, path).
// Repetition sugar is expanded first so paths are stable across p+ spellings.
std::vector<LabelSite> collect_label_sites(const Grammar& g);

struct CorpusFile {
  std::string name;
  std::string text;
};

struct WrongLabel {
  std::string label;
  std::string witness;       // corpus file whose parse threw the label
  std::size_t position = 0;  // byte offset of the throw
};

struct LabelDiff {
  std::vector<LabelSite> equal;    // generated site labeled in the reference too
  std::vector<LabelSite> extra;    // generated site with no reference label
  std::vector<LabelSite> missing;  // reference site with no generated label
  std::vector<LabelSite> wrong;    // generated sites whose label fired on valid input
  std::vector<WrongLabel> wrong_detail;  // one witness per wrong label name
  std::vector<std::string> rejected;     // corpus files the label-free grammar cannot accept
};

// Compares the generated annotation against a reference annotation of the
// same skeleton. equal/extra partition the generated sites; wrong holds every
// generated label observed to fire on a valid corpus input when parsing with
// recovery disabled (fired labels are removed and the input retried, so one
// input can convict several labels). Rules named in ignore_rules are left out
// of the site comparison but still parse-checked. Throws std::runtime_error
// if a rule body differs between the grammars once labels are erased.
LabelDiff diff_labels(const Grammar& generated, const Grammar& reference,
                      const std::vector<CorpusFile>& valid_corpus,
                      const std::set<std::string>& ignore_rules = {});

enum class Rating { Excellent, Good, Poor, Awful };

const char* rating_name(Rating r);

struct RecoveryRating {
  Rating rating = Rating::Awful;
  double similarity = 0.0;       // recall of intended non-error nodes
  std::size_t matched = 0;       // intended nodes found in got, in order
  std::size_t intended_nodes = 0;
  std::size_t got_nodes = 0;
};

// Rates how much of the intended tree survives in a recovered parse.
//   excellent  trees isomorphic, letting each Error leaf stand for at most
//              one intended subtree at its position
//   good       recall of intended nodes >= good_threshold
//   poor       some content survives but recall is below the threshold
//   awful      got has no non-error content at all
RecoveryRating rate_recovery(const TreePtr& got, const TreePtr& intended,
                             double good_threshold = 0.75);

struct FileRating {
  std::string file;
  Rating rating = Rating::Awful;
  double similarity = 0.0;
  std::size_t errors = 0;  // recovered/reported errors while parsing the file
};

struct CorpusSummary {
  std::vector<FileRating> rows;        // sorted by file name
  std::vector<std::string> unpaired;   // invalid files with no intended twin
  std::size_t count_excellent = 0;
  std::size_t count_good = 0;
  std::size_t count_poor = 0;
  std::size_t count_awful = 0;

  std::size_t total() const {
    return count_excellent + count_good + count_poor + count_awful;
  }
  double good_or_better() const {
    auto t = total();
    return t == 0 ? 0.0 : double(count_excellent + count_good) / double(t);
  }
};

// Parses every file in invalid_dir with recovery on, rates it against the
// tree of the same-named file in intended_dir, and aggregates the ratings.
// Missing twins are recorded in unpaired rather than treated as errors.
CorpusSummary run_corpus(const Grammar& g, const std::string& invalid_dir,
                         const std::string& intended_dir,
                         double good_threshold = 0.75);

std::string summary_to_text(const CorpusSummary& s);
std::string summary_to_json(const CorpusSummary& s);

}  // namespace peglab
