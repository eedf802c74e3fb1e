#pragma once

#include "peglab/analysis.hpp"
#include "peglab/grammar.hpp"

#include <string>
#include <vector>

namespace peglab {

enum class Strategy { Standard, Unique, UniqueBanning, Banning };

struct AnnotationConfig {
    Strategy strategy = Strategy::Standard;
    // Accept grammars that already carry labels, leaving those sites alone.
    bool preserve_existing = false;
    // After annotating, wrap the start rule's failure points with labels
    // whose recovery consumes the rest of the input.
    bool protect_start = false;
};

enum class SkipReason {
    NonDisjointChoice,
    NonDisjointRepetition,
    NotAfterUnique,
    Banned,
    Nullable,
};

const char* skip_reason_name(SkipReason r);

struct InsertedSite {
    std::string label;
    std::string rule;
    Path path;           // position of the wrapped expression in the rule body
    TokenSet follow_used;
};

struct SkippedSite {
    std::string rule;
    Path path;
    SkipReason reason;
};

struct AnnotationResult {
    Grammar grammar;
    std::vector<InsertedSite> inserted;
    std::vector<SkippedSite> skipped;
};

// Insert labels into every syntactical rule per the configured strategy,
// attach one recovery rule per inserted label, and add the token-skipping
// eatToken rule when anything was inserted. Plus-repetitions in syntactical
// rules are expanded first so every strategy sees the same shapes.
// Throws std::runtime_error on a labeled input without preserve_existing.
AnnotationResult annotate(const Grammar& g, const AnnotationConfig& cfg);

AnnotationResult annotate_standard(const Grammar& g);
AnnotationResult annotate_unique(const Grammar& g);
AnnotationResult annotate_banning(const Grammar& g);

// The recovery expression for a label raised where flw may follow:
// skip tokens until one of flw is in sight.
ExprPtr recovery_body(const TokenSet& flw, const Grammar& g);

// eatToken <- T1 / T2 / ... / Tn / . over the grammar's token rules in
// definition order, skipping rules that can match the empty string; the
// any-char fallback keeps recovery moving over garbage.
Rule build_eat_token(const Grammar& g);

// Wrap each top-level element of the start rule that can fail with a label
// whose recovery consumes the remaining input. Already-wrapped elements are
// left alone, so the operation is idempotent.
Grammar protect_start_rule(const Grammar& g);

// Overlay manual labels onto a generated annotation of the same skeleton:
// manual labels win where both annotated a site, generated labels fill the
// rest, and a manual label without a recovery rule inherits the generated
// one from its site. Throws std::runtime_error when the label-erased
// skeletons differ.
Grammar merge_annotations(const Grammar& generated, const Grammar& manual);

} // namespace peglab
