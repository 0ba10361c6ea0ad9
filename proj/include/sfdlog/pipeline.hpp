#pragma once

#include "sfdlog/dlp.hpp"
#include "sfdlog/polyselect.hpp"
#include "sfdlog/relgen.hpp"
#include "sfdlog/ringstruct.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sfdlog {

enum class SelectionMode { Auto, Kummer, Search };

struct PipelineConfig {
    BigInt p = 3;
    unsigned n = 2, C = 1, D = 1;
    std::optional<BigInt> smoothBound; // default q^{2C}
    SelectionMode selection = SelectionMode::Auto;
    unsigned maxCandidates = 256;
    std::optional<std::string> forcedH; // bypasses selection; for exercising the checks
    std::uint64_t seed = 1;
};

/// Everything up to and including the factorbase logs.
struct Instance {
    PipelineConfig config;
    EmbeddingParams params;
    std::shared_ptr<const Field> field;
    BigInt bound;
    SelectedPolynomials sel;
    SearchLog searchLog;
    std::vector<std::string> rejected; // candidates passed over, with the reason
    ConditionReport conditions;
    BigInt groupOrder;
    OrderSplit split;
    RelationSet relations;
    RelationMatrix matrix;
    std::optional<ModulusDecomposition> decomposition;
    DlogResult logs;
    std::vector<std::pair<BigInt, std::size_t>> ranks; // per prime of L, for the report
    std::map<std::string, double> seconds;              // wall time per stage, summed over candidates
};

/// Throws ObstructionError, RankError or ExhaustedError with a diagnosis.
Instance build_instance(const PipelineConfig& config);

/// Selection only: no factorbase, conditions recorded but not enforced.
/// Search mode takes the C-good candidate after `skip` others.
Instance select_instance(const PipelineConfig& config, std::uint64_t skip = 0);

/// Factorbase relations and their matrix for the current selection.
void run_relation_stage(Instance& inst);
/// Ranks, logs and their field verification. Throws RankError.
void run_linalg_stage(Instance& inst);

RelationMatrix relation_matrix(const RelationSet& rs);

std::string to_string(SelectionMode mode);
SelectionMode parse_selection_mode(const std::string& text);

} // namespace sfdlog
