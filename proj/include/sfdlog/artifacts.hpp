#pragma once

#include "sfdlog/descent.hpp"
#include "sfdlog/pipeline.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace sfdlog {

inline constexpr const char* kArtifactMagic = "# subfield-dlog v1";

std::string sha256_hex(const std::string& data);

/// Header lines, then the body. `inputs` names the upstream content hash.
struct Artifact {
    std::string inputs;
    std::string body;
};

std::string render_artifact(const Artifact& a);
/// Throws ParseError on a bad header or a hash mismatch.
Artifact parse_artifact(const std::string& text);

void write_artifact(const std::filesystem::path& path, const Artifact& a);
/// None when the file does not exist.
std::optional<Artifact> read_artifact(const std::filesystem::path& path);

/// Selection-stage fields of an Instance.
std::string format_params(const Instance& inst);
/// Fills config, params, field, bound, sel, searchLog, rejected, groupOrder, split.
void parse_params(const std::string& body, Instance& inst);

std::string format_relations(const RelationSet& rs);
RelationSet parse_relations(const std::string& body, const Field& field);

std::string format_matrix(const RelationMatrix& M);
RelationMatrix parse_matrix(const std::string& body);

std::string format_logs(const DlogResult& r, const SymbolIndex& symbols,
                        const std::optional<ModulusDecomposition>& dec = std::nullopt);
/// The decomposition summary, when present, comes back as factor moduli and depth.
struct LogsArtifact {
    DlogResult logs;
    std::vector<BigInt> factors;
    unsigned depth = 0;
};
LogsArtifact parse_logs(const std::string& body);

struct SolutionRecord {
    std::shared_ptr<const Field> field;
    Poly g, generator, target;
    BigInt groupOrder, log;
    std::optional<Poly> base;
    std::optional<BigInt> baseLog; // None with a base means target is outside <base>
};

std::string format_solution(const SolutionRecord& s);
/// Reuses `field` when it matches the recorded p and e.
SolutionRecord parse_solution(const std::string& body, std::shared_ptr<const Field> field = nullptr);
/// Several records separated by "---" lines.
std::string format_solutions(const std::vector<SolutionRecord>& records);
std::vector<SolutionRecord> parse_solutions(const std::string& body);
/// generator^log = target and, with a base, base^baseLog = target.
bool verify_solution(const SolutionRecord& s);

std::string format_tree(const std::vector<DescentRecord>& records);
std::vector<DescentRecord> parse_tree(const std::string& body, const Field& field);

} // namespace sfdlog
