#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soc_cascade/graph.hpp"

namespace soc_cascade {

// ---------------------------------------------------------------------------
// Names and similarity
// ---------------------------------------------------------------------------

struct NormalizedName {
  std::string text;
  /// Set when stripping legal suffixes left nothing and the case-folded
  /// original was kept instead.
  bool fallback = false;
};

/// Case-folds ASCII letters, collapses whitespace and strips trailing legal
/// suffixes (corp, corporation, inc, ltd, co, gmbh, 有限公司, 股份有限公司).
/// Idempotent.
NormalizedName normalize_name_checked(std::string_view raw);

inline std::string normalize_name(std::string_view raw) {
  return normalize_name_checked(raw).text;
}

/// Decodes UTF-8 into Unicode scalar values; malformed bytes become U+FFFD.
std::u32string utf8_to_scalars(std::string_view text);

/// Edit distance (insert, delete, substitute) over Unicode scalar values.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - L(a, b) / max(|a|, |b|), lengths counted in scalar values. Inputs
/// are compared as given; callers normalize first. Throws
/// std::invalid_argument when both are empty.
double name_similarity(std::string_view a, std::string_view b);
double name_similarity(std::u32string_view a, std::u32string_view b);

// ---------------------------------------------------------------------------
// Entity grouping
// ---------------------------------------------------------------------------

struct AliasGroup {
  std::string canonical;
  std::vector<std::string> members;  // distinct raw names, sorted
};

struct GroupingOptions {
  double threshold = 0.6;  // pairs merge when similarity > threshold
  /// Only compare names sharing a first scalar value or a 2-gram.
  bool blocking = false;
};

/// Pairs (i, j), i < j, of `keys` with similarity strictly above the
/// threshold, in ascending order. OpenMP-parallel over rows.
std::vector<std::pair<std::uint32_t, std::uint32_t>> similar_pairs(
    const std::vector<std::u32string>& keys, double threshold, bool blocking = false);

/// Union-find closure of {similarity > threshold} over normalized names.
/// Duplicates in `names` count toward choosing the canonical name, which is
/// the most frequent raw spelling (ties: longest, then lexicographically
/// smallest). Groups come back sorted by canonical name, so the result does
/// not depend on input order.
std::vector<AliasGroup> group_entities(const std::vector<std::string>& names,
                                       const GroupingOptions& options = {});

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

struct Triplet {
  std::string head;
  std::string relation;
  std::string tail;
  std::string source;
};

struct RowError {
  std::size_t line = 0;
  std::string message;
};

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fraction of bad rows above which a file is rejected outright.
inline constexpr double kMaxBadRowFraction = 0.10;

struct TripletFile {
  std::vector<Triplet> triplets;
  std::vector<RowError> bad_rows;
};

struct AttributeFile {
  std::vector<std::pair<std::string, double>> capitals;
  std::vector<RowError> bad_rows;
};

/// RFC 4180 CSV records. Each record carries the line it started on.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Throws IngestError on an unterminated quoted field.
std::vector<CsvRecord> read_csv(std::istream& in);

/// Header must be exactly `head,relation,tail,source`.
TripletFile read_triplets(std::istream& in);
TripletFile read_triplets_file(const std::string& path);

/// Header must be exactly `name,registered_capital`.
AttributeFile read_attributes(std::istream& in);
AttributeFile read_attributes_file(const std::string& path);

std::string csv_escape(std::string_view field);

// ---------------------------------------------------------------------------
// Network construction
// ---------------------------------------------------------------------------

struct IngestReport {
  std::size_t raw_names = 0;           // distinct raw firm spellings
  std::size_t groups = 0;              // firms after merging
  std::size_t merged = 0;              // raw_names - groups
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges = 0;
  std::size_t bad_rows = 0;
  std::size_t defaulted_capital = 0;   // firms without an attribute row
  std::map<std::string, std::size_t> relations;  // label -> triplet count
};

struct CapitalDefault {
  enum class Kind { kMedian, kFixed } kind = Kind::kMedian;
  double value = 0.0;  // used by kFixed
};

struct BuildOptions {
  GroupingOptions grouping;
  CapitalDefault missing_capital;
};

struct IngestResult {
  SupplyNetwork network;
  IngestReport report;
};

/// Firms are the alias groups of all heads and tails, ordered by canonical
/// name; each triplet contributes one undirected edge between groups.
/// A group's capital is the largest capital listed for any of its
/// spellings (matched after normalization).
IngestResult build_network(const std::vector<Triplet>& triplets,
                           const std::vector<std::pair<std::string, double>>& capitals,
                           const BuildOptions& options = {});

}  // namespace soc_cascade
