#include "soc_cascade/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>


namespace soc_cascade {

namespace {

constexpr std::array<std::string_view, 6> kLatinSuffixes = {
    "corp", "corporation", "inc", "ltd", "co", "gmbh"};
// Longest first so the longer form is stripped whole.
constexpr std::array<std::string_view, 2> kCjkSuffixes = {"股份有限公司", "有限公司"};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim_punct(std::string_view token) {
  while (!token.empty() && (token.back() == '.' || token.back() == ',')) token.remove_suffix(1);
  return token;
}

std::vector<std::string> fold_and_split(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : raw) {
    if (is_space(c)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

// One stripping move on the trailing token; false when nothing applies.
bool strip_once(std::vector<std::string>& tokens) {
  if (tokens.empty()) return false;
  std::string& last = tokens.back();
  const std::string_view bare = trim_punct(last);
  if (bare.empty()) {
    tokens.pop_back();
    return true;
  }
  if (std::find(kLatinSuffixes.begin(), kLatinSuffixes.end(), bare) != kLatinSuffixes.end()) {
    tokens.pop_back();
    return true;
  }
  for (std::string_view suffix : kCjkSuffixes) {
    if (bare.size() >= suffix.size() && bare.ends_with(suffix)) {
      last.resize(bare.size() - suffix.size());
      if (last.empty()) tokens.pop_back();
      return true;
    }
  }
  if (bare.size() != last.size()) {
    last.resize(bare.size());
    return true;
  }
  return false;
}

}  // namespace

NormalizedName normalize_name_checked(std::string_view raw) {
  auto tokens = fold_and_split(raw);
  const std::string folded = join(tokens);
  while (strip_once(tokens)) {
  }
  if (tokens.empty()) return {folded, true};
  return {join(tokens), false};
}

std::u32string utf8_to_scalars(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
  while (i < text.size()) {
    const unsigned char lead = byte(i);
    std::size_t len = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      len = 1;
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      len = 2;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      len = 3;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      len = 4;
      cp = lead & 0x07;
    }
    bool ok = len > 0 && i + len <= text.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      if ((byte(i + k) & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (byte(i + k) & 0x3F);
    }
    if (ok) {
      constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
      ok = cp >= kMin[len] && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
    }
    if (!ok) {
      out.push_back(U'�');
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

namespace {

// Single-row dynamic program; `row` holds b.size() + 1 cells.
std::size_t levenshtein_row(std::u32string_view a, std::u32string_view b, std::uint32_t* row) {
  for (std::uint32_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::uint32_t diag = row[0];
    row[0] = static_cast<std::uint32_t>(i);
    const char32_t ca = a[i - 1];
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::uint32_t up = row[j];
      const std::uint32_t sub = diag + (ca == b[j - 1] ? 0u : 1u);
      row[j] = std::min(std::min(up, row[j - 1]) + 1u, sub);
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Firm names are short; keep their row on the stack.
  constexpr std::size_t kStackCells = 64;
  if (b.size() < kStackCells) {
    std::array<std::uint32_t, kStackCells> row;
    return levenshtein_row(a, b, row.data());
  }
  std::vector<std::uint32_t> row(b.size() + 1);
  return levenshtein_row(a, b, row.data());
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(utf8_to_scalars(a), utf8_to_scalars(b));
}

double name_similarity(std::u32string_view a, std::u32string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) throw std::invalid_argument("name_similarity: both names are empty");
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

double name_similarity(std::string_view a, std::string_view b) {
  return name_similarity(utf8_to_scalars(a), utf8_to_scalars(b));
}

namespace detail {

bool length_admits(std::size_t la, std::size_t lb, double threshold) {
  const std::size_t longest = std::max(la, lb);
  if (longest == 0) return false;
  const std::size_t gap = la > lb ? la - lb : lb - la;
  // L >= gap, so this bounds the similarity from above.
  return 1.0 - static_cast<double>(gap) / static_cast<double>(longest) > threshold;
}

std::vector<std::vector<std::uint32_t>> blocking_candidates(
    const std::vector<std::u32string>& keys) {
  // Keys tag first-scalar blocks and 2-gram blocks separately.
  std::unordered_map<std::u32string, std::vector<std::uint32_t>> blocks;
  for (std::uint32_t i = 0; i < keys.size(); ++i) {
    const auto& k = keys[i];
    if (k.empty()) continue;
    blocks[std::u32string{U'\x01', k[0]}].push_back(i);
    std::vector<std::u32string> grams;
    for (std::size_t p = 0; p + 1 < k.size(); ++p) {
      grams.push_back(std::u32string{U'\x02', k[p], k[p + 1]});
    }
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (auto& g : grams) blocks[g].push_back(i);
  }
  std::vector<std::vector<std::uint32_t>> candidates(keys.size());
  for (const auto& [key, members] : blocks) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        candidates[members[a]].push_back(members[b]);
      }
    }
  }
  for (auto& c : candidates) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return candidates;
}

}  // namespace detail

std::vector<std::pair<std::uint32_t, std::uint32_t>> similar_pairs(
    const std::vector<std::u32string>& keys, double threshold, bool blocking) {
  const auto n = static_cast<std::int64_t>(keys.size());
  std::vector<std::vector<std::uint32_t>> rows(keys.size());
  std::vector<std::vector<std::uint32_t>> candidates;
  if (blocking) candidates = detail::blocking_candidates(keys);

#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::uint32_t>(ii);
    auto consider = [&](std::uint32_t j) {
      if (!detail::length_admits(keys[i].size(), keys[j].size(), threshold)) return;
      if (name_similarity(keys[i], keys[j]) > threshold) rows[i].push_back(j);
    };
    if (blocking) {
      for (std::uint32_t j : candidates[i]) consider(j);
    } else {
      for (std::uint32_t j = i + 1; j < keys.size(); ++j) consider(j);
    }
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t i = 0; i < rows.size(); ++i) {
    for (std::uint32_t j : rows[i]) out.emplace_back(i, j);
  }
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // The smaller index always becomes the root.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

std::vector<AliasGroup> group_entities(const std::vector<std::string>& names,
                                       const GroupingOptions& options) {
  if (!(options.threshold > 0.0 && options.threshold <= 1.0)) {
    throw std::invalid_argument("group_entities: threshold must lie in (0, 1]");
  }
  std::map<std::string, std::size_t> frequency;
  for (const auto& n : names) ++frequency[n];

  std::map<std::string, std::vector<std::string>> by_key;  // normalized -> raw
  for (const auto& [raw, count] : frequency) {
    std::string key = normalize_name(raw);
    if (key.empty()) throw std::invalid_argument("group_entities: empty firm name");
    by_key[std::move(key)].push_back(raw);
  }

  std::vector<std::u32string> keys;
  keys.reserve(by_key.size());
  for (const auto& entry : by_key) keys.push_back(utf8_to_scalars(entry.first));

  DisjointSets sets(keys.size());
  for (const auto& [a, b] : similar_pairs(keys, options.threshold, options.blocking)) {
    sets.unite(a, b);
  }

  std::map<std::uint32_t, std::vector<std::string>> members;
  std::uint32_t index = 0;
  for (const auto& entry : by_key) {
    auto& bucket = members[sets.find(index++)];
    bucket.insert(bucket.end(), entry.second.begin(), entry.second.end());
  }

  std::vector<AliasGroup> groups;
  groups.reserve(members.size());
  for (auto& [root, raw] : members) {
    std::sort(raw.begin(), raw.end());
    const auto better = [&](const std::string& a, const std::string& b) {
      const std::size_t fa = frequency[a], fb = frequency[b];
      if (fa != fb) return fa > fb;
      const std::size_t la = utf8_to_scalars(a).size(), lb = utf8_to_scalars(b).size();
      if (la != lb) return la > lb;
      return a < b;
    };
    std::string canonical = *std::min_element(raw.begin(), raw.end(), better);
    groups.push_back({std::move(canonical), std::move(raw)});
  }
  std::sort(groups.begin(), groups.end(),
            [](const AliasGroup& a, const AliasGroup& b) { return a.canonical < b.canonical; });
  return groups;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

struct CsvParse {
  std::vector<CsvRecord> records;
  std::vector<RowError> errors;
};

CsvParse parse_csv(std::string_view text) {
  CsvParse out;
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < text.size()) {
    const std::size_t start_line = line;
    CsvRecord record{start_line, {}};
    std::string field;
    std::optional<std::string> error;
    bool record_done = false;
    // Blank lines carry no record.
    if (text[i] == '\n' || (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n')) {
      i += text[i] == '\r' ? 2 : 1;
      ++line;
      continue;
    }
    while (!record_done) {
      field.clear();
      if (i < text.size() && text[i] == '"') {
        ++i;
        bool closed = false;
        while (i < text.size()) {
          const char c = text[i];
          if (c == '"') {
            if (i + 1 < text.size() && text[i + 1] == '"') {
              field.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            closed = true;
            break;
          }
          if (c == '\n') ++line;
          field.push_back(c);
          ++i;
        }
        if (!closed) {
          error = "unterminated quoted field";
          record.fields.push_back(field);
          break;
        }
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r' && !error) {
          error = "unexpected character after closing quote";
        }
        while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') ++i;
      } else {
        while (i < text.size() && text[i] != ',' && text[i] != '\n' &&
               !(text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n')) {
          if (text[i] == '"' && !error) error = "unexpected quote in unquoted field";
          field.push_back(text[i]);
          ++i;
        }
      }
      record.fields.push_back(field);
      if (i >= text.size()) {
        record_done = true;
      } else if (text[i] == ',') {
        ++i;
      } else {
        i += (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ? 2 : 1;
        ++line;
        record_done = true;
      }
    }
    if (error) {
      out.errors.push_back({start_line, *error});
      // Keep the record slot so row counts stay honest; mark it empty.
      record.fields.clear();
    }
    out.records.push_back(std::move(record));
  }
  return out;
}

std::string slurp(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open '" + path + "'");
  return in;
}

void enforce_bad_row_limit(std::size_t data_rows, const std::vector<RowError>& bad,
                           const char* what) {
  if (data_rows == 0) return;
  const double fraction = static_cast<double>(bad.size()) / static_cast<double>(data_rows);
  if (fraction > kMaxBadRowFraction) {
    std::string msg = std::string(what) + ": " + std::to_string(bad.size()) + " of " +
                      std::to_string(data_rows) + " rows are malformed";
    if (!bad.empty()) {
      msg += " (first at line " + std::to_string(bad.front().line) + ": " +
             bad.front().message + ")";
    }
    throw IngestError(msg);
  }
}

void require_header(const CsvParse& parsed, const std::vector<std::string>& expected,
                    const char* what) {
  if (parsed.records.empty() || parsed.records.front().fields != expected) {
    std::string want;
    for (std::size_t i = 0; i < expected.size(); ++i) want += (i ? "," : "") + expected[i];
    throw IngestError(std::string(what) + ": header must be exactly '" + want + "'");
  }
}

}  // namespace

std::vector<CsvRecord> read_csv(std::istream& in) {
  auto parsed = parse_csv(slurp(in));
  if (!parsed.errors.empty()) {
    throw IngestError("line " + std::to_string(parsed.errors.front().line) + ": " +
                      parsed.errors.front().message);
  }
  return std::move(parsed.records);
}

TripletFile read_triplets(std::istream& in) {
  const auto parsed = parse_csv(slurp(in));
  require_header(parsed, {"head", "relation", "tail", "source"}, "triplet file");
  std::map<std::size_t, std::string> syntax;
  for (const auto& e : parsed.errors) syntax.emplace(e.line, e.message);

  TripletFile out;
  for (std::size_t r = 1; r < parsed.records.size(); ++r) {
    const auto& rec = parsed.records[r];
    if (const auto it = syntax.find(rec.line); it != syntax.end() && rec.fields.empty()) {
      out.bad_rows.push_back({rec.line, it->second});
      continue;
    }
    if (rec.fields.size() != 4) {
      out.bad_rows.push_back({rec.line, "expected 4 fields, found " +
                                            std::to_string(rec.fields.size())});
      continue;
    }
    if (normalize_name(rec.fields[0]).empty() || normalize_name(rec.fields[2]).empty()) {
      out.bad_rows.push_back({rec.line, "empty head or tail"});
      continue;
    }
    out.triplets.push_back({rec.fields[0], rec.fields[1], rec.fields[2], rec.fields[3]});
  }
  enforce_bad_row_limit(parsed.records.size() - 1, out.bad_rows, "triplet file");
  return out;
}

TripletFile read_triplets_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_triplets(in);
}

AttributeFile read_attributes(std::istream& in) {
  const auto parsed = parse_csv(slurp(in));
  require_header(parsed, {"name", "registered_capital"}, "attribute file");
  std::map<std::size_t, std::string> syntax;
  for (const auto& e : parsed.errors) syntax.emplace(e.line, e.message);

  AttributeFile out;
  for (std::size_t r = 1; r < parsed.records.size(); ++r) {
    const auto& rec = parsed.records[r];
    if (const auto it = syntax.find(rec.line); it != syntax.end() && rec.fields.empty()) {
      out.bad_rows.push_back({rec.line, it->second});
      continue;
    }
    if (rec.fields.size() != 2) {
      out.bad_rows.push_back({rec.line, "expected 2 fields, found " +
                                            std::to_string(rec.fields.size())});
      continue;
    }
    const std::string& text = rec.fields[1];
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value) ||
        value < 0.0) {
      out.bad_rows.push_back({rec.line, "invalid registered_capital '" + text + "'"});
      continue;
    }
    if (normalize_name(rec.fields[0]).empty()) {
      out.bad_rows.push_back({rec.line, "empty firm name"});
      continue;
    }
    out.capitals.emplace_back(rec.fields[0], value);
  }
  enforce_bad_row_limit(parsed.records.size() - 1, out.bad_rows,
                                       "attribute file");
  return out;
}

AttributeFile read_attributes_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_attributes(in);
}

std::string csv_escape(std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// ---------------------------------------------------------------------------
// Network construction
// ---------------------------------------------------------------------------

IngestResult build_network(const std::vector<Triplet>& triplets,
                           const std::vector<std::pair<std::string, double>>& capitals,
                           const BuildOptions& options) {
  IngestResult result;
  IngestReport& report = result.report;

  std::vector<std::string> names;
  names.reserve(triplets.size() * 2);
  for (const auto& t : triplets) {
    names.push_back(t.head);
    names.push_back(t.tail);
    ++report.relations[t.relation];
  }
  const auto groups = group_entities(names, options.grouping);

  std::unordered_map<std::string, FirmId> group_of_raw;
  std::unordered_map<std::string, FirmId> group_of_key;
  std::size_t raw_count = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const auto& raw : groups[g].members) {
      group_of_raw.emplace(raw, static_cast<FirmId>(g));
      group_of_key.emplace(normalize_name(raw), static_cast<FirmId>(g));
      ++raw_count;
    }
  }

  std::vector<std::optional<double>> capital(groups.size());
  for (const auto& [name, value] : capitals) {
    const auto it = group_of_key.find(normalize_name(name));
    if (it == group_of_key.end()) continue;
    auto& slot = capital[it->second];
    slot = slot ? std::max(*slot, value) : value;
  }

  double fallback = options.missing_capital.value;
  if (options.missing_capital.kind == CapitalDefault::Kind::kMedian) {
    std::vector<double> known;
    for (const auto& c : capital) {
      if (c) known.push_back(*c);
    }
    fallback = 0.0;
    if (!known.empty()) {
      std::sort(known.begin(), known.end());
      const std::size_t mid = known.size() / 2;
      fallback = known.size() % 2 ? known[mid] : 0.5 * (known[mid - 1] + known[mid]);
    }
  }

  std::vector<FirmSpec> firms;
  firms.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!capital[g]) ++report.defaulted_capital;
    std::vector<std::string> aliases;
    for (const auto& m : groups[g].members) {
      if (m != groups[g].canonical) aliases.push_back(m);
    }
    firms.push_back({groups[g].canonical, capital[g].value_or(fallback), std::move(aliases)});
  }

  std::vector<Edge> edges;
  edges.reserve(triplets.size());
  for (const auto& t : triplets) {
    edges.emplace_back(group_of_raw.at(t.head), group_of_raw.at(t.tail));
  }
  auto built = SupplyNetwork::from_ids(std::move(firms), edges);

  report.raw_names = raw_count;
  report.groups = groups.size();
  report.merged = raw_count - groups.size();
  report.self_loops_dropped = built.self_loops_dropped;
  report.duplicate_edges = built.duplicate_edges;
  result.network = std::move(built.network);
  return result;
}

}  // namespace soc_cascade
