#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sumset_forge/eset.hpp"
#include "sumset_forge/exact.hpp"

namespace sumset_forge {

/// One candidate set and its sum/product growth.
struct SearchRecord {
  std::string field_spec;
  std::string mask_hex;
  std::uint64_t m = 0;
  std::uint64_t s = 0;  // |A+A|
  std::uint64_t t = 0;  // |AA|
  bool hypothesis_ok = false;
  std::string case_tag = "-";

  std::uint64_t objective() const { return std::max(s, t); }
  /// max(s,t)^48 and m^49; the set beats |A|^{49/48} growth when num ≥ den.
  BigInt score_num() const { return ipow(BigInt(objective()), 48); }
  BigInt score_den() const { return ipow(BigInt(m), 49); }

  std::string tsv() const;
  static SearchRecord parse(std::string_view line);

  bool operator==(const SearchRecord&) const = default;
};

/// Builds a fully populated record; the case tag is filled when with_case is set.
SearchRecord make_record(const ESet& a, bool with_case);

enum class SearchMode { Exhaustive, Random };

struct SearchConfig {
  SearchMode mode = SearchMode::Exhaustive;
  std::uint32_t m = 0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  bool exclude_zero = true;
  bool hypothesis_filter = false;
  bool with_case = true;
  unsigned jobs = 1;
  std::uint64_t budget = 50'000'000;
};

class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Colex rank of an ascending combination: Σ C(c_i, i+1).
std::uint64_t colex_rank(const std::vector<std::uint32_t>& combo);
/// The ascending m-combination of colex rank r.
std::vector<std::uint32_t> colex_unrank(std::uint64_t rank, std::uint32_t m);
/// Advances to the colex successor within [0, n); false after the last one.
bool colex_next(std::vector<std::uint32_t>& combo, std::uint32_t n);

/// Number of m-subsets the exhaustive search ranges over.
std::uint64_t search_space_size(const Field& f, std::uint32_t m, bool exclude_zero);

/// All m-subsets with minimal max(|A+A|, |AA|) among colex ranks [begin, end),
/// in colex order. end = nullopt means the whole space.
std::vector<SearchRecord> exhaustive_min(const FieldPtr& ctx, const SearchConfig& config,
                                         std::uint64_t begin = 0,
                                         std::optional<std::uint64_t> end = std::nullopt);

/// sample_count seeded uniform m-subsets; deterministic in (seed, config).
std::vector<SearchRecord> random_scan(const FieldPtr& ctx, const SearchConfig& config);

/// Append-only record store keyed by (field_spec, mask_hex).
class Store {
 public:
  explicit Store(std::string field_spec) : field_spec_(std::move(field_spec)) {}

  /// Parses a store; malformed lines are reported as "<origin>:<line>: ...".
  static Store load(std::istream& in, const std::string& origin);
  static Store load_file(const std::string& path);

  const std::string& field_spec() const { return field_spec_; }
  const std::vector<SearchRecord>& records() const { return records_; }

  /// Appends records not already present. Throws on a field mismatch.
  void merge(const std::vector<SearchRecord>& records);
  void merge(const Store& other) { merge(other.records_); }

  /// Least (max(s,t), m, mask_hex).
  std::optional<SearchRecord> minimum() const;

  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

 private:
  std::string field_spec_;
  std::vector<SearchRecord> records_;
};

/// Aggregate rows per (field_spec, m): count, min and lower median of
/// max(s,t), hypothesis_ok count, case tag histogram. Header line first.
std::string report(const std::vector<Store>& stores);

}  // namespace sumset_forge
