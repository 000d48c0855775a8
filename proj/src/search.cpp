#include "sumset_forge/search.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "sumset_forge/garaev.hpp"
#include "sumset_forge/rng.hpp"
#include "sumset_forge/setalg.hpp"

namespace sumset_forge {

namespace {

std::vector<std::string_view> split_tabs(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find('\t');
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::uint64_t parse_count(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("expected a nonnegative integer, got '" + std::string(s) + "'");
  }
  return std::stoull(std::string(s));
}

// Distinct sums and products of a small set, with generation stamps to avoid clearing.
class GrowthCounter {
 public:
  explicit GrowthCounter(const Field& f) : f_(f), sum_seen_(f.q(), 0), prod_seen_(f.q(), 0) {}

  std::pair<std::uint64_t, std::uint64_t> operator()(const std::vector<Elem>& a) {
    ++stamp_;
    std::uint64_t s = 0, t = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i; j < a.size(); ++j) {
        auto& sv = sum_seen_[f_.add(a[i], a[j])];
        if (sv != stamp_) {
          sv = stamp_;
          ++s;
        }
        auto& pv = prod_seen_[f_.mul(a[i], a[j])];
        if (pv != stamp_) {
          pv = stamp_;
          ++t;
        }
      }
    }
    return {s, t};
  }

 private:
  const Field& f_;
  std::vector<std::uint32_t> sum_seen_, prod_seen_;
  std::uint32_t stamp_ = 0;
};

bool record_less(const SearchRecord& a, const SearchRecord& b) {
  return std::tuple(a.objective(), a.m, a.mask_hex) < std::tuple(b.objective(), b.m, b.mask_hex);
}

}  // namespace

std::string SearchRecord::tsv() const {
  return field_spec + '\t' + mask_hex + '\t' + std::to_string(m) + '\t' + std::to_string(s) + '\t' +
         std::to_string(t) + '\t' + (hypothesis_ok ? "1" : "0") + '\t' + case_tag;
}

SearchRecord SearchRecord::parse(std::string_view line) {
  const auto cols = split_tabs(line);
  if (cols.size() != 7) {
    throw std::invalid_argument("expected 7 tab-separated columns, got " + std::to_string(cols.size()));
  }
  SearchRecord r;
  r.field_spec = std::string(cols[0]);
  r.mask_hex = std::string(cols[1]);
  if (r.mask_hex.empty() ||
      !std::all_of(r.mask_hex.begin(), r.mask_hex.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); })) {
    throw std::invalid_argument("malformed mask '" + r.mask_hex + "'");
  }
  r.m = parse_count(cols[2]);
  r.s = parse_count(cols[3]);
  r.t = parse_count(cols[4]);
  if (cols[5] != "0" && cols[5] != "1") throw std::invalid_argument("hypothesis_ok must be 0 or 1");
  r.hypothesis_ok = cols[5] == "1";
  r.case_tag = std::string(cols[6]);
  if (r.case_tag != "-") parse_case_tag(r.case_tag);
  return r;
}

SearchRecord make_record(const ESet& a, bool with_case) {
  SearchRecord r;
  r.field_spec = a.field().spec();
  r.mask_hex = a.mask_hex();
  r.m = a.size();
  r.s = sumset(a, a).size();
  r.t = productset(a, a).size();
  r.hypothesis_ok = check_hypothesis(a).empty();
  if (with_case) r.case_tag = std::string(to_string(run_main_theorem(a).tag));
  return r;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t colex_rank(const std::vector<std::uint32_t>& combo) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < combo.size(); ++i) r += binomial(combo[i], i + 1);
  return r;
}

std::vector<std::uint32_t> colex_unrank(std::uint64_t rank, std::uint32_t m) {
  std::vector<std::uint32_t> combo(m);
  for (std::uint32_t i = m; i >= 1; --i) {
    std::uint32_t c = i - 1;
    while (binomial(c + 1, i) <= rank) ++c;
    combo[i - 1] = c;
    rank -= binomial(c, i);
  }
  return combo;
}

bool colex_next(std::vector<std::uint32_t>& combo, std::uint32_t n) {
  const std::size_t m = combo.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint32_t limit = i + 1 < m ? combo[i + 1] : n;
    if (combo[i] + 1 < limit) {
      ++combo[i];
      for (std::size_t j = 0; j < i; ++j) combo[j] = static_cast<std::uint32_t>(j);
      return true;
    }
  }
  return false;
}

std::uint64_t search_space_size(const Field& f, std::uint32_t m, bool exclude_zero) {
  return binomial(f.q() - (exclude_zero ? 1 : 0), m);
}

std::vector<SearchRecord> exhaustive_min(const FieldPtr& ctx, const SearchConfig& config,
                                         std::uint64_t begin, std::optional<std::uint64_t> end) {
  const Field& f = *ctx;
  const std::uint32_t offset = config.exclude_zero ? 1 : 0;
  const std::uint32_t n = f.q() - offset;
  if (config.m < 1 || config.m > n) throw std::invalid_argument("invalid subset size m");
  const std::uint64_t total = search_space_size(f, config.m, config.exclude_zero);
  const std::uint64_t stop = std::min(end.value_or(total), total);
  if (begin >= stop) return {};
  if (stop - begin > config.budget) {
    throw BudgetExceeded("exhaustive search over " + std::to_string(stop - begin) +
                         " subsets exceeds the budget of " + std::to_string(config.budget));
  }

  struct Partial {
    std::uint64_t best = UINT64_MAX;
    std::vector<std::uint64_t> ranks;
  };
  const unsigned jobs = std::max(1u, config.jobs);
  std::vector<Partial> partials(jobs);
  auto work = [&](unsigned w) {
    const std::uint64_t span = stop - begin;
    const std::uint64_t lo = begin + span * w / jobs;
    const std::uint64_t hi = begin + span * (w + 1) / jobs;
    if (lo >= hi) return;
    GrowthCounter growth(f);
    auto combo = colex_unrank(lo, config.m);
    std::vector<Elem> elems(config.m);
    Partial& part = partials[w];
    for (std::uint64_t r = lo; r < hi; ++r) {
      for (std::size_t i = 0; i < combo.size(); ++i) elems[i] = combo[i] + offset;
      const auto [s, t] = growth(elems);
      const auto obj = std::max(s, t);
      if (obj <= part.best &&
          (!config.hypothesis_filter || check_hypothesis(ESet::of(ctx, elems)).empty())) {
        if (obj < part.best) {
          part.best = obj;
          part.ranks.clear();
        }
        part.ranks.push_back(r);
      }
      colex_next(combo, n);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }

  std::uint64_t best = UINT64_MAX;
  for (const auto& p : partials) best = std::min(best, p.best);
  std::vector<SearchRecord> out;
  for (const auto& p : partials) {
    if (p.best != best) continue;
    for (auto r : p.ranks) {
      auto combo = colex_unrank(r, config.m);
      for (auto& c : combo) c += offset;
      out.push_back(make_record(ESet::of(ctx, combo), config.with_case));
    }
  }
  return out;
}

std::vector<SearchRecord> random_scan(const FieldPtr& ctx, const SearchConfig& config) {
  const std::uint32_t n = ctx->q() - (config.exclude_zero ? 1 : 0);
  if (config.m < 1 || config.m > n) throw std::invalid_argument("invalid subset size m");
  std::vector<std::optional<SearchRecord>> slots(config.sample_count);
  const unsigned jobs = std::max(1u, config.jobs);
  auto work = [&](unsigned w) {
    for (std::uint64_t i = w; i < config.sample_count; i += jobs) {
      Rng rng(stream_seed(config.seed, 0x5ea2c4, i));
      auto rec = make_record(rng.random_set(ctx, config.m, config.exclude_zero), config.with_case);
      if (!config.hypothesis_filter || rec.hypothesis_ok) slots[i] = std::move(rec);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  std::vector<SearchRecord> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

Store Store::load(std::istream& in, const std::string& origin) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  constexpr std::string_view kHeader = "#sumset-forge v1 ";
  std::optional<Store> store;
  std::set<std::string> keys;
  while (std::getline(in, line)) {
    ++lineno;
    if (!store) {
      if (line.rfind(kHeader, 0) != 0) fail("missing '#sumset-forge v1 <field_spec>' header");
      store.emplace(line.substr(kHeader.size()));
      continue;
    }
    if (line.empty()) continue;
    if (line.rfind("#min ", 0) == 0) continue;  // footer is recomputed on write
    if (line.front() == '#') fail("unexpected comment line");
    SearchRecord rec;
    try {
      rec = SearchRecord::parse(line);
    } catch (const std::exception& e) {
      fail(e.what());
    }
    if (rec.field_spec != store->field_spec_) fail("record field '" + rec.field_spec + "' does not match header");
    if (keys.insert(rec.mask_hex).second) store->records_.push_back(std::move(rec));
  }
  if (!store) {
    lineno = 0;
    fail("empty store");
  }
  return std::move(*store);
}

Store Store::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open store '" + path + "'");
  return load(in, path);
}

void Store::merge(const std::vector<SearchRecord>& records) {
  std::set<std::string> keys;
  for (const auto& r : records_) keys.insert(r.mask_hex);
  for (const auto& r : records) {
    if (r.field_spec != field_spec_) {
      throw std::invalid_argument("record field '" + r.field_spec + "' does not match store field '" +
                                  field_spec_ + "'");
    }
    if (keys.insert(r.mask_hex).second) records_.push_back(r);
  }
}

std::optional<SearchRecord> Store::minimum() const {
  if (records_.empty()) return std::nullopt;
  return *std::min_element(records_.begin(), records_.end(), record_less);
}

void Store::write(std::ostream& out) const {
  out << "#sumset-forge v1 " << field_spec_ << '\n';
  for (const auto& r : records_) out << r.tsv() << '\n';
  if (auto best = minimum()) out << "#min " << best->objective() << ' ' << best->mask_hex << '\n';
}

void Store::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write store '" + path + "'");
  write(out);
}

std::string report(const std::vector<Store>& stores) {
  struct Row {
    std::vector<std::uint64_t> objectives;
    std::uint64_t hypothesis_ok = 0;
    std::map<std::string, std::uint64_t> tags;
  };
  std::map<std::pair<std::string, std::uint64_t>, Row> rows;
  std::map<std::string, std::set<std::string>> seen;
  for (const auto& store : stores) {
    for (const auto& r : store.records()) {
      if (!seen[r.field_spec].insert(r.mask_hex).second) continue;
      auto& row = rows[{r.field_spec, r.m}];
      row.objectives.push_back(r.objective());
      row.hypothesis_ok += r.hypothesis_ok ? 1 : 0;
      ++row.tags[r.case_tag];
    }
  }
  std::ostringstream out;
  out << "field_spec\tm\tcount\tmin_max_st\tmedian_max_st\thypothesis_ok\tcase_tags\n";
  for (auto& [key, row] : rows) {
    std::sort(row.objectives.begin(), row.objectives.end());
    const auto median = row.objectives[(row.objectives.size() - 1) / 2];
    std::string tags;
    for (const auto& [tag, count] : row.tags) {
      if (!tags.empty()) tags += ',';
      tags += tag + ":" + std::to_string(count);
    }
    out << key.first << '\t' << key.second << '\t' << row.objectives.size() << '\t'
        << row.objectives.front() << '\t' << median << '\t' << row.hypothesis_ok << '\t' << tags
        << '\n';
  }
  return out.str();
}

}  // namespace sumset_forge
