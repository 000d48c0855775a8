// sumset-forge: command-line front end.
//
// Data goes to stdout, diagnostics to stderr. Exit status: 0 success,
// 1 a checked inequality failed, 2 usage or input error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sumset_forge/field.hpp"
#include "sumset_forge/garaev.hpp"
#include "sumset_forge/lemmas.hpp"
#include "sumset_forge/search.hpp"
#include "sumset_forge/setalg.hpp"
#include "sumset_forge/subfields.hpp"
#include "sumset_forge/verify_suite.hpp"

namespace sf = sumset_forge;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

sf::FieldPtr open_field(const std::string& spec) {
  if (spec.empty()) throw UsageError("a field spec is required (--field p^k[:c0,...,ck])");
  auto ctx = sf::Field::parse(spec, sf::log_table_cap_from_env());
  std::cerr << "# field " << ctx->spec() << "\n";
  return ctx;
}

sf::Rational parse_alpha(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return sf::Rational(sf::BigInt(text));
    const sf::BigInt num(text.substr(0, slash));
    const sf::BigInt den(text.substr(slash + 1));
    if (den == 0) throw UsageError("--alpha has a zero denominator");
    return sf::Rational(num, den);
  } catch (const std::runtime_error&) {
    throw UsageError("--alpha must be num/den, got '" + text + "'");
  }
}

std::string join_sizes(const std::vector<sf::SubfieldDesc>& subs) {
  std::string out;
  for (const auto& g : subs) {
    if (!out.empty()) out += ',';
    out += std::to_string(g.size());
  }
  return out;
}

// ---------------------------------------------------------------- field-info

struct FieldInfoArgs {
  std::string field;
};

int field_info(const FieldInfoArgs& args) {
  const auto ctx = sf::Field::parse(args.field, sf::log_table_cap_from_env());
  std::cout << "field\t" << ctx->spec() << "\n"
            << "p\t" << ctx->p() << "\n"
            << "k\t" << ctx->k() << "\n"
            << "q\t" << ctx->q() << "\n"
            << "modulus\t" << ctx->modulus_string() << "\n"
            << "subfields\t" << join_sizes(sf::subfields(ctx)) << "\n"
            << "log_tables\t" << (ctx->has_tables() ? 1 : 0) << "\n";
  if (ctx->has_tables()) std::cout << "generator\t" << ctx->render(ctx->generator()) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- setop

struct SetopArgs {
  std::string op;
  std::vector<std::string> operands;
  std::string field;
  std::string set;
  bool poly = false;
  bool mask = false;
};

const char* kSetopHelp =
    "sum|diff|prod|quot A B, ratio A, dilate c A, translate A d, negate A, recip A,\n"
    "energy A, collision A x, intersect-count a b A, is-subfield A";

int setop(SetopArgs args) {
  // Positional form: setop <op> <field> <operands...>.
  std::vector<std::string> rest = args.operands;
  if (args.field.empty()) {
    if (rest.empty()) throw UsageError("setop needs a field");
    args.field = rest.front();
    rest.erase(rest.begin());
  }
  if (!args.set.empty()) rest.insert(rest.begin(), args.set);
  const auto ctx = open_field(args.field);
  const sf::Field& f = *ctx;

  auto need = [&](std::size_t n) {
    if (rest.size() != n) {
      throw UsageError("setop " + args.op + " takes " + std::to_string(n) + " operand(s), got " +
                       std::to_string(rest.size()));
    }
  };
  auto set_at = [&](std::size_t i) { return sf::ESet::parse(ctx, rest.at(i)); };
  auto elem_at = [&](std::size_t i) { return f.parse_element(rest.at(i)); };
  auto print_set = [&](const sf::ESet& s) {
    std::cout << (args.mask ? "maskhex:" + s.mask_hex() : s.literal(args.poly)) << "\n";
    return kOk;
  };
  auto print_count = [](std::uint64_t n) {
    std::cout << n << "\n";
    return kOk;
  };

  const std::string& op = args.op;
  if (op == "sum" || op == "diff" || op == "prod" || op == "quot") {
    need(2);
    const auto a = set_at(0), b = set_at(1);
    if (op == "sum") return print_set(sf::sumset(a, b));
    if (op == "diff") return print_set(sf::diffset(a, b));
    if (op == "prod") return print_set(sf::productset(a, b));
    return print_set(sf::quotientset(a, b));
  }
  if (op == "ratio") {
    need(1);
    return print_set(sf::ratio_of_differences(set_at(0)));
  }
  if (op == "dilate") {
    need(2);
    return print_set(sf::dilate(elem_at(0), set_at(1)));
  }
  if (op == "translate") {
    need(2);
    return print_set(sf::translate(set_at(0), elem_at(1)));
  }
  if (op == "negate") {
    need(1);
    return print_set(sf::negate(set_at(0)));
  }
  if (op == "recip") {
    need(1);
    return print_set(sf::reciprocals(set_at(0)));
  }
  if (op == "energy") {
    need(1);
    return print_count(sf::mult_energy(set_at(0)));
  }
  if (op == "collision") {
    need(2);
    return print_count(sf::collision_energy(set_at(0), elem_at(1)));
  }
  if (op == "intersect-count") {
    need(3);
    return print_count(sf::dilate_intersection_count(elem_at(0), elem_at(1), set_at(2)));
  }
  if (op == "is-subfield") {
    need(1);
    return print_count(sf::is_subfield(set_at(0)) ? 1 : 0);
  }
  throw UsageError("unknown setop '" + op + "'; expected one of:\n" + kSetopHelp);
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::vector<std::string> fields;
  std::string suite = "all";
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> index;
  unsigned jobs = 0;
  bool quiet = false;
};

int verify(const VerifyArgs& args) {
  if (args.fields.empty()) throw UsageError("verify needs at least one --field");
  const auto suites = sf::parse_suites(args.suite);
  const unsigned jobs = args.jobs ? args.jobs : default_jobs();
  bool ok = true;
  for (const auto& spec : args.fields) {
    const auto ctx = open_field(spec);
    for (auto suite : suites) {
      const auto run = args.index ? sf::run_instance(suite, ctx, args.seed, *args.index)
                                  : sf::run_suite(suite, ctx, args.trials, args.seed, jobs);
      if (!args.quiet) {
        for (const auto& r : run.reports) std::cout << r.tsv() << "\n";
      }
      std::size_t failed = 0;
      for (const auto& r : run.reports) failed += r.holds ? 0 : 1;
      std::cerr << "# " << sf::to_string(suite) << " " << ctx->spec() << ": " << run.instances
                << " instances, " << run.reports.size() << " checks, " << failed << " failed\n";
      for (const auto& f : run.failures) std::cerr << "VIOLATION sumset-forge " << f << "\n";
      ok = ok && run.ok();
    }
  }
  return ok ? kOk : kViolation;
}

// ---------------------------------------------------------------- garaev-run

struct SetInput {
  std::string field;
  std::string set;
  std::vector<std::string> positional;

  std::pair<sf::FieldPtr, sf::ESet> resolve() const {
    std::string fs = field, ss = set;
    std::size_t next = 0;
    if (fs.empty() && next < positional.size()) fs = positional[next++];
    if (ss.empty() && next < positional.size()) ss = positional[next++];
    if (next != positional.size()) throw UsageError("unexpected extra arguments");
    if (ss.empty()) throw UsageError("a set is required (--set {..} or maskhex:..)");
    auto ctx = open_field(fs);
    return {ctx, sf::ESet::parse(ctx, ss)};
  }
};

int garaev_run(const SetInput& input) {
  const auto [ctx, a] = input.resolve();
  const auto cert = sf::run_main_theorem(a);
  std::cout << sf::format_certificate(cert, a);
  const bool checked = sf::verify_certificate(cert, a);
  const bool claim = cert.claim_holds();
  std::cerr << "# certificate " << (checked ? "verified" : "REJECTED") << ", claim "
            << (claim ? "holds" : "FAILS") << "\n";
  if (!checked || !claim) {
    std::cerr << "VIOLATION sumset-forge garaev-run --field " << ctx->spec() << " --set maskhex:"
              << a.mask_hex() << "\n";
    return kViolation;
  }
  return kOk;
}

// ---------------------------------------------------------------- hypothesis-check

int hypothesis_check(const SetInput& input, const std::string& alpha) {
  const auto [ctx, a] = input.resolve();
  const auto violations = sf::check_hypothesis(a, parse_alpha(alpha));
  std::cout << "d\tc\td_translate\tt\n";
  for (const auto& v : violations) {
    std::cout << v.degree << "\t" << v.c << "\t" << v.d << "\t" << v.t << "\n";
  }
  std::cerr << "# " << violations.size() << " affine subfield image(s) above the threshold\n";
  return kOk;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::string field;
  std::uint32_t m = 0;
  std::string mode = "exhaustive";
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  bool include_zero = false;
  bool hypothesis_filter = false;
  bool no_case = false;
  unsigned jobs = 0;
  std::string out;
  std::string resume;
  std::string range;
  std::uint64_t chunk = 1 << 16;
  std::uint64_t budget = 50'000'000;
};

std::pair<std::uint64_t, std::optional<std::uint64_t>> parse_range(const std::string& text) {
  if (text.empty()) return {0, std::nullopt};
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--range must be BEGIN:END");
  try {
    const std::uint64_t begin = std::stoull(text.substr(0, colon));
    const auto tail = text.substr(colon + 1);
    if (tail.empty()) return {begin, std::nullopt};
    return {begin, std::stoull(tail)};
  } catch (const std::logic_error&) {
    throw UsageError("--range must be BEGIN:END, got '" + text + "'");
  }
}

sf::Store open_store(const std::string& path, const std::string& spec) {
  if (!path.empty() && std::filesystem::exists(path)) {
    auto store = sf::Store::load_file(path);
    if (store.field_spec() != spec) {
      throw UsageError(path + ": store holds field " + store.field_spec() + ", not " + spec);
    }
    return store;
  }
  return sf::Store(spec);
}

std::optional<std::uint64_t> read_cursor(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string text;
  in >> text;
  if (text.empty() || text == "none") return std::nullopt;
  try {
    return std::stoull(text);
  } catch (const std::logic_error&) {
    throw UsageError(path + ": malformed resume cursor '" + text + "'");
  }
}

void write_cursor(const std::string& path, std::uint64_t last_done) {
  const auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << last_done << "\n";
  }
  std::filesystem::rename(tmp, path);
}

void print_minimizers(const std::vector<sf::SearchRecord>& records) {
  if (records.empty()) return;
  std::uint64_t best = UINT64_MAX;
  for (const auto& r : records) best = std::min(best, r.objective());
  for (const auto& r : records) {
    if (r.objective() == best) std::cout << r.tsv() << "\n";
  }
}

int search(const SearchArgs& args) {
  const auto ctx = open_field(args.field);
  sf::SearchConfig config;
  config.m = args.m;
  config.sample_count = args.trials;
  config.seed = args.seed;
  config.exclude_zero = !args.include_zero;
  config.hypothesis_filter = args.hypothesis_filter;
  config.with_case = !args.no_case;
  config.jobs = args.jobs ? args.jobs : default_jobs();
  config.budget = args.budget;
  if (args.mode == "random") {
    config.mode = sf::SearchMode::Random;
  } else if (args.mode != "exhaustive") {
    throw UsageError("--mode must be exhaustive or random");
  }
  if (!args.resume.empty() && args.out.empty()) throw UsageError("--resume requires --out");
  if (args.m == 0) throw UsageError("--m must be positive");

  sf::Store store = open_store(args.out, ctx->spec());

  if (config.mode == sf::SearchMode::Random) {
    const auto records = sf::random_scan(ctx, config);
    for (const auto& r : records) std::cout << r.tsv() << "\n";
    if (!args.out.empty()) {
      store.merge(records);
      store.write_file(args.out);
    }
    std::cerr << "# " << records.size() << " samples\n";
    return kOk;
  }

  const std::uint64_t space = sf::search_space_size(*ctx, args.m, config.exclude_zero);
  auto [begin, end_opt] = parse_range(args.range);
  const std::uint64_t end = std::min(end_opt.value_or(space), space);
  if (begin > end) throw UsageError("--range begin exceeds end");
  if (end - begin > config.budget) {
    throw UsageError("search space of " + std::to_string(end - begin) + " subsets exceeds --budget " +
                     std::to_string(config.budget));
  }

  if (args.resume.empty()) {
    const auto records = sf::exhaustive_min(ctx, config, begin, end);
    for (const auto& r : records) std::cout << r.tsv() << "\n";
    if (!args.out.empty()) {
      store.merge(records);
      store.write_file(args.out);
    }
    std::cerr << "# ranks [" << begin << ", " << end << ") of " << space << ", " << records.size()
              << " minimizer(s)\n";
    return kOk;
  }

  // Resumable run: one store write and one cursor update per chunk.
  if (const auto done = read_cursor(args.resume)) begin = std::max(begin, *done + 1);
  const std::uint64_t chunk = std::max<std::uint64_t>(1, args.chunk);
  for (std::uint64_t lo = begin; lo < end; lo += chunk) {
    const std::uint64_t hi = std::min(end, lo + chunk);
    store.merge(sf::exhaustive_min(ctx, config, lo, hi));
    store.write_file(args.out);
    write_cursor(args.resume, hi - 1);
  }
  std::vector<sf::SearchRecord> same_m;
  for (const auto& r : store.records()) {
    if (r.m == args.m) same_m.push_back(r);
  }
  print_minimizers(same_m);
  std::cerr << "# resumed ranks [" << begin << ", " << end << ") of " << space << "\n";
  return kOk;
}

// ---------------------------------------------------------------- report

int report(const std::vector<std::string>& paths) {
  std::vector<sf::Store> stores;
  for (const auto& p : paths) stores.push_back(sf::Store::load_file(p));
  std::cout << sf::report(stores);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-field sum-product laboratory"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  FieldInfoArgs fi;
  auto* fi_cmd = app.add_subcommand("field-info", "Resolved field spec, modulus and subfield sizes");
  fi_cmd->add_option("spec", fi.field, "p^k[:c0,...,ck]");
  fi_cmd->add_option("--field", fi.field, "p^k[:c0,...,ck]");

  SetopArgs so;
  auto* so_cmd = app.add_subcommand("setop", "Set operations");
  so_cmd->add_option("op", so.op, kSetopHelp)->required();
  so_cmd->add_option("operands", so.operands, "[field] sets and elements");
  so_cmd->add_option("--field", so.field);
  so_cmd->add_option("--set", so.set, "first set operand");
  so_cmd->add_flag("--poly", so.poly, "render elements as polynomials");
  so_cmd->add_flag("--mask", so.mask, "print sets as maskhex:");

  VerifyArgs va;
  auto* va_cmd = app.add_subcommand("verify", "Seeded randomized inequality suites");
  va_cmd->add_option("--field", va.fields, "repeatable");
  va_cmd->add_option("--suite", va.suite, "all or a comma list");
  va_cmd->add_option("--trials", va.trials);
  va_cmd->add_option("--seed", va.seed);
  va_cmd->add_option("--index", va.index, "replay a single instance");
  va_cmd->add_option("--jobs", va.jobs);
  va_cmd->add_flag("--quiet", va.quiet, "suppress per-check TSV");

  SetInput gr;
  auto* gr_cmd = app.add_subcommand("garaev-run", "Case analysis certificate for one set");
  gr_cmd->add_option("args", gr.positional, "[field] [set]");
  gr_cmd->add_option("--field", gr.field);
  gr_cmd->add_option("--set", gr.set);

  SetInput hc;
  std::string alpha = "47/48";
  auto* hc_cmd = app.add_subcommand("hypothesis-check", "Affine subfield images holding too much of A");
  hc_cmd->add_option("args", hc.positional, "[field] [set]");
  hc_cmd->add_option("--field", hc.field);
  hc_cmd->add_option("--set", hc.set);
  hc_cmd->add_option("--alpha", alpha, "threshold exponent num/den");

  SearchArgs sa;
  auto* sa_cmd = app.add_subcommand("search", "Extremal set search");
  sa_cmd->add_option("--field", sa.field)->required();
  sa_cmd->add_option("--m", sa.m)->required();
  sa_cmd->add_option("--mode", sa.mode, "exhaustive or random");
  sa_cmd->add_option("--trials", sa.trials, "samples in random mode");
  sa_cmd->add_option("--seed", sa.seed);
  sa_cmd->add_flag("--include-zero", sa.include_zero);
  sa_cmd->add_flag("--hypothesis-filter", sa.hypothesis_filter);
  sa_cmd->add_flag("--no-case", sa.no_case, "skip the case tag");
  sa_cmd->add_option("--jobs", sa.jobs);
  sa_cmd->add_option("--out", sa.out, "store to merge into");
  sa_cmd->add_option("--resume", sa.resume, "cursor file");
  sa_cmd->add_option("--range", sa.range, "colex ranks BEGIN:END");
  sa_cmd->add_option("--chunk", sa.chunk, "ranks per checkpoint");
  sa_cmd->add_option("--budget", sa.budget);

  std::vector<std::string> stores;
  auto* rp_cmd = app.add_subcommand("report", "Aggregate TSV over stores");
  rp_cmd->add_option("stores", stores);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*fi_cmd) return field_info(fi);
    if (*so_cmd) return setop(so);
    if (*va_cmd) return verify(va);
    if (*gr_cmd) return garaev_run(gr);
    if (*hc_cmd) return hypothesis_check(hc, alpha);
    if (*sa_cmd) return search(sa);
    if (*rp_cmd) return report(stores);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
