#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <system_error>

#include "sinegap/asymptotics.hpp"
#include "sinegap/counting.hpp"
#include "sinegap/errors.hpp"
#include "sinegap/fredholm.hpp"
#include "sinegap/parallel.hpp"
#include "sinegap/partition.hpp"
#include "sinegap/weights.hpp"

namespace sinegap::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kMinOrder = 8;
constexpr int kMaxOrder = 2048;
constexpr std::size_t kMaxPmfIntervals = 3;
constexpr long long kMaxTorusPoints = 1 << 16;

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

std::string format_integer(long long value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

/// Collects every problem with a job before reporting.
class Problems {
 public:
  void add(std::string message) { messages_.push_back(std::move(message)); }
  bool empty() const noexcept { return messages_.empty(); }
  void raise() const {
    if (messages_.empty()) return;
    std::string text = "invalid job:";
    for (const auto& m : messages_) text += "\n  " + m;
    throw ValidationError(text);
  }

 private:
  std::vector<std::string> messages_;
};

bool uses_gap_mode(const JobSpec& job) { return job.p.has_value(); }

/// Gap exponents keyed on {0..m} \ {p-1, p} in ascending order.
GapExponents keyed_gap_exponents(std::size_t m, std::size_t p, const std::vector<double>& u) {
  GapExponents keyed;
  std::size_t next = 0;
  for (std::size_t j = 0; j <= m; ++j) {
    if (j + 1 == p || j == p) continue;
    if (next >= u.size()) break;
    keyed[j] = u[next++];
  }
  return keyed;
}

WeightConfiguration make_weights(const JobSpec& job, std::size_t m) {
  if (job.s) return WeightConfiguration(*job.s);
  if (uses_gap_mode(job)) return WeightConfiguration::from_gap_exponents(m, *job.p, keyed_gap_exponents(m, *job.p, *job.u));
  return WeightConfiguration::from_jump_exponents(*job.u);
}

/// The gap exponents of the asym2 / gap-mode converge jobs, whether given as --u or --s.
GapExponents gap_exponents_of(const JobSpec& job, std::size_t m) {
  if (job.u) return keyed_gap_exponents(m, *job.p, *job.u);
  return WeightConfiguration(*job.s).gap_exponents(*job.p);
}

std::vector<double> jump_exponents_of(const JobSpec& job) {
  if (job.u) return *job.u;
  return WeightConfiguration(*job.s).jump_exponents();
}

double asymptotic_log(const JobSpec& job, const IntervalPartition& x, double r) {
  if (uses_gap_mode(job)) return thm2_log(x, *job.p, gap_exponents_of(job, x.size()), r).total;
  return thm1_log(x, jump_exponents_of(job), r).total;
}

std::vector<int> broadcast_max_counts(const JobSpec& job, std::size_t m) {
  if (job.max_counts.size() == 1) return std::vector<int>(m, job.max_counts.front());
  return job.max_counts;
}

int default_grid(const std::vector<int>& max_counts) {
  int largest = 0;
  for (int k : max_counts) largest = std::max(largest, k);
  return 2 * largest + 2;
}

void check_weights(const JobSpec& job, std::size_t m, bool needs_exponents, Problems& problems) {
  const bool has_s = job.s.has_value();
  const bool has_u = job.u.has_value();
  if (has_s && has_u) {
    problems.add("--s and --u are mutually exclusive");
    return;
  }
  if (!has_s && !has_u) {
    problems.add("one of --s or --u is required");
    return;
  }
  try {
    if (has_s) {
      if (job.s->size() != m) {
        problems.add("--s needs " + std::to_string(m) + " values, one per interval");
        return;
      }
      const WeightConfiguration w(*job.s);
      if (needs_exponents) {
        if (uses_gap_mode(job)) {
          (void)w.gap_exponents(*job.p);
        } else {
          (void)w.jump_exponents();
        }
      }
    } else {
      const std::size_t expected = uses_gap_mode(job) ? m - 1 : m;
      if (job.u->size() != expected) {
        problems.add("--u needs " + std::to_string(expected) + " values" +
                     (uses_gap_mode(job) ? " (u_j for j in {0..m} \\ {p-1, p}, ascending)" : " (u_1..u_m)"));
        return;
      }
      (void)make_weights(job, m);
    }
  } catch (const DomainError& e) {
    problems.add(std::string("weights: ") + e.what());
  }
}

void check_radii(const JobSpec& job, bool range_required, bool range_allowed, Problems& problems) {
  if (job.r && job.r_range) {
    problems.add("--r and --r-range are mutually exclusive");
    return;
  }
  if (range_required && !job.r_range) {
    problems.add(std::string(command_name(job.command)) + " requires --r-range");
    return;
  }
  if (!job.r && !job.r_range) {
    problems.add("one of --r or --r-range is required");
    return;
  }
  if (job.r_range && !range_allowed) {
    problems.add(std::string(command_name(job.command)) + " takes a single --r");
    return;
  }
  if (job.r && !(std::isfinite(*job.r) && *job.r > 0.0)) problems.add("--r must be finite and > 0");
  if (job.r_range) {
    const RRange& range = *job.r_range;
    if (!(std::isfinite(range.lo) && std::isfinite(range.hi) && range.lo > 0.0 && range.lo <= range.hi)) {
      problems.add("--r-range needs 0 < lo <= hi");
    }
    if (range.count < 1) problems.add("--r-range count must be >= 1");
    if (range.count == 1 && range.lo != range.hi) problems.add("--r-range with one point needs lo == hi");
  }
}

std::vector<Cell> numbers(std::initializer_list<double> values) {
  std::vector<Cell> row;
  row.reserve(values.size());
  for (double v : values) row.emplace_back(v);
  return row;
}

Table run_fredholm(const JobSpec& job, const IntervalPartition& x) {
  const WeightConfiguration w = make_weights(job, x.size());
  const std::vector<double> rs = radii(job);
  Table table{{"r", "log_f", "arg_f", "error_estimate", "n"}, std::vector<std::vector<Cell>>(rs.size())};
  parallel_for(rs.size(), [&](std::size_t i) {
    const DeterminantResult result = fredholm_f(x, w, rs[i], job.n);
    table.rows[i] = {rs[i], result.log_f.real(), result.log_f.imag(), result.error_estimate,
                     static_cast<long long>(result.order_used)};
  });
  return table;
}

Table run_asymptotic(const JobSpec& job, const IntervalPartition& x) {
  Table table{{"r", "r_squared_term", "r_linear_term", "log_r_term", "constant_term", "total"}, {}};
  for (double r : radii(job)) {
    const ExpansionBreakdown b = job.command == Command::kAsym2
                                     ? thm2_log(x, *job.p, gap_exponents_of(job, x.size()), r)
                                     : thm1_log(x, jump_exponents_of(job), r);
    table.rows.push_back(numbers({r, b.r_squared_term, b.r_linear_term, b.log_r_term, b.constant_term, b.total}));
  }
  return table;
}

Table run_converge(const JobSpec& job, const IntervalPartition& x) {
  const WeightConfiguration w = make_weights(job, x.size());
  const std::vector<double> rs = radii(job);
  Table table{{"r", "log_F_numeric", "log_F_asym", "delta"}, std::vector<std::vector<Cell>>(rs.size())};
  parallel_for(rs.size(), [&](std::size_t i) {
    const double r = rs[i];
    const double numeric = fredholm_f(x, w, r, job.n).log_f.real();
    const double asym = asymptotic_log(job, x, r);
    table.rows[i] = numbers({r, numeric, asym, r * (numeric - asym)});
  });
  return table;
}

Table run_pmf(const JobSpec& job, const IntervalPartition& x) {
  const std::size_t m = x.size();
  const std::vector<int> k_max = broadcast_max_counts(job, m);
  const int grid = job.grid.value_or(default_grid(k_max));
  const JointPMF pmf = joint_pmf(x, *job.r, k_max, job.n, grid);

  Table table;
  table.columns.push_back("kind");
  for (std::size_t j = 1; j <= m; ++j) table.columns.push_back("k" + std::to_string(j));
  table.columns.push_back("probability");

  std::vector<int> k(m, 0);
  for (double probability : pmf.table) {
    std::vector<Cell> row{std::string("point")};
    for (int kj : k) row.emplace_back(static_cast<long long>(kj));
    row.emplace_back(probability);
    table.rows.push_back(std::move(row));
    for (std::size_t j = m; j-- > 0;) {
      if (++k[j] <= k_max[j]) break;
      k[j] = 0;
    }
  }
  std::vector<Cell> residual{std::string("residual")};
  for (std::size_t j = 0; j < m; ++j) residual.emplace_back(Null{});
  residual.emplace_back(pmf.residual_mass);
  table.rows.push_back(std::move(residual));
  return table;
}

void append_triple(Table& table, double r, const StatisticsTriple& t, const std::string& mean_name,
                   const std::string& var_name, const std::string& cov_name) {
  const std::size_t size = t.size();
  auto row = [&](const std::string& quantity, std::size_t j, std::optional<std::size_t> k, double value) {
    table.rows.push_back({r, quantity, static_cast<long long>(j),
                          k ? Cell(static_cast<long long>(*k)) : Cell(Null{}), value});
  };
  if (!mean_name.empty()) {
    for (std::size_t a = 0; a < size; ++a) row(mean_name, t.index[a], std::nullopt, t.mu[a]);
  }
  for (std::size_t a = 0; a < size; ++a) row(var_name, t.index[a], std::nullopt, t.sigma2[a]);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a + 1; b < size; ++b) row(cov_name, t.index[a], t.index[b], t.cross[a * size + b]);
  }
}

Table run_stats(const JobSpec& job, const IntervalPartition& x) {
  Table table{{"r", "quantity", "j", "k", "value"}, {}};
  for (double r : radii(job)) {
    if (job.p) {
      append_triple(table, r, conditional_stats(x, *job.p, r), "mu_hat", "sigma2_hat", "Sigma_hat");
      continue;
    }
    append_triple(table, r, counting_stats(x, r), "mu", "sigma2", "Sigma");
    if (job.numeric) {
      append_triple(table, r, var_cov_expansion(x, r), "", "predicted_var", "predicted_cov");
      append_triple(table, r, numerical_cumulants(x, r, 2, 1e-3, job.n), "numeric_mean", "numeric_var",
                    "numeric_cov");
    }
  }
  return table;
}

ordered_json cell_to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, Null>) {
          return nullptr;
        } else {
          return v;
        }
      },
      cell);
}

template <typename T>
ordered_json optional_to_json(const std::optional<T>& value) {
  if (!value) return nullptr;
  return *value;
}

ordered_json jobspec_to_json(const JobSpec& job) {
  ordered_json j;
  j["command"] = command_name(job.command);
  j["x"] = job.x;
  j["s"] = optional_to_json(job.s);
  j["u"] = optional_to_json(job.u);
  j["p"] = optional_to_json(job.p);
  j["r"] = optional_to_json(job.r);
  if (job.r_range) {
    j["r_range"] = {{"lo", job.r_range->lo}, {"hi", job.r_range->hi}, {"count", job.r_range->count}};
  } else {
    j["r_range"] = nullptr;
  }
  j["n"] = job.n;
  j["max_counts"] = job.max_counts;
  j["grid"] = optional_to_json(job.grid);
  j["numeric"] = job.numeric;
  j["format"] = job.format == Format::kCsv ? "csv" : "json";
  j["out"] = optional_to_json(job.out);
  return j;
}

double parse_number(const std::string& text, const char* what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto result = std::from_chars(first, last, value);
  if (result.ec != std::errc() || result.ptr != last) {
    throw ValidationError(std::string("cannot parse ") + what + " '" + text + "'");
  }
  return value;
}

void write_output(const JobSpec& job, const std::string& text, std::ostream& out) {
  if (!job.out) {
    out << text;
    out.flush();
    if (!out) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream file(*job.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + *job.out + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("cannot write '" + *job.out + "'");
}

struct Parser {
  CLI::App app{"Sine-process gap probabilities, Fredholm determinants and their asymptotics", "sinegap"};
  JobSpec job;
  std::vector<double> s;
  std::vector<double> u;
  std::size_t p = 0;
  double r = 0.0;
  std::string r_range;
  std::string format = "csv";
  std::string out;
  std::vector<std::pair<CLI::App*, Command>> commands;

  struct Handles {
    CLI::Option* s = nullptr;
    CLI::Option* u = nullptr;
    CLI::Option* p = nullptr;
    CLI::Option* r = nullptr;
    CLI::Option* r_range = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* grid = nullptr;
  };
  std::vector<Handles> handles;
  int grid = 0;

  Parser() {
    app.require_subcommand(1);
    add(Command::kFredholm, "log F(r x, s) by Nystrom discretisation, with error estimate", true, false);
    add(Command::kAsym1, "large-r expansion of log F with all weights positive", true, false);
    add(Command::kAsym2, "large-r expansion of log F with s_p = 0", true, false);
    add(Command::kConverge, "r * (numeric - asymptotic) over a geometric r-range", true, false);
    add(Command::kPmf, "joint distribution of the interval counts", false, true);
    add(Command::kStats, "means, variances and covariances of the counting functions", false, false);
  }

  void add(Command command, const std::string& description, bool weights, bool pmf) {
    CLI::App* sub = app.add_subcommand(command_name(command), description);
    Handles h;
    sub->add_option("--x", job.x, "endpoints x_0 < ... < x_m")->delimiter(',')->required();
    if (weights) {
      h.s = sub->add_option("--s", s, "weights s_1..s_m")->delimiter(',');
      h.u = sub->add_option("--u", u, "exponents: u_1..u_m, or u_j for j in {0..m} \\ {p-1, p} with --p")
                ->delimiter(',');
    }
    if (command != Command::kPmf) {
      h.p = sub->add_option("--p", p, "index of the zero-weight interval (1-based)");
    }
    h.r = sub->add_option("--r", r, "scale factor");
    if (command != Command::kPmf) {
      h.r_range = sub->add_option("--r-range", r_range, "geometric scan lo:hi:count");
    }
    sub->add_option("--n", job.n, "Gauss-Legendre nodes per interval")->capture_default_str();
    if (pmf) {
      sub->add_option("--max-counts", job.max_counts, "largest count per interval (one value broadcasts)")
          ->delimiter(',')
          ->required();
      h.grid = sub->add_option("--grid", grid, "torus points per dimension (default 2 max + 2)");
    }
    if (command == Command::kStats) {
      sub->add_flag("--numeric", job.numeric, "add numerical cumulants and the corrected predictions");
    }
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    h.out = sub->add_option("--out", out, "output path (default: standard output)");
    commands.emplace_back(sub, command);
    handles.push_back(h);
  }

  JobSpec finish() {
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (!commands[i].first->parsed()) continue;
      const Handles& h = handles[i];
      job.command = commands[i].second;
      if (h.s && h.s->count() > 0) job.s = s;
      if (h.u && h.u->count() > 0) job.u = u;
      if (h.p && h.p->count() > 0) job.p = p;
      if (h.r->count() > 0) job.r = r;
      if (h.r_range && h.r_range->count() > 0) job.r_range = parse_r_range(r_range);
      if (h.grid && h.grid->count() > 0) job.grid = grid;
      if (h.out->count() > 0) job.out = out;
    }
    job.format = format == "json" ? Format::kJson : Format::kCsv;
    return std::move(job);
  }
};

}  // namespace

const char* command_name(Command command) noexcept {
  switch (command) {
    case Command::kFredholm:
      return "fredholm";
    case Command::kAsym1:
      return "asym1";
    case Command::kAsym2:
      return "asym2";
    case Command::kConverge:
      return "converge";
    case Command::kPmf:
      return "pmf";
    case Command::kStats:
      return "stats";
  }
  return "unknown";
}

RRange parse_r_range(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw ValidationError("--r-range expects lo:hi:count, got '" + text + "'");
  }
  RRange range;
  range.lo = parse_number(text.substr(0, first), "r-range lo");
  range.hi = parse_number(text.substr(first + 1, second - first - 1), "r-range hi");
  const std::string count = text.substr(second + 1);
  const auto result = std::from_chars(count.data(), count.data() + count.size(), range.count);
  if (result.ec != std::errc() || result.ptr != count.data() + count.size()) {
    throw ValidationError("cannot parse r-range count '" + count + "'");
  }
  return range;
}

std::vector<double> radii(const JobSpec& job) {
  if (job.r) return {*job.r};
  if (!job.r_range) return {};
  const RRange& range = *job.r_range;
  std::vector<double> out(static_cast<std::size_t>(std::max(range.count, 0)));
  if (out.empty()) return out;
  const double ratio = std::log(range.hi / range.lo);
  const double steps = static_cast<double>(range.count - 1);
  for (int i = 0; i < range.count; ++i) {
    out[static_cast<std::size_t>(i)] = range.lo * std::exp(ratio * (steps > 0 ? i / steps : 0.0));
  }
  out.front() = range.lo;
  out.back() = range.hi;
  return out;
}

void validate(const JobSpec& job) {
  Problems problems;
  std::optional<IntervalPartition> x;
  try {
    x.emplace(job.x);
  } catch (const DomainError& e) {
    problems.add(std::string("--x: ") + e.what());
  }
  if (job.n < kMinOrder || job.n > kMaxOrder) {
    problems.add("--n must lie in [" + std::to_string(kMinOrder) + ", " + std::to_string(kMaxOrder) + "]");
  }

  const std::size_t m = x ? x->size() : 0;
  const bool p_ok = !job.p || (x && *job.p >= 1 && *job.p <= m);
  if (job.p && x && !p_ok) problems.add("--p must lie in [1, " + std::to_string(m) + "]");

  switch (job.command) {
    case Command::kFredholm:
      check_radii(job, false, true, problems);
      if (x && p_ok) check_weights(job, m, false, problems);
      if (job.p && job.s) problems.add("--p applies to --u only; with --s the zero weight is explicit");
      break;
    case Command::kAsym1:
      check_radii(job, false, true, problems);
      if (job.p) problems.add("asym1 does not take --p; use asym2");
      if (x) check_weights(job, m, true, problems);
      break;
    case Command::kAsym2:
      check_radii(job, false, true, problems);
      if (!job.p) problems.add("asym2 requires --p");
      if (x && job.p && p_ok) check_weights(job, m, true, problems);
      break;
    case Command::kConverge:
      check_radii(job, true, true, problems);
      if (x && p_ok) check_weights(job, m, true, problems);
      break;
    case Command::kPmf: {
      check_radii(job, false, false, problems);
      if (job.s || job.u || job.p) problems.add("pmf does not take --s, --u or --p");
      if (x && m > kMaxPmfIntervals) problems.add("pmf supports at most 3 intervals");
      if (x && m <= kMaxPmfIntervals) {
        if (job.max_counts.size() != 1 && job.max_counts.size() != m) {
          problems.add("--max-counts needs 1 or " + std::to_string(m) + " values");
        } else {
          const std::vector<int> k_max = broadcast_max_counts(job, m);
          bool counts_ok = true;
          for (int k : k_max) counts_ok = counts_ok && k >= 0;
          if (!counts_ok) problems.add("--max-counts must be >= 0");
          const int grid = job.grid.value_or(default_grid(k_max));
          if (counts_ok && grid < default_grid(k_max)) {
            problems.add("--grid must be >= 2 max(K) + 2 = " + std::to_string(default_grid(k_max)));
          }
          long long points = 1;
          for (std::size_t j = 0; j < m && points <= kMaxTorusPoints; ++j) points *= std::max(grid, 1);
          if (points > kMaxTorusPoints) problems.add("torus grid too large (grid^m > 65536)");
        }
      }
      break;
    }
    case Command::kStats:
      check_radii(job, false, true, problems);
      if (job.s || job.u) problems.add("stats does not take --s or --u");
      if (job.p && job.numeric) problems.add("--numeric is only available without --p");
      break;
  }
  problems.raise();
}

Table run(const JobSpec& job) {
  const IntervalPartition x(job.x);
  switch (job.command) {
    case Command::kFredholm:
      return run_fredholm(job, x);
    case Command::kAsym1:
    case Command::kAsym2:
      return run_asymptotic(job, x);
    case Command::kConverge:
      return run_converge(job, x);
    case Command::kPmf:
      return run_pmf(job, x);
    case Command::kStats:
      return run_stats(job, x);
  }
  throw ValidationError("unknown command");
}

std::string render_csv(const Table& table) {
  std::string text;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) text += ',';
    text += table.columns[c];
  }
  text += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) text += ',';
      text += std::visit(
          [](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Null>) {
              return {};
            } else if constexpr (std::is_same_v<V, double>) {
              return format_double(v);
            } else if constexpr (std::is_same_v<V, long long>) {
              return format_integer(v);
            } else {
              return v;
            }
          },
          row[c]);
    }
    text += '\n';
  }
  return text;
}

std::string render_json(const JobSpec& job, const Table& table) {
  ordered_json document;
  document["jobspec"] = jobspec_to_json(job);
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json object = ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) object[table.columns[c]] = cell_to_json(row[c]);
    rows.push_back(std::move(object));
  }
  document["rows"] = std::move(rows);
  return document.dump(2) + "\n";
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  JobSpec job;
  {
    Parser parser;
    try {
      parser.app.parse(argc, argv);
      job = parser.finish();
    } catch (const CLI::CallForHelp&) {
      out << parser.app.help();
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      std::ostringstream help;
      const int code = parser.app.exit(e, help, err);
      out << help.str();
      return code == 0 ? kExitOk : kExitValidation;
    } catch (const ValidationError& e) {
      err << "error: " << e.what() << '\n';
      return kExitValidation;
    }
  }

  try {
    validate(job);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  Table table;
  try {
    table = run(job);
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }

  try {
    write_output(job, job.format == Format::kJson ? render_json(job, table) : render_csv(table), out);
  } catch (const IoError& e) {
    err << "I/O failure: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace sinegap::cli
