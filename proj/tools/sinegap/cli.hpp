#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sinegap::cli {

enum class Command { kFredholm, kAsym1, kAsym2, kConverge, kPmf, kStats };
enum class Format { kCsv, kJson };

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

/// Geometric scan lo, lo q, ..., hi with `count` points.
struct RRange {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

struct JobSpec {
  Command command = Command::kFredholm;
  std::vector<double> x;
  std::optional<std::vector<double>> s;
  /// All-positive mode: u_1..u_m. With p set: u_j for j in {0..m} \ {p-1, p}, ascending.
  std::optional<std::vector<double>> u;
  std::optional<std::size_t> p;
  std::optional<double> r;
  std::optional<RRange> r_range;
  int n = 64;
  std::vector<int> max_counts;
  std::optional<int> grid;
  bool numeric = false;
  Format format = Format::kCsv;
  std::optional<std::string> out;
};

/// Raised for inconsistent or out-of-range job specifications.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the output artifact cannot be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A missing value (empty CSV field, JSON null).
struct Null {
  friend bool operator==(Null, Null) = default;
};
using Cell = std::variant<Null, double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

const char* command_name(Command command) noexcept;

/// Parses "lo:hi:count".
RRange parse_r_range(const std::string& text);

/// The r values of a job: the single --r, or the geometric --r-range grid.
std::vector<double> radii(const JobSpec& job);

/// Checks the whole job (option consistency, partition, weights, index sets)
/// without evaluating any determinant. Throws ValidationError listing every problem.
void validate(const JobSpec& job);

/// Runs a validated job. Library DomainError / NumericalError propagate.
Table run(const JobSpec& job);

/// CSV: header row, comma separated, 17 significant digits, no locale.
std::string render_csv(const Table& table);

/// JSON: {"jobspec": {...}, "rows": [{column: value, ...}, ...]}.
std::string render_json(const JobSpec& job, const Table& table);

/// Full command-line entry point; returns the process exit code.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sinegap::cli
