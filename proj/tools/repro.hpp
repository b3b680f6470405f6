#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace compavoid::repro {

/// Malformed task file, unknown operation or unknown task id.
class ReproError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Task {
  std::string id;
  std::string op;
  std::string tier = "default";  // "default" or "full"
  /// "paper" for values quoted from the source, "derived:<oracle>" otherwise.
  std::string provenance;
  std::map<std::string, std::string> params;
  std::map<std::string, std::string> expect;  // keys without the "expect." prefix
  std::string source;                         // file:line of the id line
};

/// Parses the line-oriented format:
///
///   # comment
///   id = some-task
///   op = search.longest
///   free = 3
///   expect.max_length = 50
///
/// A task starts at each `id =` line. Blank lines and '#' lines are ignored.
std::vector<Task> parse_tasks(std::string_view text, const std::string& origin = "<input>");
std::vector<Task> load_tasks(const std::string& path);

/// Names of the supported operations.
const std::vector<std::string>& operations();

struct Result {
  std::string id;
  std::string op;
  std::string tier;
  std::string provenance;
  std::string status;  // "pass", "fail", "error", "skipped"
  std::string message;
  std::vector<std::pair<std::string, std::string>> observed;
  std::vector<std::string> witnesses;
  friend bool operator==(const Result&, const Result&) = default;
};

struct Report {
  /// Non-deterministic data (timestamp, timings, host) lives only here.
  std::map<std::string, std::string> run;
  std::vector<Result> tasks;  // failures and errors first, then passes, then skips
  bool ok() const;
  friend bool operator==(const Report&, const Report&) = default;
};

struct RunOptions {
  bool full = false;
  unsigned jobs = 1;
  unsigned threads = 1;              // worker threads inside one task
  std::vector<std::string> only;     // run just these ids (unknown id -> ReproError)
};

Result run_task(const Task& task, const RunOptions& options);
Report run_tasks(const std::vector<Task>& tasks, const RunOptions& options);

std::string emit_report(const Report& report);
Report parse_report(std::string_view json);

}  // namespace compavoid::repro
