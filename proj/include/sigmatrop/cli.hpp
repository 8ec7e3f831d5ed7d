#pragma once

// Batch front end: a JSON job document in, a JSON result document out.
//
// Job:    {"version": 1, "command": "trop|sigma|group|dyn|h2|amoeba", "payload": {...}}
// Result: {"version": 1, "job": <echo>, "result": {...}, "provenance": {...}}
//         or {"version": 1, "job": <echo>, "error": {"kind", "message", "path"}}
//
// Exact rationals are written as "n" or "n/d" strings.  Unknown fields are
// rejected.  Exit codes: 0 success, 1 error or failed verification,
// 2 undecided content, 3 schema violation.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sigmatrop/parallel.hpp"

namespace sigmatrop::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kError = 1, kUndecided = 2, kSchema = 3 };

inline constexpr const char* kToolVersion = "1.0.0";

class SchemaError : public std::invalid_argument {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(path), message_(message) {}
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_, message_;
};

struct RunOptions {
  /// Largest certificate-search box for sigma/group jobs; the box doubles
  /// from the job's value while undecided cells remain.  0 disables.
  int bound_escalation = 0;
  Exec exec = Exec::Parallel;
};

struct RunOutcome {
  Json document;
  int exit_code = kOk;
};

RunOutcome run(const Json& job, const RunOptions& opt = {});
/// Parses the text first; malformed JSON is a schema violation.
RunOutcome run_text(std::string_view text, const RunOptions& opt = {});

/// Canonical serialization (two-space indent, trailing newline).
std::string dump(const Json& doc);

/// Writes one CSV per fan in the result (rays as unit vectors, header
/// "dir_x[,dir_y[,dir_z]]") and amoeba clouds ("s,ln_abs_y").  Returns the
/// files written.  Throws UnsupportedError for fans of rank > 3 and
/// std::invalid_argument if the document has nothing to plot.
std::vector<std::filesystem::path> emit_plot_data(const Json& result_doc, const std::filesystem::path& dir);

}  // namespace sigmatrop::cli
