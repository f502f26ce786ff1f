#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lovewave::cli {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

// Result of one command: ordered key=value sections, rendered as text or JSON.
// Timings are kept apart and only emitted on request so the default output is
// byte-identical between runs.
class RunReport {
 public:
  explicit RunReport(std::string command) : command_(std::move(command)) {}

  void input(const std::string& key, const std::string& value);
  void input(const std::string& key, double value);
  void output(const std::string& key, const std::string& value);
  void output(const std::string& key, double value);
  void output(const std::string& key, bool value);
  void output(const std::string& key, long long value);
  void warning(const std::string& text);
  void timing(const std::string& stage, double seconds);
  void error(const std::string& code, const std::string& detail);

  const std::string& command() const { return command_; }
  const std::vector<std::pair<std::string, std::string>>& outputs() const { return outputs_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::optional<std::string> find_output(const std::string& key) const;

  std::string to_text(bool with_timings) const;
  std::string to_json(bool with_timings) const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
  std::vector<std::string> warnings_;
  std::vector<std::pair<std::string, double>> timings_;
  std::optional<std::pair<std::string, std::string>> error_;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace lovewave::cli
