#include "lovewave_cli/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace lovewave::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void RunReport::input(const std::string& key, const std::string& value) {
  inputs_.emplace_back(key, value);
}
void RunReport::input(const std::string& key, double value) { input(key, format_double(value)); }

void RunReport::output(const std::string& key, const std::string& value) {
  outputs_.emplace_back(key, value);
}
void RunReport::output(const std::string& key, double value) { output(key, format_double(value)); }
void RunReport::output(const std::string& key, bool value) {
  output(key, std::string(value ? "true" : "false"));
}
void RunReport::output(const std::string& key, long long value) {
  output(key, std::to_string(value));
}

void RunReport::warning(const std::string& text) { warnings_.push_back(text); }
void RunReport::timing(const std::string& stage, double seconds) {
  timings_.emplace_back(stage, seconds);
}
void RunReport::error(const std::string& code, const std::string& detail) {
  error_.emplace(code, detail);
}

std::optional<std::string> RunReport::find_output(const std::string& key) const {
  for (const auto& [k, v] : outputs_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string RunReport::to_text(bool with_timings) const {
  std::ostringstream os;
  os << "command=" << command_ << '\n';
  for (const auto& [k, v] : inputs_) os << "input." << k << '=' << v << '\n';
  for (const auto& [k, v] : outputs_) os << k << '=' << v << '\n';
  for (const auto& w : warnings_) os << "warning=" << w << '\n';
  if (error_) os << "error=" << error_->first << ": " << error_->second << '\n';
  if (with_timings) {
    for (const auto& [k, v] : timings_) os << "timing." << k << '=' << format_double(v) << '\n';
  }
  return os.str();
}

std::string RunReport::to_json(bool with_timings) const {
  nlohmann::ordered_json doc;
  doc["command"] = command_;
  doc["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : inputs_) doc["inputs"][k] = v;
  doc["outputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : outputs_) doc["outputs"][k] = v;
  doc["warnings"] = warnings_;
  if (error_) doc["error"] = {{"code", error_->first}, {"detail", error_->second}};
  if (with_timings) {
    doc["timings"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : timings_) doc["timings"][k] = v;
  }
  return doc.dump(2) + "\n";
}

}  // namespace lovewave::cli
