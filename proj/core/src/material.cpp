#include "lovewave/material.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "lovewave/error.hpp"

namespace lovewave {
namespace {

constexpr std::array<std::string_view, 8> kKeys = {
    "mu_e", "mu_c", "lambda_e", "a1", "a2", "a3", "J", "rho"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\f\v");
  return s.substr(first, last - first + 1);
}

double* field(MaterialParams& p, std::string_view key) {
  if (key == "mu_e") return &p.mu_e;
  if (key == "mu_c") return &p.mu_c;
  if (key == "lambda_e") return &p.lambda_e;
  if (key == "a1") return &p.a1;
  if (key == "a2") return &p.a2;
  if (key == "a3") return &p.a3;
  if (key == "J") return &p.J;
  if (key == "rho") return &p.rho;
  return nullptr;
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

ConditionRow row(std::string name, double margin, double tolerance) {
  return ConditionRow{std::move(name), margin, margin > tolerance};
}

ConditionReport finish(std::vector<ConditionRow> rows) {
  ConditionReport report;
  report.overall = true;
  for (const auto& r : rows) report.overall = report.overall && r.pass;
  report.rows = std::move(rows);
  return report;
}

}  // namespace

WaveContext make_wave_context(const MaterialParams& params, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::DomainViolation,
                "wave number must be positive and finite, got " + format_double(k));
  }
  return WaveContext{k, params};
}

const ConditionRow* ConditionReport::find(std::string_view name) const {
  for (const auto& r : rows) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

MaterialParams parse_material(std::string_view text) {
  std::map<std::string, std::string, std::less<>> raw;
  std::vector<std::string> unknown;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::Syntax,
                  "line " + std::to_string(line_no) + ": expected `key = value`");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": empty key");
    }

    MaterialParams probe;
    if (field(probe, key) == nullptr) {
      unknown.push_back(key);
      continue;
    }
    if (!raw.emplace(key, value).second) throw Error(ErrorCode::Duplicate, key);
  }

  if (!unknown.empty()) {
    std::string list;
    for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
    throw Error(ErrorCode::UnknownKey, list);
  }

  MaterialParams params;
  for (const auto key : kKeys) {
    const auto it = raw.find(key);
    if (it == raw.end()) {
      if (key == "lambda_e") continue;
      throw Error(ErrorCode::MissingKey, std::string(key));
    }
    const auto value = parse_number(it->second);
    if (!value) {
      throw Error(ErrorCode::Syntax, std::string(key) + ": not a number: " + it->second);
    }
    if (!std::isfinite(*value)) throw Error(ErrorCode::NonFinite, std::string(key));
    *field(params, key) = *value;
  }
  return params;
}

std::string serialize_material(const MaterialParams& params) {
  std::string out;
  MaterialParams copy = params;
  for (const auto key : kKeys) {
    out += std::string(key) + " = " + format_double(*field(copy, key)) + "\n";
  }
  return out;
}

MaterialParams read_material_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open material file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_material(buffer.str());
}

ConditionReport validate_wave_conditions(const MaterialParams& p, double tolerance) {
  return finish({
      row("mu_e > 0", p.mu_e, tolerance),
      row("mu_c > 0", p.mu_c, tolerance),
      row("a1+a2 > 0", p.a1 + p.a2, tolerance),
      row("2*a1+a3 > 0", 2.0 * p.a1 + p.a3, tolerance),
  });
}

ConditionReport check_positive_definiteness(const MaterialParams& p, double tolerance) {
  // The alpha inequalities share the positive factor mu_e L_c^2 with a_i.
  return finish({
      row("mu_e > 0", p.mu_e, tolerance),
      row("mu_c > 0", p.mu_c, tolerance),
      row("2*mu_e+3*lambda_e > 0", 2.0 * p.mu_e + 3.0 * p.lambda_e, tolerance),
      row("a1 > 0", p.a1, tolerance),
      row("a2 > 0", p.a2, tolerance),
      row("2*a1+3*a3 > 0", 2.0 * p.a1 + 3.0 * p.a3, tolerance),
  });
}

void require_wave_conditions(const MaterialParams& params) {
  if (!(params.rho > 0.0) || !(params.J > 0.0)) {
    throw Error(ErrorCode::InvalidMaterial, "rho and J must be positive");
  }
  const auto report = validate_wave_conditions(params);
  for (const auto& r : report.rows) {
    if (!r.pass) throw Error(ErrorCode::InvalidMaterial, "violates " + r.name);
  }
}

}  // namespace lovewave
