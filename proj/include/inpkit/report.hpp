#pragma once

// Named demos reproducing each construction, and their reports.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace inpkit::report {

inline constexpr const char* kSchemaVersion = "inpkit.report/1";

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct WitnessTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string scenario;
  std::string anchor;
  nlohmann::json inputs = nlohmann::json::object();
  std::string result;
  std::vector<Check> checks;
  WitnessTable witnesses;
  nlohmann::json certificates = nlohmann::json::object();
  double elapsed_ms = 0;

  bool passed() const;
};

struct DemoOptions {
  std::optional<long> depth;
  std::optional<long> cols;
  std::optional<long> bound;
  std::optional<std::uint64_t> cap;
  std::uint64_t seed = 1;
};

class UnknownDemo : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidOption : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& demo_names();

/// Stable anchor string per demo, naming the construction it reproduces.
const std::map<std::string, std::string>& anchor_registry();

/// Runs the named demo. Throws UnknownDemo or InvalidOption.
Report run_demo(const std::string& name, const DemoOptions& options);

enum class Format { Table, Json };

/// Deterministic rendering; the elapsed time is only included on request.
std::string emit(const Report& r, Format format, bool include_timing = false);

nlohmann::json to_json(const Report& r, bool include_timing = false);
Report from_json(const nlohmann::json& j);

}  // namespace inpkit::report
