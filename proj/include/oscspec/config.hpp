#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oscspec/potential.hpp"
#include "oscspec/sequences.hpp"

namespace oscspec {

enum class ExperimentKind {
  spectrum_scan,
  szego_scan,
  hardy_suite,
  sharpness_search,
  coupling_scan,
  verify_inequalities,
};

const char* to_string(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> experiment_kind_from_string(const std::string& name);

/// Coefficient family as written in a config; the table file is read at run time.
struct FamilySpec {
  FamilyKind kind = FamilyKind::free;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
  double eta = 3.141592653589793;
  std::string table_path;

  CoefficientSequence to_sequence() const;
  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

struct PotentialSpec {
  PotentialKind kind = PotentialKind::table;
  double exponent = 0.0;     // beta / alpha / p
  double gamma = 0.0;
  double x0 = 1.0;
  double coefficient = 1.0;
  std::vector<std::pair<double, double>> steps;  // (start, value)

  Potential1D to_potential() const;
  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

struct GridSpec {
  std::vector<std::int64_t> sizes;
  std::vector<std::int64_t> horizons;
  std::vector<double> lambdas;
  std::vector<std::int64_t> ells;
  std::vector<double> log_Ls;
  std::vector<double> gamma_a;
  std::vector<double> gamma_b;
  std::vector<double> r_max;
  std::int64_t trials = 1000;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Every tolerance name with its default.  Configs may override any subset; unknown
/// names are rejected.
const std::map<std::string, double>& default_tolerances();

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::spectrum_scan;
  std::optional<FamilySpec> family;
  std::optional<PotentialSpec> potential;
  GridSpec grid;
  std::map<std::string, double> tolerances = default_tolerances();
  std::uint64_t seed = 0;
  std::string output_path;

  double tolerance(const std::string& name) const;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws Error{config_parse} with the offending key in the message.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize(const ExperimentConfig& config);

}  // namespace oscspec
