#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "entfluc/config.hpp"

namespace entfluc {

enum class ExperimentId {
  AkltDSweep,
  KitaevMuSweep,
  XxzScaling,
  Ti1dMSweep,
  ChernAreaLaw,
  MetalLogVolume,
  CountingDemo,
};

std::string to_string(ExperimentId id);
ExperimentId parse_experiment_id(const std::string& name);

struct ExperimentInfo {
  ExperimentId id;
  std::string name;
  std::string description;
};

const std::vector<ExperimentInfo>& list_experiments();

/// Validated experiment settings. `params` holds every model parameter with
/// defaults filled in, so the CSV header records the complete run.
struct ExperimentConfig {
  ExperimentId id = ExperimentId::CountingDemo;
  KeyValueConfig params;
  std::string output;
  std::uint64_t seed = 0;
  bool large = false;
  int threads = 0;  // 0: hardware concurrency

  /// Builds from a parsed file; fills defaults, rejects unknown keys and
  /// sizes above the desk-scale budget unless `large` is set.
  static ExperimentConfig from_config(const KeyValueConfig& raw, bool force_large = false);
};

using Cell = std::variant<double, std::string>;

struct SweepRow {
  std::vector<Cell> cells;  // one per SweepResult::columns entry
  std::string error;        // empty when the point succeeded
};

/// One row per grid point, sorted by grid order.
struct SweepResult {
  ExperimentId id = ExperimentId::CountingDemo;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
  std::vector<std::string> notes;  // extra header lines (fits, reference factors)

  bool all_succeeded() const;
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  std::string text(std::size_t row, const std::string& name) const;
};

SweepResult run_experiment(const ExperimentConfig& cfg);

/// CSV with a '#' header block (code version, full config, notes), then
/// the column header (plus a trailing `error` column) and one line per row.
void write_csv(std::ostream& out, const SweepResult& result, const ExperimentConfig& cfg);

/// Reads a CSV written by write_csv. Rows with a non-empty error cell are
/// kept with their error string set.
struct CsvTable {
  std::vector<std::string> header_comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  /// (x, y) pairs from two numeric columns, skipping failed rows.
  std::vector<std::pair<double, double>> series(const std::string& x, const std::string& y) const;
};

CsvTable read_csv(std::istream& in);

std::string code_version();

}  // namespace entfluc
