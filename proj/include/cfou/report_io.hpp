#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "cfou/estimator.hpp"

namespace cfou::io {

inline constexpr const char* kToolVersion = "0.1.0";

struct Metadata {
  nlohmann::json config;
  std::uint64_t seed = 0;
  bool timestamp = true;
};

// '#'-prefixed lines: tool, config (single-line JSON), seed, timestamp.
void write_metadata(std::ostream& os, const Metadata& meta);

// Config embedded in an output file: the "# config:" line of a CSV, or the
// "config" member of a JSON report. Empty when none is found.
std::optional<nlohmann::json> read_embedded_config(std::istream& is);

// Text with every '#'-prefixed line removed.
std::string csv_body(const std::string& text);

// rep,T,re_gamma_hat,im_gamma_hat,re_scaled_err,im_scaled_err for every T block.
void write_mc_estimates_csv(std::ostream& os, const estimator::McReport& report, const DriftParam& gamma);

nlohmann::json to_json(const estimator::McReport& report);
nlohmann::json to_json(const estimator::DiagnosticsReport& diag);
nlohmann::json to_json(const estimator::CovarianceSummary& c);

// UTC time as YYYY-MM-DDTHH:MM:SSZ
std::string utc_timestamp();

}  // namespace cfou::io
