#include "cfou/report_io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

namespace cfou::io {

namespace {

nlohmann::json matrix2(const Eigen::Matrix2d& m) {
  return nlohmann::json::array({nlohmann::json::array({m(0, 0), m(0, 1)}), nlohmann::json::array({m(1, 0), m(1, 1)})});
}

nlohmann::json complex_pair(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_metadata(std::ostream& os, const Metadata& meta) {
  os << "# tool: cfou " << kToolVersion << '\n';
  os << "# config: " << meta.config.dump() << '\n';
  os << "# seed: " << meta.seed << '\n';
  if (meta.timestamp) os << "# timestamp: " << utc_timestamp() << '\n';
}

std::optional<nlohmann::json> read_embedded_config(std::istream& is) {
  std::stringstream ss;
  ss << is.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    if (j.contains("config") && j["config"].is_object()) return j["config"];
    return j;
  }
  std::istringstream lines(text);
  std::string line;
  const std::string tag = "# config: ";
  while (std::getline(lines, line)) {
    if (line.rfind(tag, 0) != 0) continue;
    auto j = nlohmann::json::parse(line.substr(tag.size()), nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    return j;
  }
  return std::nullopt;
}

std::string csv_body(const std::string& text) {
  std::istringstream lines(text);
  std::string line, out;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] == '#') continue;
    out += line;
    out += '\n';
  }
  return out;
}

void write_mc_estimates_csv(std::ostream& os, const estimator::McReport& report, const DriftParam& gamma) {
  const auto old = os.precision(17);
  const cplx g = gamma.gamma();
  os << "rep,T,re_gamma_hat,im_gamma_hat,re_scaled_err,im_scaled_err\n";
  for (const auto& b : report.blocks) {
    const double sq = std::sqrt(b.t_end);
    for (std::size_t r = 0; r < b.estimates.size(); ++r) {
      const cplx e = b.estimates[r], s = sq * (e - g);
      os << r << ',' << b.t_end << ',' << e.real() << ',' << e.imag() << ',' << s.real() << ',' << s.imag() << '\n';
    }
  }
  os.precision(old);
}

nlohmann::json to_json(const estimator::McReport& report) {
  nlohmann::json j;
  j["n_reps"] = report.n_reps;
  j["t_end"] = report.t_end;
  nlohmann::json est = nlohmann::json::array(), se = nlohmann::json::array();
  for (const auto& e : report.estimates) est.push_back(complex_pair(e));
  for (const auto& e : report.scaled_errors) se.push_back(complex_pair(e));
  j["estimates"] = est;
  j["scaled_errors"] = se;
  j["empirical_mean"] = {report.empirical_mean[0], report.empirical_mean[1]};
  j["empirical_cov"] = matrix2(report.empirical_cov);
  j["has_target"] = report.has_target;
  if (report.has_target) {
    j["target_cov"] = matrix2(report.target_cov);
    j["target_cov_full"] = matrix2(report.target_cov_full);
  }
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& [t, m] : report.consistency_curve) curve.push_back({{"T", t}, {"mean_abs_error", m}});
  j["consistency_curve"] = curve;
  return j;
}

nlohmann::json to_json(const estimator::DiagnosticsReport& d) {
  return {{"n", d.n},
          {"skewness", {d.skewness[0], d.skewness[1]}},
          {"excess_kurtosis", {d.excess_kurtosis[0], d.excess_kurtosis[1]}},
          {"mahalanobis_mean", d.mahalanobis_mean},
          {"mahalanobis_mean_full", d.mahalanobis_mean_full},
          {"frob_rel_half", d.frob_rel_half},
          {"frob_rel_full", d.frob_rel_full},
          {"better_fit", d.better_fit}};
}

nlohmann::json to_json(const estimator::CovarianceSummary& c) {
  return {{"sigma2", c.sigma2},
          {"c", c.c},
          {"b", c.b},
          {"d", c.d},
          {"kappa", c.kappa},
          {"m_h2", c.m_h2},
          {"n_h", complex_pair(c.n_h)},
          {"matrix_c", matrix2(c.matrix_c)},
          {"limit_cov", matrix2(c.limit_cov)},
          {"limit_cov_half", matrix2(c.limit_cov_half)}};
}

}  // namespace cfou::io
