#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

namespace botsig {

enum class ReportVerdict { Pass, Fail, Informational };
std::string_view to_string(ReportVerdict v);

/// Which side of the analytic bound the measured rate must fall on.
enum class BoundKind { None, AtLeast, AtMost };

/// 99% two-sided normal quantile, the default for every report.
inline constexpr double kDefaultZ = 2.576;

struct ExperimentReport {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double rate = 0.0;
  double ci_halfwidth = 0.0;
  std::optional<double> analytic_bound;
  BoundKind bound_kind = BoundKind::None;
  ReportVerdict verdict = ReportVerdict::Informational;
  /// Experiment-specific extras (parameters, auxiliary counts).
  nlohmann::json details = nlohmann::json::object();
};

/// z * sqrt(p (1 - p) / n); zero when n is zero.
double wald_halfwidth(double p, std::uint64_t n, double z);

/// Recomputes the verdict from rate, ci and bound. AtLeast passes when
/// rate + ci >= bound, AtMost when rate - ci <= bound.
void judge(ExperimentReport& r);

/// Frequency report: rate = successes / trials.
ExperimentReport proportion_report(std::string name, std::uint64_t successes,
                                   std::uint64_t trials, double z = kDefaultZ,
                                   std::optional<double> bound = std::nullopt,
                                   BoundKind kind = BoundKind::None);

/// Distinguishing advantage |2 Pr[correct] - 1| with the CI scaled to match.
/// Passes when the interval contains 0.
ExperimentReport advantage_report(std::string name, std::uint64_t correct,
                                  std::uint64_t trials, double z = kDefaultZ);

nlohmann::json to_json(const ExperimentReport& r);
std::string to_json_line(const ExperimentReport& r);
std::string format_table(std::span<const ExperimentReport> reports);

/// Smallest n with exp(-n * mean_bound * deviation^2 / 2) <= 1 - confidence,
/// and at least 1. Arguments must lie in (0, 1); deviation may equal 1.
std::uint64_t chernoff_sample_size(double deviation, double mean_bound, double confidence);

}  // namespace botsig
