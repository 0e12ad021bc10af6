#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace germlab {

/// Closed-form tail of a sequence germ. Values are carried in long double so
/// that super-exponentially small families stay representable at desk
/// horizons; `log_value` covers what still underflows.
struct SequenceRule {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  std::function<long double(std::int64_t)> value;
  std::function<long double(std::int64_t)> log_value;
  /// Last index the rule defines, when the family is finite.
  std::optional<std::int64_t> length;
};

/// Strictly decreasing positive sequence a_1, a_2, ... given by an explicit
/// prefix and an optional rule for the remaining indices.
class SequenceGerm {
 public:
  SequenceGerm(std::vector<double> prefix, std::optional<SequenceRule> rule);

  const std::vector<double>& prefix() const { return prefix_; }
  const std::optional<SequenceRule>& rule() const { return rule_; }

  /// a_m for 1-based m.
  long double at(std::int64_t m) const;
  long double log_at(std::int64_t m) const;

  /// Number of defined terms; empty means unbounded.
  std::optional<std::int64_t> length() const;
  /// min(horizon, length).
  std::int64_t available(std::int64_t horizon) const;

  /// a_m / a_{m+1}, falling back to the log evaluator when a value underflows.
  long double ratio(std::int64_t m) const;

 private:
  std::vector<double> prefix_;
  std::optional<SequenceRule> rule_;
};

/// Named families: harmonic, log_ratio, power_sqrt, geometric{q},
/// pb_not_ssp{i_max}, power{shift, exponent}, and the combinators
/// sum{a, b} / product{a, b} over nested sequence documents.
SequenceRule make_sequence_rule(const std::string& name, const nlohmann::json& params,
                                const std::string& path = "$.rule.params");
SequenceGerm gen_sequence(const std::string& name, const nlohmann::json& params = nlohmann::json::object());

SequenceGerm seq_sum(const SequenceGerm& a, const SequenceGerm& b);
SequenceGerm seq_product(const SequenceGerm& a, const SequenceGerm& b);

/// Index m_i = i^i of the PB-not-SSP construction; throws on overflow.
std::int64_t pb_block_start(int i);

nlohmann::json sequence_to_json(const SequenceGerm& a);
SequenceGerm sequence_from_json(const nlohmann::json& j, const std::string& path = "");

}  // namespace germlab
