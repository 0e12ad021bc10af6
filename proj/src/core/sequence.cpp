#include "core/sequence.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <memory>

#include "core/error.hpp"
#include "core/json_util.hpp"

namespace germlab {

using nlohmann::json;

SequenceGerm::SequenceGerm(std::vector<double> prefix, std::optional<SequenceRule> rule)
    : prefix_(std::move(prefix)), rule_(std::move(rule)) {
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (!(prefix_[i] > 0.0) || !std::isfinite(prefix_[i]))
      fail(ErrorCode::InvalidArgument, "sequence prefix entry " + std::to_string(i + 1) + " is not a positive real");
    if (i > 0 && !(prefix_[i] < prefix_[i - 1]))
      fail(ErrorCode::InvalidArgument, "sequence prefix is not strictly decreasing at index " + std::to_string(i + 1));
  }
  if (prefix_.empty() && !rule_) fail(ErrorCode::InvalidArgument, "sequence needs a prefix or a rule");
  if (rule_ && (!rule_->value || !rule_->log_value)) fail(ErrorCode::InvalidArgument, "sequence rule lacks evaluators");
  if (rule_ && rule_->length && *rule_->length <= static_cast<std::int64_t>(prefix_.size()))
    fail(ErrorCode::InvalidArgument, "sequence rule ends inside the prefix");
  const auto p = static_cast<std::int64_t>(prefix_.size());
  if (rule_ && p > 0 && !(rule_->value(p + 1) < static_cast<long double>(prefix_.back())))
    fail(ErrorCode::InvalidArgument, "sequence rule does not continue the prefix decreasingly");
}

std::optional<std::int64_t> SequenceGerm::length() const {
  if (!rule_) return static_cast<std::int64_t>(prefix_.size());
  return rule_->length;
}

std::int64_t SequenceGerm::available(std::int64_t horizon) const {
  const auto len = length();
  return len ? std::min(horizon, *len) : horizon;
}

long double SequenceGerm::at(std::int64_t m) const {
  if (m < 1) fail(ErrorCode::InvalidArgument, "sequence indices start at 1");
  if (m <= static_cast<std::int64_t>(prefix_.size())) return prefix_[static_cast<std::size_t>(m - 1)];
  const auto len = length();
  if (len && m > *len) fail(ErrorCode::InvalidArgument, "sequence index " + std::to_string(m) + " beyond its length");
  return rule_->value(m);
}

long double SequenceGerm::log_at(std::int64_t m) const {
  if (m >= 1 && m <= static_cast<std::int64_t>(prefix_.size()))
    return std::log(static_cast<long double>(prefix_[static_cast<std::size_t>(m - 1)]));
  (void)at(m);  // range check
  return rule_->log_value(m);
}

long double SequenceGerm::ratio(std::int64_t m) const {
  const long double a = at(m);
  const long double b = at(m + 1);
  if (a >= LDBL_MIN && b >= LDBL_MIN) return a / b;
  return std::exp(log_at(m) - log_at(m + 1));
}

std::int64_t pb_block_start(int i) {
  if (i < 1) fail(ErrorCode::InvalidArgument, "pb_not_ssp: block index must be positive");
  std::int64_t m = 1;
  for (int k = 0; k < i; ++k) {
    if (m > std::numeric_limits<std::int64_t>::max() / i)
      fail(ErrorCode::InvalidArgument, "pb_not_ssp: i^i overflows at i = " + std::to_string(i));
    m *= i;
  }
  return m;
}

namespace {

long double log_add(long double x, long double y) {
  const long double hi = std::max(x, y), lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

SequenceRule pb_not_ssp_rule(int i_max) {
  if (i_max < 3 || i_max > 6) fail(ErrorCode::InvalidArgument, "pb_not_ssp: i_max must lie in [3, 6]");
  auto starts = std::make_shared<std::vector<std::int64_t>>();
  for (int i = 3; i <= i_max; ++i) starts->push_back(pb_block_start(i));
  const std::int64_t head_end = starts->front();
  const std::int64_t last = starts->back();
  // Below m_3 = 27 the sandwich 1/m^2 <= a_m < 1/m is met by m^{-3/2}.
  auto log_value = [starts, head_end, last](std::int64_t m) -> long double {
    const long double lm = std::log(static_cast<long double>(m));
    if (m < head_end) return -1.5L * lm;
    if (m == last) return -2.0L * lm;
    std::size_t b = 0;
    while (b + 1 < starts->size() && (*starts)[b + 1] <= m) ++b;
    const long double mi = static_cast<long double>((*starts)[b]);
    const long double la = -2.0L * std::log(mi);
    const long double lb = -std::log(mi * mi + mi);
    const long double span = static_cast<long double>((*starts)[b + 1] - 1 - (*starts)[b]);
    const long double t = static_cast<long double>(m - (*starts)[b]) / span;
    return la + t * (lb - la);
  };
  auto value = [starts, head_end, log_value](std::int64_t m) -> long double {
    const long double lm = static_cast<long double>(m);
    if (m < head_end) return 1.0L / (lm * std::sqrt(lm));
    for (std::size_t b = 0; b < starts->size(); ++b) {
      const long double mi = static_cast<long double>((*starts)[b]);
      if (m == (*starts)[b]) return 1.0L / (mi * mi);
      if (b + 1 < starts->size() && m == (*starts)[b + 1] - 1) return 1.0L / (mi * mi + mi);
    }
    return std::exp(log_value(m));
  };
  SequenceRule r;
  r.name = "pb_not_ssp";
  r.params = json{{"i_max", i_max}};
  r.value = value;
  r.log_value = log_value;
  r.length = last;
  return r;
}

SequenceRule combine(const std::string& name, const SequenceGerm& a, const SequenceGerm& b) {
  auto pa = std::make_shared<const SequenceGerm>(a);
  auto pb = std::make_shared<const SequenceGerm>(b);
  SequenceRule r;
  r.name = name;
  r.params = json{{"a", sequence_to_json(a)}, {"b", sequence_to_json(b)}};
  if (name == "sum") {
    r.value = [pa, pb](std::int64_t m) { return pa->at(m) + pb->at(m); };
    r.log_value = [pa, pb](std::int64_t m) { return log_add(pa->log_at(m), pb->log_at(m)); };
  } else {
    r.value = [pa, pb](std::int64_t m) { return pa->at(m) * pb->at(m); };
    r.log_value = [pa, pb](std::int64_t m) { return pa->log_at(m) + pb->log_at(m); };
  }
  const auto la = a.length(), lb = b.length();
  if (la && lb)
    r.length = std::min(*la, *lb);
  else if (la)
    r.length = la;
  else if (lb)
    r.length = lb;
  return r;
}

}  // namespace

SequenceRule make_sequence_rule(const std::string& name, const json& params, const std::string& path) {
  SequenceRule r;
  r.name = name;
  if (name == "harmonic" || name == "log_ratio" || name == "power_sqrt") {
    jsonu::expect_object(params, path, {});
    if (name == "harmonic") {
      r.value = [](std::int64_t m) { return 1.0L / static_cast<long double>(m); };
      r.log_value = [](std::int64_t m) { return -std::log(static_cast<long double>(m)); };
    } else if (name == "log_ratio") {
      r.value = [](std::int64_t m) { return std::log1p(1.0L / static_cast<long double>(m)); };
      r.log_value = [](std::int64_t m) { return std::log(std::log1p(1.0L / static_cast<long double>(m))); };
    } else {
      r.log_value = [](std::int64_t m) {
        const long double lm = static_cast<long double>(m);
        return -std::sqrt(lm) * std::log(lm);
      };
      r.value = [lv = r.log_value](std::int64_t m) { return std::exp(lv(m)); };
    }
    r.params = json::object();
    return r;
  }
  if (name == "geometric") {
    jsonu::expect_object(params, path, {"q"});
    const double q = jsonu::number(params, path, "q");
    if (!(q > 0.0 && q < 1.0)) fail(ErrorCode::InvalidArgument, "geometric: q must lie in (0,1)");
    const long double lq = std::log(static_cast<long double>(q));
    r.value = [q](std::int64_t m) { return std::pow(static_cast<long double>(q), static_cast<long double>(m)); };
    r.log_value = [lq](std::int64_t m) { return lq * static_cast<long double>(m); };
    r.params = json{{"q", q}};
    return r;
  }
  if (name == "power") {
    jsonu::expect_object(params, path, {"shift", "exponent"});
    const double shift = jsonu::number_or(params, path, "shift", 0.0);
    const double e = jsonu::number(params, path, "exponent");
    if (!(shift >= 0.0) || !(e > 0.0)) fail(ErrorCode::InvalidArgument, "power: need shift >= 0 and exponent > 0");
    r.value = [shift, e](std::int64_t m) {
      return std::pow(static_cast<long double>(m) + shift, -static_cast<long double>(e));
    };
    r.log_value = [shift, e](std::int64_t m) {
      return -static_cast<long double>(e) * std::log(static_cast<long double>(m) + shift);
    };
    r.params = json{{"shift", shift}, {"exponent", e}};
    return r;
  }
  if (name == "pb_not_ssp") {
    jsonu::expect_object(params, path, {"i_max"});
    const auto i_max = jsonu::integer_or(params, path, "i_max", 5);
    if (i_max < 3 || i_max > 6) fail(ErrorCode::InvalidArgument, "pb_not_ssp: i_max must lie in [3, 6]");
    return pb_not_ssp_rule(static_cast<int>(i_max));
  }
  if (name == "sum" || name == "product") {
    jsonu::expect_object(params, path, {"a", "b"});
    const SequenceGerm a = sequence_from_json(jsonu::field(params, path, "a"), jsonu::child(path, "a"));
    const SequenceGerm b = sequence_from_json(jsonu::field(params, path, "b"), jsonu::child(path, "b"));
    return combine(name, a, b);
  }
  fail(ErrorCode::InvalidArgument, "unknown sequence family '" + name + "'");
}

SequenceGerm gen_sequence(const std::string& name, const json& params) {
  return SequenceGerm({}, make_sequence_rule(name, params));
}

namespace {

SequenceGerm combine_germs(const std::string& name, const SequenceGerm& a, const SequenceGerm& b) {
  if (!a.rule() && !b.rule() && a.prefix().size() != b.prefix().size())
    fail(ErrorCode::InvalidArgument, name + ": prefix-only sequences have different horizons");
  return SequenceGerm({}, combine(name, a, b));
}

}  // namespace

SequenceGerm seq_sum(const SequenceGerm& a, const SequenceGerm& b) { return combine_germs("sum", a, b); }
SequenceGerm seq_product(const SequenceGerm& a, const SequenceGerm& b) { return combine_germs("product", a, b); }

json sequence_to_json(const SequenceGerm& a) {
  json j;
  j["prefix"] = a.prefix();
  if (a.rule())
    j["rule"] = json{{"name", a.rule()->name}, {"params", a.rule()->params}};
  else
    j["rule"] = "none";
  return j;
}

SequenceGerm sequence_from_json(const json& j, const std::string& path) {
  jsonu::expect_object(j, path, {"prefix", "rule"});
  std::vector<double> prefix;
  if (j.contains("prefix")) prefix = jsonu::as_numbers(j.at("prefix"), jsonu::child(path, "prefix"));
  std::optional<SequenceRule> rule;
  if (j.contains("rule")) {
    const json& r = j.at("rule");
    const std::string rp = jsonu::child(path, "rule");
    if (r.is_string()) {
      if (r.get<std::string>() != "none") jsonu::schema_error(rp, "expected an object or \"none\"");
    } else {
      jsonu::expect_object(r, rp, {"name", "params"});
      const std::string name = jsonu::string(r, rp, "name");
      const json params = r.contains("params") ? r.at("params") : json::object();
      rule = make_sequence_rule(name, params, jsonu::child(rp, "params"));
    }
  }
  return SequenceGerm(std::move(prefix), std::move(rule));
}

}  // namespace germlab
