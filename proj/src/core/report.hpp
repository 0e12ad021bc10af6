#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace germlab {

enum class Verdict { Satisfied, Violated, Inconclusive };

std::string to_string(Verdict v);

/// Rectangular numeric evidence with named columns; serialized as CSV and as
/// {"columns":[...],"rows":[[...]]}.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// %.17g, with "nan", "inf", "-inf" spelled out.
std::string format_number(double v);

std::string to_csv(const Table& t);
nlohmann::json table_to_json(const Table& t);

}  // namespace germlab
