#include "hampack/report.hpp"

#include "hampack/errors.hpp"
#include "hampack_schemas.hpp"

#include <algorithm>

namespace hampack {

std::string dump_report(const TrialReport& report) {
  return Json(report).dump(2) + "\n";
}

TrialReport parse_report(const std::string& text) {
  try {
    return Json::parse(text).get<TrialReport>();
  } catch (const Json::exception& e) {
    throw InvalidInputError(std::string("malformed trial report: ") + e.what());
  }
}

namespace {

bool has_type(const Json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "null") return v.is_null();
  return false;
}

void check(const Json& v, const Json& schema, const std::string& path, std::vector<std::string>& out) {
  if (auto t = schema.find("type"); t != schema.end()) {
    bool ok = false;
    if (t->is_array()) {
      for (const auto& each : *t) ok = ok || has_type(v, each.get<std::string>());
    } else {
      ok = has_type(v, t->get<std::string>());
    }
    if (!ok) {
      out.push_back(path + ": expected " + t->dump());
      return;
    }
  }
  if (auto e = schema.find("enum"); e != schema.end()) {
    if (std::find(e->begin(), e->end(), v) == e->end()) out.push_back(path + ": not one of " + e->dump());
  }
  if (auto m = schema.find("minimum"); m != schema.end() && v.is_number()) {
    if (v.get<double>() < m->get<double>()) out.push_back(path + ": below minimum " + m->dump());
  }
  if (v.is_object()) {
    if (auto r = schema.find("required"); r != schema.end()) {
      for (const auto& key : *r)
        if (!v.contains(key.get<std::string>())) out.push_back(path + ": missing '" + key.get<std::string>() + "'");
    }
    if (auto props = schema.find("properties"); props != schema.end()) {
      for (const auto& [key, sub] : props->items())
        if (auto it = v.find(key); it != v.end()) check(*it, sub, path + "/" + key, out);
    }
  }
  if (v.is_array()) {
    if (auto items = schema.find("items"); items != schema.end()) {
      for (std::size_t i = 0; i < v.size(); ++i) check(v[i], *items, path + "/" + std::to_string(i), out);
    }
  }
}

} // namespace

std::vector<std::string> validate_schema(const Json& value, const Json& schema) {
  std::vector<std::string> out;
  check(value, schema, "", out);
  return out;
}

const Json& trial_report_schema() {
  static const Json schema = Json::parse(embedded::trial_report_schema);
  return schema;
}

const Json& batch_summary_schema() {
  static const Json schema = Json::parse(embedded::batch_summary_schema);
  return schema;
}

} // namespace hampack
