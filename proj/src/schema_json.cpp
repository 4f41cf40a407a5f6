#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pripel/errors.hpp"
#include "pripel/xes.hpp"

namespace pripel {

using nlohmann::json;

namespace {

AttributeKind kind_from(const std::string& name, const std::string& text) {
  if (text == "numeric") return AttributeKind::Numeric;
  if (text == "categorical") return AttributeKind::Categorical;
  if (text == "boolean") return AttributeKind::Boolean;
  throw SchemaError("attribute '" + name + "': unknown kind '" + text + "'");
}

AttributeSpec spec_from(const std::string& name, const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw SchemaError("attribute '" + name + "': missing kind");
  AttributeSpec spec;
  spec.kind = kind_from(name, j.at("kind").get<std::string>());
  if (j.contains("epsilon")) spec.epsilon = j.at("epsilon").get<double>();
  switch (spec.kind) {
    case AttributeKind::Numeric:
      if (!j.contains("min") || !j.contains("max")) throw SchemaError("attribute '" + name + "': missing min/max");
      spec.min = j.at("min").get<double>();
      spec.max = j.at("max").get<double>();
      if (j.contains("sensitivity")) spec.sensitivity = j.at("sensitivity").get<double>();
      break;
    case AttributeKind::Categorical:
      if (!j.contains("categories")) throw SchemaError("attribute '" + name + "': missing categories");
      spec.categories = j.at("categories").get<std::vector<std::string>>();
      if (j.contains("utility")) spec.utility = j.at("utility").get<std::vector<std::vector<double>>>();
      break;
    case AttributeKind::Boolean:
      break;
  }
  spec.validate(name);
  return spec;
}

}  // namespace

AttributeSchema parse_schema_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; recover line and column from it.
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
  try {
    AttributeSchema schema;
    if (!doc.is_object() || !doc.contains("attributes") || !doc.at("attributes").is_object()) {
      throw SchemaError("schema file needs an \"attributes\" object");
    }
    for (const auto& [name, body] : doc.at("attributes").items()) schema.emplace(name, spec_from(name, body));
    return schema;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("schema file: ") + e.what());
  }
}

AttributeSchema read_schema_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schema_json(buf.str());
}

std::string schema_to_json(const AttributeSchema& schema) {
  json attrs = json::object();
  for (const auto& [name, spec] : schema) {
    json j;
    j["kind"] = to_string(spec.kind);
    if (spec.epsilon) j["epsilon"] = *spec.epsilon;
    if (spec.kind == AttributeKind::Numeric) {
      j["min"] = spec.min;
      j["max"] = spec.max;
      if (spec.sensitivity) j["sensitivity"] = *spec.sensitivity;
    } else if (spec.kind == AttributeKind::Categorical) {
      j["categories"] = spec.categories;
      if (spec.utility) j["utility"] = *spec.utility;
    }
    attrs[name] = std::move(j);
  }
  return json{{"attributes", attrs}}.dump(2);
}

}  // namespace pripel
