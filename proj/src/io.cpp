#include "relkit/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef RELKIT_FIXTURE_DIR
#define RELKIT_FIXTURE_DIR "data/algebras"
#endif

namespace relkit {

using nlohmann::json;

std::filesystem::path fixture_directory() {
  if (const char* env = std::getenv("RELKIT_FIXTURES"); env != nullptr && *env) {
    return env;
  }
  return RELKIT_FIXTURE_DIR;
}

FiniteAlgebra algebra_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("algebra file: ") + e.what());
  }
  try {
    const auto size = doc.at("size").get<std::size_t>();
    std::vector<Operation> ops;
    for (const json& o : doc.at("ops")) {
      Operation op;
      op.name = o.at("name").get<std::string>();
      op.arity = o.at("arity").get<int>();
      op.table = o.at("table").get<std::vector<Element>>();
      ops.push_back(std::move(op));
    }
    return FiniteAlgebra(size, std::move(ops));
  } catch (const json::exception& e) {
    throw Error(std::string("algebra file: ") + e.what());
  }
}

std::string algebra_to_json(const FiniteAlgebra& algebra) {
  json doc;
  doc["size"] = algebra.size();
  json ops = json::array();
  for (const Operation& op : algebra.operations()) {
    ops.push_back({{"name", op.name}, {"arity", op.arity}, {"table", op.table}});
  }
  doc["ops"] = std::move(ops);
  return doc.dump();
}

FiniteAlgebra load_algebra(std::string_view name_or_path) {
  std::filesystem::path path(name_or_path);
  if (!std::filesystem::exists(path)) {
    std::filesystem::path fixture = fixture_directory() / (std::string(name_or_path) + ".json");
    if (name_or_path.find('/') == std::string_view::npos && std::filesystem::exists(fixture)) {
      path = fixture;
    } else {
      throw Error("no algebra file or bundled fixture named '" + std::string(name_or_path) + "'");
    }
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return algebra_from_json(buf.str());
}

}  // namespace relkit
