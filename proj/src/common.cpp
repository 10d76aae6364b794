#include "relkit/common.hpp"

#include <charconv>
#include <cstdlib>

namespace relkit {

namespace {

std::size_t parse_count(std::string_view key, std::string_view value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || out == 0) {
    throw Error("caps: bad value for '" + std::string(key) + "': '" +
                std::string(value) + "'");
  }
  return out;
}

}  // namespace

Caps Caps::from_env() {
  Caps caps;
  if (const char* env = std::getenv("RELKIT_CAPS"); env != nullptr) {
    caps.apply(env);
  }
  return caps;
}

void Caps::apply(std::string_view overrides) {
  while (!overrides.empty()) {
    std::size_t comma = overrides.find(',');
    std::string_view item = overrides.substr(0, comma);
    overrides = comma == std::string_view::npos ? std::string_view{}
                                                : overrides.substr(comma + 1);
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error("caps: expected key=value, got '" + std::string(item) + "'");
    }
    std::string_view key = item.substr(0, eq);
    std::size_t value = parse_count(key, item.substr(eq + 1));
    if (key == "universe") {
      universe = value;
    } else if (key == "table_entries" || key == "table") {
      table_entries = value;
    } else if (key == "clone3") {
      clone3 = value;
    } else if (key == "clone4") {
      clone4 = value;
    } else if (key == "exhaustive_threshold" || key == "threshold") {
      exhaustive_threshold = value;
    } else if (key == "seed_size" || key == "seed") {
      seed_size = value;
    } else if (key == "u_components" || key == "ucomp") {
      u_components = value;
    } else if (key == "candidates") {
      candidates = value;
    } else if (key == "assignments") {
      assignments = value;
    } else {
      throw Error("caps: unknown key '" + std::string(key) + "'");
    }
  }
}

}  // namespace relkit
