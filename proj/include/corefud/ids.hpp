#pragma once

// Cluster id helpers. Ids have the shape "e" + positive integer; the
// canonical form has no leading zeros and ids run densely from e1.

#include <optional>
#include <string_view>

#include "corefud/strings.hpp"

namespace corefud {

inline std::optional<long long> cluster_numeric(std::string_view id) {
  if (id.size() < 2 || id[0] != 'e') return std::nullopt;
  return parse_digits(id.substr(1));
}

inline bool cluster_id_well_formed(std::string_view id) {
  return cluster_numeric(id).has_value();
}

inline bool cluster_id_canonical_shape(std::string_view id) {
  if (id.size() < 2 || id[0] != 'e' || id[1] == '0') return false;
  return parse_digits(id.substr(1)).has_value();
}

}  // namespace corefud
