#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "slink/schema.hpp"

namespace slink {

/// Linked examples plus the schemas they resolve against.
struct Dataset {
  std::map<std::string, DbSchema, std::less<>> schemas;
  std::vector<LinkedExample> examples;

  const DbSchema& schema_for(std::string_view db_id) const;
};

}  // namespace slink
