#include "slink/dataset.hpp"

#include "slink/error.hpp"

namespace slink {

const DbSchema& Dataset::schema_for(std::string_view db_id) const {
  auto it = schemas.find(db_id);
  if (it == schemas.end())
    throw ConfigError("unknown db_id '" + std::string(db_id) + "'");
  return it->second;
}

}  // namespace slink
