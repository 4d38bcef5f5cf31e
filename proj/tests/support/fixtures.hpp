#pragma once

#include <pomodel/io.hpp>

#include <algorithm>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#ifndef POMODEL_FIXTURE_DIR
#error "POMODEL_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace pomodel::testing {

using Ids = std::vector<std::string>;

inline io::json fixture(const std::string &name) {
  return io::read_file(std::string(POMODEL_FIXTURE_DIR) + "/" + name);
}

inline EventModel event_fixture(const std::string &name) {
  return io::event_from_json(fixture(name));
}
inline StateModel state_fixture(const std::string &name) {
  return io::state_from_json(fixture(name));
}

inline std::vector<ElementIndex> indices(const Poset &p,
                                         std::initializer_list<const char *> ids) {
  std::vector<ElementIndex> out;
  for (const char *id : ids)
    out.push_back(p.index_of(id));
  return out;
}

inline Ids sorted(Ids ids) {
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline std::set<Ids> as_set(const std::vector<Ids> &family) {
  std::set<Ids> out;
  for (const auto &ids : family)
    out.insert(sorted(ids));
  return out;
}

} // namespace pomodel::testing
