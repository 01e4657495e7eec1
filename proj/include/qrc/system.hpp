// Copyright 2026 The qrc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qrc {

/// A named tensor factor.  dim == 1 denotes the trivial system.
struct SystemLabel {
  std::string name;
  int dim = 1;

  SystemLabel() = default;
  SystemLabel(std::string n, int d) : name(std::move(n)), dim(d) {
    if (dim < 1) throw std::invalid_argument("system '" + name + "': dim must be >= 1");
  }
  bool operator==(const SystemLabel& o) const { return name == o.name && dim == o.dim; }
};

using Systems = std::vector<SystemLabel>;

inline long total_dim(const Systems& sys) {
  long d = 1;
  for (const auto& s : sys) d *= s.dim;
  return d;
}

inline int find_system(const Systems& sys, const std::string& name) {
  for (size_t i = 0; i < sys.size(); ++i)
    if (sys[i].name == name) return static_cast<int>(i);
  return -1;
}

inline int require_system(const Systems& sys, const std::string& name) {
  int i = find_system(sys, name);
  if (i < 0) throw std::invalid_argument("unknown system '" + name + "'");
  return i;
}

inline void check_unique_names(const Systems& sys) {
  for (size_t i = 0; i < sys.size(); ++i)
    for (size_t j = i + 1; j < sys.size(); ++j)
      if (sys[i].name == sys[j].name)
        throw std::invalid_argument("duplicate system name '" + sys[i].name + "'");
}

inline Systems concat(const Systems& a, const Systems& b) {
  Systems r = a;
  r.insert(r.end(), b.begin(), b.end());
  check_unique_names(r);
  return r;
}

}  // namespace qrc
