#pragma once

#include <string>

#include "doa/poly_field.hpp"
#include "doa/system_parser.hpp"

namespace doa::test {

inline std::string system_path(int example) {
  return std::string(DOA_SYSTEMS_DIR) + "/example" + std::to_string(example) +
         ".sys";
}

inline PolyField load_example(int example) {
  return load_system(system_path(example));
}

}  // namespace doa::test
