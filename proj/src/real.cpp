// SPDX-License-Identifier: Apache-2.0
#include "blr/real.hpp"

#include <memory>

namespace blr {

std::string Real::str(int digits) const {
  char* s = nullptr;
  // mpfr_asprintf allocates; %.*Rg gives shortest-faithful style output.
  if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0) return "?";
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace blr
