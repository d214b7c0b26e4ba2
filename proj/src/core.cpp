#include "ehp/core.hpp"

#include <cstdio>

namespace ehp {

std::string Forcing::describe() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        char buf[96];
        if constexpr (std::is_same_v<T, Zero>) {
          return "0";
        } else if constexpr (std::is_same_v<T, Constant>) {
          std::snprintf(buf, sizeof buf, "%g", f.value);
          return buf;
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          if (f.phase == 0.0) {
            std::snprintf(buf, sizeof buf, "%g*cos(%g*t)", f.amplitude,
                          f.omega);
          } else {
            std::snprintf(buf, sizeof buf, "%g*cos(%g*t%+g)", f.amplitude,
                          f.omega, f.phase);
          }
          return buf;
        } else {
          return "custom";
        }
      },
      kind_);
}

}  // namespace ehp
