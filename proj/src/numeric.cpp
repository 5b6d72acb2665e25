#include "essnorm/numeric.hpp"

#include <cmath>
#include <cstdio>

namespace essnorm {

std::string format12(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace essnorm
