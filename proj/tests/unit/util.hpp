#pragma once

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "innerlip/error.hpp"
#include "innerlip/field.hpp"

namespace testutil {

using innerlip::cplx;

inline innerlip::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const innerlip::Error& e) {
    return e.kind();
  }
  FAIL("expected an innerlip::Error");
  return innerlip::ErrorKind::usage;
}

inline std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const innerlip::Error& e) {
    return e.what();
  }
  FAIL("expected an innerlip::Error");
  return {};
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("innerlip_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

/// sup |a - b| over samples unmasked in both, inside `where`.
inline double sup_diff(const innerlip::ComplexField& a, const innerlip::ComplexField& b,
                       const innerlip::Region& where = innerlip::region::everywhere()) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.excluded(i) || b.excluded(i) || !where(a.grid().point(i))) continue;
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace testutil
