// Copyright 2026 The PSV Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string>

#include "psv/errors.hpp"
#include "psv/kernels.hpp"

namespace psv::kernels {

#ifdef PSV_HAVE_AVX2
namespace avx2 {
extern const KernelTable kTable;
}
#endif

namespace {

bool cpu_has_avx2() {
#if defined(PSV_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable *initial_table() {
  const char *env = std::getenv("PSV_KERNELS");
  const Backend wanted = env ? parse_backend(env) : Backend::Auto;
  if (wanted == Backend::Scalar) return &scalar_table();
  if (const KernelTable *t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable *> &current() {
  static std::atomic<const KernelTable *> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable *avx2_table() {
#ifdef PSV_HAVE_AVX2
  static const bool ok = cpu_has_avx2();
  return ok ? &avx2::kTable : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable &active() { return *current().load(std::memory_order_acquire); }

bool select(Backend backend) {
  const KernelTable *t = nullptr;
  switch (backend) {
    case Backend::Scalar: t = &scalar_table(); break;
    case Backend::Avx2: t = avx2_table(); break;
    case Backend::Auto:
      t = avx2_table() ? avx2_table() : &scalar_table();
      break;
  }
  if (!t) return false;
  current().store(t, std::memory_order_release);
  return true;
}

Backend parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::Scalar;
  if (name == "avx2") return Backend::Avx2;
  if (name == "auto" || name.empty()) return Backend::Auto;
  throw ConfigError("unknown kernel backend '" + std::string(name) + "'");
}

}  // namespace psv::kernels
