// Copyright 2026 The ens-lab Authors
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

#ifndef ENSLAB_RESULT_H_
#define ENSLAB_RESULT_H_

#include <cstdlib>
#include <iostream>
#include <utility>
#include <variant>

namespace enslab {

// Value-or-error return for operations with named protocol error codes.
// Accessing the wrong alternative aborts; callers check ok() first.
template <typename T, typename E>
class Result {
 public:
  Result(T value) : state_(std::in_place_index<0>, std::move(value)) {}
  Result(E error) : state_(std::in_place_index<1>, error) {}

  bool ok() const { return state_.index() == 0; }

  const T& value() const& {
    if (!ok()) Die("Result::value() called on error");
    return std::get<0>(state_);
  }
  T&& value() && {
    if (!ok()) Die("Result::value() called on error");
    return std::get<0>(std::move(state_));
  }
  E error() const {
    if (ok()) Die("Result::error() called on value");
    return std::get<1>(state_);
  }

 private:
  [[noreturn]] static void Die(const char* msg) {
    std::cerr << "fatal: " << msg << "\n";
    std::abort();
  }
  std::variant<T, E> state_;
};

struct Unit {};

}  // namespace enslab

#endif  // ENSLAB_RESULT_H_
