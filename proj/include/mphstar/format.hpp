/*
   Copyright 2026 the mphstar authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mphstar {

/// %.{digits}g rendering of a double.  17 digits round-trips exactly and
/// is the convention for all machine-readable output; human tables use 12.
std::string format_significant(double value, int digits);

/// Minimal JSON emitter with caller-controlled key order and fixed
/// significant-digit number formatting, so that serialized reports are
/// byte-identical across runs and worker configurations.
class JsonWriter {
 public:
  explicit JsonWriter(int significant_digits = 17);

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(int v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);

  const std::string& str() const { return out_; }

 private:
  void separate();

  int digits_;
  std::string out_;
  std::vector<bool> need_comma_;
};

}  // namespace mphstar
