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

#include <string>

#include "mphstar/model.hpp"

namespace mphstar {

/// I/O or JSON-shape failure while reading a model file.  Distinct from
/// the structural/invariant errors raised by validate().
class ModelParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the model file format: an object with keys "alpha" (array of m
/// numbers), "alpha_abs" (number, optional, default 0), "Q" (array of m
/// arrays of m numbers) and "R" (array of k arrays of m numbers).  An
/// exact 0 in R denotes a zero reward.  Throws ModelParseError on
/// malformed JSON or ragged matrices; cross-field dimension checks are
/// left to validate().
MphStarModel model_from_json_text(const std::string& text);

/// Reads and parses a model file; throws ModelParseError on I/O failure.
MphStarModel load_model(const std::string& path);

/// Renders a model back to the file format with 17 significant digits.
std::string model_to_json_text(const MphStarModel& model);

}  // namespace mphstar
