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
#include "mphstar/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mphstar/format.hpp"

namespace mphstar {

namespace {

using nlohmann::json;

RowVector parse_vector(const json& node, const char* name) {
  if (!node.is_array()) {
    throw ModelParseError(std::string("model file: \"") + name + "\" must be an array of numbers");
  }
  RowVector v(node.size());
  Eigen::Index i = 0;
  for (const auto& x : node) {
    if (!x.is_number()) {
      throw ModelParseError(std::string("model file: \"") + name + "\" must contain only numbers");
    }
    v(i++) = x.get<double>();
  }
  return v;
}

Matrix parse_matrix(const json& node, const char* name) {
  if (!node.is_array() || node.empty()) {
    throw ModelParseError(std::string("model file: \"") + name +
                          "\" must be a non-empty array of rows");
  }
  const std::size_t cols = node.front().is_array() ? node.front().size() : 0;
  Matrix m(static_cast<Eigen::Index>(node.size()), static_cast<Eigen::Index>(cols));
  Eigen::Index r = 0;
  for (const auto& row : node) {
    if (!row.is_array() || row.size() != cols) {
      throw ModelParseError(std::string("model file: \"") + name +
                            "\" rows must all have the same length");
    }
    Eigen::Index c = 0;
    for (const auto& x : row) {
      if (!x.is_number()) {
        throw ModelParseError(std::string("model file: \"") + name +
                              "\" must contain only numbers");
      }
      m(r, c++) = x.get<double>();
    }
    ++r;
  }
  return m;
}

}  // namespace

MphStarModel model_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ModelParseError(std::string("model file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ModelParseError("model file: top level must be an object");
  }
  for (const char* required : {"alpha", "Q", "R"}) {
    if (!doc.contains(required)) {
      throw ModelParseError(std::string("model file: missing key \"") + required + "\"");
    }
  }

  MphStarModel model;
  model.alpha = parse_vector(doc["alpha"], "alpha");
  model.Q = parse_matrix(doc["Q"], "Q");
  model.R = parse_matrix(doc["R"], "R");
  if (doc.contains("alpha_abs")) {
    if (!doc["alpha_abs"].is_number()) {
      throw ModelParseError("model file: \"alpha_abs\" must be a number");
    }
    model.alpha_abs = doc["alpha_abs"].get<double>();
  }
  return model;
}

MphStarModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ModelParseError("cannot open model file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) {
    throw ModelParseError("error while reading model file: " + path);
  }
  return model_from_json_text(buffer.str());
}

std::string model_to_json_text(const MphStarModel& model) {
  JsonWriter w(17);
  w.begin_object();
  w.key("alpha").begin_array();
  for (Eigen::Index i = 0; i < model.alpha.size(); ++i) w.value(model.alpha(i));
  w.end_array();
  w.key("alpha_abs").value(model.alpha_abs);
  w.key("Q").begin_array();
  for (Eigen::Index i = 0; i < model.Q.rows(); ++i) {
    w.begin_array();
    for (Eigen::Index j = 0; j < model.Q.cols(); ++j) w.value(model.Q(i, j));
    w.end_array();
  }
  w.end_array();
  w.key("R").begin_array();
  for (Eigen::Index i = 0; i < model.R.rows(); ++i) {
    w.begin_array();
    for (Eigen::Index j = 0; j < model.R.cols(); ++j) w.value(model.R(i, j));
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

}  // namespace mphstar
