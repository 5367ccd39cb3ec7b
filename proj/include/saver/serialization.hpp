#ifndef SAVER_SERIALIZATION_HPP
#define SAVER_SERIALIZATION_HPP

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "saver/common.hpp"
#include "saver/model.hpp"
#include "saver/sdf.hpp"
#include "saver/sets.hpp"

namespace saver {

using json = nlohmann::json;

namespace detail {

inline json require_field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw parse_error(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

inline double number_field(const json& j, const std::string& key, const std::string& where) {
  json v = require_field(j, key, where);
  if (!v.is_number()) throw parse_error(where + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

inline Vector vector_field(const json& j, const std::string& key, const std::string& where) {
  json v = require_field(j, key, where);
  if (!v.is_array() || v.empty()) {
    throw parse_error(where + ": field \"" + key + "\" must be a non-empty array");
  }
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw parse_error(where + ": \"" + key + "\"[" + std::to_string(i) +
                        "] must be a number");
    }
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

inline Matrix matrix_field(const json& j, const std::string& key, const std::string& where) {
  json v = require_field(j, key, where);
  if (!v.is_array() || v.empty()) {
    throw parse_error(where + ": field \"" + key + "\" must be a non-empty array of rows");
  }
  std::size_t cols = 0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (!v[r].is_array() || v[r].empty()) {
      throw parse_error(where + ": \"" + key + "\" row " + std::to_string(r) +
                        " must be a non-empty array");
    }
    if (r == 0) {
      cols = v[r].size();
    } else if (v[r].size() != cols) {
      throw parse_error(where + ": \"" + key + "\" row " + std::to_string(r) + " has " +
                        std::to_string(v[r].size()) + " entries, expected " +
                        std::to_string(cols));
    }
  }
  Matrix out(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!v[r][c].is_number()) {
        throw parse_error(where + ": \"" + key + "\"[" + std::to_string(r) + "][" +
                          std::to_string(c) + "] must be a number");
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[r][c].get<double>();
    }
  }
  return out;
}

inline json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

inline NormOrder norm_order_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    auto n = v.get<std::int64_t>();
    if (n == 1) return NormOrder::one;
    if (n == 2) return NormOrder::two;
    throw parse_error(where + ": \"norm\" must be 1, 2, or \"inf\"");
  }
  if (v.is_string() && v.get<std::string>() == "inf") return NormOrder::inf;
  throw parse_error(where + ": \"norm\" must be 1, 2, or \"inf\"");
}

inline json norm_order_to_json(NormOrder order) {
  switch (order) {
    case NormOrder::one: return json(1);
    case NormOrder::two: return json(2);
    case NormOrder::inf: return json("inf");
  }
  throw state_error("unknown norm order");
}

// Parse a set description. `where` names the position for error messages
// ("spec", "spec.children[1]", ...).
inline SetSpec set_from_json(const json& j, const std::string& where = "spec") {
  if (!j.is_object()) throw parse_error(where + ": expected an object");
  json kind_field = detail::require_field(j, "kind", where);
  if (!kind_field.is_string()) throw parse_error(where + ": \"kind\" must be a string");
  std::string kind = kind_field.get<std::string>();

  // Complement and shifted take exactly one child; the other composites
  // take exactly two.
  auto children = [&](std::size_t count) {
    json arr = detail::require_field(j, "children", where);
    if (!arr.is_array() || arr.size() != count) {
      throw parse_error(where + ": \"" + kind + "\" needs exactly " + std::to_string(count) +
                        (count == 1 ? " child" : " children"));
    }
    std::vector<SetSpec> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(set_from_json(arr[i], where + ".children[" + std::to_string(i) + "]"));
    }
    return out;
  };

  try {
    if (kind == "norm_ball") {
      NormBallSpec ball(detail::vector_field(j, "center", where),
                        detail::number_field(j, "radius", where),
                        norm_order_from_json(detail::require_field(j, "norm", where), where));
      return SetSpec::norm_ball(std::move(ball));
    }
    if (kind == "polytope") {
      return SetSpec::polytope(detail::matrix_field(j, "A", where),
                               detail::vector_field(j, "b", where));
    }
    if (kind == "union") {
      auto parts = children(2);
      return SetSpec::union_of(parts[0], parts[1]);
    }
    if (kind == "intersection") {
      auto parts = children(2);
      return SetSpec::intersection_of(parts[0], parts[1]);
    }
    if (kind == "complement") return SetSpec::complement_of(children(1)[0]);
    if (kind == "difference") {
      auto parts = children(2);
      return SetSpec::difference_of(parts[0], parts[1]);
    }
    if (kind == "shifted") {
      double theta = detail::number_field(j, "theta", where);
      return children(1)[0].shift_level(theta);
    }
  } catch (const spec_error& e) {
    throw parse_error(where + ": " + e.what());
  }
  throw parse_error(where + ": unknown kind \"" + kind + "\"");
}

inline json set_to_json(const SetSpec& spec) {
  json j;
  switch (spec.kind()) {
    case SetKind::norm_ball: {
      const NormBallSpec& ball = spec.norm_ball_spec();
      j["kind"] = "norm_ball";
      j["center"] = detail::vector_to_json(ball.center);
      j["radius"] = ball.radius;
      j["norm"] = norm_order_to_json(ball.order);
      return j;
    }
    case SetKind::polytope: {
      const PolytopeSpec& poly = spec.polytope_spec();
      j["kind"] = "polytope";
      j["A"] = detail::matrix_to_json(poly.a());
      j["b"] = detail::vector_to_json(poly.b());
      return j;
    }
    case SetKind::union_:
    case SetKind::intersection:
    case SetKind::complement:
    case SetKind::difference: {
      static const char* names[] = {"union", "intersection", "complement", "difference"};
      j["kind"] = names[static_cast<int>(spec.kind()) - static_cast<int>(SetKind::union_)];
      json arr = json::array();
      for (std::size_t i = 0; i < spec.child_count(); ++i) arr.push_back(set_to_json(spec.child(i)));
      j["children"] = std::move(arr);
      return j;
    }
    case SetKind::shifted: {
      j["kind"] = "shifted";
      j["theta"] = spec.level_shift();
      j["children"] = json::array({set_to_json(spec.child(0))});
      return j;
    }
  }
  throw state_error("unknown set kind");
}

inline Activation activation_from_json(const json& v, const std::string& where) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "relu") return Activation::relu;
    if (s == "identity") return Activation::identity;
  }
  throw parse_error(where + ": \"activation\" must be \"relu\" or \"identity\"");
}

// Weight file: {"layers": [{"W": [[...], ...], "b": [...], "activation": "relu"}, ...]}
inline NetworkSpec network_from_json(const json& j, const std::string& where = "network") {
  if (!j.is_object()) throw parse_error(where + ": expected an object");
  json arr = detail::require_field(j, "layers", where);
  if (!arr.is_array() || arr.empty()) {
    throw parse_error(where + ": \"layers\" must be a non-empty array");
  }
  std::vector<Layer> layers;
  layers.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    std::string at = where + ".layers[" + std::to_string(k) + "]";
    if (!arr[k].is_object()) throw parse_error(at + ": expected an object");
    Layer layer;
    layer.weights = detail::matrix_field(arr[k], "W", at);
    layer.bias = detail::vector_field(arr[k], "b", at);
    layer.activation = activation_from_json(detail::require_field(arr[k], "activation", at), at);
    layers.push_back(std::move(layer));
  }
  try {
    return NetworkSpec(std::move(layers));
  } catch (const spec_error& e) {
    throw parse_error(where + ": " + e.what());
  }
}

inline json network_to_json(const NetworkSpec& net) {
  json arr = json::array();
  for (const Layer& layer : net.layers()) {
    json jl;
    jl["W"] = detail::matrix_to_json(layer.weights);
    jl["b"] = detail::vector_to_json(layer.bias);
    jl["activation"] = layer.activation == Activation::relu ? "relu" : "identity";
    arr.push_back(std::move(jl));
  }
  return json{{"layers", std::move(arr)}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw io_error("failed writing " + path);
}

inline SetSpec load_set_file(const std::string& path) {
  return set_from_json(load_json_file(path), path);
}

inline NetworkSpec load_network_file(const std::string& path) {
  return network_from_json(load_json_file(path), path);
}

}  // namespace saver

#endif  // SAVER_SERIALIZATION_HPP
