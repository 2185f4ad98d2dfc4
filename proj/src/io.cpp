#include "syzygy/io.hpp"

#include <fstream>

namespace syzygy::io {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

namespace {

Integer integer_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw Error(ErrorKind::InvalidInput, where + " must be an integer");
  return j.get<Integer>();
}

}  // namespace

std::vector<Ray> rays_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rays") || !j["rays"].is_array()) {
    throw Error(ErrorKind::InvalidInput, "fan file needs a \"rays\" array");
  }
  std::vector<Ray> rays;
  const Json& arr = j["rays"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "rays[" + std::to_string(i) + "]";
    if (!arr[i].is_array() || arr[i].size() != 2) {
      throw Error(ErrorKind::InvalidInput, where + " must be a pair [x, y]", i);
    }
    rays.push_back({integer_from_json(arr[i][0], where), integer_from_json(arr[i][1], where)});
  }
  return rays;
}

Fan fan_from_json(const Json& j) { return validate_fan(rays_from_json(j)); }

Json fan_to_json(std::span<const Ray> input_rays) {
  Json rays = Json::array();
  for (const Ray& r : input_rays) rays.push_back({r.x, r.y});
  return Json{{"rays", rays}};
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<Integer>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::InvalidInput, "expected an integer or a \"p/q\" string, got " + j.dump());
}

SurfaceModel surface_from_json(const Json& j) {
  for (const char* key : {"labels", "pairing", "canonical", "effective_generators"}) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_array()) {
      throw Error(ErrorKind::InvalidInput, std::string("surface file needs a \"") + key + "\" array");
    }
  }
  std::vector<std::string> labels;
  for (const auto& l : j["labels"]) {
    if (!l.is_string()) throw Error(ErrorKind::InvalidInput, "labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  const std::size_t n = labels.size();
  const Json& rows = j["pairing"];
  if (rows.size() != n) {
    throw Error(ErrorKind::InvalidInput, "pairing has " + std::to_string(rows.size()) +
                                             " rows for " + std::to_string(n) + " labels");
  }
  RationalMatrix pairing(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) {
      throw Error(ErrorKind::InvalidInput, "pairing row " + std::to_string(r) + " must have " +
                                               std::to_string(n) + " entries", r);
    }
    for (std::size_t c = 0; c < n; ++c) pairing(r, c) = rational_from_json(rows[r][c]);
  }
  std::vector<Integer> canonical;
  for (const auto& c : j["canonical"]) canonical.push_back(integer_from_json(c, "canonical"));
  std::vector<std::size_t> gens;
  for (const auto& g : j["effective_generators"]) {
    const Integer v = integer_from_json(g, "effective_generators");
    if (v < 0) throw Error(ErrorKind::InvalidInput, "negative generator index");
    gens.push_back(static_cast<std::size_t>(v));
  }
  return SurfaceModel::abstract(std::move(labels), std::move(pairing), TDivisor(std::move(canonical)),
                                std::move(gens));
}

Json to_json(const AlphaBeta& ab) {
  return Json{{"alpha", rational_to_json(ab.alpha)}, {"beta", rational_to_json(ab.beta)}};
}

Json to_json(const SweepRow& row) {
  Json j{{"ell", row.ell},
         {"a", rational_to_json(row.a)},
         {"b", rational_to_json(row.b)},
         {"verdict", std::string(to_string(row.verdict))},
         {"alpha", rational_to_json(row.alpha_beta.alpha)},
         {"beta", rational_to_json(row.alpha_beta.beta)}};
  if (row.d0) {
    j["d0"] = row.d0->d0;
    j["strict"] = row.d0->strict;
  } else {
    j["d0"] = nullptr;
  }
  return j;
}

}  // namespace syzygy::io
