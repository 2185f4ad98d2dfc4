#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "syzygy/divisors.hpp"
#include "syzygy/stability.hpp"

namespace syzygy::io {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);

/// {"rays": [[x, y], ...]}; errors carry indices into this list.
std::vector<Ray> rays_from_json(const Json& j);
Fan fan_from_json(const Json& j);
Json fan_to_json(std::span<const Ray> input_rays);

/// {"labels": [...], "pairing": [[...]], "canonical": [...],
///  "effective_generators": [...]}; pairing entries are integers or "p/q".
SurfaceModel surface_from_json(const Json& j);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const AlphaBeta& ab);
Json to_json(const SweepRow& row);

}  // namespace syzygy::io
