#ifndef PASSENT_IO_HPP
#define PASSENT_IO_HPP

// File formats.
//
// State file:     {"n": 2, "ordering": "qqpp", "matrix": [[...], ...]}
// Transform file: {"n": 2, "unitary_re": [[...]], "unitary_im": [[...]],
//                  "real_form": [[...]]}
//
// Numbers are written with 17 significant digits, so files round-trip
// bit-exactly.

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "passent/gaussian.hpp"

namespace passent::io {

/// Malformed input: JSON syntax, missing fields, wrong shapes.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Serializes JSON with doubles printed as %.17g.
std::string dump(const nlohmann::json& j, int indent = 2);

nlohmann::json state_to_json(const CovarianceMatrix& gamma);
CovarianceMatrix state_from_json(const nlohmann::json& j);

nlohmann::json transform_to_json(const PassiveTransform& k);
/// Rebuilds the transform from its unitary and cross-checks the stored real
/// form against it.
PassiveTransform transform_from_json(const nlohmann::json& j);

/// Parses text, reporting syntax errors with line and column.
nlohmann::json parse(std::string_view text, const std::string& source);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

CovarianceMatrix read_state(const std::string& path);
void write_state(const std::string& path, const CovarianceMatrix& gamma);
PassiveTransform read_transform(const std::string& path);
void write_transform(const std::string& path, const PassiveTransform& k);

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace passent::io

#endif  // PASSENT_IO_HPP
