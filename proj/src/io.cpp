#include "passent/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

namespace passent::io {

namespace {

using nlohmann::json;

void emit(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  switch (j.type()) {
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        out += fmt::format("{:.17g}", v);
      }
      break;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      // Arrays of scalars stay on one line so matrices read row by row.
      const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) out += pad;
        emit(e, indent, depth + 1, out);
        first = false;
      }
      if (!flat) out += close;
      out += ']';
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        out += pad;
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        emit(it.value(), indent, depth + 1, out);
        first = false;
      }
      out += close;
      out += '}';
      break;
    }
    default: out += j.dump(); break;
  }
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& field, Eigen::Index expected) {
  if (!j.is_array()) throw InputError("field '" + field + "' must be an array of rows");
  if (static_cast<Eigen::Index>(j.size()) != expected) {
    throw InputError(fmt::format("field '{}' has {} rows, expected {}", field, j.size(), expected));
  }
  Eigen::MatrixXd m(expected, expected);
  for (Eigen::Index r = 0; r < expected; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != expected) {
      throw InputError(fmt::format("field '{}' row {}: expected {} numbers", field, r + 1, expected));
    }
    for (Eigen::Index c = 0; c < expected; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) {
        throw InputError(fmt::format("field '{}' row {} column {}: not a number", field, r + 1, c + 1));
      }
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

int mode_count(const json& j) {
  if (!j.is_object()) throw InputError("top-level value must be a JSON object");
  if (!j.contains("n")) throw InputError("missing field 'n'");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw InputError("field 'n' must be a positive integer");
  }
  return static_cast<int>(j["n"].get<long long>());
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  return out;
}

json state_to_json(const CovarianceMatrix& gamma) {
  json j;
  j["n"] = gamma.modes();
  j["ordering"] = "qqpp";
  j["matrix"] = matrix_to_json(gamma.matrix());
  return j;
}

CovarianceMatrix state_from_json(const json& j) {
  const int n = mode_count(j);
  if (j.contains("ordering")) {
    if (!j["ordering"].is_string() || j["ordering"].get<std::string>() != "qqpp") {
      throw InputError("field 'ordering' must be \"qqpp\"");
    }
  }
  if (!j.contains("matrix")) throw InputError("missing field 'matrix'");
  return CovarianceMatrix(matrix_from_json(j["matrix"], "matrix", 2 * n));
}

json transform_to_json(const PassiveTransform& k) {
  json j;
  j["n"] = k.modes();
  j["unitary_re"] = matrix_to_json(k.unitary().real());
  j["unitary_im"] = matrix_to_json(k.unitary().imag());
  j["real_form"] = matrix_to_json(k.real_form());
  return j;
}

PassiveTransform transform_from_json(const json& j) {
  const int n = mode_count(j);
  for (const char* f : {"unitary_re", "unitary_im", "real_form"})
    if (!j.contains(f)) throw InputError(std::string("missing field '") + f + "'");
  const Eigen::MatrixXd re = matrix_from_json(j["unitary_re"], "unitary_re", n);
  const Eigen::MatrixXd im = matrix_from_json(j["unitary_im"], "unitary_im", n);
  const Eigen::MatrixXd stored = matrix_from_json(j["real_form"], "real_form", 2 * n);
  Eigen::MatrixXcd u(n, n);
  u.real() = re;
  u.imag() = im;
  PassiveTransform k = passive_from_unitary(u);
  const double mismatch = (k.real_form() - stored).cwiseAbs().maxCoeff();
  if (mismatch > tol::unitarity) {
    throw InputError(fmt::format("field 'real_form' disagrees with the stored unitary (max deviation {:.3g})",
                                 mismatch));
  }
  return k;
}

json parse(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(fmt::format("{}: JSON syntax error at line {}, column {}", source, line, col));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write to '" + path + "' failed");
}

CovarianceMatrix read_state(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return state_from_json(parse(text, path));
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + what);
  }
}

void write_state(const std::string& path, const CovarianceMatrix& gamma) {
  write_file(path, dump(state_to_json(gamma)) + "\n");
}

PassiveTransform read_transform(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return transform_from_json(parse(text, path));
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + what);
  }
}

void write_transform(const std::string& path, const PassiveTransform& k) {
  write_file(path, dump(transform_to_json(k)) + "\n");
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

}  // namespace passent::io
