#include "qdals/bench/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qdals::bench {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_array(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_array(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Complex complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_fail(field, "expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix matrix_from_array(const json& j, Eigen::Index dim, const std::string& field) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
    parse_fail(field, "expected " + std::to_string(dim) + " rows");
  }
  ComplexMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      parse_fail(row_field, "expected " + std::to_string(dim) + " entries");
    }
    for (Eigen::Index k = 0; k < dim; ++k) {
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], row_field + "[" + std::to_string(k) + "]");
    }
  }
  return m;
}

ComplexVector vector_from_array(const json& j, Eigen::Index dim, const std::string& field) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
    parse_fail(field, "expected " + std::to_string(dim) + " entries");
  }
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = complex_from_json(j[static_cast<std::size_t>(i)], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

json parse_document(const std::string& text) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "top level must be an object");
    return doc;
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

const json& require(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) parse_fail(key, "missing");
  return *it;
}

Eigen::Index read_dim(const json& doc) {
  const json& d = require(doc, "dim");
  if (!d.is_number_unsigned() || d.get<std::uint64_t>() < 2 ||
      !qlsp::is_power_of_two(static_cast<Eigen::Index>(d.get<std::uint64_t>()))) {
    parse_fail("dim", "expected a power of two >= 2");
  }
  return static_cast<Eigen::Index>(d.get<std::uint64_t>());
}

void check_hermitian_flag(const json& doc, const ComplexMatrix& m, const char* field) {
  const json& h = require(doc, "hermitian");
  if (!h.is_boolean()) parse_fail("hermitian", "expected a boolean");
  if (h.get<bool>() && !numkit::is_hermitian(m)) {
    throw Error(ErrorKind::InvariantViolation, std::string("field '") + field + "' is not Hermitian");
  }
}

std::string read_label(const json& doc) {
  const auto it = doc.find("label");
  if (it == doc.end()) return {};
  if (!it->is_string()) parse_fail("label", "expected a string");
  return it->get<std::string>();
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string instance_to_json(const qlsp::QlspInstance& p) {
  json doc;
  doc["A"] = matrix_to_array(p.a);
  doc["b"] = vector_to_array(p.b);
  doc["dim"] = p.dim();
  doc["hermitian"] = true;
  doc["label"] = p.label;
  if (p.seed) doc["seed"] = *p.seed;
  return dump(doc);
}

qlsp::QlspInstance instance_from_json(const std::string& text) {
  const json doc = parse_document(text);
  const Eigen::Index dim = read_dim(doc);
  ComplexMatrix a = matrix_from_array(require(doc, "A"), dim, "A");
  check_hermitian_flag(doc, a, "A");
  if (!require(doc, "hermitian").get<bool>()) {
    throw Error(ErrorKind::InvariantViolation, "instance matrices must be Hermitian");
  }
  ComplexVector b = vector_from_array(require(doc, "b"), dim, "b");

  std::optional<std::uint64_t> seed;
  if (const auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) parse_fail("seed", "expected an unsigned integer");
    seed = it->get<std::uint64_t>();
  }

  if (numkit::is_normalized(b)) {
    qlsp::QlspInstance p{std::move(a), std::move(b), read_label(doc), seed};
    qlsp::validate(p);
    return p;
  }
  return qlsp::make_instance(std::move(a), std::move(b), read_label(doc), seed);
}

std::string matrix_to_json(const LabeledMatrix& m) {
  if (m.matrix.rows() != m.matrix.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix must be square");
  json doc;
  doc["dim"] = m.matrix.rows();
  doc["hermitian"] = numkit::is_hermitian(m.matrix);
  doc["label"] = m.label;
  doc["matrix"] = matrix_to_array(m.matrix);
  return dump(doc);
}

LabeledMatrix matrix_from_json(const std::string& text) {
  const json doc = parse_document(text);
  const Eigen::Index dim = read_dim(doc);
  ComplexMatrix m = matrix_from_array(require(doc, "matrix"), dim, "matrix");
  check_hermitian_flag(doc, m, "matrix");
  return {std::move(m), read_label(doc)};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::ParseError, "write failed for " + path.string());
}

void save_instance(const qlsp::QlspInstance& p, const std::filesystem::path& path) {
  write_text(path, instance_to_json(p));
}

qlsp::QlspInstance load_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(read_text(path));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.detail());
  }
}

void save_matrix(const LabeledMatrix& m, const std::filesystem::path& path) { write_text(path, matrix_to_json(m)); }

LabeledMatrix load_matrix(const std::filesystem::path& path) {
  try {
    return matrix_from_json(read_text(path));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.detail());
  }
}

}  // namespace qdals::bench
