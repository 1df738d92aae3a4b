#include "qdals/bench/fixtures.hpp"

#include <algorithm>

namespace qdals::bench {

namespace {

using C = Complex;

qlsp::QlspInstance raw_c2_1() {
  ComplexMatrix a(2, 2);
  a << C(1.3088, 0.0), C(1.3246, -0.6686),
       C(1.3246, 0.6686), C(0.1441, 0.0);
  ComplexVector b(2);
  b << C(0.7406, 0.3019), C(0.4177, 0.0914);
  return {a, b, "c2_1", std::nullopt};
}

qlsp::QlspInstance raw_identity4() {
  ComplexVector b = ComplexVector::Constant(4, C(0.5, 0.0));
  return {ComplexMatrix::Identity(4, 4), b, "identity4", std::nullopt};
}

ComplexMatrix s2_1() {
  ComplexMatrix m(2, 2);
  m << C(0.0, 0.0), C(0.0, 1.5912),
       C(0.0, 0.0), C(0.5723, 0.0);
  return m;
}

ComplexMatrix h1_c4_1() {
  ComplexMatrix m(4, 4);
  m << C(0.8801, 0.0), C(-0.0149, -0.0557), C(-0.0092, 0.0280), C(0.0163, -0.0544),
       C(-0.0149, 0.0557), C(0.3408, -0.0), C(-0.2841, -0.2685), C(0.0923, -0.1583),
       C(-0.0092, -0.0280), C(-0.2841, 0.2685), C(0.6885, -0.0), C(-0.0113, -0.1592),
       C(0.0163, 0.0544), C(0.0923, 0.1583), C(-0.0113, 0.1592), C(0.8759, 0.0);
  return m;
}

[[noreturn]] void unknown(const std::string& name) {
  throw Error(ErrorKind::OutOfRange, "unknown fixture '" + name + "'");
}

}  // namespace

const std::vector<FixtureInfo>& fixture_list() {
  static const std::vector<FixtureInfo> list = {
      {"c2_1", FixtureKind::Instance},
      {"s2_1", FixtureKind::Matrix},
      {"h1_c4_1", FixtureKind::Matrix},
      {"identity4", FixtureKind::Instance},
  };
  return list;
}

bool is_fixture(const std::string& name) {
  const auto& list = fixture_list();
  return std::any_of(list.begin(), list.end(), [&](const FixtureInfo& f) { return f.name == name; });
}

qlsp::QlspInstance fixture_instance(const std::string& name) {
  qlsp::QlspInstance raw;
  if (name == "c2_1") {
    raw = raw_c2_1();
  } else if (name == "identity4") {
    raw = raw_identity4();
  } else if (is_fixture(name)) {
    throw Error(ErrorKind::OutOfRange, "fixture '" + name + "' is a matrix, not an instance");
  } else {
    unknown(name);
  }
  return qlsp::make_instance(std::move(raw.a), std::move(raw.b), raw.label);
}

LabeledMatrix fixture_matrix(const std::string& name) {
  if (name == "s2_1") return {s2_1(), name};
  if (name == "h1_c4_1") return {h1_c4_1(), name};
  if (name == "c2_1") return {raw_c2_1().a, name};
  if (name == "identity4") return {raw_identity4().a, name};
  unknown(name);
}

std::string fixture_json(const std::string& name) {
  if (name == "c2_1") return instance_to_json(raw_c2_1());
  if (name == "identity4") return instance_to_json(raw_identity4());
  return matrix_to_json(fixture_matrix(name));
}

std::vector<std::filesystem::path> write_fixtures(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (const auto& f : fixture_list()) {
    out.push_back(dir / (f.name + ".json"));
    write_text(out.back(), fixture_json(f.name));
  }
  return out;
}

}  // namespace qdals::bench
