#include "pcsl/json_io.hpp"

#include <fstream>
#include <sstream>

namespace pcsl {

json algebra_to_json(const FinPSL& p) {
  const std::size_t n = p.size();
  json j;
  j["n"] = n;
  j["zero"] = p.zero();
  json meet = json::array();
  for (std::size_t x = 0; x < n; ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < n; ++y) row.push_back(p.meet(static_cast<Elem>(x), static_cast<Elem>(y)));
    meet.push_back(std::move(row));
  }
  j["meet"] = std::move(meet);
  json star = json::array();
  for (std::size_t x = 0; x < n; ++x) star.push_back(p.star(static_cast<Elem>(x)));
  j["star"] = std::move(star);
  if (p.has_labels()) j["labels"] = p.labels();
  return j;
}

FinPSL algebra_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("algebra: expected a JSON object");
  for (const char* key : {"n", "zero", "meet", "star"})
    if (!j.contains(key)) throw FormatError(std::string("algebra: missing key '") + key + "'");
  AlgebraTables t;
  try {
    const long long n = j.at("n").get<long long>();
    if (n < 0) throw FormatError("algebra: negative n");
    t.n = static_cast<std::size_t>(n);
    t.zero = j.at("zero").get<long long>();
    t.meet = j.at("meet").get<std::vector<std::vector<long long>>>();
    t.star = j.at("star").get<std::vector<long long>>();
    if (j.contains("labels")) t.labels = j.at("labels").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("algebra: ") + e.what());
  }
  return FinPSL::from_tables(t);
}

FinPSL load_algebra(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return algebra_from_json(j);
}

void save_algebra(const FinPSL& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << algebra_to_json(p).dump() << '\n';
}

json morphism_to_json(const Morphism& m) {
  json j;
  j["map"] = m.map;
  j["kind"] = kind_name(m.kind);
  return j;
}

Morphism morphism_from_json(const json& j) {
  try {
    Morphism m;
    m.map = j.at("map").get<std::vector<Elem>>();
    m.kind = kind_from_name(j.at("kind").get<std::string>());
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("morphism: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string to_hex(const std::string& bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::string from_hex(const std::string& hex) {
  if (hex.size() % 2) throw FormatError("hex string has odd length");
  auto val = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw FormatError("bad hex digit");
  };
  std::string out(hex.size() / 2, '\0');
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<char>(val(hex[2 * i]) * 16 + val(hex[2 * i + 1]));
  return out;
}

}  // namespace pcsl
