#include "ddh/io.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace ddh {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("JSON parse error: ") + e.what());
  }
}

int read_resolution(const ordered_json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw IoError("missing integer field \"n\"");
  }
  const long long n = j["n"].get<long long>();
  if (n < 0 || n > kMaxResolution) throw IoError("resolution n outside 0..14");
  return static_cast<int>(n);
}

}  // namespace

std::string grid_to_json(const GridFunction& f) {
  ordered_json j;
  j["n"] = f.n();
  auto& values = j["values"] = ordered_json::array();
  for (double v : f.values()) {
    if (!std::isfinite(v)) throw IoError("grid contains a non-finite value");
    values.push_back(v);
  }
  return j.dump();
}

GridFunction grid_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  const int n = read_resolution(j);
  if (!j.contains("values") || !j["values"].is_array()) {
    throw IoError("missing array field \"values\"");
  }
  const auto& arr = j["values"];
  const std::size_t expect = std::size_t{1} << (2 * n);
  if (arr.size() != expect) throw IoError("\"values\" must hold 4^n numbers");
  std::vector<double> values;
  values.reserve(expect);
  for (const auto& e : arr) {
    if (!e.is_number()) throw IoError("\"values\" entries must be numbers");
    const double v = e.get<double>();
    if (!std::isfinite(v)) throw IoError("\"values\" entries must be finite");
    values.push_back(v);
  }
  return GridFunction(n, std::move(values));
}

std::string field_to_json(const DirectionField& v) {
  ordered_json j;
  j["n"] = v.n();
  auto& ks = j["k"] = ordered_json::array();
  for (int e : v.exponents()) ks.push_back(e);
  return j.dump();
}

DirectionField field_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  const int n = read_resolution(j);
  if (!j.contains("k") || !j["k"].is_array()) throw IoError("missing array field \"k\"");
  const auto& arr = j["k"];
  const std::size_t expect = std::size_t{1} << (2 * n);
  if (arr.size() != expect) throw IoError("\"k\" must hold 4^n integers");
  std::vector<int> k;
  k.reserve(expect);
  for (const auto& e : arr) {
    if (!e.is_number_integer()) throw IoError("\"k\" entries must be integers");
    const long long kk = e.get<long long>();
    if (kk < 0 || kk > n) throw IoError("\"k\" entries must lie in 0..n");
    k.push_back(static_cast<int>(kk));
  }
  return DirectionField(n, std::move(k));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());
  return text;
}

GridFunction read_grid_file(const std::filesystem::path& path) {
  return grid_from_json(read_text_file(path));
}

DirectionField read_field_file(const std::filesystem::path& path) {
  return field_from_json(read_text_file(path));
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failure on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

}  // namespace ddh
