#include "bci/key_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>

#include "bci/error.hpp"

namespace bci {
namespace {

using nlohmann::json;

[[noreturn]] void key_error(const std::string& what) { throw Error(ErrorKind::kKey, what); }

const json& require(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) key_error(std::string("key file: missing '") + field + "'");
  return j.at(field);
}

std::string require_string(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_string()) key_error(std::string("key file: '") + field + "' must be a string");
  return v.get<std::string>();
}

std::int64_t require_int(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_number_integer()) key_error(std::string("key file: '") + field + "' must be an integer");
  return v.get<std::int64_t>();
}

std::vector<std::uint8_t> parse_hex_bytes(std::string_view hex) {
  if (hex.size() % 2 != 0) key_error("key file: iv_hex must have an even number of digits");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    unsigned v = 0;
    const char* first = hex.data() + 2 * i;
    const auto [ptr, ec] = std::from_chars(first, first + 2, v, 16);
    if (ec != std::errc() || ptr != first + 2) key_error("key file: iv_hex is not valid hex");
    out[i] = static_cast<std::uint8_t>(v);
  }
  return out;
}

std::string to_hex_bytes(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

template <class F>
auto rethrow_as_key_error(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kKey) throw;
    key_error(std::string("key file: ") + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    key_error("not a decimal number: '" + std::string(s) + "'");
  }
  return v;
}

KeyMaterial key_from_json(const json& j) {
  if (!j.is_object()) key_error("key file: top level must be an object");

  const json& curve_j = require(j, "curve");
  std::string curve_name;
  const std::pair<EllipticCurve, CurvePoint> curve_and_g = rethrow_as_key_error([&]() -> std::pair<EllipticCurve, CurvePoint> {
    if (curve_j.is_string()) {
      curve_name = curve_j.get<std::string>();
      NamedCurve nc = named_curve(curve_name);
      return {nc.curve, nc.generator};
    }
    if (!curve_j.is_object()) key_error("key file: 'curve' must be a name or an object");
    const std::int64_t m = require_int(curve_j, "m");
    if (m < kMinFieldDegree || m > kMaxFieldDegree) key_error("key file: curve.m out of range");
    CurveParams params{FieldParams::from_hex(static_cast<unsigned>(m), require_string(curve_j, "poly_hex")),
                       require_string(curve_j, "a_hex"), require_string(curve_j, "b_hex")};
    EllipticCurve c = EllipticCurve::from_params(params);
    CurvePoint g = c.point_from_hex(require_string(curve_j, "gx_hex"), require_string(curve_j, "gy_hex"));
    return {c, g};
  });
  const EllipticCurve& curve = curve_and_g.first;

  const json& u0_j = require(j, "u0");
  if (!u0_j.is_array()) key_error("key file: 'u0' must be an array");
  std::vector<CurvePoint> u0;
  for (const json& p : u0_j) {
    u0.push_back(rethrow_as_key_error([&] {
      return curve.point_from_hex(require_string(p, "x_hex"), require_string(p, "y_hex"));
    }));
  }

  KeyMaterial km{.curve_name = curve_name, .curve = curve, .generator = curve_and_g.second, .u0 = std::move(u0)};
  km.chaos_seed = parse_double(require_string(j, "chaos_seed"));
  if (j.contains("chaos_r")) km.chaos_r = parse_double(require_string(j, "chaos_r"));
  if (j.contains("iv_hex")) km.iv = parse_hex_bytes(require_string(j, "iv_hex"));
  km.scheme = static_cast<int>(require_int(j, "scheme"));
  const std::int64_t n = require_int(j, "block_size");
  if (n < 0 || n > 1024) key_error("key file: block_size out of range");
  km.block_size = static_cast<unsigned>(n);
  km.validate();
  return km;
}

json key_to_json(const KeyMaterial& km) {
  const BinaryField& f = km.curve.field();
  json j;
  if (!km.curve_name.empty()) {
    j["curve"] = km.curve_name;
  } else {
    j["curve"] = {{"m", f.degree()},
                  {"poly_hex", f.params().reduction_hex()},
                  {"a_hex", f.to_hex(km.curve.a())},
                  {"b_hex", f.to_hex(km.curve.b())},
                  {"gx_hex", f.to_hex(km.generator.x())},
                  {"gy_hex", f.to_hex(km.generator.y())}};
  }
  json u0 = json::array();
  for (const CurvePoint& p : km.u0) u0.push_back({{"x_hex", f.to_hex(p.x())}, {"y_hex", f.to_hex(p.y())}});
  j["u0"] = std::move(u0);
  j["chaos_seed"] = format_double(km.chaos_seed);
  j["chaos_r"] = format_double(km.chaos_r);
  if (!km.iv.empty()) j["iv_hex"] = to_hex_bytes(km.iv);
  j["scheme"] = km.scheme;
  j["block_size"] = km.block_size;
  return j;
}

KeyMaterial load_key_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) key_error("cannot open key file " + path.string());
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) key_error("key file " + path.string() + " is not valid JSON");
  return key_from_json(j);
}

void save_key_file(const KeyMaterial& km, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write key file " + path.string());
  out << key_to_json(km).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

KeyMaterial generate_key(const KeygenOptions& options,
                         const std::function<std::uint64_t()>& random_word) {
  if (options.channels != 1 && options.channels != 3) key_error("channels must be 1 or 3");
  NamedCurve nc = named_curve(options.curve_name);
  const unsigned m = nc.curve.field().degree();

  std::vector<CurvePoint> u0;
  while (u0.size() < options.channels) {
    std::vector<std::uint64_t> k((m + 63) / 64);
    for (auto& w : k) w = random_word();
    if (m % 64 != 0) k.back() &= (std::uint64_t{1} << (m % 64)) - 1;
    CurvePoint p = nc.curve.scalar_mul(k, nc.generator);
    if (p.is_infinity() || std::find(u0.begin(), u0.end(), p) != u0.end()) continue;
    u0.push_back(std::move(p));
  }

  KeyMaterial km{.curve_name = nc.name, .curve = nc.curve, .generator = nc.generator, .u0 = std::move(u0)};
  for (;;) {
    // 53 random bits mapped to the open interval (0, 1).
    const double s = (static_cast<double>(random_word() >> 11) + 0.5) * 0x1.0p-53;
    try {
      validate_chaos_seed(s, 4.0);
      km.chaos_seed = s;
      break;
    } catch (const Error&) {
    }
  }
  km.chaos_r = 4.0;
  km.scheme = options.scheme;
  km.block_size = options.block_size;
  km.iv.resize(km.block_bytes());
  for (std::size_t i = 0; i < km.iv.size(); i += 8) {
    const std::uint64_t w = random_word();
    for (std::size_t b = 0; b < 8 && i + b < km.iv.size(); ++b) {
      km.iv[i + b] = static_cast<std::uint8_t>(w >> (8 * b));
    }
  }
  km.validate();
  return km;
}

KeyMaterial generate_key(const KeygenOptions& options) {
  std::random_device rd;
  return generate_key(options, rd);
}

KeySpaceSummary key_space(const KeyMaterial& km) {
  // Seed and control parameter, each resolvable to 1e-14.
  const double chaos_bits = 2.0 * std::log2(1e14);
  return {chaos_bits, km.curve.field().degree(),
          km.scheme == 2 ? static_cast<unsigned>(8 * km.block_bytes()) : 0U};
}

}  // namespace bci
