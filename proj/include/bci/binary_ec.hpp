#pragma once

// Non-supersingular curves y^2 + xy = x^3 + ax^2 + b over GF(2^m), b != 0,
// in affine coordinates.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bci/gf2m.hpp"

namespace bci {

struct CurveParams {
  FieldParams field;
  std::string a_hex;
  std::string b_hex;
};

class CurvePoint {
 public:
  // The point at infinity.
  CurvePoint() = default;

  static CurvePoint infinity() { return {}; }

  bool is_infinity() const { return infinity_; }
  // Precondition: !is_infinity().
  const FieldElement& x() const { return x_; }
  const FieldElement& y() const { return y_; }

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;

 private:
  friend class EllipticCurve;
  CurvePoint(const FieldElement& x, const FieldElement& y) : infinity_(false), x_(x), y_(y) {}

  bool infinity_ = true;
  FieldElement x_;
  FieldElement y_;
};

class EllipticCurve {
 public:
  // Throws Error(kParameter) when b == 0 or the elements live in another field.
  EllipticCurve(BinaryField field, const FieldElement& a, const FieldElement& b);
  static EllipticCurve from_params(const CurveParams& params);

  const BinaryField& field() const { return field_; }
  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  CurveParams params() const;

  bool is_on_curve(const FieldElement& x, const FieldElement& y) const;
  bool contains(const CurvePoint& p) const;

  // Rejects off-curve coordinates with Error(kParameter).
  CurvePoint point(const FieldElement& x, const FieldElement& y) const;
  CurvePoint point_from_hex(std::string_view x_hex, std::string_view y_hex) const;

  CurvePoint negate(const CurvePoint& p) const;
  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;
  CurvePoint dbl(const CurvePoint& p) const;

  // Left-to-right double-and-add.
  CurvePoint scalar_mul(std::uint64_t k, const CurvePoint& p) const;
  // Scalar given as little-endian 64-bit words.
  CurvePoint scalar_mul(std::span<const std::uint64_t> k, const CurvePoint& p) const;

  // Every point of E(GF(2^m)) including infinity (listed first). Only for
  // m <= kMaxEnumerableDegree; throws Error(kCapability) above.
  std::vector<CurvePoint> enumerate_points() const;

  friend bool operator==(const EllipticCurve& lhs, const EllipticCurve& rhs) {
    return lhs.field_ == rhs.field_ && lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
  }

 private:
  BinaryField field_;
  FieldElement a_;
  FieldElement b_;
};

inline constexpr unsigned kMaxEnumerableDegree = 12;

struct NamedCurve {
  std::string name;
  EllipticCurve curve;
  CurvePoint generator;
  std::string order_hex;  // order of the generator, big-endian hex
};

// Built-in parameter sets. Currently "sect163k1" (SEC 2 / NIST K-163).
std::optional<NamedCurve> find_named_curve(std::string_view name);
NamedCurve named_curve(std::string_view name);  // throws Error(kKey) if unknown
std::vector<std::string> named_curve_names();

inline constexpr std::string_view kDefaultCurveName = "sect163k1";

}  // namespace bci
