#include "bci/binary_ec.hpp"

#include "bci/error.hpp"

namespace bci {

EllipticCurve::EllipticCurve(BinaryField field, const FieldElement& a, const FieldElement& b)
    : field_(std::move(field)), a_(a), b_(b) {
  if (a_.field_tag() != field_.tag() || b_.field_tag() != field_.tag()) {
    throw Error(ErrorKind::kParameter, "curve coefficients belong to a different field");
  }
  if (b_.is_zero()) throw Error(ErrorKind::kParameter, "curve coefficient b must be nonzero");
}

EllipticCurve EllipticCurve::from_params(const CurveParams& params) {
  BinaryField field(params.field);
  const FieldElement a = field.from_hex(params.a_hex);
  const FieldElement b = field.from_hex(params.b_hex);
  return EllipticCurve(std::move(field), a, b);
}

CurveParams EllipticCurve::params() const {
  return {field_.params(), field_.to_hex(a_), field_.to_hex(b_)};
}

bool EllipticCurve::is_on_curve(const FieldElement& x, const FieldElement& y) const {
  const BinaryField& f = field_;
  const FieldElement x2 = f.sqr(x);
  const FieldElement lhs = f.add(f.sqr(y), f.mul(x, y));
  const FieldElement rhs = f.add(f.add(f.mul(x2, x), f.mul(a_, x2)), b_);
  return lhs == rhs;
}

bool EllipticCurve::contains(const CurvePoint& p) const {
  return p.is_infinity() || is_on_curve(p.x(), p.y());
}

CurvePoint EllipticCurve::point(const FieldElement& x, const FieldElement& y) const {
  if (x.field_tag() != field_.tag() || y.field_tag() != field_.tag()) {
    throw Error(ErrorKind::kParameter, "point coordinates belong to a different field");
  }
  if (!is_on_curve(x, y)) throw Error(ErrorKind::kParameter, "point is not on the curve");
  return CurvePoint(x, y);
}

CurvePoint EllipticCurve::point_from_hex(std::string_view x_hex, std::string_view y_hex) const {
  return point(field_.from_hex(x_hex), field_.from_hex(y_hex));
}

CurvePoint EllipticCurve::negate(const CurvePoint& p) const {
  if (p.is_infinity()) return p;
  return CurvePoint(p.x_, field_.add(p.x_, p.y_));
}

CurvePoint EllipticCurve::dbl(const CurvePoint& p) const {
  if (p.is_infinity() || p.x_.is_zero()) return CurvePoint::infinity();
  const BinaryField& f = field_;
  // lambda = x + y/x; x3 = lambda^2 + lambda + a; y3 = x^2 + (lambda + 1) x3
  const FieldElement lambda = f.add(p.x_, f.mul(p.y_, f.inv(p.x_)));
  const FieldElement x3 = f.add(f.add(f.sqr(lambda), lambda), a_);
  const FieldElement y3 = f.add(f.sqr(p.x_), f.mul(f.add(lambda, f.one()), x3));
  return CurvePoint(x3, y3);
}

CurvePoint EllipticCurve::add(const CurvePoint& p, const CurvePoint& q) const {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const BinaryField& f = field_;
  if (p.x_ == q.x_) {
    // Same x: either q = -p or q = p.
    if (q.y_ == p.y_) return dbl(p);
    return CurvePoint::infinity();
  }
  const FieldElement dx = f.add(p.x_, q.x_);
  const FieldElement lambda = f.mul(f.add(p.y_, q.y_), f.inv(dx));
  const FieldElement x3 = f.add(f.add(f.add(f.sqr(lambda), lambda), dx), a_);
  const FieldElement y3 = f.add(f.add(f.mul(lambda, f.add(p.x_, x3)), x3), p.y_);
  return CurvePoint(x3, y3);
}

CurvePoint EllipticCurve::scalar_mul(std::uint64_t k, const CurvePoint& p) const {
  const std::uint64_t words[1] = {k};
  return scalar_mul(words, p);
}

CurvePoint EllipticCurve::scalar_mul(std::span<const std::uint64_t> k, const CurvePoint& p) const {
  CurvePoint acc;
  for (std::size_t i = k.size(); i-- > 0;) {
    for (int b = 63; b >= 0; --b) {
      acc = dbl(acc);
      if (k[i] >> b & 1U) acc = add(acc, p);
    }
  }
  return acc;
}

std::vector<CurvePoint> EllipticCurve::enumerate_points() const {
  const unsigned m = field_.degree();
  if (m > kMaxEnumerableDegree) {
    throw Error(ErrorKind::kCapability, "point enumeration limited to m <= 12, got m = " +
                                            std::to_string(m));
  }
  std::vector<CurvePoint> points{CurvePoint::infinity()};
  const std::uint64_t size = std::uint64_t{1} << m;
  for (std::uint64_t xv = 0; xv < size; ++xv) {
    const FieldElement x = field_.from_uint(xv);
    for (std::uint64_t yv = 0; yv < size; ++yv) {
      const FieldElement y = field_.from_uint(yv);
      if (is_on_curve(x, y)) points.push_back(CurvePoint(x, y));
    }
  }
  return points;
}

namespace {

NamedCurve make_sect163k1() {
  // SEC 2 v2, section 3.2.1: f(x) = x^163 + x^7 + x^6 + x^3 + 1, a = b = 1.
  BinaryField field(FieldParams::from_exponents({163, 7, 6, 3, 0}));
  const FieldElement one = field.one();
  EllipticCurve curve(std::move(field), one, one);
  const CurvePoint g = curve.point_from_hex("02fe13c0537bbc11acaa07d793de4e6d5e5c94eee8",
                                            "0289070fb05d38ff58321f2e800536d538ccdaa3d9");
  return {"sect163k1", curve, g, "04000000000000000000020108a2e0cc0d99f8a5ef"};
}

}  // namespace

std::optional<NamedCurve> find_named_curve(std::string_view name) {
  if (name == "sect163k1") {
    static const NamedCurve kSect163k1 = make_sect163k1();
    return kSect163k1;
  }
  return std::nullopt;
}

NamedCurve named_curve(std::string_view name) {
  auto c = find_named_curve(name);
  if (!c) throw Error(ErrorKind::kKey, "unknown named curve '" + std::string(name) + "'");
  return *std::move(c);
}

std::vector<std::string> named_curve_names() { return {"sect163k1"}; }

}  // namespace bci
