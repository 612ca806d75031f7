#include "bci/metrics.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "bci/error.hpp"
#include "bci/version.hpp"

namespace bci {
namespace {

using nlohmann::json;

struct Offset {
  std::size_t dx;
  std::size_t dy;
};

Offset offset_of(Direction d) {
  switch (d) {
    case Direction::kHorizontal: return {1, 0};
    case Direction::kVertical: return {0, 1};
    case Direction::kDiagonal: return {1, 1};
  }
  return {1, 0};
}

// Exact integer moments of a pair sequence.
struct PairSums {
  __int128 n = 0;
  __int128 sx = 0;
  __int128 sy = 0;
  __int128 sxx = 0;
  __int128 syy = 0;
  __int128 sxy = 0;

  void add(unsigned x, unsigned y) {
    ++n;
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }

  double r() const {
    if (n == 0) throw Error(ErrorKind::kParameter, "no adjacent pairs in this direction");
    const __int128 cov = n * sxy - sx * sy;
    const __int128 vx = n * sxx - sx * sx;
    const __int128 vy = n * syy - sy * sy;
    if (vx == 0 || vy == 0) {
      throw Error(ErrorKind::kDegenerateVariance, "correlation undefined for a constant sequence");
    }
    const long double denom = std::sqrt(static_cast<long double>(vx)) * std::sqrt(static_cast<long double>(vy));
    return static_cast<double>(static_cast<long double>(cov) / denom);
  }
};

void check_shapes(const ImageBuffer& a, const ImageBuffer& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorKind::kParameter, "images differ in shape: " + std::to_string(a.width()) + "x" +
                                           std::to_string(a.height()) + "x" + std::to_string(a.channels()) +
                                           " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()) +
                                           "x" + std::to_string(b.channels()));
  }
}

[[noreturn]] void format_error(const std::string& what) { throw Error(ErrorKind::kFormat, "report: " + what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) format_error(std::string("missing '") + name + "'");
  return j.at(name);
}

double number(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number()) format_error(std::string("'") + name + "' must be a number");
  return v.get<double>();
}

json image_to_json(const ImageMetrics& m) {
  json per_channel = json::array();
  for (const ChannelMetrics& c : m.per_channel) {
    per_channel.push_back({{"histogram", c.histogram},
                           {"corr", {{"h", c.corr_h}, {"v", c.corr_v}, {"d", c.corr_d}}},
                           {"entropy", c.entropy}});
  }
  return {{"image", {{"w", m.width}, {"h", m.height}, {"channels", m.channels}}},
          {"per_channel", std::move(per_channel)},
          {"pooled_entropy", m.pooled_entropy}};
}

ImageMetrics image_from_json(const json& j) {
  ImageMetrics m;
  const json& img = field(j, "image");
  m.width = static_cast<std::size_t>(number(img, "w"));
  m.height = static_cast<std::size_t>(number(img, "h"));
  m.channels = static_cast<std::size_t>(number(img, "channels"));
  m.pooled_entropy = number(j, "pooled_entropy");
  const json& pc = field(j, "per_channel");
  if (!pc.is_array()) format_error("'per_channel' must be an array");
  for (const json& c : pc) {
    ChannelMetrics cm;
    const json& h = field(c, "histogram");
    if (!h.is_array() || h.size() != 256) format_error("histogram must have 256 entries");
    for (std::size_t v = 0; v < 256; ++v) {
      if (!h[v].is_number_unsigned() && !h[v].is_number_integer()) format_error("histogram counts must be integers");
      cm.histogram[v] = h[v].get<std::uint64_t>();
    }
    const json& corr = field(c, "corr");
    cm.corr_h = number(corr, "h");
    cm.corr_v = number(corr, "v");
    cm.corr_d = number(corr, "d");
    cm.entropy = number(c, "entropy");
    m.per_channel.push_back(cm);
  }
  if (m.per_channel.size() != m.channels) format_error("per_channel length differs from channel count");
  return m;
}

std::vector<double> number_array(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_array()) format_error(std::string("'") + name + "' must be an array");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) format_error(std::string("'") + name + "' entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kHorizontal: return "horizontal";
    case Direction::kVertical: return "vertical";
    case Direction::kDiagonal: return "diagonal";
  }
  return "?";
}

Histogram histogram(std::span<const std::uint8_t> samples) {
  Histogram h{};
  for (std::uint8_t v : samples) ++h[v];
  return h;
}

Histogram histogram(const ImageBuffer& img, std::size_t channel) {
  if (channel >= img.channels()) throw Error(ErrorKind::kParameter, "channel index out of range");
  Histogram h{};
  const auto px = img.pixels();
  for (std::size_t i = channel; i < px.size(); i += img.channels()) ++h[px[i]];
  return h;
}

double correlation(const ImageBuffer& img, std::size_t channel, Direction dir) {
  if (channel >= img.channels()) throw Error(ErrorKind::kParameter, "channel index out of range");
  const auto [dx, dy] = offset_of(dir);
  PairSums sums;
  if (img.width() > dx && img.height() > dy) {
    for (std::size_t y = 0; y + dy < img.height(); ++y) {
      for (std::size_t x = 0; x + dx < img.width(); ++x) {
        sums.add(img.at(x, y, channel), img.at(x + dx, y + dy, channel));
      }
    }
  }
  return sums.r();
}

double correlation_sampled(const ImageBuffer& img, std::size_t channel, Direction dir, std::size_t pairs,
                           std::uint64_t seed) {
  if (channel >= img.channels()) throw Error(ErrorKind::kParameter, "channel index out of range");
  const auto [dx, dy] = offset_of(dir);
  if (img.width() <= dx || img.height() <= dy) {
    throw Error(ErrorKind::kParameter, "no adjacent pairs in this direction");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> xs(0, img.width() - 1 - dx);
  std::uniform_int_distribution<std::size_t> ys(0, img.height() - 1 - dy);
  PairSums sums;
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t x = xs(rng);
    const std::size_t y = ys(rng);
    sums.add(img.at(x, y, channel), img.at(x + dx, y + dy, channel));
  }
  return sums.r();
}

double pearson(std::span<const std::uint8_t> xs, std::span<const std::uint8_t> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::kParameter, "sequences differ in length");
  PairSums sums;
  for (std::size_t i = 0; i < xs.size(); ++i) sums.add(xs[i], ys[i]);
  return sums.r();
}

double entropy(const Histogram& h) {
  std::uint64_t total = 0;
  for (std::uint64_t c : h) total += c;
  if (total == 0) throw Error(ErrorKind::kParameter, "entropy of an empty sample");
  double bits = 0.0;
  for (std::uint64_t c : h) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    bits -= p * std::log2(p);
  }
  return bits;
}

double entropy(const ImageBuffer& img, std::size_t channel) { return entropy(histogram(img, channel)); }

double pooled_entropy(const ImageBuffer& img) { return entropy(histogram(img.pixels())); }

std::vector<double> npcr(const ImageBuffer& a, const ImageBuffer& b) {
  check_shapes(a, b);
  std::vector<std::uint64_t> diff(a.channels(), 0);
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) diff[i % a.channels()] += pa[i] != pb[i];
  std::vector<double> out;
  for (std::uint64_t d : diff) out.push_back(100.0 * static_cast<double>(d) / static_cast<double>(a.pixel_count()));
  return out;
}

std::vector<double> uaci(const ImageBuffer& a, const ImageBuffer& b) {
  check_shapes(a, b);
  std::vector<std::uint64_t> sum(a.channels(), 0);
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    sum[i % a.channels()] += static_cast<std::uint64_t>(pa[i] > pb[i] ? pa[i] - pb[i] : pb[i] - pa[i]);
  }
  std::vector<double> out;
  for (std::uint64_t s : sum) {
    out.push_back(100.0 * static_cast<double>(s) / (255.0 * static_cast<double>(a.pixel_count())));
  }
  return out;
}

ImageMetrics image_metrics(const ImageBuffer& img, const CorrelationSampling& sampling) {
  ImageMetrics m;
  m.width = img.width();
  m.height = img.height();
  m.channels = img.channels();
  for (std::size_t c = 0; c < img.channels(); ++c) {
    const auto corr = [&](Direction d) {
      return sampling.pairs == 0 ? correlation(img, c, d) : correlation_sampled(img, c, d, sampling.pairs, sampling.seed);
    };
    ChannelMetrics cm;
    cm.histogram = histogram(img, c);
    cm.corr_h = corr(Direction::kHorizontal);
    cm.corr_v = corr(Direction::kVertical);
    cm.corr_d = corr(Direction::kDiagonal);
    cm.entropy = entropy(cm.histogram);
    m.per_channel.push_back(cm);
  }
  m.pooled_entropy = pooled_entropy(img);
  return m;
}

MetricsReport analyze(const ImageBuffer& first, const ImageBuffer* second, const CorrelationSampling& sampling) {
  MetricsReport r;
  r.tool_version = std::string(kToolVersion);
  if (second != nullptr) check_shapes(first, *second);
  r.image = image_metrics(first, sampling);
  if (second != nullptr) {
    r.second = image_metrics(*second, sampling);
    r.pairwise = PairwiseMetrics{npcr(first, *second), uaci(first, *second)};
  }
  return r;
}

json report_to_json(const MetricsReport& report) {
  json j = image_to_json(report.image);
  j["pairwise"] = report.pairwise ? json{{"npcr", report.pairwise->npcr}, {"uaci", report.pairwise->uaci}}
                                  : json(nullptr);
  if (report.second) j["second"] = image_to_json(*report.second);
  j["tool_version"] = report.tool_version;
  return j;
}

MetricsReport report_from_json(const json& j) {
  MetricsReport r;
  r.image = image_from_json(j);
  const json& pw = field(j, "pairwise");
  if (!pw.is_null()) r.pairwise = PairwiseMetrics{number_array(pw, "npcr"), number_array(pw, "uaci")};
  if (j.contains("second")) r.second = image_from_json(j.at("second"));
  const json& tv = field(j, "tool_version");
  if (!tv.is_string()) format_error("'tool_version' must be a string");
  r.tool_version = tv.get<std::string>();
  return r;
}

std::string histogram_csv(const ImageMetrics& metrics) {
  static constexpr const char* kRgb[] = {"r", "g", "b"};
  std::ostringstream out;
  out << "value";
  for (std::size_t c = 0; c < metrics.per_channel.size(); ++c) {
    out << ',' << (metrics.per_channel.size() == 1 ? "gray" : kRgb[c]);
  }
  out << '\n';
  for (std::size_t v = 0; v < 256; ++v) {
    out << v;
    for (const ChannelMetrics& c : metrics.per_channel) out << ',' << c.histogram[v];
    out << '\n';
  }
  return out.str();
}

}  // namespace bci
