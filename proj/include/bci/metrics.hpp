#pragma once

// Statistical security measures for cipher images: histogram, adjacent-pixel
// correlation, Shannon entropy, NPCR and UACI.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bci/image.hpp"

namespace bci {

using Histogram = std::array<std::uint64_t, 256>;

enum class Direction { kHorizontal, kVertical, kDiagonal };
inline constexpr Direction kDirections[] = {Direction::kHorizontal, Direction::kVertical,
                                            Direction::kDiagonal};
std::string_view to_string(Direction d);

Histogram histogram(const ImageBuffer& img, std::size_t channel);
Histogram histogram(std::span<const std::uint8_t> samples);

// Pearson correlation over every adjacent pair in the given direction:
// horizontal (x, y)-(x+1, y), vertical (x, y)-(x, y+1), diagonal
// (x, y)-(x+1, y+1). Sums are accumulated exactly in integers.
// Errors: Error(kParameter) if there is no pair in that direction,
// Error(kDegenerateVariance) if either side of the pairs is constant.
double correlation(const ImageBuffer& img, std::size_t channel, Direction dir);

// Same statistic over `pairs` adjacent pairs drawn uniformly (with
// replacement) using a seeded std::mt19937_64.
double correlation_sampled(const ImageBuffer& img, std::size_t channel, Direction dir,
                           std::size_t pairs, std::uint64_t seed);

// Pearson r of two equally long sequences.
double pearson(std::span<const std::uint8_t> xs, std::span<const std::uint8_t> ys);

// Shannon entropy in bits, 0 log 0 = 0.
double entropy(const Histogram& h);
double entropy(const ImageBuffer& img, std::size_t channel);
// Over all samples of all channels.
double pooled_entropy(const ImageBuffer& img);

// Per-channel percentages. Error(kParameter) on shape mismatch.
std::vector<double> npcr(const ImageBuffer& a, const ImageBuffer& b);
std::vector<double> uaci(const ImageBuffer& a, const ImageBuffer& b);

struct ChannelMetrics {
  Histogram histogram{};
  double corr_h = 0.0;
  double corr_v = 0.0;
  double corr_d = 0.0;
  double entropy = 0.0;

  friend bool operator==(const ChannelMetrics&, const ChannelMetrics&) = default;
};

struct ImageMetrics {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 0;
  std::vector<ChannelMetrics> per_channel;
  double pooled_entropy = 0.0;

  friend bool operator==(const ImageMetrics&, const ImageMetrics&) = default;
};

struct PairwiseMetrics {
  std::vector<double> npcr;
  std::vector<double> uaci;

  friend bool operator==(const PairwiseMetrics&, const PairwiseMetrics&) = default;
};

struct MetricsReport {
  ImageMetrics image;
  std::optional<ImageMetrics> second;
  std::optional<PairwiseMetrics> pairwise;
  std::string tool_version;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

struct CorrelationSampling {
  std::size_t pairs = 0;  // 0 = use every adjacent pair
  std::uint64_t seed = 0;
};

ImageMetrics image_metrics(const ImageBuffer& img, const CorrelationSampling& sampling = {});

// Single-image metrics of `first` (and `second` if given), plus NPCR/UACI
// between them. Error(kParameter) if the shapes differ.
MetricsReport analyze(const ImageBuffer& first, const ImageBuffer* second = nullptr,
                      const CorrelationSampling& sampling = {});

// {image: {w, h, channels}, per_channel: [{histogram, corr: {h, v, d}, entropy}],
//  pooled_entropy, pairwise: {npcr: [...], uaci: [...]} | null, second?, tool_version}
nlohmann::json report_to_json(const MetricsReport& report);
// Error(kFormat) when fields are missing or mistyped.
MetricsReport report_from_json(const nlohmann::json& j);

// "value,count_c0[,count_c1,count_c2]" rows for external plotting.
std::string histogram_csv(const ImageMetrics& metrics);

}  // namespace bci
