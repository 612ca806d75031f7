#include "bci/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "bci/cipher.hpp"
#include "bci/error.hpp"
#include "bci/key_file.hpp"
#include "bci/metrics.hpp"
#include "bci/version.hpp"

namespace bci::cli {
namespace {

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string output;
  std::string key_path;
  std::optional<int> scheme;
  std::optional<unsigned> block_size;
  std::string report_path;
  std::string cipher_view_path;
  std::string histogram_csv_path;
  std::string curve{kDefaultCurveName};
  unsigned channels = 1;
  std::size_t corr_samples = 0;
  std::uint64_t corr_seed = 0;
  int verbosity = 0;
};

std::shared_ptr<spdlog::logger> logger() {
  static const auto instance = [] {
    auto l = spdlog::get("bci");
    if (!l) l = spdlog::stderr_color_mt("bci");
    spdlog::cfg::load_env_levels();
    return l;
  }();
  return instance;
}

int exit_code_for(ErrorKind kind) { return kind == ErrorKind::kKey ? kExitKey : kExitData; }

// Accepts a Netpbm image or an envelope (its padded cipher raster).
ImageBuffer load_analysis_input(const std::string& path) {
  const std::vector<std::uint8_t> bytes = read_file_bytes(path);
  if (has_envelope_magic(bytes)) return cipher_view(parse_envelope(bytes));
  return parse_pnm(bytes);
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::kIo, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorKind::kIo, "write failed: " + path);
}

int cmd_keygen(const RunConfig& cfg, std::ostream& out) {
  KeygenOptions opts;
  opts.curve_name = cfg.curve;
  opts.channels = cfg.channels;
  opts.scheme = cfg.scheme.value_or(2);
  opts.block_size = cfg.block_size.value_or(8);
  const KeyMaterial km = generate_key(opts);
  save_key_file(km, cfg.output);

  const KeySpaceSummary ks = key_space(km);
  out << "wrote key " << cfg.output << " (curve " << km.curve_name << ", " << km.channels()
      << " channel(s), scheme " << km.scheme << ", N=" << km.block_size << ")\n"
      << "key space:\n"
      << "  chaotic seed + control parameter at 1e-14 precision: 2^" << std::lround(ks.chaos_bits) << "\n"
      << "  U0 scalar multiple of G:                              2^" << ks.scalar_bits << " per channel\n";
  if (ks.iv_bits > 0) out << "  CBC initialization vector:                            2^" << ks.iv_bits << "\n";
  return kExitOk;
}

int cmd_encrypt(const RunConfig& cfg, std::ostream& out) {
  const KeyMaterial km = load_key_file(cfg.key_path);
  if (cfg.scheme && *cfg.scheme != km.scheme) {
    throw Error(ErrorKind::kKey, "--scheme " + std::to_string(*cfg.scheme) + " disagrees with key file scheme " +
                                     std::to_string(km.scheme));
  }
  if (cfg.block_size && *cfg.block_size != km.block_size) {
    throw Error(ErrorKind::kKey, "--block-size " + std::to_string(*cfg.block_size) +
                                     " disagrees with key file block_size " + std::to_string(km.block_size));
  }
  const ImageBuffer img = read_image(cfg.inputs.front());
  logger()->debug("encrypting {}x{}x{} with scheme {} N={}", img.width(), img.height(), img.channels(), km.scheme,
                  km.block_size);
  const CipherEnvelope env = encrypt(img, km);
  write_envelope(env, cfg.output);
  if (!cfg.cipher_view_path.empty()) write_image(cipher_view(env), cfg.cipher_view_path);
  out << "encrypted " << cfg.inputs.front() << " -> " << cfg.output << " (" << env.padded_width() << "x"
      << env.padded_height() << " padded)\n";
  return kExitOk;
}

int cmd_decrypt(const RunConfig& cfg, std::ostream& out) {
  const KeyMaterial km = load_key_file(cfg.key_path);
  const CipherEnvelope env = read_envelope(cfg.inputs.front());
  const ImageBuffer img = decrypt(env, km);
  write_image(img, cfg.output);
  out << "decrypted " << cfg.inputs.front() << " -> " << cfg.output << "\n";
  return kExitOk;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const ImageBuffer first = load_analysis_input(cfg.inputs.at(0));
  std::optional<ImageBuffer> second;
  if (cfg.inputs.size() > 1) second = load_analysis_input(cfg.inputs.at(1));
  const MetricsReport report =
      analyze(first, second ? &*second : nullptr, CorrelationSampling{cfg.corr_samples, cfg.corr_seed});
  const std::string json_text = report_to_json(report).dump(2) + "\n";
  if (cfg.report_path.empty()) {
    out << json_text;
  } else {
    write_text(json_text, cfg.report_path);
  }
  if (!cfg.histogram_csv_path.empty()) {
    write_text(histogram_csv(report.image), cfg.histogram_csv_path);
    if (report.second) {
      write_text(histogram_csv(*report.second), cfg.histogram_csv_path + ".second.csv");
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Block image encryption keyed by a chaos-driven elliptic-curve PRNG", "bci"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  app.add_flag("-v,--verbose", cfg.verbosity, "More log output (repeatable)");

  const auto scheme_opt = [&](CLI::App* sub) {
    sub->add_option("--scheme", cfg.scheme, "Encryption scheme")->check(CLI::IsMember({1, 2}));
  };
  const auto block_opt = [&](CLI::App* sub) {
    sub->add_option("--block-size", cfg.block_size, "Block size N")->check(CLI::IsMember({8U, 16U, 32U}));
  };

  CLI::App* keygen = app.add_subcommand("keygen", "Generate a key file from OS randomness");
  keygen->add_option("--out", cfg.output, "Key file to write")->required();
  keygen->add_option("--curve", cfg.curve, "Named curve")->check(CLI::IsMember(named_curve_names()));
  keygen->add_option("--channels", cfg.channels, "1 for grayscale, 3 for RGB")->check(CLI::IsMember({1U, 3U}));
  scheme_opt(keygen);
  block_opt(keygen);

  CLI::App* enc = app.add_subcommand("encrypt", "Encrypt a P5/P6 image into an envelope");
  enc->add_option("--key", cfg.key_path, "Key file")->required();
  enc->add_option("--in", cfg.inputs, "Input image")->required()->expected(1);
  enc->add_option("--out", cfg.output, "Envelope to write")->required();
  enc->add_option("--cipher-view", cfg.cipher_view_path, "Also write the cipher raster as PGM/PPM");
  scheme_opt(enc);
  block_opt(enc);

  CLI::App* dec = app.add_subcommand("decrypt", "Decrypt an envelope back to a P5/P6 image");
  dec->add_option("--key", cfg.key_path, "Key file")->required();
  dec->add_option("--in", cfg.inputs, "Envelope")->required()->expected(1);
  dec->add_option("--out", cfg.output, "Image to write")->required();

  CLI::App* ana = app.add_subcommand("analyze", "Histogram, correlation, entropy, NPCR and UACI");
  ana->add_option("--in", cfg.inputs, "One or two images (PGM/PPM or envelope)")->required()->expected(1, 2);
  ana->add_option("--report", cfg.report_path, "JSON report path (default: stdout)");
  ana->add_option("--histogram-csv", cfg.histogram_csv_path, "Per-channel histogram CSV");
  ana->add_option("--corr-samples", cfg.corr_samples, "Sample this many random pairs instead of all pairs");
  ana->add_option("--corr-seed", cfg.corr_seed, "Seed for --corr-samples");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  if (cfg.verbosity > 0) logger()->set_level(cfg.verbosity > 1 ? spdlog::level::trace : spdlog::level::debug);

  try {
    if (keygen->parsed()) return cmd_keygen(cfg, out);
    if (enc->parsed()) return cmd_encrypt(cfg, out);
    if (dec->parsed()) return cmd_decrypt(cfg, out);
    if (ana->parsed()) return cmd_analyze(cfg, out);
  } catch (const Error& e) {
    err << "bci: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "bci: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace bci::cli
