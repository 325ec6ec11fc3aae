#include "tonescale/png_io.hpp"

#include <png.h>

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

namespace tonescale {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct RawPng {
  Index height = 0;
  Index width = 0;
  int bit_depth = 0;
  int color_type = 0;
  std::vector<std::uint16_t> samples;  // one per pixel, row-major
};

void on_png_error(png_structp png, png_const_charp msg) {
  auto* what = static_cast<std::string*>(png_get_error_ptr(png));
  if (what) *what = msg;
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

RawPng read_raw(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open " + path.string());

  std::array<unsigned char, 8> sig{};
  if (std::fread(sig.data(), 1, sig.size(), file.get()) != sig.size() || png_sig_cmp(sig.data(), 0, sig.size()) != 0)
    throw IoError(path.string() + ": not a PNG file");

  std::string what;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &what, on_png_error, on_png_warning);
  if (!png) throw IoError("libpng: out of memory");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng: out of memory");
  }

  RawPng raw;
  std::vector<png_byte> buffer;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path.string() + ": " + (what.empty() ? "decode error" : what));
  }

  png_init_io(png, file.get());
  png_set_sig_bytes(png, static_cast<int>(sig.size()));
  png_read_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  raw.bit_depth = png_get_bit_depth(png, info);
  raw.color_type = png_get_color_type(png, info);

  bool supported = false;
  if (raw.color_type == PNG_COLOR_TYPE_GRAY) supported = raw.bit_depth == 8 || raw.bit_depth == 16;
  if (raw.color_type == PNG_COLOR_TYPE_PALETTE) {
    supported = raw.bit_depth <= 8;
    png_set_packing(png);  // sub-byte palette indices expand to one byte each, values unchanged
  }
  if (!supported || w == 0 || h == 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    if (w == 0 || h == 0) throw IoError(path.string() + ": zero dimension");
    throw IoError(path.string() + ": unsupported PNG format (color type " + std::to_string(raw.color_type) +
                  ", bit depth " + std::to_string(raw.bit_depth) + ")");
  }
  if (raw.bit_depth == 16) png_set_swap(png);  // read as host-order little endian words
  png_read_update_info(png, info);

  const std::size_t rowbytes = png_get_rowbytes(png, info);
  buffer.resize(rowbytes * h);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = buffer.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  raw.height = static_cast<Index>(h);
  raw.width = static_cast<Index>(w);
  raw.samples.resize(static_cast<std::size_t>(w) * h);
  for (png_uint_32 y = 0; y < h; ++y) {
    for (png_uint_32 x = 0; x < w; ++x) {
      std::uint16_t v = 0;
      if (raw.bit_depth == 16) {
        const png_bytep p = rows[y] + 2 * x;
        v = static_cast<std::uint16_t>(p[0] | (p[1] << 8));
      } else {
        v = rows[y][x];
      }
      raw.samples[static_cast<std::size_t>(y) * w + x] = v;
    }
  }
  return raw;
}

struct PngWriteSpec {
  int bit_depth = 8;
  int color_type = PNG_COLOR_TYPE_GRAY;
  const std::vector<png_color>* palette = nullptr;
};

void write_raw(const std::filesystem::path& path, Index height, Index width, const std::vector<std::uint16_t>& samples,
               const PngWriteSpec& spec) {
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot write " + path.string());

  std::string what;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &what, on_png_error, on_png_warning);
  if (!png) throw IoError("libpng: out of memory");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng: out of memory");
  }

  const std::size_t bytes_per = spec.bit_depth == 16 ? 2 : 1;
  std::vector<png_byte> buffer(static_cast<std::size_t>(height * width) * bytes_per);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (bytes_per == 2) {
      buffer[2 * i] = static_cast<png_byte>(samples[i] >> 8);  // PNG is big endian
      buffer[2 * i + 1] = static_cast<png_byte>(samples[i] & 0xff);
    } else {
      buffer[i] = static_cast<png_byte>(samples[i]);
    }
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (Index y = 0; y < height; ++y)
    rows[static_cast<std::size_t>(y)] = buffer.data() + static_cast<std::size_t>(y * width) * bytes_per;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(path.string() + ": " + (what.empty() ? "encode error" : what));
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), spec.bit_depth,
               spec.color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  if (spec.palette)
    png_set_PLTE(png, info, spec.palette->data(), static_cast<int>(spec.palette->size()));
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

template <typename Tag>
BinaryRaster<Tag> load_binary(const std::filesystem::path& path) {
  const RawPng raw = read_raw(path);
  if (raw.color_type != PNG_COLOR_TYPE_GRAY || raw.bit_depth != 8)
    throw IoError(path.string() + ": expected 8-bit grayscale PNG");
  Plane<std::uint8_t> px(raw.height, raw.width);
  for (Index i = 0; i < px.size(); ++i) px.data()[i] = raw.samples[static_cast<std::size_t>(i)] >= 128 ? 1 : 0;
  return BinaryRaster<Tag>(std::move(px));
}

template <typename Tag>
void save_binary(const BinaryRaster<Tag>& r, const std::filesystem::path& path) {
  std::vector<std::uint16_t> samples(static_cast<std::size_t>(r.height() * r.width()));
  for (Index i = 0; i < r.pixels().size(); ++i) samples[static_cast<std::size_t>(i)] = r.pixels().data()[i] ? 255 : 0;
  write_raw(path, r.height(), r.width(), samples, {});
}

// Well-spread palette colours so label maps are readable in an image viewer.
std::vector<png_color> label_palette() {
  std::vector<png_color> pal(256);
  pal[0] = {0, 0, 0};
  for (int i = 1; i < 256; ++i) {
    const double hue = std::fmod(i * 0.618033988749895, 1.0) * 6.0;
    const int sector = static_cast<int>(hue);
    const double f = hue - sector;
    const auto hi = static_cast<png_byte>(230);
    const auto lo = static_cast<png_byte>(60);
    const auto up = static_cast<png_byte>(lo + f * (hi - lo));
    const auto down = static_cast<png_byte>(hi - f * (hi - lo));
    switch (sector) {
      case 0: pal[i] = {hi, up, lo}; break;
      case 1: pal[i] = {down, hi, lo}; break;
      case 2: pal[i] = {lo, hi, up}; break;
      case 3: pal[i] = {lo, down, hi}; break;
      case 4: pal[i] = {up, lo, hi}; break;
      default: pal[i] = {hi, lo, down}; break;
    }
  }
  return pal;
}

std::filesystem::path channel_path(const std::filesystem::path& sidecar, Index c) {
  auto p = sidecar;
  p.replace_filename(sidecar.stem().string() + "_c" + std::to_string(c) + ".png");
  return p;
}

}  // namespace

BitonalImage load_bitonal(const std::filesystem::path& path) { return load_binary<MangaTag>(path); }
LineMap load_lines(const std::filesystem::path& path) { return load_binary<LineTag>(path); }

LabelMap load_labels(const std::filesystem::path& path) {
  const RawPng raw = read_raw(path);
  if (raw.bit_depth > 8) throw IoError(path.string() + ": label maps must be 8-bit indexed or grayscale");
  Plane<Label> labels(raw.height, raw.width);
  for (Index i = 0; i < labels.size(); ++i) labels.data()[i] = raw.samples[static_cast<std::size_t>(i)];
  return LabelMap(std::move(labels));
}

void save_png(const BitonalImage& image, const std::filesystem::path& path) { save_binary(image, path); }
void save_png(const LineMap& lines, const std::filesystem::path& path) { save_binary(lines, path); }

void save_png(const LabelMap& labels, const std::filesystem::path& path) {
  if ((labels.labels() > 255u).any()) throw IoError(path.string() + ": label ids above 255 do not fit an indexed PNG");
  std::vector<std::uint16_t> samples(static_cast<std::size_t>(labels.labels().size()));
  for (Index i = 0; i < labels.labels().size(); ++i)
    samples[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(labels.labels().data()[i]);
  static const std::vector<png_color> palette = label_palette();
  write_raw(path, labels.height(), labels.width(), samples, {8, PNG_COLOR_TYPE_PALETTE, &palette});
}

void save_features(const Features& grid, const std::filesystem::path& sidecar) {
  if (!grid.all_finite()) throw std::invalid_argument("save_features: grid holds non-finite values");
  nlohmann::json meta;
  meta["width"] = grid.width();
  meta["height"] = grid.height();
  meta["channels"] = nlohmann::json::array();
  for (Index c = 0; c < grid.channels(); ++c) {
    const auto& p = grid.channel(c);
    const double lo = p.minCoeff();
    const double hi = p.maxCoeff();
    const double span = hi - lo;
    std::vector<std::uint16_t> samples(static_cast<std::size_t>(p.size()));
    for (Index i = 0; i < p.size(); ++i) {
      const double q = span > 0 ? (p.data()[i] - lo) / span * 65535.0 : 0.0;
      samples[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(std::clamp(std::lround(q), 0L, 65535L));
    }
    const auto file = channel_path(sidecar, c);
    write_raw(file, grid.height(), grid.width(), samples, {16, PNG_COLOR_TYPE_GRAY, nullptr});
    meta["channels"].push_back({{"file", file.filename().string()}, {"min", lo}, {"max", hi}});
  }
  std::ofstream out(sidecar);
  if (!out) throw IoError("cannot write " + sidecar.string());
  out << meta.dump(2) << '\n';
  if (!out) throw IoError("cannot write " + sidecar.string());
}

Features load_features(const std::filesystem::path& sidecar) {
  std::ifstream in(sidecar);
  if (!in) throw IoError("cannot open " + sidecar.string());
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(sidecar.string() + ": " + e.what());
  }
  std::vector<Plane<double>> planes;
  for (const auto& ch : meta.at("channels")) {
    const RawPng raw = read_raw(sidecar.parent_path() / ch.at("file").get<std::string>());
    if (raw.bit_depth != 16 || raw.color_type != PNG_COLOR_TYPE_GRAY)
      throw IoError(sidecar.string() + ": feature channels must be 16-bit grayscale");
    const double lo = ch.at("min").get<double>();
    const double span = ch.at("max").get<double>() - lo;
    Plane<double> p(raw.height, raw.width);
    for (Index i = 0; i < p.size(); ++i) p.data()[i] = lo + raw.samples[static_cast<std::size_t>(i)] / 65535.0 * span;
    planes.push_back(std::move(p));
  }
  if (planes.empty()) throw IoError(sidecar.string() + ": no channels");
  return Features(std::move(planes));
}

}  // namespace tonescale
