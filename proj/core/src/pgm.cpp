#include "rriqa/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "rriqa/error.hpp"

namespace rriqa {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Reads one unsigned decimal token, skipping whitespace and '#' comments.
  std::uint64_t next_uint(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorCode::CorruptFile, std::string("expected ") + what);
    }
    std::uint64_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
      if (v > (1ull << 40)) throw Error(ErrorCode::CorruptFile, std::string(what) + " too large");
      ++pos_;
    }
    return v;
  }

  // The single whitespace byte that separates the header from binary data.
  void consume_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorCode::CorruptFile, "missing whitespace after header");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_netpbm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorCode::CorruptFile, "bad magic number");
  }
  const char kind = bytes[1];
  const bool ascii = kind == '2' || kind == '3';
  const bool color = kind == '3' || kind == '6';
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    throw Error(ErrorCode::UnsupportedFormat, std::string("netpbm type P") + kind);
  }

  HeaderReader hdr(bytes.substr(2));
  const auto width = hdr.next_uint("width");
  const auto height = hdr.next_uint("height");
  const auto maxval = hdr.next_uint("maxval");
  if (width == 0 || height == 0) throw Error(ErrorCode::EmptyImage, "zero-sized image");
  if (maxval == 0 || maxval > 65535) {
    throw Error(ErrorCode::CorruptFile, "maxval out of range: " + std::to_string(maxval));
  }

  const std::size_t channels = color ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(width * height) * channels;
  std::vector<std::uint32_t> raw(count);

  if (ascii) {
    HeaderReader body(bytes.substr(2 + hdr.pos()));
    for (auto& v : raw) {
      try {
        v = static_cast<std::uint32_t>(body.next_uint("sample"));
      } catch (const Error&) {
        throw Error(ErrorCode::CorruptFile, "truncated ASCII payload");
      }
    }
  } else {
    hdr.consume_single_space();
    const std::size_t start = 2 + hdr.pos();
    const std::size_t bps = maxval < 256 ? 1 : 2;
    if (bytes.size() - start < count * bps) {
      throw Error(ErrorCode::CorruptFile, "truncated binary payload");
    }
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + start);
    for (std::size_t i = 0; i < count; ++i) {
      raw[i] = bps == 1 ? p[i] : (std::uint32_t{p[2 * i]} << 8) | p[2 * i + 1];
    }
  }

  const double scale = 255.0 / static_cast<double>(maxval);
  std::vector<double> samples(static_cast<std::size_t>(width * height));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (color) {
      for (std::size_t k = 0; k < 3; ++k) {
        if (raw[3 * i + k] > maxval) throw Error(ErrorCode::CorruptFile, "sample exceeds maxval");
      }
      samples[i] = scale * (0.299 * raw[3 * i] + 0.587 * raw[3 * i + 1] + 0.114 * raw[3 * i + 2]);
    } else {
      if (raw[i] > maxval) throw Error(ErrorCode::CorruptFile, "sample exceeds maxval");
      samples[i] = scale * raw[i];
    }
  }
  return GrayImage(static_cast<std::size_t>(width), static_cast<std::size_t>(height),
                   std::move(samples));
}

GrayImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.empty()) throw Error(ErrorCode::EmptyImage, path.string() + " is empty");
  try {
    return parse_netpbm(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> bytes(img.samples().size());
  std::transform(img.samples().begin(), img.samples().end(), bytes.begin(), [](double v) {
    return static_cast<unsigned char>(std::clamp(std::lround(v), 0l, 255l));
  });
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

}  // namespace rriqa
